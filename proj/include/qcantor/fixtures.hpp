#pragma once

// Seeded fixture library shared by the property suites, the acceptance
// scenarios and the CLI demo.  Everything here is deterministic in the RNG.

#include <random>

#include "qcantor/bridge.hpp"
#include "qcantor/compression.hpp"

namespace qcantor::fixtures {

// Gaussian-integer entries in {-2..2} + {-2..2}i, never identically zero.
ExactVector random_gaussian_integer_vector(std::mt19937_64& rng, Eigen::Index dim);

// Span of `rank_hint` random exact vectors (rank can come out lower).
SpecialProjection random_rational_projection(std::mt19937_64& rng, int n_qubits, int rank_hint);
SpecialProjection random_float_projection(std::mt19937_64& rng, int n_qubits, int rank_hint);

// Convex combination of rank-one projectors with rational weights.
DensityMatrix random_rational_density(std::mt19937_64& rng, int n_qubits, int mixture_terms = 3);
DensityMatrix random_float_density(std::mt19937_64& rng, int n_qubits);

// A random exact density at the top level, closed downward by partial traces;
// coherent by construction.
CoherentState random_matrix_sequence_state(std::mt19937_64& rng, int depth);

// { Z : Z starts with 0^r } as a single-stage classical level.
ClassicalSigma1Level prefix_level(int r);

// classical_to_quantum of the prefix test; failed by 0^infty at any order.
QMLTest classical_prefix_test(int max_levels, int max_depth);

// Level r >= 1 projects onto w_r (x) H_{k-r} where w_r rotates one qubit by a
// rational Pythagorean angle (a,b,c): w = |0^{r-1}> (x) (a/c |0> + b/c |1>).
// tau(p^r_k) = 2^{-r} exactly, and 0^infty evaluates to (a/c)^2 at every level.
QMLTest rotated_basis_test(int max_levels, int max_depth, long long a = 24, long long b = 7,
                           long long c = 25);

QMLTest zero_test(int max_levels, int max_depth);

// Strong Solovay test with n_r = 2,3,4 and tau(p_r) = 2^{-r-1}; each p_r is a
// rank-2 exact projection whose range nearly contains |0^{n_r}>.
StrongSolovayTest part2_fixture_test();

// from_bits(0^infty): evaluates to (24/25)^2 = 0.9216 on every fixture level.
CoherentState part2_fixture_state(int max_depth);

} // namespace qcantor::fixtures
