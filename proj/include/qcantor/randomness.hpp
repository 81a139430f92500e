#pragma once

// Quantum Sigma_1 sets, quantum Martin-Löf and Solovay tests, evaluation of
// tests against states, and the finite universal-test combiner.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "qcantor/clopen.hpp"
#include "qcantor/states.hpp"

namespace qcantor {

// A computable increasing sequence of special projections p_i in M_i,
// truncated at max_depth.
class QuantumSigma1Set {
public:
  using Generator = std::function<SpecialProjection(int)>;

  QuantumSigma1Set(Generator gen, int max_depth)
      : impl_(std::make_shared<Impl>(std::move(gen), max_depth)) {}

  static QuantumSigma1Set zero(int max_depth, Backend b = Backend::exact) {
    return QuantumSigma1Set([b](int i) { return SpecialProjection::zero(i, b); }, max_depth);
  }
  static QuantumSigma1Set full(int max_depth, Backend b = Backend::exact) {
    return QuantumSigma1Set([b](int i) { return SpecialProjection::identity(i, b); }, max_depth);
  }
  static QuantumSigma1Set from_projections(std::vector<SpecialProjection> projections);

  // Diagonal projections of a classical Sigma_1 level; when mass_bound is
  // set, the exact measure is checked at every generated depth.
  static QuantumSigma1Set from_clopen(ClassicalSigma1Level level, int max_depth,
                                      std::optional<Rational> mass_bound = std::nullopt);

  const SpecialProjection& level(int i) const;
  int max_depth() const { return impl_->max_depth; }

private:
  struct Impl {
    Impl(Generator g, int d) : gen(std::move(g)), max_depth(d) {}
    Generator gen;
    int max_depth;
    std::mutex mu;
    std::map<int, SpecialProjection> memo;
  };
  std::shared_ptr<Impl> impl_;
};

// tau(p_depth): a monotone lower bound for tau(G).
double sigma1_mass(const QuantumSigma1Set& g, int depth);
Rational sigma1_mass_exact(const QuantumSigma1Set& g, int depth);

// Levelwise join <p_k v q_k>.
QuantumSigma1Set sigma1_join(const QuantumSigma1Set& g, const QuantumSigma1Set& h);

struct MonotonicityReport {
  struct Level {
    int i = 0;
    double deviation = 0; // || p_{i+1} embed(p_i) - embed(p_i) ||_max
  };
  std::vector<Level> levels;
  double max_deviation() const {
    double m = 0;
    for (const auto& l : levels) m = std::max(m, l.deviation);
    return m;
  }
  bool all_within(double tol) const { return max_deviation() <= tol; }
};

// Verifies embed(p_i) <= p_{i+1} for every i < depth (range containment,
// checked as p_{i+1} * embed(p_i) = embed(p_i)).
MonotonicityReport check_monotone(const QuantumSigma1Set& g, int depth);

class QMLTest {
public:
  using LevelGenerator = std::function<QuantumSigma1Set(int)>;

  QMLTest(LevelGenerator levels, int max_levels)
      : impl_(std::make_shared<Impl>(std::move(levels), max_levels)) {}

  static QMLTest from_sets(std::vector<QuantumSigma1Set> sets);

  const QuantumSigma1Set& level_set(int r) const;
  int max_levels() const { return impl_->max_levels; }

private:
  struct Impl {
    Impl(LevelGenerator g, int m) : gen(std::move(g)), max_levels(m) {}
    LevelGenerator gen;
    int max_levels;
    std::mutex mu;
    std::map<int, QuantumSigma1Set> memo;
  };
  std::shared_ptr<Impl> impl_;
};

struct SolovayTest {
  std::vector<QuantumSigma1Set> levels;
  Rational declared_mass_bound;
};

struct StrongSolovayTest {
  struct Item {
    int n_r;
    SpecialProjection projection;
  };
  std::vector<Item> items;
  Rational declared_mass_bound;

  // Validates n_r strictly increasing and the declared mass bound.
  static StrongSolovayTest make(std::vector<Item> items, Rational declared_mass_bound);
};

struct MassViolation {
  int r = 0;
  int depth = 0;
  double mass = 0;
  double bound = 0;
};

// Checks tau(p^r_i) <= 2^{-r} for all r < max_levels, i <= depth (exact
// comparison on exact projections).
std::vector<MassViolation> verify_qml_mass(const QMLTest& test, int depth);

// Checks sum_r tau(G_r at depth) <= declared bound.
bool verify_solovay_mass(const SolovayTest& test, int depth);

// Entry r is rho(p^r_depth), a monotone-in-depth lower bound for rho(G_r).
std::vector<double> evaluate_test(const CoherentState& rho, const QMLTest& test, int depth);
std::vector<double> evaluate_test(const CoherentState& rho, const SolovayTest& test, int depth);

struct Verdict {
  bool fails = false;           // at order delta, relative to the computed depth
  std::optional<int> witness;   // ML: first level with value <= delta
  int exceed_count = 0;         // number of levels with value > delta
  double delta = 0;
};

// ML semantics: fails iff every computed level exceeds delta.
Verdict ml_verdict(const std::vector<double>& values, double delta);
// Solovay semantics: fails iff at least `threshold` levels exceed delta.
Verdict solovay_verdict(const std::vector<double>& values, double delta, int threshold);

// q^n_k = v_{e+n+1 <= k} p^e_{e+n+1, k}, the finite stage of the universal
// test built from an explicit list of tests.
SpecialProjection universal_combine(std::span<const QMLTest> tests, int n, int k);

// Lifts a classical ML test (level r |-> increasing clopen stages) to a
// quantum test of diagonal projections; exact measures are verified against
// the 2^{-r} bound at every generated depth.
QMLTest classical_to_quantum(std::function<ClassicalSigma1Level(int)> levels, int max_levels, int max_depth);

// S_{n,i}: the diagonal projection onto span{ |sigma> : sigma_i = 1 }.
SpecialProjection lln_projection(int n, int i);

// (1/n) sum_{i<n} rho(S_{n,i}).
double lln_statistic(const CoherentState& rho, int n);
Rational lln_statistic_exact(const CoherentState& rho, int n);

} // namespace qcantor
