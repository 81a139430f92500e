#pragma once

// States of the CAR algebra at desk scale: a coherent sequence of density
// matrices rho_n with T_n(rho_{n+1}) = rho_n, generated lazily up to a
// declared maximum depth.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qcantor/matrix.hpp"

namespace qcantor {

struct ClassicalSequence {
  std::function<int(int)> bits;
  int max_depth = 0;

  static ClassicalSequence zeros(int depth) {
    return {[](int) { return 0; }, depth};
  }
  static ClassicalSequence ones(int depth) {
    return {[](int) { return 1; }, depth};
  }
  // Repeats the pattern cyclically.
  static ClassicalSequence from_pattern(const std::string& pattern, int depth) {
    if (pattern.empty()) throw InvalidArgumentError("empty bit pattern");
    for (char c : pattern)
      if (c != '0' && c != '1') throw InvalidArgumentError("bit pattern contains a character other than 0/1");
    return {[pattern](int i) { return pattern[static_cast<std::size_t>(i) % pattern.size()] == '1' ? 1 : 0; },
            depth};
  }

  int bit(int i) const {
    if (i < 0 || i >= max_depth) throw DepthExceededError("classical sequence queried past max_depth");
    return bits(i) ? 1 : 0;
  }
  std::string prefix(int n) const {
    std::string s;
    s.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s.push_back(bit(i) ? '1' : '0');
    return s;
  }
};

// A probability measure on Cantor space, presented by its prefix
// probabilities so the Kolmogorov condition is directly checkable.
class MeasureState {
public:
  using PrefixProb = std::function<Rational(const std::string&)>;

  explicit MeasureState(PrefixProb f) : prefix_prob_(std::move(f)) {
    if (prefix_prob_("") != 1) throw InvalidStateError("measure: prefix_prob(empty) != 1");
  }

  static MeasureState uniform() {
    return MeasureState([](const std::string& sigma) { return pow2(-static_cast<long>(sigma.size())); });
  }
  static MeasureState dirac(const ClassicalSequence& z) {
    return MeasureState([z](const std::string& sigma) {
      for (std::size_t i = 0; i < sigma.size(); ++i)
        if ((sigma[i] == '1') != (z.bit(static_cast<int>(i)) == 1)) return Rational(0);
      return Rational(1);
    });
  }
  // i.i.d. coin with P(bit = 1) = p1.
  static MeasureState bernoulli(const Rational& p1) {
    if (p1 < 0 || p1 > 1) throw InvalidArgumentError("bernoulli bias outside [0,1]");
    return MeasureState([p1](const std::string& sigma) {
      Rational prob = 1;
      for (char c : sigma) prob *= (c == '1') ? p1 : Rational(1 - p1);
      return prob;
    });
  }

  Rational prefix_prob(const std::string& sigma) const { return prefix_prob_(sigma); }

private:
  PrefixProb prefix_prob_;
};

class CoherentState {
public:
  using Generator = std::function<DensityMatrix(int)>;

  CoherentState(Generator gen, int max_depth, std::string label, Backend backend)
      : impl_(std::make_shared<Impl>(std::move(gen), max_depth, std::move(label), backend)) {}

  // rho restricted to M_n; memoized, thread-safe.
  const DensityMatrix& level(int n) const;

  int max_depth() const { return impl_->max_depth; }
  const std::string& label() const { return impl_->label; }
  Backend backend() const { return impl_->backend; }

private:
  struct Impl {
    Impl(Generator g, int d, std::string l, Backend b)
        : gen(std::move(g)), max_depth(d), label(std::move(l)), backend(b) {}
    Generator gen;
    int max_depth;
    std::string label;
    Backend backend;
    std::mutex mu;
    std::map<int, DensityMatrix> memo;
  };
  std::shared_ptr<Impl> impl_;
};

// ---- constructors -----------------------------------------------------------

// The pure product state |Z|0..n)><Z|0..n)|.
CoherentState from_bits(const ClassicalSequence& z);

// Diagonal state with entry prefix_prob(sigma) at (sigma, sigma); the
// Kolmogorov condition is verified at every generated depth.
CoherentState from_measure(const MeasureState& mu, int max_depth);

// sigma1^{(x) n}.
CoherentState iid_state(const DensityMatrix& sigma1, int max_depth);

// rho_{2n} = beta^{(x) n}, rho_{2n+1} = rho_{2n} (x) I/2 with beta the EPR pair.
CoherentState epr_chain(int max_depth);

// Explicit list rho_0 ... rho_d; level i must live on i qubits with a uniform
// backend across levels.
CoherentState from_matrix_sequence(std::vector<DensityMatrix> levels, std::string label = "matrix_sequence");

// The tracial state 2^{-n} I.
CoherentState tracial_state(int max_depth);

// The EPR density matrix beta in M_2 (exact entries 1/2).
DensityMatrix epr_pair();

// ---- evaluation -------------------------------------------------------------

// rho(p) = Tr(rho|n p) for Hermitian p on n qubits.
double evaluate(const CoherentState& rho, const ComplexMatrix& p);
double evaluate(const CoherentState& rho, const SpecialProjection& p);
Rational evaluate_exact(const CoherentState& rho, const ComplexMatrix& p);
Rational evaluate_exact(const CoherentState& rho, const SpecialProjection& p);

struct CoherenceReport {
  struct Level {
    int n = 0;               // compares T_n(rho_{n+1}) against rho_n
    double deviation = 0;    // max entrywise modulus of the difference
    bool exact_zero = false; // exact backend and identically zero
  };
  std::vector<Level> levels;

  double max_deviation() const {
    double m = 0;
    for (const auto& l : levels) m = std::max(m, l.deviation);
    return m;
  }
  bool all_within(double tol) const { return max_deviation() <= tol; }
};

// Verifies T_n(rho_{n+1}) = rho_n for every n < depth.
CoherenceReport check_coherence(const CoherentState& rho, int depth);

} // namespace qcantor
