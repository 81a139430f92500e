#pragma once

// Unitary machines L = <L_n>, circuit-sequence quantum Kolmogorov complexity
// QC_L^eps, the incompressibility test construction (Part 1) and the
// Solovay-test-driven compressor (Part 2).

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "qcantor/randomness.hpp"

namespace qcantor {

class UnitaryMachine {
public:
  using CircuitGenerator = std::function<ComplexMatrix(int)>;

  UnitaryMachine(CircuitGenerator gen, int max_depth, std::string label)
      : impl_(std::make_shared<Impl>(std::move(gen), max_depth, std::move(label))) {}

  static UnitaryMachine identity(int max_depth);
  // L_n reverses the qubit order of basis states.
  static UnitaryMachine bit_reversal(int max_depth);
  // Explicit circuits for some sizes, identity elsewhere.
  static UnitaryMachine from_circuits(std::map<int, ComplexMatrix> circuits, int max_depth,
                                      std::string label = "circuits");

  // L_n; unitarity is validated on first access.
  const ComplexMatrix& circuit(int n) const;
  int max_depth() const { return impl_->max_depth; }
  const std::string& label() const { return impl_->label; }

private:
  struct Impl {
    Impl(CircuitGenerator g, int d, std::string l) : gen(std::move(g)), max_depth(d), label(std::move(l)) {}
    CircuitGenerator gen;
    int max_depth;
    std::string label;
    std::mutex mu;
    std::map<int, ComplexMatrix> memo;
  };
  std::shared_ptr<Impl> impl_;
};

// L(y (x) |0^{n-k}><0^{n-k}| ; n) = L_n (y (x) pad) L_n^dagger.
DensityMatrix run_machine(const UnitaryMachine& machine, const DensityMatrix& y, int n);
ComplexVector run_machine(const UnitaryMachine& machine, const ComplexVector& y, int n);

// A computable listing <sigma_i> of elementary pure states with l(sigma_i) <= i.
class StateDictionary {
public:
  // All computational-basis strings of length <= max_len in length-lex order;
  // the first length-L entry sits at index 2^L - 1 >= L.
  static StateDictionary basis_strings(int max_len = 8);

  // Appends a unit vector (exactly unit on the exact backend, within kTolEig
  // on float); the listing constraint l <= index is preserved.
  void append(ComplexVector v);

  std::size_t size() const { return items_.size(); }
  const ComplexVector& at(std::size_t i) const { return items_.at(i); }
  int length(std::size_t i) const { return items_.at(i).n_qubits(); }

private:
  std::vector<ComplexVector> items_;
};

struct CompressionRecord {
  int n = 0;                    // target length
  int k = 0;                    // witness length; an upper bound on QC_L^eps
  DensityMatrix witness;        // the k-qubit input state
  double achieved_distance = 0; // D(target, L(witness (x) pad; n))
};

// Least k <= n such that some dictionary state of length k (or caller-supplied
// extra witness) lands strictly within eps of x in trace distance.  Witness-
// bounded search: the result is an upper bound on the true QC_L^eps; k = n
// always succeeds via the witness L_n^dagger x L_n.
CompressionRecord qc_complexity(const UnitaryMachine& machine, const DensityMatrix& x, double eps,
                                const StateDictionary& dict,
                                const std::vector<DensityMatrix>& extra_witnesses = {});

// ---- Part 1: the incompressibility test ------------------------------------

// p_{r,t}(n) in M_n: projection onto the span of dictionary states x = sigma_i
// (i <= t, length n) reachable as L(y (x) |0^{n-|y|}> ; n) from dictionary
// states y = sigma_j (j <= t) with |y| <= n - f(n) - r.
SpecialProjection part1_stage(const UnitaryMachine& machine, const std::function<int(int)>& f,
                              const StateDictionary& dict, int r, int t, int n);

// p_{r,t} = sup_{n <= t} p_{r,t}(n), materialised in M_t.
SpecialProjection part1_projection(const UnitaryMachine& machine, const std::function<int(int)>& f,
                                   const StateDictionary& dict, int r, int t);

// tau(p_{r,t}) computed from the union of the stage ranges without
// materialising a matrix in M_t; exact.
Rational part1_mass(const UnitaryMachine& machine, const std::function<int(int)>& f,
                    const StateDictionary& dict, int r, int t);

// sum_{n=1..range} 2^{-f(n)}; the test's mass budget holds whenever this is
// <= 1/4.
Rational part1_f_mass_sum(const std::function<int(int)>& f, int range);

// The quantum ML test <G_r> with G_r = <p_{r,t}>_t.  Every generated level is
// checked against its 2^{-r} mass bound; a violation (an f too small for its
// budget) raises MassBoundError.
QMLTest build_part1_test(const UnitaryMachine& machine, const std::function<int(int)>& f,
                         const StateDictionary& dict, int max_levels, int max_depth);

// ---- Part 2: machine + compressor from a strong Solovay test ----------------

struct SolovayMachine {
  UnitaryMachine machine;
  std::vector<int> grid;      // the n_r, strictly increasing
  std::map<int, int> f_grid;  // n_r -> f(n_r) from the sandwich
  // 2^{-f(n_r)} >= tau(p_r) > 2^{-f(n_r)-1}; f(m) = m off the grid.
  int f(int m) const {
    auto it = f_grid.find(m);
    return it == f_grid.end() ? m : it->second;
  }
  int g(int m) const { return m - f(m); }
};

// Builds f by the sandwich and a machine whose first 2^{g(n_r)} columns span
// a space containing rg(p_r); identity off the grid.
SolovayMachine solovay_to_machine(const StrongSolovayTest& test);

// z'_n = Proj(rho|n_r, p_r); extracts the g(n_r)-qubit witness y with
// run_machine(L, y, n_r) = z'_n and certifies
// QC_L^{sqrt(eps)}(rho|n_r | n_r) <= g(n_r).
// Requires rho(p_r) > 1 - eps.
CompressionRecord compress_via_test(const CoherentState& rho, const StrongSolovayTest& test, int r,
                                    double eps);
CompressionRecord compress_via_test(const CoherentState& rho, const StrongSolovayTest& test,
                                    const SolovayMachine& plan, int r, double eps);

} // namespace qcantor
