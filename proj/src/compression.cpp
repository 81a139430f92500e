#include "qcantor/compression.hpp"

#include <algorithm>
#include <cmath>

namespace qcantor {

namespace {

ComplexMatrix basis_density_matrix(int n_qubits, Backend b) {
  // |0^n><0^n| in the requested backend.
  if (b == Backend::exact) {
    ExactMatrix m = ExactMatrix::Zero(Eigen::Index(1) << n_qubits, Eigen::Index(1) << n_qubits);
    m(0, 0) = GaussianRational(1);
    return ComplexMatrix::from_exact(std::move(m));
  }
  FloatMatrix m = FloatMatrix::Zero(Eigen::Index(1) << n_qubits, Eigen::Index(1) << n_qubits);
  m(0, 0) = 1.0;
  return ComplexMatrix::from_float(std::move(m));
}

bool is_unitary(const ComplexMatrix& m) {
  if (m.is_exact())
    return exactly_equal(ExactMatrix(m.exact() * m.exact().adjoint()),
                         ExactMatrix(ExactMatrix::Identity(m.dim(), m.dim())));
  const FloatMatrix& f = m.floating();
  return max_abs(FloatMatrix(f * f.adjoint() - FloatMatrix::Identity(f.rows(), f.cols()))) <= kTolEig;
}

} // namespace

UnitaryMachine UnitaryMachine::identity(int max_depth) {
  return UnitaryMachine([](int n) { return ComplexMatrix::identity(n, Backend::exact); }, max_depth,
                        "identity");
}

UnitaryMachine UnitaryMachine::bit_reversal(int max_depth) {
  return UnitaryMachine(
      [](int n) {
        const Eigen::Index d = Eigen::Index(1) << n;
        ExactMatrix m = ExactMatrix::Zero(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
          Eigen::Index rev = 0;
          for (int j = 0; j < n; ++j)
            if ((i >> j) & 1) rev |= Eigen::Index(1) << (n - 1 - j);
          m(rev, i) = GaussianRational(1);
        }
        return ComplexMatrix::from_exact(std::move(m));
      },
      max_depth, "bit_reversal");
}

UnitaryMachine UnitaryMachine::from_circuits(std::map<int, ComplexMatrix> circuits, int max_depth,
                                             std::string label) {
  auto shared = std::make_shared<std::map<int, ComplexMatrix>>(std::move(circuits));
  return UnitaryMachine(
      [shared](int n) {
        auto it = shared->find(n);
        if (it != shared->end()) return it->second;
        return ComplexMatrix::identity(n, Backend::exact);
      },
      max_depth, std::move(label));
}

const ComplexMatrix& UnitaryMachine::circuit(int n) const {
  if (n < 0 || n > impl_->max_depth)
    throw DepthExceededError("machine circuit " + std::to_string(n) + " exceeds max_depth " +
                             std::to_string(impl_->max_depth));
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto it = impl_->memo.find(n);
  if (it == impl_->memo.end()) {
    ComplexMatrix c = impl_->gen(n);
    if (c.n_qubits() != n) throw InvalidStateError("machine circuit has the wrong size");
    if (!is_unitary(c)) throw InvalidStateError("machine circuit " + std::to_string(n) + " is not unitary");
    it = impl_->memo.emplace(n, std::move(c)).first;
  }
  return it->second;
}

DensityMatrix run_machine(const UnitaryMachine& machine, const DensityMatrix& y, int n) {
  const int k = y.n_qubits();
  if (k > n) throw InvalidArgumentError("run_machine: input is longer than the requested output");
  const ComplexMatrix& circuit = machine.circuit(n);
  ComplexMatrix padded = k == n ? y.matrix() : tensor(y.matrix(), basis_density_matrix(n - k, y.backend()));
  ComplexMatrix l = circuit;
  if (l.backend() != padded.backend()) {
    l = l.as_float();
    padded = padded.as_float();
  }
  return DensityMatrix::trusted(l * padded * l.adjoint());
}

ComplexVector run_machine(const UnitaryMachine& machine, const ComplexVector& y, int n) {
  const int k = y.n_qubits();
  if (k > n) throw InvalidArgumentError("run_machine: input is longer than the requested output");
  const ComplexVector padded = k == n ? y : tensor(y, ComplexVector::basis(n - k, 0));
  const ComplexMatrix& circuit = machine.circuit(n);
  if (circuit.backend() != padded.backend()) return apply(circuit.as_float(), padded);
  return apply(circuit, padded);
}

// ---- dictionary -------------------------------------------------------------

StateDictionary StateDictionary::basis_strings(int max_len) {
  StateDictionary dict;
  for (int len = 0; len <= max_len; ++len)
    for (Eigen::Index idx = 0; idx < (Eigen::Index(1) << len); ++idx)
      dict.items_.push_back(ComplexVector::basis(len, idx));
  return dict;
}

void StateDictionary::append(ComplexVector v) {
  if (v.is_exact()) {
    if (v.exact_norm2() != 1) throw InvalidStateError("dictionary states must be unit vectors");
  } else if (std::abs(v.norm2() - 1.0) > kTolEig) {
    throw InvalidStateError("dictionary states must be unit vectors");
  }
  if (v.n_qubits() > static_cast<int>(items_.size()))
    throw InvalidStateError("dictionary listing must satisfy l(sigma_i) <= i");
  items_.push_back(std::move(v));
}

// ---- QC complexity ------------------------------------------------------------

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgumentError("epsilon must lie in (0,1)");
}

} // namespace

CompressionRecord qc_complexity(const UnitaryMachine& machine, const DensityMatrix& x, double eps,
                                const StateDictionary& dict,
                                const std::vector<DensityMatrix>& extra_witnesses) {
  check_eps(eps);
  const int n = x.n_qubits();
  if (n > machine.max_depth()) throw DepthExceededError("qc_complexity: target exceeds machine depth");
  for (int k = 0; k <= n; ++k) {
    std::vector<DensityMatrix> candidates;
    for (std::size_t i = 0; i < dict.size(); ++i)
      if (dict.length(i) == k) candidates.push_back(DensityMatrix::trusted(dict.at(i).outer()));
    for (const auto& w : extra_witnesses)
      if (w.n_qubits() == k) candidates.push_back(w);
    if (k == n) {
      // The inverse image L_n^dagger x L_n always reproduces x exactly.
      const FloatMatrix l = machine.circuit(n).to_float();
      FloatMatrix pre = l.adjoint() * x.matrix().to_float() * l;
      pre = ((pre + pre.adjoint()) / 2.0).eval();
      candidates.push_back(DensityMatrix::trusted(ComplexMatrix::from_float(std::move(pre))));
    }
    for (const auto& y : candidates) {
      const DensityMatrix out = run_machine(machine, y, n);
      const double d = trace_distance(x, out);
      if (d < eps) return CompressionRecord{n, k, y, d};
    }
  }
  throw Error("qc_complexity: no witness found (unreachable: k = n always succeeds)");
}

// ---- Part 1 -------------------------------------------------------------------

namespace {

bool states_parallel(const ComplexVector& x, const ComplexVector& v) {
  if (x.is_exact() && v.is_exact()) {
    const Rational n2 = x.exact_norm2() * v.exact_norm2();
    if (n2 == 0) return false;
    return abs2(inner_product_exact(x, v)) == n2;
  }
  const double n2 = x.norm2() * v.norm2();
  if (n2 <= kTolEig) return false;
  return 1.0 - std::abs(inner_product(x, v)) / std::sqrt(n2) <= kTolEig;
}

// The pure states spanning S_{r,t}(n).
std::vector<ComplexVector> part1_stage_states(const UnitaryMachine& machine,
                                              const std::function<int(int)>& f,
                                              const StateDictionary& dict, int r, int t, int n) {
  std::vector<ComplexVector> states;
  const int bound = n - f(n) - r;
  if (bound < 0) return states;
  const std::size_t limit = std::min<std::size_t>(dict.size(), static_cast<std::size_t>(t) + 1);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < limit; ++i)
    if (dict.length(i) == n) candidates.push_back(i);
  if (candidates.empty()) return states;
  std::vector<ComplexVector> outputs;
  for (std::size_t j = 0; j < limit; ++j)
    if (dict.length(j) <= bound) outputs.push_back(run_machine(machine, dict.at(j), n));
  for (std::size_t i : candidates) {
    const ComplexVector& x = dict.at(i);
    for (const auto& out : outputs) {
      if (states_parallel(x, out)) {
        states.push_back(x);
        break;
      }
    }
  }
  return states;
}

// Orthogonal (unnormalised) basis of sum_{n <= up_to} rg(p_{r,t}(n)) embedded
// into H_{up_to}, built level by level: U_{m+1} = (U_m (x) H_1) + V_{m+1}.
template <typename Scalar>
std::vector<ColVector<Scalar>> part1_union_basis(const UnitaryMachine& machine,
                                                 const std::function<int(int)>& f,
                                                 const StateDictionary& dict, int r, int t, int up_to) {
  std::vector<ColVector<Scalar>> basis;
  for (int m = 0; m <= up_to; ++m) {
    if (m > 0) {
      std::vector<ColVector<Scalar>> doubled;
      doubled.reserve(basis.size() * 2);
      const Eigen::Index d = Eigen::Index(1) << (m - 1);
      for (const auto& u : basis) {
        ColVector<Scalar> lo = ColVector<Scalar>::Zero(2 * d);
        lo.head(d) = u;
        ColVector<Scalar> hi = ColVector<Scalar>::Zero(2 * d);
        hi.tail(d) = u;
        doubled.push_back(std::move(lo));
        doubled.push_back(std::move(hi));
      }
      basis = std::move(doubled);
    }
    std::vector<ColVector<Scalar>> combined = std::move(basis);
    bool added = false;
    for (const auto& x : part1_stage_states(machine, f, dict, r, t, m)) {
      if constexpr (ScalarTraits<Scalar>::is_exact)
        combined.push_back(x.exact());
      else
        combined.push_back(x.to_float());
      added = true;
    }
    basis = added ? orthogonal_span_basis<Scalar>(combined) : std::move(combined);
  }
  return basis;
}

// The stage spans consist of dictionary states, so the dictionary alone
// decides the projector backend.
bool part1_is_exact(const StateDictionary& dict, int t) {
  const std::size_t limit = std::min<std::size_t>(dict.size(), static_cast<std::size_t>(t) + 1);
  for (std::size_t i = 0; i < limit; ++i)
    if (!dict.at(i).is_exact()) return false;
  return true;
}

} // namespace

SpecialProjection part1_stage(const UnitaryMachine& machine, const std::function<int(int)>& f,
                              const StateDictionary& dict, int r, int t, int n) {
  return SpecialProjection::onto_span(n, part1_stage_states(machine, f, dict, r, t, n));
}

SpecialProjection part1_projection(const UnitaryMachine& machine, const std::function<int(int)>& f,
                                   const StateDictionary& dict, int r, int t) {
  if (part1_is_exact(dict, t)) {
    const auto basis = part1_union_basis<GaussianRational>(machine, f, dict, r, t, t);
    return SpecialProjection::trusted(
        ComplexMatrix::from_exact(projector_onto_span<GaussianRational>(basis, Eigen::Index(1) << t)));
  }
  const auto basis = part1_union_basis<std::complex<double>>(machine, f, dict, r, t, t);
  return SpecialProjection::trusted(
      ComplexMatrix::from_float(projector_onto_span<std::complex<double>>(basis, Eigen::Index(1) << t)));
}

Rational part1_mass(const UnitaryMachine& machine, const std::function<int(int)>& f,
                    const StateDictionary& dict, int r, int t) {
  // Past the last nonempty stage the rank doubles with each embedding, so the
  // tracial value freezes; stop there instead of materialising H_t.
  int last = -1;
  for (int n = 0; n <= t; ++n)
    if (!part1_stage_states(machine, f, dict, r, t, n).empty()) last = n;
  if (last < 0) return Rational(0);
  std::size_t rank = 0;
  if (part1_is_exact(dict, t))
    rank = part1_union_basis<GaussianRational>(machine, f, dict, r, t, last).size();
  else
    rank = part1_union_basis<std::complex<double>>(machine, f, dict, r, t, last).size();
  return Rational(static_cast<long long>(rank)) * pow2(-last);
}

Rational part1_f_mass_sum(const std::function<int(int)>& f, int range) {
  Rational sum = 0;
  for (int n = 1; n <= range; ++n) sum += pow2(-f(n));
  return sum;
}

QMLTest build_part1_test(const UnitaryMachine& machine, const std::function<int(int)>& f,
                         const StateDictionary& dict, int max_levels, int max_depth) {
  UnitaryMachine m = machine;
  StateDictionary d = dict;
  return QMLTest(
      [m, f, d, max_depth](int r) {
        return QuantumSigma1Set(
            [m, f, d, r](int t) {
              SpecialProjection p = part1_projection(m, f, d, r, t);
              const Rational mass = part1_mass(m, f, d, r, t);
              if (mass > pow2(-r))
                throw MassBoundError("part1 level " + std::to_string(r) + " has mass " +
                                     rational_to_string(mass) + " > 2^-" + std::to_string(r) +
                                     " (f grows too slowly for its budget)");
              return p;
            },
            max_depth);
      },
      max_levels);
}

// ---- Part 2 -------------------------------------------------------------------

namespace {

// Unitary whose first rank(p) columns form an orthonormal basis of rg(p),
// completed deterministically over the standard basis.
FloatMatrix unitary_with_range_first(const SpecialProjection& p) {
  const Eigen::Index d = p.matrix().dim();
  const FloatMatrix pf = p.matrix().to_float();
  std::vector<FloatVector> cols;
  for (const auto& v : orthogonal_span_basis<std::complex<double>>(matrix_columns<std::complex<double>>(pf)))
    cols.push_back(v.normalized());
  for (Eigen::Index j = 0; j < d && static_cast<Eigen::Index>(cols.size()) < d; ++j) {
    FloatVector w = FloatVector::Zero(d);
    w(j) = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : cols) w -= b * b.dot(w);
    if (w.norm() > kTolEig) cols.push_back(w.normalized());
  }
  if (static_cast<Eigen::Index>(cols.size()) != d)
    throw Error("unitary completion failed to produce a full basis");
  FloatMatrix l(d, d);
  for (Eigen::Index j = 0; j < d; ++j) l.col(j) = cols[static_cast<std::size_t>(j)];
  return l;
}

} // namespace

SolovayMachine solovay_to_machine(const StrongSolovayTest& test) {
  if (test.items.empty()) throw InvalidArgumentError("solovay_to_machine: empty test");
  SolovayMachine plan{UnitaryMachine::identity(0), {}, {}};
  std::map<int, ComplexMatrix> circuits;
  for (const auto& item : test.items) {
    const Eigen::Index rank = item.projection.rank();
    if (rank == 0)
      throw InvalidStateError("solovay_to_machine: tau(p_r) = 0 leaves f undefined at n_r = " +
                              std::to_string(item.n_r));
    const Rational tau = Rational(static_cast<long long>(rank)) * pow2(-item.n_r);
    int f = 0;
    while (pow2(-f - 1) >= tau) ++f;
    const int g = item.n_r - f;
    if (g < 0 || rank > (Eigen::Index(1) << g))
      throw InvalidStateError("solovay_to_machine: rank(p_r) exceeds 2^g; malformed test");
    plan.grid.push_back(item.n_r);
    plan.f_grid[item.n_r] = f;
    circuits[item.n_r] = ComplexMatrix::from_float(unitary_with_range_first(item.projection));
  }
  const int max_n = plan.grid.back();
  plan.machine = UnitaryMachine::from_circuits(std::move(circuits), max_n, "solovay");
  return plan;
}

CompressionRecord compress_via_test(const CoherentState& rho, const StrongSolovayTest& test, int r,
                                    double eps) {
  return compress_via_test(rho, test, solovay_to_machine(test), r, eps);
}

CompressionRecord compress_via_test(const CoherentState& rho, const StrongSolovayTest& test,
                                    const SolovayMachine& plan, int r, double eps) {
  check_eps(eps);
  if (r < 0 || r >= static_cast<int>(test.items.size()))
    throw InvalidArgumentError("compress_via_test: level index out of range");
  const auto& item = test.items[static_cast<std::size_t>(r)];
  const int n = item.n_r;
  const double alpha = evaluate(rho, item.projection);
  if (!(alpha > 1.0 - eps))
    throw StatePassesError("state passes at this level: rho(p_r) = " + std::to_string(alpha) +
                           " <= 1 - eps");
  const DensityMatrix& z = rho.level(n);
  const DensityMatrix z_proj = state_project(z, item.projection);

  const int g = plan.g(n);
  const Eigen::Index gd = Eigen::Index(1) << g;
  const FloatMatrix l = plan.machine.circuit(n).to_float();
  const FloatMatrix pulled = l.adjoint() * z_proj.matrix().to_float() * l;
  // The pulled-back state must live on the pad-compatible block.
  double outside = 0;
  for (Eigen::Index j = 0; j < pulled.cols(); ++j)
    for (Eigen::Index i = 0; i < pulled.rows(); ++i)
      if (i >= gd || j >= gd) outside = std::max(outside, std::abs(pulled(i, j)));
  if (outside > 1e-8) throw Error("compress_via_test: projected state leaks outside the witness block");
  FloatMatrix y = pulled.topLeftCorner(gd, gd);
  y = ((y + y.adjoint()) / 2.0).eval();
  y /= y.trace().real();
  const DensityMatrix witness = DensityMatrix::trusted(ComplexMatrix::from_float(std::move(y)));

  const DensityMatrix rebuilt = run_machine(plan.machine, witness, n);
  if (max_abs_difference(rebuilt.matrix(), z_proj.matrix()) > 1e-8)
    throw Error("compress_via_test: witness does not reproduce the projected state");

  const double dist = trace_distance(z_proj, z);
  return CompressionRecord{n, g, witness, dist};
}

} // namespace qcantor
