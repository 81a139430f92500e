#include "qcantor/states.hpp"

namespace qcantor {

const DensityMatrix& CoherentState::level(int n) const {
  if (n < 0 || n > impl_->max_depth)
    throw DepthExceededError("state level " + std::to_string(n) + " exceeds max_depth " +
                             std::to_string(impl_->max_depth));
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto it = impl_->memo.find(n);
  if (it == impl_->memo.end()) {
    DensityMatrix rho = impl_->gen(n);
    if (rho.n_qubits() != n) throw InvalidStateError("state generator returned a level of the wrong size");
    if (rho.backend() != impl_->backend)
      throw InvalidStateError("state generator returned a level with the wrong backend");
    it = impl_->memo.emplace(n, std::move(rho)).first;
  }
  return it->second;
}

CoherentState from_bits(const ClassicalSequence& z) {
  ClassicalSequence seq = z;
  return CoherentState(
      [seq](int n) {
        Eigen::Index idx = 0;
        for (int i = 0; i < n; ++i) idx |= Eigen::Index(seq.bit(i)) << i;
        return DensityMatrix::pure_basis(n, idx);
      },
      z.max_depth, "bits", Backend::exact);
}

CoherentState from_measure(const MeasureState& mu, int max_depth) {
  return CoherentState(
      [mu](int n) {
        const Eigen::Index d = Eigen::Index(1) << n;
        ExactMatrix m = ExactMatrix::Zero(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
          const std::string sigma = index_to_string(i, n);
          const Rational p = mu.prefix_prob(sigma);
          if (p < 0 || p > 1) throw InvalidStateError("measure: prefix probability outside [0,1] at " + sigma);
          if (n >= 1 && mu.prefix_prob(sigma.substr(0, sigma.size() - 1) + "0") +
                                mu.prefix_prob(sigma.substr(0, sigma.size() - 1) + "1") !=
                            mu.prefix_prob(sigma.substr(0, sigma.size() - 1)))
            throw InvalidStateError("measure: Kolmogorov condition fails below " + sigma);
          m(i, i) = GaussianRational(p);
        }
        return DensityMatrix::trusted(ComplexMatrix::from_exact(std::move(m)));
      },
      max_depth, "measure", Backend::exact);
}

CoherentState iid_state(const DensityMatrix& sigma1, int max_depth) {
  if (sigma1.n_qubits() != 1) throw DimensionMismatchError("iid_state expects a 1-qubit density matrix");
  // Built iteratively so level n reuses level n-1.
  auto levels = std::make_shared<std::vector<ComplexMatrix>>();
  levels->push_back(ComplexMatrix::identity(0, sigma1.backend()));
  const ComplexMatrix base = sigma1.matrix();
  return CoherentState(
      [levels, base](int n) {
        while (static_cast<int>(levels->size()) <= n)
          levels->push_back(tensor(levels->back(), base));
        return DensityMatrix::trusted((*levels)[static_cast<std::size_t>(n)]);
      },
      max_depth, "iid", sigma1.backend());
}

DensityMatrix epr_pair() {
  ExactMatrix beta = ExactMatrix::Zero(4, 4);
  const GaussianRational half(rational(1, 2));
  beta(0, 0) = half;
  beta(0, 3) = half;
  beta(3, 0) = half;
  beta(3, 3) = half;
  return DensityMatrix::trusted(ComplexMatrix::from_exact(std::move(beta)));
}

CoherentState epr_chain(int max_depth) {
  auto levels = std::make_shared<std::vector<ComplexMatrix>>();
  levels->push_back(ComplexMatrix::identity(0, Backend::exact));
  const ComplexMatrix beta = epr_pair().matrix();
  const ComplexMatrix mixed = DensityMatrix::maximally_mixed(1).matrix();
  return CoherentState(
      [levels, beta, mixed](int n) {
        while (static_cast<int>(levels->size()) <= n) {
          const int k = static_cast<int>(levels->size());
          if (k % 2 == 0)
            levels->push_back(tensor((*levels)[static_cast<std::size_t>(k - 2)], beta));
          else
            levels->push_back(tensor(levels->back(), mixed));
        }
        return DensityMatrix::trusted((*levels)[static_cast<std::size_t>(n)]);
      },
      max_depth, "epr", Backend::exact);
}

CoherentState from_matrix_sequence(std::vector<DensityMatrix> levels, std::string label) {
  if (levels.empty()) throw InvalidArgumentError("matrix_sequence: no levels given");
  const Backend backend = levels.front().backend();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].n_qubits() != static_cast<int>(i))
      throw DimensionMismatchError("matrix_sequence: level " + std::to_string(i) + " has the wrong size");
    if (levels[i].backend() != backend)
      throw BackendMismatchError("matrix_sequence: levels mix exact and float backends");
  }
  auto shared = std::make_shared<std::vector<DensityMatrix>>(std::move(levels));
  return CoherentState([shared](int n) { return (*shared)[static_cast<std::size_t>(n)]; },
                       static_cast<int>(shared->size()) - 1, std::move(label), backend);
}

CoherentState tracial_state(int max_depth) {
  return CoherentState([](int n) { return DensityMatrix::maximally_mixed(n); }, max_depth, "tracial",
                       Backend::exact);
}

double evaluate(const CoherentState& rho, const ComplexMatrix& p) {
  if (!p.is_hermitian(kTolEig)) throw InvalidArgumentError("evaluate: observable is not Hermitian");
  return trace_product(rho.level(p.n_qubits()).matrix(), p).real();
}

double evaluate(const CoherentState& rho, const SpecialProjection& p) {
  return trace_product(rho.level(p.n_qubits()).matrix(), p.matrix()).real();
}

Rational evaluate_exact(const CoherentState& rho, const ComplexMatrix& p) {
  return trace_product_exact(rho.level(p.n_qubits()).matrix(), p).re;
}

Rational evaluate_exact(const CoherentState& rho, const SpecialProjection& p) {
  return evaluate_exact(rho, p.matrix());
}

CoherenceReport check_coherence(const CoherentState& rho, int depth) {
  if (depth > rho.max_depth()) throw DepthExceededError("check_coherence: depth exceeds max_depth");
  CoherenceReport report;
  for (int n = 0; n < depth; ++n) {
    const ComplexMatrix traced = partial_trace(rho.level(n + 1).matrix());
    const ComplexMatrix& expected = rho.level(n).matrix();
    CoherenceReport::Level entry;
    entry.n = n;
    if (traced.is_exact() && expected.is_exact()) {
      entry.exact_zero = exactly_equal(traced.exact(), expected.exact());
      entry.deviation = entry.exact_zero ? 0.0 : max_abs_difference(traced, expected);
    } else {
      entry.deviation = max_abs_difference(traced, expected);
    }
    report.levels.push_back(entry);
  }
  return report;
}

} // namespace qcantor
