#include "qcantor/entropy.hpp"

#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

namespace qcantor {

double von_neumann_entropy(const DensityMatrix& s) {
  const Eigen::VectorXd lam = hermitian_eigenvalues(s.matrix());
  double h = 0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam(i) > 1e-15) h -= lam(i) * std::log2(lam(i));
  return h;
}

EntropyReport entropy_rate(const CoherentState& psi, int n_max) {
  if (n_max > psi.max_depth()) throw DepthExceededError("entropy_rate: depth exceeds max_depth");
  EntropyReport report;
  report.kind = "entropy_rate";
  for (int n = 1; n <= n_max; ++n) {
    const double h = von_neumann_entropy(psi.level(n));
    report.rows.push_back({n, h, h / n, std::nullopt});
  }
  return report;
}

namespace {

bool exact_diagonal(const ComplexMatrix& m) {
  if (!m.is_exact()) return false;
  const ExactMatrix& e = m.exact();
  for (Eigen::Index j = 0; j < e.cols(); ++j)
    for (Eigen::Index i = 0; i < e.rows(); ++i)
      if (i != j && !e(i, j).is_zero()) return false;
  return true;
}

// Both matrices restricted to psi's eigenbasis are diagonal here, so only
// rho's diagonal enters.  Weights are grouped per distinct eigenvalue so the
// tracial-state identity comes out exact in double arithmetic.
double cross_entropy_diagonal(const ComplexMatrix& rho, const ExactMatrix& psi, int n) {
  std::map<Rational, Rational> exact_groups;
  std::map<Rational, double> float_groups;
  const bool rho_exact = rho.is_exact();
  for (Eigen::Index i = 0; i < psi.rows(); ++i) {
    const Rational lambda = psi(i, i).re;
    if (lambda == 0) {
      if (rho_exact) {
        if (!rho.exact()(i, i).is_zero())
          throw InvalidStateError("cross-entropy statistic undefined at this depth: "
                                  "rho is supported outside psi's support");
      } else if (std::abs(rho.floating()(i, i)) > kTolEig) {
        throw InvalidStateError("cross-entropy statistic undefined at this depth: "
                                "rho is supported outside psi's support");
      }
      continue;
    }
    if (rho_exact)
      exact_groups[lambda] += rho.exact()(i, i).re;
    else
      float_groups[lambda] += rho.floating()(i, i).real();
  }
  double numerator = 0; // sum of weight * log2(lambda)
  for (const auto& [lambda, weight] : exact_groups)
    numerator += to_double(weight) * std::log2(to_double(lambda));
  for (const auto& [lambda, weight] : float_groups) numerator += weight * std::log2(to_double(lambda));
  return -numerator / n;
}

} // namespace

double cross_entropy_statistic(const CoherentState& rho, const CoherentState& psi, int n) {
  if (n < 1) throw InvalidArgumentError("cross_entropy_statistic: n must be >= 1");
  const ComplexMatrix& rho_n = rho.level(n).matrix();
  const ComplexMatrix& psi_n = psi.level(n).matrix();
  if (exact_diagonal(psi_n)) return cross_entropy_diagonal(rho_n, psi_n.exact(), n);

  Eigen::SelfAdjointEigenSolver<FloatMatrix> solver(psi_n.to_float());
  const Eigen::VectorXd lam = solver.eigenvalues();
  const FloatMatrix vec = solver.eigenvectors();
  const FloatMatrix rho_f = rho_n.to_float();
  double numerator = 0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double weight = (vec.col(i).adjoint() * rho_f * vec.col(i))(0, 0).real();
    if (lam(i) < kTolEig) {
      if (weight > kTolEig)
        throw InvalidStateError("cross-entropy statistic undefined at this depth: "
                                "rho is supported outside psi's support");
      continue;
    }
    numerator += weight * std::log2(lam(i));
  }
  return -numerator / n;
}

EntropyReport cross_entropy_profile(const CoherentState& rho, const CoherentState& psi, int n_max) {
  if (n_max > rho.max_depth() || n_max > psi.max_depth())
    throw DepthExceededError("cross_entropy_profile: depth exceeds max_depth");
  EntropyReport report;
  report.kind = "cross_entropy";
  for (int n = 1; n <= n_max; ++n) {
    const double h = von_neumann_entropy(psi.level(n));
    report.rows.push_back({n, h, h / n, cross_entropy_statistic(rho, psi, n)});
  }
  return report;
}

} // namespace qcantor
