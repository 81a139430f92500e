#include "qcantor/matrix.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qcantor {

// ---- scalar utilities ------------------------------------------------------

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      Rational num(text.substr(0, slash));
      Rational den(text.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in rational literal: " + text);
      return num / den;
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(text);
    // Decimal literal: scale the fractional part by a power of ten.
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    Rational value(digits);
    Rational scale = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) scale *= 10;
    return value / scale;
  } catch (const std::exception& e) {
    throw ParseError("cannot parse rational literal '" + text + "': " + e.what());
  }
}

std::string rational_to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// ---- free operations -------------------------------------------------------

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.backend() != b.backend()) throw BackendMismatchError("tensor: mixed exact/float operands");
  if (a.is_exact()) return ComplexMatrix::from_exact(tensor_product<GaussianRational>(a.exact(), b.exact()));
  return ComplexMatrix::from_float(tensor_product<std::complex<double>>(a.floating(), b.floating()));
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  if (a.backend() != b.backend()) throw BackendMismatchError("tensor: mixed exact/float operands");
  if (a.is_exact()) return ComplexVector::from_exact(tensor_product<GaussianRational>(a.exact(), b.exact()));
  return ComplexVector::from_float(tensor_product<std::complex<double>>(a.floating(), b.floating()));
}

ComplexMatrix embed(const ComplexMatrix& a) {
  if (a.is_exact()) return ComplexMatrix::from_exact(embed_once<GaussianRational>(a.exact()));
  return ComplexMatrix::from_float(embed_once<std::complex<double>>(a.floating()));
}

ComplexMatrix embed_to(const ComplexMatrix& a, int target_qubits) {
  if (target_qubits < a.n_qubits())
    throw DimensionMismatchError("embed_to: target has fewer qubits than the source");
  if (target_qubits == a.n_qubits()) return a;
  const int extra = target_qubits - a.n_qubits();
  if (a.is_exact()) return ComplexMatrix::from_exact(embed_by<GaussianRational>(a.exact(), extra));
  return ComplexMatrix::from_float(embed_by<std::complex<double>>(a.floating(), extra));
}

ComplexMatrix partial_trace(const ComplexMatrix& a) {
  if (a.n_qubits() == 0) throw DimensionMismatchError("partial_trace: input has no qubit to remove");
  if (a.is_exact()) return ComplexMatrix::from_exact(partial_trace_once<GaussianRational>(a.exact()));
  return ComplexMatrix::from_float(partial_trace_once<std::complex<double>>(a.floating()));
}

ComplexVector apply(const ComplexMatrix& m, const ComplexVector& v) {
  if (m.n_qubits() != v.n_qubits()) throw DimensionMismatchError("apply: dimension mismatch");
  if (m.is_exact() && v.is_exact()) return ComplexVector::from_exact(ExactVector(m.exact() * v.exact()));
  return ComplexVector::from_float(FloatVector(m.to_float() * v.to_float()));
}

double tracial_value(const ComplexMatrix& a) {
  return a.trace().real() / static_cast<double>(a.dim());
}

Rational tracial_value_exact(const ComplexMatrix& a) {
  return a.trace_exact().real() / pow2(a.n_qubits());
}

namespace {

// Tr(a b) with zero entries skipped; structured exact matrices are mostly zero.
GaussianRational exact_trace_of_product(const ExactMatrix& a, const ExactMatrix& b) {
  GaussianRational acc;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!a(i, j).is_zero() && !b(j, i).is_zero()) acc += a(i, j) * b(j, i);
  return acc;
}

} // namespace

std::complex<double> trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionMismatchError("trace_product: dimension mismatch");
  if (a.is_exact() && b.is_exact()) return to_complex(exact_trace_of_product(a.exact(), b.exact()));
  return trace_of_product<std::complex<double>>(a.to_float(), b.to_float());
}

GaussianRational trace_product_exact(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionMismatchError("trace_product: dimension mismatch");
  return exact_trace_of_product(a.exact(), b.exact());
}

std::complex<double> inner_product(const ComplexVector& a, const ComplexVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionMismatchError("inner_product: dimension mismatch");
  if (a.is_exact() && b.is_exact()) return to_complex(a.exact().dot(b.exact()));
  return a.to_float().dot(b.to_float());
}

GaussianRational inner_product_exact(const ComplexVector& a, const ComplexVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionMismatchError("inner_product: dimension mismatch");
  return a.exact().dot(b.exact());
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionMismatchError("max_abs_difference: dimension mismatch");
  if (a.is_exact() && b.is_exact()) return max_abs(ExactMatrix(a.exact() - b.exact()));
  return max_abs(FloatMatrix(a.to_float() - b.to_float()));
}

// ---- DensityMatrix ---------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
  if (!mat_.is_hermitian(kTolEig)) throw InvalidStateError("density matrix is not Hermitian");
  if (mat_.is_exact()) {
    if (mat_.trace_exact() != GaussianRational(1)) throw InvalidStateError("density matrix trace is not 1");
  } else if (std::abs(mat_.trace() - std::complex<double>(1, 0)) > kTolEig) {
    throw InvalidStateError("density matrix trace is not 1");
  }
  const Eigen::VectorXd evs = hermitian_eigenvalues(mat_);
  if (evs.size() > 0 && evs.minCoeff() < -kTolEig)
    throw InvalidStateError("density matrix has an eigenvalue below -tol_eig");
}

DensityMatrix DensityMatrix::pure_basis(const std::string& sigma) {
  return pure_basis(static_cast<int>(sigma.size()), string_to_index(sigma));
}

DensityMatrix DensityMatrix::pure_basis(int n_qubits, Eigen::Index index) {
  ExactMatrix m = ExactMatrix::Zero(Eigen::Index(1) << n_qubits, Eigen::Index(1) << n_qubits);
  m(index, index) = GaussianRational(1);
  return trusted(ComplexMatrix::from_exact(std::move(m)));
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  ExactMatrix m = ExactMatrix::Zero(d, d);
  const GaussianRational w(pow2(-n_qubits));
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = w;
  return trusted(ComplexMatrix::from_exact(std::move(m)));
}

// ---- SpecialProjection ------------------------------------------------------

SpecialProjection::SpecialProjection(ComplexMatrix m) : mat_(std::move(m)) {
  if (!mat_.is_hermitian(kTolEig)) throw InvalidStateError("projection is not Hermitian");
  if (mat_.is_exact()) {
    if (!exactly_equal(ExactMatrix(mat_.exact() * mat_.exact()), mat_.exact()))
      throw InvalidStateError("projection is not idempotent");
  } else {
    const FloatMatrix& p = mat_.floating();
    if (max_abs(FloatMatrix(p * p - p)) > kTolEig) throw InvalidStateError("projection is not idempotent");
  }
  rank(); // validates that the trace is a nonnegative integer
}

SpecialProjection SpecialProjection::diagonal(int n_qubits, const std::vector<std::string>& strings) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  ExactMatrix m = ExactMatrix::Zero(d, d);
  for (const auto& s : strings) {
    if (static_cast<int>(s.size()) != n_qubits)
      throw DimensionMismatchError("diagonal projection: string length != n_qubits");
    m(string_to_index(s), string_to_index(s)) = GaussianRational(1);
  }
  return trusted(ComplexMatrix::from_exact(std::move(m)));
}

SpecialProjection SpecialProjection::onto_span(int n_qubits, const std::vector<ComplexVector>& vectors) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  bool exact = true;
  for (const auto& v : vectors) {
    if (v.n_qubits() != n_qubits) throw DimensionMismatchError("onto_span: vector dimension mismatch");
    exact = exact && v.is_exact();
  }
  if (exact) {
    std::vector<ExactVector> cols;
    cols.reserve(vectors.size());
    for (const auto& v : vectors) cols.push_back(v.exact());
    return trusted(ComplexMatrix::from_exact(projector_onto_span<GaussianRational>(cols, d)));
  }
  std::vector<FloatVector> cols;
  cols.reserve(vectors.size());
  for (const auto& v : vectors) cols.push_back(v.to_float());
  return trusted(ComplexMatrix::from_float(projector_onto_span<std::complex<double>>(cols, d)));
}

Eigen::Index SpecialProjection::rank() const {
  if (is_exact()) {
    const GaussianRational t = mat_.trace_exact();
    if (t.im != 0 || boost::multiprecision::denominator(t.re) != 1 || t.re < 0)
      throw InvalidStateError("projection trace is not a nonnegative integer");
    return t.re.convert_to<Eigen::Index>();
  }
  const double t = mat_.trace().real();
  const double r = std::round(t);
  if (std::abs(t - r) > kTolEig || r < 0)
    throw InvalidStateError("projection trace is not a nonnegative integer within tol_eig");
  return static_cast<Eigen::Index>(r);
}

SpecialProjection projection_join(const SpecialProjection& p, const SpecialProjection& q) {
  ComplexMatrix::check_compatible(p.matrix(), q.matrix(), "projection_join");
  return projection_join_all({p, q});
}

SpecialProjection projection_join_all(const std::vector<SpecialProjection>& ps) {
  if (ps.empty()) throw InvalidArgumentError("projection_join_all: empty list");
  const int n = ps.front().n_qubits();
  bool exact = true;
  for (const auto& p : ps) {
    if (p.n_qubits() != n) throw DimensionMismatchError("projection_join: operand qubit counts differ");
    exact = exact && p.is_exact();
  }
  if (exact) {
    std::vector<ExactVector> cols;
    for (const auto& p : ps) append_nonzero_columns<GaussianRational>(p.matrix().exact(), cols);
    return SpecialProjection::trusted(
        ComplexMatrix::from_exact(projector_onto_span<GaussianRational>(cols, ps.front().matrix().dim())));
  }
  std::vector<FloatVector> cols;
  for (const auto& p : ps) append_nonzero_columns<std::complex<double>>(p.matrix().to_float(), cols);
  return SpecialProjection::trusted(
      ComplexMatrix::from_float(projector_onto_span<std::complex<double>>(cols, ps.front().matrix().dim())));
}

// ---- spectral operations ----------------------------------------------------

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<FloatMatrix> solver(a.to_float(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b, TraceDistanceMode mode) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionMismatchError("trace_distance: dimension mismatch");
  const FloatMatrix diff = a.matrix().to_float() - b.matrix().to_float();
  if (mode == TraceDistanceMode::hilbert_schmidt) return 0.5 * diff.norm();
  Eigen::SelfAdjointEigenSolver<FloatMatrix> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

namespace {

FloatMatrix hermitian_sqrt(const FloatMatrix& a) {
  Eigen::SelfAdjointEigenSolver<FloatMatrix> solver(a);
  Eigen::VectorXd lam = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * lam.asDiagonal() * solver.eigenvectors().adjoint();
}

} // namespace

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionMismatchError("fidelity: dimension mismatch");
  const FloatMatrix sa = hermitian_sqrt(a.matrix().to_float());
  const FloatMatrix inner = sa * b.matrix().to_float() * sa;
  Eigen::SelfAdjointEigenSolver<FloatMatrix> solver(inner, Eigen::EigenvaluesOnly);
  const double f = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(f, 0.0, 1.0);
}

DensityMatrix state_project(const DensityMatrix& s, const SpecialProjection& p) {
  if (s.n_qubits() != p.n_qubits()) throw DimensionMismatchError("state_project: dimension mismatch");
  if (s.backend() == Backend::exact && p.is_exact()) {
    const GaussianRational alpha = trace_product_exact(s.matrix(), p.matrix());
    if (alpha.re <= 0) throw ProjectionAnnihilatesStateError("projection annihilates state");
    ExactMatrix out = p.matrix().exact() * s.matrix().exact() * p.matrix().exact();
    out /= GaussianRational(alpha.re);
    return DensityMatrix::trusted(ComplexMatrix::from_exact(std::move(out)));
  }
  const FloatMatrix sp = s.matrix().to_float();
  const FloatMatrix pp = p.matrix().to_float();
  const double alpha = trace_of_product<std::complex<double>>(sp, pp).real();
  if (alpha <= kTolEig) throw ProjectionAnnihilatesStateError("projection annihilates state");
  FloatMatrix out = pp * sp * pp / alpha;
  out = ((out + out.adjoint()) / 2.0).eval(); // scrub rounding asymmetry
  return DensityMatrix::trusted(ComplexMatrix::from_float(std::move(out)));
}

} // namespace qcantor
