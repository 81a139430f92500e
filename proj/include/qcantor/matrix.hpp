#pragma once

// Runtime-tagged complex matrices on the 2^n-dimensional qubit spaces, and
// the two constrained matrix types the randomness framework is built from:
// density matrices and special projections.

#include <complex>
#include <string>
#include <variant>

#include "qcantor/bits.hpp"
#include "qcantor/linalg.hpp"

namespace qcantor {

enum class Backend { exact, floating };

inline const char* backend_name(Backend b) { return b == Backend::exact ? "exact" : "float"; }

class ComplexMatrix {
public:
  ComplexMatrix() : n_qubits_(0), data_(ExactMatrix(ExactMatrix::Identity(1, 1))) {}

  static ComplexMatrix from_exact(ExactMatrix m) {
    const int n = qubits_for_dim(check_square(m.rows(), m.cols()));
    return ComplexMatrix(n, std::move(m));
  }
  static ComplexMatrix from_float(FloatMatrix m) {
    const int n = qubits_for_dim(check_square(m.rows(), m.cols()));
    return ComplexMatrix(n, std::move(m));
  }
  static ComplexMatrix zero(int n_qubits, Backend b) {
    const Eigen::Index d = Eigen::Index(1) << n_qubits;
    if (b == Backend::exact) return ComplexMatrix(n_qubits, ExactMatrix(ExactMatrix::Zero(d, d)));
    return ComplexMatrix(n_qubits, FloatMatrix(FloatMatrix::Zero(d, d)));
  }
  static ComplexMatrix identity(int n_qubits, Backend b) {
    const Eigen::Index d = Eigen::Index(1) << n_qubits;
    if (b == Backend::exact) return ComplexMatrix(n_qubits, ExactMatrix(ExactMatrix::Identity(d, d)));
    return ComplexMatrix(n_qubits, FloatMatrix(FloatMatrix::Identity(d, d)));
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return Eigen::Index(1) << n_qubits_; }
  Backend backend() const { return std::holds_alternative<ExactMatrix>(data_) ? Backend::exact : Backend::floating; }
  bool is_exact() const { return backend() == Backend::exact; }

  const ExactMatrix& exact() const {
    if (!is_exact()) throw BackendMismatchError("expected an exact-backend matrix");
    return std::get<ExactMatrix>(data_);
  }
  const FloatMatrix& floating() const {
    if (is_exact()) throw BackendMismatchError("expected a float-backend matrix");
    return std::get<FloatMatrix>(data_);
  }

  // Total: exact entries convert to double, float passes through.
  FloatMatrix to_float() const { return is_exact() ? exact_to_float(exact()) : floating(); }
  ComplexMatrix as_float() const { return ComplexMatrix(n_qubits_, to_float()); }

  std::complex<double> entry(Eigen::Index i, Eigen::Index j) const {
    return is_exact() ? to_complex(exact()(i, j)) : floating()(i, j);
  }

  ComplexMatrix adjoint() const {
    if (is_exact()) return ComplexMatrix(n_qubits_, ExactMatrix(exact().adjoint()));
    return ComplexMatrix(n_qubits_, FloatMatrix(floating().adjoint()));
  }

  std::complex<double> trace() const {
    return is_exact() ? to_complex(exact().trace()) : floating().trace();
  }
  GaussianRational trace_exact() const { return exact().trace(); }

  bool is_hermitian(double tol) const {
    if (is_exact()) return exactly_equal(exact(), ExactMatrix(exact().adjoint()));
    return max_abs(FloatMatrix(floating() - floating().adjoint())) <= tol;
  }

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_compatible(a, b, "operator+");
    if (a.is_exact()) return ComplexMatrix(a.n_qubits_, ExactMatrix(a.exact() + b.exact()));
    return ComplexMatrix(a.n_qubits_, FloatMatrix(a.floating() + b.floating()));
  }
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_compatible(a, b, "operator-");
    if (a.is_exact()) return ComplexMatrix(a.n_qubits_, ExactMatrix(a.exact() - b.exact()));
    return ComplexMatrix(a.n_qubits_, FloatMatrix(a.floating() - b.floating()));
  }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_compatible(a, b, "operator*");
    if (a.is_exact()) return ComplexMatrix(a.n_qubits_, ExactMatrix(a.exact() * b.exact()));
    return ComplexMatrix(a.n_qubits_, FloatMatrix(a.floating() * b.floating()));
  }

  static void check_compatible(const ComplexMatrix& a, const ComplexMatrix& b, const std::string& op) {
    if (a.backend() != b.backend())
      throw BackendMismatchError(op + ": mixed exact/float operands");
    if (a.n_qubits_ != b.n_qubits_)
      throw DimensionMismatchError(op + ": operand qubit counts differ (" + std::to_string(a.n_qubits_) +
                                   " vs " + std::to_string(b.n_qubits_) + ")");
  }

private:
  ComplexMatrix(int n_qubits, ExactMatrix m) : n_qubits_(n_qubits), data_(std::move(m)) {}
  ComplexMatrix(int n_qubits, FloatMatrix m) : n_qubits_(n_qubits), data_(std::move(m)) {}

  static Eigen::Index check_square(Eigen::Index rows, Eigen::Index cols) {
    if (rows != cols) throw DimensionMismatchError("matrix is not square");
    return rows;
  }

  int n_qubits_;
  std::variant<ExactMatrix, FloatMatrix> data_;
};

// Column vector on n qubits; used for pure states and machine inputs.
class ComplexVector {
public:
  static ComplexVector from_exact(ExactVector v) {
    const int n = qubits_for_dim(v.size());
    return ComplexVector(n, std::move(v));
  }
  static ComplexVector from_float(FloatVector v) {
    const int n = qubits_for_dim(v.size());
    return ComplexVector(n, std::move(v));
  }
  static ComplexVector basis(int n_qubits, Eigen::Index index) {
    ExactVector v = ExactVector::Zero(Eigen::Index(1) << n_qubits);
    v(index) = GaussianRational(1);
    return ComplexVector(n_qubits, std::move(v));
  }
  static ComplexVector basis(const std::string& sigma) {
    return basis(static_cast<int>(sigma.size()), string_to_index(sigma));
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return Eigen::Index(1) << n_qubits_; }
  Backend backend() const { return std::holds_alternative<ExactVector>(data_) ? Backend::exact : Backend::floating; }
  bool is_exact() const { return backend() == Backend::exact; }

  const ExactVector& exact() const {
    if (!is_exact()) throw BackendMismatchError("expected an exact-backend vector");
    return std::get<ExactVector>(data_);
  }
  const FloatVector& floating() const {
    if (is_exact()) throw BackendMismatchError("expected a float-backend vector");
    return std::get<FloatVector>(data_);
  }
  FloatVector to_float() const { return is_exact() ? exact_to_float(exact()) : floating(); }

  double norm2() const {
    if (is_exact()) return to_double(exact_norm2());
    return floating().squaredNorm();
  }
  Rational exact_norm2() const {
    Rational n2 = 0;
    for (Eigen::Index i = 0; i < exact().size(); ++i) n2 += abs2(exact()(i));
    return n2;
  }

  // |v><v| without normalisation.
  ComplexMatrix outer() const {
    if (is_exact()) return ComplexMatrix::from_exact(ExactMatrix(exact() * exact().adjoint()));
    return ComplexMatrix::from_float(FloatMatrix(floating() * floating().adjoint()));
  }

private:
  ComplexVector(int n_qubits, ExactVector v) : n_qubits_(n_qubits), data_(std::move(v)) {}
  ComplexVector(int n_qubits, FloatVector v) : n_qubits_(n_qubits), data_(std::move(v)) {}

  int n_qubits_;
  std::variant<ExactVector, FloatVector> data_;
};

// ---- core operations ------------------------------------------------------

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);
ComplexMatrix embed(const ComplexMatrix& a);
ComplexMatrix embed_to(const ComplexMatrix& a, int target_qubits);
ComplexMatrix partial_trace(const ComplexMatrix& a);
ComplexVector apply(const ComplexMatrix& m, const ComplexVector& v);

double tracial_value(const ComplexMatrix& a);
Rational tracial_value_exact(const ComplexMatrix& a);

// Tr(a * b); mixed backends are computed in float, two exact operands exactly.
std::complex<double> trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
GaussianRational trace_product_exact(const ComplexMatrix& a, const ComplexMatrix& b);

std::complex<double> inner_product(const ComplexVector& a, const ComplexVector& b);
GaussianRational inner_product_exact(const ComplexVector& a, const ComplexVector& b);

// Max entrywise |a - b| in double; works across backends.
double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);

// ---- constrained types ----------------------------------------------------

class DensityMatrix {
public:
  // Validates Hermiticity and unit trace (exactly on the exact backend),
  // and positivity of the spectrum down to -kTolEig (computed in float).
  explicit DensityMatrix(ComplexMatrix m);
  static DensityMatrix trusted(ComplexMatrix m) { return DensityMatrix(std::move(m), TrustedTag{}); }

  static DensityMatrix pure_basis(const std::string& sigma);
  static DensityMatrix pure_basis(int n_qubits, Eigen::Index index);
  static DensityMatrix maximally_mixed(int n_qubits);

  const ComplexMatrix& matrix() const { return mat_; }
  int n_qubits() const { return mat_.n_qubits(); }
  Backend backend() const { return mat_.backend(); }
  DensityMatrix as_float() const { return DensityMatrix(mat_.as_float(), TrustedTag{}); }

private:
  struct TrustedTag {};
  DensityMatrix(ComplexMatrix m, TrustedTag) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

class SpecialProjection {
public:
  // Validates p = p^dagger and p^2 = p (exactly on the exact backend, within
  // kTolEig on float) and that the trace is a nonnegative integer.
  explicit SpecialProjection(ComplexMatrix m);
  static SpecialProjection trusted(ComplexMatrix m) { return SpecialProjection(std::move(m), TrustedTag{}); }

  static SpecialProjection zero(int n_qubits, Backend b = Backend::exact) {
    return trusted(ComplexMatrix::zero(n_qubits, b));
  }
  static SpecialProjection identity(int n_qubits, Backend b = Backend::exact) {
    return trusted(ComplexMatrix::identity(n_qubits, b));
  }
  // Diagonal 0/1 projection spanned by the given basis strings.
  static SpecialProjection diagonal(int n_qubits, const std::vector<std::string>& strings);
  // Projection onto the span of arbitrary vectors (exactly idempotent when
  // every vector is exact).
  static SpecialProjection onto_span(int n_qubits, const std::vector<ComplexVector>& vectors);

  const ComplexMatrix& matrix() const { return mat_; }
  int n_qubits() const { return mat_.n_qubits(); }
  Backend backend() const { return mat_.backend(); }
  bool is_exact() const { return mat_.is_exact(); }
  SpecialProjection as_float() const { return SpecialProjection(mat_.as_float(), TrustedTag{}); }

  Eigen::Index rank() const; // = Tr(p), rounded within kTolEig

private:
  struct TrustedTag {};
  SpecialProjection(ComplexMatrix m, TrustedTag) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

// tau_n(a) = 2^{-n} Tr(a) specialised to projections.
inline double tracial_value(const SpecialProjection& p) { return tracial_value(p.matrix()); }
inline Rational tracial_value_exact(const SpecialProjection& p) { return tracial_value_exact(p.matrix()); }

// Projection with range rg(p) + rg(q); same backend required.
SpecialProjection projection_join(const SpecialProjection& p, const SpecialProjection& q);

// n-ary join in a single orthogonalisation pass; mixed backends are promoted
// to float.
SpecialProjection projection_join_all(const std::vector<SpecialProjection>& ps);

// ---- spectral operations (computed in float; exact inputs are converted) --

enum class TraceDistanceMode { standard, hilbert_schmidt };

// standard: half the sum of |eigenvalues| of A - B.
// hilbert_schmidt: (1/2) sqrt(Tr[(A-B)(A-B)^dagger]).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b,
                      TraceDistanceMode mode = TraceDistanceMode::standard);

// F(a, b) = Tr sqrt(sqrt(a) b sqrt(a)), clamped to [0, 1].
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

// Proj s p = p s p / Tr(s p).  Exact when both operands are exact.
DensityMatrix state_project(const DensityMatrix& s, const SpecialProjection& p);

// Ascending eigenvalues of a Hermitian matrix, computed in float.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& a);

} // namespace qcantor
