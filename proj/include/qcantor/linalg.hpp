#pragma once

// Scalar-generic kernels on dense Eigen matrices.  Everything here is a pure
// free function templated on the scalar type; the two instantiations used by
// the library are GaussianRational (exact) and std::complex<double>.
//
// Index convention: the row/column index of an n-qubit matrix encodes the bit
// string a_0 ... a_{n-1} as sum_j a_j * 2^j, i.e. qubit 0 is the least
// significant bit and the most significant digit is written on the right.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qcantor/errors.hpp"
#include "qcantor/scalar.hpp"
#include "qcantor/version.hpp"

namespace qcantor {

template <typename Scalar>
using SquareMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ColVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ExactMatrix = SquareMatrix<GaussianRational>;
using FloatMatrix = SquareMatrix<std::complex<double>>;
using ExactVector = ColVector<GaussianRational>;
using FloatVector = ColVector<std::complex<double>>;

template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool is_exact = true;
  using Real = Rational;
  static bool negligible_norm2(const Rational& n2) { return n2 == 0; }
};

template <>
struct ScalarTraits<std::complex<double>> {
  static constexpr bool is_exact = false;
  using Real = double;
  static bool negligible_norm2(double n2) { return n2 <= kTolEig * kTolEig; }
};

// Kronecker product in the low-bit-first layout: the entry of the result at
// ((sigma,rho),(tau,pi)) is A_{sigma,tau} * B_{rho,pi}, where sigma,tau index
// A and the concatenated string places B's bits above A's.
template <typename Scalar>
SquareMatrix<Scalar> tensor_product(const SquareMatrix<Scalar>& a, const SquareMatrix<Scalar>& b) {
  const Eigen::Index da = a.rows(), db = b.rows();
  SquareMatrix<Scalar> out(da * db, da * db);
  for (Eigen::Index rb = 0; rb < db; ++rb)
    for (Eigen::Index cb = 0; cb < db; ++cb)
      out.block(rb * da, cb * da, da, da) = b(rb, cb) * a;
  return out;
}

template <typename Scalar>
ColVector<Scalar> tensor_product(const ColVector<Scalar>& a, const ColVector<Scalar>& b) {
  const Eigen::Index da = a.size(), db = b.size();
  ColVector<Scalar> out(da * db);
  for (Eigen::Index rb = 0; rb < db; ++rb) out.segment(rb * da, da) = b(rb) * a;
  return out;
}

// A -> A (x) I_2, the norm-preserving embedding M_n -> M_{n+1}.  In the fixed
// layout this is the block-diagonal matrix diag(A, A).
template <typename Scalar>
SquareMatrix<Scalar> embed_once(const SquareMatrix<Scalar>& a) {
  const Eigen::Index d = a.rows();
  SquareMatrix<Scalar> out = SquareMatrix<Scalar>::Zero(2 * d, 2 * d);
  out.topLeftCorner(d, d) = a;
  out.bottomRightCorner(d, d) = a;
  return out;
}

// A (x) I_{2^k} in one step.
template <typename Scalar>
SquareMatrix<Scalar> embed_by(const SquareMatrix<Scalar>& a, int extra_qubits) {
  const Eigen::Index d = a.rows();
  const Eigen::Index copies = Eigen::Index(1) << extra_qubits;
  SquareMatrix<Scalar> out = SquareMatrix<Scalar>::Zero(d * copies, d * copies);
  for (Eigen::Index h = 0; h < copies; ++h) out.block(h * d, h * d, d, d) = a;
  return out;
}

// Partial trace over the last qubit: b_{sigma,tau} = a_{sigma0,tau0} + a_{sigma1,tau1}.
template <typename Scalar>
SquareMatrix<Scalar> partial_trace_once(const SquareMatrix<Scalar>& a) {
  const Eigen::Index d = a.rows() / 2;
  SquareMatrix<Scalar> out(d, d);
  out = a.topLeftCorner(d, d) + a.bottomRightCorner(d, d);
  return out;
}

template <typename Scalar>
Scalar trace_of_product(const SquareMatrix<Scalar>& a, const SquareMatrix<Scalar>& b) {
  return (a.array() * b.transpose().array()).sum();
}

// conj(a) . b with an explicit zero-skip; rational arithmetic on structured
// (mostly zero) vectors is dominated by gcd churn otherwise.
inline GaussianRational sparse_dot(const ColVector<GaussianRational>& a,
                                   const ColVector<GaussianRational>& b) {
  GaussianRational acc;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!a(i).is_zero() && !b(i).is_zero()) acc += conj(a(i)) * b(i);
  return acc;
}

inline void sparse_axpy(ColVector<GaussianRational>& w, const GaussianRational& coeff,
                        const ColVector<GaussianRational>& v) {
  if (coeff.is_zero()) return;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) w(i) += coeff * v(i);
}

// Modified Gram-Schmidt without normalisation.  Returns pairwise-orthogonal
// nonzero vectors spanning the same space as the inputs; on the float backend
// a second orthogonalisation pass is run and vectors of norm <= kTolEig are
// treated as zero (the 1e-9 rank tolerance).
template <typename Scalar>
std::vector<ColVector<Scalar>> orthogonal_span_basis(const std::vector<ColVector<Scalar>>& columns) {
  using Traits = ScalarTraits<Scalar>;
  std::vector<ColVector<Scalar>> basis;
  std::vector<typename Traits::Real> norms2;
  for (const auto& col : columns) {
    if (!columns.empty() && static_cast<Eigen::Index>(basis.size()) == columns.front().size())
      break; // span is already the whole space
    ColVector<Scalar> w = col;
    if constexpr (Traits::is_exact) {
      for (std::size_t j = 0; j < basis.size(); ++j)
        sparse_axpy(w, -(sparse_dot(basis[j], w) / Scalar(norms2[j])), basis[j]);
      typename Traits::Real n2 = real(sparse_dot(w, w));
      if (!Traits::negligible_norm2(n2)) {
        basis.push_back(std::move(w));
        norms2.push_back(std::move(n2));
      }
    } else {
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t j = 0; j < basis.size(); ++j) w -= basis[j] * (basis[j].dot(w) / Scalar(norms2[j]));
      typename Traits::Real n2 = real(w.dot(w));
      if (!Traits::negligible_norm2(n2)) {
        basis.push_back(std::move(w));
        norms2.push_back(n2);
      }
    }
  }
  return basis;
}

// Orthogonal projector onto the span of the given columns,
// P = sum_v v v^dagger / <v,v>.  Exactly idempotent on the exact backend.
template <typename Scalar>
SquareMatrix<Scalar> projector_onto_span(const std::vector<ColVector<Scalar>>& columns, Eigen::Index dim) {
  SquareMatrix<Scalar> p = SquareMatrix<Scalar>::Zero(dim, dim);
  for (const auto& v : orthogonal_span_basis<Scalar>(columns)) {
    if constexpr (ScalarTraits<Scalar>::is_exact) {
      const Scalar scale = Scalar(1) / Scalar(real(sparse_dot(v, v)));
      for (Eigen::Index j = 0; j < dim; ++j) {
        if (v(j).is_zero()) continue;
        const Scalar vj_scaled = v(j) * scale;
        for (Eigen::Index i = 0; i < dim; ++i)
          if (!v(i).is_zero()) p(i, j) += v(i) * conj(vj_scaled);
      }
    } else {
      Scalar n2 = Scalar(real(v.dot(v)));
      p += (v * v.adjoint()) / n2;
    }
  }
  return p;
}

template <typename Scalar>
std::vector<ColVector<Scalar>> matrix_columns(const SquareMatrix<Scalar>& m) {
  std::vector<ColVector<Scalar>> cols;
  cols.reserve(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) cols.push_back(m.col(c));
  return cols;
}

// Columns that are not (numerically) zero; the zero ones contribute nothing
// to a span.
template <typename Scalar>
void append_nonzero_columns(const SquareMatrix<Scalar>& m, std::vector<ColVector<Scalar>>& out) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    bool nonzero = false;
    if constexpr (ScalarTraits<Scalar>::is_exact) {
      for (Eigen::Index i = 0; i < m.rows() && !nonzero; ++i) nonzero = !m(i, c).is_zero();
    } else {
      nonzero = m.col(c).squaredNorm() > kTolEig * kTolEig;
    }
    if (nonzero) out.push_back(m.col(c));
  }
}

inline FloatMatrix exact_to_float(const ExactMatrix& a) {
  FloatMatrix out(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, j) = to_complex(a(i, j));
  return out;
}

inline FloatVector exact_to_float(const ExactVector& a) {
  FloatVector out(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out(i) = to_complex(a(i));
  return out;
}

inline bool exactly_equal(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

inline bool exactly_zero(const ExactMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!a(i, j).is_zero()) return false;
  return true;
}

// Entrywise max modulus, evaluated in double.
inline double max_abs(const FloatMatrix& a) {
  double m = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) m = std::max(m, std::abs(a(i, j)));
  return m;
}

inline double max_abs(const ExactMatrix& a) {
  double m = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) m = std::max(m, std::abs(to_complex(a(i, j))));
  return m;
}

inline bool is_power_of_two(Eigen::Index d) { return d > 0 && (d & (d - 1)) == 0; }

inline int qubits_for_dim(Eigen::Index d) {
  if (!is_power_of_two(d)) throw DimensionMismatchError("matrix dimension is not a power of two");
  int n = 0;
  while ((Eigen::Index(1) << n) < d) ++n;
  return n;
}

} // namespace qcantor
