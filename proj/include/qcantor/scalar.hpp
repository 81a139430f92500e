#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include "qcantor/errors.hpp"

namespace qcantor {

// Arbitrary-precision rational.  Expression templates are switched off so
// every arithmetic expression materialises to a plain Rational, which keeps
// the type usable as (the real part of) an Eigen scalar.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

inline Rational rational(long long num, long long den = 1) {
  if (den == 0) throw InvalidArgumentError("rational: zero denominator");
  return Rational(num) / Rational(den);
}

// Parses "p/q", "p", or a decimal integer with optional sign.
Rational parse_rational(const std::string& text);

// Canonical text form: "p/q", or just "p" when the denominator is 1.
std::string rational_to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

// 2^e for possibly negative e.
inline Rational pow2(long e) {
  Rational r = 1;
  Rational f = e >= 0 ? Rational(2) : rational(1, 2);
  for (long i = 0, n = e >= 0 ? e : -e; i < n; ++i) r *= f;
  return r;
}

// An element of Q(i): the exact scalar backend.  Closed under +, -, *,
// conjugation and division by nonzero; conversion to complex<double> is
// total, the reverse direction deliberately does not exist.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(long long r) : re(r), im(0) {} // NOLINT: Eigen needs Scalar(0), Scalar(1)
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  const Rational& real() const { return re; }
  const Rational& imag() const { return im; }

  bool is_zero() const { return re == 0 && im == 0; }

  GaussianRational operator-() const { return {-re, -im}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational n2 = o.re * o.re + o.im * o.im;
    if (n2 == 0) throw InvalidArgumentError("GaussianRational: division by zero");
    Rational r = (re * o.re + im * o.im) / n2;
    Rational i = (im * o.re - re * o.im) / n2;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline GaussianRational conj(const GaussianRational& z) { return {z.re, -z.im}; }
inline const Rational& real(const GaussianRational& z) { return z.re; }
inline const Rational& imag(const GaussianRational& z) { return z.im; }
inline Rational abs2(const GaussianRational& z) { return z.re * z.re + z.im * z.im; }

inline std::complex<double> to_complex(const GaussianRational& z) {
  return {to_double(z.re), to_double(z.im)};
}

} // namespace qcantor

namespace Eigen {

template <>
struct NumTraits<qcantor::Rational> : GenericNumTraits<qcantor::Rational> {
  using Real = qcantor::Rational;
  using NonInteger = qcantor::Rational;
  using Literal = long long;
  using Nested = qcantor::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 60,
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<qcantor::GaussianRational> : GenericNumTraits<qcantor::GaussianRational> {
  using Real = qcantor::Rational;
  using NonInteger = qcantor::GaussianRational;
  using Literal = long long;
  using Nested = qcantor::GaussianRational;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 80,
    MulCost = 240,
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

} // namespace Eigen
