#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>

#include "frobkp/exact_scalar.hpp"
#include "frobkp/rational.hpp"

namespace frobkp {

// Ring interface used by LaurentSeries. Each coefficient type specializes this.
//   from(q), is_zero(x), scale(x, q), inverse(x) (units only),
//   root(x, q) (some q-th root, if one exists in the ring),
//   exact_abs / approx_abs (for circle dominance; nullopt when meaningless),
//   dx(x) (derivative in the loop variable, zero for constant rings), str(x).
template <class T>
struct Coeff;

template <>
struct Coeff<ExactScalar> {
  static ExactScalar from(const Rational& q) { return ExactScalar(q); }
  static bool is_zero(const ExactScalar& x) { return x.is_zero(); }
  static ExactScalar scale(const ExactScalar& x, const Rational& q) { return x.scaled(q); }
  static std::optional<ExactScalar> inverse(const ExactScalar& x) { return x.inverse(); }
  static std::optional<ExactScalar> root(const ExactScalar& x, unsigned q) {
    if (!x.is_rational()) return std::nullopt;
    if (auto r = exact_root(x.rational(), q)) return ExactScalar(*r);
    if (x.rational() == 0) return std::nullopt;
    return ExactScalar::generator(make_radical_field(q, x.rational()));
  }
  static std::optional<Rational> exact_abs(const ExactScalar& x) {
    if (!x.is_rational()) return std::nullopt;
    return abs(x.rational());
  }
  static std::optional<double> approx_abs(const ExactScalar& x) {
    double v = x.approx();
    if (std::isnan(v)) return std::nullopt;
    return std::fabs(v);
  }
  static ExactScalar dx(const ExactScalar&) { return ExactScalar(); }
  static std::string str(const ExactScalar& x) { return x.str(); }
};

template <>
struct Coeff<double> {
  static double from(const Rational& q) { return q.get_d(); }
  static bool is_zero(double x) { return x == 0.0; }
  static double scale(double x, const Rational& q) { return x * q.get_d(); }
  static std::optional<double> inverse(double x) {
    if (x == 0.0) return std::nullopt;
    return 1.0 / x;
  }
  static std::optional<double> root(double x, unsigned q) {
    if (x > 0) return std::pow(x, 1.0 / q);
    if (x < 0 && q % 2 == 1) return -std::pow(-x, 1.0 / q);
    return std::nullopt;
  }
  static std::optional<Rational> exact_abs(double) { return std::nullopt; }
  static std::optional<double> approx_abs(double x) { return std::fabs(x); }
  static double dx(double) { return 0.0; }
  static std::string str(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  }
};

template <>
struct Coeff<std::complex<double>> {
  using X = std::complex<double>;
  static X from(const Rational& q) { return {q.get_d(), 0.0}; }
  static bool is_zero(const X& x) { return x == X(); }
  static X scale(const X& x, const Rational& q) { return x * q.get_d(); }
  static std::optional<X> inverse(const X& x) {
    if (x == X()) return std::nullopt;
    return 1.0 / x;
  }
  static std::optional<X> root(const X& x, unsigned q) {
    if (x == X()) return std::nullopt;
    return std::pow(x, 1.0 / q);
  }
  static std::optional<Rational> exact_abs(const X&) { return std::nullopt; }
  static std::optional<double> approx_abs(const X& x) { return std::abs(x); }
  static X dx(const X&) { return {}; }
  static std::string str(const X& x) {
    std::ostringstream os;
    os.precision(17);
    os << x.real() << (x.imag() < 0 ? "-" : "+") << std::fabs(x.imag()) << "i";
    return os.str();
  }
};

template <class T>
T coeff_pow(const T& x, int k) {
  T out = Coeff<T>::from(1);
  T b = x;
  if (k < 0) {
    auto inv = Coeff<T>::inverse(x);
    if (!inv) throw std::domain_error("negative power of a non-unit");
    b = *inv;
    k = -k;
  }
  while (k) {
    if (k & 1) out = out * b;
    b = b * b;
    k >>= 1;
  }
  return out;
}

}  // namespace frobkp
