#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frobkp/coefficient.hpp"
#include "frobkp/exact_scalar.hpp"

namespace frobkp {

// Polynomial in the loop variable x with exact coefficients.
class XPoly {
 public:
  XPoly() = default;
  XPoly(long v) : XPoly(ExactScalar(v)) {}  // NOLINT(google-explicit-constructor)
  XPoly(const ExactScalar& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) c_.push_back(c);
  }
  explicit XPoly(std::vector<ExactScalar> coeffs) : c_(std::move(coeffs)) { trim(); }

  static XPoly x() { return XPoly(std::vector<ExactScalar>{ExactScalar(0), ExactScalar(1)}); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  ExactScalar coeff(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : ExactScalar();
  }
  ExactScalar constant_term() const { return coeff(0); }
  const std::vector<ExactScalar>& coeffs() const { return c_; }

  XPoly derivative() const;
  ExactScalar eval(const ExactScalar& x) const;

  XPoly& operator+=(const XPoly& o);
  XPoly& operator-=(const XPoly& o);
  XPoly& operator*=(const XPoly& o) { return *this = *this * o; }
  XPoly operator-() const;
  friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
  friend XPoly operator-(XPoly a, const XPoly& b) { return a -= b; }
  friend XPoly operator*(const XPoly& a, const XPoly& b);
  friend bool operator==(const XPoly& a, const XPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const XPoly& a, const XPoly& b) { return !(a == b); }

  XPoly scaled(const Rational& q) const;
  std::string str() const;

 private:
  void trim();
  std::vector<ExactScalar> c_;
};

template <>
struct Coeff<XPoly> {
  static XPoly from(const Rational& q) { return XPoly(ExactScalar(q)); }
  static bool is_zero(const XPoly& x) { return x.is_zero(); }
  static XPoly scale(const XPoly& x, const Rational& q) { return x.scaled(q); }
  static std::optional<XPoly> inverse(const XPoly& x) {
    if (!x.is_constant()) return std::nullopt;
    auto r = x.constant_term().inverse();
    if (!r) return std::nullopt;
    return XPoly(*r);
  }
  static std::optional<XPoly> root(const XPoly& x, unsigned q) {
    if (!x.is_constant()) return std::nullopt;
    auto r = Coeff<ExactScalar>::root(x.constant_term(), q);
    if (!r) return std::nullopt;
    return XPoly(*r);
  }
  static std::optional<Rational> exact_abs(const XPoly&) { return std::nullopt; }
  static std::optional<double> approx_abs(const XPoly&) { return std::nullopt; }
  static XPoly dx(const XPoly& x) { return x.derivative(); }
  static std::string str(const XPoly& x) { return x.str(); }
};

}  // namespace frobkp
