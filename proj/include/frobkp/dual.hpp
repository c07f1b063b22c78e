#pragma once

#include <optional>
#include <string>

#include "frobkp/coefficient.hpp"

namespace frobkp {

// First-order jet re + eps * d with eps^2 = 0.
template <class T>
struct Dual {
  T re{};
  T eps{};

  Dual() = default;
  Dual(T r, T e) : re(std::move(r)), eps(std::move(e)) {}
  Dual(long v) : re(Coeff<T>::from(Rational(v))), eps() {}  // NOLINT(google-explicit-constructor)

  Dual& operator+=(const Dual& o) {
    re += o.re;
    eps += o.eps;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    re -= o.re;
    eps -= o.eps;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    T e = re * o.eps + eps * o.re;
    re = re * o.re;
    eps = std::move(e);
    return *this;
  }
  Dual operator-() const { return Dual(-re, -eps); }
  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend bool operator==(const Dual& a, const Dual& b) { return a.re == b.re && a.eps == b.eps; }
  friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }
};

template <class T>
struct Coeff<Dual<T>> {
  using D = Dual<T>;
  static D from(const Rational& q) { return D(Coeff<T>::from(q), Coeff<T>::from(0)); }
  static bool is_zero(const D& x) { return Coeff<T>::is_zero(x.re) && Coeff<T>::is_zero(x.eps); }
  static D scale(const D& x, const Rational& q) {
    return D(Coeff<T>::scale(x.re, q), Coeff<T>::scale(x.eps, q));
  }
  static std::optional<D> inverse(const D& x) {
    auto r = Coeff<T>::inverse(x.re);
    if (!r) return std::nullopt;
    return D(*r, -(x.eps * *r * *r));
  }
  static std::optional<D> root(const D& x, unsigned q) {
    auto r = Coeff<T>::root(x.re, q);
    if (!r) return std::nullopt;
    // (r + e)^q = r^q + q r^(q-1) e
    auto inv = Coeff<T>::inverse(coeff_pow(*r, static_cast<int>(q) - 1));
    if (!inv) return std::nullopt;
    return D(*r, Coeff<T>::scale(x.eps * *inv, Rational(1, q)));
  }
  static std::optional<Rational> exact_abs(const D&) { return std::nullopt; }
  static std::optional<double> approx_abs(const D&) { return std::nullopt; }
  static D dx(const D& x) { return D(Coeff<T>::dx(x.re), Coeff<T>::dx(x.eps)); }
  static std::string str(const D& x) {
    return "(" + Coeff<T>::str(x.re) + ") + eps*(" + Coeff<T>::str(x.eps) + ")";
  }
};

}  // namespace frobkp
