#pragma once

#include <optional>
#include <string>
#include <type_traits>

#include "frobkp/dual.hpp"
#include "frobkp/errors.hpp"
#include "frobkp/labels.hpp"
#include "frobkp/manifold.hpp"
#include "frobkp/series.hpp"
#include "frobkp/xpoly.hpp"

namespace frobkp {

using LoopSeries = LaurentSeries<XPoly>;

// (a, a_hat) with the data the Lax flows need; w is required by t-labels only. a = a_hat is
// allowed, which covers the reduced hierarchy of the finite manifolds.
template <class T>
struct LaxPoint {
  int m = 1, n = 1;
  LaurentSeries<T> a, a_hat;
  std::optional<LaurentSeries<T>> w;
  T rho{};  // rho^(2n) = coefficient of z^-2n in a_hat
  int depth = kDefaultDepth;
};

template <class T>
LaxPoint<T> lax_point(int m, int n, const LaurentSeries<T>& a, const LaurentSeries<T>& a_hat,
                      std::type_identity_t<std::optional<LaurentSeries<T>>> w = std::nullopt,
                      int depth = kDefaultDepth) {
  if (a.top_bound() != 2 * m || !(a.coeff(2 * m) == Coeff<T>::from(1)))
    throw BadLeadingTerm("a must be z^2m plus lower powers");
  if (a_hat.bottom_bound() < -2 * n) throw BadSupport("a_hat has a pole of order above 2n");
  const T bottom = a_hat.coeff(-2 * n);
  if (Coeff<T>::is_zero(bottom)) throw ZeroBottomCoefficient("a_hat vanishes at z^-2n");
  auto rho = Coeff<T>::root(bottom, 2 * n);
  if (!rho) throw RootMismatch("no 2n-th root of the bottom coefficient of a_hat");
  return {m, n, a, a_hat, std::move(w), *rho, depth};
}

// a = zeta_- + l, a_hat = l - zeta_+ with zeta = w^2.
template <class T>
LaxPoint<T> lax_point_poly(int m, int n, const LaurentSeries<T>& w, const LaurentSeries<T>& l,
                           int depth = kDefaultDepth) {
  const auto zeta = w * w;
  return lax_point(m, n, minus_part(zeta) + l, l - plus_part(zeta), w, depth);
}

template <class T>
LaxPoint<T> lax_point(const Point<T>& pt) {
  std::optional<LaurentSeries<T>> w;
  if (pt.has_w()) w = pt.w();
  return {pt.m(), pt.n(), pt.a(), pt.a_hat(), w, pt.rho(), pt.depth()};
}

// ------------------------------------------------------------------ bracket

template <class T>
LaurentSeries<T> x_derivative(const LaurentSeries<T>& f) {
  std::vector<std::pair<int, T>> t;
  f.for_each([&](int e, const T& c) { t.emplace_back(e, Coeff<T>::dx(c)); });
  return LaurentSeries<T>::from_terms(t, f.parity(), f.window());
}

// {f, g} = f_z g_x - g_z f_x
template <class T>
LaurentSeries<T> bracket(const LaurentSeries<T>& f, const LaurentSeries<T>& g) {
  return f.derivative() * x_derivative(g) - g.derivative() * x_derivative(f);
}

// Gamma(beta) / Gamma(p + 1 + beta) = 1 / (beta (beta + 1) ... (beta + p))
inline Rational gamma_ratio(const Rational& beta, int p) {
  Rational d = 1;
  for (int r = 0; r <= p; ++r) d *= beta + r;
  return 1 / d;
}

// (2p)!! = 2^p p!
inline Rational even_double_factorial(int p) {
  Rational out = 1;
  for (int r = 1; r <= p; ++r) out *= 2 * r;
  return out;
}

namespace detail {
inline Rational h_exponent(int m, int j) { return make_rational(2 * m - 2 * j + 1, 2 * m); }

template <class T>
const LaurentSeries<T>& need_w(const LaxPoint<T>& pt) {
  if (!pt.w) throw ConfigError("t-labels need the square root w of zeta");
  return *pt.w;
}

template <class T>
void check_label(const LaxPoint<T>& pt, Label u) {
  if (u.kind == Label::Kind::H && (u.index < 1 || u.index > pt.m)) throw ConfigError("h index out of range");
  if (u.kind == Label::Kind::HHat && (u.index < 1 || u.index > pt.n)) throw ConfigError("hhat index out of range");
}

// a^alpha at infinity
template <class T>
LaurentSeries<T> a_power(const LaxPoint<T>& pt, const Rational& alpha) {
  return fractional_power_at_infinity(pt.a, alpha, Coeff<T>::from(1), pt.depth);
}
// a_hat^alpha at zero
template <class T>
LaurentSeries<T> a_hat_power(const LaxPoint<T>& pt, const Rational& alpha) {
  return fractional_power_at_zero(pt.a_hat, alpha, pt.rho, pt.depth);
}
}  // namespace detail

// A_{u,p}: w^(2i+1) phi^p / ((2i+1)(2p)!!) at infinity for t^i, the Gamma-weighted powers
// a^(p+beta) at infinity for h^j and a_hat^(p+beta) at zero for hhat^k.
template <class T>
LaurentSeries<T> lax_generator(const LaxPoint<T>& pt, Label u, int p) {
  detail::check_label(pt, u);
  if (p < 0) throw ConfigError("p must be non-negative");
  switch (u.kind) {
    case Label::Kind::T: {
      const auto& w = detail::need_w(pt);
      const int k = 2 * u.index + 1;
      const auto phi = pt.a + pt.a_hat;
      return (power(w, k, Where::Infinity, pt.depth) * power(phi, p, Where::Infinity, pt.depth))
          .scaled(1 / (Rational(k) * even_double_factorial(p)));
    }
    case Label::Kind::H: {
      const Rational beta = detail::h_exponent(pt.m, u.index);
      return detail::a_power(pt, p + beta).scaled(gamma_ratio(beta, p) / (2 * pt.m));
    }
    case Label::Kind::HHat: {
      const Rational beta = detail::h_exponent(pt.n, u.index);
      return detail::a_hat_power(pt, p + beta).scaled(gamma_ratio(beta, p) / (2 * pt.n));
    }
  }
  return {};
}

// theta_{u,p} = [z^-1] A_{u,p} in each of the three cases.
template <class T>
T theta_density(const LaxPoint<T>& pt, Label u, int p) {
  return lax_generator(pt, u, p).coeff(-1);
}

// Gradient of the functional with density theta_{u,p} (the Hamiltonian H_{u,p-1}).
template <class T>
CoTangentVec<T> hamiltonian_gradient(const LaxPoint<T>& pt, Label u, int p) {
  using S = LaurentSeries<T>;
  detail::check_label(pt, u);
  if (p < 0) throw ConfigError("p must be non-negative");
  const int m = pt.m, n = pt.n, K = pt.depth;
  switch (u.kind) {
    case Label::Kind::T: {
      const auto& w = detail::need_w(pt);
      const int k = 2 * u.index + 1;
      const auto phi = pt.a + pt.a_hat;
      const S zeta_part = (power(w, k - 2, Where::Infinity, K) * power(phi, p, Where::Infinity, K))
                              .scaled(make_rational(k, 2));
      S phi_part(Parity::Odd);
      if (p > 0)
        phi_part = (power(w, k, Where::Infinity, K) * power(phi, p - 1, Where::Infinity, K)).scaled(Rational(p));
      const Rational c = 1 / (Rational(k) * even_double_factorial(p));
      return {select(zeta_part + phi_part, Keep::AtLeast, 1 - 2 * m).scaled(c),
              select(phi_part - zeta_part, Keep::AtMost, 2 * n - 1).scaled(c)};
    }
    case Label::Kind::H: {
      const Rational beta = detail::h_exponent(m, u.index);
      const Rational c = gamma_ratio(beta, p) * (p + beta) / (2 * m);
      return {select(detail::a_power(pt, p + beta - 1), Keep::AtLeast, 1 - 2 * m).scaled(c), S(Parity::Odd)};
    }
    case Label::Kind::HHat: {
      const Rational beta = detail::h_exponent(n, u.index);
      const Rational c = gamma_ratio(beta, p) * (p + beta) / (2 * n);
      return {S(Parity::Odd), select(detail::a_hat_power(pt, p + beta - 1), Keep::AtMost, 2 * n - 1).scaled(c)};
    }
  }
  return {};
}

// ------------------------------------------------------------ Poisson operators

template <class T>
TangentVec<T> poisson1(const LaxPoint<T>& pt, const CoTangentVec<T>& w) {
  const auto b = bracket(pt.a, w.omega) + bracket(pt.a_hat, w.omega_hat);
  const auto s = w.omega + w.omega_hat;
  return {bracket(pt.a, minus_part(s)) - minus_part(b), plus_part(b) - bracket(pt.a_hat, plus_part(s))};
}

template <class T>
TangentVec<T> poisson2(const LaxPoint<T>& pt, const CoTangentVec<T>& w) {
  const auto b = bracket(pt.a, w.omega) + bracket(pt.a_hat, w.omega_hat);
  const auto s = pt.a * w.omega + pt.a_hat * w.omega_hat;
  return {bracket(pt.a, minus_part(s)) - pt.a * minus_part(b), pt.a_hat * plus_part(b) - bracket(pt.a_hat, plus_part(s))};
}

// (da/dT^{u,p}, da_hat/dT^{u,p}) = ({a, (A_{u,p})_-}, {(A_{u,p})_+, a_hat})
template <class T>
TangentVec<T> lax_rhs(const LaxPoint<T>& pt, Label u, int p) {
  const auto A = lax_generator(pt, u, p);
  return {bracket(pt.a, minus_part(A)), bracket(plus_part(A), pt.a_hat)};
}

struct FlowReport {
  bool pass = true;
  std::string witness;
};

// P1(grad theta_{u,p+1}) = (p + 1/2 + mu_u)^-1 P2(grad theta_{u,p}) = lax_rhs(u, p)
template <class T>
FlowReport recursion_check(const LaxPoint<T>& pt, Label u, int p) {
  const auto rhs = lax_rhs(pt, u, p);
  const auto first = poisson1(pt, hamiltonian_gradient(pt, u, p + 1));
  const Rational factor = p + make_rational(1, 2) + mu(u, pt.m, pt.n);
  const auto second = poisson2(pt, hamiltonian_gradient(pt, u, p)).scaled(1 / factor);
  FlowReport r;
  if (!agrees(first, rhs)) {
    r.pass = false;
    r.witness = "P1 side: " + (first.xi - rhs.xi).str() + " | " + (first.xi_hat - rhs.xi_hat).str();
  } else if (!agrees(second, rhs)) {
    r.pass = false;
    r.witness = "P2 side: " + (second.xi - rhs.xi).str() + " | " + (second.xi_hat - rhs.xi_hat).str();
  }
  return r;
}

// --------------------------------------------------- two-component BKP flows

enum class BkpSide { S, SHat };

// lambda = a^(1/2m) at infinity, lambda_hat = a_hat^(1/2n) at zero
template <class T>
LaurentSeries<T> bkp_lambda(const LaxPoint<T>& pt) {
  return detail::a_power(pt, make_rational(1, 2 * pt.m));
}
template <class T>
LaurentSeries<T> bkp_lambda_hat(const LaxPoint<T>& pt) {
  return detail::a_hat_power(pt, make_rational(1, 2 * pt.n));
}

// d/ds_k: lambda -> {(lambda^k)_+, lambda}; d/dshat_k: lambda -> {-(lambda_hat^k)_-, lambda};
// the same for lambda_hat, pulled back by a = lambda^2m, a_hat = lambda_hat^2n.
template <class T>
TangentVec<T> bkp_rhs(const LaxPoint<T>& pt, BkpSide side, int k) {
  if (k < 1 || k % 2 == 0) throw ConfigError("BKP times are indexed by odd positive k");
  const int m = pt.m, n = pt.n, K = pt.depth;
  const auto lam = bkp_lambda(pt), lam_hat = bkp_lambda_hat(pt);
  const auto gen = side == BkpSide::S ? plus_part(power(lam, k, Where::Infinity, K))
                                      : -minus_part(power(lam_hat, k, Where::Zero, K));
  const auto d_lam = bracket(gen, lam), d_lam_hat = bracket(gen, lam_hat);
  const auto xi = (power(lam, 2 * m - 1, Where::Infinity, K) * d_lam).scaled(Rational(2 * m));
  const auto xi_hat = (power(lam_hat, 2 * n - 1, Where::Zero, K) * d_lam_hat).scaled(Rational(2 * n));
  return {xi, xi_hat};
}

// Gradients of H_k = (2m/k) res lambda^k and Hhat_k = (2n/k) res lambda_hat^k.
template <class T>
CoTangentVec<T> bkp_gradient(const LaxPoint<T>& pt, BkpSide side, int k) {
  using S = LaurentSeries<T>;
  const int m = pt.m, n = pt.n;
  if (side == BkpSide::S)
    return {select(detail::a_power(pt, make_rational(k - 2 * m, 2 * m)), Keep::AtLeast, 1 - 2 * m), S(Parity::Odd)};
  return {S(Parity::Odd), select(detail::a_hat_power(pt, make_rational(k - 2 * n, 2 * n)), Keep::AtMost, 2 * n - 1)};
}

// P2(dH_k) = P1(dH_{k+2m}) = bkp_rhs(s_k), and the same on the hat side with 2n.
template <class T>
FlowReport bkp_biham_check(const LaxPoint<T>& pt, int k) {
  FlowReport r;
  for (BkpSide side : {BkpSide::S, BkpSide::SHat}) {
    const int shift = side == BkpSide::S ? 2 * pt.m : 2 * pt.n;
    const auto flow = bkp_rhs(pt, side, k);
    const auto p2 = poisson2(pt, bkp_gradient(pt, side, k));
    const auto p1 = poisson1(pt, bkp_gradient(pt, side, k + shift));
    const std::string name = side == BkpSide::S ? "s_" : "shat_";
    if (!agrees(p2, flow)) {
      r.pass = false;
      r.witness = name + std::to_string(k) + ": P2(dH_k) differs from the Lax flow";
      return r;
    }
    if (!agrees(p1, flow)) {
      r.pass = false;
      r.witness = name + std::to_string(k) + ": P1(dH_{k+shift}) differs from the Lax flow";
      return r;
    }
  }
  return r;
}

// T^{h^j,p} = c s_k with k = 2mp + 2m - 2j + 1 and c = Gamma(beta)/(2m Gamma(p+1+beta));
// likewise for hhat^k with n.
struct BkpTime {
  BkpSide side;
  int k;
  Rational scale;
};
inline BkpTime bkp_time(Label u, int p, int m, int n) {
  if (u.kind == Label::Kind::T) throw ConfigError("t-flows are not BKP flows");
  const bool h = u.kind == Label::Kind::H;
  const int N = h ? m : n;
  const Rational beta = make_rational(2 * N - 2 * u.index + 1, 2 * N);
  return {h ? BkpSide::S : BkpSide::SHat, 2 * N * p + 2 * N - 2 * u.index + 1, gamma_ratio(beta, p) / (2 * N)};
}

}  // namespace frobkp
