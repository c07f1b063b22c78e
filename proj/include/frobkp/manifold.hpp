#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobkp/errors.hpp"
#include "frobkp/labels.hpp"
#include "frobkp/series.hpp"

namespace frobkp {

enum class Mode { Polynomial, Truncated };

inline constexpr int kDefaultDepth = 16;
inline constexpr int kDefaultTRange = 4;

// (xi, xi_hat): xi has exponents <= 2m-2, xi_hat exponents >= -2n.
template <class T>
struct TangentVec {
  LaurentSeries<T> xi{Parity::Even};
  LaurentSeries<T> xi_hat{Parity::Even};

  TangentVec operator+(const TangentVec& o) const { return {xi + o.xi, xi_hat + o.xi_hat}; }
  TangentVec operator-(const TangentVec& o) const { return {xi - o.xi, xi_hat - o.xi_hat}; }
  TangentVec scaled(const T& c) const { return {xi.scaled(c), xi_hat.scaled(c)}; }
  TangentVec scaled(const Rational& c) const { return {xi.scaled(c), xi_hat.scaled(c)}; }
};

// (omega, omega_hat): omega has exponents >= -2m+1, omega_hat exponents <= 2n-1.
template <class T>
struct CoTangentVec {
  LaurentSeries<T> omega{Parity::Odd};
  LaurentSeries<T> omega_hat{Parity::Odd};

  CoTangentVec operator+(const CoTangentVec& o) const {
    return {omega + o.omega, omega_hat + o.omega_hat};
  }
  CoTangentVec operator-(const CoTangentVec& o) const {
    return {omega - o.omega, omega_hat - o.omega_hat};
  }
  CoTangentVec scaled(const T& c) const { return {omega.scaled(c), omega_hat.scaled(c)}; }
  CoTangentVec scaled(const Rational& c) const { return {omega.scaled(c), omega_hat.scaled(c)}; }
};

template <class T>
bool agrees(const TangentVec<T>& a, const TangentVec<T>& b) {
  return agrees(a.xi, b.xi) && agrees(a.xi_hat, b.xi_hat);
}
template <class T>
bool agrees(const CoTangentVec<T>& a, const CoTangentVec<T>& b) {
  return agrees(a.omega, b.omega) && agrees(a.omega_hat, b.omega_hat);
}

// Values of the flat coordinates. Only finitely many t^i are stored; absent ones are 0.
template <class T>
struct FlatChart {
  int m = 0;
  int n = 0;
  std::map<int, T> t;
  std::vector<T> h;     // h[j-1] = h^j
  std::vector<T> hhat;  // hhat[k-1] = hhat^k

  T value(Label u) const {
    switch (u.kind) {
      case Label::Kind::T: {
        auto it = t.find(u.index);
        return it == t.end() ? Coeff<T>::from(0) : it->second;
      }
      case Label::Kind::H:
        return h.at(u.index - 1);
      case Label::Kind::HHat:
        return hhat.at(u.index - 1);
    }
    return Coeff<T>::from(0);
  }
  Rational charge() const { return frobkp::charge(m); }
};

// A point (a, a_hat) of the manifold together with the series derived from it.
// chi and chi_hat are the 2m-th and 2n-th roots of l at infinity and at zero; lambda and
// lambda_hat are the same roots of a and a_hat. Everything is computed at construction.
template <class T>
class Point {
 public:
  using S = LaurentSeries<T>;
  using C = Coeff<T>;

  // Checks the invariants of (a, a_hat). The witness w must satisfy w*w = a - a_hat;
  // rho, if given, is the 2n-th root of the bottom coefficient of a_hat used for chi_hat.
  Point(int m, int n, Mode mode, int depth, S a, S a_hat, std::optional<S> w,
        std::optional<T> rho = std::nullopt)
      : m_(m), n_(n), mode_(mode), depth_(depth), a_(std::move(a)), ahat_(std::move(a_hat)) {
    if (m < 1 || n < 1) throw BadSupport("m and n must be positive");
    if (a_.parity() == Parity::Odd || ahat_.parity() == Parity::Odd)
      throw BadLeadingTerm("a and a_hat must be even");
    if (a_.top_bound() != 2 * m || !(a_.coeff(2 * m) == C::from(1)))
      throw BadLeadingTerm("a must have leading term z^" + std::to_string(2 * m));
    if (ahat_.bottom_bound() < -2 * n) throw BadSupport("a_hat has exponents below -2n");
    if (C::is_zero(ahat_.coeff(-2 * n)))
      throw ZeroBottomCoefficient("a_hat needs a nonzero coefficient at z^" + std::to_string(-2 * n));

    l_ = plus_part(a_) + minus_part(ahat_);
    zeta_ = a_ - ahat_;
    phi_ = a_ + ahat_;
    ap_ = a_.derivative();
    ahatp_ = ahat_.derivative();
    zetap_ = zeta_.derivative();
    lp_ = l_.derivative();

    if (zetap_.is_exact_zero()) throw DegeneratePoint("zeta' vanishes");
    if (w) {
      if (w->parity() != Parity::Odd) throw BadLeadingTerm("w must be odd");
      if (!agrees(*w * *w, zeta_)) throw DegeneratePoint("w*w differs from a - a_hat");
      w_ = std::move(w);
      w_inv_ = circle_inverse_checked(*w_, "w");
    }
    zetap_inv_ = circle_inverse_checked(zetap_, "zeta'");

    const T bottom = ahat_.coeff(-2 * n);
    if (rho) {
      if (!(coeff_pow(*rho, 2 * n) == bottom))
        throw RootMismatch("rho^(2n) differs from the bottom coefficient of a_hat");
      rho_ = *rho;
    } else {
      auto r = C::root(bottom, static_cast<unsigned>(2 * n));
      if (!r) throw RootMismatch("bottom coefficient has no 2n-th root in the coefficient ring");
      rho_ = *r;
    }
    const T one = C::from(1);
    chi_ = fractional_power_at_infinity(l_, make_rational(1, 2 * m), one, depth);
    chi_hat_ = fractional_power_at_zero(l_, make_rational(1, 2 * n), rho_, depth);
    lambda_ = fractional_power_at_infinity(a_, make_rational(1, 2 * m), one, depth);
    lambda_hat_ = fractional_power_at_zero(ahat_, make_rational(1, 2 * n), rho_, depth);
  }

  int m() const { return m_; }
  int n() const { return n_; }
  Mode mode() const { return mode_; }
  int depth() const { return depth_; }

  const S& a() const { return a_; }
  const S& a_hat() const { return ahat_; }
  const S& zeta() const { return zeta_; }
  const S& phi() const { return phi_; }
  const S& l() const { return l_; }
  const S& a_prime() const { return ap_; }
  const S& a_hat_prime() const { return ahatp_; }
  const S& zeta_prime() const { return zetap_; }
  const S& l_prime() const { return lp_; }
  // 1/zeta' as expanded on the unit circle.
  const S& zeta_prime_inverse() const { return zetap_inv_; }
  const S& chi() const { return chi_; }
  const S& chi_hat() const { return chi_hat_; }
  const S& lambda() const { return lambda_; }
  const S& lambda_hat() const { return lambda_hat_; }
  const T& rho() const { return rho_; }

  bool has_w() const { return w_.has_value(); }
  const S& w() const {
    if (!w_) throw DegeneratePoint("point carries no square root of zeta");
    return *w_;
  }
  // w^k for any integer k, negative powers expanded on the circle.
  S w_power(int k) const {
    if (k >= 0) return power(w(), k, Where::Infinity, depth_);
    (void)w();
    return power(*w_inv_, -k, Where::Infinity, depth_);
  }

  // v_i = coefficient of z^(2i-2) in a, v_hat_j = coefficient of z^(2j) in a_hat.
  T v(int i) const { return a_.coeff(2 * i - 2); }
  T v_hat(int j) const { return ahat_.coeff(2 * j); }

 private:
  S circle_inverse_checked(const S& f, const char* what) const {
    if (f.is_finite()) {
      std::optional<Where> where;
      try {
        where = circle_dominance(f);
      } catch (const NoCircleExpansion&) {
        throw DegeneratePoint(std::string(what) + " has no certified expansion on the unit circle");
      }
      if (where == Where::Zero)
        throw DegeneratePoint(std::string(what) + " is dominated by its lowest term on the unit circle");
    }
    return inverse_at_infinity(f, depth_);
  }

  int m_, n_;
  Mode mode_;
  int depth_;
  S a_, ahat_, zeta_, phi_, l_, ap_, ahatp_, zetap_, lp_, zetap_inv_;
  S chi_, chi_hat_, lambda_, lambda_hat_;
  std::optional<S> w_, w_inv_;
  T rho_{};
};

// ------------------------------------------------------------------ construction

// a = zeta_- + l, a_hat = -zeta_+ + l with zeta = w*w.
template <class T>
Point<T> make_point_poly(int m, int n, const LaurentSeries<T>& w, const LaurentSeries<T>& l,
                         int depth = kDefaultDepth) {
  using C = Coeff<T>;
  if (!w.is_finite() || !l.is_finite()) throw BadSupport("w and l must be Laurent polynomials");
  for (const auto& [e, c] : w.terms())
    if (e % 2 == 0) throw BadLeadingTerm("w has a term at even exponent " + std::to_string(e));
  if (w.top_bound() != 1 || !(w.coeff(1) == C::from(1)))
    throw BadLeadingTerm("w must be z plus lower odd powers");
  for (const auto& [e, c] : l.terms()) {
    if (e % 2 != 0) throw BadSupport("l has a term at odd exponent " + std::to_string(e));
    if (e > 2 * m || e < -2 * n) throw BadSupport("l has a term outside [-2n, 2m]");
  }
  if (!(l.coeff(2 * m) == C::from(1))) throw BadLeadingTerm("l must have unit coefficient at z^2m");
  if (C::is_zero(l.coeff(-2 * n))) throw ZeroBottomCoefficient("l vanishes at z^-2n");
  const auto zeta = w * w;
  return Point<T>(m, n, Mode::Polynomial, depth, minus_part(zeta) + l, l - plus_part(zeta), w);
}

// Raw (a, a_hat) with a square-root witness for zeta.
template <class T>
Point<T> make_point_raw(int m, int n, const LaurentSeries<T>& a, const LaurentSeries<T>& a_hat,
                        const LaurentSeries<T>& w, int depth = kDefaultDepth) {
  const Mode mode = a.is_finite() && a_hat.is_finite() ? Mode::Polynomial : Mode::Truncated;
  return Point<T>(m, n, mode, depth, a, a_hat, w);
}

// t^i = 2/(2i-1) [z^-1] w^(1-2i), h^j = -2m/(2j-1) res_inf chi^(2j-1),
// hhat^k = 2n/(2k-1) res_0 chi_hat^(2k-1).
template <class T>
FlatChart<T> flat_coords(const Point<T>& pt, int t_min = -kDefaultTRange, int t_max = kDefaultTRange) {
  using C = Coeff<T>;
  const int m = pt.m(), n = pt.n();
  FlatChart<T> chart;
  chart.m = m;
  chart.n = n;
  for (int i = t_min; i <= t_max; ++i) {
    const T v = C::scale(residue(pt.w_power(1 - 2 * i), ResidueAt::Circle), make_rational(2, 2 * i - 1));
    if (!C::is_zero(v)) chart.t[i] = v;
  }
  for (int j = 1; j <= m; ++j) {
    const T r = residue(power(pt.chi(), 2 * j - 1, Where::Infinity, pt.depth()), ResidueAt::Infinity);
    chart.h.push_back(C::scale(r, make_rational(-2 * m, 2 * j - 1)));
  }
  for (int k = 1; k <= n; ++k) {
    const T r = residue(power(pt.chi_hat(), 2 * k - 1, Where::Zero, pt.depth()), ResidueAt::Zero);
    chart.hhat.push_back(C::scale(r, make_rational(2 * n, 2 * k - 1)));
  }
  return chart;
}

// Inverts flat_coords: z(w) = sum t^i/2 w^(2i-1) gives w(z); z(chi) = chi - sum h^j/2m chi^(1-2j)
// gives l_+ = (chi^2m)_+; z(y) = sum hhat^k/2n y^(2k-1) with y = 1/chi_hat gives l_- = (chi_hat^2n)_-.
// l = l_+ + l_- from the flat coordinates h^j (through chi = l^(1/2m) at infinity) and
// hhat^k (through l^(1/2n) at zero).
template <class T>
LaurentSeries<T> superpotential_from_flat(int m, int n, const std::vector<T>& h, const std::vector<T>& hhat,
                                          int depth) {
  using S = LaurentSeries<T>;
  using C = Coeff<T>;
  std::vector<std::pair<int, T>> zchi{{1, C::from(1)}};
  for (int j = 1; j <= m; ++j) zchi.emplace_back(1 - 2 * j, C::scale(h[j - 1], make_rational(-1, 2 * m)));
  const S chi = compositional_inverse(S::from_terms(zchi, Parity::Odd, Window{-2 * m, kInf}),
                                      Where::Infinity, depth);
  const S l_plus = plus_part(power(chi, 2 * m, Where::Infinity, depth));

  std::vector<std::pair<int, T>> zy;
  for (int k = 1; k <= n; ++k) zy.emplace_back(2 * k - 1, C::scale(hhat[k - 1], make_rational(1, 2 * n)));
  const S y = compositional_inverse(S::from_terms(zy, Parity::Odd, Window{-kInf, 2 * n}), Where::Zero, depth);
  const S l_minus = minus_part(power(inverse_at_zero(y, depth), 2 * n, Where::Zero, depth));
  return l_plus + l_minus;
}

template <class T>
Point<T> reconstruct(const FlatChart<T>& chart, int depth = kDefaultDepth) {
  using S = LaurentSeries<T>;
  using C = Coeff<T>;
  const int m = chart.m, n = chart.n;
  if (m < 1 || n < 1) throw InconsistentChart("m and n must be positive");
  if (static_cast<int>(chart.h.size()) != m || static_cast<int>(chart.hhat.size()) != n)
    throw InconsistentChart("chart needs all of h^1..h^m and hhat^1..hhat^n");
  if (!C::inverse(chart.hhat[0])) throw InconsistentChart("hhat^1 must be invertible");

  std::vector<std::pair<int, T>> zw;
  for (const auto& [i, v] : chart.t) {
    if (C::is_zero(v)) continue;
    if (i >= 2) throw NotNearIdentity("t^" + std::to_string(i) + " != 0 makes z(w) non-linear at infinity");
    zw.emplace_back(2 * i - 1, C::scale(v, make_rational(1, 2)));
  }
  const S w = compositional_inverse(S::from_terms(zw, Parity::Odd), Where::Infinity, depth);
  const S zeta = w * w;

  const S l = superpotential_from_flat(m, n, chart.h, chart.hhat, depth);
  const T rho = C::scale(chart.hhat[0], make_rational(1, 2 * n));
  return Point<T>(m, n, Mode::Truncated, depth, minus_part(zeta) + l, l - plus_part(zeta), w, rho);
}

// -------------------------------------------------------------- tangent spaces

// d/dv_i = (z^(2i-2), 0) for i <= m, d/dv_hat_j = (0, z^(2j)) for j >= -n.
template <class T>
TangentVec<T> d_v(int i) {
  return {LaurentSeries<T>::z_power(2 * i - 2), LaurentSeries<T>(Parity::Even)};
}
template <class T>
TangentVec<T> d_v_hat(int j) {
  return {LaurentSeries<T>(Parity::Even), LaurentSeries<T>::z_power(2 * j)};
}
// dv_i = (z^(1-2i), 0), dv_hat_j = (0, z^(-2j-1)).
template <class T>
CoTangentVec<T> dv(int i) {
  return {LaurentSeries<T>::z_power(1 - 2 * i), LaurentSeries<T>(Parity::Odd)};
}
template <class T>
CoTangentVec<T> dv_hat(int j) {
  return {LaurentSeries<T>(Parity::Odd), LaurentSeries<T>::z_power(-2 * j - 1)};
}

template <class T>
TangentVec<T> coordinate_vector(const Point<T>& pt, Label u) {
  using S = LaurentSeries<T>;
  const int m = pt.m(), n = pt.n(), K = pt.depth();
  switch (u.kind) {
    case Label::Kind::T: {
      const S dzeta = (pt.w_power(2 * u.index - 1) * pt.zeta_prime()).scaled(make_rational(-1, 2));
      return {minus_part(dzeta), -plus_part(dzeta)};
    }
    case Label::Kind::H: {
      if (u.index < 1 || u.index > m) throw ConfigError("h index out of range");
      const S& chi = pt.chi();
      const S dl = plus_part(power(chi, 2 * m - 2 * u.index, Where::Infinity, K) * chi.derivative());
      return {dl, dl};
    }
    case Label::Kind::HHat: {
      if (u.index < 1 || u.index > n) throw ConfigError("hhat index out of range");
      const S& chi = pt.chi_hat();
      const S dl = -minus_part(power(chi, 2 * n - 2 * u.index, Where::Zero, K) * chi.derivative());
      return {dl, dl};
    }
  }
  return {};
}

template <class T>
CoTangentVec<T> coordinate_covector(const Point<T>& pt, Label u) {
  using S = LaurentSeries<T>;
  const int m = pt.m(), n = pt.n(), K = pt.depth();
  switch (u.kind) {
    case Label::Kind::T: {
      const S p = pt.w_power(-2 * u.index - 1);
      return {-select(p, Keep::AtLeast, 1 - 2 * m), select(p, Keep::AtMost, 2 * n - 1)};
    }
    case Label::Kind::H: {
      if (u.index < 1 || u.index > m) throw ConfigError("h index out of range");
      const S p = power(pt.chi(), 2 * u.index - 2 * m - 1, Where::Infinity, K);
      return {select(p, Keep::AtLeast, 1 - 2 * m), S(Parity::Odd)};
    }
    case Label::Kind::HHat: {
      if (u.index < 1 || u.index > n) throw ConfigError("hhat index out of range");
      const S p = power(pt.chi_hat(), 2 * u.index - 2 * n - 1, Where::Zero, K);
      return {S(Parity::Odd), select(p, Keep::AtMost, 2 * n - 1)};
    }
  }
  return {};
}

// <omega, xi> = [z^-1] (omega xi + omega_hat xi_hat)
template <class T>
T pair(const CoTangentVec<T>& w, const TangentVec<T>& v) {
  using S = LaurentSeries<T>;
  return S::product_coeff(w.omega, v.xi, -1) + S::product_coeff(w.omega_hat, v.xi_hat, -1);
}

// ---------------------------------------------------------------------- eta

template <class T>
TangentVec<T> eta_map(const Point<T>& pt, const CoTangentVec<T>& w) {
  const auto big = w.omega + w.omega_hat;
  const auto x = w.omega * pt.a_prime() + w.omega_hat * pt.a_hat_prime();
  return {pt.a_prime() * minus_part(big) - minus_part(x), plus_part(x) - pt.a_hat_prime() * plus_part(big)};
}

// Lower-triangular Toeplitz systems relating the top coefficients of xi to the combined
// negative part of omega + omega_hat (K) and the bottom coefficients of xi_hat to its positive
// part (K_hat).
template <class T>
std::vector<std::vector<T>> k_matrix(const Point<T>& pt) {
  const int m = pt.m();
  std::vector<std::vector<T>> k(m, std::vector<T>(m, Coeff<T>::from(0)));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c <= r; ++c) k[r][c] = pt.a_prime().coeff(2 * (m + c - r) - 1);
  return k;
}
template <class T>
std::vector<std::vector<T>> k_hat_matrix(const Point<T>& pt) {
  const int n = pt.n();
  std::vector<std::vector<T>> k(n, std::vector<T>(n, Coeff<T>::from(0)));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c <= r; ++c) k[r][c] = -pt.a_hat_prime().coeff(-2 * n + 2 * r - 2 * c - 1);
  return k;
}

namespace detail {
template <class T>
std::vector<T> solve_lower(const std::vector<std::vector<T>>& k, const std::vector<T>& b) {
  std::vector<T> x(b.size(), Coeff<T>::from(0));
  for (std::size_t r = 0; r < b.size(); ++r) {
    auto inv = Coeff<T>::inverse(k[r][r]);
    if (!inv) throw SingularKMatrix("diagonal entry is not invertible");
    T acc = b[r];
    for (std::size_t c = 0; c < r; ++c) acc -= k[r][c] * x[c];
    x[r] = acc * *inv;
  }
  return x;
}
}  // namespace detail

// omega_+ and omega_hat_- from (xi - xi_hat)/zeta', then the K and K_hat solves fix the rest.
// The division uses the circle expansion of 1/zeta' for both projections.
template <class T>
CoTangentVec<T> eta_inverse(const Point<T>& pt, const TangentVec<T>& v) {
  using S = LaurentSeries<T>;
  const int m = pt.m(), n = pt.n();
  const S d = (v.xi - v.xi_hat) * pt.zeta_prime_inverse();
  const S omega_plus = -plus_part(d);
  const S omega_hat_minus = minus_part(d);

  std::vector<T> b(m);
  for (int r = 0; r < m; ++r) b[r] = v.xi.coeff(2 * (m - r) - 2);
  const auto tilde = detail::solve_lower(k_matrix(pt), b);
  std::vector<std::pair<int, T>> om;
  for (int j = 1; j <= m; ++j) om.emplace_back(1 - 2 * j, tilde[j - 1] - omega_hat_minus.coeff(1 - 2 * j));

  std::vector<T> bh(n);
  for (int r = 0; r < n; ++r) bh[r] = v.xi_hat.coeff(-2 * (n - r));
  const auto nu = detail::solve_lower(k_hat_matrix(pt), bh);
  std::vector<std::pair<int, T>> omh;
  for (int k = 1; k <= n; ++k) omh.emplace_back(2 * k - 1, nu[k - 1] - omega_plus.coeff(2 * k - 1));

  return {omega_plus + S::from_terms(om, Parity::Odd), omega_hat_minus + S::from_terms(omh, Parity::Odd)};
}

// ------------------------------------------------------------------- metric

namespace detail {
// [z^-1] of x / den with 1/den expanded at `where`, deep enough to reach z^-1.
template <class T>
T quotient_coeff(const LaurentSeries<T>& x, const LaurentSeries<T>& den, Where where) {
  if (x.is_exact_zero()) return Coeff<T>::from(0);
  int span;
  if (where == Where::Infinity) {
    span = x.top_bound() + 1 - *den.top();
  } else {
    span = *den.bottom() - 1 - x.bottom_bound();
  }
  const int depth = std::max(0, span) / 2 + 2;
  return LaurentSeries<T>::product_coeff(x, inverse(den, where, depth), -1);
}
}  // namespace detail

// -res_circle(d1 zeta d2 zeta / zeta') - res_inf(d1 l d2 l / l') - res_0(d1 l d2 l / l')
template <class T>
T metric(const Point<T>& pt, const TangentVec<T>& v1, const TangentVec<T>& v2) {
  using S = LaurentSeries<T>;
  const S dz1 = v1.xi - v1.xi_hat, dz2 = v2.xi - v2.xi_hat;
  const S dl1 = plus_part(v1.xi) + minus_part(v1.xi_hat);
  const S dl2 = plus_part(v2.xi) + minus_part(v2.xi_hat);
  T out = -S::product_coeff(dz1 * dz2, pt.zeta_prime_inverse(), -1);
  const S x = dl1 * dl2;
  // res_inf = -[z^-1]_inf, res_0 = [z^-1]_0
  out += detail::quotient_coeff(x, pt.l_prime(), Where::Infinity);
  out -= detail::quotient_coeff(x, pt.l_prime(), Where::Zero);
  return out;
}

// ------------------------------------------------------------------ products

template <class T>
CoTangentVec<T> cot_product(const Point<T>& pt, const CoTangentVec<T>& w1, const CoTangentVec<T>& w2) {
  const int m = pt.m(), n = pt.n();
  const auto A1 = w1.omega * pt.a_prime(), A2 = w2.omega * pt.a_prime();
  const auto B1 = w1.omega_hat * pt.a_hat_prime(), B2 = w2.omega_hat * pt.a_hat_prime();
  const auto first = w2.omega * plus_part(A1) - w2.omega * minus_part(B1) - w1.omega * minus_part(A2) -
                     w1.omega * minus_part(B2);
  const auto second = w2.omega_hat * plus_part(A1) + w2.omega_hat * plus_part(B1) +
                      w1.omega_hat * plus_part(A2) - w1.omega_hat * minus_part(B2);
  return {select(first, Keep::AtLeast, 1 - 2 * m), select(second, Keep::AtMost, 2 * n - 1)};
}

// Unity of cot_product: (z^(1-2m)/2m, 0).
template <class T>
CoTangentVec<T> cot_unity(const Point<T>& pt) {
  return {LaurentSeries<T>::monomial(1 - 2 * pt.m(), Coeff<T>::from(make_rational(1, 2 * pt.m()))),
          LaurentSeries<T>(Parity::Odd)};
}

template <class T>
TangentVec<T> tan_product(const Point<T>& pt, const TangentVec<T>& v1, const TangentVec<T>& v2) {
  return eta_map(pt, cot_product(pt, eta_inverse(pt, v1), eta_inverse(pt, v2)));
}

template <class T>
TangentVec<T> tan_unity() {
  return {LaurentSeries<T>::constant(Coeff<T>::from(1)), LaurentSeries<T>::constant(Coeff<T>::from(1))};
}

// ------------------------------------------------------------------ c-tensor

template <class T>
T c_tensor_direct(const Point<T>& pt, Label u, Label v, Label s) {
  return metric(pt, tan_product(pt, coordinate_vector(pt, u), coordinate_vector(pt, v)),
                coordinate_vector(pt, s));
}

// Residue formulas for <d_u . d_v, d_s> in flat coordinates.
template <class T>
T c_tensor_closed(const Point<T>& pt, Label u, Label v, Label s) {
  using S = LaurentSeries<T>;
  using K = Label::Kind;
  const int m = pt.m(), n = pt.n(), D = pt.depth();
  std::array<Label, 3> x{u, v, s};
  std::sort(x.begin(), x.end(), [](Label p, Label q) { return p.kind < q.kind; });
  auto res = [](const S& f, const S& g) { return S::product_coeff(f, g, -1); };
  auto wpow_wp = [&](int k) { return pt.w_power(k) * pt.w().derivative(); };
  auto chi_term = [&](int p) { return plus_part(power(pt.chi(), p, Where::Infinity, D) * pt.chi().derivative()); };
  auto chat_term = [&](int p) {
    return minus_part(power(pt.chi_hat(), p, Where::Zero, D) * pt.chi_hat().derivative());
  };
  const K k0 = x[0].kind, k1 = x[1].kind, k2 = x[2].kind;
  const int i0 = x[0].index, i1 = x[1].index, i2 = x[2].index;

  if (k0 == K::T && k1 == K::T && k2 == K::T) {
    const S wp = pt.w().derivative();
    auto term = [&](int a, int b, int c) { return pt.w_power(2 * a + 2 * b - 1) * pi_part(wpow_wp(2 * c)); };
    const S bracket = term(i0, i1, i2) + term(i0, i2, i1) + term(i1, i2, i0) -
                      pt.w_power(2 * (i0 + i1 + i2 - 1)) * pi_part(wpow_wp(1));
    const S tail = pt.l_prime() * wpow_wp(2 * (i0 + i1 + i2 - 1));
    return Coeff<T>::scale(res(wp, bracket) + res(tail, S::constant(Coeff<T>::from(1))), make_rational(-1, 4));
  }
  if (k0 == K::T && k1 == K::T && k2 == K::H)
    return Coeff<T>::scale(res(minus_part(wpow_wp(2 * i0 + 2 * i1 - 1)), chi_term(2 * m - 2 * i2)), make_rational(-1, 2));
  if (k0 == K::T && k1 == K::T && k2 == K::HHat)
    return Coeff<T>::scale(res(plus_part(wpow_wp(2 * i0 + 2 * i1 - 1)), chat_term(2 * n - 2 * i2)), make_rational(1, 2));
  if (k0 == K::T && k1 == K::H && k2 == K::H)
    return Coeff<T>::scale(res(chi_term(2 * m - 2 * i1 - 2 * i2 + 1), minus_part(wpow_wp(2 * i0))),
                           make_rational(-1, 2 * m));
  if (k0 == K::T && k1 == K::H && k2 == K::HHat) return Coeff<T>::from(0);
  if (k0 == K::T && k1 == K::HHat && k2 == K::HHat)
    return Coeff<T>::scale(res(chat_term(2 * n - 2 * i1 - 2 * i2 + 1), plus_part(wpow_wp(2 * i0))),
                           make_rational(-1, 2 * n));
  if (k0 == K::H && k1 == K::H && k2 == K::H) {
    const T first = Coeff<T>::scale(
        res(minus_part(wpow_wp(1)), chi_term(2 * m - 2 * i0 - 2 * i1 - 2 * i2 + 2)), make_rational(-1, 2 * m * m));
    const S num = chi_term(2 * m - 2 * i0) * chi_term(2 * m - 2 * i1) * chi_term(2 * m - 2 * i2);
    return first + detail::quotient_coeff(num, pt.l_prime(), Where::Infinity);
  }
  if (k0 == K::H && k1 == K::H && k2 == K::HHat)
    return Coeff<T>::scale(res(chi_term(2 * m - 2 * i0 - 2 * i1 + 1), chat_term(2 * n - 2 * i2)),
                           make_rational(-1, 2 * m));
  if (k0 == K::H && k1 == K::HHat && k2 == K::HHat)
    return Coeff<T>::scale(res(chat_term(2 * n - 2 * i1 - 2 * i2 + 1), chi_term(2 * m - 2 * i0)),
                           make_rational(-1, 2 * n));
  // hhat hhat hhat; the first term enters with +1/2n^2 and the residue uses powers 2n-2k
  const T first = Coeff<T>::scale(
      res(plus_part(wpow_wp(1)), chat_term(2 * n - 2 * i0 - 2 * i1 - 2 * i2 + 2)), make_rational(1, 2 * n * n));
  const S num = chat_term(2 * n - 2 * i0) * chat_term(2 * n - 2 * i1) * chat_term(2 * n - 2 * i2);
  return first + detail::quotient_coeff(num, pt.l_prime(), Where::Zero);
}

// -------------------------------------------------------------------- Euler

// E = sum (m+1-i)/m v_i d/dv_i + sum (m-j)/m v_hat_j d/dv_hat_j
template <class T>
TangentVec<T> euler_field(const Point<T>& pt) {
  const int m = pt.m();
  auto factor = [m](int e) { return make_rational(2 * m - e, 2 * m); };
  return {scaled_by_exponent(pt.a(), factor), scaled_by_exponent(pt.a_hat(), factor)};
}

enum class Side2 { A, AHat };

// E(alpha) = alpha - z alpha' / 2m
template <class T>
LaurentSeries<T> euler_apply(const Point<T>& pt, Side2 which) {
  const auto& f = which == Side2::A ? pt.a() : pt.a_hat();
  return f - f.derivative().shifted(1).scaled(make_rational(1, 2 * pt.m()));
}

// ------------------------------------------------------------ intersection form

// (omega1, omega2)* = <omega1 . omega2, E>
template <class T>
T intersection_cot(const Point<T>& pt, const CoTangentVec<T>& w1, const CoTangentVec<T>& w2) {
  return pair(cot_product(pt, w1, w2), euler_field(pt));
}

// The map g with <omega1, g(omega2)> = (omega1, omega2)*.
template <class T>
TangentVec<T> g_forward(const Point<T>& pt, const CoTangentVec<T>& w) {
  const auto& a = pt.a();
  const auto& ah = pt.a_hat();
  const auto x = a * w.omega + ah * w.omega_hat;
  const auto y = pt.a_prime() * w.omega + pt.a_hat_prime() * w.omega_hat;
  return {pt.a_prime() * minus_part(x) - a * minus_part(y), ah * plus_part(y) - pt.a_hat_prime() * plus_part(x)};
}

namespace detail {
// Expansion at infinity; a vanishing leading coefficient means the point is degenerate.
template <class T>
LaurentSeries<T> inverse_or_degenerate(const LaurentSeries<T>& f, int depth, const char* what) {
  try {
    return inverse_at_infinity(f, depth);
  } catch (const ZeroLeadingTerm&) {
    throw DegeneratePoint(std::string(what) + " has no invertible leading coefficient");
  }
}

// a a_hat' - a' a_hat
template <class T>
LaurentSeries<T> wronskian(const Point<T>& pt) {
  return pt.a() * pt.a_hat_prime() - pt.a_prime() * pt.a_hat();
}
}  // namespace detail

namespace detail {
template <class T>
LaurentSeries<T> finite_wronskian(const Point<T>& pt) {
  auto w = wronskian(pt);
  if (!w.is_finite()) throw NoCircleExpansion("the intersection form needs a finite point");
  if (w.is_exact_zero()) throw DegeneratePoint("a a_hat' - a' a_hat vanishes");
  return w;
}

// depth for which a one-sided inverse reaches exponent e from its leading exponent
inline int depth_reaching(int lead, int e) { return std::max(1, (std::abs(e - lead) + 1) / 2 + 1); }

// [z^-1] of f / (g_1 ... g_k) on |z| = 1 for finite f and g_i, each g_i having all of its
// zeros on one side of the circle (certified by a dominant coefficient).
template <class T>
T circle_residue(LaurentSeries<T> f, const std::vector<LaurentSeries<T>>& dens) {
  using S = LaurentSeries<T>;
  using C = Coeff<T>;
  S inside = S::constant(C::from(1)), outside = S::constant(C::from(1));
  for (const auto& g : dens) {
    std::optional<Where> where;
    try {
      where = circle_dominance(g);
    } catch (const NoCircleExpansion&) {
    }
    if (!where) throw NoCircleExpansion("zeros of " + g.str() + " are not certified to one side of |z| = 1");
    const int b = *g.bottom();
    f = f.shifted(-b);
    (*where == Where::Infinity ? inside : outside) = (*where == Where::Infinity ? inside : outside) * g.shifted(-b);
  }
  auto uv = bezout(inside, outside);
  if (!uv) throw DegeneratePoint("denominators share a zero");
  const S fu = f * uv->first, fv = f * uv->second;
  T out = C::from(0);
  if (!fu.is_exact_zero())
    out += S::product_coeff(fu, inverse_at_zero(outside, depth_reaching(0, -1 - *fu.bottom())), -1);
  if (!fv.is_exact_zero())
    out += S::product_coeff(fv, inverse_at_infinity(inside, depth_reaching(-*inside.top(), -1 - *fv.top())), -1);
  return out;
}
}  // namespace detail

// Defined on the image of Laurent-polynomial covectors, where (a_hat xi - a xi_hat)/W is
// itself a Laurent polynomial; 1/a is expanded at infinity and 1/a_hat at zero.
template <class T>
CoTangentVec<T> g_inverse(const Point<T>& pt, const TangentVec<T>& v) {
  const int m = pt.m(), n = pt.n();
  const auto w = detail::finite_wronskian(pt);
  const auto num = pt.a_hat() * v.xi - pt.a() * v.xi_hat;
  if (!num.is_finite()) throw NoCircleExpansion("the intersection form needs a finite tangent vector");
  auto q = exact_quotient(num, w);
  if (!q) throw NoCircleExpansion("(a_hat xi - a xi_hat)/W is not a Laurent polynomial, so its circle expansion is two-sided");
  const auto qp = plus_part(*q), qm = minus_part(*q);
  CoTangentVec<T> out{LaurentSeries<T>(Parity::Odd), LaurentSeries<T>(Parity::Odd)};
  if (!qp.is_exact_zero()) {
    const auto ainv = inverse_at_infinity(pt.a(), detail::depth_reaching(-2 * m, 1 - 2 * m - *qp.top()));
    out.omega = select(qp * ainv, Keep::AtLeast, 1 - 2 * m);
  }
  if (!qm.is_exact_zero()) {
    const int b = *pt.a_hat().bottom();
    const auto ahinv = inverse_at_zero(pt.a_hat(), detail::depth_reaching(-b, 2 * n - 1 - *qm.bottom()));
    out.omega_hat = -select(qm * ahinv, Keep::AtMost, 2 * n - 1);
  }
  return out;
}

// -res_circle(d1 log(a/a_hat) d2 log(a/a_hat) / d_z log(a/a_hat))
//   = [z^-1] (xi1 a_hat - xi_hat1 a)(xi2 a_hat - xi_hat2 a) / (a a_hat W),  W = a a_hat' - a' a_hat
// on |z| = 1, with the zeros of a, a_hat and W each on one side of the circle.
template <class T>
T intersection_tan(const Point<T>& pt, const TangentVec<T>& v1, const TangentVec<T>& v2) {
  const auto w = detail::finite_wronskian(pt);
  const auto n1 = v1.xi * pt.a_hat() - v1.xi_hat * pt.a();
  const auto n2 = v2.xi * pt.a_hat() - v2.xi_hat * pt.a();
  if (!n1.is_finite() || !n2.is_finite())
    throw NoCircleExpansion("the intersection form needs finite tangent vectors");
  if (auto q = exact_quotient(n1, w)) return detail::circle_residue(*q * n2, {pt.a(), pt.a_hat()});
  if (auto q = exact_quotient(n2, w)) return detail::circle_residue(n1 * *q, {pt.a(), pt.a_hat()});
  return detail::circle_residue(n1 * n2, {pt.a(), pt.a_hat(), w});
}

}  // namespace frobkp
