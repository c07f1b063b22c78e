#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "frobkp/errors.hpp"
#include "frobkp/hierarchy.hpp"
#include "frobkp/manifold.hpp"
#include "frobkp/potential.hpp"
#include "frobkp/series.hpp"

namespace frobkp {

using ExactLSeries = LaurentSeries<ExactScalar>;

// A point of M_{m,n}: l = z^2m + ... + v z^-2n with rational coefficients and its flat
// coordinates w^1..w^{m+n} (w^{m+n} = 2n rho, rho the chosen 2n-th root of v).
struct LPoint {
  int m = 1, n = 1;
  ExactLSeries l;
  std::vector<Rational> w;
};

LPoint lpoint(int m, int n, const ExactLSeries& l, std::optional<Rational> rho = std::nullopt);
LPoint lpoint_from_flat(int m, int n, const std::vector<Rational>& w);

// dl/dw^alpha at lp.
ExactLSeries flat_vector(const LPoint& lp, int alpha);

// -(res_inf + res_0) of num / l', the sum of residues at the zeros of l'.
template <class T>
T critical_residue(const LaurentSeries<T>& num, const LaurentSeries<T>& l) {
  const auto lp = l.derivative();
  return detail::quotient_coeff(num, lp, Where::Infinity) - detail::quotient_coeff(num, lp, Where::Zero);
}

// <d1, d2> and c(d1, d2, d3) for tangent vectors given as variations of l.
template <class T>
T metric_fin(const LaurentSeries<T>& l, const LaurentSeries<T>& d1, const LaurentSeries<T>& d2) {
  return critical_residue(d1 * d2, l);
}
template <class T>
T c_fin(const LaurentSeries<T>& l, const LaurentSeries<T>& d1, const LaurentSeries<T>& d2,
        const LaurentSeries<T>& d3) {
  return critical_residue(d1 * d2 * d3, l);
}
ExactScalar metric_fin(const LPoint& lp, int alpha, int beta);
ExactScalar c_fin(const LPoint& lp, int alpha, int beta, int gamma);

// ------------------------------------------------------------ canonical coordinates

struct CanonicalValue {
  std::complex<double> u;   // l(z_i)
  std::complex<double> z;   // representative of the pair +-z_i
  std::complex<double> l2;  // l''(z_i)
};

struct CanonicalReport {
  std::vector<CanonicalValue> values;
  // maximal deviations, each relative to max(1, |expected|)
  double residue_err = 0;      // residue theorem against the sum over the numerical roots
  double metric_err = 0;       // <d/du_i, d/du_j> against delta_ij 2/l''(z_i)
  double idempotent_err = 0;   // c(d/du_i, d/du_j, d/du_k) against delta_ijk 2/l''(z_i)
  double unity_err = 0;        // sum_i d/du_i against e = d/dw^1
  double euler_err = 0;        // E(u_i) against u_i
  bool pass = false;
  std::string witness;
};

// m+n canonical values of the point with flat coordinates w (doubles). Throws
// RepeatedCriticalValue when two zeros of l' are closer than sep_tol.
CanonicalReport canonical_fin(int m, int n, const std::vector<double>& w, double tol = 1e-9, double sep_tol = 1e-7);
CanonicalReport canonical_fin(const LPoint& lp, double tol = 1e-9, double sep_tol = 1e-7);
// Float l with unit z^2m coefficient and support [-2n, 2m]; only the root and residue
// checks that need no flat coordinates are run (unity_err and euler_err stay 0).
CanonicalReport canonical_roots(int m, int n, const LaurentSeries<double>& l, double tol = 1e-9, double sep_tol = 1e-7);

// Exact canonical data when every critical point has rational z_i^2.
struct ExactCanonicalValue {
  Rational u;
  Rational z_squared;
  Rational l2;           // l''(z_i)
  Rational metric_diag;  // <d/du_i, d/du_i> from the residue route
};
std::optional<std::vector<ExactCanonicalValue>> canonical_exact(const LPoint& lp);

// ------------------------------------------------------------------ reduced hierarchy

// A_{alpha,p}: Gamma-weighted (l^(p+beta))_+ at infinity for alpha <= m, minus the
// Gamma-weighted (l^(p+beta))_- at zero (root rho) otherwise.
template <class T>
LaurentSeries<T> reduced_generator(int m, int n, const LaurentSeries<T>& l, const std::optional<T>& rho, int alpha,
                                   int p, int depth = kDefaultDepth) {
  if (alpha < 1 || alpha > m + n) throw ConfigError("alpha out of range");
  if (alpha <= m) {
    const Rational beta = make_rational(2 * alpha - 1, 2 * m);
    const auto A = fractional_power_at_infinity(l, p + beta, Coeff<T>::from(1), depth);
    return plus_part(A).scaled(gamma_ratio(beta, p) / (2 * m));
  }
  if (!rho) throw ConfigError("flows with alpha > m need the root of the z^-2n coefficient");
  const Rational beta = make_rational(2 * (alpha - m) - 1, 2 * n);
  const auto A = fractional_power_at_zero(l, p + beta, *rho, depth);
  return minus_part(A).scaled(-gamma_ratio(beta, p) / (2 * n));
}

// dl/dT^{alpha,p} = {A_{alpha,p}, l}
template <class T>
LaurentSeries<T> reduced_lax(int m, int n, const LaurentSeries<T>& l, const std::optional<T>& rho, int alpha, int p,
                             int depth = kDefaultDepth) {
  return bracket(reduced_generator(m, n, l, rho, alpha, p, depth), l);
}

// With l_- = 0 the flows alpha <= m keep l_- = 0 and the z^2m coefficient fixed.
template <class T>
CheckReport b_m_closure_check(int m, const LaurentSeries<T>& l, int p_max, int depth = kDefaultDepth) {
  CheckReport r;
  if (l.bottom_bound() < 0) throw BadSupport("l must have no negative powers");
  for (int alpha = 1; alpha <= m; ++alpha)
    for (int p = 0; p <= p_max; ++p) {
      const auto f = reduced_lax(m, 1, l, std::optional<T>{}, alpha, p, depth);
      if (!f.is_finite() || f.bottom_bound() < 0 || f.top_bound() > 2 * m - 2) {
        r.pass = false;
        r.witness = "alpha=" + std::to_string(alpha) + " p=" + std::to_string(p) + ": " + f.str();
        return r;
      }
    }
  return r;
}

// d^2 theta_{alpha,p} / dw^l dw^m = c^e_{lm} d theta_{alpha,p-1} / dw^e on M_{m,n}, as
// polynomial identities in w; `scale` multiplies theta_{alpha,p} (1 for the true identity).
CheckReport theta_recursion_fin(int m, int n, int alpha, int p, const Rational& scale = 1);
// theta_{alpha,p} restricted to a = a_hat = l, as a polynomial in w.
Poly theta_fin(int m, int n, int alpha, int p);

}  // namespace frobkp
