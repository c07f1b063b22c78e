#include "frobkp/hierarchy.hpp"
#include "frobkp/random_points.hpp"
#include "support.hpp"

namespace frobkp::testing {
namespace {

using XSeries = LaurentSeries<XPoly>;
using XPoint = LaxPoint<XPoly>;
using D = Dual<XPoly>;
using DSeries = LaurentSeries<D>;

constexpr int kDepth = 8;

XPoly xlin(const Rational& c0, const Rational& c1) { return XPoly({ExactScalar(c0), ExactScalar(c1)}); }
XPoly xquad(Gen& g) { return XPoly({ExactScalar(g.small()), ExactScalar(g.small()), ExactScalar(g.small())}); }

XSeries lift(const Series& s) {
  return s.mapped<XPoly>([](const ExactScalar& c) { return XPoly(c); });
}

// l = z^2m + sum u_e(x) z^e with a constant bottom coefficient, w = z + v(x)/z.
XPoint loop_point(int m, int n, Gen& g) {
  std::vector<std::pair<int, XPoly>> lt{{2 * m, XPoly(1)}};
  for (int e = 2 * m - 2; e > -2 * n; e -= 2) lt.emplace_back(e, xquad(g));
  lt.emplace_back(-2 * n, XPoly(ExactScalar(g.integer(1, 3))));
  const XSeries w = XSeries::from_terms({{1, XPoly(1)}, {-1, xquad(g)}});
  return lax_point_poly(m, n, w, XSeries::from_terms(lt), kDepth);
}

std::vector<Label> flow_labels(int m, int n, int t_range = 1) {
  std::vector<Label> out;
  for (int i = -t_range; i <= t_range; ++i) out.push_back(Label::t(i));
  for (int j = 1; j <= m; ++j) out.push_back(Label::h(j));
  for (int k = 1; k <= n; ++k) out.push_back(Label::hhat(k));
  return out;
}

template <class T>
T pairing(const CoTangentVec<T>& w, const TangentVec<T>& v) {
  using S = LaurentSeries<T>;
  return S::product_coeff(w.omega, v.xi, -1) + S::product_coeff(w.omega_hat, v.xi_hat, -1);
}

template <class T>
CoTangentVec<T> times_x(const CoTangentVec<T>& w) {
  const auto x = LaurentSeries<T>::constant(XPoly::x());
  return {w.omega * x, w.omega_hat * x};
}

TEST_CASE("theta densities at p = 0 are flat coordinates") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    const auto pt = gen_point(m, n, 5 + m + 3 * n);
    const auto lp = lax_point(pt);
    const auto chart = flat_coords(pt, -3, 3);
    INFO(m << "," << n);
    for (int i = 0; i <= 2; ++i)
      CHECK(theta_density(lp, Label::t(i), 0) == chart.value(Label::t(-i)).scaled(make_rational(-1, 2)));
    for (int j = 1; j <= m; ++j)
      CHECK(theta_density(lp, Label::h(j), 0) == chart.value(Label::h(m + 1 - j)).scaled(make_rational(1, 2 * m)));
    for (int k = 1; k <= n; ++k)
      CHECK(theta_density(lp, Label::hhat(k), 0) ==
            chart.value(Label::hhat(n + 1 - k)).scaled(make_rational(1, 2 * n)));
  }
}

TEST_CASE("Poisson operators vanish on zero and are linear") {
  Gen g(2);
  const auto pt = loop_point(2, 1, g);
  const CoTangentVec<XPoly> zero;
  for (const auto& v : {poisson1(pt, zero), poisson2(pt, zero)}) {
    CHECK(v.xi.is_exact_zero());
    CHECK(v.xi_hat.is_exact_zero());
  }
  const auto w1 = hamiltonian_gradient(pt, Label::h(1), 1), w2 = hamiltonian_gradient(pt, Label::hhat(1), 1);
  CHECK(agrees(poisson1(pt, w1 + w2), poisson1(pt, w1) + poisson1(pt, w2)));
  CHECK(agrees(poisson2(pt, w1.scaled(Rational(3))), poisson2(pt, w1).scaled(Rational(3))));
}

// At an x-independent point P(x c) - x P(c) is the leading symbol: eta for P1 and the
// intersection form for P2.
TEST_CASE("symbols of the Poisson operators") {
  Gen g(13);
  int cases = 0;
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}}) {
    const auto pt = gen_point(m, n, 17 + m);
    const auto lp = lax_point(m, n, lift(pt.a()), lift(pt.a_hat()), lift(pt.w()), pt.depth());
    for (int trial = 0; trial < 4; ++trial, ++cases) {
      const CoTangentVec<ExactScalar> c{g.finite(1 - 2 * m, 5, Parity::Odd), g.finite(-5, 2 * n - 1, Parity::Odd)};
      const CoTangentVec<XPoly> cx{lift(c.omega), lift(c.omega_hat)};
      const auto e1 = eta_map(pt, c), e2 = g_forward(pt, c);
      CHECK(agrees(poisson1(lp, times_x(cx)), TangentVec<XPoly>{lift(e1.xi), lift(e1.xi_hat)}));
      CHECK(agrees(poisson2(lp, times_x(cx)), TangentVec<XPoly>{lift(e2.xi), lift(e2.xi_hat)}));
    }
  }
  CHECK(cases == 20);
}

TEST_CASE("bi-Hamiltonian recursion along every flow") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    Gen g(100 + 10 * m + n);
    const auto pt = loop_point(m, n, g);
    for (const Label u : flow_labels(m, n, 2))
      for (int p : {0, 1, 2}) {
        INFO(m << "," << n << " " << u.str() << " p=" << p);
        const auto r = recursion_check(pt, u, p);
        CHECK_MESSAGE(r.pass, r.witness);
      }
  }
}

TEST_CASE("Lax flows keep the tangent windows") {
  Gen g(21);
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    const auto pt = loop_point(m, n, g);
    for (const Label u : flow_labels(m, n))
      for (int p : {0, 1}) {
        const auto v = lax_rhs(pt, u, p);
        INFO(m << "," << n << " " << u.str() << " p=" << p);
        CHECK(v.xi.top_bound() <= 2 * m - 2);
        CHECK(v.xi_hat.bottom_bound() >= -2 * n);
      }
  }
}

// At p = 0 the flow of h^m is the x-translation: A = a^(1/2m) and {a, A} = 0.
TEST_CASE("unity flow") {
  Gen g(8);
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    const auto pt = loop_point(m, n, g);
    const auto v = lax_rhs(pt, Label::h(m), 0);
    CHECK(agrees(v, TangentVec<XPoly>{x_derivative(pt.a), x_derivative(pt.a_hat)}));
  }
}

TEST_CASE("recursion fails for a wrong normalisation") {
  Gen g(4);
  const auto pt = loop_point(1, 1, g);
  const auto rhs = lax_rhs(pt, Label::h(1), 1);
  const auto p2 = poisson2(pt, hamiltonian_gradient(pt, Label::h(1), 1));
  CHECK(agrees(p2.scaled(1 / (Rational(1) + make_rational(1, 2) + mu(Label::h(1), 1, 1))), rhs));
  CHECK_FALSE(agrees(p2, rhs));
}

TEST_CASE("h and hhat flows are rescaled BKP flows") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    Gen g(7 * m + n);
    const auto pt = loop_point(m, n, g);
    for (const Label u : flow_labels(m, n)) {
      if (u.kind == Label::Kind::T) continue;
      for (int p : {0, 1}) {
        INFO(m << "," << n << " " << u.str() << " p=" << p);
        const auto bt = bkp_time(u, p, m, n);
        CHECK(agrees(lax_rhs(pt, u, p), bkp_rhs(pt, bt.side, bt.k).scaled(bt.scale)));
      }
    }
  }
}

TEST_CASE("BKP flows are bi-Hamiltonian") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    Gen g(31 + m + n);
    const auto pt = loop_point(m, n, g);
    for (int k : {1, 3, 5}) {
      INFO(m << "," << n << " k=" << k);
      const auto r = bkp_biham_check(pt, k);
      CHECK_MESSAGE(r.pass, r.witness);
    }
  }
}

DSeries jet(const XSeries& s, const XSeries& d) {
  const auto ts = s.terms(), td = d.terms();
  std::vector<std::pair<int, D>> t;
  for (const auto& [e, c] : ts) t.emplace_back(e, D(c, XPoly()));
  for (const auto& [e, c] : td) t.emplace_back(e, D(XPoly(), c));
  const Window w{std::max(s.window().lo, d.window().lo), std::min(s.window().hi, d.window().hi)};
  return DSeries::from_terms(t, Parity::Even, w);
}

XSeries eps_part(const DSeries& s) {
  return s.mapped<XPoly>([](const D& c) { return c.eps; });
}

// d/dT^u of the v-flow minus d/dT^v of the u-flow, both along the point of the other.
TangentVec<XPoly> flow_commutator(const XPoint& pt, Label u, int p, Label v, int q) {
  const auto along = [&](Label a, int pa, Label b, int pb) {
    const auto dir = lax_rhs(pt, a, pa);
    const auto dp = lax_point(pt.m, pt.n, jet(pt.a, dir.xi), jet(pt.a_hat, dir.xi_hat), std::nullopt, pt.depth);
    const auto f = lax_rhs(dp, b, pb);
    return TangentVec<XPoly>{eps_part(f.xi), eps_part(f.xi_hat)};
  };
  return along(u, p, v, q) - along(v, q, u, p);
}

TEST_CASE("h and hhat flows commute") {
  Gen g(77);
  const auto pt = loop_point(1, 1, g);
  const std::vector<std::pair<Label, int>> flows{{Label::h(1), 0}, {Label::hhat(1), 0}, {Label::h(1), 1}};
  for (std::size_t i = 0; i < flows.size(); ++i)
    for (std::size_t j = i + 1; j < flows.size(); ++j) {
      const auto [u, p] = flows[i];
      const auto [v, q] = flows[j];
      INFO(u.str() << p << " " << v.str() << q);
      const auto c = flow_commutator(pt, u, p, v, q);
      CHECK(agrees(c, TangentVec<XPoly>{XSeries(Parity::Even), XSeries(Parity::Even)}));
    }
}

// <w1, P w2> + <w2, P w1> is the x-derivative of <w1, G w2>, G the symbol of P.
TEST_CASE("Poisson operators are skew up to total x-derivatives") {
  Gen g(9);
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}}) {
    const auto pt = loop_point(m, n, g);
    const auto w1 = hamiltonian_gradient(pt, Label::h(1), 1);
    const auto w2 = hamiltonian_gradient(pt, Label::t(1), 1);
    for (int which : {1, 2}) {
      const auto P = [&](const CoTangentVec<XPoly>& w) { return which == 1 ? poisson1(pt, w) : poisson2(pt, w); };
      const auto sym = P(times_x(w2)) - P(w2).scaled(XPoly::x());
      const XPoly lhs = pairing(w1, P(w2)) + pairing(w2, P(w1));
      INFO(m << "," << n << " P" << which);
      CHECK(lhs == pairing(w1, sym).derivative());
      CHECK_FALSE(pairing(w1, P(w2)).is_zero());
    }
  }
}

}  // namespace
}  // namespace frobkp::testing
