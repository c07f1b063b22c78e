#include "frobkp/random_points.hpp"
#include "frobkp/submanifold.hpp"
#include "support.hpp"

namespace frobkp::testing {
namespace {

using XSeries = LaurentSeries<XPoly>;

std::vector<Rational> random_flat(int m, int n, Gen& g) {
  std::vector<Rational> w(m + n);
  for (auto& x : w) x = g.small(6, 4);
  w[m + n - 1] = Rational(g.integer(1, 4));
  return w;
}

TEST_CASE("flat coordinates of l round-trip") {
  Gen g(3);
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}}) {
    const auto w = random_flat(m, n, g);
    const auto lp = lpoint_from_flat(m, n, w);
    const auto again = lpoint(m, n, lp.l, w[m + n - 1] / (2 * n));
    CHECK(again.w == w);
  }
  CHECK_THROWS_AS(lpoint(1, 1, series({{2, 1}, {0, 1}})), ZeroBottomCoefficient);
  CHECK_THROWS_AS(lpoint(1, 1, series({{2, 1}, {-2, 2}})), RootMismatch);
  CHECK_THROWS_AS(lpoint(1, 1, series({{2, 2}, {-2, 1}})), BadLeadingTerm);
}

TEST_CASE("metric_fin is the Gram matrix of the w-block and c_fin has unity d/dw^1") {
  Gen g(5);
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    const auto lp = lpoint_from_flat(m, n, random_flat(m, n, g));
    const int N = m + n;
    CHECK(agrees(flat_vector(lp, 1), Series::constant(ExactScalar(1))));
    for (int a = 1; a <= N; ++a)
      for (int b = 1; b <= N; ++b) {
        CHECK(metric_fin(lp, a, b) == ExactScalar(gram(w_label(a, m, n), w_label(b, m, n), m, n)));
        CHECK(c_fin(lp, 1, a, b) == metric_fin(lp, a, b));
      }
  }
}

TEST_CASE("c_fin equals third derivatives of F") {
  Gen g(6);
  for (auto [m, n] : {std::pair{2, 1}, {1, 2}}) {
    const Poly F = build_F(m, n);
    const auto w = random_flat(m, n, g);
    const auto lp = lpoint_from_flat(m, n, w);
    for (int a = 1; a <= m + n; ++a)
      for (int b = a; b <= m + n; ++b)
        for (int c = b; c <= m + n; ++c)
          CHECK(c_fin(lp, a, b, c) == ExactScalar(F.derivative(a - 1).derivative(b - 1).derivative(c - 1).eval(w)));
  }
}

TEST_CASE("metric_fin agrees with the ambient metric on h and hhat labels") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    std::mt19937_64 rng(40 + m + n);
    const auto pt = gen_point(m, n, 40 + m + n);
    auto chart = flat_coords(pt, -1, 1);
    std::vector<Rational> w(m + n);
    for (int a = 1; a <= m + n; ++a) w[a - 1] = chart.value(w_label(a, m, n)).rational();
    const auto lp = lpoint_from_flat(m, n, w);
    for (int a = 1; a <= m + n; ++a)
      for (int b = 1; b <= m + n; ++b)
        CHECK(metric_fin(lp, a, b) ==
              metric(pt, coordinate_vector(pt, w_label(a, m, n)), coordinate_vector(pt, w_label(b, m, n))));
  }
}

TEST_CASE("canonical coordinates of z^2 + z^-2") {
  const auto lp = lpoint(1, 1, series({{2, 1}, {-2, 1}}));
  const auto ex = canonical_exact(lp);
  REQUIRE(ex.has_value());
  REQUIRE(ex->size() == 2);
  std::vector<Rational> u;
  for (const auto& v : *ex) {
    u.push_back(v.u);
    CHECK(v.l2 == 8);
    CHECK(v.metric_diag == q(1, 4));
  }
  std::sort(u.begin(), u.end());
  CHECK(u == std::vector<Rational>{-2, 2});

  const auto r = canonical_fin(lp);
  CHECK_MESSAGE(r.pass, r.witness);
  REQUIRE(r.values.size() == 2);
  for (const auto& v : r.values) {
    CHECK(std::abs(std::abs(v.u) - 2.0) < 1e-12);
    CHECK(std::abs(v.l2 - 8.0) < 1e-12);
  }
}

TEST_CASE("canonical coordinates at random points") {
  Gen g(17);
  int checked = 0;
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}})
    for (int trial = 0; trial < 4; ++trial) {
      const auto lp = lpoint_from_flat(m, n, random_flat(m, n, g));
      const auto r = canonical_fin(lp);
      INFO(m << "," << n << " trial " << trial);
      CHECK_MESSAGE(r.pass, r.witness);
      CHECK(r.values.size() == static_cast<std::size_t>(m + n));
      CHECK(r.euler_err < 1e-9);
      ++checked;
    }
  CHECK(checked == 20);
}

TEST_CASE("repeated critical points are rejected") {
  // z^3 l'(z) = 4z^6 - 6z^4 + 2 = 2(z^2 - 1)^2 (2z^2 + 1)
  const auto l = LaurentSeries<double>::from_terms({{4, 1.0}, {2, -3.0}, {-2, -1.0}});
  CHECK_THROWS_AS(canonical_roots(2, 1, l), RepeatedCriticalValue);
  const auto ok = LaurentSeries<double>::from_terms({{4, 1.0}, {2, -1.0}, {-2, 2.0}});
  CHECK(canonical_roots(2, 1, ok).pass);
}

TEST_CASE("theta recursion on M_{m,n}") {
  for (int alpha = 1; alpha <= 2; ++alpha) {
    INFO("alpha " << alpha);
    CHECK(theta_recursion_fin(1, 1, alpha, 1).pass);
    const auto r = theta_recursion_fin(1, 1, alpha, 2);
    CHECK_MESSAGE(r.pass, r.witness);
  }
  for (auto [m, n] : {std::pair{2, 1}, {1, 2}})
    for (int alpha = 1; alpha <= m + n; ++alpha) {
      INFO(m << "," << n << " alpha " << alpha);
      const auto r = theta_recursion_fin(m, n, alpha, 1);
      CHECK_MESSAGE(r.pass, r.witness);
    }
  CHECK_FALSE(theta_recursion_fin(1, 1, 1, 2, q(3, 2)).pass);
}

XPoly xq(Gen& g) { return XPoly({ExactScalar(g.small()), ExactScalar(g.small()), ExactScalar(g.small())}); }

TEST_CASE("reduced flows are the Lax flows at a = a_hat = l") {
  Gen g(23);
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    std::vector<std::pair<int, XPoly>> t{{2 * m, XPoly(1)}};
    for (int e = 2 * m - 2; e > -2 * n; e -= 2) t.emplace_back(e, xq(g));
    t.emplace_back(-2 * n, XPoly(ExactScalar(4)));
    const auto l = XSeries::from_terms(t);
    const auto pt = lax_point(m, n, l, l, std::nullopt, 10);
    for (int alpha = 1; alpha <= m + n; ++alpha)
      for (int p : {0, 1}) {
        INFO(m << "," << n << " alpha " << alpha << " p " << p);
        const auto f = reduced_lax(m, n, l, std::optional<XPoly>(pt.rho), alpha, p, 10);
        const auto v = lax_rhs(pt, w_label(alpha, m, n), p);
        CHECK(agrees(v.xi, f));
        CHECK(agrees(v.xi_hat, f));
        CHECK(f.is_finite());
      }
  }
}

TEST_CASE("B_m closure") {
  Gen g(29);
  for (int m : {2, 3}) {
    std::vector<std::pair<int, XPoly>> t{{2 * m, XPoly(1)}};
    for (int e = 2 * m - 2; e >= 0; e -= 2) t.emplace_back(e, xq(g));
    const auto l = XSeries::from_terms(t);
    const auto r = b_m_closure_check(m, l, 1);
    CHECK_MESSAGE(r.pass, r.witness);
    CHECK_THROWS_AS(reduced_lax(m, 1, l, std::optional<XPoly>{}, m + 1, 0), ConfigError);
  }
}

}  // namespace
}  // namespace frobkp::testing
