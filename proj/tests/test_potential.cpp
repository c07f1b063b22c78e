#include <algorithm>
#include <numeric>

#include "frobkp/manifold.hpp"
#include "frobkp/potential.hpp"
#include "frobkp/random_points.hpp"
#include "support.hpp"

namespace frobkp::testing {
namespace {

const std::vector<std::pair<int, int>> kPrinted{{1, 1}, {2, 1}, {3, 1}, {1, 2}, {2, 2}, {1, 3}};

TEST_CASE("symbolic superpotential of (1,1)") {
  // h^1 = w^1, hhat^1 = w^2: l = z^2 + w^1 + (w^2/2)^2 z^-2
  const PolySeries l = symbolic_superpotential(1, 1);
  CHECK(l.coeff(2) == Poly(1));
  CHECK(l.coeff(0) == Poly::var(0));
  CHECK(l.coeff(-2) == (Poly::var(1) * Poly::var(1)).scaled(q(1, 4)));
  CHECK(l.is_finite());
}

TEST_CASE("symbolic superpotential evaluates to reconstructed points") {
  Gen g(3);
  for (auto [m, n] : kPrinted) {
    const PolySeries l = symbolic_superpotential(m, n);
    std::vector<Rational> w(m + n);
    for (auto& x : w) x = g.small(4, 8);
    w[m + n - 1] = g.nonzero(4, 2);
    FlatChart<ExactScalar> chart;
    chart.m = m, chart.n = n;
    chart.t[1] = ExactScalar(2);
    for (int j = 1; j <= m; ++j) chart.h.push_back(ExactScalar(w[w_index(Label::h(j), m, n) - 1]));
    for (int k = 1; k <= n; ++k) chart.hhat.push_back(ExactScalar(w[w_index(Label::hhat(k), m, n) - 1]));
    const auto pt = reconstruct(chart);
    for (int e = -2 * n; e <= 2 * m; e += 2) CHECK(ExactScalar(l.coeff(e).eval(w)) == pt.l().coeff(e));
  }
}

TEST_CASE("c_uvw examples and symmetry") {
  CHECK(c_uvw(1, 1, Label::h(1), Label::h(1), Label::h(1)) == Poly(q(1, 2)));
  CHECK(c_uvw(1, 1, Label::h(1), Label::hhat(1), Label::hhat(1)) == Poly(q(1, 2)));
  const PolySeries l = symbolic_superpotential(2, 2);
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = 1; c <= 4; ++c) {
        const Poly x = c_uvw(l, a, b, c);
        CHECK(x == c_uvw(l, b, a, c));
        CHECK(x == c_uvw(l, a, c, b));
      }
}

// At w = z the ambient tensor on h/hhat labels differs from the finite one only through the
// (w w')_+ = z term of the hhat hhat hhat formula.
TEST_CASE("c_uvw against the ambient c-tensor at w = z") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}}) {
    std::mt19937_64 rng(29 + m * 7 + n);
    const auto pt = make_point_poly(m, n, series({{1, 1}}), random_l(m, n, rng));
    const auto chart = flat_coords(pt, -1, 1);
    std::vector<Rational> w(m + n);
    bool rational = true;
    for (int a = 1; a <= m + n; ++a) {
      const ExactScalar v = chart.value(w_label(a, m, n));
      rational = rational && v.is_rational();
      if (v.is_rational()) w[a - 1] = v.rational();
    }
    REQUIRE(rational);
    const PolySeries l = symbolic_superpotential(m, n);
    for (int a = 1; a <= m + n; ++a)
      for (int b = a; b <= m + n; ++b) {
        const auto la = w_label(a, m, n), lb = w_label(b, m, n);
        CHECK(metric(pt, coordinate_vector(pt, la), coordinate_vector(pt, lb)) ==
              ExactScalar(gram(la, lb, m, n)));
        for (int c = b; c <= m + n; ++c) {
          const auto lc = w_label(c, m, n);
          INFO(m << "," << n << " " << la.str() << lb.str() << lc.str());
          ExactScalar ambient = c_tensor_direct(pt, la, lb, lc);
          if (la.kind == Label::Kind::HHat && lb.kind == Label::Kind::HHat && lc.kind == Label::Kind::HHat) {
            const int p = 2 * n - 2 * (la.index + lb.index + lc.index) + 2;
            const auto chat = minus_part(power(pt.chi_hat(), p, Where::Zero, pt.depth()) * pt.chi_hat().derivative());
            ambient -= chat.coeff(-2).scaled(make_rational(1, 2 * n * n));
          }
          CHECK(ExactScalar(c_uvw(l, a, b, c).eval(w)) == ambient);
        }
      }
  }
}

TEST_CASE("build_F reproduces the listed potentials") {
  for (auto [m, n] : kPrinted) {
    INFO(m << "," << n);
    const Poly F = build_F(m, n);
    CHECK(F == *reference_potential(m, n));
    bool negative_power = false;
    for (const auto& [mono, c] : F.terms())
      for (int a = 0; a < m + n; ++a) negative_power = negative_power || mono.e[a] < 0;
    CHECK(negative_power == (n > 1));
  }
  CHECK_FALSE(reference_potential(4, 4).has_value());
}

TEST_CASE("build_F does not depend on the integration order") {
  for (auto [m, n] : {std::pair{2, 2}, {1, 3}, {3, 1}}) {
    const auto table = c_table(m, n);
    std::vector<int> order(m + n);
    std::iota(order.begin(), order.end(), 1);
    const Poly F = integrate_third_derivatives(m + n, table, order);
    std::reverse(order.begin(), order.end());
    CHECK(integrate_third_derivatives(m + n, table, order) == F);
    std::rotate(order.begin(), order.begin() + 1, order.end());
    CHECK(integrate_third_derivatives(m + n, table, order) == F);
  }
}

TEST_CASE("integration rejects tables that are not third derivatives") {
  auto table = c_table(1, 1);
  // C_111 gains a w2 term with no matching change in C_112
  table[0] += Poly::var(1);
  CHECK_THROWS_AS(integrate_third_derivatives(2, table, {1, 2}), IntegrationObstruction);
  auto log_table = c_table(1, 1);
  Monomial inv;
  inv.e[0] = -1;
  log_table[0] = Poly::monomial(1, inv);
  CHECK_THROWS_AS(integrate_third_derivatives(2, log_table, {1, 2}), IntegrationObstruction);
}

TEST_CASE("quasi-homogeneity") {
  for (auto [m, n] : kPrinted) {
    INFO(m << "," << n);
    const Poly F = build_F(m, n);
    CHECK(check_quasi_homogeneity(F, m, n).pass);
    CHECK(F.uniform_degree(w_degrees(m, n)) == 2 + make_rational(1, m));
  }
  const Poly bad = build_F(2, 1) + Poly::var(0);
  CHECK_FALSE(check_quasi_homogeneity(bad, 2, 1).pass);
}

TEST_CASE("WDVV") {
  for (auto [m, n] : kPrinted) {
    INFO(m << "," << n);
    const auto r = wdvv_check(build_F(m, n), m, n);
    CHECK(r.pass);
    CHECK(r.witness.empty());
  }
  // one coefficient of F_{2,1} shifted by 1
  Poly F = build_F(2, 1);
  Monomial mono;
  mono.e[1] = 5;
  F += Poly::monomial(1, mono);
  CHECK_FALSE(wdvv_check(F, 2, 1).pass);
}

TEST_CASE("B_m restriction of F_{m,1} stays a WDVV solution") {
  for (int m : {2, 3}) {
    const Poly F = build_F(m, 1);
    std::vector<Poly::Term> kept;
    for (const auto& t : F.terms())
      if (t.first.e[m] == 0) kept.push_back(t);
    const Poly restricted = Poly::from_terms(kept);
    // the w-block without w^{m+1}
    const int N = m;
    bool ok = true;
    for (int a = 1; a <= N; ++a)
      for (int b = 1; b <= N; ++b)
        for (int g = 1; g <= N; ++g)
          for (int s = 1; s <= N; ++s) {
            Poly lhs, rhs;
            for (int e = 1; e <= N; ++e) {
              const auto up = [&](int e1, int x, int y) {
                return restricted.derivative(m - e1).derivative(x - 1).derivative(y - 1).scaled(2 * m);
              };
              lhs += up(e, a, b) * up(s, e, g);
              rhs += up(e, a, g) * up(s, e, b);
            }
            ok = ok && lhs == rhs;
          }
    CHECK(ok);
  }
}

TEST_CASE("appendix symmetry") {
  const std::vector<Label> labels{Label::h(1), Label::h(2), Label::hhat(1), Label::hhat(2)};
  for (const auto& s : labels)
    for (const auto& u : labels)
      for (const auto& v : labels)
        for (const auto& w : labels) {
          if (!(s <= u && u <= v && v <= w)) continue;
          INFO(s.str() << u.str() << v.str() << w.str());
          const auto r = appendix_symmetry(2, 2, s, u, v, w);
          CHECK(r.pass);
          CHECK(r.witness.empty());
        }
}

}  // namespace
}  // namespace frobkp::testing
