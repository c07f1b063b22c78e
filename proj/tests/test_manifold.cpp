#include "frobkp/dual.hpp"
#include "frobkp/manifold.hpp"
#include "frobkp/random_points.hpp"
#include "support.hpp"

namespace frobkp::testing {
namespace {

using V = TangentVec<ExactScalar>;
using W = CoTangentVec<ExactScalar>;

ExactPoint basic_point(const Rational& v1) {
  return make_point_poly(1, 1, series({{1, 1}}), series({{2, 1}, {0, v1}, {-2, q(1, 4)}}));
}

bool same(const V& a, const V& b) { return agrees(a, b); }
bool same(const W& a, const W& b) { return agrees(a, b); }

TEST_CASE("make_point_poly follows a = zeta_- + l, a_hat = l - zeta_+") {
  const auto pt = basic_point(q(3, 5));
  CHECK(agrees(pt.a(), series({{2, 1}, {0, q(3, 5)}, {-2, q(1, 4)}})));
  CHECK(agrees(pt.a_hat(), series({{0, q(3, 5)}, {-2, q(1, 4)}})));
  CHECK(agrees(pt.l(), series({{2, 1}, {0, q(3, 5)}, {-2, q(1, 4)}})));
  CHECK(pt.mode() == Mode::Polynomial);

  const auto w = series({{1, 1}, {-1, q(1, 8)}});
  const auto l = series({{4, 1}, {2, q(1, 3)}, {0, q(-1, 2)}, {-2, q(9, 16)}});
  const auto p2 = make_point_poly(2, 1, w, l);
  CHECK(agrees(p2.a() - p2.a_hat(), w * w));
  CHECK(agrees(p2.l(), l));
  CHECK(p2.a().top_bound() == 4);
  CHECK(p2.a_hat().bottom_bound() == -2);
}

TEST_CASE("make_point_poly guards") {
  const auto l = series({{2, 1}, {-2, 1}});
  CHECK_THROWS_AS(make_point_poly(1, 1, series({{1, 1}, {0, 1}}), l), BadLeadingTerm);
  CHECK_THROWS_AS(make_point_poly(1, 1, series({{1, 2}}), l), BadLeadingTerm);
  CHECK_THROWS_AS(make_point_poly(1, 1, series({{3, 1}, {1, 1}}), l), BadLeadingTerm);
  CHECK_THROWS_AS(make_point_poly(1, 1, series({{1, 1}}), series({{2, 1}, {-4, 1}})), BadSupport);
  CHECK_THROWS_AS(make_point_poly(1, 1, series({{1, 1}}), series({{2, 1}, {0, 1}})), ZeroBottomCoefficient);
  CHECK_THROWS_AS(make_point_poly(1, 1, series({{1, 1}}), series({{2, 2}, {-2, 1}})), BadLeadingTerm);
  CHECK_THROWS_AS(make_point_poly(1, 1, series({{1, 1}, {-1, 3}}), l), DegeneratePoint);
}

TEST_CASE("flat coordinates of the basic point") {
  const Rational v1 = q(3, 5);
  const auto chart = flat_coords(basic_point(v1), -3, 3);
  CHECK(chart.value(Label::h(1)) == ExactScalar(v1));
  CHECK(chart.value(Label::hhat(1)) == ExactScalar(1));
  CHECK(chart.value(Label::t(1)) == ExactScalar(2));
  CHECK(chart.t.size() == 1);
  CHECK(chart.charge() == 0);
}

TEST_CASE("reconstruct inverts flat_coords") {
  FlatChart<ExactScalar> chart;
  chart.m = chart.n = 1;
  chart.t[1] = ExactScalar(2);
  chart.h = {ExactScalar(q(3, 5))};
  chart.hhat = {ExactScalar(1)};
  const auto pt = reconstruct(chart);
  CHECK(agrees(pt.l(), basic_point(q(3, 5)).l()));
  CHECK(agrees(pt.a(), basic_point(q(3, 5)).a()));

  FlatChart<ExactScalar> partial;
  partial.m = partial.n = 1;
  partial.t[1] = ExactScalar(2);
  CHECK_THROWS_AS(reconstruct(partial), InconsistentChart);

  chart.t[2] = ExactScalar(1);
  CHECK_THROWS_AS(reconstruct(chart), NotNearIdentity);
}

TEST_CASE("flat_coords(reconstruct(chart)) = chart on random charts") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      std::mt19937_64 rng(seed);
      const auto chart = random_chart(m, n, rng);
      const auto back = flat_coords(reconstruct(chart), -3, 1);
      for (const auto& u : all_labels(m, n, 3)) {
        if (u.kind == Label::Kind::T && u.index > 1) continue;
        INFO(u.str());
        CHECK(back.value(u) == chart.value(u));
      }
    }
  }
}

TEST_CASE("make_point_poly(flat chart) and reconstruct agree on l") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto pt = gen_point(2, 1, seed);
    const auto chart = flat_coords(pt, -6, 1);
    // t^i for i < -6 are dropped, which only moves zeta far below the leading terms
    const auto rec = reconstruct(chart, 16);
    CHECK(agrees(rec.l(), pt.l()));
  }
}

TEST_CASE("coordinate vectors at the basic point") {
  const auto pt = basic_point(q(3, 5));
  const V t1 = coordinate_vector(pt, Label::t(1));
  CHECK(t1.xi.is_exact_zero());
  CHECK(agrees(t1.xi_hat, series({{2, 1}})));
  const V e = coordinate_vector(pt, Label::h(1));
  CHECK(same(e, tan_unity<ExactScalar>()));
  const auto p2 = gen_point(2, 1, 3);
  CHECK(same(coordinate_vector(p2, Label::h(2)), tan_unity<ExactScalar>()));
  const W dh1 = coordinate_covector(p2, Label::h(1));
  CHECK(same(dh1, cot_unity(p2).scaled(Rational(4))));
}

// d/du of the point reconstructed from a chart with a dual perturbation in u.
V derivative_oracle(const FlatChart<ExactScalar>& chart, Label u) {
  using D = Dual<ExactScalar>;
  FlatChart<D> dc;
  dc.m = chart.m;
  dc.n = chart.n;
  for (const auto& [i, v] : chart.t) dc.t[i] = D(v, ExactScalar());
  for (const auto& v : chart.h) dc.h.emplace_back(v, ExactScalar());
  for (const auto& v : chart.hhat) dc.hhat.emplace_back(v, ExactScalar());
  const ExactScalar one(1);
  switch (u.kind) {
    case Label::Kind::T:
      if (dc.t.count(u.index) == 0) dc.t[u.index] = D(ExactScalar(), ExactScalar());
      dc.t[u.index].eps = one;
      break;
    case Label::Kind::H:
      dc.h[u.index - 1].eps = one;
      break;
    case Label::Kind::HHat:
      dc.hhat[u.index - 1].eps = one;
      break;
  }
  const auto pt = reconstruct(dc);
  auto eps = [](const D& x) { return x.eps; };
  return {pt.a().mapped<ExactScalar>(eps), pt.a_hat().mapped<ExactScalar>(eps)};
}

TEST_CASE("coordinate vectors are derivatives of the reconstructed point") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    std::mt19937_64 rng(11 + m * 3 + n);
    const auto chart = random_chart(m, n, rng);
    const auto pt = reconstruct(chart);
    for (const auto& u : all_labels(m, n, 2)) {
      if (u.kind == Label::Kind::T && u.index > 1) continue;
      INFO(m << "," << n << " " << u.str());
      CHECK(same(coordinate_vector(pt, u), derivative_oracle(chart, u)));
    }
  }
}

TEST_CASE("pairing of dual bases") {
  CHECK(pair(dv<ExactScalar>(1), d_v<ExactScalar>(1)) == ExactScalar(1));
  CHECK(pair(dv<ExactScalar>(1), d_v<ExactScalar>(0)) == ExactScalar(0));
  CHECK(pair(dv<ExactScalar>(-2), d_v<ExactScalar>(-2)) == ExactScalar(1));
  CHECK(pair(dv_hat<ExactScalar>(-1), d_v_hat<ExactScalar>(-1)) == ExactScalar(1));
  CHECK(pair(dv_hat<ExactScalar>(3), d_v_hat<ExactScalar>(3)) == ExactScalar(1));
  CHECK(pair(dv_hat<ExactScalar>(3), d_v<ExactScalar>(3)) == ExactScalar(0));
}

TEST_CASE("coordinate covectors are dual to coordinate vectors") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    const auto pt = gen_point(m, n, 5);
    const auto labels = all_labels(m, n, 3);
    for (const auto& u : labels) {
      const W du = coordinate_covector(pt, u);
      for (const auto& v : labels) {
        INFO(m << "," << n << " " << u.str() << " " << v.str());
        CHECK(pair(du, coordinate_vector(pt, v)) == ExactScalar(u == v ? 1 : 0));
      }
    }
  }
}

TEST_CASE("eta_map and eta_inverse") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {3, 2}}) {
    const auto pt = gen_point(m, n, 17);
    CHECK(same(eta_map(pt, cot_unity(pt)), tan_unity<ExactScalar>()));
    CHECK(same(eta_inverse(pt, tan_unity<ExactScalar>()), cot_unity(pt)));
    CHECK(same(eta_map(pt, W{}), V{}));
    const auto labels = all_labels(m, n, 2);
    for (const auto& u : labels) {
      INFO(m << "," << n << " " << u.str());
      const V v = coordinate_vector(pt, u);
      CHECK(same(eta_map(pt, eta_inverse(pt, v)), v));
      const W w = coordinate_covector(pt, u);
      CHECK(same(eta_inverse(pt, eta_map(pt, w)), w));
    }
    for (const auto& u : labels)
      for (const auto& v : labels) {
        const W a = coordinate_covector(pt, u), b = coordinate_covector(pt, v);
        CHECK(pair(a, eta_map(pt, b)) == pair(b, eta_map(pt, a)));
      }
  }
}

TEST_CASE("K matrices") {
  const auto pt = make_point_poly(2, 1, series({{1, 1}}), series({{4, 1}, {2, q(5, 7)}, {0, 1}, {-2, 4}}));
  const auto k = k_matrix(pt);
  CHECK(k[0][0] == ExactScalar(4));
  CHECK(k[0][1] == ExactScalar(0));
  CHECK(k[1][0] == ExactScalar(q(10, 7)));
  CHECK(k[1][1] == ExactScalar(4));
  const auto kh = k_hat_matrix(pt);
  CHECK(kh[0][0] == ExactScalar(8));
}

TEST_CASE("metric Gram matrix and agreement with the pairing route") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      const auto pt = gen_point(m, n, seed);
      const auto labels = all_labels(m, n, 3);
      for (const auto& u : labels)
        for (const auto& v : labels) {
          INFO(m << "," << n << " " << u.str() << " " << v.str());
          const V a = coordinate_vector(pt, u), b = coordinate_vector(pt, v);
          const ExactScalar g = metric(pt, a, b);
          CHECK(g == ExactScalar(gram(u, v, m, n)));
          CHECK(g == pair(eta_inverse(pt, a), b));
        }
    }
  }
}

TEST_CASE("metric on a truncated-mode point") {
  const auto pt = gen_point(2, 1, 9, Mode::Truncated);
  CHECK(pt.mode() == Mode::Truncated);
  for (const auto& u : all_labels(2, 1, 2))
    for (const auto& v : all_labels(2, 1, 2))
      CHECK(metric(pt, coordinate_vector(pt, u), coordinate_vector(pt, v)) == ExactScalar(gram(u, v, 2, 1)));
}

TEST_CASE("cotangent product: unity, commutativity, invariance") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    const auto pt = gen_point(m, n, 23);
    const auto labels = all_labels(m, n, 1);
    std::vector<W> ws;
    for (const auto& u : labels) ws.push_back(coordinate_covector(pt, u));
    for (std::size_t i = 0; i < ws.size(); ++i) {
      CHECK(same(cot_product(pt, cot_unity(pt), ws[i]), ws[i]));
      for (std::size_t j = 0; j < ws.size(); ++j) {
        INFO(labels[i].str() << " " << labels[j].str());
        const W p = cot_product(pt, ws[i], ws[j]);
        CHECK(same(p, cot_product(pt, ws[j], ws[i])));
        for (std::size_t k = 0; k < ws.size(); k += 2) {
          CHECK(pair(p, eta_map(pt, ws[k])) == pair(ws[i], eta_map(pt, cot_product(pt, ws[j], ws[k]))));
        }
      }
    }
  }
}

TEST_CASE("tangent product: unity and associativity") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}}) {
    const auto pt = gen_point(m, n, 29);
    const auto labels = all_labels(m, n, 1);
    std::vector<V> vs;
    for (const auto& u : labels) vs.push_back(coordinate_vector(pt, u));
    const V e = tan_unity<ExactScalar>();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      CHECK(same(tan_product(pt, e, vs[i]), vs[i]));
      for (std::size_t j = i; j < vs.size(); ++j)
        for (std::size_t k = 0; k < vs.size(); ++k) {
          INFO(labels[i].str() << " " << labels[j].str() << " " << labels[k].str());
          const V left = tan_product(pt, tan_product(pt, vs[i], vs[j]), vs[k]);
          const V right = tan_product(pt, vs[i], tan_product(pt, vs[j], vs[k]));
          CHECK(metric(pt, left, e) == metric(pt, right, e));
          for (std::size_t r = 0; r < vs.size(); ++r)
            CHECK(metric(pt, left, vs[r]) == metric(pt, right, vs[r]));
        }
    }
  }
}

TEST_CASE("c-tensor: symmetry, unity direction, closed forms") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    const auto pt = gen_point(m, n, 31);
    const auto labels = all_labels(m, n, 1);
    for (const auto& u : labels)
      for (const auto& v : labels) {
        CHECK(c_tensor_direct(pt, Label::h(m), u, v) == ExactScalar(gram(u, v, m, n)));
        for (const auto& s : labels) {
          INFO(m << "," << n << " " << u.str() << " " << v.str() << " " << s.str());
          const ExactScalar c = c_tensor_direct(pt, u, v, s);
          CHECK(c == c_tensor_direct(pt, v, s, u));
          CHECK(c == c_tensor_closed(pt, u, v, s));
        }
      }
    CHECK(c_tensor_direct(pt, Label::t(1), Label::h(1), Label::hhat(1)) == ExactScalar(0));
  }
}

TEST_CASE("Euler field") {
  const Rational v1 = q(3, 5);
  const auto pt = basic_point(v1);
  const auto ea = euler_apply(pt, Side2::A);
  CHECK(ea.stored(2) == ExactScalar(0));
  CHECK(ea.coeff(0) == ExactScalar(v1));
  CHECK(ea.coeff(-2) == ExactScalar(q(1, 2)));
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {3, 2}}) {
    const auto p = gen_point(m, n, 37);
    const V e = euler_field(p);
    CHECK(agrees(e.xi, euler_apply(p, Side2::A)));
    CHECK(agrees(e.xi_hat, euler_apply(p, Side2::AHat)));
    const auto chart = flat_coords(p, -3, 3);
    for (const auto& u : all_labels(m, n, 3)) {
      INFO(m << "," << n << " " << u.str());
      CHECK(pair(coordinate_covector(p, u), e) == chart.value(u).scaled(degree(u, m, n)));
    }
  }
}

TEST_CASE("Euler degrees fit the charge on the Gram anti-diagonals") {
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 3; ++n)
      for (const auto& u : all_labels(m, n, 4))
        for (const auto& v : all_labels(m, n, 4))
          if (gram(u, v, m, n) != 0) CHECK(degree(u, m, n) + degree(v, m, n) == 2 - charge(m));
}

TEST_CASE("intersection form") {
  const Rational v1 = q(3, 5);
  const auto pt = basic_point(v1);
  CHECK(intersection_cot(pt, dv<ExactScalar>(1), dv<ExactScalar>(1)) == ExactScalar(2 * v1));
  CHECK(intersection_cot(pt, dv<ExactScalar>(1), dv<ExactScalar>(0)) == ExactScalar(1));
  CHECK(intersection_cot(pt, dv<ExactScalar>(0), dv<ExactScalar>(0)) == ExactScalar(v1 / 2));
  CHECK(intersection_cot(pt, dv<ExactScalar>(1), dv<ExactScalar>(-1)) == ExactScalar(0));

  CHECK_THROWS_AS(g_inverse(pt, coordinate_vector(pt, Label::t(0))), NoCircleExpansion);
}

W random_covector(Gen& g, int m, int n) {
  return {g.finite(1 - 2 * m, 5, Parity::Odd), g.finite(-5, 2 * n - 1, Parity::Odd)};
}

TEST_CASE("g_inverse undoes g on Laurent-polynomial covectors") {
  Gen g(11);
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}}) {
    const auto p = gen_point(m, n, 41);
    for (int trial = 0; trial < 4; ++trial) {
      const W w = random_covector(g, m, n);
      INFO(m << "," << n << " trial " << trial);
      CHECK(same(g_inverse(p, g_forward(p, w)), w));
    }
  }
}

TEST_CASE("intersection form on the tangent side") {
  // a = z^2 + 1/10 + z^-2/4 has its zeros inside |z| = 1, a_hat = 1/10 + z^-2/4 outside,
  // and W = -(z/5 + 1/z) outside.
  const auto pt = basic_point(q(1, 10));
  Gen g(5);
  for (int trial = 0; trial < 6; ++trial) {
    const W w1 = random_covector(g, 1, 1), w2 = random_covector(g, 1, 1);
    const V x1 = g_forward(pt, w1), x2 = g_forward(pt, w2);
    INFO("trial " << trial);
    const ExactScalar c = intersection_cot(pt, w1, w2);
    CHECK(c == intersection_cot(pt, w2, w1));
    CHECK(c == pair(w1, x2));
    CHECK(intersection_tan(pt, x1, x2) == c);
    CHECK(pair(g_inverse(pt, x1), x2) == c);
  }
  const auto labels = all_labels(1, 1, 2);
  for (const auto& u : labels)
    for (const auto& v : labels) {
      if ((u.kind == Label::Kind::T && u.index < 1) || (v.kind == Label::Kind::T && v.index < 1)) continue;
      INFO(u.str() << " " << v.str());
      const V xu = coordinate_vector(pt, u), xv = coordinate_vector(pt, v);
      CHECK(intersection_tan(pt, xu, xv) == intersection_tan(pt, xv, xu));
    }
  CHECK_THROWS_AS(intersection_tan(basic_point(q(1, 4)), d_v<ExactScalar>(1), d_v<ExactScalar>(1)),
                  NoCircleExpansion);
}

}  // namespace
}  // namespace frobkp::testing
