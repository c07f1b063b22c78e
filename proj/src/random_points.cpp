#include "frobkp/random_points.hpp"

#include <array>

namespace frobkp {

Rational random_rational(std::mt19937_64& rng, long bound, long den) {
  std::uniform_int_distribution<long> d(-bound, bound);
  return make_rational(d(rng), den);
}

ExactSeries random_w(std::mt19937_64& rng) {
  return ExactSeries::from_terms({{1, ExactScalar(1)},
                                  {-1, ExactScalar(random_rational(rng, 8, 64))},
                                  {-3, ExactScalar(random_rational(rng, 8, 64))}},
                                 Parity::Odd);
}

ExactSeries random_l(int m, int n, std::mt19937_64& rng) {
  static const std::array<Rational, 5> bases{make_rational(1, 2), make_rational(2, 3), make_rational(3, 4),
                                             Rational(1), make_rational(3, 2)};
  std::vector<std::pair<int, ExactScalar>> t{{2 * m, ExactScalar(1)}};
  for (int e = 2 * m - 2; e > -2 * n; e -= 2) t.emplace_back(e, ExactScalar(random_rational(rng, 4, 16)));
  std::uniform_int_distribution<std::size_t> pick(0, bases.size() - 1);
  t.emplace_back(-2 * n, ExactScalar(pow(bases[pick(rng)], 2 * n)));
  return ExactSeries::from_terms(t, Parity::Even);
}

FlatChart<ExactScalar> random_chart(int m, int n, std::mt19937_64& rng) {
  FlatChart<ExactScalar> chart;
  chart.m = m;
  chart.n = n;
  chart.t[1] = ExactScalar(2);
  for (int i = -1; i <= 0; ++i) {
    Rational v = random_rational(rng, 4, 32);
    if (v != 0) chart.t[i] = ExactScalar(v);
  }
  for (int j = 1; j <= m; ++j) chart.h.emplace_back(random_rational(rng, 4, 8));
  for (int k = 1; k <= n; ++k) {
    Rational v = random_rational(rng, 4, 8);
    if (k == 1 && v == 0) v = 1;
    chart.hhat.emplace_back(k == 1 ? 2 * n * abs(v) : v);
  }
  return chart;
}

ExactPoint gen_point(int m, int n, std::uint64_t seed, Mode mode, int depth) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(m * 131 + n));
  if (mode == Mode::Truncated) return reconstruct(random_chart(m, n, rng), depth);
  const ExactSeries w = random_w(rng);
  return make_point_poly(m, n, w, random_l(m, n, rng), depth);
}

LaxPoint<XPoly> lift_to_loop(const ExactPoint& pt, std::uint64_t seed, int x_degree) {
  if (!pt.has_w()) throw ConfigError("loop points need the square root w of zeta");
  std::mt19937_64 rng(seed * 0xBF58476D1CE4E5B9ULL + 17);
  const int m = pt.m(), n = pt.n();
  auto lift = [&](const ExactSeries& s, bool keep_ends) {
    std::vector<std::pair<int, XPoly>> t;
    s.for_each([&](int e, const ExactScalar& c) {
      std::vector<ExactScalar> cs{c};
      if (!(keep_ends && (e == 2 * m || e == -2 * n)) && !(!keep_ends && e == 1))
        for (int d = 1; d <= x_degree; ++d) cs.emplace_back(random_rational(rng, 4, 16));
      t.emplace_back(e, XPoly(cs));
    });
    return LaurentSeries<XPoly>::from_terms(t, s.parity());
  };
  return lax_point_poly(m, n, lift(pt.w(), false), lift(pt.l(), true), pt.depth());
}

LaxPoint<XPoly> gen_loop_point(int m, int n, std::uint64_t seed, int x_degree, int depth) {
  return lift_to_loop(gen_point(m, n, seed, Mode::Polynomial, depth), seed, x_degree);
}

}  // namespace frobkp
