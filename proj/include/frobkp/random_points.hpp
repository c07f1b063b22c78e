#pragma once

#include <cstdint>
#include <random>

#include "frobkp/exact_scalar.hpp"
#include "frobkp/hierarchy.hpp"
#include "frobkp/manifold.hpp"

namespace frobkp {

using ExactSeries = LaurentSeries<ExactScalar>;
using ExactPoint = Point<ExactScalar>;

// w = z + c1/z + c3/z^3 with |c| <= 1/8.
ExactSeries random_w(std::mt19937_64& rng);
// z^2m plus small even terms down to z^-2n; the z^-2n coefficient is a perfect 2n-th power.
ExactSeries random_l(int m, int n, std::mt19937_64& rng);

// Polynomial mode: make_point_poly(random_w, random_l). Truncated mode: reconstruct from a
// small random chart with t^1 = 2.
ExactPoint gen_point(int m, int n, std::uint64_t seed, Mode mode = Mode::Polynomial,
                     int depth = kDefaultDepth);

FlatChart<ExactScalar> random_chart(int m, int n, std::mt19937_64& rng);

// Loop point whose x = 0 values are those of pt: every coefficient of w and l except the
// z^2m and z^-2n ones of l gains random terms c_1 x + ... + c_d x^d.
LaxPoint<XPoly> lift_to_loop(const ExactPoint& pt, std::uint64_t seed, int x_degree = 2);
LaxPoint<XPoly> gen_loop_point(int m, int n, std::uint64_t seed, int x_degree = 2, int depth = 10);

// Random rational k/den with |k| <= bound.
Rational random_rational(std::mt19937_64& rng, long bound, long den);

}  // namespace frobkp
