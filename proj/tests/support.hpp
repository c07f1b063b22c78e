#pragma once

#include <random>
#include <utility>
#include <vector>

#include "frobkp/exact_scalar.hpp"
#include "frobkp/series.hpp"
#include "doctest.h"

namespace frobkp::testing {

using Series = LaurentSeries<ExactScalar>;

inline Series series(std::vector<std::pair<int, Rational>> terms) {
  std::vector<std::pair<int, ExactScalar>> t;
  for (auto& [e, c] : terms) t.emplace_back(e, ExactScalar(c));
  return Series::from_terms(t);
}

inline Rational q(long a, long b = 1) { return make_rational(a, b); }

// Small rationals k/den with |k| <= bound.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  Rational small(long bound = 4, long den = 8) {
    std::uniform_int_distribution<long> d(-bound, bound);
    return make_rational(d(rng_), den);
  }
  Rational nonzero(long bound = 4, long den = 8) {
    Rational r;
    do r = small(bound, den);
    while (r == 0);
    return r;
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  // Random finite series with exponents of the given parity in [lo, hi].
  Series finite(int lo, int hi, Parity parity) {
    std::vector<std::pair<int, ExactScalar>> t;
    for (int e = lo; e <= hi; ++e) {
      if (parity != Parity::Mixed && parity_of(e) != parity) continue;
      t.emplace_back(e, ExactScalar(small()));
    }
    return Series::from_terms(t, parity);
  }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace frobkp::testing

