#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobkp/coefficient.hpp"
#include "frobkp/rational.hpp"

namespace frobkp {

inline constexpr int kMaxVars = 8;

struct Monomial {
  std::array<int16_t, kMaxVars> e{};
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  Monomial operator+(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<int16_t>(e[i] + o.e[i]);
    return r;
  }
  bool is_one() const {
    for (auto x : e)
      if (x) return false;
    return true;
  }
};

// Multivariate Laurent polynomial over Q in variables w1..w8.
class Poly {
 public:
  using Term = std::pair<Monomial, Rational>;

  Poly() = default;
  Poly(long v) : Poly(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Poly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) t_.emplace_back(Monomial{}, c);
  }
  // Variable w_{index+1}.
  static Poly var(int index);
  static Poly monomial(const Rational& c, const Monomial& m);
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_monomial() const { return t_.size() == 1; }
  std::optional<Rational> as_constant() const;

  Poly derivative(int index) const;
  Rational eval(const std::vector<Rational>& values) const;
  // Weighted degree of every monomial when it is uniform.
  std::optional<Rational> uniform_degree(const std::vector<Rational>& weights) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly scaled(const Rational& q) const;
  std::string str() const;

 private:
  void canonicalize();
  std::vector<Term> t_;  // sorted by monomial, nonzero coefficients
};

std::string monomial_str(const Monomial& m);

template <>
struct Coeff<Poly> {
  static Poly from(const Rational& q) { return Poly(q); }
  static bool is_zero(const Poly& x) { return x.is_zero(); }
  static Poly scale(const Poly& x, const Rational& q) { return x.scaled(q); }
  static std::optional<Poly> inverse(const Poly& x);
  static std::optional<Poly> root(const Poly& x, unsigned q);
  static std::optional<Rational> exact_abs(const Poly&) { return std::nullopt; }
  static std::optional<double> approx_abs(const Poly&) { return std::nullopt; }
  static Poly dx(const Poly&) { return Poly(); }
  static std::string str(const Poly& x) { return x.str(); }
};

}  // namespace frobkp
