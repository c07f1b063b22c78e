#pragma once

#include <memory>
#include <ostream>
#include <optional>
#include <string>
#include <vector>

#include "frobkp/rational.hpp"

namespace frobkp {

// Q(rho) with rho^degree = radicand. Elements from different fields never mix.
struct RadicalField {
  unsigned degree = 1;
  Rational radicand;
};

// Exact element of Q or of a radical extension Q(rho).
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long v) : r_(v) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(const Rational& q) : r_(q) { r_.canonicalize(); }  // NOLINT(google-explicit-constructor)

  // rho itself, the positive real root when the radicand is positive.
  static ExactScalar generator(std::shared_ptr<const RadicalField> field);
  static ExactScalar from_coordinates(std::shared_ptr<const RadicalField> field,
                                      std::vector<Rational> coords);

  bool is_zero() const { return tail_.empty() && r_ == 0; }
  bool is_rational() const { return tail_.empty(); }
  const Rational& rational() const;
  const std::shared_ptr<const RadicalField>& field() const { return field_; }
  // Coordinates in the basis 1, rho, ..., rho^(d-1).
  std::vector<Rational> coordinates() const;

  std::optional<ExactScalar> inverse() const;
  double approx() const;

  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar operator-() const;
  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b);
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  ExactScalar scaled(const Rational& q) const;
  std::string str() const;

 private:
  void normalize();
  static std::shared_ptr<const RadicalField> common_field(const ExactScalar& a,
                                                          const ExactScalar& b);

  Rational r_;
  std::vector<Rational> tail_;  // coefficients of rho^1 .. rho^(d-1)
  std::shared_ptr<const RadicalField> field_;
};

std::shared_ptr<const RadicalField> make_radical_field(unsigned degree, const Rational& radicand);

inline std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.str(); }

}  // namespace frobkp
