#include "frobkp/rational.hpp"

#include <stdexcept>

#include "frobkp/errors.hpp"

namespace frobkp {

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw PointParseError("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rational q;
  if (q.set_str(s, 10) != 0) throw PointParseError("bad rational literal '" + s + "'");
  if (q.get_den() == 0) throw PointParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("negative power of zero");
    return pow(Rational(1) / base, -exponent);
  }
  Rational out = 1;
  Rational b = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e) {
    if (e & 1u) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

namespace {

std::optional<mpz_class> integer_root(const mpz_class& x, unsigned q) {
  if (x < 0) {
    if (q % 2 == 0) return std::nullopt;
    auto r = integer_root(-x, q);
    if (!r) return std::nullopt;
    return mpz_class(-*r);
  }
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), q) == 0) return std::nullopt;
  return r;
}

}  // namespace

std::optional<Rational> exact_root(const Rational& x, unsigned q) {
  if (q == 0) return std::nullopt;
  auto num = integer_root(x.get_num(), q);
  auto den = integer_root(x.get_den(), q);
  if (!num || !den) return std::nullopt;
  Rational r(*num, *den);
  r.canonicalize();
  return r;
}

Rational gamma_ratio(const Rational& x, int p) {
  Rational prod = 1;
  for (int k = 0; k <= p; ++k) prod *= (x + k);
  if (prod == 0) throw std::domain_error("gamma ratio at a pole");
  return Rational(1) / prod;
}

Rational even_double_factorial(int p) {
  Rational out = 1;
  for (int k = 1; k <= p; ++k) out *= 2 * k;
  return out;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace frobkp
