#include "frobkp/poly.hpp"

#include <algorithm>

namespace frobkp {

Poly Poly::var(int index) {
  Monomial m;
  m.e[index] = 1;
  return monomial(1, m);
}

Poly Poly::monomial(const Rational& c, const Monomial& m) {
  Poly p;
  if (c != 0) p.t_.emplace_back(m, c);
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  Poly p;
  p.t_ = std::move(terms);
  p.canonicalize();
  return p;
}

void Poly::canonicalize() {
  std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(t_.size());
  for (auto& t : t_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second == 0) out.pop_back();
  t_ = std::move(out);
}

std::optional<Rational> Poly::as_constant() const {
  if (t_.empty()) return Rational(0);
  if (t_.size() == 1 && t_[0].first.is_one()) return t_[0].second;
  return std::nullopt;
}

Poly Poly::derivative(int index) const {
  std::vector<Term> out;
  for (const auto& [m, c] : t_) {
    if (m.e[index] == 0) continue;
    Monomial d = m;
    d.e[index] = static_cast<int16_t>(d.e[index] - 1);
    out.emplace_back(d, c * m.e[index]);
  }
  return from_terms(std::move(out));
}

Rational Poly::eval(const std::vector<Rational>& values) const {
  Rational acc = 0;
  for (const auto& [m, c] : t_) {
    Rational v = c;
    for (int i = 0; i < kMaxVars; ++i)
      if (m.e[i]) v *= pow(values.at(i), m.e[i]);
    acc += v;
  }
  return acc;
}

std::optional<Rational> Poly::uniform_degree(const std::vector<Rational>& weights) const {
  std::optional<Rational> deg;
  for (const auto& [m, c] : t_) {
    Rational d = 0;
    for (int i = 0; i < kMaxVars; ++i)
      if (m.e[i]) d += weights.at(i) * m.e[i];
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.t_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(t_.size() + o.t_.size());
  std::size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) {
      out.push_back(std::move(t_[i++]));
    } else if (i == t_.size() || o.t_[j].first < t_[i].first) {
      out.push_back(o.t_[j++]);
    } else {
      Rational s = t_[i].second + o.t_[j].second;
      if (s != 0) out.emplace_back(t_[i].first, s);
      ++i;
      ++j;
    }
  }
  t_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.t_) t.second = -t.second;
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.t_.empty() || b.t_.empty()) return Poly();
  if (b.t_.size() == 1 && b.t_[0].first.is_one()) return a.scaled(b.t_[0].second);
  if (a.t_.size() == 1 && a.t_[0].first.is_one()) return b.scaled(a.t_[0].second);
  std::vector<Poly::Term> out;
  out.reserve(a.t_.size() * b.t_.size());
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) out.emplace_back(ma + mb, ca * cb);
  Poly p;
  p.t_ = std::move(out);
  p.canonicalize();
  return p;
}

Poly Poly::scaled(const Rational& q) const {
  if (q == 0) return Poly();
  Poly p = *this;
  for (auto& t : p.t_) t.second *= q;
  return p;
}

std::string monomial_str(const Monomial& m) {
  std::string out;
  for (int i = 0; i < kMaxVars; ++i) {
    if (!m.e[i]) continue;
    if (!out.empty()) out += "*";
    out += "w" + std::to_string(i + 1);
    if (m.e[i] != 1) out += "^" + std::to_string(m.e[i]);
  }
  return out.empty() ? "1" : out;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : t_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.get_str() + ")";
    if (!m.is_one()) out += "*" + monomial_str(m);
  }
  return out;
}

std::optional<Poly> Coeff<Poly>::inverse(const Poly& x) {
  if (!x.is_monomial()) return std::nullopt;
  const auto& [m, c] = x.terms()[0];
  Monomial inv;
  for (int i = 0; i < kMaxVars; ++i) inv.e[i] = static_cast<int16_t>(-m.e[i]);
  return Poly::monomial(Rational(1) / c, inv);
}

std::optional<Poly> Coeff<Poly>::root(const Poly& x, unsigned q) {
  if (!x.is_monomial()) return std::nullopt;
  const auto& [m, c] = x.terms()[0];
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    if (m.e[i] % static_cast<int>(q) != 0) return std::nullopt;
    r.e[i] = static_cast<int16_t>(m.e[i] / static_cast<int>(q));
  }
  auto cr = exact_root(c, q);
  if (!cr) return std::nullopt;
  return Poly::monomial(*cr, r);
}

}  // namespace frobkp
