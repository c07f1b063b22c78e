#include "frobkp/xpoly.hpp"

namespace frobkp {

void XPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

XPoly XPoly::derivative() const {
  std::vector<ExactScalar> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k].scaled(Rational(static_cast<long>(k))));
  return XPoly(std::move(d));
}

ExactScalar XPoly::eval(const ExactScalar& x) const {
  ExactScalar acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

XPoly& XPoly::operator+=(const XPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

XPoly& XPoly::operator-=(const XPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

XPoly XPoly::operator-() const {
  XPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

XPoly operator*(const XPoly& a, const XPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return XPoly();
  std::vector<ExactScalar> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      c[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return XPoly(std::move(c));
}

XPoly XPoly::scaled(const Rational& q) const {
  XPoly r = *this;
  for (auto& c : r.c_) c = c.scaled(q);
  r.trim();
  return r;
}

std::string XPoly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += c_[k].str();
    if (k == 1) out += "*x";
    if (k > 1) out += "*x^" + std::to_string(k);
  }
  return out;
}

}  // namespace frobkp
