#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobkp/coefficient.hpp"
#include "frobkp/errors.hpp"
#include "frobkp/rational.hpp"

namespace frobkp {

enum class Parity { Even, Odd, Mixed };
enum class Side { Infinity, Zero, Finite };
enum class Where { Infinity, Zero };
enum class ResidueAt { Infinity, Zero, Circle };

// Exponent sentinel for unbounded windows.
inline constexpr int kInf = 1 << 28;

// Closed exponent interval on which coefficients are exact.
struct Window {
  int lo = -kInf;
  int hi = kInf;
  bool contains(int e) const { return e >= lo && e <= hi; }
  bool bounded_below() const { return lo > -kInf; }
  bool bounded_above() const { return hi < kInf; }
  friend bool operator==(const Window&, const Window&) = default;
};

inline int add_lo(int a, int b) { return (a <= -kInf || b <= -kInf) ? -kInf : a + b; }
inline int add_hi(int a, int b) { return (a >= kInf || b >= kInf) ? kInf : a + b; }

inline Parity parity_of(int e) { return (e % 2 == 0) ? Parity::Even : Parity::Odd; }
inline Parity parity_product(Parity a, Parity b) {
  if (a == Parity::Mixed || b == Parity::Mixed) return Parity::Mixed;
  return a == b ? Parity::Even : Parity::Odd;
}
inline Parity parity_flip(Parity p) {
  if (p == Parity::Mixed) return p;
  return p == Parity::Even ? Parity::Odd : Parity::Even;
}
inline Parity parity_shift(Parity p, int k) { return (k % 2 == 0) ? p : parity_flip(p); }

// Laurent series in z with a parity tag and a trusted exponent window.
// Finite: exact everywhere. Infinity: exact on [lo, +inf). Zero: exact on (-inf, hi].
template <class T>
class LaurentSeries {
 public:
  using C = Coeff<T>;
  using value_type = T;

  LaurentSeries() = default;
  explicit LaurentSeries(Parity p) : parity_(p) {}

  static LaurentSeries monomial(int e, const T& c) {
    LaurentSeries s(parity_of(e));
    s.set(e, c);
    return s;
  }
  static LaurentSeries constant(const T& c) { return monomial(0, c); }
  static LaurentSeries z_power(int e) { return monomial(e, C::from(1)); }

  // Parity is inferred from the nonzero terms when not supplied.
  static LaurentSeries from_terms(const std::vector<std::pair<int, T>>& terms,
                                  std::optional<Parity> parity = std::nullopt,
                                  Window window = {}) {
    LaurentSeries s;
    for (const auto& [e, c] : terms) s.add_at(e, c);
    s.trim();
    s.parity_ = parity ? *parity : s.inferred_parity();
    if (!s.parity_consistent())
      throw BadSupport("terms do not respect the requested parity");
    s.window_ = window;
    s.check_window();
    s.drop_outside_window();
    return s;
  }

  Parity parity() const { return parity_; }
  const Window& window() const { return window_; }
  Side side() const {
    if (window_.bounded_below()) return Side::Infinity;
    if (window_.bounded_above()) return Side::Zero;
    return Side::Finite;
  }
  bool is_finite() const { return side() == Side::Finite; }
  bool is_exact_zero() const { return is_finite() && !top().has_value(); }
  bool trusted(int e) const { return window_.contains(e); }

  T coeff(int e) const {
    if (!trusted(e))
      throw UntrustedRegion("coefficient of z^" + std::to_string(e) + " lies outside [" +
                            bound_str(window_.lo) + ", " + bound_str(window_.hi) + "]");
    return stored(e);
  }
  T stored(int e) const {
    if (e < base_ || e >= base_ + static_cast<int>(c_.size())) return C::from(0);
    return c_[e - base_];
  }

  std::optional<int> top() const {
    if (c_.empty()) return std::nullopt;
    return base_ + static_cast<int>(c_.size()) - 1;
  }
  std::optional<int> bottom() const {
    if (c_.empty()) return std::nullopt;
    return base_;
  }
  // Upper bound for the exponents of the true series.
  int top_bound() const {
    if (window_.bounded_above()) return kInf;
    if (auto t = top()) return *t;
    return window_.lo - 1;
  }
  int bottom_bound() const {
    if (window_.bounded_below()) return -kInf;
    if (auto b = bottom()) return *b;
    return window_.hi + 1;
  }

  std::vector<std::pair<int, T>> terms() const {
    std::vector<std::pair<int, T>> out;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!C::is_zero(c_[i])) out.emplace_back(base_ + static_cast<int>(i), c_[i]);
    return out;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!C::is_zero(c_[i])) f(base_ + static_cast<int>(i), c_[i]);
  }

  // Narrows the trusted window.
  LaurentSeries restricted(Window w) const {
    LaurentSeries s = *this;
    s.window_.lo = std::max(s.window_.lo, w.lo);
    s.window_.hi = std::min(s.window_.hi, w.hi);
    s.check_window();
    s.drop_outside_window();
    return s;
  }
  LaurentSeries truncated_below(int lo) const { return restricted(Window{lo, kInf}); }
  LaurentSeries truncated_above(int hi) const { return restricted(Window{-kInf, hi}); }

  LaurentSeries derivative() const {
    LaurentSeries s(parity_flip(parity_));
    s.window_ = Window{add_lo(window_.lo, -1), window_.hi >= kInf ? kInf : window_.hi - 1};
    for_each([&](int e, const T& c) {
      if (e != 0) s.add_at(e - 1, C::scale(c, Rational(e)));
    });
    s.trim();
    return s;
  }

  LaurentSeries shifted(int k) const {
    LaurentSeries s = *this;
    s.base_ += k;
    s.parity_ = parity_shift(parity_, k);
    s.window_ = Window{add_lo(window_.lo, k), add_hi(window_.hi, k)};
    return s;
  }

  LaurentSeries scaled(const T& c) const {
    LaurentSeries s = *this;
    for (auto& x : s.c_) x = x * c;
    s.trim();
    return s;
  }
  LaurentSeries scaled(const Rational& q) const {
    LaurentSeries s = *this;
    for (auto& x : s.c_) x = C::scale(x, q);
    s.trim();
    return s;
  }

  // z -> 1/z
  LaurentSeries reflected() const {
    LaurentSeries s(parity_);
    s.window_ = Window{window_.hi >= kInf ? -kInf : -window_.hi,
                       window_.lo <= -kInf ? kInf : -window_.lo};
    if (!c_.empty()) {
      s.base_ = -(*top());
      s.c_.assign(c_.rbegin(), c_.rend());
    }
    return s;
  }

  template <class U, class F>
  LaurentSeries<U> mapped(F&& f) const {
    std::vector<std::pair<int, U>> t;
    for_each([&](int e, const T& c) { t.emplace_back(e, f(c)); });
    return LaurentSeries<U>::from_terms(t, parity_, window_);
  }

  LaurentSeries operator-() const {
    LaurentSeries s = *this;
    for (auto& x : s.c_) x = -x;
    return s;
  }

  LaurentSeries& operator+=(const LaurentSeries& o) { return accumulate(o, false); }
  LaurentSeries& operator-=(const LaurentSeries& o) { return accumulate(o, true); }
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    const Parity p = parity_product(a.parity_, b.parity_);
    if (a.is_exact_zero() || b.is_exact_zero()) return LaurentSeries(p);
    check_compatible(a, b);
    Window w;
    if (a.window_.bounded_below() || b.window_.bounded_below())
      w.lo = std::max(add_lo(a.window_.lo, b.top_bound()), add_lo(b.window_.lo, a.top_bound()));
    if (a.window_.bounded_above() || b.window_.bounded_above())
      w.hi = std::min(add_hi(a.window_.hi, b.bottom_bound()), add_hi(b.window_.hi, a.bottom_bound()));
    LaurentSeries s(p);
    s.window_ = w;
    if (a.c_.empty() || b.c_.empty()) return s;
    const int lo = std::max(a.base_ + b.base_, w.lo);
    const int hi = std::min(*a.top() + *b.top(), w.hi);
    if (lo > hi) return s;
    s.base_ = lo;
    s.c_.assign(static_cast<std::size_t>(hi - lo + 1), C::from(0));
    const int bt = *b.top();
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      const T& x = a.c_[i];
      if (C::is_zero(x)) continue;
      const int ei = a.base_ + static_cast<int>(i);
      const int jlo = std::max(b.base_, lo - ei);
      const int jhi = std::min(bt, hi - ei);
      for (int ej = jlo; ej <= jhi; ++ej) {
        const T& y = b.c_[ej - b.base_];
        if (C::is_zero(y)) continue;
        s.c_[ei + ej - lo] += x * y;
      }
    }
    s.trim();
    return s;
  }

  // Coefficient of z^e in a*b without forming the whole product.
  static T product_coeff(const LaurentSeries& a, const LaurentSeries& b, int e) {
    if (a.is_exact_zero() || b.is_exact_zero()) return C::from(0);
    check_compatible(a, b);
    Window w;
    if (a.window_.bounded_below() || b.window_.bounded_below())
      w.lo = std::max(add_lo(a.window_.lo, b.top_bound()), add_lo(b.window_.lo, a.top_bound()));
    if (a.window_.bounded_above() || b.window_.bounded_above())
      w.hi = std::min(add_hi(a.window_.hi, b.bottom_bound()), add_hi(b.window_.hi, a.bottom_bound()));
    if (!w.contains(e))
      throw UntrustedRegion("product coefficient of z^" + std::to_string(e) + " is not determined");
    T acc = C::from(0);
    a.for_each([&](int ei, const T& x) {
      const T y = b.stored(e - ei);
      if (!C::is_zero(y)) acc += x * y;
    });
    return acc;
  }

  std::string str() const {
    std::string out;
    for_each([&](int ex, const T& c) {
      if (!out.empty()) out += " + ";
      out += "(" + C::str(c) + ")*z^" + std::to_string(ex);
    });
    if (out.empty()) out = "0";
    if (window_.bounded_below()) out += " + O(z^" + std::to_string(window_.lo - 1) + ")";
    if (window_.bounded_above()) out += " + O(z^" + std::to_string(window_.hi + 1) + ")";
    return out;
  }

 private:
  template <class U>
  friend class LaurentSeries;

  static std::string bound_str(int b) {
    if (b <= -kInf) return "-inf";
    if (b >= kInf) return "+inf";
    return std::to_string(b);
  }

  static void check_compatible(const LaurentSeries& a, const LaurentSeries& b) {
    const Side sa = a.side(), sb = b.side();
    if ((sa == Side::Infinity && sb == Side::Zero) || (sa == Side::Zero && sb == Side::Infinity))
      throw IncompatibleSides("cannot combine an expansion at infinity with one at zero");
  }

  void check_window() const {
    if (window_.bounded_below() && window_.bounded_above())
      throw IncompatibleSides("trusted window bounded on both sides");
  }

  LaurentSeries& accumulate(const LaurentSeries& o, bool subtract) {
    check_compatible(*this, o);
    if (is_exact_zero()) {
      parity_ = o.parity_;
    } else if (!o.is_exact_zero() && parity_ != o.parity_) {
      parity_ = Parity::Mixed;
    }
    window_.lo = std::max(window_.lo, o.window_.lo);
    window_.hi = std::min(window_.hi, o.window_.hi);
    o.for_each([&](int e, const T& c) {
      if (window_.contains(e)) add_at(e, subtract ? T(-c) : c);
    });
    drop_outside_window();
    trim();
    return *this;
  }

  void add_at(int e, const T& c) {
    if (C::is_zero(c)) return;
    if (c_.empty()) {
      base_ = e;
      c_.push_back(c);
      return;
    }
    if (e < base_) {
      c_.insert(c_.begin(), static_cast<std::size_t>(base_ - e), C::from(0));
      base_ = e;
    } else if (e >= base_ + static_cast<int>(c_.size())) {
      c_.resize(static_cast<std::size_t>(e - base_ + 1), C::from(0));
    }
    c_[e - base_] += c;
  }
  void set(int e, const T& c) {
    add_at(e, c);
    trim();
  }

  void trim() {
    std::size_t first = 0;
    while (first < c_.size() && C::is_zero(c_[first])) ++first;
    if (first == c_.size()) {
      c_.clear();
      base_ = 0;
      return;
    }
    std::size_t last = c_.size();
    while (C::is_zero(c_[last - 1])) --last;
    if (first > 0 || last < c_.size()) {
      c_ = std::vector<T>(c_.begin() + first, c_.begin() + last);
      base_ += static_cast<int>(first);
    }
  }

  void drop_outside_window() {
    if (c_.empty()) return;
    const int t = *top();
    if (base_ >= window_.lo && t <= window_.hi) return;
    std::vector<std::pair<int, T>> keep;
    for_each([&](int e, const T& c) {
      if (window_.contains(e)) keep.emplace_back(e, c);
    });
    c_.clear();
    base_ = 0;
    for (const auto& [e, c] : keep) add_at(e, c);
    trim();
  }

  Parity inferred_parity() const {
    bool even = false, odd = false;
    for_each([&](int e, const T&) { (e % 2 == 0 ? even : odd) = true; });
    if (even && odd) return Parity::Mixed;
    return odd ? Parity::Odd : Parity::Even;
  }
  bool parity_consistent() const {
    if (parity_ == Parity::Mixed) return true;
    bool ok = true;
    for_each([&](int e, const T&) { ok = ok && parity_of(e) == parity_; });
    return ok;
  }

  Parity parity_ = Parity::Even;
  Window window_{};
  int base_ = 0;
  std::vector<T> c_;
};

// ---------------------------------------------------------------- projections

enum class Keep { AtLeast, AtMost };

// Keeps exponents >= s (AtLeast) or <= s (AtMost); the rest is exactly zero.
template <class T>
LaurentSeries<T> select(const LaurentSeries<T>& f, Keep keep, int s) {
  const Window w = f.window();
  Window out;
  if (keep == Keep::AtLeast) {
    if (w.bounded_below() && w.lo > s)
      throw UntrustedRegion("projection to exponents >= " + std::to_string(s) +
                            " needs coefficients below the trusted window");
    out.hi = w.bounded_above() ? std::max(w.hi, s - 1) : kInf;
  } else {
    if (w.bounded_above() && w.hi < s)
      throw UntrustedRegion("projection to exponents <= " + std::to_string(s) +
                            " needs coefficients above the trusted window");
    out.lo = w.bounded_below() ? std::min(w.lo, s + 1) : -kInf;
  }
  std::vector<std::pair<int, T>> t;
  f.for_each([&](int e, const T& c) {
    if (keep == Keep::AtLeast ? e >= s : e <= s) t.emplace_back(e, c);
  });
  return LaurentSeries<T>::from_terms(t, f.parity(), out);
}

template <class T>
LaurentSeries<T> plus_part(const LaurentSeries<T>& f) {
  return select(f, Keep::AtLeast, 0);
}
template <class T>
LaurentSeries<T> minus_part(const LaurentSeries<T>& f) {
  return select(f, Keep::AtMost, -1);
}
// Pi = (.)_+ - (.)_-
template <class T>
LaurentSeries<T> pi_part(const LaurentSeries<T>& f) {
  return plus_part(f) - minus_part(f);
}

template <class T>
T residue(const LaurentSeries<T>& f, ResidueAt at) {
  switch (at) {
    case ResidueAt::Infinity:
      if (f.side() == Side::Zero) throw IncompatibleSides("residue at infinity of an expansion at zero");
      return -f.coeff(-1);
    case ResidueAt::Zero:
      if (f.side() == Side::Infinity) throw IncompatibleSides("residue at zero of an expansion at infinity");
      return f.coeff(-1);
    case ResidueAt::Circle:
      return f.coeff(-1);
  }
  return Coeff<T>::from(0);
}

// ------------------------------------------------------------------ inversion

// 1/f expanded at infinity, `depth` parity steps below the leading term.
template <class T>
LaurentSeries<T> inverse_at_infinity(const LaurentSeries<T>& f, int depth) {
  using C = Coeff<T>;
  if (f.side() == Side::Zero) throw IncompatibleSides("inverse at infinity of an expansion at zero");
  auto t = f.top();
  if (!t || !f.trusted(*t)) throw ZeroLeadingTerm("series has no trusted leading term");
  const int e = *t;
  auto inv = C::inverse(f.stored(e));
  if (!inv) throw ZeroLeadingTerm("leading coefficient is not invertible");
  int span = 2 * depth;
  if (f.window().bounded_below()) span = std::min(span, e - f.window().lo);
  std::vector<T> d(static_cast<std::size_t>(span + 1), C::from(0));
  for (int j = 1; j <= span; ++j) d[j] = f.stored(e - j) * *inv;
  std::vector<T> g(static_cast<std::size_t>(span + 1), C::from(0));
  g[0] = C::from(1);
  for (int k = 1; k <= span; ++k) {
    T acc = C::from(0);
    for (int j = 1; j <= k; ++j) {
      if (C::is_zero(d[j]) || C::is_zero(g[k - j])) continue;
      acc += d[j] * g[k - j];
    }
    g[k] = -acc;
  }
  std::vector<std::pair<int, T>> terms;
  for (int k = 0; k <= span; ++k)
    if (!C::is_zero(g[k])) terms.emplace_back(-e - k, g[k] * *inv);
  return LaurentSeries<T>::from_terms(terms, f.parity(), Window{-e - span, kInf});
}

template <class T>
LaurentSeries<T> inverse_at_zero(const LaurentSeries<T>& f, int depth) {
  if (f.side() == Side::Infinity) throw IncompatibleSides("inverse at zero of an expansion at infinity");
  return inverse_at_infinity(f.reflected(), depth).reflected();
}

template <class T>
LaurentSeries<T> inverse(const LaurentSeries<T>& f, Where where, int depth) {
  return where == Where::Infinity ? inverse_at_infinity(f, depth) : inverse_at_zero(f, depth);
}

template <class T>
LaurentSeries<T> divide(const LaurentSeries<T>& f, const LaurentSeries<T>& g, Where where, int depth) {
  return f * inverse(g, where, depth);
}

template <class T>
LaurentSeries<T> power(const LaurentSeries<T>& f, int k, Where where, int depth) {
  if (k < 0) return power(inverse(f, where, depth), -k, where, depth);
  LaurentSeries<T> out = LaurentSeries<T>::constant(Coeff<T>::from(1));
  LaurentSeries<T> b = f;
  while (k) {
    if (k & 1) out = out * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return out;
}

// Which one-sided expansion of 1/f converges on |z| = 1, certified by one coefficient
// dominating the sum of the others. nullopt when no certificate is available.
template <class T>
std::optional<Where> circle_dominance(const LaurentSeries<T>& f) {
  using C = Coeff<T>;
  if (!f.is_finite() || f.is_exact_zero()) return std::nullopt;
  auto terms = f.terms();
  bool exact = true, approx = true;
  for (const auto& [e, c] : terms) {
    exact = exact && C::exact_abs(c).has_value();
    approx = approx && C::approx_abs(c).has_value();
  }
  auto dominant = [&](std::size_t k) -> bool {
    if (exact) {
      Rational rest = 0;
      for (std::size_t i = 0; i < terms.size(); ++i)
        if (i != k) rest += *C::exact_abs(terms[i].second);
      return *C::exact_abs(terms[k].second) > rest;
    }
    double rest = 0;
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (i != k) rest += *C::approx_abs(terms[i].second);
    return *C::approx_abs(terms[k].second) > rest * (1 + 1e-9) + 1e-300;
  };
  if (!exact && !approx) return std::nullopt;
  if (dominant(terms.size() - 1)) return Where::Infinity;
  if (dominant(0)) return Where::Zero;
  throw NoCircleExpansion("no one-sided expansion of 1/f converges on the unit circle: " + f.str());
}

// 1/f as expanded on the unit circle. Finite inputs with an available magnitude are
// certified; otherwise the expansion follows the side of f (formal top term for finite f).
template <class T>
LaurentSeries<T> circle_inverse(const LaurentSeries<T>& f, int depth) {
  if (f.side() == Side::Zero) return inverse_at_zero(f, depth);
  if (f.side() == Side::Infinity) return inverse_at_infinity(f, depth);
  auto where = circle_dominance(f);
  if (where == Where::Zero) return inverse_at_zero(f, depth);
  return inverse_at_infinity(f, depth);
}

// ------------------------------------------------------------ fractional power

// f^alpha expanded at infinity with leading coefficient root^p, where alpha = p/q and
// root^q equals the leading coefficient of f.
template <class T>
LaurentSeries<T> fractional_power_at_infinity(const LaurentSeries<T>& f, const Rational& alpha,
                                              const T& leading_root, int depth) {
  using C = Coeff<T>;
  if (f.side() == Side::Zero) throw IncompatibleSides("power at infinity of an expansion at zero");
  auto t = f.top();
  if (!t || !f.trusted(*t)) throw ZeroLeadingTerm("series has no trusted leading term");
  const int e = *t;
  Rational a = alpha;
  a.canonicalize();
  Rational lead_exp = a * e;
  if (lead_exp.get_den() != 1)
    throw NonIntegerLeadingExponent("alpha * leading exponent = " + lead_exp.get_str());
  const int q = static_cast<int>(a.get_den().get_si());
  const int p = static_cast<int>(a.get_num().get_si());
  const T c = f.stored(e);
  if (!(coeff_pow(leading_root, q) == c))
    throw RootMismatch("supplied root does not raise to the leading coefficient");
  auto inv = C::inverse(c);
  if (!inv) throw ZeroLeadingTerm("leading coefficient is not invertible");
  const T lead = coeff_pow(leading_root, p);
  int span = 2 * depth;
  if (f.window().bounded_below()) span = std::min(span, e - f.window().lo);
  std::vector<T> d(static_cast<std::size_t>(span + 1), C::from(0));
  for (int j = 1; j <= span; ++j) d[j] = f.stored(e - j) * *inv;
  // (1 + sum d_j t^j)^a via g_k = (1/k) sum_j ((a+1) j - k) d_j g_{k-j}
  std::vector<T> g(static_cast<std::size_t>(span + 1), C::from(0));
  g[0] = C::from(1);
  for (int k = 1; k <= span; ++k) {
    T acc = C::from(0);
    for (int j = 1; j <= k; ++j) {
      if (C::is_zero(d[j]) || C::is_zero(g[k - j])) continue;
      acc += C::scale(d[j] * g[k - j], (a + 1) * j - k);
    }
    g[k] = C::scale(acc, Rational(1, k));
  }
  const int top_exp = static_cast<int>(lead_exp.get_num().get_si());
  std::vector<std::pair<int, T>> terms;
  for (int k = 0; k <= span; ++k)
    if (!C::is_zero(g[k])) terms.emplace_back(top_exp - k, g[k] * lead);
  Parity par = f.parity() == Parity::Mixed ? Parity::Mixed : parity_of(top_exp);
  return LaurentSeries<T>::from_terms(terms, par, Window{top_exp - span, kInf});
}

template <class T>
LaurentSeries<T> fractional_power_at_zero(const LaurentSeries<T>& f, const Rational& alpha,
                                          const T& leading_root, int depth) {
  if (f.side() == Side::Infinity) throw IncompatibleSides("power at zero of an expansion at infinity");
  return fractional_power_at_infinity(f.reflected(), alpha, leading_root, depth).reflected();
}

template <class T>
LaurentSeries<T> fractional_power(const LaurentSeries<T>& f, const Rational& alpha,
                                  const T& leading_root, Where where, int depth) {
  return where == Where::Infinity ? fractional_power_at_infinity(f, alpha, leading_root, depth)
                                  : fractional_power_at_zero(f, alpha, leading_root, depth);
}

// ----------------------------------------------------------------- composition

// f(g(z)) at infinity: g has leading term c z with c a unit.
template <class T>
LaurentSeries<T> compose_at_infinity(const LaurentSeries<T>& f, const LaurentSeries<T>& g, int depth) {
  using S = LaurentSeries<T>;
  if (f.is_exact_zero()) return f;
  if (f.side() == Side::Zero || g.side() == Side::Zero)
    throw IncompatibleSides("composition at infinity needs expansions at infinity");
  const int emax = f.top_bound();
  const int emin = f.window().bounded_below() ? f.window().lo : *f.bottom();
  S out;
  if (emax > 0) {
    S acc = S::constant(f.stored(emax));
    for (int e = emax - 1; e >= 1; --e) acc = acc * g + S::constant(f.stored(e));
    out = acc * g;
  }
  if (emin <= 0) {
    S h = inverse_at_infinity(g, depth);
    S acc = S::constant(f.stored(emin));
    for (int e = emin + 1; e <= 0; ++e) acc = acc * h + S::constant(f.stored(e));
    out += acc;
  }
  if (f.window().bounded_below()) out = out.truncated_below(f.window().lo);
  return out;
}

// f(g(z)) at zero: g has leading term c z with c a unit, f a power series in its argument.
template <class T>
LaurentSeries<T> compose_at_zero(const LaurentSeries<T>& f, const LaurentSeries<T>& g) {
  using S = LaurentSeries<T>;
  if (f.is_exact_zero()) return f;
  if (f.side() == Side::Infinity || g.side() == Side::Infinity)
    throw IncompatibleSides("composition at zero needs expansions at zero");
  if (*f.bottom() < 0) throw BadLeadingTerm("composition at zero needs a power series");
  const int emax = f.window().bounded_above() ? f.window().hi : *f.top();
  S acc = S::constant(f.stored(emax));
  for (int e = emax - 1; e >= 0; --e) acc = acc * g + S::constant(f.stored(e));
  if (f.window().bounded_above()) acc = acc.truncated_above(f.window().hi);
  return acc;
}

template <class T>
bool agrees_on_window(const LaurentSeries<T>& a, const LaurentSeries<T>& b, Window w) {
  for (int e = std::max(w.lo, std::min(a.bottom().value_or(w.hi), b.bottom().value_or(w.hi)));
       e <= std::min(w.hi, std::max(a.top().value_or(w.lo), b.top().value_or(w.lo))); ++e)
    if (!(a.stored(e) == b.stored(e))) return false;
  return true;
}

// Equality on the intersection of the two trusted windows.
template <class T>
bool agrees(const LaurentSeries<T>& a, const LaurentSeries<T>& b) {
  Window w{std::max(a.window().lo, b.window().lo), std::min(a.window().hi, b.window().hi)};
  return agrees_on_window(a, b, w);
}

// Multiplies the coefficient of z^e by factor(e).
template <class T, class F>
LaurentSeries<T> scaled_by_exponent(const LaurentSeries<T>& f, F&& factor) {
  std::vector<std::pair<int, T>> t;
  f.for_each([&](int e, const T& c) { t.emplace_back(e, Coeff<T>::scale(c, factor(e))); });
  return LaurentSeries<T>::from_terms(t, f.parity(), f.window());
}

// Quotient num/den of finite Laurent polynomials when the division is exact.
template <class T>
std::optional<LaurentSeries<T>> exact_quotient(const LaurentSeries<T>& num, const LaurentSeries<T>& den) {
  using S = LaurentSeries<T>;
  using C = Coeff<T>;
  if (!num.is_finite() || !den.is_finite()) throw IncompatibleSides("exact division needs finite series");
  auto dt = den.top();
  if (!dt) throw ZeroLeadingTerm("division by zero");
  auto inv = C::inverse(den.stored(*dt));
  if (!inv) throw ZeroLeadingTerm("leading coefficient is not invertible");
  if (num.is_exact_zero()) return S(Parity::Even);
  const int qlo = *num.bottom() - *den.bottom();
  std::vector<std::pair<int, T>> q;
  S r = num;
  while (auto rt = r.top()) {
    const int e = *rt - *dt;
    if (e < qlo) return std::nullopt;
    const T c = r.stored(*rt) * *inv;
    q.emplace_back(e, c);
    r = r - S::monomial(e, c) * den;
  }
  return S::from_terms(q);
}

// Polynomial division (all exponents >= 0): a = q b + r with deg r < deg b.
template <class T>
std::pair<LaurentSeries<T>, LaurentSeries<T>> poly_divmod(const LaurentSeries<T>& a, const LaurentSeries<T>& b) {
  using S = LaurentSeries<T>;
  auto bt = b.top();
  if (!bt) throw ZeroLeadingTerm("division by zero");
  auto inv = *Coeff<T>::inverse(b.stored(*bt));
  S q(Parity::Mixed), r = a;
  while (auto rt = r.top()) {
    if (*rt < *bt) break;
    const S t = S::monomial(*rt - *bt, r.stored(*rt) * inv);
    q = q + t;
    r = r - t * b;
  }
  return {q, r};
}

// u, v with u a + v b = 1 for coprime polynomials a, b. nullopt when they share a root.
template <class T>
std::optional<std::pair<LaurentSeries<T>, LaurentSeries<T>>> bezout(const LaurentSeries<T>& a,
                                                                   const LaurentSeries<T>& b) {
  using S = LaurentSeries<T>;
  using C = Coeff<T>;
  S r0 = a, r1 = b;
  S u0 = S::constant(C::from(1)), u1(Parity::Even), v0(Parity::Even), v1 = S::constant(C::from(1));
  while (!r1.is_exact_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    S u2 = u0 - q * u1, v2 = v0 - q * v1;
    r0 = r1, r1 = r, u0 = u1, u1 = u2, v0 = v1, v1 = v2;
  }
  if (*r0.top() != 0) return std::nullopt;
  const T inv = *C::inverse(r0.stored(0));
  return std::make_pair(u0.scaled(inv), v0.scaled(inv));
}

// Inverse function g with f(g(z)) = z, expanded where f is. f has leading term c w
// (at infinity: c w + lower powers; at zero: c w + higher powers).
template <class T>
LaurentSeries<T> compositional_inverse(const LaurentSeries<T>& f, Where where, int depth) {
  using S = LaurentSeries<T>;
  using C = Coeff<T>;
  const int lead_exp = where == Where::Infinity ? f.top_bound() : f.bottom_bound();
  if (lead_exp != 1 || !f.trusted(1))
    throw NotNearIdentity("compositional inverse needs leading term c*w");
  auto inv = C::inverse(f.stored(1));
  if (!inv) throw NotNearIdentity("leading coefficient is not invertible");
  Window target = where == Where::Infinity ? Window{1 - 2 * depth, kInf} : Window{-kInf, 1 + 2 * depth};
  if (where == Where::Infinity && f.window().bounded_below()) target.lo = std::max(target.lo, f.window().lo);
  if (where == Where::Zero && f.window().bounded_above()) target.hi = std::min(target.hi, f.window().hi);
  const S z = S::z_power(1);
  const S cw = S::monomial(1, f.stored(1));
  const S nonlinear = f - cw;
  S g = S::monomial(1, *inv).restricted(target);
  const int max_iter = 2 * depth + 4;
  for (int it = 0; it <= max_iter; ++it) {
    S comp = where == Where::Infinity ? compose_at_infinity(nonlinear, g, depth + 1)
                                      : compose_at_zero(nonlinear, g);
    S next = ((z - comp).scaled(*inv)).restricted(target);
    if (it > 0 && agrees_on_window(next, g, target)) {
      g = next;
      break;
    }
    g = next;
    if (it == max_iter) throw NotNearIdentity("compositional inverse did not stabilize");
  }
  Window keep = target;
  S check = where == Where::Infinity ? compose_at_infinity(f, g, depth + 1) : compose_at_zero(f, g);
  Window cw_ = check.window();
  keep.lo = std::max(keep.lo, cw_.lo);
  keep.hi = std::min(keep.hi, cw_.hi);
  S diff = (check - z).restricted(keep);
  if (!diff.terms().empty()) throw NotNearIdentity("f(g(z)) differs from z inside the trusted window");
  return g;
}

}  // namespace frobkp
