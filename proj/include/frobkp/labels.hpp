#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "frobkp/rational.hpp"

namespace frobkp {

// Flat coordinate labels t^i (i in Z), h^j (1 <= j <= m), hhat^k (1 <= k <= n).
struct Label {
  enum class Kind { T, H, HHat };
  Kind kind = Kind::T;
  int index = 0;

  static Label t(int i) { return {Kind::T, i}; }
  static Label h(int j) { return {Kind::H, j}; }
  static Label hhat(int k) { return {Kind::HHat, k}; }

  std::string str() const;
  friend auto operator<=>(const Label&, const Label&) = default;
};

Label parse_label(std::string_view text);

// Every label of the (m, n) manifold with |i| <= t_range.
std::vector<Label> all_labels(int m, int n, int t_range);

// deg t^i = (m(1-2i)+1)/2m, deg h^j = j/m, deg hhat^k = (2k-1)/2n + 1/2m.
Rational degree(Label u, int m, int n);
// mu_{t^i} = i, mu_{h^j} = (m-2j+1)/2m, mu_{hhat^k} = (n-2k+1)/2n.
Rational mu(Label u, int m, int n);
// d_m = 1 - 1/m
Rational charge(int m);
// Constant Gram matrix of the flat metric.
Rational gram(Label a, Label b, int m, int n);

// Coordinates w^1..w^{m+n} of the finite submanifold: w^a = h^{m+1-a} for a <= m,
// hhat^{m+n+1-a} otherwise.
Label w_label(int alpha, int m, int n);
int w_index(Label u, int m, int n);

}  // namespace frobkp
