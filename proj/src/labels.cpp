#include "frobkp/labels.hpp"

#include <charconv>

#include "frobkp/errors.hpp"

namespace frobkp {

std::string Label::str() const {
  switch (kind) {
    case Kind::T:
      return "t^" + std::to_string(index);
    case Kind::H:
      return "h^" + std::to_string(index);
    case Kind::HHat:
      return "hhat^" + std::to_string(index);
  }
  return "?";
}

Label parse_label(std::string_view text) {
  auto caret = text.find('^');
  if (caret == std::string_view::npos) throw ConfigError("bad label '" + std::string(text) + "'");
  std::string_view head = text.substr(0, caret);
  std::string_view tail = text.substr(caret + 1);
  int idx = 0;
  auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), idx);
  if (ec != std::errc() || ptr != tail.data() + tail.size())
    throw ConfigError("bad label index in '" + std::string(text) + "'");
  if (head == "t") return Label::t(idx);
  if (head == "h") return Label::h(idx);
  if (head == "hhat") return Label::hhat(idx);
  throw ConfigError("bad label family in '" + std::string(text) + "'");
}

std::vector<Label> all_labels(int m, int n, int t_range) {
  std::vector<Label> out;
  for (int i = -t_range; i <= t_range; ++i) out.push_back(Label::t(i));
  for (int j = 1; j <= m; ++j) out.push_back(Label::h(j));
  for (int k = 1; k <= n; ++k) out.push_back(Label::hhat(k));
  return out;
}

Rational degree(Label u, int m, int n) {
  switch (u.kind) {
    case Label::Kind::T:
      return make_rational(m * (1 - 2 * u.index) + 1, 2 * m);
    case Label::Kind::H:
      return make_rational(u.index, m);
    case Label::Kind::HHat:
      return make_rational(2 * u.index - 1, 2 * n) + make_rational(1, 2 * m);
  }
  return 0;
}

Rational mu(Label u, int m, int n) {
  switch (u.kind) {
    case Label::Kind::T:
      return u.index;
    case Label::Kind::H:
      return make_rational(m - 2 * u.index + 1, 2 * m);
    case Label::Kind::HHat:
      return make_rational(n - 2 * u.index + 1, 2 * n);
  }
  return 0;
}

Rational charge(int m) { return 1 - make_rational(1, m); }

Rational gram(Label a, Label b, int m, int n) {
  if (a.kind != b.kind) return 0;
  switch (a.kind) {
    case Label::Kind::T:
      return a.index + b.index == 0 ? make_rational(-1, 2) : Rational(0);
    case Label::Kind::H:
      return a.index + b.index == m + 1 ? make_rational(1, 2 * m) : Rational(0);
    case Label::Kind::HHat:
      return a.index + b.index == n + 1 ? make_rational(1, 2 * n) : Rational(0);
  }
  return 0;
}

Label w_label(int alpha, int m, int n) {
  if (alpha < 1 || alpha > m + n) throw ConfigError("w index out of range");
  return alpha <= m ? Label::h(m + 1 - alpha) : Label::hhat(m + n + 1 - alpha);
}

int w_index(Label u, int m, int n) {
  if (u.kind == Label::Kind::H) return m + 1 - u.index;
  if (u.kind == Label::Kind::HHat) return m + n + 1 - u.index;
  throw ConfigError("t-labels have no w index");
}

}  // namespace frobkp
