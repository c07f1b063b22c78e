#include "frobkp/exact_scalar.hpp"

#include <cmath>
#include <sstream>

#include "frobkp/errors.hpp"

namespace frobkp {

std::shared_ptr<const RadicalField> make_radical_field(unsigned degree, const Rational& radicand) {
  auto f = std::make_shared<RadicalField>();
  f->degree = degree;
  f->radicand = radicand;
  return f;
}

ExactScalar ExactScalar::generator(std::shared_ptr<const RadicalField> field) {
  std::vector<Rational> c(field->degree);
  if (field->degree == 1) {
    c[0] = field->radicand;
  } else {
    c[1] = 1;
  }
  return from_coordinates(std::move(field), std::move(c));
}

ExactScalar ExactScalar::from_coordinates(std::shared_ptr<const RadicalField> field,
                                          std::vector<Rational> coords) {
  ExactScalar x;
  coords.resize(field->degree);
  x.r_ = coords[0];
  x.tail_.assign(coords.begin() + 1, coords.end());
  x.field_ = std::move(field);
  x.normalize();
  return x;
}

const Rational& ExactScalar::rational() const {
  if (!tail_.empty()) throw FieldMismatch("scalar " + str() + " is not rational");
  return r_;
}

std::vector<Rational> ExactScalar::coordinates() const {
  std::vector<Rational> c{r_};
  c.insert(c.end(), tail_.begin(), tail_.end());
  return c;
}

void ExactScalar::normalize() {
  while (!tail_.empty() && tail_.back() == 0) tail_.pop_back();
  if (tail_.empty()) field_.reset();
}

std::shared_ptr<const RadicalField> ExactScalar::common_field(const ExactScalar& a,
                                                              const ExactScalar& b) {
  if (!a.field_) return b.field_;
  if (!b.field_ || a.field_ == b.field_) return a.field_;
  if (a.field_->degree == b.field_->degree && a.field_->radicand == b.field_->radicand)
    return a.field_;
  throw FieldMismatch("scalars from different radical fields");
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  if (o.tail_.empty()) {
    r_ += o.r_;
    return *this;
  }
  field_ = common_field(*this, o);
  r_ += o.r_;
  if (tail_.size() < o.tail_.size()) tail_.resize(o.tail_.size());
  for (std::size_t i = 0; i < o.tail_.size(); ++i) tail_[i] += o.tail_[i];
  normalize();
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) { return *this += -o; }

ExactScalar ExactScalar::operator-() const {
  ExactScalar x = *this;
  x.r_ = -x.r_;
  for (auto& t : x.tail_) t = -t;
  return x;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  if (o.tail_.empty()) {
    r_ *= o.r_;
    for (auto& t : tail_) t *= o.r_;
    normalize();
    return *this;
  }
  if (tail_.empty()) {
    Rational s = r_;
    *this = o;
    return *this *= ExactScalar(s);
  }
  auto field = common_field(*this, o);
  const unsigned d = field->degree;
  auto a = coordinates();
  auto b = o.coordinates();
  a.resize(d);
  b.resize(d);
  std::vector<Rational> prod(2 * d);
  for (unsigned i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];
  }
  for (unsigned k = 2 * d - 1; k >= d; --k) prod[k - d] += prod[k] * field->radicand;
  prod.resize(d);
  *this = from_coordinates(field, std::move(prod));
  return *this;
}

bool operator==(const ExactScalar& a, const ExactScalar& b) {
  if (a.r_ != b.r_ || a.tail_.size() != b.tail_.size()) return false;
  for (std::size_t i = 0; i < a.tail_.size(); ++i)
    if (a.tail_[i] != b.tail_[i]) return false;
  if (!a.tail_.empty()) ExactScalar::common_field(a, b);
  return true;
}

ExactScalar ExactScalar::scaled(const Rational& q) const {
  ExactScalar x = *this;
  x *= ExactScalar(q);
  return x;
}

std::optional<ExactScalar> ExactScalar::inverse() const {
  if (tail_.empty()) {
    if (r_ == 0) return std::nullopt;
    return ExactScalar(Rational(1) / r_);
  }
  // Solve x * y = 1 with the multiplication matrix of x.
  const unsigned d = field_->degree;
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1));
  ExactScalar basis = 1;
  ExactScalar rho = generator(field_);
  for (unsigned j = 0; j < d; ++j) {
    auto col = (*this * basis).coordinates();
    col.resize(d);
    for (unsigned i = 0; i < d; ++i) m[i][j] = col[i];
    basis *= rho;
  }
  m[0][d] = 1;
  for (unsigned c = 0; c < d; ++c) {
    unsigned piv = c;
    while (piv < d && m[piv][c] == 0) ++piv;
    if (piv == d) return std::nullopt;
    std::swap(m[piv], m[c]);
    for (unsigned r = 0; r < d; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (unsigned k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<Rational> y(d);
  for (unsigned i = 0; i < d; ++i) y[i] = m[i][d] / m[i][i];
  return from_coordinates(field_, std::move(y));
}

double ExactScalar::approx() const {
  double v = r_.get_d();
  if (tail_.empty()) return v;
  const double rho = std::pow(field_->radicand.get_d(), 1.0 / field_->degree);
  double p = rho;
  for (const auto& t : tail_) {
    v += t.get_d() * p;
    p *= rho;
  }
  return v;
}

std::string ExactScalar::str() const {
  if (tail_.empty()) return r_.get_str();
  std::ostringstream os;
  os << r_.get_str();
  for (std::size_t i = 0; i < tail_.size(); ++i) {
    if (tail_[i] == 0) continue;
    os << " + (" << tail_[i].get_str() << ")*rho^" << (i + 1);
  }
  os << " [rho^" << field_->degree << "=" << field_->radicand.get_str() << "]";
  return os.str();
}

}  // namespace frobkp
