#include "frobkp/submanifold.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>

namespace frobkp {

namespace {

using cd = std::complex<double>;
using CSeries = LaurentSeries<cd>;
using DSeries = LaurentSeries<double>;

double eval_d(const Poly& p, const std::vector<double>& w) {
  double out = 0;
  for (const auto& [mono, c] : p.terms()) {
    double t = c.get_d();
    for (std::size_t i = 0; i < w.size(); ++i)
      if (mono.e[i] != 0) t *= std::pow(w[i], mono.e[i]);
    out += t;
  }
  return out;
}

DSeries eval_series(const PolySeries& s, const std::vector<double>& w) {
  return s.mapped<double>([&](const Poly& c) { return eval_d(c, w); });
}

CSeries complexify(const DSeries& s) {
  return s.mapped<cd>([](double c) { return cd(c, 0.0); });
}

template <class T>
cd eval_at(const LaurentSeries<T>& s, cd z) {
  cd out = 0;
  s.for_each([&](int e, const T& c) { out += cd(c) * std::pow(z, e); });
  return out;
}

Rational rpow(const Rational& x, int k) {
  Rational out = 1;
  for (int i = 0; i < std::abs(k); ++i) out *= x;
  return k < 0 ? Rational(1 / out) : out;
}

double rel_err(cd got, cd want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// representative of {z, -z}: positive real part, or positive imaginary part on the imaginary axis
cd representative(cd z) {
  const bool on_axis = std::fabs(z.real()) <= 1e-12 * std::abs(z);
  const bool positive = on_axis ? z.imag() > 0 : z.real() > 0;
  return positive ? z : -z;
}

bool lex_less(cd a, cd b) {
  if (std::fabs(a.real() - b.real()) > 1e-12 * std::max(1.0, std::abs(a))) return a.real() < b.real();
  return a.imag() < b.imag();
}

// zeros of z^(2n+1) l'(z), polished by Newton steps
std::vector<cd> critical_points(int m, int n, const DSeries& l) {
  const int N = 2 * m + 2 * n;
  std::vector<double> p(N + 1, 0.0);  // p[k] coefficient of z^k
  l.for_each([&](int e, double c) {
    if (e != 0) p[e + 2 * n] = e * c;
  });
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(N, N);
  for (int i = 1; i < N; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < N; ++i) comp(i, N - 1) = -p[i] / p[N];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<cd> roots;
  for (int i = 0; i < N; ++i) {
    cd z = es.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      cd f = 0, df = 0;
      for (int k = N; k >= 0; --k) {
        df = df * z + f;
        f = f * z + p[k];
      }
      if (df == cd(0)) break;
      z -= f / df;
    }
    roots.push_back(z);
  }
  return roots;
}

struct FlatData {
  std::vector<DSeries> dl;  // dl/dw^alpha
  std::vector<double> w;
  std::vector<double> degrees;
};

CanonicalReport canonical_core(int m, int n, const DSeries& l, const std::optional<FlatData>& flat, double tol,
                               double sep_tol) {
  const int N = m + n;
  const auto roots = critical_points(m, n, l);
  for (std::size_t a = 0; a < roots.size(); ++a)
    for (std::size_t b = a + 1; b < roots.size(); ++b)
      if (std::abs(roots[a] - roots[b]) < sep_tol * std::max(1.0, std::abs(roots[a])))
        throw RepeatedCriticalValue("l' has a repeated zero near " + Coeff<cd>::str(roots[a]));

  std::vector<cd> reps;
  for (cd r : roots) {
    const cd rep = representative(r);
    const bool seen = std::any_of(reps.begin(), reps.end(), [&](cd x) {
      return std::abs(x - rep) < sep_tol * std::max(1.0, std::abs(rep));
    });
    if (!seen) reps.push_back(rep);
  }
  if (static_cast<int>(reps.size()) != N)
    throw RepeatedCriticalValue("zeros of l' do not split into " + std::to_string(N) + " pairs +-z_i");
  std::sort(reps.begin(), reps.end(), lex_less);

  CanonicalReport r;
  const DSeries l2 = l.derivative().derivative();
  for (cd z : reps) r.values.push_back({eval_at(l, z), z, eval_at(l2, z)});

  // d/du_i as the even variation of l with value delta_ij at +-z_j
  Eigen::MatrixXcd V(N, N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) V(j, k) = std::pow(reps[j], 2 * (k - n));
  const Eigen::MatrixXcd D = V.partialPivLu().solve(Eigen::MatrixXcd::Identity(N, N));
  std::vector<CSeries> d(N);
  for (int i = 0; i < N; ++i) {
    std::vector<std::pair<int, cd>> t;
    for (int k = 0; k < N; ++k) t.emplace_back(2 * (k - n), D(k, i));
    d[i] = CSeries::from_terms(t, Parity::Even);
  }

  const CSeries lc = complexify(l);
  auto note = [&](double& slot, double err, const std::string& what) {
    if (err > slot) slot = err;
    if (err > tol && r.witness.empty()) r.witness = what + " off by " + std::to_string(err);
  };
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const cd g = metric_fin(lc, d[i], d[j]);
      cd direct = 0;
      for (cd z : roots) direct += eval_at(d[i], z) * eval_at(d[j], z) / eval_at(l2, z);
      note(r.residue_err, rel_err(g, direct), "residue sum for (" + std::to_string(i) + "," + std::to_string(j) + ")");
      const cd want = i == j ? 2.0 / r.values[i].l2 : cd(0);
      note(r.metric_err, rel_err(g, want), "metric entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
      for (int k = 0; k < N; ++k) {
        const cd c = c_fin(lc, d[i], d[j], d[k]);
        const cd cw = (i == j && j == k) ? want : cd(0);
        note(r.idempotent_err, rel_err(c, cw),
             "c(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
      }
    }

  CSeries sum(Parity::Even);
  for (const auto& x : d) sum = sum + x;
  const CSeries e = flat ? complexify(flat->dl[0]) : CSeries::constant(cd(1));
  for (int k = -2 * n; k <= 2 * m - 2; k += 2) note(r.unity_err, rel_err(sum.coeff(k), e.coeff(k)), "sum of d/du_i");

  if (flat) {
    for (int i = 0; i < N; ++i) {
      cd Eu = 0;
      for (int a = 0; a < N; ++a) Eu += flat->degrees[a] * flat->w[a] * eval_at(flat->dl[a], reps[i]);
      note(r.euler_err, rel_err(Eu, r.values[i].u), "E(u_" + std::to_string(i) + ")");
    }
  }
  r.pass = r.witness.empty();
  return r;
}

// distinct rational roots of a polynomial with rational coefficients (p[k] coefficient of x^k)
std::vector<Rational> rational_roots(std::vector<Rational> p) {
  mpz_class lcm = 1;
  for (const auto& c : p) lcm = lcm * c.get_den() / gcd(lcm, c.get_den());
  std::vector<mpz_class> a;
  for (const auto& c : p) a.push_back(mpz_class(c * lcm));
  while (!a.empty() && a.back() == 0) a.pop_back();
  std::vector<Rational> out;
  std::size_t low = 0;
  while (low < a.size() && a[low] == 0) ++low;
  for (std::size_t i = 0; i < low; ++i) out.push_back(0);
  a.erase(a.begin(), a.begin() + static_cast<long>(low));
  if (a.size() <= 1) return out;
  auto divisors = [](mpz_class v) {
    v = abs(v);
    std::vector<mpz_class> ds;
    for (mpz_class d = 1; d * d <= v; ++d)
      if (v % d == 0) {
        ds.push_back(d);
        if (d * d != v) ds.push_back(v / d);
      }
    return ds;
  };
  auto value = [&](const Rational& x) {
    Rational s = 0;
    for (std::size_t k = a.size(); k-- > 0;) s = s * x + Rational(a[k]);
    return s;
  };
  for (const auto& num : divisors(a.front()))
    for (const auto& den : divisors(a.back()))
      for (int sign : {1, -1}) {
        Rational x(num * sign, den);
        x.canonicalize();
        if (std::find(out.begin(), out.end(), x) != out.end()) continue;
        if (value(x) == 0) out.push_back(x);
      }
  return out;
}

}  // namespace

// ------------------------------------------------------------------ points

LPoint lpoint(int m, int n, const ExactLSeries& l, std::optional<Rational> rho) {
  if (m < 1 || n < 1) throw ConfigError("m and n must be positive");
  if (!l.is_finite() || l.top_bound() != 2 * m || !(l.coeff(2 * m) == ExactScalar(1)))
    throw BadLeadingTerm("l must be z^2m plus lower powers");
  if (l.bottom_bound() < -2 * n) throw BadSupport("l has a pole of order above 2n at zero");
  l.for_each([](int e, const ExactScalar& c) {
    if (e % 2 != 0) throw BadSupport("l must be even");
    if (!c.is_rational()) throw BadSupport("l must have rational coefficients");
  });
  const ExactScalar bottom = l.coeff(-2 * n);
  if (bottom.is_zero()) throw ZeroBottomCoefficient("l vanishes at z^-2n");
  if (!rho) {
    rho = exact_root(bottom.rational(), 2 * n);
    if (!rho) throw RootMismatch("the z^-2n coefficient of l has no rational 2n-th root");
  } else if (!(ExactScalar(rpow(*rho, 2 * n)) == bottom)) {
    throw RootMismatch("rho^2n differs from the z^-2n coefficient of l");
  }
  const int depth = m + n + 2;
  const auto chi = fractional_power_at_infinity(l, make_rational(1, 2 * m), ExactScalar(1), depth);
  const auto chi_hat = fractional_power_at_zero(l, make_rational(1, 2 * n), ExactScalar(*rho), depth);
  LPoint lp{m, n, l, std::vector<Rational>(m + n)};
  for (int j = 1; j <= m; ++j) {
    const auto r = residue(power(chi, 2 * j - 1, Where::Infinity, depth), ResidueAt::Infinity);
    lp.w[w_index(Label::h(j), m, n) - 1] = r.scaled(make_rational(-2 * m, 2 * j - 1)).rational();
  }
  for (int k = 1; k <= n; ++k) {
    const auto r = residue(power(chi_hat, 2 * k - 1, Where::Zero, depth), ResidueAt::Zero);
    lp.w[w_index(Label::hhat(k), m, n) - 1] = r.scaled(make_rational(2 * n, 2 * k - 1)).rational();
  }
  return lp;
}

LPoint lpoint_from_flat(int m, int n, const std::vector<Rational>& w) {
  if (static_cast<int>(w.size()) != m + n) throw ConfigError("need m+n flat coordinates");
  if (w[m + n - 1] == 0) throw ZeroBottomCoefficient("w^{m+n} must be nonzero");
  const auto l = symbolic_superpotential(m, n).mapped<ExactScalar>([&](const Poly& c) { return ExactScalar(c.eval(w)); });
  return {m, n, l, w};
}

ExactLSeries flat_vector(const LPoint& lp, int alpha) {
  if (alpha < 1 || alpha > lp.m + lp.n) throw ConfigError("alpha out of range");
  return dl_dw(symbolic_superpotential(lp.m, lp.n), alpha).mapped<ExactScalar>([&](const Poly& c) {
    return ExactScalar(c.eval(lp.w));
  });
}

ExactScalar metric_fin(const LPoint& lp, int alpha, int beta) {
  return metric_fin(lp.l, flat_vector(lp, alpha), flat_vector(lp, beta));
}

ExactScalar c_fin(const LPoint& lp, int alpha, int beta, int gamma) {
  return c_fin(lp.l, flat_vector(lp, alpha), flat_vector(lp, beta), flat_vector(lp, gamma));
}

// ------------------------------------------------------------ canonical coordinates

CanonicalReport canonical_fin(int m, int n, const std::vector<double>& w, double tol, double sep_tol) {
  if (static_cast<int>(w.size()) != m + n) throw ConfigError("need m+n flat coordinates");
  const PolySeries ls = symbolic_superpotential(m, n);
  FlatData flat;
  flat.w = w;
  for (int a = 1; a <= m + n; ++a) flat.dl.push_back(eval_series(dl_dw(ls, a), w));
  for (const auto& d : w_degrees(m, n)) flat.degrees.push_back(d.get_d());
  return canonical_core(m, n, eval_series(ls, w), flat, tol, sep_tol);
}

CanonicalReport canonical_fin(const LPoint& lp, double tol, double sep_tol) {
  std::vector<double> w;
  for (const auto& x : lp.w) w.push_back(x.get_d());
  return canonical_fin(lp.m, lp.n, w, tol, sep_tol);
}

CanonicalReport canonical_roots(int m, int n, const LaurentSeries<double>& l, double tol, double sep_tol) {
  if (!l.is_finite() || l.top_bound() != 2 * m || l.coeff(2 * m) != 1.0 || l.bottom_bound() < -2 * n ||
      l.coeff(-2 * n) == 0.0)
    throw BadSupport("l must be z^2m + ... + v z^-2n with v != 0");
  return canonical_core(m, n, l, std::nullopt, tol, sep_tol);
}

std::optional<std::vector<ExactCanonicalValue>> canonical_exact(const LPoint& lp) {
  const int m = lp.m, n = lp.n, N = m + n;
  // with zeta = z^2: z^(2n+2) l'(z) / (2z) = sum (e/2) c_e zeta^(e/2 + n)
  std::vector<Rational> q(N + 1, 0);
  std::map<int, Rational> c;
  lp.l.for_each([&](int e, const ExactScalar& x) { c[e] = x.rational(); });
  for (const auto& [e, x] : c) q[e / 2 + n] = make_rational(e, 2) * x;
  auto roots = rational_roots(q);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  if (static_cast<int>(roots.size()) != N || std::find(roots.begin(), roots.end(), Rational(0)) != roots.end())
    return std::nullopt;

  std::vector<ExactCanonicalValue> out;
  for (int i = 0; i < N; ++i) {
    const Rational s = roots[i];
    Rational u = 0, l2 = 0;
    for (const auto& [e, x] : c) {
      u += x * rpow(s, e / 2);
      if (e != 0 && e != 1) l2 += Rational(e * (e - 1)) * x * rpow(s, e / 2 - 1);
    }
    // zeta^-n times the Lagrange basis polynomial of node i, scaled to take the value 1 there
    std::vector<Rational> basis{1};
    Rational denom = 1;
    for (int j = 0; j < N; ++j) {
      if (j == i) continue;
      std::vector<Rational> next(basis.size() + 1, 0);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= roots[j] * basis[k];
      }
      basis = next;
      denom *= s - roots[j];
    }
    std::vector<std::pair<int, ExactScalar>> t;
    for (std::size_t k = 0; k < basis.size(); ++k)
      t.emplace_back(2 * (static_cast<int>(k) - n), ExactScalar(basis[k] * rpow(s, n) / denom));
    const auto d = ExactLSeries::from_terms(t, Parity::Even);
    const ExactScalar g = metric_fin(lp.l, d, d);
    out.push_back({u, s, l2, g.rational()});
  }
  return out;
}

// ------------------------------------------------------------------ recursion

Poly theta_fin(int m, int n, int alpha, int p) {
  const PolySeries l = symbolic_superpotential(m, n);
  const int depth = std::max(m, n) * (p + 1) + 2;
  const Poly rho = Poly::var(m + n - 1).scaled(make_rational(1, 2 * n));
  const LaxPoint<Poly> pt{m, n, l, l, std::nullopt, rho, depth};
  return theta_density(pt, w_label(alpha, m, n), p);
}

CheckReport theta_recursion_fin(int m, int n, int alpha, int p, const Rational& scale) {
  if (p < 1) throw ConfigError("the recursion starts at p = 1");
  const int N = m + n;
  const PolySeries l = symbolic_superpotential(m, n);
  const Poly top = theta_fin(m, n, alpha, p).scaled(scale);
  const Poly below = theta_fin(m, n, alpha, p - 1);
  // eta^{e nu}: the Gram matrix of the w-block pairs each index with exactly one partner
  std::vector<std::pair<int, Rational>> raise(N + 1);
  for (int e = 1; e <= N; ++e)
    for (int v = 1; v <= N; ++v) {
      const Rational g = gram(w_label(e, m, n), w_label(v, m, n), m, n);
      if (g != 0) raise[e] = {v, 1 / g};
    }
  CheckReport r;
  for (int a = 1; a <= N; ++a)
    for (int b = a; b <= N; ++b) {
      const Poly lhs = top.derivative(a - 1).derivative(b - 1);
      Poly rhs;
      for (int e = 1; e <= N; ++e) {
        const auto [v, inv] = raise[e];
        rhs += (c_uvw(l, v, a, b) * below.derivative(e - 1)).scaled(inv);
      }
      if (lhs != rhs) {
        r.pass = false;
        r.witness = "w" + std::to_string(a) + " w" + std::to_string(b) + ": " + (lhs - rhs).str();
        return r;
      }
    }
  return r;
}

}  // namespace frobkp
