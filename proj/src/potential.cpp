#include "frobkp/potential.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "frobkp/errors.hpp"
#include "frobkp/manifold.hpp"

namespace frobkp {

namespace {

// -(res_inf + res_0) of x / den
Poly both_residues(const PolySeries& x, const PolySeries& den) {
  return detail::quotient_coeff(x, den, Where::Infinity) - detail::quotient_coeff(x, den, Where::Zero);
}

int table_index(int vars, int a, int b, int c) {
  std::array<int, 3> t{a, b, c};
  std::sort(t.begin(), t.end());
  return ((t[0] - 1) * vars + (t[1] - 1)) * vars + (t[2] - 1);
}

Monomial var_monomial(int alpha) {
  Monomial m;
  m.e[alpha - 1] = 1;
  return m;
}

Poly third_derivative(const Poly& f, int a, int b, int c) {
  return f.derivative(a - 1).derivative(b - 1).derivative(c - 1);
}

Poly parse_reference(const std::vector<std::pair<Rational, std::vector<int>>>& terms) {
  std::vector<Poly::Term> out;
  for (const auto& [c, e] : terms) {
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) m.e[i] = static_cast<int16_t>(e[i]);
    out.emplace_back(m, c);
  }
  return Poly::from_terms(std::move(out));
}

}  // namespace

PolySeries symbolic_superpotential(int m, int n) {
  if (m < 1 || n < 1 || m + n > kMaxVars) throw ConfigError("(m, n) out of range for the symbolic potential");
  std::vector<Poly> h(m), hhat(n);
  for (int j = 1; j <= m; ++j) h[j - 1] = Poly::var(w_index(Label::h(j), m, n) - 1);
  for (int k = 1; k <= n; ++k) hhat[k - 1] = Poly::var(w_index(Label::hhat(k), m, n) - 1);
  return superpotential_from_flat(m, n, h, hhat, m + n + 2);
}

PolySeries dl_dw(const PolySeries& l, int alpha) {
  std::vector<std::pair<int, Poly>> t;
  l.for_each([&](int e, const Poly& c) { t.emplace_back(e, c.derivative(alpha - 1)); });
  return PolySeries::from_terms(t, l.parity());
}

Poly c_uvw(const PolySeries& l, int a, int b, int c) {
  return both_residues(dl_dw(l, a) * dl_dw(l, b) * dl_dw(l, c), l.derivative());
}

Poly c_uvw(int m, int n, Label u, Label v, Label s) {
  return c_uvw(symbolic_superpotential(m, n), w_index(u, m, n), w_index(v, m, n), w_index(s, m, n));
}

std::vector<Poly> c_table(int m, int n) {
  const int N = m + n;
  const PolySeries l = symbolic_superpotential(m, n);
  const PolySeries lp = l.derivative();
  std::vector<PolySeries> dl;
  for (int a = 1; a <= N; ++a) dl.push_back(dl_dw(l, a));
  std::vector<Poly> table(static_cast<std::size_t>(N * N * N));
  for (int a = 1; a <= N; ++a)
    for (int b = a; b <= N; ++b) {
      const PolySeries ab = dl[a - 1] * dl[b - 1];
      for (int c = b; c <= N; ++c) table[table_index(N, a, b, c)] = both_residues(ab * dl[c - 1], lp);
    }
  return table;
}

Poly integrate_third_derivatives(int vars, const std::vector<Poly>& table, const std::vector<int>& order) {
  std::map<Monomial, Rational> found;
  for (std::size_t x = 0; x < order.size(); ++x)
    for (std::size_t y = x; y < order.size(); ++y)
      for (std::size_t z = y; z < order.size(); ++z) {
        const int a = order[x], b = order[y], c = order[z];
        const Monomial lift = var_monomial(a) + var_monomial(b) + var_monomial(c);
        for (const auto& [mono, coef] : table[table_index(vars, a, b, c)].terms()) {
          const Monomial full = mono + lift;
          // d^3/dw^a dw^b dw^c of w^full = factor * w^mono
          Monomial e = full;
          Rational factor = 1;
          for (int v : {a, b, c}) {
            factor *= e.e[v - 1];
            e.e[v - 1] = static_cast<int16_t>(e.e[v - 1] - 1);
          }
          if (factor == 0)
            throw IntegrationObstruction("term " + monomial_str(mono) + " of C has a logarithmic primitive");
          const Rational value = coef / factor;
          auto [it, inserted] = found.emplace(full, value);
          if (!inserted && it->second != value)
            throw IntegrationObstruction("inconsistent coefficient of " + monomial_str(full));
        }
      }
  std::vector<Poly::Term> terms(found.begin(), found.end());
  Poly F = Poly::from_terms(std::move(terms));
  for (int a = 1; a <= vars; ++a)
    for (int b = a; b <= vars; ++b)
      for (int c = b; c <= vars; ++c)
        if (third_derivative(F, a, b, c) != table[table_index(vars, a, b, c)])
          throw IntegrationObstruction("third derivatives of the primitive differ from C at (" + std::to_string(a) +
                                       "," + std::to_string(b) + "," + std::to_string(c) + ")");
  return F;
}

Poly build_F(int m, int n) {
  std::vector<int> order(static_cast<std::size_t>(m + n));
  std::iota(order.begin(), order.end(), 1);
  return integrate_third_derivatives(m + n, c_table(m, n), order);
}

std::vector<Rational> w_degrees(int m, int n) {
  std::vector<Rational> d;
  for (int a = 1; a <= m + n; ++a) d.push_back(degree(w_label(a, m, n), m, n));
  return d;
}

CheckReport check_quasi_homogeneity(const Poly& F, int m, int n) {
  const auto deg = w_degrees(m, n);
  const Rational target = 3 - charge(m);
  Poly lie;
  for (int a = 1; a <= m + n; ++a) lie += (Poly::var(a - 1) * F.derivative(a - 1)).scaled(deg[a - 1]);
  CheckReport r;
  for (const auto& [mono, c] : F.terms()) {
    Rational d = 0;
    for (int a = 1; a <= m + n; ++a) d += deg[a - 1] * mono.e[a - 1];
    if (d != target) {
      r.pass = false;
      r.witness = monomial_str(mono) + " has degree " + d.get_str();
      return r;
    }
  }
  if (lie != F.scaled(target)) {
    r.pass = false;
    r.witness = "Lie_E F - (3 - d) F = " + (lie - F.scaled(target)).str();
  }
  return r;
}

CheckReport wdvv_check(const Poly& F, int m, int n) {
  const int N = m + n;
  // inverse Gram matrix of the w-block: every row has one entry
  std::vector<std::vector<Rational>> eta_inv(N, std::vector<Rational>(N, 0));
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) {
      const Rational g = gram(w_label(a, m, n), w_label(b, m, n), m, n);
      if (g != 0) eta_inv[b - 1][a - 1] = 1 / g;
    }
  std::vector<Poly> c(static_cast<std::size_t>(N * N * N));
  for (int a = 1; a <= N; ++a)
    for (int b = a; b <= N; ++b)
      for (int s = b; s <= N; ++s) c[table_index(N, a, b, s)] = third_derivative(F, a, b, s);
  // up[(e, a, b)] = c^e_{ab}
  auto up = [&](int e, int a, int b) {
    Poly out;
    for (int d = 1; d <= N; ++d)
      if (eta_inv[e - 1][d - 1] != 0) out += c[table_index(N, d, a, b)].scaled(eta_inv[e - 1][d - 1]);
    return out;
  };
  std::vector<Poly> cu(static_cast<std::size_t>(N * N * N));
  for (int e = 1; e <= N; ++e)
    for (int a = 1; a <= N; ++a)
      for (int b = 1; b <= N; ++b) cu[((e - 1) * N + (a - 1)) * N + (b - 1)] = up(e, a, b);
  auto C = [&](int e, int a, int b) -> const Poly& { return cu[((e - 1) * N + (a - 1)) * N + (b - 1)]; };

  CheckReport r;
  for (int a = 1; a <= N && r.pass; ++a)
    for (int b = 1; b <= N && r.pass; ++b) {
      const Poly expected = a == b ? Poly(1) : Poly();
      if (C(b, 1, a) != expected) {
        r.pass = false;
        r.witness = "unity: c^" + std::to_string(b) + "_{1," + std::to_string(a) + "} = " + C(b, 1, a).str();
      }
    }
  for (int a = 1; a <= N && r.pass; ++a)
    for (int b = 1; b <= N && r.pass; ++b)
      for (int g = b + 1; g <= N && r.pass; ++g)
        for (int s = 1; s <= N && r.pass; ++s) {
          Poly lhs, rhs;
          for (int e = 1; e <= N; ++e) {
            lhs += C(e, a, b) * C(s, e, g);
            rhs += C(e, a, g) * C(s, e, b);
          }
          if (lhs != rhs) {
            r.pass = false;
            r.witness = "associativity (a,b,g,s) = (" + std::to_string(a) + "," + std::to_string(b) + "," +
                        std::to_string(g) + "," + std::to_string(s) + ")";
          }
        }
  return r;
}

Poly appendix_dC(const PolySeries& l, int s, int u, int v, int w) {
  const PolySeries lp = l.derivative();
  const PolySeries du = dl_dw(l, u), dv = dl_dw(l, v), dw = dl_dw(l, w), ds = dl_dw(l, s);
  const PolySeries first = dl_dw(ds, u) * dv * dw + dl_dw(ds, v) * dw * du + dl_dw(ds, w) * du * dv;
  return both_residues(first, lp) - both_residues(du * dv * dw * ds.derivative(), lp * lp);
}

CheckReport appendix_symmetry(int m, int n, Label s, Label u, Label v, Label w) {
  const PolySeries l = symbolic_superpotential(m, n);
  std::array<int, 4> idx{w_index(s, m, n), w_index(u, m, n), w_index(v, m, n), w_index(w, m, n)};
  const Poly base = appendix_dC(l, idx[0], idx[1], idx[2], idx[3]);
  CheckReport r;
  std::array<int, 4> p = idx;
  std::sort(p.begin(), p.end());
  do {
    if (appendix_dC(l, p[0], p[1], p[2], p[3]) != base) {
      r.pass = false;
      r.witness = "permutation (" + std::to_string(p[0]) + "," + std::to_string(p[1]) + "," +
                  std::to_string(p[2]) + "," + std::to_string(p[3]) + ")";
      return r;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  const Poly fourth = third_derivative(build_F(m, n), idx[1], idx[2], idx[3]).derivative(idx[0] - 1);
  if (fourth != base) {
    r.pass = false;
    r.witness = "fourth derivative of F differs: " + (fourth - base).str();
  }
  return r;
}

std::optional<Poly> reference_potential(int m, int n) {
  const auto q = [](long a, long b) { return make_rational(a, b); };
  if (m == 1 && n == 1)
    return parse_reference({{q(1, 12), {3, 0}}, {q(1, 4), {1, 2}}});
  if (m == 2 && n == 1)
    return parse_reference({{q(1, 8), {2, 1, 0}}, {q(1, 4), {1, 0, 2}}, {q(1, 3840), {0, 5, 0}},
                            {q(1, 32), {0, 2, 2}}});
  if (m == 3 && n == 1)
    return parse_reference({{q(1, 12), {2, 0, 1, 0}},
                            {q(1, 12), {1, 2, 0, 0}},
                            {q(1, 4), {1, 0, 0, 2}},
                            {q(1, 1296), {0, 2, 3, 0}},
                            {q(-1, 216), {0, 3, 1, 0}},
                            {q(1, 1632960), {0, 0, 7, 0}},
                            {q(1, 24), {0, 1, 1, 2}},
                            {q(1, 432), {0, 0, 3, 2}}});
  if (m == 1 && n == 2)
    return parse_reference({{q(1, 12), {3, 0, 0}}, {q(1, 4), {1, 1, 1}}, {q(1, 768), {0, 0, 4}},
                            {q(1, 6), {0, 3, -1}}});
  if (m == 2 && n == 2)
    return parse_reference({{q(1, 8), {2, 1, 0, 0}},
                            {q(1, 4), {1, 0, 1, 1}},
                            {q(1, 3840), {0, 5, 0, 0}},
                            {q(1, 32), {0, 2, 1, 1}},
                            {q(1, 768), {0, 1, 0, 4}},
                            {q(1, 6), {0, 0, 3, -1}}});
  if (m == 1 && n == 3)
    return parse_reference({{q(1, 12), {3, 0, 0, 0}},
                            {q(1, 6), {1, 1, 0, 1}},
                            {q(1, 12), {1, 0, 2, 0}},
                            {q(1, 648), {0, 0, 1, 3}},
                            {q(1, 2), {0, 2, 1, -1}},
                            {q(-1, 3), {0, 1, 3, -2}},
                            {q(1, 10), {0, 0, 5, -3}}});
  return std::nullopt;
}

std::string poly_text(const Poly& p) {
  if (p.is_zero()) return "0\n";
  std::string out;
  for (const auto& [mono, c] : p.terms()) out += c.get_str() + " " + monomial_str(mono) + "\n";
  return out;
}

}  // namespace frobkp
