#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frobkp/labels.hpp"
#include "frobkp/poly.hpp"
#include "frobkp/series.hpp"

namespace frobkp {

using PolySeries = LaurentSeries<Poly>;

struct CheckReport {
  bool pass = true;
  std::string witness;  // first offending item when pass is false
};

// l(z) with coefficients in the flat coordinates w^1..w^{m+n} (Poly variable alpha-1),
// w^a = h^{m+1-a} for a <= m and w^a = hhat^{m+n+1-a} otherwise.
PolySeries symbolic_superpotential(int m, int n);

// dl/dw^alpha, coefficientwise.
PolySeries dl_dw(const PolySeries& l, int alpha);

// -(res_inf + res_0) of d_a l d_b l d_c l / l'  (alpha indices are 1-based).
Poly c_uvw(const PolySeries& l, int a, int b, int c);
Poly c_uvw(int m, int n, Label u, Label v, Label s);

// All C_{abc} with a <= b <= c, indexed by ((a-1) N + (b-1)) N + (c-1), N = m+n.
std::vector<Poly> c_table(int m, int n);

// F with d^3 F / dw^a dw^b dw^c = c(a,b,c) for every a <= b <= c; the part annihilated by
// third derivatives (quadratic and lower polynomials) is zero. `order` lists the variables in
// the order in which triples are visited. Throws IntegrationObstruction.
Poly integrate_third_derivatives(int vars, const std::vector<Poly>& table, const std::vector<int>& order);
Poly build_F(int m, int n);

// deg w^alpha from the Euler field of the finite manifold.
std::vector<Rational> w_degrees(int m, int n);
// sum_a deg(w^a) w^a dF/dw^a = (3 - d_m) F, monomial by monomial.
CheckReport check_quasi_homogeneity(const Poly& F, int m, int n);
// Associativity of c^e_{ab} c^s_{ec} with the index raised by the Gram matrix of the w-block,
// and c^b_{1a} = delta^b_a.
CheckReport wdvv_check(const Poly& F, int m, int n);

// d_s C_{uvw} from the cyclic second-derivative term plus the l'' correction.
Poly appendix_dC(const PolySeries& l, int s, int u, int v, int w);
// S4 symmetry of appendix_dC and agreement with the fourth derivative of build_F.
CheckReport appendix_symmetry(int m, int n, Label s, Label u, Label v, Label w);

// The six potentials listed for (1,1), (2,1), (3,1), (1,2), (2,2), (1,3).
std::optional<Poly> reference_potential(int m, int n);

// Canonical text form: one "coefficient monomial" term per line, sorted.
std::string poly_text(const Poly& p);

}  // namespace frobkp
