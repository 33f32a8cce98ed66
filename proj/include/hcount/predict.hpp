#pragma once

#include <map>
#include <vector>

#include "hcount/numfield.hpp"

namespace hcount {

// L_q(x) = sum_{i=0}^{q} binom(q,i)(-x)^i/i!
double laguerre_eval(int q, double x);

// Truncated coefficients of the counting series for degree-e points over k:
// D_i = sum over the field list of B_K^n binom(q_K, i)/i!, with
// B_K = 2^{r_K}(2 pi)^{s_K}/sqrt|disc K| and q_K = r_K + s_K - 1.
struct SeriesCoefficients {
  int e = 1, m = 1, n = 1;
  int q_k = 0;
  int t = 0;  // e(q_k + 1) - 1; D_i vanishes above it
  std::vector<double> D;     // i = 0..t
  std::vector<double> beta;  // beta[q] = sum of B_K^n over fields with q_K = q
  BigInt max_disc = 0;       // largest |disc| included
  // contribution to each D_i from the top dyadic block |disc| in (max/2, max]
  std::vector<double> last_increment;
};

// Accumulates the partial sums over the given degree-e extensions of k.
// Every field must satisfy [K:Q] = e m and q_K <= t.
SeriesCoefficients build_series(const NumberField& k, int e, int n,
                                const std::vector<NumberField>& fields);

// sum_{i=0}^{t} D_i X^{men} (log X^{men})^i
double main_term_series(const SeriesCoefficients& s, double X);
// the same value as the weighted Laguerre sum
// X^{men} sum_q beta_q L_q(-log X^{men})
double main_term_series_laguerre(const SeriesCoefficients& s, double X);

// 2^{s_K n} vol_SI(X^d) / (sqrt|disc K| [O_K : O])^n, d = [K:Q]
double main_term_region(const NumberField& K, const Submodule& O, int n,
                      const std::vector<int>& I, double X);

// 2^{s_K n} vol_Z(X^d) / (sqrt|disc K| [O_K : O])^n; equals the sum of
// main_term_region over all subsets I (the empty set contributing a constant)
double main_term_ball(const NumberField& K, const Submodule& O, int n,
                      double X);

// sum_{g in G(K/k)} X^{dn-1} (log+ X)^{q'} / (eta^{dn-1} delta_g^{mu_g}),
// mu_g = mn(e-g) - 1, q' = |I| - 1.  The leading constant is taken as 1;
// only the shape is asserted.  Throws when a delta bound is missing for
// some g.
double error_budget(const ExtensionContext& ctx, const Submodule& O, int n,
                    const std::vector<int>& I, double X,
                    const std::map<int, double>& delta_bounds);

struct GCondition {
  int g = 1;
  Rat gamma, mu;       // gamma_g = m(g^2+g+e^2/g+e), mu_g = mn(e-g)-1
  bool ineq_gap;       // gamma_g - mu_g <= -2/e
  bool ineq_growth;    // m(g^2+gn+e^2/g+e) <= men-1
  bool ineq_tail;      // (e+2)/4 - n/2 <= -C_{e,m}/2
};

struct ConditionReport {
  int e = 1, m = 1, n = 1;
  Rat C_em;             // max{2+4/(e-1)+1/(m(e-1)), 7-e/2+2/(me)}; 0 for e=1
  bool verdict = true;  // e = 1 or n > e + C_{e,m}
  std::vector<GCondition> per_g;  // g = 1..floor(e/2)
  bool all_hold = true;
};

// Exact rational evaluation of the degree/dimension conditions.  When the
// verdict holds, every per-g inequality holds as well.
ConditionReport condition_check(int e, int m, int n);

// 2^{me(e+n+3)+e^2+n^2+10e+10n} X^{me(n+e)}
double schmidt_bound(int m, int e, int n, double X);

struct PrincipalPart {
  int t = 0;
  std::vector<double> a;  // a[j-1] multiplies (s - men)^{-j}, j = 1..t+1
};

// a_j = (men)^j (j-1)! (D_{j-1} + j D_j) with D_{t+1} = 0; exactly the
// principal part of sum_i D_i s (men)^i i! / (s-men)^{i+1}, the Mellin
// transform of the main term.
PrincipalPart zeta_principal_part(const SeriesCoefficients& s);

}  // namespace hcount
