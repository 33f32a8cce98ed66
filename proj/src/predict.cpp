#include "hcount/predict.hpp"

#include <cmath>
#include <stdexcept>

#include "hcount/regions.hpp"

namespace hcount {

double laguerre_eval(int q, double x) {
  if (q < 0) throw std::invalid_argument("laguerre_eval: negative order");
  double sum = 0, binom = 1, fact = 1, pw = 1;
  for (int i = 0; i <= q; ++i) {
    sum += binom / fact * pw;
    binom = binom * (q - i) / (i + 1);
    fact *= i + 1;
    pw *= -x;
  }
  return sum;
}

SeriesCoefficients build_series(const NumberField& k, int e, int n,
                                const std::vector<NumberField>& fields) {
  if (e < 1 || n < 1) throw std::invalid_argument("build_series: e, n >= 1");
  SeriesCoefficients s;
  s.e = e;
  s.m = k.d;
  s.n = n;
  s.q_k = k.r + k.s - 1;
  s.t = e * (s.q_k + 1) - 1;
  s.D.assign(s.t + 1, 0.0);
  s.beta.assign(s.t + 1, 0.0);
  s.last_increment.assign(s.t + 1, 0.0);
  for (const NumberField& K : fields)
    s.max_disc = std::max(s.max_disc, abs_int(K.disc));

  for (const NumberField& K : fields) {
    if (K.d != e * s.m)
      throw std::invalid_argument("build_series: field of wrong degree");
    int q = K.r + K.s - 1;
    if (q > s.t) throw std::logic_error("build_series: q_K exceeds t");
    double B = to_double(K.minkowski_constant(30).mid());
    double Bn = std::pow(B, n);
    s.beta[q] += Bn;
    bool top_block = 2 * abs_int(K.disc) > s.max_disc;
    double fact = 1;
    for (int i = 0; i <= q; ++i) {
      double term = Bn * to_double(binomial(q, i)) / fact;
      s.D[i] += term;
      if (top_block) s.last_increment[i] += term;
      fact *= i + 1;
    }
  }
  return s;
}

double main_term_series(const SeriesCoefficients& s, double X) {
  if (X < 1) throw std::invalid_argument("main_term_series: X >= 1");
  int men = s.m * s.e * s.n;
  double lg = men * std::log(X);
  double sum = 0, pw = std::pow(X, men);
  for (int i = 0; i <= s.t; ++i) {
    sum += s.D[i] * pw;
    pw *= lg;
  }
  return sum;
}

double main_term_series_laguerre(const SeriesCoefficients& s, double X) {
  if (X < 1) throw std::invalid_argument("main_term_series_laguerre: X >= 1");
  int men = s.m * s.e * s.n;
  double lg = men * std::log(X);
  double sum = 0;
  for (int q = 0; q <= s.t; ++q)
    sum += s.beta[q] * laguerre_eval(q, -lg);
  return std::pow(X, men) * sum;
}

namespace {

double lattice_scale(const NumberField& K, const Submodule& O, int n) {
  return std::pow(
      std::sqrt(to_double(abs_int(K.disc))) * to_double(O.index), n);
}

}  // namespace

double main_term_region(const NumberField& K, const Submodule& O, int n,
                      const std::vector<int>& I, double X) {
  if (X < 1) throw std::invalid_argument("main_term_region: X >= 1");
  double T = std::pow(X, K.d);
  return std::pow(2.0, K.s * n) *
         vol_SI(K.r, K.s, n, static_cast<int>(I.size()), T) /
         lattice_scale(K, O, n);
}

double main_term_ball(const NumberField& K, const Submodule& O, int n,
                      double X) {
  if (X < 1) throw std::invalid_argument("main_term_ball: X >= 1");
  double T = std::pow(X, K.d);
  return std::pow(2.0, K.s * n) * vol_Z(K.r, K.s, n, T) /
         lattice_scale(K, O, n);
}

double error_budget(const ExtensionContext& ctx, const Submodule& O,
                         int n, const std::vector<int>& I, double X,
                         const std::map<int, double>& delta_bounds) {
  if (X < 1) throw std::invalid_argument("error_budget: X >= 1");
  int d = ctx.e * ctx.m;
  int qp = static_cast<int>(I.size()) - 1;
  if (qp < 0) throw std::invalid_argument("error_budget: empty I");
  double eta = to_double(O.eta.mid());
  double common = std::pow(X, d * n - 1) *
                  std::pow(std::max(1.0, std::log(X)), qp) /
                  std::pow(eta, d * n - 1);
  double sum = 0;
  for (int g : ctx.subfield_degrees) {
    auto it = delta_bounds.find(g);
    if (it == delta_bounds.end())
      throw std::invalid_argument("error_budget: missing delta bound");
    int mu = ctx.m * n * (ctx.e - g) - 1;
    sum += common / std::pow(it->second, mu);
  }
  return sum;
}

ConditionReport condition_check(int e, int m, int n) {
  if (e < 1 || m < 1 || n < 1)
    throw std::invalid_argument("condition_check: e, m, n >= 1");
  ConditionReport rep;
  rep.e = e;
  rep.m = m;
  rep.n = n;
  if (e == 1) return rep;  // no condition: C undefined, verdict vacuous

  rep.C_em = std::max(Rat(2) + Rat(4, e - 1) + Rat(1, m * (e - 1)),
                      Rat(7) - Rat(e, 2) + Rat(2, m * e));
  rep.verdict = Rat(n) > Rat(e) + rep.C_em;
  for (int g = 1; 2 * g <= e; ++g) {
    GCondition c;
    c.g = g;
    c.gamma = Rat(m) * (Rat(g * g + g + e) + Rat(e * e, g));
    c.mu = Rat(m * n * (e - g) - 1);
    c.ineq_gap = c.gamma - c.mu <= Rat(-2, e);
    c.ineq_growth =
        Rat(m) * (Rat(g * g + g * n + e) + Rat(e * e, g)) <= Rat(m * e * n - 1);
    c.ineq_tail = Rat(e + 2, 4) - Rat(n, 2) <= -rep.C_em / 2;
    rep.all_hold = rep.all_hold && c.ineq_gap && c.ineq_growth && c.ineq_tail;
    rep.per_g.push_back(std::move(c));
  }
  return rep;
}

double schmidt_bound(int m, int e, int n, double X) {
  long exp2 = static_cast<long>(m) * e * (e + n + 3) + static_cast<long>(e) * e +
              static_cast<long>(n) * n + 10L * e + 10L * n;
  return std::pow(2.0, static_cast<double>(exp2)) *
         std::pow(X, static_cast<double>(static_cast<long>(m) * e * (n + e)));
}

PrincipalPart zeta_principal_part(const SeriesCoefficients& s) {
  PrincipalPart pp;
  pp.t = s.t;
  int men = s.m * s.e * s.n;
  double fact = 1;  // (j-1)!
  double pw = 1;    // (men)^j
  for (int j = 1; j <= s.t + 1; ++j) {
    pw *= men;
    double Dj = j <= s.t ? s.D[j] : 0.0;  // D_{t+1} = 0
    pp.a.push_back(pw * fact * (s.D[j - 1] + j * Dj));
    fact *= j;
  }
  return pp;
}

}  // namespace hcount
