#include "hcount/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <json.hpp>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hcount/predict.hpp"
#include "hcount/regions.hpp"

namespace hcount {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

nlohmann::json row_json(const ComparisonRow& r) {
  return {{"X", r.X.str()},
          {"observed", r.observed},
          {"main_term", r.main_term},
          {"residual", r.residual},
          {"normalized_residual", r.normalized_residual},
          {"ratio", r.ratio}};
}

}  // namespace

std::string ComparisonReport::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) j["rows"].push_back(row_json(r));
  j["c_hat"] = c_hat;
  j["trend_to_one"] = trend_to_one;
  return j.dump(2);
}

std::string ComparisonReport::to_csv() const {
  std::ostringstream os;
  os << "X,observed,main_term,residual,normalized_residual,ratio\n";
  for (const auto& r : rows)
    os << r.X.str() << ',' << r.observed << ',' << fmt(r.main_term) << ','
       << fmt(r.residual) << ',' << fmt(r.normalized_residual) << ','
       << fmt(r.ratio) << '\n';
  return os.str();
}

ComparisonReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.X_schedule.empty())
    throw std::invalid_argument("run_experiment: empty X schedule");
  for (std::size_t i = 0; i < cfg.X_schedule.size(); ++i) {
    if (cfg.X_schedule[i] < 1)
      throw std::invalid_argument("run_experiment: X < 1");
    if (i > 0 && cfg.X_schedule[i] <= cfg.X_schedule[i - 1])
      throw std::invalid_argument("run_experiment: schedule not increasing");
  }

  NumberField K = build_field(parse_field_spec(cfg.field_spec));
  Submodule O = cfg.submodule_basis ? submodule(K, *cfg.submodule_basis)
                                    : maximal_order(K);
  for (const auto& I : cfg.I_selection)
    if (I.empty() || !std::is_sorted(I.begin(), I.end()) ||
        I.back() >= K.r + K.s)
      throw std::invalid_argument("run_experiment: bad signature selection");

  int qp = K.r + K.s - 1;  // the error shape of the full-ball count
  if (!cfg.I_selection.empty()) {
    qp = 0;
    for (const auto& I : cfg.I_selection)
      qp = std::max(qp, static_cast<int>(I.size()) - 1);
  }

  ComparisonReport rep;
  for (const Rat& X : cfg.X_schedule) {
    ComparisonRow row;
    row.X = X;
    auto pts = enumerate_heightball(K, O, cfg.n, X, cfg.cap);
    double Xd = to_double(X);
    if (cfg.I_selection.empty()) {
      row.observed = static_cast<long long>(pts.size());
      row.main_term = main_term_ball(K, O, cfg.n, Xd);
    } else {
      for (const auto& p : pts) {
        auto sig = I_signature(K, p.elems);
        if (std::find(cfg.I_selection.begin(), cfg.I_selection.end(), sig) !=
            cfg.I_selection.end())
          ++row.observed;
      }
      for (const auto& I : cfg.I_selection)
        row.main_term += main_term_region(K, O, cfg.n, I, Xd);
    }
    row.residual = row.observed - row.main_term;
    double shape = std::pow(Xd, K.d * cfg.n - 1) *
                   std::pow(std::max(1.0, std::log(Xd)), qp);
    row.normalized_residual = row.residual / shape;
    row.ratio = row.main_term != 0 ? row.observed / row.main_term : 0;
    rep.c_hat = std::max(rep.c_hat, std::abs(row.normalized_residual));
    rep.rows.push_back(std::move(row));
  }

  rep.trend_to_one = rep.rows.size() >= 2;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (std::abs(rep.rows[i].ratio - 1) >
        std::abs(rep.rows[i - 1].ratio - 1) + 1e-9)
      rep.trend_to_one = false;
  return rep;
}

// ---------------------------------------------------------------------------
// acceptance checks

namespace {

NumberField field_from(const std::string& text) {
  return build_field(parse_field_spec(text));
}

using CheckFn = std::function<void(CheckResult&)>;  // sets pass/detail

// 1. exact rational counts
void check_rational_exact(CheckResult& out) {
  NumberField Q = field_from("x");
  int cases = 0;
  for (int n = 1; n <= 3; ++n)
    for (Rat X : {Rat(1), Rat(5, 2), Rat(21, 2)}) {
      long long side = 2 * static_cast<long long>(floor_rat(X)) + 1;
      long long expect = 1;
      for (int i = 0; i < n; ++i) expect *= side;
      if (count_O_k_n_e(Q, n, 1, X).total != expect) {
        out.detail = "mismatch at n=" + std::to_string(n) + " X=" + X.str();
        return;
      }
      ++cases;
    }
  out.pass = true;
  out.detail = std::to_string(cases) + " cases exact";
}

// 2. volume formulas vs seeded Monte Carlo and the Laguerre identity
void check_volume_mc(CheckResult& out) {
  const int shapes[4][3] = {{2, 0, 1}, {0, 1, 1}, {2, 0, 2}, {1, 1, 1}};
  double worst_sigma = 0;
  std::uint64_t seed = 20000;
  for (const auto& sh : shapes)
    for (double T : {2.0, 10.0}) {
      int r = sh[0], s = sh[1], n = sh[2], blocks = r + s;
      McEstimate z = mc_volume_Z(r, s, n, T, 1000000, seed++);
      double vz = vol_Z(r, s, n, T);
      worst_sigma = std::max(worst_sigma, std::abs(z.estimate - vz) /
                                              std::max(z.sigma, 1e-300));
      double sum = vol_SI(r, s, n, 0, T);
      for (int mask = 1; mask < (1 << blocks); ++mask) {
        RegionSpec spec;
        spec.r = r;
        spec.s = s;
        spec.n = n;
        spec.T = Rat(static_cast<long>(T));
        for (int i = 0; i < blocks; ++i)
          if (mask & (1 << i)) spec.I.push_back(i);
        double vi = vol_SI(spec);
        sum += vi;
        McEstimate mi = mc_volume_SI(spec, 1000000, seed++);
        worst_sigma = std::max(worst_sigma, std::abs(mi.estimate - vi) /
                                                std::max(mi.sigma, 1e-300));
      }
      double lag = std::pow(2.0, r * n) * std::pow(M_PI, s * n) *
                   std::pow(T, n) * laguerre_eval(blocks - 1, -n * std::log(T));
      if (std::abs(sum - vz) > 1e-12 * vz || std::abs(lag - vz) > 1e-12 * vz) {
        out.detail = "identity failure at r=" + std::to_string(r) +
                     " s=" + std::to_string(s);
        return;
      }
    }
  out.pass = worst_sigma <= 3.0;
  out.detail = "max deviation " + fmt(worst_sigma) + " sigma";
}

// 3. cell partition reproduces the direct counts exactly
void check_partition(CheckResult& out) {
  long long points = 0;
  for (long c0 : {-2L, -5L}) {
    NumberField K = field_from(c0 == -2 ? "x^2 - 2" : "x^2 - 5");
    Submodule O = maximal_order(K);
    for (int n : {1, 2}) {
      EuclideanLattice L = minkowski_embed(K, O, n);
      for (long T : {2L, 4L, 8L, 16L})
        for (int mask = 1; mask < 4; ++mask) {
          RegionSpec spec;
          spec.r = 2;
          spec.s = 0;
          spec.n = n;
          spec.T = Rat(T);
          for (int i = 0; i < 2; ++i)
            if (mask & (1 << i)) spec.I.push_back(i);
          long long direct = count_SI_direct(L, spec);
          PartitionData part = build_partition(spec);
          PartitionedCount pc = count_SI_partitioned(L, spec, part);
          if (pc.total != direct || !pc.disjoint_ok || !pc.kappa_ok) {
            out.detail = "mismatch field=" + std::to_string(c0) +
                         " n=" + std::to_string(n) + " T=" + std::to_string(T) +
                         " mask=" + std::to_string(mask);
            return;
          }
          points += direct;
        }
    }
  }
  out.pass = true;
  out.detail = std::to_string(points) + " points re-counted";
}

// 4. dominant-embedding trend against sqrt2 (X^2 - 1)
void check_pisot_trend(CheckResult& out) {
  ExperimentConfig cfg;
  cfg.field_spec = "x^2 - 2";
  cfg.n = 1;
  cfg.I_selection = {{0}};
  cfg.X_schedule = {Rat(2), Rat(4), Rat(8), Rat(16)};
  ComparisonReport rep = run_experiment(cfg);
  double final_ratio = rep.rows.back().ratio;
  out.pass = rep.trend_to_one && final_ratio >= 0.8 && final_ratio <= 1.2 &&
             rep.c_hat <= 10.0;
  std::string ratios;
  for (const auto& r : rep.rows) ratios += fmt(r.ratio) + " ";
  out.detail = "ratios " + ratios + "c_hat=" + fmt(rep.c_hat);
}

// 5. full-ball trend against sqrt2 X^2 (1 + 2 log X)
void check_ball_trend(CheckResult& out) {
  ExperimentConfig cfg;
  cfg.field_spec = "x^2 - 2";
  cfg.n = 1;
  cfg.X_schedule = {Rat(2), Rat(4), Rat(8), Rat(16), Rat(32)};
  ComparisonReport rep = run_experiment(cfg);
  out.pass = rep.c_hat <= 10.0 &&
             std::abs(rep.rows.back().ratio - 1) <
                 std::abs(rep.rows.front().ratio - 1);
  out.detail = "c_hat=" + fmt(rep.c_hat) +
               " final ratio=" + fmt(rep.rows.back().ratio);
}

// 6. lambda_1 >= sqrt(d/2) eta under seeded determinant-one flows
void check_minima(CheckResult& out) {
  int failures = 0, records = 0;
  std::uint64_t seed = 600;
  for (const NumberField& K : quadratic_census(8)) {
    ExtensionContext ctx = extension_context(K, K);
    CoordLayout layout{K.r, K.s, 1};
    std::vector<Submodule> mods = {
        maximal_order(K),
        submodule(K, {{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(2)}})};
    for (const Submodule& O : mods) {
      std::mt19937_64 rng(seed++);
      std::vector<DiagonalFlow> flows;
      for (int t = 0; t < 100; ++t) flows.push_back(sample_flow(layout, rng));
      MinimaCheckReport rep = verify_minima_inequalities(K, O, ctx, flows);
      failures += rep.failures;
      records += static_cast<int>(rep.records.size());
    }
  }
  out.pass = failures == 0;
  out.detail = std::to_string(records) + " flows, " +
               std::to_string(failures) + " violations";
}

// 7. non-primitive points are scarce, with exponent below the bound
void check_npp_scarcity(CheckResult& out) {
  NumberField K = field_from("x^2 - 2"), Q = field_from("x");
  ExtensionContext ctx = extension_context(K, Q);
  Submodule O = maximal_order(K);
  std::vector<double> fracs, npps;
  for (long X : {2L, 3L, 4L}) {
    long long npp = npp_census(ctx, O, 2, Rat(X));
    long long total =
        static_cast<long long>(enumerate_heightball(K, O, 2, Rat(X)).size());
    npps.push_back(static_cast<double>(npp));
    fracs.push_back(static_cast<double>(npp) / total);
  }
  bool decreasing = fracs[1] < fracs[0] && fracs[2] < fracs[1];
  // bound exponent m(g^2 + gn + e^2/g + e) = 9 at g=1, m=1, n=2, e=2
  double slope = (std::log(npps[2]) - std::log(npps[0])) / std::log(2.0);
  out.pass = decreasing && slope <= 9.5;
  out.detail = "fractions " + fmt(fracs[0]) + " " + fmt(fracs[1]) + " " +
               fmt(fracs[2]) + ", slope " + fmt(slope);
}

// 8. exact condition arithmetic
void check_conditions(CheckResult& out) {
  if (condition_check(2, 1, 1).C_em != Rat(7)) {
    out.detail = "C_{2,1} != 7";
    return;
  }
  for (int e = 9; e <= 50; ++e)
    for (int m = 1; m <= 5; ++m)
      for (int n = e; n <= e + 5; ++n) {
        ConditionReport rep = condition_check(e, m, n);
        if (rep.verdict != (n > e + 2)) {
          out.detail = "equivalence fails at e=" + std::to_string(e);
          return;
        }
        if (rep.verdict && !rep.all_hold) {
          out.detail = "inequalities fail at e=" + std::to_string(e) +
                       " m=" + std::to_string(m) + " n=" + std::to_string(n);
          return;
        }
      }
  out.pass = true;
  out.detail = "grid 9<=e<=50, m<=5 clean";
}

// 9. series coefficients stabilize under doubling the discriminant bound
void check_series_convergence(CheckResult& out) {
  NumberField Q = field_from("x");
  SeriesCoefficients a = build_series(Q, 2, 10, quadratic_census(1000));
  SeriesCoefficients b = build_series(Q, 2, 10, quadratic_census(2000));
  double r0 = std::abs(a.D[0] - b.D[0]) / b.D[0];
  double r1 = std::abs(a.D[1] - b.D[1]) / b.D[1];
  out.pass = r0 < 1e-6 && r1 < 1e-6;
  out.detail = "rel increments " + fmt(r0) + ", " + fmt(r1);
}

// independent oracle: monic quadratics with Mahler measure <= X^2
long long mahler_oracle(const Rat& X) {
  Rat X2 = X * X;
  BigInt tmax = floor_rat(2 * X2), umax = floor_rat(X2 * X2);
  long long polys = 0;
  for (BigInt t = -tmax; t <= tmax; ++t)
    for (BigInt u = -umax; u <= umax; ++u) {
      BigInt d0 = t * t - 4 * u;
      if (d0 == 0 || is_square(d0)) continue;
      Quad m(Rat(1));
      if (d0 > 0) {
        BigInt mm;
        BigInt m0 = squarefree_kernel(d0, &mm);
        m = quad_max(Quad(1), quad_abs(Quad(Rat(t, 2), Rat(mm, 2), m0))) *
            quad_max(Quad(1), quad_abs(Quad(Rat(t, 2), Rat(-mm, 2), m0)));
      } else {
        m = quad_max(Quad(1), Quad(Rat(u)));
      }
      if (m <= Quad(X2)) ++polys;
    }
  return 2 * polys;
}

// 10. the degree-2 field sweep equals the polynomial oracle
void check_degree2_oracle(CheckResult& out) {
  NumberField Q = field_from("x");
  std::vector<long long> totals;
  for (Rat X : {Rat(3, 2), Rat(2), Rat(3), Rat(4)}) {
    long long mine = count_O_k_n_e(Q, 1, 2, X).total;
    if (X != Rat(4) && mine != mahler_oracle(X)) {
      out.detail = "oracle mismatch at X=" + X.str();
      return;
    }
    if (X >= 2) totals.push_back(mine);
  }
  double slope = (std::log(static_cast<double>(totals[2])) -
                  std::log(static_cast<double>(totals[0]))) /
                 std::log(2.0);
  out.pass = std::abs(slope - 4.0) <= 0.5;
  out.detail = "counts match, slope " + fmt(slope);
}

// 11. the box-counting bound dominates the observed discrepancy
void check_counting_bound(CheckResult& out) {
  NumberField K = field_from("x^2 - 2");
  Submodule O = maximal_order(K);
  std::vector<EuclideanLattice> lats;
  for (int D = 1; D <= 4; ++D) lats.push_back(integer_lattice(D));
  lats.push_back(minkowski_embed(K, O, 1));
  lats.push_back(minkowski_embed(K, O, 2));

  std::mt19937_64 rng(1100);
  std::uniform_int_distribution<long> lo4(-40, 0), len4(1, 80);
  int violations = 0;
  for (int it = 0; it < 50; ++it) {
    const EuclideanLattice& L = lats[it % lats.size()];
    std::vector<std::pair<Rat, Rat>> bounds;
    Rat vol(1);
    for (int i = 0; i < L.dim; ++i) {
      Rat lo(lo4(rng), 4), hi = lo + Rat(len4(rng), 4);
      vol *= hi - lo;
      bounds.emplace_back(lo, hi);
    }
    long long npts =
        static_cast<long long>(enumerate_in_box(L, bounds).size());
    double expect = to_double(vol) / to_double(L.det.mid());
    double bound =
        counting_bound(box_certificate(bounds), successive_minima(L));
    if (std::abs(npts - expect) > bound + 1e-6) ++violations;
  }
  out.pass = violations == 0;
  out.detail = "50 boxes, " + std::to_string(violations) + " violations";
}

}  // namespace

std::vector<CheckResult> verify_suite(const std::string& filter) {
  const std::pair<const char*, CheckFn> checks[] = {
      {"rational-exact", check_rational_exact},
      {"volume-mc", check_volume_mc},
      {"partition-exact", check_partition},
      {"pisot-trend", check_pisot_trend},
      {"full-ball-trend", check_ball_trend},
      {"minima-inequalities", check_minima},
      {"npp-scarcity", check_npp_scarcity},
      {"condition-arithmetic", check_conditions},
      {"series-convergence", check_series_convergence},
      {"degree2-oracle", check_degree2_oracle},
      {"counting-bound", check_counting_bound},
  };
  std::vector<CheckResult> results;
  for (const auto& [name, fn] : checks) {
    if (!filter.empty() && std::string(name).find(filter) == std::string::npos)
      continue;
    CheckResult res;
    res.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      fn(res);
    } catch (const std::exception& ex) {
      res.pass = false;
      res.detail = std::string("exception: ") + ex.what();
    }
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace hcount
