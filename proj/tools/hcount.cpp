// Command-line front end: field inspection, height-ball enumeration and
// classification, volume formulas with Monte-Carlo audits, series prediction,
// and the acceptance checks.  Exit codes: 0 ok, 1 check failure, 2 usage error.
#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "hcount/census.hpp"
#include "hcount/harness.hpp"
#include "hcount/predict.hpp"
#include "hcount/regions.hpp"

using namespace hcount;
using nlohmann::json;

namespace {

struct GlobalOpts {
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 12345;
  int threads = 0;
};

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw CLI::ValidationError("--out", "cannot open " + g.out);
  f << text;
}

Rat parse_rat(const std::string& s) {
  try {
    Rat r(s);  // accepts "3" and "p/q"
    return r;
  } catch (const std::exception&) {
    throw CLI::ValidationError("--X", "not a rational p/q: " + s);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("file", "cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

NumberField load_field(const std::string& path) {
  return build_field(parse_field_spec(read_file(path)));
}

Submodule load_submodule(const NumberField& K, const std::string& path) {
  if (path.empty()) return maximal_order(K);
  json j = json::parse(read_file(path));
  std::vector<std::vector<BigInt>> basis;
  for (const auto& row : j) {
    std::vector<BigInt> r;
    for (const auto& c : row) r.emplace_back(c.get<std::string>());
    basis.push_back(std::move(r));
  }
  return submodule(K, basis);
}

NumberField rational_field() {
  return build_field(parse_field_spec("x - 1"));
}

// K/k context for the requested relative degree; k is recovered as Q for
// e = [K:Q] and as K itself for e = 1 (the cases with certified degree data).
ExtensionContext context_for(const NumberField& K, int e) {
  if (e == 1) return extension_context(K, K);
  if (e == K.d) return extension_context(K, rational_field());
  throw CLI::ValidationError(
      "--e", "e must be 1 or the absolute degree of the field");
}

long i_bitmask(const std::vector<int>& I) {
  long mask = 0;
  for (int i : I) mask |= 1L << i;
  return mask;
}

std::vector<int> bitmask_to_I(long mask) {
  std::vector<int> I;
  for (int i = 0; i < 62; ++i)
    if (mask & (1L << i)) I.push_back(i);
  return I;
}

json field_json(const NumberField& K) {
  json basis = json::array();
  for (const auto& b : K.integral_basis) {
    json row = json::array();
    for (const auto& c : b) row.push_back(c.str());
    basis.push_back(row);
  }
  json coeffs = json::array();
  for (const auto& c : K.defining) coeffs.push_back(c.str());
  return {{"schema", 1},
          {"defining", coeffs},
          {"degree", K.d},
          {"r", K.r},
          {"s", K.s},
          {"unit_rank", K.unit_rank},
          {"disc", K.disc.str()},
          {"integral_basis", basis}};
}

struct PointRow {
  std::vector<std::string> coords;
  double height;
  ClassificationTag tag;
};

std::vector<PointRow> classified_points(const ExtensionContext& ctx,
                                        const Submodule& O, int n, const Rat& X,
                                        std::uint64_t cap) {
  std::vector<PointRow> rows;
  for (const auto& p : enumerate_heightball(ctx.K, O, n, X, cap)) {
    PointRow row;
    for (const auto& slot : p.coords)
      for (const auto& c : slot) row.coords.push_back(c.str());
    row.height = std::pow(to_double(p.height_pow_d.enclosure(40).mid()),
                          1.0 / ctx.K.d);
    row.tag = classify(ctx, p.elems);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string points_json(const std::vector<PointRow>& rows) {
  json j;
  j["schema"] = 1;
  j["points"] = json::array();
  for (const auto& r : rows)
    j["points"].push_back({{"coords", r.coords},
                           {"height", r.height},
                           {"degree", r.tag.degree_over_k},
                           {"ratio_degree", r.tag.ratio_field_degree},
                           {"primitive", r.tag.projectively_primitive},
                           {"I_bitmask", i_bitmask(r.tag.I)}});
  return j.dump(2);
}

std::string points_csv(const std::vector<PointRow>& rows, int width) {
  std::ostringstream os;
  for (int i = 0; i < width; ++i) os << "c" << i << ",";
  os << "height,degree,ratio_degree,primitive,I_bitmask\n";
  os.precision(17);
  for (const auto& r : rows) {
    for (const auto& c : r.coords) os << c << ',';
    os << r.height << ',' << r.tag.degree_over_k << ','
       << r.tag.ratio_field_degree << ',' << (r.tag.projectively_primitive ? 1 : 0)
       << ',' << i_bitmask(r.tag.I) << '\n';
  }
  return os.str();
}

json census_json(const CensusResult& res) {
  json per_I = json::array();
  for (const auto& [I, c] : res.per_I)
    per_I.push_back({{"I_bitmask", i_bitmask(I)}, {"count", c}});
  json per_class = json::array();
  for (const auto& [key, c] : res.per_class)
    per_class.push_back(
        {{"degree", key.first}, {"ratio_degree", key.second}, {"count", c}});
  return {{"schema", 1},
          {"X", res.X.str()},
          {"total", res.total},
          {"zero_count", res.zero_count},
          {"per_I", per_I},
          {"per_class", per_class},
          {"primitive_count", res.primitive_count},
          {"npp_count", res.npp_count},
          {"partition_ok", res.partition_ok}};
}

std::string census_csv(const CensusResult& res) {
  std::ostringstream os;
  os << "key,value\n";
  os << "X," << res.X.str() << '\n';
  os << "total," << res.total << '\n';
  os << "zero_count," << res.zero_count << '\n';
  for (const auto& [I, c] : res.per_I)
    os << "I_" << i_bitmask(I) << ',' << c << '\n';
  for (const auto& [key, c] : res.per_class)
    os << "class_" << key.first << '_' << key.second << ',' << c << '\n';
  os << "primitive_count," << res.primitive_count << '\n';
  os << "npp_count," << res.npp_count << '\n';
  os << "partition_ok," << (res.partition_ok ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"height-ball census and asymptotic-count verification"};
  app.require_subcommand(1);
  // let --out/--format/--seed/--threads appear after the subcommand too
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--out", g.out, "write the report to this path");
  app.add_option("--format", g.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "Monte-Carlo seed");
  app.add_option("--threads", g.threads, "worker threads (0 = auto)");

  // field
  std::string field_path, submodule_path, k_path;
  auto* c_field = app.add_subcommand("field", "field invariants");
  c_field->add_option("--field", field_path, "field spec file")->required();

  // enumerate / count / census share the flags
  int n = 1, e = 1;
  std::string X_text = "1";
  std::uint64_t cap = 100000000;
  auto add_ball_flags = [&](CLI::App* c) {
    c->add_option("--field", field_path, "field spec file")->required();
    c->add_option("--n", n, "coordinates per point");
    c->add_option("--e", e, "relative degree over the base field");
    c->add_option("--X", X_text, "height bound, rational p/q");
    c->add_option("--submodule", submodule_path,
                  "JSON basis matrix (integral-basis coordinates)");
    c->add_option("--cap", cap, "enumeration safety cap");
  };
  auto* c_enum = app.add_subcommand("enumerate", "points of height <= X");
  add_ball_flags(c_enum);
  auto* c_count = app.add_subcommand("count", "census totals");
  add_ball_flags(c_count);
  auto* c_census = app.add_subcommand("census", "full classification sweep");
  add_ball_flags(c_census);

  // predict
  int disc_bound = 1000;
  std::vector<std::string> X_list;
  auto* c_pred = app.add_subcommand("predict", "series main terms");
  c_pred->add_option("--k", k_path, "base field spec file (default Q)");
  c_pred->add_option("--e", e, "relative degree");
  c_pred->add_option("--n", n, "coordinates per point");
  c_pred->add_option("--X", X_list, "height bounds, rational p/q");
  c_pred->add_option("--disc-bound", disc_bound,
                     "discriminant cutoff for the field list");

  // volumes
  int vr = 1, vs = 0;
  long I_mask = -1;
  std::string T_text = "1";
  std::uint64_t mc_samples = 0;
  auto* c_vol = app.add_subcommand("volumes", "region volume formulas");
  c_vol->add_option("--r", vr, "real blocks");
  c_vol->add_option("--s", vs, "complex blocks");
  c_vol->add_option("--n", n, "coordinates per block");
  c_vol->add_option("--I", I_mask, "signature bitmask (omit for all blocks)");
  c_vol->add_option("--T", T_text, "scale, rational p/q");
  c_vol->add_option("--mc-samples", mc_samples,
                    "Monte-Carlo sample count (0 = skip)");

  // verify
  std::string filter;
  auto* c_verify = app.add_subcommand("verify", "acceptance checks");
  c_verify->add_option("--filter", filter, "substring filter on check names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_field) {
      emit(g, field_json(load_field(field_path)).dump(2));
      return 0;
    }

    if (*c_enum || *c_count || *c_census) {
      NumberField K = load_field(field_path);
      Submodule O = load_submodule(K, submodule_path);
      ExtensionContext ctx = context_for(K, e);
      Rat X = parse_rat(X_text);
      if (*c_enum) {
        auto rows = classified_points(ctx, O, n, X, cap);
        emit(g, g.format == "csv" ? points_csv(rows, K.d * n)
                                  : points_json(rows));
      } else {
        CensusResult res = run_census(ctx, O, n, X, cap, g.threads);
        emit(g, g.format == "csv" ? census_csv(res) : census_json(res).dump(2));
      }
      return 0;
    }

    if (*c_pred) {
      NumberField k = k_path.empty() ? rational_field() : load_field(k_path);
      std::vector<NumberField> fields;
      if (e == 1) {
        fields.push_back(k);
      } else if (e == 2 && k.d == 1) {
        fields = quadratic_census(BigInt(disc_bound));
      } else {
        throw CLI::ValidationError("--e", "supported: e=1, or e=2 over Q");
      }
      SeriesCoefficients s = build_series(k, e, n, fields);
      PrincipalPart pp = zeta_principal_part(s);
      json j;
      j["schema"] = 1;
      j["e"] = s.e;
      j["m"] = s.m;
      j["n"] = s.n;
      j["t"] = s.t;
      j["D"] = s.D;
      j["beta"] = s.beta;
      j["max_disc"] = s.max_disc.str();
      j["last_increment"] = s.last_increment;
      ConditionReport cr = condition_check(e, s.m, n);
      j["C_em"] = to_double(cr.C_em);
      j["conditions_hold"] = cr.all_hold;
      j["verdict"] = cr.verdict;
      j["principal_part"] = pp.a;
      j["main_terms"] = json::array();
      for (const auto& xt : X_list) {
        double X = to_double(parse_rat(xt));
        j["main_terms"].push_back(
            {{"X", xt}, {"value", main_term_series(s, X)}});
      }
      emit(g, j.dump(2));
      return 0;
    }

    if (*c_vol) {
      RegionSpec spec;
      spec.r = vr;
      spec.s = vs;
      spec.n = n;
      spec.T = parse_rat(T_text);
      spec.I = I_mask < 0 ? bitmask_to_I((1L << (vr + vs)) - 1)
                          : bitmask_to_I(I_mask);
      spec.validate();
      double T = to_double(spec.T);
      json j;
      j["schema"] = 1;
      j["vol_SI"] = vol_SI(spec);
      j["vol_Z"] = vol_Z(vr, vs, n, T);
      if (mc_samples > 0) {
        McEstimate mc = mc_volume_SI(spec, mc_samples, g.seed);
        j["mc_estimate"] = mc.estimate;
        j["mc_sigma"] = mc.sigma;
      }
      emit(g, j.dump(2));
      return 0;
    }

    if (*c_verify) {
      int failures = 0;
      std::ostringstream os;
      for (const auto& res : verify_suite(filter)) {
        std::printf("%s %-22s %s (%.1fs)\n", res.pass ? "PASS" : "FAIL",
                    res.name.c_str(), res.detail.c_str(), res.seconds);
        std::fflush(stdout);
        os << (res.pass ? "PASS" : "FAIL") << ',' << res.name << ",\""
           << res.detail << "\"\n";
        if (!res.pass) ++failures;
      }
      if (!g.out.empty()) emit(g, os.str());
      return failures == 0 ? 0 : 1;
    }
  } catch (const CLI::ValidationError& err) {
    std::cerr << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
  return 2;
}
