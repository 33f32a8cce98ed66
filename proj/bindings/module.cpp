// Python bindings for the main operations: field construction, height-ball
// enumeration, census/classification, region volumes, and the prediction
// series.  Exact rationals cross the boundary as "p/q" strings.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hcount/census.hpp"
#include "hcount/harness.hpp"
#include "hcount/predict.hpp"
#include "hcount/regions.hpp"

namespace py = pybind11;
using namespace hcount;

namespace {

Rat rat_from(const std::string& s) { return Rat(s); }

std::vector<std::vector<BigInt>> basis_from(
    const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<BigInt>> out;
  for (const auto& r : rows) {
    std::vector<BigInt> row;
    for (const auto& c : r) row.emplace_back(c);
    out.push_back(std::move(row));
  }
  return out;
}

py::dict census_dict(const CensusResult& res) {
  py::dict d;
  d["X"] = res.X.str();
  d["total"] = res.total;
  d["zero_count"] = res.zero_count;
  py::list per_I;
  for (const auto& [I, c] : res.per_I) per_I.append(py::make_tuple(I, c));
  d["per_I"] = per_I;
  py::list per_class;
  for (const auto& [key, c] : res.per_class)
    per_class.append(py::make_tuple(key.first, key.second, c));
  d["per_class"] = per_class;
  d["primitive_count"] = res.primitive_count;
  d["npp_count"] = res.npp_count;
  d["partition_ok"] = res.partition_ok;
  return d;
}

}  // namespace

PYBIND11_MODULE(_hcount, m) {
  m.doc() = "height-ball census and asymptotic-count verification";

  py::class_<NumberField>(m, "NumberField")
      .def_readonly("d", &NumberField::d)
      .def_readonly("r", &NumberField::r)
      .def_readonly("s", &NumberField::s)
      .def_readonly("unit_rank", &NumberField::unit_rank)
      .def_property_readonly(
          "disc", [](const NumberField& K) { return K.disc.str(); })
      .def("__repr__", [](const NumberField& K) {
        std::ostringstream os;
        os << "NumberField(d=" << K.d << ", r=" << K.r << ", s=" << K.s
           << ", disc=" << K.disc << ")";
        return os.str();
      });

  py::class_<Submodule>(m, "Submodule")
      .def_property_readonly(
          "index", [](const Submodule& O) { return O.index.str(); })
      .def_property_readonly(
          "ideal_norm", [](const Submodule& O) { return O.ideal_norm.str(); });

  py::class_<ExtensionContext>(m, "ExtensionContext")
      .def_readonly("e", &ExtensionContext::e)
      .def_readonly("m", &ExtensionContext::m)
      .def_readonly("subfield_degrees", &ExtensionContext::subfield_degrees)
      .def_readonly("exact_degrees", &ExtensionContext::exact_degrees);

  m.def(
      "build_field",
      [](const std::string& text) { return build_field(parse_field_spec(text)); },
      py::arg("spec_text"),
      "field from a spec string, e.g. 'x^2 - 2' or '[c0, ..., cd]'");
  m.def("maximal_order", &maximal_order, py::arg("K"));
  m.def(
      "submodule",
      [](const NumberField& K, const std::vector<std::vector<std::string>>& b) {
        return submodule(K, basis_from(b));
      },
      py::arg("K"), py::arg("basis"));
  m.def("extension_context", &extension_context, py::arg("K"), py::arg("k"));

  m.def(
      "heightball",
      [](const NumberField& K, const Submodule& O, int n, const std::string& X,
         std::uint64_t cap) {
        py::list out;
        for (const auto& p : enumerate_heightball(K, O, n, rat_from(X), cap)) {
          py::list coords;
          for (const auto& slot : p.coords) {
            py::list sc;
            for (const auto& c : slot) sc.append(c.str());
            coords.append(sc);
          }
          py::dict d;
          d["coords"] = coords;
          d["height_pow_d"] = to_double(p.height_pow_d.enclosure(40).mid());
          out.append(d);
        }
        return out;
      },
      py::arg("K"), py::arg("O"), py::arg("n"), py::arg("X"),
      py::arg("cap") = std::uint64_t(100000000),
      "points of O^n with H <= X, lexicographic in submodule coordinates");

  m.def(
      "run_census",
      [](const ExtensionContext& ctx, const Submodule& O, int n,
         const std::string& X, std::uint64_t cap, int threads) {
        return census_dict(run_census(ctx, O, n, rat_from(X), cap, threads));
      },
      py::arg("ctx"), py::arg("O"), py::arg("n"), py::arg("X"),
      py::arg("cap") = std::uint64_t(100000000), py::arg("threads") = 0);

  m.def(
      "count_pisot",
      [](const NumberField& k, const std::string& X, std::uint64_t cap) {
        return count_pisot(k, rat_from(X), cap);
      },
      py::arg("k"), py::arg("X"), py::arg("cap") = std::uint64_t(100000000));

  m.def(
      "count_O_k_n_e",
      [](const NumberField& k, int n, int e, const std::string& X,
         std::uint64_t cap) {
        OkneCount c = count_O_k_n_e(k, n, e, rat_from(X), cap);
        py::dict d;
        d["total"] = c.total;
        d["t_bound"] = c.t_bound.str();
        d["u_bound"] = c.u_bound.str();
        py::list discs;
        for (const auto& x : c.candidate_discs) discs.append(x.str());
        d["candidate_discs"] = discs;
        py::list per_field;
        for (const auto& fc : c.per_field)
          per_field.append(py::make_tuple(fc.disc.str(), fc.count));
        d["per_field"] = per_field;
        return d;
      },
      py::arg("k"), py::arg("n"), py::arg("e"), py::arg("X"),
      py::arg("cap") = std::uint64_t(100000000));

  m.def(
      "delta_g_upper",
      [](const ExtensionContext& ctx, int g, const std::string& bound,
         std::uint64_t cap) {
        DeltaBound b = delta_g_upper(ctx, g, rat_from(bound), cap);
        py::dict d;
        d["delta"] = to_double(b.delta.mid());
        d["exact"] = b.exact;
        return d;
      },
      py::arg("ctx"), py::arg("g"), py::arg("search_bound"),
      py::arg("cap") = std::uint64_t(100000000));

  m.def(
      "quadratic_census",
      [](long bound) { return quadratic_census(BigInt(bound)); },
      py::arg("disc_bound"));

  m.def("vol_SI",
        py::overload_cast<int, int, int, int, double>(&vol_SI), py::arg("r"),
        py::arg("s"), py::arg("n"), py::arg("I_size"), py::arg("T"));
  m.def("vol_Z", &vol_Z, py::arg("r"), py::arg("s"), py::arg("n"),
        py::arg("T"));
  m.def(
      "mc_volume_Z",
      [](int r, int s, int n, double T, std::uint64_t samples,
         std::uint64_t seed) {
        McEstimate e = mc_volume_Z(r, s, n, T, samples, seed);
        return py::make_tuple(e.estimate, e.sigma);
      },
      py::arg("r"), py::arg("s"), py::arg("n"), py::arg("T"),
      py::arg("samples"), py::arg("seed"));

  m.def("main_term_ball", &main_term_ball, py::arg("K"), py::arg("O"),
        py::arg("n"), py::arg("X"));
  m.def("main_term_region", &main_term_region, py::arg("K"), py::arg("O"),
        py::arg("n"), py::arg("I"), py::arg("X"));

  py::class_<SeriesCoefficients>(m, "SeriesCoefficients")
      .def_readonly("e", &SeriesCoefficients::e)
      .def_readonly("m", &SeriesCoefficients::m)
      .def_readonly("n", &SeriesCoefficients::n)
      .def_readonly("t", &SeriesCoefficients::t)
      .def_readonly("D", &SeriesCoefficients::D)
      .def_readonly("beta", &SeriesCoefficients::beta)
      .def_readonly("last_increment", &SeriesCoefficients::last_increment)
      .def_property_readonly("max_disc", [](const SeriesCoefficients& s) {
        return s.max_disc.str();
      });
  m.def("build_series", &build_series, py::arg("k"), py::arg("e"),
        py::arg("n"), py::arg("fields"));
  m.def("main_term_series", &main_term_series, py::arg("series"), py::arg("X"));
  m.def(
      "zeta_principal_part",
      [](const SeriesCoefficients& s) { return zeta_principal_part(s).a; },
      py::arg("series"));
  m.def(
      "condition_check",
      [](int e, int mm, int n) {
        ConditionReport r = condition_check(e, mm, n);
        py::dict d;
        d["C_em"] = to_double(r.C_em);
        d["verdict"] = r.verdict;
        d["all_hold"] = r.all_hold;
        return d;
      },
      py::arg("e"), py::arg("m"), py::arg("n"));
  m.def("schmidt_bound", &schmidt_bound, py::arg("m"), py::arg("e"),
        py::arg("n"), py::arg("X"));

  m.def(
      "run_experiment",
      [](const std::string& field_spec, int n,
         const std::vector<std::string>& X_schedule,
         const std::vector<std::vector<int>>& I_selection) {
        ExperimentConfig cfg;
        cfg.field_spec = field_spec;
        cfg.n = n;
        for (const auto& x : X_schedule) cfg.X_schedule.push_back(rat_from(x));
        cfg.I_selection = I_selection;
        return run_experiment(cfg).to_json();
      },
      py::arg("field_spec"), py::arg("n"), py::arg("X_schedule"),
      py::arg("I_selection") = std::vector<std::vector<int>>{},
      "observed-vs-predicted comparison; returns the JSON report");

  m.def(
      "verify",
      [](const std::string& filter) {
        py::list out;
        for (const auto& res : verify_suite(filter)) {
          py::dict d;
          d["name"] = res.name;
          d["pass"] = res.pass;
          d["detail"] = res.detail;
          d["seconds"] = res.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("filter") = std::string(), "acceptance checks");
}
