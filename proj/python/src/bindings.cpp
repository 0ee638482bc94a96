// Copyright 2026 The rankcentral Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rankcentral/baselines.hpp"
#include "rankcentral/bounds.hpp"
#include "rankcentral/btl.hpp"
#include "rankcentral/error.hpp"
#include "rankcentral/experiment.hpp"
#include "rankcentral/graph.hpp"
#include "rankcentral/spectral_ranker.hpp"

namespace py = pybind11;

namespace rankcentral {
namespace {

std::vector<std::pair<Index, Index>> EdgePairs(const ComparisonGraph& g) {
  std::vector<std::pair<Index, Index>> out;
  out.reserve(g.num_edges());
  for (const Edge& e : g.edges()) out.emplace_back(e.first, e.second);
  return out;
}

BoundConstants Constants(const py::kwargs& kw) {
  BoundConstants c;
  for (const auto& [key, value] : kw) {
    const auto name = key.cast<std::string>();
    const double v = value.cast<double>();
    if (name == "c1") c.c1 = v;
    else if (name == "c2") c.c2 = v;
    else if (name == "c3") c.c3 = v;
    else if (name == "c4") c.c4 = v;
    else if (name == "c5") c.c5 = v;
    else if (name == "c6") c.c6 = v;
    else if (name == "epsilon") c.epsilon = v;
    else throw py::type_error("unknown constant '" + name + "'");
  }
  return c;
}

py::dict ReportDict(const ConditionReport& r) {
  py::dict d;
  d["theorem"] = r.theorem;
  d["satisfied"] = r.satisfied;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["direction"] = r.direction == BoundDirection::kAtLeast ? ">=" : "<=";
  py::list sides;
  for (const auto& s : r.side_conditions) {
    py::dict sd;
    sd["name"] = s.name;
    sd["lhs"] = s.lhs;
    sd["rhs"] = s.rhs;
    sd["holds"] = s.holds;
    sides.append(sd);
  }
  d["side_conditions"] = sides;
  py::dict echo;
  for (const auto& [k, v] : r.inputs_echo) echo[py::str(k)] = v;
  d["inputs"] = echo;
  return d;
}

std::string ConfigValue(const py::handle& value) {
  if (py::isinstance<py::bool_>(value)) return value.cast<bool>() ? "true" : "false";
  if (py::isinstance<py::str>(value)) return value.cast<std::string>();
  if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
    std::string out;
    for (const auto& item : value) {
      if (!out.empty()) out += ",";
      out += py::str(item).cast<std::string>();
    }
    return out;
  }
  return py::str(value).cast<std::string>();
}

}  // namespace
}  // namespace rankcentral

PYBIND11_MODULE(_rankcentral, m) {
  using namespace rankcentral;
  m.doc() = "Select the K best items from noisy pairwise comparisons";
  py::register_exception<Error>(m, "RankcentralError", PyExc_RuntimeError);

  py::class_<ComparisonGraph>(m, "Graph")
      .def(py::init([](Index n, const std::vector<std::pair<Index, Index>>& edges) {
             return ComparisonGraph::FromEdgeList(n, edges);
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_vertices", &ComparisonGraph::num_vertices)
      .def_property_readonly("num_edges", &ComparisonGraph::num_edges)
      .def("edges", &EdgePairs)
      .def("degrees", [](const ComparisonGraph& g) { return Degrees(g).degrees; })
      .def("neighbors",
           [](const ComparisonGraph& g, Index v) {
             const auto nb = g.neighbors(v);
             return std::vector<Index>(nb.begin(), nb.end());
           })
      .def("has_edge", &ComparisonGraph::has_edge)
      .def("is_connected", [](const ComparisonGraph& g) { return IsConnected(g); });

  m.def("sample_er", &SampleErdosRenyi, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("read_edge_list", &ReadEdgeListFile, py::arg("path"));
  m.def("write_edge_list", &WriteEdgeListFile, py::arg("graph"), py::arg("path"));
  m.def("spectral_gap", &SpectralGap, py::arg("graph"));
  m.def("l2inf_of_laplacian_squared", &L2InfOfLaplacianSquared, py::arg("graph"));
  m.def("compute_spectra", [](const ComparisonGraph& g) {
    const auto s = ComputeSpectra(g);
    py::dict d;
    d["d_min"] = s.d_min;
    d["d_max"] = s.d_max;
    d["gamma"] = s.gamma;
    d["l2inf_of_L2"] = s.l2inf_of_L2;
    return d;
  });

  py::class_<PreferenceVector>(m, "PreferenceVector")
      .def(py::init<std::vector<double>>(), py::arg("scores"))
      .def(py::init<std::vector<double>, double, double>(), py::arg("scores"),
           py::arg("w_min"), py::arg("w_max"))
      .def_property_readonly("scores", &PreferenceVector::scores)
      .def_property_readonly("w_min", &PreferenceVector::w_min)
      .def_property_readonly("w_max", &PreferenceVector::w_max)
      .def("normalized", &PreferenceVector::Normalized)
      .def("__len__", &PreferenceVector::size);

  m.def(
      "planted_scores",
      [](Index n, Index k, double delta_k, const std::string& scheme, double w_max) {
        return MakePlantedScores(n, k, delta_k, ParseScoreScheme(scheme), w_max);
      },
      py::arg("n"), py::arg("k"), py::arg("delta_k"), py::arg("scheme") = "two-level",
      py::arg("w_max") = 1.0);
  m.def("delta_k", &DeltaK, py::arg("w"), py::arg("k"));
  m.def("true_top_k", &TrueTopK, py::arg("w"), py::arg("k"));

  py::class_<ObservationSet>(m, "ObservationSet")
      .def_property_readonly("num_vertices", &ObservationSet::num_vertices)
      .def_property_readonly("comparisons", &ObservationSet::comparisons)
      .def_property_readonly("is_exact", &ObservationSet::is_exact)
      .def_property_readonly("stats", &ObservationSet::stats)
      .def("y", &ObservationSet::y, py::arg("i"), py::arg("j"));
  m.def("sample_observations", &SampleObservations, py::arg("graph"), py::arg("w"),
        py::arg("comparisons"), py::arg("seed"));
  m.def("exact_observations", &ExactObservations, py::arg("graph"), py::arg("w"));
  m.def("read_observations", &ReadObservationsFile, py::arg("path"));
  m.def("write_observations", &WriteObservationsFile, py::arg("obs"), py::arg("path"));

  py::class_<RankingResult>(m, "RankingResult")
      .def_readonly("estimate", &RankingResult::estimate)
      .def_readonly("top_k", &RankingResult::top_k)
      .def_readonly("iterations", &RankingResult::iterations)
      .def_readonly("residual", &RankingResult::residual)
      .def_readonly("converged", &RankingResult::converged);

  m.def(
      "rank_centrality",
      [](const ComparisonGraph& g, const ObservationSet& obs, Index k, double tol,
         std::uint64_t max_iter) {
        return RankCentrality(g, obs, k, {.tol = tol, .max_iter = max_iter});
      },
      py::arg("graph"), py::arg("obs"), py::arg("k"), py::arg("tol") = kDefaultTolerance,
      py::arg("max_iter") = 0);
  m.def(
      "spectral_mle",
      [](const ComparisonGraph& g, const ObservationSet& obs, Index k, int rounds,
         double w_lo, double w_hi, double inner_tol, double replace_threshold, double tol,
         std::uint64_t max_iter) {
        return SpectralMle(g, obs, k,
                           {.rounds = rounds,
                            .w_lo = w_lo,
                            .w_hi = w_hi,
                            .inner_tol = inner_tol,
                            .replace_threshold = replace_threshold},
                           {.tol = tol, .max_iter = max_iter});
      },
      py::arg("graph"), py::arg("obs"), py::arg("k"), py::arg("rounds") = 0,
      py::arg("w_lo") = MleParams{}.w_lo, py::arg("w_hi") = MleParams{}.w_hi,
      py::arg("inner_tol") = MleParams{}.inner_tol, py::arg("replace_threshold") = 0.0,
      py::arg("tol") = kDefaultTolerance, py::arg("max_iter") = 0);
  m.def("borda_count", &BordaCount, py::arg("graph"), py::arg("obs"), py::arg("k"));
  m.def("top_k", [](const std::vector<double>& s, Index k) { return TopK(s, k); },
        py::arg("scores"), py::arg("k"));

  m.def("linf_error",
        [](const std::vector<double>& est, const std::vector<double>& truth) {
          return LinfError(est, truth);
        },
        py::arg("estimate"), py::arg("truth"));
  m.def("l2_error",
        [](const std::vector<double>& est, const std::vector<double>& truth) {
          return L2Error(est, truth);
        },
        py::arg("estimate"), py::arg("truth"));

  m.def(
      "thm1_sufficient",
      [](const ComparisonGraph& g, std::uint64_t l, double delta_k, const py::kwargs& kw) {
        return ReportDict(Thm1Sufficient(g, ComputeSpectra(g), l, delta_k, Constants(kw)));
      },
      py::arg("graph"), py::arg("comparisons"), py::arg("delta_k"));
  m.def(
      "thm2_necessary",
      [](Index n, std::uint64_t edges, std::uint64_t l, double delta_k, const py::kwargs& kw) {
        return ReportDict(Thm2Necessary(n, edges, l, delta_k, Constants(kw)));
      },
      py::arg("n"), py::arg("num_edges"), py::arg("comparisons"), py::arg("delta_k"));
  m.def(
      "thm3_er_sufficient",
      [](Index n, double p, std::uint64_t l, double delta_k, const py::kwargs& kw) {
        return ReportDict(Thm3ErSufficient(n, p, l, delta_k, Constants(kw)));
      },
      py::arg("n"), py::arg("p"), py::arg("comparisons"), py::arg("delta_k"));
  m.def("degree_concentration_check", &DegreeConcentrationCheck, py::arg("graph"),
        py::arg("q"));

  m.def(
      "run_sweep",
      [](const py::dict& overrides, const std::string& preset) {
        ExperimentConfig config =
            preset == "sparse" ? ExperimentConfig::Sparse() : ExperimentConfig::Dense();
        if (preset != "sparse" && preset != "dense") {
          throw py::value_error("preset must be 'dense' or 'sparse'");
        }
        for (const auto& [key, value] : overrides) {
          ApplyConfigValue(config, key.cast<std::string>(), ConfigValue(value));
        }
        ValidateConfig(config);
        SweepResult result;
        {
          py::gil_scoped_release release;
          result = RunSweep(config);
        }
        py::list rows;
        for (const auto& a : result.aggregates) {
          py::dict row;
          row["method"] = std::string(MethodName(a.method));
          row["L"] = a.comparisons;
          row["trials"] = a.trials;
          row["failed"] = a.failed;
          row["mean_linf"] = a.mean_linf;
          row["mean_l2"] = a.mean_l2;
          row["success_rate"] = a.success_rate;
          rows.append(row);
        }
        std::ostringstream csv;
        WriteCsv(result, csv);
        py::dict out;
        out["aggregates"] = rows;
        out["csv"] = csv.str();
        out["failures"] = result.failures.size();
        return out;
      },
      py::arg("config") = py::dict(), py::arg("preset") = "dense");
}
