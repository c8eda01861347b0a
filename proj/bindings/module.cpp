#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ustlab/exact.hpp"
#include "ustlab/experiments.hpp"
#include "ustlab/forest.hpp"
#include "ustlab/generators.hpp"
#include "ustlab/interlacement.hpp"
#include "ustlab/loop_erasure.hpp"
#include "ustlab/network.hpp"
#include "ustlab/rng.hpp"
#include "ustlab/sampler.hpp"
#include "ustlab/stats.hpp"
#include "ustlab/walk.hpp"

namespace py = pybind11;
using namespace ustlab;

namespace {

Walk as_walk(const std::vector<int>& vertices) {
  Walk w;
  w.vertices = vertices;
  return w;
}

WalkLaw make_law(const std::string& backend, long samples, std::uint64_t seed) {
  WalkLaw law;
  law.backend = backend == "monte-carlo" ? WalkLaw::Backend::monte_carlo : WalkLaw::Backend::exact;
  law.samples = samples;
  law.seed = seed;
  return law;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Uniform spanning tree samplers, loop-erased walks, interlacement forests and "
            "potential-theoretic estimators on weighted networks";

  py::register_exception<CoverageExhausted>(m, "CoverageExhausted");

  py::class_<Network>(m, "Network")
      .def_static("from_edges",
                  [](int n, const std::vector<std::tuple<int, int, double>>& edges) {
                    std::vector<Edge> es;
                    es.reserve(edges.size());
                    for (const auto& [u, v, w] : edges) es.push_back({u, v, w});
                    return Network::from_edges(n, std::move(es));
                  },
                  py::arg("vertex_count"), py::arg("edges"))
      .def_static("from_edge_list", &Network::from_edge_list)
      .def_property_readonly("vertex_count", &Network::vertex_count)
      .def_property_readonly("edge_count", &Network::edge_count)
      .def("edges",
           [](const Network& g) {
             std::vector<std::tuple<int, int, double>> out;
             for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v, e.weight);
             return out;
           })
      .def("degree", &Network::degree)
      .def("weighted_degree", &Network::weighted_degree)
      .def("stationary", [](const Network& g) { return g.stationary(); })
      .def("total_weight", &Network::total_weight)
      .def("balance", &Network::balance)
      .def("unit_weights", &Network::unit_weights)
      .def("contraction_map", &Network::contraction_map)
      .def("to_edge_list", &Network::to_edge_list);

  m.def("contract", [](const Network& g, const std::vector<int>& w) {
    return contract(g, VertexSet::of(g, w));
  });
  m.def("make_sunny", &make_sunny, py::arg("g"), py::arg("beta"));
  m.def("sun_vertex", &sun_vertex);

  m.def("make_torus", &make_torus, py::arg("d"), py::arg("m"));
  m.def("make_hypercube", &make_hypercube, py::arg("m"));
  m.def("make_random_regular", &make_random_regular, py::arg("n"), py::arg("k"), py::arg("seed"));
  m.def("make_complete", &make_complete);
  m.def("make_cycle", &make_cycle);
  m.def("make_path", &make_path);
  m.def("make_star", &make_star);
  m.def("make_random_connected", &make_random_connected, py::arg("n"), py::arg("extra_edges"),
        py::arg("seed"));
  m.def("make_negative_control",
        [](const std::string& kind, int n) { return make_negative_control(control_kind_from_string(kind), n); },
        py::arg("kind"), py::arg("n"));
  m.def("make_family", &make_family, py::arg("family"), py::arg("n"), py::arg("seed"));

  m.def("loop_erase", [](const std::vector<int>& walk) {
    const LoopErasure le = loop_erase(as_walk(walk));
    return py::make_tuple(le.path, le.lambda);
  });
  m.def("cut_times", [](const std::vector<int>& walk) { return cut_times(as_walk(walk)); });
  m.def("cut_points", [](const std::vector<int>& walk) { return cut_points(as_walk(walk)); });
  m.def("segment_decomposition", [](const std::vector<int>& walk, int r, int s) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    for (const Segment& seg : segment_decomposition(as_walk(walk), r, s))
      out.emplace_back(seg.buffer_run.vertices, seg.core_run.vertices);
    return out;
  });
  m.def("run_lazy_walk", [](const Network& g, int from, int steps, std::uint64_t seed) {
    Rng rng(seed);
    return run_lazy_walk(g, from, steps, rng).vertices;
  });

  m.def("transition_probability", &transition_probability);
  m.def("transition_distribution", &transition_distribution);
  m.def("uniform_mixing_time", &uniform_mixing_time);
  m.def("tv_distance", &tv_distance);
  m.def("bubble_sum", [](const Network& g) {
    const BubbleSums b = bubble_sum(g);
    py::dict d;
    d["value"] = b.value;
    d["truncated_sqrt"] = b.truncated_sqrt;
    d["t_mix"] = b.t_mix;
    return d;
  });
  m.def("capacity",
        [](const Network& g, const std::vector<int>& u, long r, const std::string& backend, long samples,
           std::uint64_t seed) {
          const Estimate e = capacity(g, u, r, make_law(backend, samples, seed));
          return py::make_tuple(e.value, e.se, e.samples);
        },
        py::arg("g"), py::arg("u_set"), py::arg("r"), py::arg("backend") = "exact",
        py::arg("samples") = 20000, py::arg("seed") = 1);
  m.def("closeness",
        [](const Network& g, const std::vector<int>& u1, const std::vector<int>& u2, long r,
           const std::string& backend, long samples, std::uint64_t seed) {
          const Estimate e = closeness(g, u1, u2, r, make_law(backend, samples, seed));
          return py::make_tuple(e.value, e.se, e.samples);
        },
        py::arg("g"), py::arg("u1"), py::arg("u2"), py::arg("r"), py::arg("backend") = "exact",
        py::arg("samples") = 20000, py::arg("seed") = 1);

  py::class_<GreenMatrix>(m, "GreenMatrix")
      .def("at", &GreenMatrix::at)
      .def("row_sum", &GreenMatrix::row_sum);
  m.def("green_killed", &green_killed);
  m.def("m_w", py::overload_cast<const Network&, const std::vector<int>&, const std::vector<int>&>(&m_w));
  m.def("effective_conductance", &effective_conductance);
  m.def("w_bubble_sum", &w_bubble_sum, py::arg("g"), py::arg("w_set"), py::arg("tol") = 1e-9);
  m.def("target_time", &target_time);
  m.def("target_time_all", &target_time_all);
  m.def("hitting_times", &hitting_times);
  m.def("hitting_probability_lower", [](const Network& g, int u, const std::vector<int>& u_set, long t, long r) {
    const HittingLowerReport rep = hitting_probability_lower(g, u, u_set, t, r);
    py::dict d;
    d["lhs"] = rep.lhs;
    d["cap_r"] = rep.cap_r;
    d["inequality_holds"] = rep.inequality_holds;
    d["hypothesis_ok"] = rep.hypothesis_ok;
    d["t_mix"] = rep.t_mix;
    return d;
  });

  py::class_<OrientedForest>(m, "OrientedForest")
      .def_property_readonly("vertex_count", &OrientedForest::vertex_count)
      .def("parent", &OrientedForest::parent)
      .def("parent_edge", &OrientedForest::parent_edge)
      .def("is_root", &OrientedForest::is_root)
      .def_property_readonly("roots", &OrientedForest::roots)
      .def("depth", &OrientedForest::depth)
      .def("root_of", &OrientedForest::root_of)
      .def("past", &OrientedForest::past)
      .def("future", &OrientedForest::future, py::arg("v"), py::arg("exclude_root") = false)
      .def("height", &OrientedForest::height)
      .def("height_of_past", &OrientedForest::height_of_past)
      .def("ball", &OrientedForest::ball)
      .def("tree_diameter", &OrientedForest::tree_diameter)
      .def("quotient_diameter", &OrientedForest::quotient_diameter)
      .def("path_between", &OrientedForest::path_between)
      .def("edge_ids", &OrientedForest::edge_ids)
      .def("is_spanning_tree_of", &OrientedForest::is_spanning_tree_of)
      .def("serialize", &OrientedForest::serialize)
      .def_static("parse", &OrientedForest::parse);

  m.def("wilson",
        [](const Network& g, const std::vector<int>& roots, std::uint64_t seed,
           const std::optional<std::vector<int>>& order, bool lazy) {
          const VertexSet rs = VertexSet::of(g, roots);
          return wilson(g, rs, seed, order ? &*order : nullptr, lazy);
        },
        py::arg("g"), py::arg("root_set"), py::arg("seed"), py::arg("vertex_order") = py::none(),
        py::arg("lazy") = false);
  m.def("aldous_broder", &aldous_broder, py::arg("g"), py::arg("start"), py::arg("seed"),
        py::arg("lazy") = false);
  m.def("ust_path", &ust_path, py::arg("g"), py::arg("u"), py::arg("v"), py::arg("seed"),
        py::arg("lazy") = true);
  m.def("spanning_tree_count", [](const Network& g) {
    const TreeCount c = spanning_tree_count(g);
    return py::make_tuple(c.decimal, c.approx, c.exact);
  });
  m.def("enumerate_spanning_trees", &enumerate_spanning_trees);
  m.def("tree_weight", &tree_weight);

  py::class_<InterlacementSample>(m, "InterlacementSample")
      .def_readonly("window_a", &InterlacementSample::window_a)
      .def_readonly("window_b", &InterlacementSample::window_b)
      .def_readonly("w_set", &InterlacementSample::w_set)
      .def("events", [](const InterlacementSample& s) {
        std::vector<std::pair<double, std::vector<int>>> out;
        for (const auto& ev : s.events) out.emplace_back(ev.time, ev.trajectory.vertices);
        return out;
      });
  m.def("sample_trajectory", [](const Network& g, const std::vector<int>& w, std::uint64_t seed) {
    Rng rng(seed);
    return sample_trajectory(g, VertexSet::of(g, w), rng).vertices;
  });
  m.def("sample_window", [](const Network& g, const std::vector<int>& w, double a, double b,
                            std::uint64_t seed) { return sample_window(g, VertexSet::of(g, w), a, b, seed); });
  m.def("sample_window_covering",
        [](const Network& g, const std::vector<int>& w, double a, double cover_from, std::uint64_t seed) {
          return sample_window_covering(g, VertexSet::of(g, w), a, cover_from, seed);
        });
  m.def("ab_forest", &ab_forest, py::arg("sample"), py::arg("g"), py::arg("t"));
  m.def("ab_forest_auto", [](const Network& g, const std::vector<int>& w, double t, std::uint64_t seed) {
    return ab_forest_auto(g, VertexSet::of(g, w), t, seed);
  });
  m.def("sigma", &sigma);
  m.def("first_entry_edge", [](const InterlacementSample& s, const Network& g, int v, double t) {
    const DirectedEdge e = first_entry_edge(s, g, v, t);
    return py::make_tuple(e.from, e.to, e.edge_id);
  });
  m.def("time_shift", &time_shift);
  m.def("interlacement_set", &interlacement_set);
  m.def("event_log_csv", &event_log_csv);
  m.def("past_height_tail",
        [](const Network& g, const std::vector<int>& w, int u, const std::vector<int>& ells, long reps,
           std::uint64_t seed, bool via_interlacement) {
          const TailTable t = past_height_tail(g, VertexSet::of(g, w), u, ells, reps, seed, via_interlacement);
          py::dict d;
          d["ells"] = t.ells;
          d["prob"] = t.prob;
          d["se"] = t.se;
          d["reps"] = t.reps;
          return d;
        },
        py::arg("g"), py::arg("w_set"), py::arg("u"), py::arg("ells"), py::arg("reps"), py::arg("seed"),
        py::arg("via_interlacement") = false);
  m.def("ball_growth", [](const Network& g, const std::vector<int>& w, int u, int ell, long reps,
                          std::uint64_t seed) {
    const BallGrowth b = ball_growth(g, VertexSet::of(g, w), u, ell, reps, seed);
    return py::make_tuple(b.mean, b.se, b.bound);
  });

  py::class_<ExperimentSpec>(m, "ExperimentSpec")
      .def(py::init<>())
      .def_readwrite("experiment", &ExperimentSpec::experiment)
      .def_readwrite("family", &ExperimentSpec::family)
      .def_readwrite("sizes", &ExperimentSpec::sizes)
      .def_readwrite("replicas", &ExperimentSpec::replicas)
      .def_readwrite("seed", &ExperimentSpec::seed)
      .def_readwrite("alpha", &ExperimentSpec::alpha)
      .def_readwrite("theta", &ExperimentSpec::theta)
      .def_readwrite("beta_grid", &ExperimentSpec::beta_grid)
      .def_readwrite("ell_grid", &ExperimentSpec::ell_grid)
      .def_readwrite("capacity_backend", &ExperimentSpec::capacity_backend)
      .def_readwrite("mc_samples", &ExperimentSpec::mc_samples)
      .def_readwrite("r_override", &ExperimentSpec::r_override)
      .def_readwrite("s_override", &ExperimentSpec::s_override)
      .def_readwrite("theta", &ExperimentSpec::theta)
      .def_readwrite("d_max", &ExperimentSpec::d_max)
      .def_readwrite("threads", &ExperimentSpec::threads)
      .def("run_time", &ExperimentSpec::run_time)
      .def("buffer_time", &ExperimentSpec::buffer_time)
      .def("to_json", &ExperimentSpec::to_json)
      .def_static("from_json", &ExperimentSpec::from_json);

  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def("to_csv", &ExperimentResult::to_csv)
      .def_static("from_csv", &ExperimentResult::from_csv)
      .def("passed", &ExperimentResult::passed)
      .def_readonly("violations", &ExperimentResult::violations);
  m.def("run_experiment", &run_experiment);

  py::class_<AuditReport>(m, "AuditReport")
      .def_readonly("balance", &AuditReport::balance)
      .def_readonly("balance_pass", &AuditReport::balance_pass)
      .def_readonly("t_mix", &AuditReport::t_mix)
      .def_readonly("mixing_threshold", &AuditReport::mixing_threshold)
      .def_readonly("mixing_pass", &AuditReport::mixing_pass)
      .def_readonly("mixing_estimated", &AuditReport::mixing_estimated)
      .def_readonly("bubble", &AuditReport::bubble)
      .def_readonly("bubble_truncated", &AuditReport::bubble_truncated)
      .def_readonly("escaping_pass", &AuditReport::escaping_pass)
      .def("to_text", &AuditReport::to_text);
  m.def("run_assumption_audit", &run_assumption_audit, py::arg("g"), py::arg("alpha") = 0.1,
        py::arg("theta") = 20.0, py::arg("d_max") = 8.0);
  m.def("complete_nonintersection_exact", &complete_nonintersection_exact);

  m.def("chi_square_gof_p", &chi_square_gof_p);
  m.def("chi_square_two_sample_p", &chi_square_two_sample_p);
  m.def("ks_two_sample_p", &ks_two_sample_p);
  m.def("split_seed", &split_seed);
}
