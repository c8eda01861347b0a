#include "ustlab/interlacement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ustlab/exact.hpp"
#include "ustlab/sampler.hpp"
#include "ustlab/stats.hpp"
#include "ustlab/walk.hpp"

namespace ustlab {

WTrajectory sample_trajectory(const Network& g, const VertexSet& w, Rng& rng) {
  if (w.empty()) throw std::invalid_argument("sample_trajectory: empty W");
  // Start vertex with probability d(u0)/Vol(W).
  const double x = rng.uniform01() * w.volume();
  double acc = 0.0;
  int start = w.ids().back();
  for (int v : w.ids()) {
    acc += g.weighted_degree(v);
    if (x < acc) {
      start = v;
      break;
    }
  }
  WTrajectory out;
  out.vertices.push_back(start);
  int cur = start;
  do {
    int eid = -1;
    cur = uniform_step_edge(g, cur, rng, &eid);
    out.vertices.push_back(cur);
    out.edge_ids.push_back(eid);
  } while (!w.contains(cur));
  return out;
}

InterlacementSample sample_window(const Network& g, const VertexSet& w, double a, double b,
                                  std::uint64_t seed) {
  if (!(a < b)) throw std::invalid_argument("sample_window: need a < b");
  InterlacementSample out;
  out.window_a = a;
  out.window_b = b;
  out.w_set = w.ids();
  Rng rng(seed);
  // Rate-1 arrivals: exponential gaps give strictly increasing times.
  double t = a + rng.exponential();
  while (t <= b) {
    out.events.push_back({t, sample_trajectory(g, w, rng)});
    t += rng.exponential();
  }
  return out;
}

namespace {

bool in_sorted(const std::vector<int>& sorted, int v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

OrientedForest ab_forest(const InterlacementSample& sample, const Network& g, double t) {
  const int n = g.vertex_count();
  std::vector<int> parent(static_cast<std::size_t>(n), -2);
  std::vector<int> parent_edge(static_cast<std::size_t>(n), OrientedForest::kRoot);
  int unassigned = n;
  for (int v : sample.w_set) {
    parent[static_cast<std::size_t>(v)] = OrientedForest::kRoot;
    --unassigned;
  }
  for (const auto& ev : sample.events) {
    if (ev.time < t) continue;
    if (unassigned == 0) break;
    const auto& traj = ev.trajectory;
    for (int i = 0; i < traj.length(); ++i) {
      const int to = traj.vertices[static_cast<std::size_t>(i) + 1];
      if (parent[static_cast<std::size_t>(to)] == -2) {
        parent[static_cast<std::size_t>(to)] = traj.vertices[static_cast<std::size_t>(i)];
        parent_edge[static_cast<std::size_t>(to)] = traj.edge_ids[static_cast<std::size_t>(i)];
        --unassigned;
      }
    }
  }
  if (unassigned > 0) throw CoverageExhausted();
  return OrientedForest(std::move(parent), std::move(parent_edge));
}

InterlacementSample sample_window_covering(const Network& g, const VertexSet& w, double a,
                                           double cover_from, std::uint64_t seed) {
  if (cover_from < a) throw std::invalid_argument("sample_window_covering: cover_from >= a required");
  InterlacementSample out;
  out.window_a = a;
  out.w_set = w.ids();
  Rng rng(seed);
  std::vector<char> touched(static_cast<std::size_t>(g.vertex_count()), 0);
  int missing = g.vertex_count() - w.size();
  for (int v : w.ids()) touched[static_cast<std::size_t>(v)] = 1;
  double t = a;
  while (missing > 0) {
    t += rng.exponential();
    out.events.push_back({t, sample_trajectory(g, w, rng)});
    if (t < cover_from) continue;
    for (int v : out.events.back().trajectory.vertices) {
      if (!touched[static_cast<std::size_t>(v)]) {
        touched[static_cast<std::size_t>(v)] = 1;
        --missing;
      }
    }
  }
  out.window_b = t;
  return out;
}

OrientedForest ab_forest_auto(const Network& g, const VertexSet& w, double t, std::uint64_t seed) {
  return ab_forest(sample_window_covering(g, w, t, t, seed), g, t);
}

double sigma(const InterlacementSample& sample, const Network& g, int v, double t) {
  (void)g;
  const bool v_in_w = in_sorted(sample.w_set, v);
  for (const auto& ev : sample.events) {
    if (ev.time < t) continue;
    const auto& verts = ev.trajectory.vertices;
    if (v_in_w) {
      if (verts.front() == v) return ev.time;
    } else {
      for (std::size_t i = 1; i + 1 < verts.size(); ++i)
        if (verts[i] == v) return ev.time;
    }
  }
  throw CoverageExhausted();
}

DirectedEdge first_entry_edge(const InterlacementSample& sample, const Network& g, int v, double t) {
  (void)g;
  if (in_sorted(sample.w_set, v))
    throw std::invalid_argument("first_entry_edge: defined for v outside W");
  for (const auto& ev : sample.events) {
    if (ev.time < t) continue;
    const auto& traj = ev.trajectory;
    for (int i = 0; i < traj.length(); ++i)
      if (traj.vertices[static_cast<std::size_t>(i) + 1] == v)
        return {traj.vertices[static_cast<std::size_t>(i)], v, traj.edge_ids[static_cast<std::size_t>(i)]};
  }
  throw CoverageExhausted();
}

InterlacementSample time_shift(const InterlacementSample& sample, double x) {
  InterlacementSample out = sample;
  out.window_a += x;
  out.window_b += x;
  for (auto& ev : out.events) ev.time += x;
  return out;
}

std::vector<int> interlacement_set(const InterlacementSample& sample, const Network& g, double a,
                                   double b) {
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    try {
      if (sigma(sample, g, v, a) <= b) out.push_back(v);
    } catch (const CoverageExhausted&) {
      if (b < sample.window_b) continue;  // genuinely absent up to b
      throw;
    }
  }
  return out;
}

std::string event_log_csv(const InterlacementSample& sample) {
  std::string out = "timestamp,trajectory\n";
  char buf[64];
  for (const auto& ev : sample.events) {
    std::snprintf(buf, sizeof buf, "%.17g,", ev.time);
    out += buf;
    for (std::size_t i = 0; i < ev.trajectory.vertices.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(ev.trajectory.vertices[i]);
    }
    out += '\n';
  }
  return out;
}

TailTable past_height_tail(const Network& g, const VertexSet& w, int u, const std::vector<int>& ells,
                           long reps, std::uint64_t seed, bool via_interlacement) {
  std::vector<int> roots = w.ids();
  roots.push_back(u);
  const VertexSet wu = VertexSet::of(g, std::move(roots));
  std::vector<long> counts(ells.size(), 0);
  for (long rep = 0; rep < reps; ++rep) {
    const std::uint64_t s = split_seed(seed, static_cast<std::uint64_t>(rep));
    const OrientedForest f =
        via_interlacement ? ab_forest_auto(g, wu, 0.0, s) : wilson(g, wu, s);
    const int h = f.height_of_past(u);
    for (std::size_t i = 0; i < ells.size(); ++i)
      if (h >= ells[i]) ++counts[i];
  }
  TailTable out;
  out.ells = ells;
  out.reps = reps;
  for (std::size_t i = 0; i < ells.size(); ++i) {
    const double p = static_cast<double>(counts[i]) / static_cast<double>(reps);
    out.prob.push_back(p);
    out.se.push_back(std::sqrt(p * (1.0 - p) / static_cast<double>(reps)));
  }
  return out;
}

BallGrowth ball_growth(const Network& g, const VertexSet& w, int u, int ell, long reps,
                       std::uint64_t seed) {
  if (!w.contains(u)) throw std::invalid_argument("ball_growth: u must lie in W");
  std::vector<double> sizes;
  sizes.reserve(static_cast<std::size_t>(reps));
  for (long rep = 0; rep < reps; ++rep) {
    const OrientedForest f = wilson(g, w, split_seed(seed, static_cast<std::uint64_t>(rep)));
    sizes.push_back(static_cast<double>(f.ball(u, ell).size()));
  }
  BallGrowth out;
  const auto ms = mean_stderr(sizes);
  out.mean = ms.first;
  out.se = ms.second;
  out.bound = 8.0 * g.balance() * static_cast<double>(ell) * w_bubble_sum(g, w.ids());
  return out;
}

}  // namespace ustlab
