#include "ustlab/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ustlab {

Walk Walk::slice(double a, double b) const {
  const int lo = std::max(0, static_cast<int>(std::ceil(a)));
  const int hi = std::min(length(), static_cast<int>(std::floor(b)));
  Walk out;
  if (lo <= hi && !vertices.empty())
    out.vertices.assign(vertices.begin() + lo, vertices.begin() + hi + 1);
  return out;
}

Walk Walk::slice_excl(double a, double b) const {
  const double end = (std::floor(b) == b) ? b - 1.0 : b;
  return slice(a, end);
}

Walk Walk::reversed() const {
  Walk out = *this;
  std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

bool Walk::valid_on(const Network& g) const {
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const int a = vertices[i], b = vertices[i + 1];
    if (a == b) continue;  // laziness
    bool adjacent = false;
    for (const auto& arc : g.neighbors(a))
      if (arc.to == b) {
        adjacent = true;
        break;
      }
    if (!adjacent) return false;
  }
  return true;
}

namespace {

int weighted_arc_pick(const Network& g, int v, Rng& rng) {
  const auto arcs = g.neighbors(v);
  if (arcs.empty()) throw std::logic_error("walk reached an isolated vertex");
  if (g.unit_weights()) return static_cast<int>(rng.below(arcs.size()));
  const auto cum = g.cumulative_weights(v);
  const double x = rng.uniform01() * cum.back();
  const auto it = std::upper_bound(cum.begin(), cum.end(), x);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cum.begin(), static_cast<std::ptrdiff_t>(cum.size()) - 1));
}

}  // namespace

int lazy_step(const Network& g, int v, Rng& rng) {
  if (rng.half()) return v;
  return g.neighbors(v)[static_cast<std::size_t>(weighted_arc_pick(g, v, rng))].to;
}

int uniform_step(const Network& g, int v, Rng& rng) {
  return g.neighbors(v)[static_cast<std::size_t>(weighted_arc_pick(g, v, rng))].to;
}

int uniform_step_edge(const Network& g, int v, Rng& rng, int* edge_id) {
  const auto& arc = g.neighbors(v)[static_cast<std::size_t>(weighted_arc_pick(g, v, rng))];
  if (edge_id) *edge_id = arc.edge;
  return arc.to;
}

Walk run_lazy_walk(const Network& g, int from, int steps, Rng& rng) {
  Walk w;
  w.vertices.reserve(static_cast<std::size_t>(steps) + 1);
  w.vertices.push_back(from);
  int cur = from;
  for (int t = 0; t < steps; ++t) {
    cur = lazy_step(g, cur, rng);
    w.vertices.push_back(cur);
  }
  return w;
}

Walk run_lazy_walk_until(const Network& g, int from, const std::vector<char>& target_mask, Rng& rng,
                         long long max_steps) {
  Walk w;
  w.vertices.push_back(from);
  int cur = from;
  long long t = 0;
  while (!target_mask[static_cast<std::size_t>(cur)]) {
    if (max_steps >= 0 && t >= max_steps) throw std::runtime_error("run_lazy_walk_until: step budget exceeded");
    cur = lazy_step(g, cur, rng);
    w.vertices.push_back(cur);
    ++t;
  }
  return w;
}

int sample_stationary(const Network& g, Rng& rng) {
  const double x = rng.uniform01() * g.total_weight();
  double acc = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    acc += g.weighted_degree(v);
    if (x < acc) return v;
  }
  return g.vertex_count() - 1;
}

std::vector<char> make_mask(const Network& g, const std::vector<int>& vertices) {
  std::vector<char> mask(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int v : vertices) mask[static_cast<std::size_t>(v)] = 1;
  return mask;
}

}  // namespace ustlab
