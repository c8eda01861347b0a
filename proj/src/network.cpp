#include "ustlab/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ustlab {

namespace {

void check_connected(int n, const std::vector<Edge>& edges) {
  if (n <= 0) throw std::invalid_argument("network must have at least one vertex");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : edges) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  if (count != n) throw std::invalid_argument("network is not connected");
}

}  // namespace

Network Network::from_edges(int vertex_count, std::vector<Edge> edges) {
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw std::invalid_argument("edge weights must be positive and finite");
  }
  check_connected(vertex_count, edges);

  Network g;
  g.n_ = vertex_count;
  g.edges_ = std::move(edges);

  std::vector<int> counts(static_cast<std::size_t>(vertex_count) + 1, 0);
  for (const Edge& e : g.edges_) {
    ++counts[static_cast<std::size_t>(e.u) + 1];
    if (e.v != e.u) ++counts[static_cast<std::size_t>(e.v) + 1];
  }
  g.offsets_.assign(counts.begin(), counts.end());
  for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];

  g.arcs_.resize(static_cast<std::size_t>(g.offsets_.back()));
  std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edges_[static_cast<std::size_t>(id)];
    g.arcs_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.u)]++)] = {e.v, id, e.weight};
    if (e.v != e.u)
      g.arcs_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.v)]++)] = {e.u, id, e.weight};
  }

  g.wdeg_.assign(static_cast<std::size_t>(vertex_count), 0.0);
  g.cumw_.resize(g.arcs_.size());
  g.unit_weights_ = true;
  for (int v = 0; v < vertex_count; ++v) {
    double acc = 0.0;
    for (int i = g.offsets_[static_cast<std::size_t>(v)]; i < g.offsets_[static_cast<std::size_t>(v) + 1]; ++i) {
      acc += g.arcs_[static_cast<std::size_t>(i)].weight;
      g.cumw_[static_cast<std::size_t>(i)] = acc;
      if (g.arcs_[static_cast<std::size_t>(i)].weight != 1.0) g.unit_weights_ = false;
    }
    g.wdeg_[static_cast<std::size_t>(v)] = acc;
  }
  g.total_weight_ = 0.0;
  for (double d : g.wdeg_) g.total_weight_ += d;
  return g;
}

double Network::volume(std::span<const int> vertices) const {
  double vol = 0.0;
  for (int v : vertices) vol += wdeg_[static_cast<std::size_t>(v)];
  return vol;
}

std::vector<double> Network::stationary() const {
  std::vector<double> pi(wdeg_);
  for (double& p : pi) p /= total_weight_;
  return pi;
}

double Network::balance() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double d : wdeg_) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi / lo;
}

std::string Network::to_edge_list() const {
  std::string out;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d %d\n", n_, edge_count());
  out += buf;
  for (const Edge& e : edges_) {
    if (e.weight == 1.0) {
      std::snprintf(buf, sizeof buf, "%d %d 1\n", e.u, e.v);
    } else {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", e.u, e.v, e.weight);
    }
    out += buf;
  }
  return out;
}

Network Network::from_edge_list(const std::string& text) {
  std::istringstream in(text);
  int n = 0, m = 0;
  if (!(in >> n >> m)) throw std::invalid_argument("edge list: missing 'n m' header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Edge e;
    if (!(in >> e.u >> e.v >> e.weight)) throw std::invalid_argument("edge list: truncated edge line");
    edges.push_back(e);
  }
  return from_edges(n, std::move(edges));
}

VertexSet VertexSet::of(const Network& g, std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (int v : ids) {
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("vertex id out of range");
  }
  VertexSet s;
  s.volume_ = g.volume(ids);
  s.ids_ = std::move(ids);
  return s;
}

VertexSet VertexSet::single(const Network& g, int v) { return of(g, {v}); }

bool VertexSet::contains(int v) const {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

Network contract(const Network& g, const VertexSet& w) {
  if (w.empty()) throw std::invalid_argument("contract: vertex set is empty");
  const int n = g.vertex_count();
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  for (int v : w.ids()) map[static_cast<std::size_t>(v)] = 0;
  int next = 1;
  for (int v = 0; v < n; ++v) {
    if (map[static_cast<std::size_t>(v)] < 0) map[static_cast<std::size_t>(v)] = next++;
  }
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) {
    e.u = map[static_cast<std::size_t>(e.u)];
    e.v = map[static_cast<std::size_t>(e.v)];
  }
  Network out = Network::from_edges(next, std::move(edges));
  out.contraction_map_ = std::move(map);
  return out;
}

Network make_sunny(const Network& g, double beta) {
  if (!g.unit_weights()) throw std::invalid_argument("make_sunny: base graph must have unit weights");
  const int n = g.vertex_count();
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  if (!(beta > 0.0) || !(2.0 * beta * beta < sqrt_n))
    throw std::invalid_argument("make_sunny: need 0 < beta and beta^2 < sqrt(n)/2");
  std::vector<Edge> edges = g.edges();
  const int rho = n;
  for (int u = 0; u < n; ++u) {
    const double w = 2.0 * beta * beta * g.weighted_degree(u) / (sqrt_n - 2.0 * beta * beta);
    edges.push_back({u, rho, w});
  }
  return Network::from_edges(n + 1, std::move(edges));
}

}  // namespace ustlab
