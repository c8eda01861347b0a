#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ustlab {

// One undirected edge. Edge identity is its index in Network::edges();
// contraction keeps those indices stable so trees sampled on G/W can be
// mapped back to edges of G.
struct Edge {
  int u = 0;
  int v = 0;
  double weight = 1.0;
};

// Immutable weighted multigraph. Vertices are dense ints in [0, n).
// Self-loops are stored once in the adjacency of their vertex and
// contribute their weight once to the weighted degree; a self-loop step is
// an ordinary weighted move that stays put, distinct from laziness.
class Network {
 public:
  struct Arc {
    int to = 0;
    int edge = 0;
    double weight = 1.0;
  };

  // Validates connectivity, positive finite weights and id ranges.
  static Network from_edges(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }

  std::span<const Arc> neighbors(int v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }
  // Number of adjacency slots at v (self-loop counts once).
  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
  double weighted_degree(int v) const { return wdeg_[v]; }
  const std::vector<double>& weighted_degrees() const { return wdeg_; }

  // Sum of weighted degrees; equals 2|E| on a loopless unit-weight graph.
  double total_weight() const { return total_weight_; }
  double volume(std::span<const int> vertices) const;

  double stationary(int v) const { return wdeg_[v] / total_weight_; }
  std::vector<double> stationary() const;

  bool unit_weights() const { return unit_weights_; }
  // Balance parameter: max/min weighted degree.
  double balance() const;

  // Filled by contract(): original vertex id -> vertex id in this network.
  const std::vector<int>& contraction_map() const { return contraction_map_; }

  // Cumulative edge weights per vertex, for O(log deg) weighted steps.
  std::span<const double> cumulative_weights(int v) const {
    return {cumw_.data() + offsets_[v], cumw_.data() + offsets_[v + 1]};
  }

  // Edge-list text format: header "n m", then one "u v weight" line per
  // edge. Unit weights are printed as "1" so dump/load round-trips
  // bit-exactly.
  std::string to_edge_list() const;
  static Network from_edge_list(const std::string& text);

 private:
  Network() = default;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_;
  std::vector<Arc> arcs_;
  std::vector<double> cumw_;
  std::vector<double> wdeg_;
  double total_weight_ = 0.0;
  bool unit_weights_ = true;
  std::vector<int> contraction_map_;

  friend Network contract(const Network&, const class VertexSet&);
};

// Sorted unique vertex ids with cached volume.
class VertexSet {
 public:
  static VertexSet of(const Network& g, std::vector<int> ids);
  static VertexSet single(const Network& g, int v);

  const std::vector<int>& ids() const { return ids_; }
  double volume() const { return volume_; }
  bool contains(int v) const;
  bool empty() const { return ids_.empty(); }
  int size() const { return static_cast<int>(ids_.size()); }

 private:
  std::vector<int> ids_;
  double volume_ = 0.0;
};

// G/W: W merged into super-vertex 0, remaining vertices relabelled in
// increasing original order. All edge ids survive; edges internal to W
// become self-loops on the super-vertex.
Network contract(const Network& g, const VertexSet& w);

// The sunny network: a new vertex rho = n joined to every vertex of g with
// weight 2 beta^2 d(u) / (sqrt(n) - 2 beta^2), so a lazy step moves to rho
// with probability exactly beta^2 / sqrt(n). Requires unit weights on g and
// beta^2 < sqrt(n)/2.
Network make_sunny(const Network& g, double beta);
inline int sun_vertex(const Network& sunny) { return sunny.vertex_count() - 1; }

}  // namespace ustlab
