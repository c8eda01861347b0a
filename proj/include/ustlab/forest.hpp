#pragma once

#include <string>
#include <vector>

#include "ustlab/network.hpp"

namespace ustlab {

// Parent-pointer forest oriented toward a distinguished root set. parent[v]
// is kRoot for roots; parent_edge[v] is the network edge realizing the
// parent arc (kRoot for roots).
class OrientedForest {
 public:
  static constexpr int kRoot = -1;

  OrientedForest() = default;
  // Validates acyclicity and that every non-root reaches a root.
  OrientedForest(std::vector<int> parent, std::vector<int> parent_edge);

  int vertex_count() const { return static_cast<int>(parent_.size()); }
  int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
  int parent_edge(int v) const { return parent_edge_[static_cast<std::size_t>(v)]; }
  bool is_root(int v) const { return parent_[static_cast<std::size_t>(v)] == kRoot; }
  const std::vector<int>& roots() const { return roots_; }

  // Number of parent edges to v's root.
  int depth(int v) const { return depth_[static_cast<std::size_t>(v)]; }
  int root_of(int v) const;

  // Past of v: vertices with a directed path to v (v included).
  std::vector<int> past(int v) const;
  // Future of v: the directed path from v to its root (v included); the
  // hatted variant drops the final root vertex.
  std::vector<int> future(int v, bool exclude_root = false) const;
  // Longest directed path length within the past of v.
  int height_of_past(int v) const;
  // Longest directed path length in the whole forest (max depth).
  int height() const;

  // Tree ball: vertices within undirected forest distance `radius` of v.
  std::vector<int> ball(int v, int radius) const;

  // Diameter of a single tree; throws if the forest has more than one
  // nontrivial component.
  int tree_diameter() const;
  // Diameter of the quotient tree in which all roots are glued into one
  // vertex, i.e. the diameter of the spanning tree of G/roots.
  int quotient_diameter() const;

  // Unique tree path between two vertices of the same component.
  std::vector<int> path_between(int a, int b) const;

  // Edge ids present in the forest (sorted).
  std::vector<int> edge_ids() const;

  bool is_spanning_tree_of(const Network& g) const;

  // Text format: one "v parent edge_id" line per vertex; roots use -1 -1.
  std::string serialize() const;
  static OrientedForest parse(const std::string& text);

  friend OrientedForest forest_from_edges(const Network& g, const std::vector<int>& edge_ids,
                                          const std::vector<int>& roots);

 private:
  void index();

  std::vector<int> parent_;
  std::vector<int> parent_edge_;
  std::vector<int> roots_;
  std::vector<int> depth_;
  std::vector<int> child_offsets_;
  std::vector<int> children_;
};

// Orient an acyclic edge set toward a root set (BFS from the roots); every
// vertex must be a root or reachable through the given edges.
OrientedForest forest_from_edges(const Network& g, const std::vector<int>& edge_ids,
                                 const std::vector<int>& roots);

}  // namespace ustlab
