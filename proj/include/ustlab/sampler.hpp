#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ustlab/forest.hpp"
#include "ustlab/network.hpp"

namespace ustlab {

// Wilson's algorithm generalized to a root set: the output forest is
// distributed as the weighted UST of g/root_set, oriented toward the roots.
// Walks are non-lazy by default (laziness leaves the law unchanged and only
// slows the sampler); RNG consumption order is vertex order, then step
// order. Parallel edges are chosen proportionally to weight and the chosen
// edge id is recorded.
OrientedForest wilson(const Network& g, const VertexSet& root_set, std::uint64_t seed,
                      const std::vector<int>* vertex_order = nullptr, bool lazy = false);

// Aldous-Broder: run a walk from `start` until every vertex is visited and
// keep the reversed first-entry edge of each vertex. Law: UST of g.
OrientedForest aldous_broder(const Network& g, int start, std::uint64_t seed, bool lazy = false);

// The unique UST path between u and v, sampled as the loop erasure of a
// lazy walk from u stopped on first hitting v.
std::vector<int> ust_path(const Network& g, int u, int v, std::uint64_t seed, bool lazy = true);

// Kirchhoff count. Exact (big-integer Bareiss) whenever all edge weights
// are integral, which covers unit-weight multigraphs and contractions;
// otherwise a floating determinant with `exact` unset.
struct TreeCount {
  std::string decimal;
  double approx = 0.0;
  bool exact = false;
};
TreeCount spanning_tree_count(const Network& g);

// All spanning trees as sorted edge-id lists, by edge-subset filtering.
std::vector<std::vector<int>> enumerate_spanning_trees(const Network& g);

// Product of edge weights of a tree given by edge ids.
double tree_weight(const Network& g, const std::vector<int>& edge_ids);

}  // namespace ustlab
