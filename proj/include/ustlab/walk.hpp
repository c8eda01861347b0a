#pragma once

#include <cstdint>
#include <vector>

#include "ustlab/network.hpp"
#include "ustlab/rng.hpp"

namespace ustlab {

// A finite walk: consecutive vertices are adjacent or equal (equal only via
// laziness or a self-loop edge). length() is the number of steps, one less
// than the number of vertices.
struct Walk {
  std::vector<int> vertices;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  bool empty() const { return vertices.empty(); }
  int front() const { return vertices.front(); }
  int back() const { return vertices.back(); }

  // X[a,b]: indices in the integer interval [ceil(a), floor(b)], clipped to
  // [0, length]. slice_excl drops index b itself.
  Walk slice(double a, double b) const;
  Walk slice_excl(double a, double b) const;
  Walk reversed() const;
  bool valid_on(const Network& g) const;
};

// One lazy step: stay put with probability 1/2, otherwise move along an
// incident edge chosen proportionally to weight (self-loops stay put).
int lazy_step(const Network& g, int v, Rng& rng);
// One non-lazy step.
int uniform_step(const Network& g, int v, Rng& rng);
// Non-lazy step that also reports the edge id taken.
int uniform_step_edge(const Network& g, int v, Rng& rng, int* edge_id);

Walk run_lazy_walk(const Network& g, int from, int steps, Rng& rng);

// Walk from `from` until first hitting `targets` (τ = 0 when from is
// already inside); throws if max_steps is exceeded.
Walk run_lazy_walk_until(const Network& g, int from, const std::vector<char>& target_mask, Rng& rng,
                         long long max_steps = -1);

// Exact stationary sample by inverse CDF over the weighted degrees.
int sample_stationary(const Network& g, Rng& rng);

std::vector<char> make_mask(const Network& g, const std::vector<int>& vertices);

}  // namespace ustlab
