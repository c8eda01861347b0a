#pragma once

#include <vector>

#include "ustlab/walk.hpp"

namespace ustlab {

// Chronological loop erasure of a walk. lambda holds the times contributing
// to the erasure: lambda[0] = 0, walk[lambda[k]] = path[k], and
// lambda[k+1] = 1 + last occurrence time of path[k].
struct LoopErasure {
  std::vector<int> path;
  std::vector<int> lambda;
};

// O(L) via a last-occurrence index.
LoopErasure loop_erase(const Walk& x);

// Cut times: t in [0, L) with X[0,t] and X[t+1,L] vertex-disjoint.
std::vector<int> cut_times(const Walk& x);
// The vertices X_t over cut times t; every cut point lies on the loop
// erasure of x.
std::vector<int> cut_points(const Walk& x);

// B_i = X[(i-1)r, ir-s) and A_i = X[(i-1)r+s, ir-2s) for 1 <= i <= L/r.
// Requires 0 < s < r/3 so each core run A_i is nonempty.
struct Segment {
  Walk buffer_run;  // B_i
  Walk core_run;    // A_i
};
std::vector<Segment> segment_decomposition(const Walk& x, int run_time, int buffer_time);

}  // namespace ustlab
