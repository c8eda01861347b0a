#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ustlab/forest.hpp"
#include "ustlab/network.hpp"
#include "ustlab/rng.hpp"

namespace ustlab {

// A W-trajectory: both endpoints in W, interior strictly outside W,
// length >= 1. edge_ids[i] realizes the step vertices[i] -> vertices[i+1].
struct WTrajectory {
  std::vector<int> vertices;
  std::vector<int> edge_ids;
  int length() const { return static_cast<int>(edge_ids.size()); }
};

struct InterlacementEvent {
  double time = 0.0;
  WTrajectory trajectory;
};

// The W-wired interlacement process restricted to a finite window [a, b]:
// event times form a rate-1 Poisson process on the window (the trajectory
// measure mu_W has total mass 1) and trajectories are i.i.d. mu_W.
struct InterlacementSample {
  double window_a = 0.0;
  double window_b = 0.0;
  std::vector<int> w_set;  // sorted
  std::vector<InterlacementEvent> events;  // strictly increasing times
};

// One trajectory from mu_W: start u0 with probability d(u0)/Vol(W), then
// non-lazy weighted steps until re-entering W.
WTrajectory sample_trajectory(const Network& g, const VertexSet& w, Rng& rng);

InterlacementSample sample_window(const Network& g, const VertexSet& w, double a, double b,
                                  std::uint64_t seed);

// Window starting at `a` and extended event by event (a stopping time, so
// the law is the plain interlacement process) until the events at times
// >= cover_from alone determine the AB forest, i.e. touch every vertex.
InterlacementSample sample_window_covering(const Network& g, const VertexSet& w, double a,
                                           double cover_from, std::uint64_t seed);

// Thrown when the sampled window ends before the queried structure is
// determined; callers extend the window (see ab_forest_auto).
struct CoverageExhausted : std::runtime_error {
  CoverageExhausted() : std::runtime_error("interlacement window exhausted before coverage") {}
};

// AB_W(t): for every v outside W, the reversed first edge entering v among
// trajectories at times >= t. Law: the UST of G/W pulled back to V, rooted
// at W.
OrientedForest ab_forest(const InterlacementSample& sample, const Network& g, double t);

// Convenience sampler: extends the window until coverage, then reads the
// forest at time t.
OrientedForest ab_forest_auto(const Network& g, const VertexSet& w, double t, std::uint64_t seed);

// sigma_t(v): first event time >= t whose trajectory contains v in its
// interior, or, for v in W, starts at v. Throws CoverageExhausted when the
// window ends first.
double sigma(const InterlacementSample& sample, const Network& g, int v, double t);

struct DirectedEdge {
  int from = 0;
  int to = 0;
  int edge_id = 0;
};
DirectedEdge first_entry_edge(const InterlacementSample& sample, const Network& g, int v, double t);

// Phi_x: shift every event time by x; equality in law with the window
// shifted by x.
InterlacementSample time_shift(const InterlacementSample& sample, double x);

// I_W[a,b]: vertices v with sigma_a(v) <= b.
std::vector<int> interlacement_set(const InterlacementSample& sample, const Network& g, double a,
                                   double b);

// CSV event log "timestamp,v0 v1 ... vl" for offline inspection.
std::string event_log_csv(const InterlacementSample& sample);

// Empirical tail of the height of the past of u in T_{W u {u}}:
// Q(l) = P(height(past(u)) >= l), estimated over `reps` forests. Wilson on
// the contracted root set is the default law-equal sampler; the
// interlacement-backed mode exists for cross-validation.
struct TailTable {
  std::vector<int> ells;
  std::vector<double> prob;
  std::vector<double> se;
  long reps = 0;
};
TailTable past_height_tail(const Network& g, const VertexSet& w, int u, const std::vector<int>& ells,
                           long reps, std::uint64_t seed, bool via_interlacement = false);

// Mean size of the tree ball of radius ell around u (a vertex of W) in
// sampled T_W, with the walk-side bound 8 D ell B_W(G) it is checked
// against.
struct BallGrowth {
  double mean = 0.0;
  double se = 0.0;
  double bound = 0.0;
};
BallGrowth ball_growth(const Network& g, const VertexSet& w, int u, int ell, long reps,
                       std::uint64_t seed);

}  // namespace ustlab
