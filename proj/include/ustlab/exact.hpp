#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ustlab/network.hpp"

namespace ustlab {

// Size caps for the exact backends: dense solves up to kDenseCap vertices,
// matrix-vector-only quantities up to kSparseCap.
inline constexpr int kDenseCap = 4096;
inline constexpr int kSparseCap = 65536;

struct WalkLaw {
  enum class Backend { exact, monte_carlo };
  Backend backend = Backend::exact;
  long samples = 20000;
  std::uint64_t seed = 1;
};

// Estimator result; exact backends report se = 0 and samples = 0.
struct Estimate {
  double value = 0.0;
  double se = 0.0;
  long samples = 0;
};

// p^t(u, .) of the lazy walk, by t sparse kernel applications.
std::vector<double> transition_distribution(const Network& g, int u, int t);
double transition_probability(const Network& g, int u, int v, int t);

// Smallest t with max_{u,v} |p^t(u,v)/pi(v) - 1| <= 1/2. The condition is
// preserved for all larger t, which the implementation re-checks at t+1.
// The capped variant returns nullopt when t_cap is passed without mixing.
int uniform_mixing_time(const Network& g);
std::optional<int> uniform_mixing_time_capped(const Network& g, int t_cap);

double tv_distance(const std::vector<double>& mu, const std::vector<double>& nu);

// B(G) = sum_{t<=t_mix} (t+1) sup_v p^t(v,v), plus the sqrt(n)-truncated
// variant used as a cheap diagnostic.
struct BubbleSums {
  double value = 0.0;
  double truncated_sqrt = 0.0;
  int t_mix = 0;
};
BubbleSums bubble_sum(const Network& g);

// Cap_r(U) = P_pi(tau_U < r), by absorbing forward iteration.
double capacity_exact(const Network& g, const std::vector<int>& u_set, long r);
Estimate capacity_mc(const Network& g, const std::vector<int>& u_set, long r, long samples,
                     std::uint64_t seed);
Estimate capacity(const Network& g, const std::vector<int>& u_set, long r, const WalkLaw& law);

// Close_r(U1, U2) = P_pi(tau_U1 < r and tau_U2 < r) under one walk.
double closeness_exact(const Network& g, const std::vector<int>& u1, const std::vector<int>& u2, long r);
Estimate closeness_mc(const Network& g, const std::vector<int>& u1, const std::vector<int>& u2, long r,
                      long samples, std::uint64_t seed);
Estimate closeness(const Network& g, const std::vector<int>& u1, const std::vector<int>& u2, long r,
                   const WalkLaw& law);

// Green function of the lazy walk killed on W: G_W(u,v) = expected visits
// to v strictly before tau_W, started at u. Rows and columns meeting W are
// zero; row sums equal E_u[tau_W].
class GreenMatrix {
 public:
  double at(int u, int v) const;
  double row_sum(int u) const;
  int vertex_count() const { return static_cast<int>(index_.size()); }

 private:
  friend GreenMatrix green_killed(const Network&, const std::vector<int>&);
  std::vector<int> index_;  // vertex -> dense index, -1 inside W
  std::vector<double> data_;
  int k_ = 0;
};
GreenMatrix green_killed(const Network& g, const std::vector<int>& w_set);

// M_W(S) = sum_{u,v in S} d(u) G_W(u,v).
double m_w(const Network& g, const GreenMatrix& green, const std::vector<int>& s_set);
double m_w(const Network& g, const std::vector<int>& w_set, const std::vector<int>& s_set);

// Effective conductance C_eff(W <-> S) = Vol(W) P_W(tau_S < tau_W^+),
// evaluated by first-step analysis on G/W with the non-lazy walk (the
// electrical quantity; the unit edge has conductance 1).
double effective_conductance(const Network& g, const std::vector<int>& w_set,
                             const std::vector<int>& s_set);

// B_W(G) = sum_{t>=0} (t+1) sup_{v notin W} p_W^t(v,v), killed diagonal
// maxima summed until the spectral tail drops below tol.
double w_bubble_sum(const Network& g, const std::vector<int>& w_set, double tol = 1e-9);

// Target time t(u) = sum_v pi(v) E_u[tau_v]; independent of u.
double target_time(const Network& g, int u);
std::vector<double> target_time_all(const Network& g);

// E_u[tau_W] of the lazy walk for every u (0 on W).
std::vector<double> hitting_times(const Network& g, const std::vector<int>& w_set);

// Diagnostic for the mixing/capacity inequality
// P_u(tau_U < t) >= Cap_r(U)/3, valid asymptotically when
// r >> log(n) t_mix and t ~ r; reported, not asserted.
struct HittingLowerReport {
  double lhs = 0.0;          // P_u(tau_U < t)
  double cap_r = 0.0;        // Cap_r(U)
  bool inequality_holds = false;
  bool hypothesis_ok = false;  // r >= log(n) * t_mix
  int t_mix = 0;
};
HittingLowerReport hitting_probability_lower(const Network& g, int u, const std::vector<int>& u_set,
                                             long t, long r);

}  // namespace ustlab
