#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <map>

#include "ustlab/exact.hpp"
#include "ustlab/generators.hpp"
#include "ustlab/network.hpp"
#include "ustlab/rng.hpp"
#include "ustlab/walk.hpp"

using namespace ustlab;

namespace {

// Test-side lazy kernel, built directly from the public adjacency. The
// oracles below use it through plain dense algebra, independently of the
// library's sparse backends.
Eigen::MatrixXd oracle_lazy_kernel(const Network& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    p(u, u) += 0.5;
    for (const auto& arc : g.neighbors(u)) p(u, arc.to) += 0.5 * arc.weight / g.weighted_degree(u);
  }
  return p;
}

Eigen::MatrixXd oracle_power(const Eigen::MatrixXd& p, int t) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(p.rows(), p.cols());
  for (int i = 0; i < t; ++i) out = out * p;
  return out;
}

int oracle_mixing_time(const Network& g) {
  const Eigen::MatrixXd p = oracle_lazy_kernel(g);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(p.rows(), p.cols());
  for (int t = 0;; ++t) {
    double dev = 0.0;
    for (int u = 0; u < p.rows(); ++u)
      for (int v = 0; v < p.cols(); ++v) dev = std::max(dev, std::abs(m(u, v) / g.stationary(v) - 1.0));
    if (dev <= 0.5) return t;
    m = m * p;
  }
}

}  // namespace

TEST_CASE("lazy step laws on tiny graphs") {
  const Network k2 = make_complete(2);
  Rng rng(1);
  long stay = 0;
  const long trials = 200000;
  for (long i = 0; i < trials; ++i) stay += lazy_step(k2, 0, rng) == 0 ? 1 : 0;
  const double p = static_cast<double>(stay) / trials;
  CHECK(std::abs(p - 0.5) < 4.0 * std::sqrt(0.25 / trials));

  const Network k3 = make_complete(3);
  long to1 = 0;
  for (long i = 0; i < trials; ++i) to1 += lazy_step(k3, 0, rng) == 1 ? 1 : 0;
  const double q = static_cast<double>(to1) / trials;
  CHECK(std::abs(q - 0.25) < 4.0 * std::sqrt(0.25 * 0.75 / trials));
}

TEST_CASE("empirical step frequencies match the exact kernel row on a weighted multigraph") {
  // Parallel edges and a self-loop, weighted.
  const Network g = Network::from_edges(3, {{0, 1, 2.0}, {0, 1, 1.0}, {1, 2, 3.0}, {2, 2, 2.0}, {0, 2, 1.0}});
  const Eigen::MatrixXd p = oracle_lazy_kernel(g);
  Rng rng(42);
  const long trials = 1000000;
  for (int from : {0, 2}) {
    std::map<int, long> counts;
    for (long i = 0; i < trials; ++i) ++counts[lazy_step(g, from, rng)];
    for (int to = 0; to < 3; ++to) {
      const double expect = p(from, to);
      const double got = static_cast<double>(counts[to]) / trials;
      const double se = std::sqrt(std::max(expect * (1 - expect), 1e-12) / trials);
      CHECK(std::abs(got - expect) <= 4.0 * se);
    }
  }
}

TEST_CASE("transition probabilities") {
  const Network k3 = make_complete(3);
  CHECK(transition_probability(k3, 0, 0, 0) == 1.0);
  CHECK(transition_probability(k3, 0, 1, 0) == 0.0);
  CHECK(transition_probability(k3, 0, 1, 1) == doctest::Approx(0.25).epsilon(1e-12));
  // p^2(u,u) = 3/8 against the matrix-squaring oracle
  CHECK(transition_probability(k3, 0, 0, 2) == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
  const Eigen::MatrixXd sq = oracle_power(oracle_lazy_kernel(k3), 2);
  CHECK(transition_probability(k3, 0, 0, 2) == doctest::Approx(sq(0, 0)).epsilon(1e-12));
}

TEST_CASE("uniform mixing time") {
  SUBCASE("K2 against the 2x2 oracle") {
    const Network k2 = make_complete(2);
    const int oracle = oracle_mixing_time(k2);
    CHECK(uniform_mixing_time(k2) == oracle);
    CHECK(oracle == 1);  // p^1(u,.) is exactly stationary on lazy K2
  }
  SUBCASE("complete graphs mix in about log2(2n) steps") {
    // The uniform (ratio) mixing time of lazy K_n: the return probability
    // 1/n + (1-1/n) (1/2 - 1/(2(n-1)))^t must drop to 3/(2n), giving 4, 5, 6
    // at n = 8, 16, 32 per the dense oracle.
    const int expected[] = {4, 5, 6};
    int i = 0;
    for (int n : {8, 16, 32}) {
      const Network g = make_complete(n);
      const int t = uniform_mixing_time(g);
      CHECK(t == expected[i++]);
      CHECK(t == oracle_mixing_time(g));
    }
  }
  SUBCASE("path mixing grows superlinearly") {
    const int t16 = uniform_mixing_time(make_path(16));
    const int t32 = uniform_mixing_time(make_path(32));
    CHECK(t32 > 2 * t16);
  }
  SUBCASE("once mixed, stays mixed at t+1") {
    const Network g = make_hypercube(4);
    const int t = uniform_mixing_time(g);
    for (int extra : {0, 1}) {
      double dev = 0.0;
      for (int u = 0; u < g.vertex_count(); ++u) {
        const auto row = transition_distribution(g, u, t + extra);
        for (int v = 0; v < g.vertex_count(); ++v)
          dev = std::max(dev, std::abs(row[static_cast<std::size_t>(v)] / g.stationary(v) - 1.0));
      }
      CHECK(dev <= 0.5);
    }
  }
}

TEST_CASE("total variation distance") {
  CHECK(tv_distance({0.5, 0.5}, {0.5, 0.5}) == 0.0);
  CHECK(tv_distance({1.0, 0.0}, {0.0, 1.0}) == 1.0);
  CHECK(tv_distance({0.5, 0.5}, {1.0, 0.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(tv_distance({1.0}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(tv_distance({0.7, 0.7}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("fact (1.1): near-uniform transition band beyond the mixing time") {
  for (const Network& g : {make_hypercube(6), make_hypercube(8), make_complete(24)}) {
    const int n = g.vertex_count();
    const double d_hat = g.balance();
    const int t_mix = uniform_mixing_time(g);
    for (int t : {t_mix, t_mix + 1}) {
      for (int u = 0; u < n; ++u) {
        const auto row = transition_distribution(g, u, t);
        for (int v = 0; v < n; ++v) {
          CHECK(row[static_cast<std::size_t>(v)] >= 1.0 / (2.0 * d_hat * n) - 1e-12);
          CHECK(row[static_cast<std::size_t>(v)] <= 2.0 * d_hat / n + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("bubble sum") {
  SUBCASE("t=0 term is 1 and the sum is at least 1") {
    const BubbleSums b = bubble_sum(make_complete(4));
    CHECK(b.value >= 1.0);
    CHECK(b.truncated_sqrt >= 1.0);
  }
  SUBCASE("K16 matches the naive summation oracle to 1e-10") {
    const Network g = make_complete(16);
    const Eigen::MatrixXd p = oracle_lazy_kernel(g);
    const int t_mix = oracle_mixing_time(g);
    double expect = 0.0;
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(16, 16);
    for (int t = 0; t <= t_mix; ++t) {
      expect += (t + 1.0) * m.diagonal().maxCoeff();
      m = m * p;
    }
    const BubbleSums b = bubble_sum(g);
    CHECK(b.t_mix == t_mix);
    CHECK(b.value == doctest::Approx(expect).epsilon(1e-10));
  }
  SUBCASE("hypercube m=8 bubbles less than the path on 256 vertices") {
    const double hyper = bubble_sum(make_hypercube(8)).value;
    // Partial sums of the path bubble are monotone, so the first partial
    // sum beyond `hyper` settles the comparison without mixing the path.
    const Network path = make_path(256);
    const Eigen::MatrixXd p = oracle_lazy_kernel(path);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(256, 256);
    double partial = 0.0;
    bool exceeded = false;
    for (int t = 0; t <= 4000 && !exceeded; ++t) {
      partial += (t + 1.0) * m.diagonal().maxCoeff();
      exceeded = partial > hyper;
      m = m * p;
    }
    CHECK(exceeded);
  }
}

TEST_CASE("capacity") {
  const Network k3 = make_complete(3);
  SUBCASE("Cap_1(U) = pi(U) and Cap_r(V) = 1") {
    CHECK(capacity_exact(k3, {0}, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(capacity_exact(k3, {0, 1, 2}, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(capacity_exact(k3, {0, 1, 2}, 5) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("K3 singleton at r=2 equals 1/2") {
    CHECK(capacity_exact(k3, {0}, 2) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("union bound, monotonicity, subadditivity on random networks") {
    for (int trial = 0; trial < 12; ++trial) {
      const Network g = make_random_connected(20 + trial, 14, 100 + static_cast<std::uint64_t>(trial));
      Rng rng(trial);
      std::vector<int> u_set{static_cast<int>(rng.below(static_cast<std::uint64_t>(g.vertex_count()))),
                             static_cast<int>(rng.below(static_cast<std::uint64_t>(g.vertex_count())))};
      double pi_u = 0.0;
      {
        std::vector<int> dedup = u_set;
        std::sort(dedup.begin(), dedup.end());
        dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
        for (int v : dedup) pi_u += g.stationary(v);
      }
      double prev = 0.0;
      for (long r = 1; r <= 9; ++r) {
        const double cap = capacity_exact(g, u_set, r);
        CHECK(cap <= static_cast<double>(r) * pi_u + 1e-12);
        CHECK(cap >= prev - 1e-12);
        prev = cap;
      }
      for (long a : {1L, 2L, 4L})
        for (long b : {1L, 3L}) {
          const double lhs = capacity_exact(g, u_set, a + b);
          CHECK(lhs <= capacity_exact(g, u_set, a) + capacity_exact(g, u_set, b) + 1e-12);
        }
    }
  }
  SUBCASE("exact and monte-carlo backends agree within 4 standard errors") {
    for (int trial = 0; trial < 20; ++trial) {
      const Network g = make_random_connected(16 + trial, 10, 500 + static_cast<std::uint64_t>(trial));
      Rng rng(trial);
      const std::vector<int> u_set{static_cast<int>(rng.below(static_cast<std::uint64_t>(g.vertex_count())))};
      const long r = 2 + static_cast<long>(rng.below(6));
      const double exact = capacity_exact(g, u_set, r);
      const Estimate mc = capacity_mc(g, u_set, r, 20000, 999 + static_cast<std::uint64_t>(trial));
      CHECK(std::abs(mc.value - exact) <= 4.0 * std::max(mc.se, 1e-4));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(capacity_exact(k3, {}, 2), std::invalid_argument);
    CHECK_THROWS_AS(capacity_exact(k3, {0}, 0), std::invalid_argument);
  }
}

TEST_CASE("closeness") {
  const Network k3 = make_complete(3);
  SUBCASE("identical sets reduce to capacity") {
    for (long r : {1L, 2L, 5L})
      CHECK(closeness_exact(k3, {0}, {0}, r) == doctest::Approx(capacity_exact(k3, {0}, r)).epsilon(1e-12));
  }
  SUBCASE("disjoint singletons at r=1 have closeness 0") {
    CHECK(closeness_exact(k3, {0}, {1}, 1) == 0.0);
  }
  SUBCASE("dominated by the smaller capacity on random instances") {
    for (int trial = 0; trial < 10; ++trial) {
      const Network g = make_random_connected(18, 12, 50 + static_cast<std::uint64_t>(trial));
      Rng rng(trial * 3 + 1);
      const std::vector<int> u1{static_cast<int>(rng.below(18))};
      const std::vector<int> u2{static_cast<int>(rng.below(18))};
      const long r = 2 + static_cast<long>(rng.below(5));
      const double close = closeness_exact(g, u1, u2, r);
      CHECK(close <= capacity_exact(g, u1, r) + 1e-12);
      CHECK(close <= capacity_exact(g, u2, r) + 1e-12);
      const Estimate mc = closeness_mc(g, u1, u2, r, 20000, 77 + static_cast<std::uint64_t>(trial));
      CHECK(std::abs(mc.value - close) <= 4.0 * std::max(mc.se, 1e-4));
    }
  }
}

TEST_CASE("killed green function") {
  SUBCASE("rows inside W vanish; lazy K2 has G(u,u) = 2") {
    const Network k2 = make_complete(2);
    const GreenMatrix g2 = green_killed(k2, {1});
    CHECK(g2.at(1, 0) == 0.0);
    CHECK(g2.at(1, 1) == 0.0);
    CHECK(g2.at(0, 1) == 0.0);
    CHECK(g2.at(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("row sums equal expected hitting times from an independent solve") {
    for (int trial = 0; trial < 8; ++trial) {
      const Network g = make_random_connected(14 + trial, 9, 300 + static_cast<std::uint64_t>(trial));
      const int n = g.vertex_count();
      const std::vector<int> w{0, 3};
      const GreenMatrix green = green_killed(g, w);
      // Independent oracle: assemble (I - Q) h = 1 with the dense test
      // kernel and compare row sums.
      const Eigen::MatrixXd p = oracle_lazy_kernel(g);
      std::vector<int> live;
      for (int v = 0; v < n; ++v)
        if (v != 0 && v != 3) live.push_back(v);
      const int k = static_cast<int>(live.size());
      Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a(i, j) -= p(live[static_cast<std::size_t>(i)], live[static_cast<std::size_t>(j)]);
      const Eigen::VectorXd h = a.partialPivLu().solve(Eigen::VectorXd::Ones(k));
      for (int i = 0; i < k; ++i)
        CHECK(green.row_sum(live[static_cast<std::size_t>(i)]) == doctest::Approx(h(i)).epsilon(1e-8));
      // and the library's own hitting-time solve agrees
      const auto ht = hitting_times(g, w);
      for (int i = 0; i < k; ++i)
        CHECK(ht[static_cast<std::size_t>(live[static_cast<std::size_t>(i)])] ==
              doctest::Approx(h(i)).epsilon(1e-8));
    }
  }
}

TEST_CASE("M_W") {
  const Network g = make_random_connected(12, 8, 4242);
  SUBCASE("S inside W gives 0") { CHECK(m_w(g, {0, 1, 2}, {1, 2}) == 0.0); }
  SUBCASE("monotone in S and equal to the brute double sum") {
    const GreenMatrix green = green_killed(g, {0});
    const std::vector<int> small{3, 5};
    const std::vector<int> big{3, 5, 7, 9};
    const double ms = m_w(g, green, small);
    const double mb = m_w(g, green, big);
    CHECK(ms <= mb + 1e-12);
    double brute = 0.0;
    for (int u : big)
      for (int v : big) brute += g.weighted_degree(u) * green.at(u, v);
    CHECK(mb == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("effective conductance") {
  SUBCASE("single unit edge has conductance 1") {
    const Network k2 = make_complete(2);
    CHECK(effective_conductance(k2, {0}, {1}) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("k parallel unit edges have conductance k") {
    for (int k : {2, 5}) {
      std::vector<Edge> edges;
      for (int i = 0; i < k; ++i) edges.push_back({0, 1, 1.0});
      const Network g = Network::from_edges(2, std::move(edges));
      CHECK(effective_conductance(g, {0}, {1}) == doctest::Approx(static_cast<double>(k)).epsilon(1e-12));
    }
  }
  SUBCASE("series pair of unit edges halves the conductance") {
    const Network p3 = make_path(3);
    CHECK(effective_conductance(p3, {0}, {2}) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("symmetry and the M_W lower bound on random pairs") {
    for (int trial = 0; trial < 25; ++trial) {
      const Network g = make_random_connected(10 + trial % 30, 12, 900 + static_cast<std::uint64_t>(trial));
      Rng rng(trial);
      const int n = g.vertex_count();
      std::vector<int> w{static_cast<int>(rng.below(static_cast<std::uint64_t>(n)))};
      std::vector<int> s;
      while (s.empty()) {
        const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (c != w[0]) s.push_back(c);
      }
      if (const int extra = static_cast<int>(rng.below(static_cast<std::uint64_t>(n))); extra != w[0] && extra != s[0])
        s.push_back(extra);
      const double fwd = effective_conductance(g, w, s);
      const double bwd = effective_conductance(g, s, w);
      CHECK(std::abs(fwd - bwd) <= 1e-8 * std::max(1.0, std::abs(fwd)));
      double ds = 0.0;
      for (int v : s) ds += g.weighted_degree(v);
      const double mw = m_w(g, w, s);
      CHECK(fwd >= ds * ds / mw - 1e-9);
    }
  }
  SUBCASE("overlap rejected") {
    const Network k3 = make_complete(3);
    CHECK_THROWS_AS(effective_conductance(k3, {0, 1}, {1, 2}), std::invalid_argument);
  }
}

TEST_CASE("W-bubble sum") {
  SUBCASE("W = V gives 0 by the killed convention") {
    const Network k3 = make_complete(3);
    CHECK(w_bubble_sum(k3, {0, 1, 2}) == 0.0);
  }
  SUBCASE("at least 1 when something survives") {
    const Network g = make_hypercube(4);
    CHECK(w_bubble_sum(g, {0}) >= 1.0);
  }
  SUBCASE("truncation self-consistency on the hypercube") {
    const Network g = make_hypercube(6);
    const std::vector<int> w{0, 9, 33, 44};
    const double coarse = w_bubble_sum(g, w, 1e-6);
    const double fine = w_bubble_sum(g, w, 1e-12);
    CHECK(std::abs(coarse - fine) <= 2e-6);
  }
  SUBCASE("matches a brute killed-kernel iteration") {
    const Network g = make_hypercube(5);
    const std::vector<int> w{0, 7, 19};
    const Eigen::MatrixXd p = oracle_lazy_kernel(g);
    std::vector<int> live;
    for (int v = 0; v < 32; ++v)
      if (v != 0 && v != 7 && v != 19) live.push_back(v);
    const int k = static_cast<int>(live.size());
    Eigen::MatrixXd q(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) q(i, j) = p(live[static_cast<std::size_t>(i)], live[static_cast<std::size_t>(j)]);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(k, k);
    double brute = 0.0;
    for (int t = 0; t <= 3000; ++t) {
      brute += (t + 1.0) * m.diagonal().maxCoeff();
      m = m * q;
    }
    CHECK(w_bubble_sum(g, w) == doctest::Approx(brute).epsilon(1e-9));
  }
}

TEST_CASE("target time") {
  SUBCASE("lazy K2 has target time 1") {
    CHECK(target_time(make_complete(2), 0) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("independent of the starting vertex") {
    for (int trial = 0; trial < 6; ++trial) {
      const Network g = make_random_connected(8 + 4 * trial, 10, 60 + static_cast<std::uint64_t>(trial));
      const auto ts = target_time_all(g);
      for (double t : ts) CHECK(std::abs(t - ts[0]) <= 1e-8 * std::max(1.0, std::abs(ts[0])));
    }
  }
  SUBCASE("linear growth on complete graphs") {
    const double t16 = target_time(make_complete(16), 0);
    const double t32 = target_time(make_complete(32), 0);
    CHECK(std::abs(t32 / t16 - 2.0) < 0.3);  // ratio 2 within 15%
  }
  SUBCASE("matches a direct per-target hitting solve") {
    const Network g = make_random_connected(9, 7, 8);
    const int n = g.vertex_count();
    const Eigen::MatrixXd p = oracle_lazy_kernel(g);
    double expect = 0.0;
    const int u = 2;
    for (int target = 0; target < n; ++target) {
      if (target == u) continue;
      std::vector<int> live;
      for (int v = 0; v < n; ++v)
        if (v != target) live.push_back(v);
      Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n - 1, n - 1);
      for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j)
          a(i, j) -= p(live[static_cast<std::size_t>(i)], live[static_cast<std::size_t>(j)]);
      const Eigen::VectorXd h = a.partialPivLu().solve(Eigen::VectorXd::Ones(n - 1));
      int iu = 0;
      while (live[static_cast<std::size_t>(iu)] != u) ++iu;
      expect += g.stationary(target) * h(iu);
    }
    CHECK(target_time(g, u) == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("hitting probability diagnostic") {
  SUBCASE("U = V makes the left side 1") {
    const Network g = make_complete(6);
    const HittingLowerReport rep = hitting_probability_lower(g, 0, {0, 1, 2, 3, 4, 5}, 4, 4);
    CHECK(rep.lhs == doctest::Approx(1.0));
    CHECK(rep.inequality_holds);
  }
  SUBCASE("hypercube with a random 4-set at r = 20 t_mix") {
    const Network g = make_hypercube(6);
    const long t_mix = uniform_mixing_time(g);
    const long r = 20 * t_mix;
    const HittingLowerReport rep = hitting_probability_lower(g, 5, {3, 17, 40, 61}, r, r);
    CHECK(rep.hypothesis_ok);
    CHECK(rep.inequality_holds);
  }
  SUBCASE("small r is reported as violating the hypothesis, not asserted") {
    const Network g = make_hypercube(6);
    const HittingLowerReport rep = hitting_probability_lower(g, 5, {3}, 2, 2);
    CHECK(!rep.hypothesis_ok);
  }
}

TEST_CASE("walks generated by the engine are valid on their network") {
  const Network g = make_random_connected(15, 12, 5);
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    const Walk x = run_lazy_walk(g, static_cast<int>(rng.below(15)), 60, rng);
    CHECK(x.valid_on(g));
  }
  Walk bogus;
  bogus.vertices = {0, 14};
  const bool adjacent = [&] {
    for (const auto& arc : g.neighbors(0))
      if (arc.to == 14) return true;
    return false;
  }();
  CHECK(bogus.valid_on(g) == adjacent);
}
