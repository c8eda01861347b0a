#include "ustlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "ustlab/exact.hpp"
#include "ustlab/generators.hpp"
#include "ustlab/interlacement.hpp"
#include "ustlab/loop_erasure.hpp"
#include "ustlab/rng.hpp"
#include "ustlab/sampler.hpp"
#include "ustlab/stats.hpp"
#include "ustlab/walk.hpp"

namespace ustlab {

namespace {

using nlohmann::json;

int scaled_time(int n, double exponent) {
  return std::max(1, static_cast<int>(std::lround(std::pow(static_cast<double>(n), exponent))));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Replicas are independent tasks over a work queue; each task writes only
// its own slot, so the merged output is independent of the thread count.
void parallel_for(long count, int threads, const std::function<void(long)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || count <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const long i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failed.load()) std::rethrow_exception(failure);
}

std::uint64_t family_seed(const ExperimentSpec& spec, int n) {
  return split_seed(spec.seed, 0xFA0000ULL + static_cast<std::uint64_t>(n));
}

std::uint64_t replica_seed(const ExperimentSpec& spec, int n, long replica) {
  return split_seed(split_seed(spec.seed, static_cast<std::uint64_t>(n)), static_cast<std::uint64_t>(replica));
}

bool capacity_exact_ok(const ExperimentSpec& spec, int n) {
  if (spec.capacity_backend == "exact") return true;
  if (spec.capacity_backend == "monte-carlo") return false;
  return n <= kSparseCap;
}

Estimate run_capacity(const ExperimentSpec& spec, const Network& g, const std::vector<int>& u_set,
                      long r, std::uint64_t seed) {
  WalkLaw law;
  law.backend = capacity_exact_ok(spec, g.vertex_count()) ? WalkLaw::Backend::exact
                                                          : WalkLaw::Backend::monte_carlo;
  law.samples = spec.mc_samples;
  law.seed = seed;
  return capacity(g, u_set, r, law);
}

bool is_control_family(const std::string& family) { return family == "path" || family == "star"; }

}  // namespace

int ExperimentSpec::run_time(int n) const {
  if (r_override > 0) return r_override;
  return scaled_time(n, 0.5 - alpha / 3.0);
}

int ExperimentSpec::buffer_time(int n) const {
  if (s_override > 0) return s_override;
  return scaled_time(n, 0.5 - 2.0 * alpha / 3.0);
}

void ExperimentSpec::validate() const {
  if (replicas < 1) throw std::invalid_argument("spec: replicas >= 1 required");
  if (sizes.empty()) throw std::invalid_argument("spec: at least one size required");
  if (!std::is_sorted(sizes.begin(), sizes.end())) throw std::invalid_argument("spec: sizes must be sorted");
  if (alpha <= 0.0 || alpha >= 1.5) throw std::invalid_argument("spec: alpha out of range");
  for (double b : beta_grid)
    if (b <= 0.0) throw std::invalid_argument("spec: beta grid must be positive");
}

std::string ExperimentSpec::to_json() const {
  json j;
  j["experiment"] = experiment;
  j["family"] = family;
  j["sizes"] = sizes;
  j["replicas"] = replicas;
  j["seed"] = seed;
  j["alpha"] = alpha;
  j["theta"] = theta;
  j["d_max"] = d_max;
  j["beta_grid"] = beta_grid;
  j["ell_grid"] = ell_grid;
  j["capacity_backend"] = capacity_backend;
  j["mc_samples"] = mc_samples;
  j["r_override"] = r_override;
  j["s_override"] = s_override;
  j["threads"] = threads;
  j["out"] = out;
  return j.dump(2);
}

ExperimentSpec ExperimentSpec::from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentSpec s;
  s.experiment = j.value("experiment", s.experiment);
  s.family = j.value("family", s.family);
  s.sizes = j.value("sizes", s.sizes);
  s.replicas = j.value("replicas", s.replicas);
  s.seed = j.value("seed", s.seed);
  s.alpha = j.value("alpha", s.alpha);
  s.theta = j.value("theta", s.theta);
  s.d_max = j.value("d_max", s.d_max);
  s.beta_grid = j.value("beta_grid", s.beta_grid);
  s.ell_grid = j.value("ell_grid", s.ell_grid);
  s.capacity_backend = j.value("capacity_backend", s.capacity_backend);
  s.mc_samples = j.value("mc_samples", s.mc_samples);
  s.r_override = j.value("r_override", s.r_override);
  s.s_override = j.value("s_override", s.s_override);
  s.threads = j.value("threads", s.threads);
  s.out = j.value("out", s.out);
  return s;
}

std::string ExperimentResult::to_csv() const {
  std::string out = "family,n,replica,seed,statistic,value,stderr\n";
  for (const ResultRow& r : rows) {
    out += r.family;
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.replica);
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += r.statistic;
    out += ',';
    out += fmt(r.value);
    out += ',';
    if (r.has_se) out += fmt(r.se);
    out += '\n';
  }
  return out;
}

ExperimentResult ExperimentResult::from_csv(const std::string& text) {
  ExperimentResult res;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: empty input");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t pos = 0;
    for (int c = 0; c < 6; ++c) {
      const std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) throw std::invalid_argument("csv: malformed row");
      cells.push_back(line.substr(pos, comma - pos));
      pos = comma + 1;
    }
    cells.push_back(line.substr(pos));
    ResultRow r;
    r.family = cells[0];
    r.n = std::stoi(cells[1]);
    r.replica = std::stol(cells[2]);
    r.seed = std::stoull(cells[3]);
    r.statistic = cells[4];
    r.value = std::stod(cells[5]);
    if (!cells[6].empty()) {
      r.se = std::stod(cells[6]);
      r.has_se = true;
    }
    res.rows.push_back(std::move(r));
  }
  return res;
}

std::optional<double> ExperimentResult::summary(const std::string& statistic, int n) const {
  for (const ResultRow& r : rows)
    if (r.replica < 0 && r.statistic == statistic && (n == 0 || r.n == n)) return r.value;
  return std::nullopt;
}

ExperimentResult run_diameter_scaling(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult res;
  const bool control = is_control_family(spec.family);
  std::vector<double> prev_median;
  double last_median = 0.0;
  bool have_prev = false;
  for (int n : spec.sizes) {
    const Network g = make_family(spec.family, n, family_seed(spec, n));
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const long reps = control ? std::min<long>(spec.replicas, 3) : spec.replicas;
    std::vector<double> ratios(static_cast<std::size_t>(reps), 0.0);
    parallel_for(reps, spec.threads, [&](long i) {
      const std::uint64_t s = replica_seed(spec, n, i);
      const OrientedForest tree = wilson(g, VertexSet::single(g, 0), s);
      ratios[static_cast<std::size_t>(i)] = static_cast<double>(tree.tree_diameter()) / sqrt_n;
    });
    for (long i = 0; i < reps; ++i)
      res.rows.push_back({spec.family, n, i, replica_seed(spec, n, i), "diam_ratio",
                          ratios[static_cast<std::size_t>(i)], 0.0, false});
    const double med = median(ratios);
    res.rows.push_back({spec.family, n, -1, spec.seed, "diam_ratio_median", med, 0.0, false});
    res.rows.push_back({spec.family, n, -1, spec.seed, "diam_ratio_iqr", interquartile_range(ratios), 0.0, false});
    if (control) {
      res.rows.push_back({spec.family, n, -1, spec.seed, "control_diverges",
                          spec.family == "path" ? 1.0 : 0.0, 0.0, false});
      if (spec.family == "path" && std::abs(ratios[0] - (n - 1.0) / sqrt_n) > 1e-12)
        res.violations.push_back("path control: spanning tree is not the path itself at n=" + std::to_string(n));
      if (spec.family == "star" && ratios[0] * sqrt_n != 2.0)
        res.violations.push_back("star control: diameter is not 2 at n=" + std::to_string(n));
    } else {
      if (med < 0.5 || med > 8.0)
        res.violations.push_back("diameter median ratio outside [0.5, 8] at n=" + std::to_string(n));
      if (have_prev) {
        const double drift = std::abs(med / last_median - 1.0);
        res.rows.push_back({spec.family, n, -1, spec.seed, "diam_ratio_drift", drift, 0.0, false});
        if (drift >= 0.25)
          res.violations.push_back("diameter median drift >= 25% between sizes at n=" + std::to_string(n));
      }
      have_prev = true;
      last_median = med;
    }
  }
  return res;
}

ExperimentResult run_path_law(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult res;
  for (int n : spec.sizes) {
    const Network g = make_family(spec.family, n, family_seed(spec, n));
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const long r = spec.run_time(n);
    const double d_hat = g.balance();
    const long reps = spec.replicas;

    struct Out {
      double len_ratio = 0.0, cap_scaled = 0.0, cap_se = 0.0;
      long collisions = 0;
      bool ub_violated = false;
    };
    std::vector<Out> outs(static_cast<std::size_t>(reps));
    parallel_for(reps, spec.threads, [&](long i) {
      const std::uint64_t s = replica_seed(spec, n, i);
      Rng rng(s);
      const int u = sample_stationary(g, rng);
      int v = sample_stationary(g, rng);
      Out& o = outs[static_cast<std::size_t>(i)];
      while (v == u) {
        ++o.collisions;
        v = sample_stationary(g, rng);
      }
      const std::vector<int> phi = ust_path(g, u, v, split_seed(s, 1));
      const double edges = static_cast<double>(phi.size()) - 1.0;
      o.len_ratio = edges / sqrt_n;
      const Estimate cap = run_capacity(spec, g, phi, r, split_seed(s, 2));
      o.cap_scaled = cap.value * sqrt_n / static_cast<double>(r);
      o.cap_se = cap.se * sqrt_n / static_cast<double>(r);
      // Union bound both ways: Cap_r(phi) <= r pi(phi) <= D r |phi| / n.
      double pi_phi = 0.0;
      for (int w : phi) pi_phi += g.stationary(w);
      const double slack = 4.0 * cap.se + 1e-9;
      if (cap.value > static_cast<double>(r) * pi_phi + slack) o.ub_violated = true;
      if (static_cast<double>(r) * pi_phi >
          d_hat * static_cast<double>(r) * static_cast<double>(phi.size()) / static_cast<double>(n) + 1e-9)
        o.ub_violated = true;
    });

    std::vector<double> ratios, caps;
    long collisions = 0;
    for (long i = 0; i < reps; ++i) {
      const Out& o = outs[static_cast<std::size_t>(i)];
      const std::uint64_t s = replica_seed(spec, n, i);
      res.rows.push_back({spec.family, n, i, s, "path_len_ratio", o.len_ratio, 0.0, false});
      res.rows.push_back({spec.family, n, i, s, "path_cap_scaled", o.cap_scaled, o.cap_se, o.cap_se > 0.0});
      ratios.push_back(o.len_ratio);
      caps.push_back(o.cap_scaled);
      collisions += o.collisions;
      if (o.ub_violated)
        res.violations.push_back("capacity union bound violated at n=" + std::to_string(n) +
                                 " replica=" + std::to_string(i));
    }
    res.rows.push_back({spec.family, n, -1, spec.seed, "path_len_ratio_median", median(ratios), 0.0, false});
    res.rows.push_back({spec.family, n, -1, spec.seed, "fitted_A", quantile(ratios, 0.95), 0.0, false});
    res.rows.push_back({spec.family, n, -1, spec.seed, "fitted_chi", quantile(caps, 0.05), 0.0, false});
    res.rows.push_back({spec.family, n, -1, spec.seed, "endpoint_collisions",
                        static_cast<double>(collisions), 0.0, false});
  }
  return res;
}

ExperimentResult run_sunny_coupling(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult res;
  for (int n : spec.sizes) {
    const Network g = make_family(spec.family, n, family_seed(spec, n));
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const long r = spec.run_time(n);
    double first_sun_freq = -1.0, last_sun_freq = -1.0;
    for (std::size_t bi = 0; bi < spec.beta_grid.size(); ++bi) {
      const double beta = spec.beta_grid[bi];
      const Network gs = make_sunny(g, beta);
      const int rho = sun_vertex(gs);
      const long reps = spec.replicas;

      struct Out {
        double tau = 0.0;
        double le_len = 0.0;
        double cap_scaled = 0.0;
        bool le_short = false;
        bool sun_hit = false;
      };
      std::vector<Out> outs(static_cast<std::size_t>(reps));
      parallel_for(reps, spec.threads, [&](long i) {
        Rng rng(split_seed(replica_seed(spec, n, i), 0xB0 + static_cast<std::uint64_t>(bi)));
        Out& o = outs[static_cast<std::size_t>(i)];
        // First walk: start stationary in G, run on the sunny network until
        // first hitting the sun.
        const int u = sample_stationary(g, rng);
        Walk x;
        x.vertices.push_back(u);
        int cur = u;
        while (cur != rho) {
          cur = lazy_step(gs, cur, rng);
          if (cur != rho) x.vertices.push_back(cur);
        }
        o.tau = static_cast<double>(x.length()) + 1.0;  // steps until the sun
        const LoopErasure le = loop_erase(x);
        o.le_len = static_cast<double>(le.path.size());
        o.le_short = o.le_len <= sqrt_n / (beta * beta * beta);
        const Estimate cap = run_capacity(spec, gs, le.path, r, split_seed(replica_seed(spec, n, i), 3));
        o.cap_scaled = cap.value * sqrt_n / static_cast<double>(r);
        // Second walk from an independent stationary start, stopped on
        // LE(X) u {rho}; LE of the rho-stopped walk ends at the sun.
        std::vector<char> target = make_mask(gs, le.path);
        target[static_cast<std::size_t>(rho)] = 1;
        int y = sample_stationary(g, rng);
        while (!target[static_cast<std::size_t>(y)]) y = lazy_step(gs, y, rng);
        o.sun_hit = (y == rho);
      });

      std::vector<double> taus, caps;
      double le_short_frac = 0.0, sun_freq = 0.0, tail_freq = 0.0;
      const std::string suffix0 = "_beta" + fmt_g(beta);
      for (long i = 0; i < reps; ++i) {
        const Out& o = outs[static_cast<std::size_t>(i)];
        const std::uint64_t s = replica_seed(spec, n, i);
        res.rows.push_back({spec.family, n, i, s, "tau_rho" + suffix0, o.tau, 0.0, false});
        res.rows.push_back({spec.family, n, i, s, "le_len" + suffix0, o.le_len, 0.0, false});
        res.rows.push_back({spec.family, n, i, s, "le_cap_scaled" + suffix0, o.cap_scaled, 0.0, false});
        res.rows.push_back({spec.family, n, i, s, "sun_hit" + suffix0, o.sun_hit ? 1.0 : 0.0, 0.0, false});
        taus.push_back(o.tau);
        caps.push_back(o.cap_scaled);
        le_short_frac += o.le_short ? 1.0 : 0.0;
        sun_freq += o.sun_hit ? 1.0 : 0.0;
        tail_freq += (o.tau <= beta * sqrt_n) ? 1.0 : 0.0;
      }
      le_short_frac /= static_cast<double>(reps);
      sun_freq /= static_cast<double>(reps);
      tail_freq /= static_cast<double>(reps);
      const auto [tau_mean, tau_se] = mean_stderr(taus);
      const auto [cap_mean, cap_se] = mean_stderr(caps);
      const double tau_expected = sqrt_n / (beta * beta);
      const std::string suffix = "_beta" + fmt_g(beta);
      res.rows.push_back({spec.family, n, -1, spec.seed, "tau_rho_mean" + suffix, tau_mean, tau_se, true});
      res.rows.push_back({spec.family, n, -1, spec.seed, "tau_rho_expected" + suffix, tau_expected, 0.0, false});
      res.rows.push_back({spec.family, n, -1, spec.seed, "tau_rho_le_beta_sqrtn" + suffix, tail_freq, 0.0, false});
      res.rows.push_back({spec.family, n, -1, spec.seed, "le_len_short_frac" + suffix, le_short_frac, 0.0, false});
      res.rows.push_back({spec.family, n, -1, spec.seed, "le_cap_scaled_mean" + suffix, cap_mean, cap_se, true});
      res.rows.push_back({spec.family, n, -1, spec.seed, "sun_hit_freq" + suffix, sun_freq, 0.0, false});

      if (std::abs(tau_mean - tau_expected) > 4.0 * std::max(tau_se, 1e-12))
        res.violations.push_back("tau_rho mean off geometric value at beta=" + fmt_g(beta));
      const double tail_se = std::sqrt(tail_freq * (1.0 - tail_freq) / static_cast<double>(reps));
      if (tail_freq > beta * beta * beta + 4.0 * tail_se + 1e-9)
        res.violations.push_back("P(tau_rho <= beta sqrt n) exceeds beta^3 at beta=" + fmt_g(beta));
      if (bi == 0) first_sun_freq = sun_freq;
      last_sun_freq = sun_freq;
    }
    if (spec.beta_grid.size() >= 2 && last_sun_freq < first_sun_freq)
      res.violations.push_back("sun-hit frequency not increasing from smallest to largest beta");
  }
  return res;
}

ExperimentResult run_two_walk_claims(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult res;
  std::vector<double> mean_pairs_by_size, nonint_by_size, cap_by_size, close_by_size;
  for (int n : spec.sizes) {
    const Network g = make_family(spec.family, n, family_seed(spec, n));
    const long r = spec.run_time(n);
    if (r < 10) {
      res.violations.push_back("two-walk: r < 10 at n=" + std::to_string(n) + "; size skipped");
      continue;
    }
    const double q2 = static_cast<double>(r) * static_cast<double>(r) / static_cast<double>(n);
    const long reps = spec.replicas;

    struct Out {
      double pairs = 0.0;
      bool disjoint = false;
      double cap_scaled = 0.0;
      double close_scaled = 0.0;
    };
    std::vector<Out> outs(static_cast<std::size_t>(reps));
    parallel_for(reps, spec.threads, [&](long i) {
      Rng rng(replica_seed(spec, n, i));
      Out& o = outs[static_cast<std::size_t>(i)];
      // (a), (b): two walks from a common stationary start.
      const int u = sample_stationary(g, rng);
      const Walk x = run_lazy_walk(g, u, static_cast<int>(r), rng);
      const Walk y = run_lazy_walk(g, u, static_cast<int>(r), rng);
      std::unordered_map<int, int> hits;
      for (int w : x.vertices) ++hits[w];
      double pairs = 0.0;
      for (int w : y.vertices) {
        const auto it = hits.find(w);
        if (it != hits.end()) pairs += static_cast<double>(it->second);
      }
      o.pairs = pairs;
      std::set<int> sx(x.vertices.begin(), x.vertices.end());
      bool meet = false;
      for (std::size_t j = 1; j < y.vertices.size() && !meet; ++j) meet = sx.count(y.vertices[j]) > 0;
      o.disjoint = !meet;
      // (c): capacity of the cut points of a fresh stationary walk.
      const Walk z = run_lazy_walk(g, sample_stationary(g, rng), static_cast<int>(r) - 1, rng);
      const std::vector<int> cp = cut_points(z);
      if (!cp.empty()) {
        const Estimate cap = run_capacity(spec, g, cp, r, split_seed(replica_seed(spec, n, i), 7));
        o.cap_scaled = cap.value / q2;
      }
      // (d): closeness of two fresh independent stationary walks.
      const Walk w1 = run_lazy_walk(g, sample_stationary(g, rng), static_cast<int>(r) - 1, rng);
      const Walk w2 = run_lazy_walk(g, sample_stationary(g, rng), static_cast<int>(r) - 1, rng);
      WalkLaw law;
      law.backend = capacity_exact_ok(spec, n) ? WalkLaw::Backend::exact : WalkLaw::Backend::monte_carlo;
      law.samples = spec.mc_samples;
      law.seed = split_seed(replica_seed(spec, n, i), 8);
      const Estimate close = closeness(g, w1.vertices, w2.vertices, r, law);
      o.close_scaled = close.value / (q2 * q2);
    });

    std::vector<double> pairs, caps, closes;
    double nonint = 0.0;
    for (long i = 0; i < reps; ++i) {
      const Out& o = outs[static_cast<std::size_t>(i)];
      const std::uint64_t s = replica_seed(spec, n, i);
      res.rows.push_back({spec.family, n, i, s, "intersection_pairs", o.pairs, 0.0, false});
      res.rows.push_back({spec.family, n, i, s, "cap_cutpoints_scaled", o.cap_scaled, 0.0, false});
      res.rows.push_back({spec.family, n, i, s, "closeness_scaled", o.close_scaled, 0.0, false});
      pairs.push_back(o.pairs);
      caps.push_back(o.cap_scaled);
      closes.push_back(o.close_scaled);
      nonint += o.disjoint ? 1.0 : 0.0;
    }
    nonint /= static_cast<double>(reps);
    const auto [pairs_mean, pairs_se] = mean_stderr(pairs);
    const auto [cap_mean, cap_se] = mean_stderr(caps);
    const auto [close_mean, close_se] = mean_stderr(closes);
    res.rows.push_back({spec.family, n, -1, spec.seed, "intersection_pairs_mean", pairs_mean, pairs_se, true});
    res.rows.push_back({spec.family, n, -1, spec.seed, "nonintersection_freq", nonint,
                        std::sqrt(nonint * (1.0 - nonint) / static_cast<double>(reps)), true});
    res.rows.push_back({spec.family, n, -1, spec.seed, "cap_cutpoints_scaled_mean", cap_mean, cap_se, true});
    res.rows.push_back({spec.family, n, -1, spec.seed, "closeness_scaled_mean", close_mean, close_se, true});
    res.rows.push_back({spec.family, n, -1, spec.seed, "run_time_r", static_cast<double>(r), 0.0, false});
    mean_pairs_by_size.push_back(pairs_mean);
    nonint_by_size.push_back(nonint);
    cap_by_size.push_back(cap_mean);
    close_by_size.push_back(close_mean);

    if (spec.family == "complete") {
      const double exact = complete_nonintersection_exact(n, static_cast<int>(r));
      res.rows.push_back({spec.family, n, -1, spec.seed, "nonintersection_exact", exact, 0.0, false});
      const double se = std::sqrt(std::max(nonint * (1.0 - nonint), 1e-9) / static_cast<double>(reps));
      if (std::abs(nonint - exact) > 4.0 * se)
        res.violations.push_back("complete-graph non-intersection off the exact oracle at n=" + std::to_string(n));
    }
    // The escape bound concerns the regime r << sqrt(n); at r^2 > n disjointness
    // is genuinely rare and the floor does not apply.
    if (q2 <= 1.0 && nonint < 0.05)
      res.violations.push_back("non-intersection frequency not bounded away from 0 at n=" + std::to_string(n));
  }
  if (mean_pairs_by_size.size() >= 2 &&
      mean_pairs_by_size.back() > 2.0 * mean_pairs_by_size.front() + 0.5)
    res.violations.push_back("intersection-pair count grows with n (expected to stay O(1))");
  if (cap_by_size.size() >= 2) {
    const double lo = *std::min_element(cap_by_size.begin(), cap_by_size.end());
    const double hi = *std::max_element(cap_by_size.begin(), cap_by_size.end());
    if (lo < hi / 4.0)
      res.violations.push_back("scaled cut-point capacity not bounded below across sizes");
  }
  if (close_by_size.size() >= 2) {
    const double lo = *std::min_element(close_by_size.begin(), close_by_size.end());
    const double hi = *std::max_element(close_by_size.begin(), close_by_size.end());
    if (hi > 4.0 * std::max(lo, 1e-6))
      res.violations.push_back("scaled closeness not bounded above across sizes");
  }
  return res;
}

ExperimentResult run_height_and_ball(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult res;
  for (int n : spec.sizes) {
    const Network g = make_family(spec.family, n, family_seed(spec, n));
    const long reps = spec.replicas;

    struct Out {
      int height = 0;
      int w_size = 0;
      bool diam_ok = true;
    };
    std::vector<Out> outs(static_cast<std::size_t>(reps));
    parallel_for(reps, spec.threads, [&](long i) {
      const std::uint64_t s = replica_seed(spec, n, i);
      Rng rng(s);
      Out& o = outs[static_cast<std::size_t>(i)];
      // The coupling tree: a full UST, its internal path between two
      // stationary points, and the same tree with that path glued.
      const OrientedForest tree = wilson(g, VertexSet::single(g, 0), split_seed(s, 1));
      const int u = sample_stationary(g, rng);
      int v = sample_stationary(g, rng);
      while (v == u) v = sample_stationary(g, rng);
      const std::vector<int> phi = tree.path_between(u, v);
      o.w_size = static_cast<int>(phi.size());
      // The same tree's edges re-rooted at phi: the coupled UST of G/phi.
      const OrientedForest glued = forest_from_edges(g, tree.edge_ids(), phi);
      const int phi_edges = static_cast<int>(phi.size()) - 1;
      if (tree.tree_diameter() > phi_edges + glued.quotient_diameter()) o.diam_ok = false;
      // Height tail of a fresh forest rooted at the sampled path.
      const OrientedForest t_w = wilson(g, VertexSet::of(g, phi), split_seed(s, 2));
      o.height = t_w.height();
    });

    double mean_w = 0.0;
    for (long i = 0; i < reps; ++i) {
      const Out& o = outs[static_cast<std::size_t>(i)];
      const std::uint64_t s = replica_seed(spec, n, i);
      res.rows.push_back({spec.family, n, i, s, "tw_height", static_cast<double>(o.height), 0.0, false});
      res.rows.push_back({spec.family, n, i, s, "w_size", static_cast<double>(o.w_size), 0.0, false});
      mean_w += o.w_size;
      if (!o.diam_ok)
        res.violations.push_back("diam(UST) > |phi| + diam(UST/phi) at n=" + std::to_string(n) +
                                 " replica=" + std::to_string(i));
    }
    mean_w /= static_cast<double>(reps);

    double stat8 = -1.0, stat32 = -1.0;
    double prev_tail = 1.0;
    for (int ell : spec.ell_grid) {
      double tail = 0.0;
      for (const Out& o : outs) tail += (o.height >= ell) ? 1.0 : 0.0;
      tail /= static_cast<double>(reps);
      const double scaled = static_cast<double>(ell) * tail / mean_w;
      res.rows.push_back({spec.family, n, -1, spec.seed, "height_tail_ell" + std::to_string(ell), tail,
                          std::sqrt(tail * (1.0 - tail) / static_cast<double>(reps)), true});
      res.rows.push_back({spec.family, n, -1, spec.seed, "height_tail_scaled_ell" + std::to_string(ell),
                          scaled, 0.0, false});
      if (tail > prev_tail + 1e-12)
        res.violations.push_back("height tail not monotone in ell at n=" + std::to_string(n));
      prev_tail = tail;
      if (ell == 8) stat8 = scaled;
      if (ell == 32) stat32 = scaled;
    }
    if (stat8 >= 0.0 && stat32 >= 0.0) {
      const double se_floor = 32.0 * std::sqrt(1.0 / static_cast<double>(reps)) / mean_w;
      if (stat32 > 2.0 * stat8 + 4.0 * se_floor)
        res.violations.push_back("ell * tail / |W| doubles from ell=8 to ell=32 at n=" + std::to_string(n));
    }

    // Ball-growth table around one fixed sampled path.
    {
      Rng rng(split_seed(spec.seed, 0xBA11));
      const int u = sample_stationary(g, rng);
      int v = sample_stationary(g, rng);
      while (v == u) v = sample_stationary(g, rng);
      const std::vector<int> phi = ust_path(g, u, v, split_seed(spec.seed, 0xBA12));
      const VertexSet w = VertexSet::of(g, phi);
      for (int ell : spec.ell_grid) {
        const BallGrowth b = ball_growth(g, w, phi.front(), ell, std::min<long>(reps, 500),
                                         split_seed(spec.seed, 0xBA13 + static_cast<std::uint64_t>(ell)));
        res.rows.push_back({spec.family, n, -1, spec.seed, "ball_mean_ell" + std::to_string(ell), b.mean,
                            b.se, true});
        res.rows.push_back({spec.family, n, -1, spec.seed, "ball_bound_ell" + std::to_string(ell), b.bound,
                            0.0, false});
        if (b.mean > b.bound + 4.0 * b.se)
          res.violations.push_back("ball size exceeds 8 D ell B_W bound at ell=" + std::to_string(ell));
      }
    }
  }
  return res;
}

AuditReport run_assumption_audit(const Network& g, double alpha, double theta, double d_max) {
  AuditReport rep;
  const int n = g.vertex_count();
  rep.balance = g.balance();
  rep.balance_pass = rep.balance <= d_max;
  rep.mixing_threshold = std::pow(static_cast<double>(n), 0.5 - alpha);
  // Search beyond the threshold so mixing-FAIL graphs still report an exact
  // t_mix when it is cheap to find.
  const int cutoff = std::max(static_cast<int>(std::ceil(rep.mixing_threshold)) + 1,
                              static_cast<int>(std::ceil(4.0 * std::sqrt(static_cast<double>(n)))));

  if (n <= kDenseCap) {
    const auto t = uniform_mixing_time_capped(g, cutoff);
    if (t) {
      rep.t_mix = *t;
      rep.mixing_pass = static_cast<double>(*t) <= rep.mixing_threshold;
    } else {
      rep.t_mix = -1;
      rep.mixing_pass = false;
    }
  } else {
    // TV-decay doubling heuristic from a handful of starts.
    rep.mixing_estimated = true;
    const std::vector<double> pi = g.stationary();
    long t = 1;
    bool mixed = false;
    while (t <= 2L * cutoff) {
      bool all_ok = true;
      for (int probe = 0; probe < 4 && all_ok; ++probe) {
        const int start = static_cast<int>(split_seed(17, static_cast<std::uint64_t>(probe)) %
                                           static_cast<std::uint64_t>(n));
        const std::vector<double> row = transition_distribution(g, start, static_cast<int>(t));
        double dev = 0.0;
        for (int v = 0; v < n; ++v)
          dev = std::max(dev, std::abs(row[static_cast<std::size_t>(v)] / pi[static_cast<std::size_t>(v)] - 1.0));
        all_ok = dev <= 0.5;
      }
      if (all_ok) {
        mixed = true;
        break;
      }
      t *= 2;
    }
    rep.t_mix = mixed ? t : -1;
    rep.mixing_pass = mixed && static_cast<double>(t) <= rep.mixing_threshold;
  }

  if (n <= kDenseCap && rep.t_mix >= 0 && !rep.mixing_estimated) {
    rep.bubble = bubble_sum(g).value;
    rep.bubble_truncated = false;
  } else {
    // Mixing unknown or too slow: fall back to the sqrt(n)-truncated sum,
    // a lower bound on B(G).
    const int sqrt_n = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    double acc = 0.0;
    if (n <= kDenseCap) {
      std::vector<double> maxdiag(static_cast<std::size_t>(sqrt_n) + 1, 0.0);
      for (int v = 0; v < n; ++v) {
        std::vector<double> cur(static_cast<std::size_t>(n), 0.0);
        cur[static_cast<std::size_t>(v)] = 1.0;
        for (int t = 0; t <= sqrt_n; ++t) {
          maxdiag[static_cast<std::size_t>(t)] =
              std::max(maxdiag[static_cast<std::size_t>(t)], cur[static_cast<std::size_t>(v)]);
          if (t < sqrt_n) {
            std::vector<double> next(static_cast<std::size_t>(n), 0.0);
            for (int u2 = 0; u2 < n; ++u2) {
              if (cur[static_cast<std::size_t>(u2)] == 0.0) continue;
              const double stay = 0.5 * cur[static_cast<std::size_t>(u2)];
              next[static_cast<std::size_t>(u2)] += stay;
              const double wd = g.weighted_degree(u2);
              for (const auto& arc : g.neighbors(u2))
                next[static_cast<std::size_t>(arc.to)] += 0.5 * cur[static_cast<std::size_t>(u2)] * arc.weight / wd;
            }
            cur.swap(next);
          }
        }
      }
      for (int t = 0; t <= sqrt_n; ++t) acc += (t + 1.0) * maxdiag[static_cast<std::size_t>(t)];
    } else {
      for (int probe = 0; probe < 8; ++probe) {
        const int v = static_cast<int>(split_seed(23, static_cast<std::uint64_t>(probe)) %
                                       static_cast<std::uint64_t>(n));
        std::vector<double> cur(static_cast<std::size_t>(n), 0.0);
        cur[static_cast<std::size_t>(v)] = 1.0;
        double local = 0.0;
        for (int t = 0; t <= sqrt_n; ++t) {
          local += (t + 1.0) * cur[static_cast<std::size_t>(v)];
          if (t < sqrt_n) {
            std::vector<double> next(static_cast<std::size_t>(n), 0.0);
            for (int u2 = 0; u2 < n; ++u2) {
              if (cur[static_cast<std::size_t>(u2)] == 0.0) continue;
              next[static_cast<std::size_t>(u2)] += 0.5 * cur[static_cast<std::size_t>(u2)];
              const double wd = g.weighted_degree(u2);
              for (const auto& arc : g.neighbors(u2))
                next[static_cast<std::size_t>(arc.to)] += 0.5 * cur[static_cast<std::size_t>(u2)] * arc.weight / wd;
            }
            cur.swap(next);
          }
        }
        acc = std::max(acc, local);
      }
    }
    rep.bubble = acc;
    rep.bubble_truncated = true;
  }
  rep.escaping_pass = rep.bubble <= theta;
  return rep;
}

std::string AuditReport::to_text() const {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "balance D_hat = %.6g  [%s]\n", balance, balance_pass ? "PASS" : "FAIL");
  out += buf;
  std::snprintf(buf, sizeof buf, "mixing t_mix = %ld vs n^(1/2-alpha) = %.6g  [%s]%s\n", t_mix,
                mixing_threshold, mixing_pass ? "PASS" : "FAIL", mixing_estimated ? " (ESTIMATED)" : "");
  out += buf;
  std::snprintf(buf, sizeof buf, "escaping B(G) = %.6g vs theta  [%s]%s\n", bubble,
                escaping_pass ? "PASS" : "FAIL", bubble_truncated ? " (TRUNCATED)" : "");
  out += buf;
  return out;
}

double complete_nonintersection_exact(int n, int r) {
  // Distribution of k = |X[0,r]|: a new vertex is added per step with
  // probability (n-k)/(2(n-1)).
  std::vector<double> pk(static_cast<std::size_t>(n) + 1, 0.0);
  pk[1] = 1.0;
  for (int t = 0; t < r; ++t) {
    std::vector<double> nk(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
      if (pk[static_cast<std::size_t>(k)] == 0.0) continue;
      const double grow = static_cast<double>(n - k) / (2.0 * (n - 1.0));
      nk[static_cast<std::size_t>(k)] += pk[static_cast<std::size_t>(k)] * (1.0 - grow);
      if (k < n) nk[static_cast<std::size_t>(k) + 1] += pk[static_cast<std::size_t>(k)] * grow;
    }
    pk.swap(nk);
  }
  // Y must leave the k-set on step one and then avoid it for r-1 steps.
  double total = 0.0;
  for (int k = 1; k <= n; ++k) {
    if (pk[static_cast<std::size_t>(k)] == 0.0) continue;
    const double first = static_cast<double>(n - k) / (2.0 * (n - 1.0));
    const double step_ok = 0.5 + static_cast<double>(n - 1 - k) / (2.0 * (n - 1.0));
    total += pk[static_cast<std::size_t>(k)] * first * std::pow(step_ok, static_cast<double>(r - 1));
  }
  return total;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.experiment == "diameter") return run_diameter_scaling(spec);
  if (spec.experiment == "path-law") return run_path_law(spec);
  if (spec.experiment == "sunny") return run_sunny_coupling(spec);
  if (spec.experiment == "two-walk") return run_two_walk_claims(spec);
  if (spec.experiment == "height-ball") return run_height_and_ball(spec);
  throw std::invalid_argument("unknown experiment: " + spec.experiment);
}

}  // namespace ustlab
