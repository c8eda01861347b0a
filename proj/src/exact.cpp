#include "ustlab/exact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ustlab/rng.hpp"
#include "ustlab/walk.hpp"

namespace ustlab {

namespace {

// CSR of a (sub)stochastic kernel. Parallel arcs are merged per column.
struct Kernel {
  int n = 0;
  std::vector<int> offsets;
  std::vector<int> cols;
  std::vector<double> probs;

  // out = vec . P  (distribution step)
  void apply(const std::vector<double>& vec, std::vector<double>& out) const {
    out.assign(static_cast<std::size_t>(n), 0.0);
    for (int u = 0; u < n; ++u) {
      const double mass = vec[static_cast<std::size_t>(u)];
      if (mass == 0.0) continue;
      for (int i = offsets[static_cast<std::size_t>(u)]; i < offsets[static_cast<std::size_t>(u) + 1]; ++i)
        out[static_cast<std::size_t>(cols[static_cast<std::size_t>(i)])] += mass * probs[static_cast<std::size_t>(i)];
    }
  }
};

// Lazy kernel of g, restricted to rows/cols outside `killed` (mass into
// killed vertices is dropped). Pass lazy=false for the plain weighted walk.
Kernel build_kernel(const Network& g, const std::vector<char>* killed, bool lazy) {
  const int n = g.vertex_count();
  Kernel k;
  k.n = n;
  k.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  std::vector<double> row(static_cast<std::size_t>(n), 0.0);
  std::vector<int> touched;
  for (int u = 0; u < n; ++u) {
    k.offsets[static_cast<std::size_t>(u)] = static_cast<int>(k.cols.size());
    if (killed && (*killed)[static_cast<std::size_t>(u)]) continue;
    touched.clear();
    const double move = lazy ? 0.5 : 1.0;
    if (lazy) {
      row[static_cast<std::size_t>(u)] = 0.5;
      touched.push_back(u);
    }
    const double wd = g.weighted_degree(u);
    for (const auto& arc : g.neighbors(u)) {
      if (killed && (*killed)[static_cast<std::size_t>(arc.to)]) continue;
      if (row[static_cast<std::size_t>(arc.to)] == 0.0) touched.push_back(arc.to);
      row[static_cast<std::size_t>(arc.to)] += move * arc.weight / wd;
    }
    std::sort(touched.begin(), touched.end());
    for (int v : touched) {
      k.cols.push_back(v);
      k.probs.push_back(row[static_cast<std::size_t>(v)]);
      row[static_cast<std::size_t>(v)] = 0.0;
    }
  }
  k.offsets[static_cast<std::size_t>(n)] = static_cast<int>(k.cols.size());
  return k;
}

void require_sparse_cap(const Network& g) {
  if (g.vertex_count() > kSparseCap) throw std::invalid_argument("exact backend: n exceeds sparse cap");
}

void require_dense_cap(const Network& g) {
  if (g.vertex_count() > kDenseCap) throw std::invalid_argument("exact backend: n exceeds dense cap");
}

std::vector<char> mask_of(const Network& g, const std::vector<int>& vs) {
  std::vector<char> m(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int v : vs) {
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("vertex id out of range");
    m[static_cast<std::size_t>(v)] = 1;
  }
  return m;
}

// All rows of p^t advanced jointly; rows[u] = p^t(u, .).
struct MatrixPower {
  explicit MatrixPower(const Network& g) : kernel(build_kernel(g, nullptr, true)), n(g.vertex_count()) {
    rows.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int u = 0; u < n; ++u) rows[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) + static_cast<std::size_t>(u)] = 1.0;
    scratch.assign(static_cast<std::size_t>(n), 0.0);
  }

  void step() {
    std::vector<double> in(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
      double* r = &rows[static_cast<std::size_t>(u) * static_cast<std::size_t>(n)];
      std::copy(r, r + n, in.begin());
      kernel.apply(in, scratch);
      std::copy(scratch.begin(), scratch.end(), r);
    }
    ++t;
  }

  double max_ratio_dev(const std::vector<double>& pi) const {
    double worst = 0.0;
    for (int u = 0; u < n; ++u) {
      const double* r = &rows[static_cast<std::size_t>(u) * static_cast<std::size_t>(n)];
      for (int v = 0; v < n; ++v)
        worst = std::max(worst, std::abs(r[v] / pi[static_cast<std::size_t>(v)] - 1.0));
    }
    return worst;
  }

  double max_diag() const {
    double best = 0.0;
    for (int u = 0; u < n; ++u)
      best = std::max(best, rows[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) + static_cast<std::size_t>(u)]);
    return best;
  }

  Kernel kernel;
  int n;
  int t = 0;
  std::vector<double> rows;
  std::vector<double> scratch;
};

}  // namespace

std::vector<double> transition_distribution(const Network& g, int u, int t) {
  require_sparse_cap(g);
  if (t < 0) throw std::invalid_argument("transition_distribution: t >= 0 required");
  const Kernel k = build_kernel(g, nullptr, true);
  std::vector<double> cur(static_cast<std::size_t>(g.vertex_count()), 0.0);
  cur[static_cast<std::size_t>(u)] = 1.0;
  std::vector<double> next;
  for (int i = 0; i < t; ++i) {
    k.apply(cur, next);
    cur.swap(next);
  }
  return cur;
}

double transition_probability(const Network& g, int u, int v, int t) {
  return transition_distribution(g, u, t)[static_cast<std::size_t>(v)];
}

std::optional<int> uniform_mixing_time_capped(const Network& g, int t_cap) {
  require_dense_cap(g);
  const std::vector<double> pi = g.stationary();
  MatrixPower mp(g);
  for (int t = 0;; ++t) {
    if (mp.max_ratio_dev(pi) <= 0.5) return t;
    if (t_cap >= 0 && t >= t_cap) return std::nullopt;
    mp.step();
  }
}

int uniform_mixing_time(const Network& g) {
  const auto t = uniform_mixing_time_capped(g, -1);
  return *t;
}

double tv_distance(const std::vector<double>& mu, const std::vector<double>& nu) {
  if (mu.size() != nu.size()) throw std::invalid_argument("tv_distance: support size mismatch");
  double sum_mu = 0.0, sum_nu = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    sum_mu += mu[i];
    sum_nu += nu[i];
    acc += std::abs(mu[i] - nu[i]);
  }
  if (std::abs(sum_mu - 1.0) > 1e-9 || std::abs(sum_nu - 1.0) > 1e-9)
    throw std::invalid_argument("tv_distance: inputs must sum to 1");
  return 0.5 * acc;
}

BubbleSums bubble_sum(const Network& g) {
  require_dense_cap(g);
  const std::vector<double> pi = g.stationary();
  MatrixPower mp(g);
  const int sqrt_n = static_cast<int>(std::floor(std::sqrt(static_cast<double>(g.vertex_count()))));
  BubbleSums out;
  int t_mix = -1;
  for (int t = 0;; ++t) {
    if (t_mix < 0 && mp.max_ratio_dev(pi) <= 0.5) t_mix = t;
    const double term = (t + 1.0) * mp.max_diag();
    if (t_mix < 0 || t <= t_mix) out.value += term;
    if (t <= sqrt_n) out.truncated_sqrt += term;
    if (t_mix >= 0 && t >= std::max(t_mix, sqrt_n)) break;
    mp.step();
  }
  out.t_mix = t_mix;
  return out;
}

double capacity_exact(const Network& g, const std::vector<int>& u_set, long r) {
  require_sparse_cap(g);
  if (u_set.empty()) throw std::invalid_argument("capacity: empty target set");
  if (r < 1) throw std::invalid_argument("capacity: r >= 1 required");
  const std::vector<char> in_u = mask_of(g, u_set);
  const int n = g.vertex_count();
  const Kernel k = build_kernel(g, nullptr, true);
  std::vector<double> cur(static_cast<std::size_t>(n));
  double hit = 0.0;
  for (int v = 0; v < n; ++v) {
    const double p = g.stationary(v);
    if (in_u[static_cast<std::size_t>(v)]) {
      hit += p;
      cur[static_cast<std::size_t>(v)] = 0.0;
    } else {
      cur[static_cast<std::size_t>(v)] = p;
    }
  }
  std::vector<double> next;
  for (long t = 1; t < r; ++t) {
    k.apply(cur, next);
    for (int v = 0; v < n; ++v) {
      if (in_u[static_cast<std::size_t>(v)]) {
        hit += next[static_cast<std::size_t>(v)];
        next[static_cast<std::size_t>(v)] = 0.0;
      }
    }
    cur.swap(next);
  }
  return hit;
}

Estimate capacity_mc(const Network& g, const std::vector<int>& u_set, long r, long samples,
                     std::uint64_t seed) {
  if (u_set.empty()) throw std::invalid_argument("capacity: empty target set");
  if (r < 1) throw std::invalid_argument("capacity: r >= 1 required");
  const std::vector<char> in_u = mask_of(g, u_set);
  Rng rng(seed);
  long hits = 0;
  for (long s = 0; s < samples; ++s) {
    int v = sample_stationary(g, rng);
    bool hit = in_u[static_cast<std::size_t>(v)];
    for (long t = 1; t < r && !hit; ++t) {
      v = lazy_step(g, v, rng);
      hit = in_u[static_cast<std::size_t>(v)];
    }
    hits += hit ? 1 : 0;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples};
}

Estimate capacity(const Network& g, const std::vector<int>& u_set, long r, const WalkLaw& law) {
  if (law.backend == WalkLaw::Backend::exact) return {capacity_exact(g, u_set, r), 0.0, 0};
  return capacity_mc(g, u_set, r, law.samples, law.seed);
}

double closeness_exact(const Network& g, const std::vector<int>& u1, const std::vector<int>& u2, long r) {
  require_sparse_cap(g);
  if (u1.empty() || u2.empty()) throw std::invalid_argument("closeness: empty target set");
  if (r < 1) throw std::invalid_argument("closeness: r >= 1 required");
  const std::vector<char> a = mask_of(g, u1), b = mask_of(g, u2);
  const int n = g.vertex_count();
  const Kernel k = build_kernel(g, nullptr, true);
  // Three live flag blocks (neither / first hit / second hit); mass moving
  // to flags=11 is absorbed into the answer.
  std::vector<double> d00(static_cast<std::size_t>(n), 0.0), d10 = d00, d01 = d00;
  double done = 0.0;
  for (int v = 0; v < n; ++v) {
    const double p = g.stationary(v);
    const bool f1 = a[static_cast<std::size_t>(v)], f2 = b[static_cast<std::size_t>(v)];
    if (f1 && f2)
      done += p;
    else if (f1)
      d10[static_cast<std::size_t>(v)] = p;
    else if (f2)
      d01[static_cast<std::size_t>(v)] = p;
    else
      d00[static_cast<std::size_t>(v)] = p;
  }
  std::vector<double> n00, n10, n01;
  for (long t = 1; t < r; ++t) {
    k.apply(d00, n00);
    k.apply(d10, n10);
    k.apply(d01, n01);
    for (int v = 0; v < n; ++v) {
      const bool f1 = a[static_cast<std::size_t>(v)], f2 = b[static_cast<std::size_t>(v)];
      double& m00 = n00[static_cast<std::size_t>(v)];
      double& m10 = n10[static_cast<std::size_t>(v)];
      double& m01 = n01[static_cast<std::size_t>(v)];
      if (f1 && f2) {
        done += m00 + m10 + m01;
        m00 = m10 = m01 = 0.0;
      } else if (f1) {
        done += m01;
        m01 = 0.0;
        m10 += m00;
        m00 = 0.0;
      } else if (f2) {
        done += m10;
        m10 = 0.0;
        m01 += m00;
        m00 = 0.0;
      }
    }
    d00.swap(n00);
    d10.swap(n10);
    d01.swap(n01);
  }
  return done;
}

Estimate closeness_mc(const Network& g, const std::vector<int>& u1, const std::vector<int>& u2, long r,
                      long samples, std::uint64_t seed) {
  if (u1.empty() || u2.empty()) throw std::invalid_argument("closeness: empty target set");
  const std::vector<char> a = mask_of(g, u1), b = mask_of(g, u2);
  Rng rng(seed);
  long hits = 0;
  for (long s = 0; s < samples; ++s) {
    int v = sample_stationary(g, rng);
    bool f1 = a[static_cast<std::size_t>(v)], f2 = b[static_cast<std::size_t>(v)];
    for (long t = 1; t < r && !(f1 && f2); ++t) {
      v = lazy_step(g, v, rng);
      f1 = f1 || a[static_cast<std::size_t>(v)];
      f2 = f2 || b[static_cast<std::size_t>(v)];
    }
    hits += (f1 && f2) ? 1 : 0;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples};
}

Estimate closeness(const Network& g, const std::vector<int>& u1, const std::vector<int>& u2, long r,
                   const WalkLaw& law) {
  if (law.backend == WalkLaw::Backend::exact) return {closeness_exact(g, u1, u2, r), 0.0, 0};
  return closeness_mc(g, u1, u2, r, law.samples, law.seed);
}

double GreenMatrix::at(int u, int v) const {
  const int iu = index_[static_cast<std::size_t>(u)];
  const int iv = index_[static_cast<std::size_t>(v)];
  if (iu < 0 || iv < 0) return 0.0;
  return data_[static_cast<std::size_t>(iu) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(iv)];
}

double GreenMatrix::row_sum(int u) const {
  const int iu = index_[static_cast<std::size_t>(u)];
  if (iu < 0) return 0.0;
  double acc = 0.0;
  for (int j = 0; j < k_; ++j)
    acc += data_[static_cast<std::size_t>(iu) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(j)];
  return acc;
}

GreenMatrix green_killed(const Network& g, const std::vector<int>& w_set) {
  require_dense_cap(g);
  if (w_set.empty()) throw std::invalid_argument("green_killed: empty kill set");
  const std::vector<char> killed = mask_of(g, w_set);
  const int n = g.vertex_count();
  GreenMatrix out;
  out.index_.assign(static_cast<std::size_t>(n), -1);
  int k = 0;
  for (int v = 0; v < n; ++v)
    if (!killed[static_cast<std::size_t>(v)]) out.index_[static_cast<std::size_t>(v)] = k++;
  out.k_ = k;
  out.data_.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0.0);
  if (k == 0) return out;

  const Kernel q = build_kernel(g, &killed, true);
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(k, k);
  for (int u = 0; u < n; ++u) {
    const int iu = out.index_[static_cast<std::size_t>(u)];
    if (iu < 0) continue;
    for (int i = q.offsets[static_cast<std::size_t>(u)]; i < q.offsets[static_cast<std::size_t>(u) + 1]; ++i) {
      const int iv = out.index_[static_cast<std::size_t>(q.cols[static_cast<std::size_t>(i)])];
      A(iu, iv) -= q.probs[static_cast<std::size_t>(i)];
    }
  }
  const Eigen::MatrixXd green = A.partialPivLu().solve(Eigen::MatrixXd::Identity(k, k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      out.data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)] = green(i, j);
  return out;
}

double m_w(const Network& g, const GreenMatrix& green, const std::vector<int>& s_set) {
  double acc = 0.0;
  for (int u : s_set)
    for (int v : s_set) acc += g.weighted_degree(u) * green.at(u, v);
  return acc;
}

double m_w(const Network& g, const std::vector<int>& w_set, const std::vector<int>& s_set) {
  return m_w(g, green_killed(g, w_set), s_set);
}

double effective_conductance(const Network& g, const std::vector<int>& w_set,
                             const std::vector<int>& s_set) {
  require_dense_cap(g);
  if (w_set.empty() || s_set.empty()) throw std::invalid_argument("effective_conductance: empty set");
  const std::vector<char> in_w = mask_of(g, w_set), in_s = mask_of(g, s_set);
  for (int v : s_set)
    if (in_w[static_cast<std::size_t>(v)])
      throw std::invalid_argument("effective_conductance: W and S must be disjoint");

  // h(x) = P_x(tau_S < tau_W) for the non-lazy walk, solved on V \ (W u S).
  const int n = g.vertex_count();
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  int k = 0;
  for (int v = 0; v < n; ++v)
    if (!in_w[static_cast<std::size_t>(v)] && !in_s[static_cast<std::size_t>(v)]) index[static_cast<std::size_t>(v)] = k++;
  std::vector<double> h(static_cast<std::size_t>(n), 0.0);
  for (int v : s_set) h[static_cast<std::size_t>(v)] = 1.0;
  if (k > 0) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(k, k);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
    for (int u = 0; u < n; ++u) {
      const int iu = index[static_cast<std::size_t>(u)];
      if (iu < 0) continue;
      const double wd = g.weighted_degree(u);
      for (const auto& arc : g.neighbors(u)) {
        const double p = arc.weight / wd;
        if (in_s[static_cast<std::size_t>(arc.to)])
          b(iu) += p;
        else if (!in_w[static_cast<std::size_t>(arc.to)])
          A(iu, index[static_cast<std::size_t>(arc.to)]) -= p;
      }
    }
    const Eigen::VectorXd sol = A.partialPivLu().solve(b);
    for (int v = 0; v < n; ++v)
      if (index[static_cast<std::size_t>(v)] >= 0) h[static_cast<std::size_t>(v)] = sol(index[static_cast<std::size_t>(v)]);
  }
  double ceff = 0.0;
  for (int u : w_set)
    for (const auto& arc : g.neighbors(u)) {
      if (in_w[static_cast<std::size_t>(arc.to)]) continue;  // internal edges return immediately
      ceff += arc.weight * h[static_cast<std::size_t>(arc.to)];
    }
  return ceff;
}

double w_bubble_sum(const Network& g, const std::vector<int>& w_set, double tol) {
  require_dense_cap(g);
  if (w_set.empty()) throw std::invalid_argument("w_bubble_sum: empty kill set");
  const std::vector<char> killed = mask_of(g, w_set);
  const int n = g.vertex_count();
  std::vector<int> live;
  for (int v = 0; v < n; ++v)
    if (!killed[static_cast<std::size_t>(v)]) live.push_back(v);
  const int k = static_cast<int>(live.size());
  if (k == 0) return 0.0;

  // Reversibility gives the symmetrization S = D^{1/2} Q D^{-1/2}; the
  // killed return probabilities are p_W^t(v,v) = sum_j lambda_j^t psi_j(v)^2
  // and the tail after T is at most sum_{t>T} (t+1) lambda_max^t.
  const Kernel q = build_kernel(g, &killed, true);
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(k, k);
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < k; ++i) index[static_cast<std::size_t>(live[static_cast<std::size_t>(i)])] = i;
  for (int i = 0; i < k; ++i) {
    const int u = live[static_cast<std::size_t>(i)];
    const double su = std::sqrt(g.weighted_degree(u));
    for (int a = q.offsets[static_cast<std::size_t>(u)]; a < q.offsets[static_cast<std::size_t>(u) + 1]; ++a) {
      const int v = q.cols[static_cast<std::size_t>(a)];
      S(i, index[static_cast<std::size_t>(v)]) =
          q.probs[static_cast<std::size_t>(a)] * su / std::sqrt(g.weighted_degree(v));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  const Eigen::VectorXd lambda = es.eigenvalues();
  const Eigen::MatrixXd& psi = es.eigenvectors();
  const Eigen::MatrixXd sq = psi.array().square().matrix();  // sq(v, j) = psi_j(v)^2

  const double lmax = std::clamp(lambda(k - 1), 0.0, 1.0 - 1e-15);
  Eigen::VectorXd pow = Eigen::VectorXd::Ones(k);
  double total = 0.0;
  const long max_iter = 100000000;
  for (long t = 0;; ++t) {
    const Eigen::VectorXd diag = sq * pow;
    total += (static_cast<double>(t) + 1.0) * diag.maxCoeff();
    // Exact geometric tail bound: sum_{s>t} (s+1) lmax^s.
    const double lp = std::pow(lmax, static_cast<double>(t) + 1.0);
    const double tail = lp * ((static_cast<double>(t) + 2.0) * (1.0 - lmax) + lmax) / ((1.0 - lmax) * (1.0 - lmax));
    if (tail < tol) break;
    if (t > max_iter) throw std::runtime_error("w_bubble_sum: truncation did not converge");
    pow.array() *= lambda.array().cwiseMax(0.0);
  }
  return total;
}

namespace {

// Fundamental matrix Z = (I - P + 1 pi^T)^{-1}; E_u[tau_v] =
// (Z(v,v) - Z(u,v)) / pi(v).
Eigen::MatrixXd fundamental_matrix(const Network& g) {
  require_dense_cap(g);
  const int n = g.vertex_count();
  const Kernel k = build_kernel(g, nullptr, true);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u)
    for (int i = k.offsets[static_cast<std::size_t>(u)]; i < k.offsets[static_cast<std::size_t>(u) + 1]; ++i)
      A(u, k.cols[static_cast<std::size_t>(i)]) = k.probs[static_cast<std::size_t>(i)];
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) A(u, v) = (u == v ? 1.0 : 0.0) - A(u, v) + g.stationary(v);
  return A.partialPivLu().solve(Eigen::MatrixXd::Identity(n, n));
}

}  // namespace

std::vector<double> target_time_all(const Network& g) {
  const Eigen::MatrixXd z = fundamental_matrix(g);
  const double trace = z.trace();
  const int n = g.vertex_count();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int u = 0; u < n; ++u) out[static_cast<std::size_t>(u)] = trace - z.row(u).sum();
  return out;
}

double target_time(const Network& g, int u) { return target_time_all(g)[static_cast<std::size_t>(u)]; }

std::vector<double> hitting_times(const Network& g, const std::vector<int>& w_set) {
  require_dense_cap(g);
  if (w_set.empty()) throw std::invalid_argument("hitting_times: empty target set");
  const std::vector<char> killed = mask_of(g, w_set);
  const int n = g.vertex_count();
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  int k = 0;
  for (int v = 0; v < n; ++v)
    if (!killed[static_cast<std::size_t>(v)]) index[static_cast<std::size_t>(v)] = k++;
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  if (k == 0) return out;
  const Kernel q = build_kernel(g, &killed, true);
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(k, k);
  for (int u = 0; u < n; ++u) {
    const int iu = index[static_cast<std::size_t>(u)];
    if (iu < 0) continue;
    for (int i = q.offsets[static_cast<std::size_t>(u)]; i < q.offsets[static_cast<std::size_t>(u) + 1]; ++i)
      A(iu, index[static_cast<std::size_t>(q.cols[static_cast<std::size_t>(i)])]) -= q.probs[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd sol = A.partialPivLu().solve(Eigen::VectorXd::Ones(k));
  for (int v = 0; v < n; ++v)
    if (index[static_cast<std::size_t>(v)] >= 0) out[static_cast<std::size_t>(v)] = sol(index[static_cast<std::size_t>(v)]);
  return out;
}

HittingLowerReport hitting_probability_lower(const Network& g, int u, const std::vector<int>& u_set,
                                             long t, long r) {
  require_dense_cap(g);
  if (u_set.empty()) throw std::invalid_argument("hitting_probability_lower: empty target set");
  HittingLowerReport rep;
  rep.cap_r = capacity_exact(g, u_set, r);
  // P_u(tau_U < t) by absorbing iteration from the point mass at u.
  const std::vector<char> in_u = mask_of(g, u_set);
  const Kernel k = build_kernel(g, nullptr, true);
  const int n = g.vertex_count();
  std::vector<double> cur(static_cast<std::size_t>(n), 0.0);
  double hit = 0.0;
  if (in_u[static_cast<std::size_t>(u)])
    hit = 1.0;
  else
    cur[static_cast<std::size_t>(u)] = 1.0;
  std::vector<double> next;
  for (long s = 1; s < t && hit < 1.0; ++s) {
    k.apply(cur, next);
    for (int v = 0; v < n; ++v)
      if (in_u[static_cast<std::size_t>(v)]) {
        hit += next[static_cast<std::size_t>(v)];
        next[static_cast<std::size_t>(v)] = 0.0;
      }
    cur.swap(next);
  }
  rep.lhs = hit;
  rep.t_mix = uniform_mixing_time(g);
  rep.hypothesis_ok =
      static_cast<double>(r) >= std::log(static_cast<double>(n)) * static_cast<double>(rep.t_mix);
  rep.inequality_holds = rep.lhs >= rep.cap_r / 3.0;
  return rep;
}

}  // namespace ustlab
