#include "ustlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "ustlab/rng.hpp"

namespace ustlab {

namespace {

long long checked_pow(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > (1LL << 40) / base) throw std::invalid_argument("graph size out of machine range");
    out *= base;
  }
  return out;
}

bool connected(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == n;
}

Network from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [u, v] : pairs) edges.push_back({u, v, 1.0});
  return Network::from_edges(n, std::move(edges));
}

}  // namespace

Network make_torus(int d, int m) {
  if (d < 1) throw std::invalid_argument("make_torus: d >= 1 required");
  if (m < 3) throw std::invalid_argument("make_torus: m >= 3 required (m=2 creates parallel edges)");
  const long long n = checked_pow(m, d);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  // id = sum_i c_i m^(d-1-i); stride for coordinate i is m^(d-1-i).
  for (long long v = 0; v < n; ++v) {
    long long stride = 1;
    for (int i = d - 1; i >= 0; --i) {
      const long long coord = (v / stride) % m;
      const long long up = v + (coord + 1 == m ? stride * (1 - m) : stride);
      edges.emplace_back(static_cast<int>(v), static_cast<int>(up));
      stride *= m;
    }
  }
  return from_pairs(static_cast<int>(n), edges);
}

Network make_hypercube(int m) {
  if (m < 1) throw std::invalid_argument("make_hypercube: m >= 1 required");
  if (m > 24) throw std::invalid_argument("make_hypercube: size out of range");
  const int n = 1 << m;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(m) / 2);
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < m; ++b) {
      const int u = v ^ (1 << b);
      if (u > v) edges.emplace_back(v, u);
    }
  return from_pairs(n, edges);
}

Network make_random_regular(int n, int k, std::uint64_t seed) {
  if (k < 3) throw std::invalid_argument("make_random_regular: k >= 3 required");
  if (n <= k) throw std::invalid_argument("make_random_regular: n > k required");
  if ((static_cast<long long>(n) * k) % 2 != 0)
    throw std::invalid_argument("make_random_regular: n*k must be even");
  Rng rng(seed);
  const int rounds = 2000;
  for (int attempt = 0; attempt < rounds; ++attempt) {
    std::vector<int> stubs(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<int>(i) / k;
    // Fisher-Yates pairing.
    for (std::size_t i = stubs.size() - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.below(i + 1)]);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(stubs.size() / 2);
    std::set<std::pair<int, int>> seen;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) {
        ok = false;
        break;
      }
      if (u > v) std::swap(u, v);
      if (!seen.insert({u, v}).second) {
        ok = false;
        break;
      }
      edges.emplace_back(u, v);
    }
    if (ok && connected(n, edges)) return from_pairs(n, edges);
  }
  throw std::runtime_error("make_random_regular: rejection budget exhausted (parameters too tight)");
}

Network make_complete(int n) {
  if (n < 2) throw std::invalid_argument("make_complete: n >= 2 required");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return from_pairs(n, edges);
}

Network make_cycle(int n) {
  if (n < 3) throw std::invalid_argument("make_cycle: n >= 3 required");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return from_pairs(n, edges);
}

Network make_path(int n) {
  if (n < 2) throw std::invalid_argument("make_path: n >= 2 required");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return from_pairs(n, edges);
}

Network make_star(int n) {
  if (n < 2) throw std::invalid_argument("make_star: n >= 2 required");
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
  return from_pairs(n, edges);
}

Network make_random_connected(int n, int extra_edges, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("make_random_connected: n >= 2 required");
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;
  // Random recursive tree skeleton.
  for (int v = 1; v < n; ++v) {
    const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
    edges.emplace_back(u, v);
    seen.insert({u, v});
  }
  const long long max_extra = static_cast<long long>(n) * (n - 1) / 2 - (n - 1);
  extra_edges = static_cast<int>(std::min<long long>(extra_edges, max_extra));
  while (extra_edges > 0) {
    int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) continue;
    edges.emplace_back(u, v);
    --extra_edges;
  }
  return from_pairs(n, edges);
}

ControlKind control_kind_from_string(const std::string& name) {
  if (name == "path") return ControlKind::path;
  if (name == "star") return ControlKind::star;
  if (name == "two-cliques") return ControlKind::two_cliques;
  if (name == "expander-with-paths" || name == "expander-paths") return ControlKind::expander_with_paths;
  throw std::invalid_argument("unknown negative-control kind: " + name);
}

Network make_negative_control(ControlKind kind, int n) {
  if (n < 4) throw std::invalid_argument("make_negative_control: n >= 4 required");
  switch (kind) {
    case ControlKind::path:
      return make_path(n);
    case ControlKind::star:
      return make_star(n);
    case ControlKind::two_cliques: {
      const int a = n / 2;
      std::vector<std::pair<int, int>> edges;
      for (int u = 0; u < a; ++u)
        for (int v = u + 1; v < a; ++v) edges.emplace_back(u, v);
      for (int u = a; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
      edges.emplace_back(a - 1, a);  // the bridge
      return from_pairs(n, edges);
    }
    case ControlKind::expander_with_paths: {
      // h expander vertices, each carrying a pendant path; h*(len+1) <= n
      // and the remaining vertices lengthen the first paths by one.
      const int len = std::max(1, static_cast<int>(std::lround(std::log(static_cast<double>(n)))));
      int h = std::max(4, n / (len + 1));
      if (h % 2 == 1) ++h;  // 3-regular needs even order
      if (h * (len + 1) > n) h -= 2;
      if (h < 4) throw std::invalid_argument("expander-with-paths: n too small");
      Network core = make_random_regular(h, 3, 0x9e0fULL + static_cast<std::uint64_t>(n));
      std::vector<std::pair<int, int>> edges;
      for (const Edge& e : core.edges()) edges.emplace_back(e.u, e.v);
      int next = h;
      int leftovers = n - h * (len + 1);
      for (int v = 0; v < h && next < n; ++v) {
        int tail = v;
        int this_len = len + (leftovers > 0 ? (--leftovers, 1) : 0);
        for (int i = 0; i < this_len && next < n; ++i) {
          edges.emplace_back(tail, next);
          tail = next++;
        }
      }
      return from_pairs(n, edges);
    }
  }
  throw std::logic_error("unreachable");
}

Network make_family(const std::string& family, int n, std::uint64_t seed) {
  if (family == "complete") return make_complete(n);
  if (family == "cycle") return make_cycle(n);
  if (family == "path") return make_path(n);
  if (family == "star") return make_star(n);
  if (family == "two-cliques") return make_negative_control(ControlKind::two_cliques, n);
  if (family == "expander-paths") return make_negative_control(ControlKind::expander_with_paths, n);
  if (family == "hypercube") {
    int m = 0;
    while ((1 << m) < n) ++m;
    if ((1 << m) != n) throw std::invalid_argument("hypercube size must be a power of 2");
    return make_hypercube(m);
  }
  if (family == "torus5") {
    int m = 3;
    while (checked_pow(m, 5) < n) ++m;
    if (checked_pow(m, 5) != n) throw std::invalid_argument("torus5 size must be m^5 with m >= 3");
    return make_torus(5, m);
  }
  if (family == "random3reg") return make_random_regular(n, 3, seed);
  throw std::invalid_argument("unknown graph family: " + family);
}

}  // namespace ustlab
