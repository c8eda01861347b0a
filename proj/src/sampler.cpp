#include "ustlab/sampler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

#include "ustlab/loop_erasure.hpp"
#include "ustlab/rng.hpp"
#include "ustlab/walk.hpp"

namespace ustlab {

OrientedForest wilson(const Network& g, const VertexSet& root_set, std::uint64_t seed,
                      const std::vector<int>* vertex_order, bool lazy) {
  if (root_set.empty()) throw std::invalid_argument("wilson: empty root set");
  const int n = g.vertex_count();
  Rng rng(seed);
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  std::vector<int> parent(static_cast<std::size_t>(n), OrientedForest::kRoot);
  std::vector<int> parent_edge(static_cast<std::size_t>(n), OrientedForest::kRoot);
  std::vector<int> next(static_cast<std::size_t>(n), -1);
  std::vector<int> next_edge(static_cast<std::size_t>(n), -1);
  for (int r : root_set.ids()) in_tree[static_cast<std::size_t>(r)] = 1;

  const auto process = [&](int v0) {
    if (in_tree[static_cast<std::size_t>(v0)]) return;
    // Walk with next-pointer cycle erasure: the next[] map read back from
    // v0 after hitting the tree is exactly the loop erasure of the walk.
    int cur = v0;
    while (!in_tree[static_cast<std::size_t>(cur)]) {
      if (lazy && rng.half()) continue;
      int eid = -1;
      const int to = uniform_step_edge(g, cur, rng, &eid);
      next[static_cast<std::size_t>(cur)] = to;
      next_edge[static_cast<std::size_t>(cur)] = eid;
      cur = to;
    }
    cur = v0;
    while (!in_tree[static_cast<std::size_t>(cur)]) {
      in_tree[static_cast<std::size_t>(cur)] = 1;
      parent[static_cast<std::size_t>(cur)] = next[static_cast<std::size_t>(cur)];
      parent_edge[static_cast<std::size_t>(cur)] = next_edge[static_cast<std::size_t>(cur)];
      cur = next[static_cast<std::size_t>(cur)];
    }
  };

  if (vertex_order) {
    for (int v : *vertex_order) process(v);
    for (int v = 0; v < n; ++v) process(v);
  } else {
    for (int v = 0; v < n; ++v) process(v);
  }
  return OrientedForest(std::move(parent), std::move(parent_edge));
}

OrientedForest aldous_broder(const Network& g, int start, std::uint64_t seed, bool lazy) {
  const int n = g.vertex_count();
  if (start < 0 || start >= n) throw std::invalid_argument("aldous_broder: start out of range");
  Rng rng(seed);
  std::vector<int> parent(static_cast<std::size_t>(n), -2);
  std::vector<int> parent_edge(static_cast<std::size_t>(n), OrientedForest::kRoot);
  parent[static_cast<std::size_t>(start)] = OrientedForest::kRoot;
  int visited = 1;
  int cur = start;
  while (visited < n) {
    if (lazy && rng.half()) continue;
    int eid = -1;
    const int to = uniform_step_edge(g, cur, rng, &eid);
    if (parent[static_cast<std::size_t>(to)] == -2) {
      // First entry: keep the reversal of the entering edge.
      parent[static_cast<std::size_t>(to)] = cur;
      parent_edge[static_cast<std::size_t>(to)] = eid;
      ++visited;
    }
    cur = to;
  }
  return OrientedForest(std::move(parent), std::move(parent_edge));
}

std::vector<int> ust_path(const Network& g, int u, int v, std::uint64_t seed, bool lazy) {
  if (u == v) throw std::invalid_argument("ust_path: endpoints must be distinct");
  Rng rng(seed);
  Walk walk;
  walk.vertices.push_back(u);
  int cur = u;
  while (cur != v) {
    cur = lazy ? lazy_step(g, cur, rng) : uniform_step(g, cur, rng);
    walk.vertices.push_back(cur);
  }
  return loop_erase(walk).path;
}

namespace {

// Weighted Laplacian with row/column `drop` removed; self-loops ignored.
template <typename Scalar, typename Weight>
std::vector<std::vector<Scalar>> reduced_laplacian(const Network& g, Weight to_weight) {
  const int n = g.vertex_count();
  std::vector<std::vector<Scalar>> lap(static_cast<std::size_t>(n - 1),
                                       std::vector<Scalar>(static_cast<std::size_t>(n - 1), Scalar(0)));
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    const Scalar w = to_weight(e.weight);
    if (e.u > 0 && e.v > 0) {
      lap[static_cast<std::size_t>(e.u - 1)][static_cast<std::size_t>(e.v - 1)] -= w;
      lap[static_cast<std::size_t>(e.v - 1)][static_cast<std::size_t>(e.u - 1)] -= w;
    }
    if (e.u > 0) lap[static_cast<std::size_t>(e.u - 1)][static_cast<std::size_t>(e.u - 1)] += w;
    if (e.v > 0) lap[static_cast<std::size_t>(e.v - 1)][static_cast<std::size_t>(e.v - 1)] += w;
  }
  return lap;
}

// Fraction-free Gaussian elimination; exact over the integers.
boost::multiprecision::cpp_int bareiss_determinant(
    std::vector<std::vector<boost::multiprecision::cpp_int>> a) {
  using Int = boost::multiprecision::cpp_int;
  const int k = static_cast<int>(a.size());
  if (k == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int col = 0; col < k - 1; ++col) {
    int pivot = -1;
    for (int r = col; r < k; ++r)
      if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(col)]);
      sign = -sign;
    }
    for (int r = col + 1; r < k; ++r) {
      for (int c = col + 1; c < k; ++c) {
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
            (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)] -
             a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)]) /
            prev;
      }
      a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] = 0;
    }
    prev = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
  }
  Int det = a[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(k - 1)];
  return sign < 0 ? Int(-det) : det;
}

bool integral_weights(const Network& g) {
  for (const Edge& e : g.edges())
    if (std::floor(e.weight) != e.weight || e.weight > 1e15) return false;
  return true;
}

}  // namespace

TreeCount spanning_tree_count(const Network& g) {
  if (g.vertex_count() > 64) throw std::invalid_argument("spanning_tree_count: n <= 64 required");
  TreeCount out;
  if (g.vertex_count() == 1) {
    out.decimal = "1";
    out.approx = 1.0;
    out.exact = true;
    return out;
  }
  if (integral_weights(g)) {
    using Int = boost::multiprecision::cpp_int;
    auto lap = reduced_laplacian<Int>(g, [](double w) { return Int(static_cast<long long>(w)); });
    const Int det = bareiss_determinant(std::move(lap));
    out.decimal = det.str();
    out.approx = static_cast<double>(det);
    out.exact = true;
    return out;
  }
  const int k = g.vertex_count() - 1;
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(k, k);
  auto rows = reduced_laplacian<double>(g, [](double w) { return w; });
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) lap(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  out.approx = lap.partialPivLu().determinant();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", out.approx);
  out.decimal = buf;
  out.exact = false;
  return out;
}

std::vector<std::vector<int>> enumerate_spanning_trees(const Network& g) {
  const int n = g.vertex_count();
  if (n > 10) throw std::invalid_argument("enumerate_spanning_trees: n <= 10 required");
  std::vector<int> usable;
  for (int id = 0; id < g.edge_count(); ++id)
    if (g.edge(id).u != g.edge(id).v) usable.push_back(id);
  const int m = static_cast<int>(usable.size());
  const int k = n - 1;
  std::vector<std::vector<int>> out;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  if (m < k) return out;

  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
  std::vector<int> uf(static_cast<std::size_t>(n));
  const auto find = [&](int x) {
    while (uf[static_cast<std::size_t>(x)] != x) {
      uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
      x = uf[static_cast<std::size_t>(x)];
    }
    return x;
  };
  while (true) {
    for (int i = 0; i < n; ++i) uf[static_cast<std::size_t>(i)] = i;
    bool acyclic = true;
    for (int i = 0; i < k && acyclic; ++i) {
      const Edge& e = g.edge(usable[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])]);
      const int a = find(e.u), b = find(e.v);
      if (a == b)
        acyclic = false;
      else
        uf[static_cast<std::size_t>(a)] = b;
    }
    if (acyclic) {
      std::vector<int> tree;
      tree.reserve(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) tree.push_back(usable[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])]);
      out.push_back(std::move(tree));
    }
    // next combination
    int i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

double tree_weight(const Network& g, const std::vector<int>& edge_ids) {
  double w = 1.0;
  for (int id : edge_ids) w *= g.edge(id).weight;
  return w;
}

}  // namespace ustlab
