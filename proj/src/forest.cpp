#include "ustlab/forest.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace ustlab {

OrientedForest::OrientedForest(std::vector<int> parent, std::vector<int> parent_edge)
    : parent_(std::move(parent)), parent_edge_(std::move(parent_edge)) {
  if (parent_.size() != parent_edge_.size())
    throw std::invalid_argument("forest: parent and parent_edge sizes differ");
  index();
}

void OrientedForest::index() {
  const int n = vertex_count();
  roots_.clear();
  depth_.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    if (parent_[static_cast<std::size_t>(v)] == kRoot) {
      roots_.push_back(v);
      depth_[static_cast<std::size_t>(v)] = 0;
      order.push_back(v);
    } else if (parent_[static_cast<std::size_t>(v)] < 0 || parent_[static_cast<std::size_t>(v)] >= n) {
      throw std::invalid_argument("forest: parent id out of range");
    }
  }
  if (roots_.empty()) throw std::invalid_argument("forest: no roots");

  child_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 0; v < n; ++v)
    if (!is_root(v)) ++child_offsets_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)]) + 1];
  for (std::size_t i = 1; i < child_offsets_.size(); ++i) child_offsets_[i] += child_offsets_[i - 1];
  children_.assign(static_cast<std::size_t>(n - static_cast<int>(roots_.size())), 0);
  std::vector<int> cursor(child_offsets_.begin(), child_offsets_.end() - 1);
  for (int v = 0; v < n; ++v)
    if (!is_root(v)) children_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])]++)] = v;

  // BFS downward from the roots; any unvisited vertex sits on a cycle.
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int v = order[head];
    for (int i = child_offsets_[static_cast<std::size_t>(v)]; i < child_offsets_[static_cast<std::size_t>(v) + 1]; ++i) {
      const int c = children_[static_cast<std::size_t>(i)];
      depth_[static_cast<std::size_t>(c)] = depth_[static_cast<std::size_t>(v)] + 1;
      order.push_back(c);
    }
  }
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("forest: parent pointers contain a cycle");
}

int OrientedForest::root_of(int v) const {
  while (!is_root(v)) v = parent(v);
  return v;
}

std::vector<int> OrientedForest::past(int v) const {
  std::vector<int> out{v};
  for (std::size_t head = 0; head < out.size(); ++head) {
    const int u = out[head];
    for (int i = child_offsets_[static_cast<std::size_t>(u)]; i < child_offsets_[static_cast<std::size_t>(u) + 1]; ++i)
      out.push_back(children_[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<int> OrientedForest::future(int v, bool exclude_root) const {
  std::vector<int> out;
  int cur = v;
  while (true) {
    out.push_back(cur);
    if (is_root(cur)) break;
    cur = parent(cur);
  }
  if (exclude_root && out.size() > 1) out.pop_back();
  if (exclude_root && out.size() == 1 && is_root(out.front())) out.clear();
  return out;
}

int OrientedForest::height_of_past(int v) const {
  int best = 0;
  const int base = depth(v);
  for (int u : past(v)) best = std::max(best, depth(u) - base);
  return best;
}

int OrientedForest::height() const {
  int best = 0;
  for (int d : depth_) best = std::max(best, d);
  return best;
}

std::vector<int> OrientedForest::ball(int v, int radius) const {
  std::vector<int> dist(static_cast<std::size_t>(vertex_count()), -1);
  std::vector<int> frontier{v};
  dist[static_cast<std::size_t>(v)] = 0;
  std::vector<int> out{v};
  for (int d = 1; d <= radius && !frontier.empty(); ++d) {
    std::vector<int> next;
    for (int u : frontier) {
      auto touch = [&](int w) {
        if (w >= 0 && dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = d;
          next.push_back(w);
          out.push_back(w);
        }
      };
      if (!is_root(u)) touch(parent(u));
      for (int i = child_offsets_[static_cast<std::size_t>(u)]; i < child_offsets_[static_cast<std::size_t>(u) + 1]; ++i)
        touch(children_[static_cast<std::size_t>(i)]);
    }
    frontier = std::move(next);
  }
  return out;
}

int OrientedForest::tree_diameter() const {
  if (roots_.size() != 1)
    throw std::invalid_argument("tree_diameter: forest has multiple components; use quotient_diameter");
  return quotient_diameter();
}

int OrientedForest::quotient_diameter() const {
  // Double BFS on the quotient graph where all roots are one vertex.
  const int n = vertex_count();
  auto bfs = [&](int start_is_root, int start) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::queue<int> q;
    if (start_is_root) {
      for (int r : roots_) {
        dist[static_cast<std::size_t>(r)] = 0;
        q.push(r);
      }
    } else {
      dist[static_cast<std::size_t>(start)] = 0;
      q.push(start);
    }
    int far = start_is_root ? roots_.front() : start;
    int far_d = 0;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      auto touch = [&](int w, int d) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = d;
          if (d > far_d) {
            far_d = d;
            far = w;
          }
          q.push(w);
        }
      };
      const int du = dist[static_cast<std::size_t>(u)];
      if (!is_root(u)) {
        const int p = parent(u);
        if (is_root(p)) {
          // entering the glued root: expand to all roots at the same depth
          for (int r : roots_) touch(r, du + 1);
        } else {
          touch(p, du + 1);
        }
      } else {
        for (int r : roots_) touch(r, du);
      }
      for (int i = child_offsets_[static_cast<std::size_t>(u)]; i < child_offsets_[static_cast<std::size_t>(u) + 1]; ++i)
        touch(children_[static_cast<std::size_t>(i)], du + 1);
    }
    return std::pair<int, int>{far, far_d};
  };
  const auto [far1, d1] = bfs(1, 0);
  (void)d1;
  const auto [far2, d2] = bfs(0, far1);
  (void)far2;
  return d2;
}

std::vector<int> OrientedForest::path_between(int a, int b) const {
  std::vector<int> up_a, up_b;
  for (int v = a;; v = parent(v)) {
    up_a.push_back(v);
    if (is_root(v)) break;
  }
  for (int v = b;; v = parent(v)) {
    up_b.push_back(v);
    if (is_root(v)) break;
  }
  if (up_a.back() != up_b.back()) throw std::invalid_argument("path_between: vertices in different components");
  // Trim the common suffix down to the lowest common ancestor.
  std::size_t i = up_a.size(), j = up_b.size();
  while (i > 1 && j > 1 && up_a[i - 2] == up_b[j - 2]) {
    --i;
    --j;
  }
  std::vector<int> out(up_a.begin(), up_a.begin() + static_cast<std::ptrdiff_t>(i));
  for (std::size_t k = j - 1; k-- > 0;) out.push_back(up_b[k]);
  return out;
}

std::vector<int> OrientedForest::edge_ids() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (!is_root(v)) out.push_back(parent_edge(v));
  std::sort(out.begin(), out.end());
  return out;
}

bool OrientedForest::is_spanning_tree_of(const Network& g) const {
  if (vertex_count() != g.vertex_count()) return false;
  if (roots_.size() != 1) return false;
  for (int v = 0; v < vertex_count(); ++v) {
    if (is_root(v)) continue;
    const Edge& e = g.edge(parent_edge(v));
    const int p = parent(v);
    if (!((e.u == v && e.v == p) || (e.v == v && e.u == p))) return false;
  }
  return true;  // acyclicity and reachability were validated on construction
}

std::string OrientedForest::serialize() const {
  std::string out;
  char buf[64];
  for (int v = 0; v < vertex_count(); ++v) {
    std::snprintf(buf, sizeof buf, "%d %d %d\n", v, parent(v), parent_edge(v));
    out += buf;
  }
  return out;
}

OrientedForest OrientedForest::parse(const std::string& text) {
  std::istringstream in(text);
  std::vector<int> parent, parent_edge;
  int v, p, e;
  while (in >> v >> p >> e) {
    if (v != static_cast<int>(parent.size())) throw std::invalid_argument("forest parse: vertices out of order");
    parent.push_back(p);
    parent_edge.push_back(e);
  }
  return OrientedForest(std::move(parent), std::move(parent_edge));
}

OrientedForest forest_from_edges(const Network& g, const std::vector<int>& edge_ids,
                                 const std::vector<int>& roots) {
  const int n = g.vertex_count();
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (int id : edge_ids) {
    const Edge& e = g.edge(id);
    if (e.u == e.v) continue;
    adj[static_cast<std::size_t>(e.u)].push_back({e.v, id});
    adj[static_cast<std::size_t>(e.v)].push_back({e.u, id});
  }
  std::vector<int> parent(static_cast<std::size_t>(n), -2);
  std::vector<int> parent_edge(static_cast<std::size_t>(n), OrientedForest::kRoot);
  std::vector<int> frontier;
  for (int r : roots) {
    parent[static_cast<std::size_t>(r)] = OrientedForest::kRoot;
    frontier.push_back(r);
  }
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const int v = frontier[head];
    for (const auto& [to, id] : adj[static_cast<std::size_t>(v)])
      if (parent[static_cast<std::size_t>(to)] == -2) {
        parent[static_cast<std::size_t>(to)] = v;
        parent_edge[static_cast<std::size_t>(to)] = id;
        frontier.push_back(to);
      }
  }
  for (int v = 0; v < n; ++v)
    if (parent[static_cast<std::size_t>(v)] == -2)
      throw std::invalid_argument("forest_from_edges: edges do not reach every vertex");
  return OrientedForest(std::move(parent), std::move(parent_edge));
}

}  // namespace ustlab
