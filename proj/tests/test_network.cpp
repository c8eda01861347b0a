#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ustlab/generators.hpp"
#include "ustlab/network.hpp"
#include "ustlab/rng.hpp"

using namespace ustlab;

namespace {

// Coordinate oracle for the torus: neighbours of id are the 2d ids obtained
// by bumping one coordinate by +-1 mod m.
std::set<int> torus_neighbors_oracle(int d, int m, int id) {
  std::vector<int> coords(static_cast<std::size_t>(d));
  int rest = id;
  for (int i = d - 1; i >= 0; --i) {
    coords[static_cast<std::size_t>(i)] = rest % m;
    rest /= m;
  }
  std::set<int> out;
  for (int i = 0; i < d; ++i) {
    for (int delta : {1, m - 1}) {
      std::vector<int> c = coords;
      c[static_cast<std::size_t>(i)] = (c[static_cast<std::size_t>(i)] + delta) % m;
      int v = 0;
      for (int j = 0; j < d; ++j) v = v * m + c[static_cast<std::size_t>(j)];
      out.insert(v);
    }
  }
  return out;
}

std::set<int> adjacency_set(const Network& g, int v) {
  std::set<int> out;
  for (const auto& arc : g.neighbors(v)) out.insert(arc.to);
  return out;
}

}  // namespace

TEST_CASE("torus generators") {
  SUBCASE("d=1 m=3 is the triangle") {
    const Network g = make_torus(1, 3);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
    for (int v = 0; v < 3; ++v) CHECK(g.degree(v) == 2);
  }
  SUBCASE("d=5 m=3 is 10-regular on 243 vertices, neighbours per coordinate oracle") {
    const Network g = make_torus(5, 3);
    CHECK(g.vertex_count() == 243);
    for (int v = 0; v < 243; ++v) CHECK(g.degree(v) == 10);
    Rng rng(7);
    for (int probe = 0; probe < 40; ++probe) {
      const int v = static_cast<int>(rng.below(243));
      CHECK(adjacency_set(g, v) == torus_neighbors_oracle(5, 3, v));
    }
  }
  SUBCASE("d=2 m=4 is 4-regular bipartite by coordinate parity") {
    const Network g = make_torus(2, 4);
    CHECK(g.vertex_count() == 16);
    for (int v = 0; v < 16; ++v) CHECK(g.degree(v) == 4);
    for (const Edge& e : g.edges()) {
      const int pu = (e.u / 4 + e.u % 4) % 2;
      const int pv = (e.v / 4 + e.v % 4) % 2;
      CHECK(pu != pv);
    }
  }
  SUBCASE("m < 3 rejected") { CHECK_THROWS_AS(make_torus(2, 2), std::invalid_argument); }
}

TEST_CASE("hypercube generators") {
  const Network one = make_hypercube(1);
  CHECK(one.vertex_count() == 2);
  CHECK(one.edge_count() == 1);

  // edge count oracle: m * 2^(m-1)
  for (int m : {3, 10}) {
    const Network g = make_hypercube(m);
    CHECK(g.vertex_count() == (1 << m));
    CHECK(g.edge_count() == m * (1 << (m - 1)));
    for (int v = 0; v < g.vertex_count(); ++v) CHECK(g.degree(v) == m);
  }
  CHECK(make_hypercube(3).edge_count() == 12);
}

TEST_CASE("random regular graphs") {
  SUBCASE("n=4 k=3 is forced to K4") {
    const Network g = make_random_regular(4, 3, 11);
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 6);
    for (int v = 0; v < 4; ++v) CHECK(adjacency_set(g, v).size() == 3);
  }
  SUBCASE("n=1000 k=3 connected and 3-regular") {
    const Network g = make_random_regular(1000, 3, 5);
    CHECK(g.vertex_count() == 1000);
    for (int v = 0; v < 1000; ++v) CHECK(g.degree(v) == 3);
    CHECK(g.balance() == 1.0);
  }
  SUBCASE("odd n*k rejected") { CHECK_THROWS_AS(make_random_regular(5, 3, 1), std::invalid_argument); }
}

TEST_CASE("negative controls") {
  const Network star = make_negative_control(ControlKind::star, 5);
  CHECK(star.degree(0) == 4);
  for (int v = 1; v < 5; ++v) CHECK(star.degree(v) == 1);

  const Network path = make_negative_control(ControlKind::path, 9);
  CHECK(path.edge_count() == 8);  // its own unique spanning tree, diameter n-1

  const Network cliques = make_negative_control(ControlKind::two_cliques, 8);
  CHECK(cliques.vertex_count() == 8);
  CHECK(cliques.edge_count() == 6 + 6 + 1);  // two K4 plus the bridge
  int deg4 = 0, deg3 = 0;
  for (int v = 0; v < 8; ++v) {
    if (cliques.degree(v) == 4) ++deg4;
    if (cliques.degree(v) == 3) ++deg3;
  }
  CHECK(deg4 == 2);
  CHECK(deg3 == 6);

  const Network ewp = make_negative_control(ControlKind::expander_with_paths, 200);
  CHECK(ewp.vertex_count() == 200);
  CHECK(ewp.balance() >= 3.0);  // expander vertices carry a pendant path
}

TEST_CASE("stationary distribution and balance invariants") {
  for (const Network& g : {make_hypercube(5), make_torus(3, 3), make_complete(9)}) {
    double total = 0.0;
    for (int v = 0; v < g.vertex_count(); ++v) total += g.stationary(v);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.balance() == 1.0);
  }
  const Network star = make_star(6);
  CHECK(star.balance() == 5.0);
}

TEST_CASE("contract") {
  SUBCASE("K3 with two vertices merged: 2 parallel edges and a self-loop") {
    const Network g = make_complete(3);
    const Network h = contract(g, VertexSet::of(g, {0, 1}));
    CHECK(h.vertex_count() == 2);
    CHECK(h.edge_count() == 3);
    int self_loops = 0, parallel = 0;
    for (const Edge& e : h.edges()) {
      if (e.u == e.v)
        ++self_loops;
      else
        ++parallel;
    }
    CHECK(self_loops == 1);
    CHECK(parallel == 2);
    CHECK(h.contraction_map().size() == 3);
    CHECK(h.contraction_map()[0] == h.contraction_map()[1]);
  }
  SUBCASE("singleton contraction is a relabelled copy") {
    const Network g = make_cycle(5);
    const Network h = contract(g, VertexSet::of(g, {3}));
    CHECK(h.vertex_count() == 5);
    CHECK(h.edge_count() == 5);
    std::multiset<int> before, after;
    for (int v = 0; v < 5; ++v) {
      before.insert(g.degree(v));
      after.insert(h.degree(v));
    }
    CHECK(before == after);
  }
  SUBCASE("C4 with opposite vertices merged: 3 vertices, 4 edges, no self-loop") {
    const Network g = make_cycle(4);
    const Network h = contract(g, VertexSet::of(g, {0, 2}));
    CHECK(h.vertex_count() == 3);
    CHECK(h.edge_count() == 4);
    for (const Edge& e : h.edges()) CHECK(e.u != e.v);
  }
  SUBCASE("edge identity preserved") {
    const Network g = make_complete(5);
    const Network h = contract(g, VertexSet::of(g, {1, 2, 4}));
    REQUIRE(h.edge_count() == g.edge_count());
    for (int id = 0; id < g.edge_count(); ++id) CHECK(h.edge(id).weight == g.edge(id).weight);
  }
  SUBCASE("empty set rejected") {
    const Network g = make_complete(3);
    CHECK_THROWS_AS(contract(g, VertexSet()), std::invalid_argument);
  }
}

TEST_CASE("sunny network") {
  SUBCASE("weight formula at n=100, beta=0.5, d=10") {
    // 10-regular circulant on 100 vertices: neighbours at offsets +-1..5.
    std::vector<Edge> edges;
    for (int v = 0; v < 100; ++v)
      for (int off = 1; off <= 5; ++off) edges.push_back({v, (v + off) % 100, 1.0});
    const Network reg = Network::from_edges(100, std::move(edges));
    const Network s = make_sunny(reg, 0.5);
    const double expect = 2.0 * 0.25 * 10.0 / (10.0 - 0.5);
    for (const Edge& e : s.edges())
      if (e.v == 100) CHECK(e.weight == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("lazy step probability to the sun is beta^2/sqrt(n) within 1e-12") {
    for (double beta : {0.1, 0.5, 1.0}) {
      for (int n : {16, 100, 1024}) {
        const Network g = n == 16    ? make_hypercube(4)
                          : n == 100 ? make_torus(2, 10)
                                     : make_hypercube(10);
        const Network s = make_sunny(g, beta);
        const int rho = sun_vertex(s);
        const double target = beta * beta / std::sqrt(static_cast<double>(n));
        for (int u = 0; u < n; ++u) {
          double w_to_sun = 0.0;
          for (const auto& arc : s.neighbors(u))
            if (arc.to == rho) w_to_sun += arc.weight;
          const double prob = 0.5 * w_to_sun / s.weighted_degree(u);
          CHECK(std::abs(prob - target) / target < 1e-12);
        }
      }
    }
  }
  SUBCASE("beta out of range rejected, weights vanish as beta -> 0") {
    const Network g = make_hypercube(4);
    CHECK_THROWS_AS(make_sunny(g, 1.5), std::invalid_argument);  // beta^2 >= sqrt(16)/2
    CHECK_THROWS_AS(make_sunny(g, 0.0), std::invalid_argument);
    const Network tiny = make_sunny(g, 1e-6);
    for (const Edge& e : tiny.edges())
      if (e.v == sun_vertex(tiny)) CHECK(e.weight < 1e-11);
  }
}

TEST_CASE("edge list round trip is bit-exact") {
  const Network g = make_random_regular(24, 3, 9);
  const std::string dumped = g.to_edge_list();
  const Network back = Network::from_edge_list(dumped);
  CHECK(back.to_edge_list() == dumped);
  CHECK(back.vertex_count() == g.vertex_count());
  CHECK(back.edge_count() == g.edge_count());

  const Network s = make_sunny(make_hypercube(3), 0.4);
  const Network s2 = Network::from_edge_list(s.to_edge_list());
  CHECK(s2.to_edge_list() == s.to_edge_list());
}

TEST_CASE("network validation") {
  CHECK_THROWS_AS(Network::from_edges(3, {{0, 1, 1.0}}), std::invalid_argument);  // disconnected
  CHECK_THROWS_AS(Network::from_edges(2, {{0, 1, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Network::from_edges(2, {{0, 2, 1.0}}), std::invalid_argument);
  // adjacency symmetric: every edge id appears in both endpoint lists
  const Network g = make_complete(4);
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    int hits = 0;
    for (const auto& arc : g.neighbors(e.u))
      if (arc.edge == id) ++hits;
    for (const auto& arc : g.neighbors(e.v))
      if (arc.edge == id) ++hits;
    CHECK(hits == 2);
  }
}

TEST_CASE("vertex set volume") {
  const Network g = make_star(6);
  const VertexSet w = VertexSet::of(g, {0, 3});
  CHECK(w.volume() == 6.0);  // center degree 5 plus a leaf
  CHECK(w.contains(3));
  CHECK(!w.contains(2));
  CHECK_THROWS_AS(VertexSet::of(g, {9}), std::invalid_argument);
}
