#pragma once

#include <cstdint>
#include <string>

#include "ustlab/network.hpp"

namespace ustlab {

// Z_m^d with coordinate order row-major: vertex id = sum_i c_i * m^(d-1-i).
// Requires m >= 3 so that +1 and -1 neighbours are distinct.
Network make_torus(int d, int m);

// {0,1}^m with vertex id equal to the value of its bitstring.
Network make_hypercube(int m);

// Simple connected k-regular graph via the configuration model with
// whole-graph rejection of loops, multi-edges and disconnected outcomes.
Network make_random_regular(int n, int k, std::uint64_t seed);

Network make_complete(int n);
Network make_cycle(int n);
Network make_path(int n);
Network make_star(int n);

// Random connected simple graph: a uniform random spanning tree skeleton
// plus extra distinct random edges.
Network make_random_connected(int n, int extra_edges, std::uint64_t seed);

enum class ControlKind { path, star, two_cliques, expander_with_paths };
ControlKind control_kind_from_string(const std::string& name);

// The cheap counterexample graphs: a path, a star, two cliques joined by a
// bridge, and a 3-regular expander with a path of about log(n) vertices
// hanging off every expander vertex (exactly n vertices total).
Network make_negative_control(ControlKind kind, int n);

// Named family lookup used by the experiment harness and CLI.
// Families: complete | cycle | path | star | two-cliques | expander-paths |
// hypercube | torus5 | random3reg. The size argument is always n.
Network make_family(const std::string& family, int n, std::uint64_t seed);

}  // namespace ustlab
