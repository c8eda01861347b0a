#include "ustlab/loop_erasure.hpp"

#include <stdexcept>
#include <unordered_map>

namespace ustlab {

LoopErasure loop_erase(const Walk& x) {
  if (x.empty()) throw std::invalid_argument("loop_erase: empty walk");
  const int L = x.length();
  std::unordered_map<int, int> last;
  last.reserve(x.vertices.size());
  for (int t = 0; t <= L; ++t) last[x.vertices[static_cast<std::size_t>(t)]] = t;

  LoopErasure out;
  out.path.push_back(x.vertices.front());
  out.lambda.push_back(0);
  while (true) {
    const int i = last.at(out.path.back());
    if (i >= L) break;
    out.path.push_back(x.vertices[static_cast<std::size_t>(i) + 1]);
    out.lambda.push_back(i + 1);
  }
  return out;
}

std::vector<int> cut_times(const Walk& x) {
  const int L = x.length();
  if (L <= 0) return {};
  // Vertex v with first occurrence f and last occurrence l blocks every
  // t in [f, l); the cut times are the unblocked t in [0, L).
  std::unordered_map<int, std::pair<int, int>> span;
  for (int t = 0; t <= L; ++t) {
    auto [it, inserted] = span.try_emplace(x.vertices[static_cast<std::size_t>(t)], t, t);
    if (!inserted) it->second.second = t;
  }
  std::vector<int> blocked(static_cast<std::size_t>(L) + 1, 0);
  for (const auto& [v, fl] : span) {
    if (fl.first < fl.second) {
      ++blocked[static_cast<std::size_t>(fl.first)];
      --blocked[static_cast<std::size_t>(fl.second)];
    }
  }
  std::vector<int> out;
  int acc = 0;
  for (int t = 0; t < L; ++t) {
    acc += blocked[static_cast<std::size_t>(t)];
    if (acc == 0) out.push_back(t);
  }
  return out;
}

std::vector<int> cut_points(const Walk& x) {
  std::vector<int> out;
  for (int t : cut_times(x)) out.push_back(x.vertices[static_cast<std::size_t>(t)]);
  return out;
}

std::vector<Segment> segment_decomposition(const Walk& x, int run_time, int buffer_time) {
  if (buffer_time < 1 || 3 * buffer_time >= run_time)
    throw std::invalid_argument("segment_decomposition: need 0 < s < r/3");
  const int L = x.length();
  std::vector<Segment> out;
  for (int i = 1; i <= L / run_time; ++i) {
    const double lo = static_cast<double>(i - 1) * run_time;
    Segment seg;
    seg.buffer_run = x.slice_excl(lo, static_cast<double>(i) * run_time - buffer_time);
    seg.core_run = x.slice_excl(lo + buffer_time, static_cast<double>(i) * run_time - 2.0 * buffer_time);
    out.push_back(std::move(seg));
  }
  return out;
}

}  // namespace ustlab
