#pragma once

// Small color-constrained digraphs for automorphism and isomorphism search.
// Adjacency lives in one 64-bit word per vertex, so n <= 64.

#include <cstdint>
#include <vector>

#include "mcayley/util.hpp"

namespace mcayley {

struct ColoredDigraph {
  int n = 0;
  std::vector<std::uint64_t> out, in;
  std::vector<int> color;

  ColoredDigraph() = default;
  explicit ColoredDigraph(int vertices)
      : n(vertices), out(vertices, 0), in(vertices, 0), color(vertices, 0) {
    if (vertices < 0 || vertices > 64)
      throw BoundExceeded("colored digraph supports at most 64 vertices");
  }

  void add_arc(int u, int v) {
    out[u] |= 1ULL << v;
    in[v] |= 1ULL << u;
  }
  bool arc(int u, int v) const { return out[u] >> v & 1ULL; }

  std::size_t arc_count() const {
    std::size_t total = 0;
    for (auto w : out) total += static_cast<std::size_t>(__builtin_popcountll(w));
    return total;
  }
};

}  // namespace mcayley
