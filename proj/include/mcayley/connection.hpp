#pragma once

// Connection-set families S_{i,j} of an m-Cayley digraph, stored as bitmasks
// over element indices (group order <= 32), plus the exact enumeration of all
// families of a given mode used by censuses and cross-validation.

#include <cstdint>
#include <string>
#include <vector>

#include "mcayley/group.hpp"
#include "mcayley/util.hpp"

namespace mcayley {

enum class Mode { Digraph, Graph, PCayleyDigraph, PCayleyGraph };

inline bool mode_is_graph(Mode m) { return m == Mode::Graph || m == Mode::PCayleyGraph; }
inline bool mode_is_pcayley(Mode m) {
  return m == Mode::PCayleyDigraph || m == Mode::PCayleyGraph;
}

inline std::string mode_to_string(Mode m) {
  switch (m) {
    case Mode::Digraph: return "digraph";
    case Mode::Graph: return "graph";
    case Mode::PCayleyDigraph: return "pcayley-digraph";
    case Mode::PCayleyGraph: return "pcayley-graph";
  }
  return "?";
}

inline Mode mode_from_string(const std::string& s) {
  if (s == "digraph") return Mode::Digraph;
  if (s == "graph") return Mode::Graph;
  if (s == "pcayley-digraph") return Mode::PCayleyDigraph;
  if (s == "pcayley-graph") return Mode::PCayleyGraph;
  throw InputError("unknown mode: " + s);
}

inline std::uint32_t invert_mask(const FiniteGroup& g, std::uint32_t mask) {
  std::uint32_t out = 0;
  for (int x = 0; x < g.order(); ++x)
    if (mask >> x & 1u) out |= 1u << g.inv(x);
  return out;
}

inline std::uint32_t full_mask(const FiniteGroup& g) {
  return g.order() == 32 ? 0xffffffffu : ((1u << g.order()) - 1u);
}

struct ConnectionSets {
  FiniteGroup group;
  int m = 1;
  std::vector<std::uint32_t> masks;  // m*m, S_{i,j} at index i*m+j (0-based parts)

  ConnectionSets() = default;
  ConnectionSets(FiniteGroup g, int parts)
      : group(std::move(g)), m(parts), masks(static_cast<std::size_t>(parts) * parts, 0) {
    if (parts < 1) throw InputError("part count must be at least 1");
    if (group.order() > 32) throw InputError("connection sets require group order <= 32");
  }

  std::uint32_t mask(int i, int j) const { return masks[static_cast<std::size_t>(i) * m + j]; }
  void set_mask(int i, int j, std::uint32_t v) { masks[static_cast<std::size_t>(i) * m + j] = v; }

  std::vector<int> set_of(int i, int j) const {
    std::vector<int> out;
    std::uint32_t v = mask(i, j);
    for (int x = 0; x < group.order(); ++x)
      if (v >> x & 1u) out.push_back(x);
    return out;
  }
  void set_elems(int i, int j, const std::vector<int>& elems) {
    std::uint32_t v = 0;
    for (int x : elems) {
      if (x < 0 || x >= group.order()) throw InputError("connection-set element out of range");
      v |= 1u << x;
    }
    set_mask(i, j, v);
  }

  std::size_t arc_count() const {
    std::size_t total = 0;
    for (std::uint32_t v : masks) total += static_cast<std::size_t>(__builtin_popcount(v));
    return total * group.order();
  }

  bool operator==(const ConnectionSets& o) const {
    return m == o.m && group == o.group && masks == o.masks;
  }
  bool operator!=(const ConnectionSets& o) const { return !(*this == o); }
};

inline void validate(const ConnectionSets& c, Mode mode) {
  for (int i = 0; i < c.m; ++i) {
    if (c.mask(i, i) & 1u)
      throw InputError("identity in diagonal set S_{" + std::to_string(i + 1) + "," +
                       std::to_string(i + 1) + "} (self-loop)");
    if (mode_is_pcayley(mode) && c.mask(i, i) != 0)
      throw InputError("nonempty diagonal set in pcayley mode at part " + std::to_string(i + 1));
  }
  if (mode_is_graph(mode)) {
    for (int i = 0; i < c.m; ++i)
      for (int j = 0; j < c.m; ++j)
        if (c.mask(j, i) != invert_mask(c.group, c.mask(i, j)))
          throw InputError("graph mode requires S_{j,i} = S_{i,j}^{-1}; violated at (" +
                           std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  }
}

// The exact index space of all connection-set families of (G, m, mode).
// Free slots are ordered row-major; free bits within a slot are ordered by
// element index (graph diagonals: by representative of {x, x^-1} classes).
// The family of instance k is read off the binary digits of k, least
// significant bit first.
class InstanceSpace {
 public:
  InstanceSpace(FiniteGroup g, int m, Mode mode)
      : group_(std::move(g)), m_(m), mode_(mode) {
    int n = group_.order();
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) {
        if (i == j) {
          if (mode_is_pcayley(mode_)) continue;
          Slot s{i, j, {}};
          if (mode_ == Mode::Digraph) {
            for (int x = 1; x < n; ++x) s.elems.push_back(x);
          } else {  // graph diagonal: inverse-closed subsets of G \ {1}
            for (int x = 1; x < n; ++x)
              if (x <= group_.inv(x)) s.elems.push_back(x);
          }
          if (!s.elems.empty()) slots_.push_back(std::move(s));
        } else {
          if (mode_is_graph(mode_) && i > j) continue;  // (j,i) determined
          Slot s{i, j, {}};
          for (int x = 0; x < n; ++x) s.elems.push_back(x);
          slots_.push_back(std::move(s));
        }
      }
    bits_ = 0;
    for (const auto& s : slots_) bits_ += static_cast<int>(s.elems.size());
    if (bits_ > 62) throw BoundExceeded("instance space larger than 2^62");
  }

  int bits() const { return bits_; }
  std::uint64_t total() const { return 1ULL << bits_; }
  const FiniteGroup& group() const { return group_; }
  int m() const { return m_; }
  Mode mode() const { return mode_; }

  ConnectionSets instance(std::uint64_t index) const {
    if (index >= total()) throw InputError("instance index out of range");
    ConnectionSets c(group_, m_);
    std::uint64_t k = index;
    for (const auto& s : slots_) {
      std::uint32_t mask = 0;
      for (int e : s.elems) {
        if (k & 1ULL) {
          mask |= 1u << e;
          if (s.i == s.j && mode_is_graph(mode_)) mask |= 1u << group_.inv(e);
        }
        k >>= 1;
      }
      c.set_mask(s.i, s.j, mask);
      if (s.i != s.j && mode_is_graph(mode_))
        c.set_mask(s.j, s.i, invert_mask(group_, mask));
    }
    return c;
  }

  std::uint64_t index_of(const ConnectionSets& c) const {
    std::uint64_t index = 0;
    int bit = 0;
    for (const auto& s : slots_) {
      std::uint32_t mask = c.mask(s.i, s.j);
      for (int e : s.elems) {
        if (mask >> e & 1u) index |= 1ULL << bit;
        ++bit;
      }
    }
    return index;
  }

 private:
  struct Slot {
    int i, j;
    std::vector<int> elems;
  };
  FiniteGroup group_;
  int m_;
  Mode mode_;
  std::vector<Slot> slots_;
  int bits_ = 0;
};

}  // namespace mcayley
