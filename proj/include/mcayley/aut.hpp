#pragma once

// Automorphism groups and isomorphism testing of colored digraphs via
// equitable-partition refinement on (out, in)-degree signatures with
// backtracking, and part-respecting isomorphism of m-Cayley digraphs.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "mcayley/colored.hpp"
#include "mcayley/digraph.hpp"
#include "mcayley/perm.hpp"
#include "mcayley/permgroup.hpp"
#include "mcayley/util.hpp"

namespace mcayley {

struct AutOptions {
  std::size_t element_bound = kDefaultElementBound;
  int vertex_bound = 64;
};

namespace detail {

// Aligned ordered partitions of the source and destination vertex sets. A
// candidate bijection maps the k-th source cell onto the k-th destination
// cell.
struct CellPair {
  std::vector<int> sv, dv;                    // vertex orders
  std::vector<std::pair<int, int>> bounds;    // (start, length) per cell
};

class IsoSearch {
 public:
  IsoSearch(const ColoredDigraph& a, const ColoredDigraph& b)
      : a_(a), b_(b) {}

  // emit returns false to stop the search (used for exists-one queries).
  bool run(const std::function<bool(const Perm&)>& emit) {
    if (a_.n != b_.n) return true;
    if (a_.arc_count() != b_.arc_count()) return true;
    CellPair cells;
    if (!initial_cells(cells)) return true;
    return search(cells, emit);
  }

 private:
  const ColoredDigraph& a_;
  const ColoredDigraph& b_;

  bool initial_cells(CellPair& cells) {
    int n = a_.n;
    cells.sv.resize(n);
    cells.dv.resize(n);
    std::vector<int> sa(n), sb(n);
    for (int v = 0; v < n; ++v) sa[v] = sb[v] = v;
    std::stable_sort(sa.begin(), sa.end(),
                     [&](int x, int y) { return a_.color[x] < a_.color[y]; });
    std::stable_sort(sb.begin(), sb.end(),
                     [&](int x, int y) { return b_.color[x] < b_.color[y]; });
    cells.sv = sa;
    cells.dv = sb;
    int start = 0;
    while (start < n) {
      int cs = a_.color[sa[start]];
      int end = start;
      while (end < n && a_.color[sa[end]] == cs) ++end;
      // aligned destination cell must carry the same color and size
      if (b_.color[sb[start]] != cs) return false;
      if (end < n && b_.color[sb[end]] == cs) return false;
      if (b_.color[sb[end - 1]] != cs) return false;
      cells.bounds.emplace_back(start, end - start);
      start = end;
    }
    return true;
  }

  static std::uint64_t mask_of(const std::vector<int>& order, std::pair<int, int> cell) {
    std::uint64_t m = 0;
    for (int t = cell.first; t < cell.first + cell.second; ++t) m |= 1ULL << order[t];
    return m;
  }

  // Refine until stable; false when the signature multisets ever diverge.
  bool refine(CellPair& cells) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t t = 0; t < cells.bounds.size(); ++t) {
        std::uint64_t smask = mask_of(cells.sv, cells.bounds[t]);
        std::uint64_t dmask = mask_of(cells.dv, cells.bounds[t]);
        for (std::size_t c = 0; c < cells.bounds.size(); ++c) {
          auto [start, len] = cells.bounds[c];
          if (len <= 1) continue;
          // key = (out-degree into splitter, in-degree into splitter, vertex)
          std::array<std::pair<std::pair<int, int>, int>, 64> skey, dkey;
          for (int k = 0; k < len; ++k) {
            int v = cells.sv[start + k];
            skey[k] = {{__builtin_popcountll(a_.out[v] & smask),
                        __builtin_popcountll(a_.in[v] & smask)},
                       v};
            int w = cells.dv[start + k];
            dkey[k] = {{__builtin_popcountll(b_.out[w] & dmask),
                        __builtin_popcountll(b_.in[w] & dmask)},
                       w};
          }
          std::sort(skey.begin(), skey.begin() + len);
          std::sort(dkey.begin(), dkey.begin() + len);
          bool split = false;
          for (int k = 0; k < len; ++k) {
            if (skey[k].first != dkey[k].first) return false;
            cells.sv[start + k] = skey[k].second;
            cells.dv[start + k] = dkey[k].second;
            if (k > 0 && skey[k].first != skey[k - 1].first) split = true;
          }
          if (split) {
            std::vector<std::pair<int, int>> nb;
            int cs = start;
            for (int k = 1; k <= len; ++k) {
              if (k == len || skey[k].first != skey[k - 1].first) {
                nb.emplace_back(cs, start + k - cs);
                cs = start + k;
              }
            }
            cells.bounds.erase(cells.bounds.begin() + c);
            cells.bounds.insert(cells.bounds.begin() + c, nb.begin(), nb.end());
            changed = true;
            t = cells.bounds.size();  // restart splitter loop
            break;
          }
        }
      }
    }
    return true;
  }

  bool verify(const Perm& p) const {
    for (int v = 0; v < a_.n; ++v) {
      if (a_.color[v] != b_.color[p[v]]) return false;
      std::uint64_t row = 0;
      std::uint64_t bits = a_.out[v];
      while (bits) {
        int w = __builtin_ctzll(bits);
        bits &= bits - 1;
        row |= 1ULL << p[w];
      }
      if (row != b_.out[p[v]]) return false;
    }
    return true;
  }

  bool search(CellPair cells, const std::function<bool(const Perm&)>& emit) {
    if (!refine(cells)) return true;
    // pick the largest non-singleton cell; ties by smallest minimum vertex
    int pick = -1;
    int best_len = 1, best_min = 1 << 30;
    for (std::size_t c = 0; c < cells.bounds.size(); ++c) {
      auto [start, len] = cells.bounds[c];
      if (len <= 1) continue;
      int mn = *std::min_element(cells.sv.begin() + start, cells.sv.begin() + start + len);
      if (len > best_len || (len == best_len && mn < best_min)) {
        pick = static_cast<int>(c);
        best_len = len;
        best_min = mn;
      }
    }
    if (pick < 0) {
      Perm p(a_.n);
      for (int i = 0; i < a_.n; ++i) p[cells.sv[i]] = cells.dv[i];
      if (!verify(p)) return true;
      return emit(p);
    }
    auto [start, len] = cells.bounds[pick];
    int v = *std::min_element(cells.sv.begin() + start, cells.sv.begin() + start + len);
    std::vector<int> targets(cells.dv.begin() + start, cells.dv.begin() + start + len);
    std::sort(targets.begin(), targets.end());
    for (int w : targets) {
      CellPair child = cells;
      // individualize v in the source cell, w in the destination cell:
      // move each to the back of its cell and split off a singleton
      auto sit = std::find(child.sv.begin() + start, child.sv.begin() + start + len, v);
      std::rotate(sit, sit + 1, child.sv.begin() + start + len);
      auto dit = std::find(child.dv.begin() + start, child.dv.begin() + start + len, w);
      std::rotate(dit, dit + 1, child.dv.begin() + start + len);
      child.bounds[pick] = {start, len - 1};
      child.bounds.insert(child.bounds.begin() + pick + 1, {start + len - 1, 1});
      if (!search(std::move(child), emit)) return false;
    }
    return true;
  }
};

}  // namespace detail

// Full automorphism group with materialized elements, sorted lexicographically.
inline PermGroup automorphism_group(const ColoredDigraph& g, const AutOptions& opt = {}) {
  if (g.n > opt.vertex_bound) throw BoundExceeded("vertex count exceeds automorphism bound");
  std::vector<Perm> found;
  detail::IsoSearch search(g, g);
  search.run([&](const Perm& p) {
    found.push_back(p);
    if (found.size() > opt.element_bound)
      throw BoundExceeded("automorphism group exceeds element bound");
    return true;
  });
  std::sort(found.begin(), found.end());
  PermGroup out;
  out.degree = g.n;
  out.generators = shrink_generators(found, g.n);
  out.elements = std::move(found);
  return out;
}

// First color- and arc-preserving bijection, if any.
inline std::optional<Perm> isomorphism(const ColoredDigraph& a, const ColoredDigraph& b,
                                       const AutOptions& opt = {}) {
  if (a.n > opt.vertex_bound || b.n > opt.vertex_bound)
    throw BoundExceeded("vertex count exceeds isomorphism bound");
  std::optional<Perm> result;
  detail::IsoSearch search(a, b);
  search.run([&](const Perm& p) {
    result = p;
    return false;
  });
  return result;
}

namespace detail {

// Augment with one extra vertex per part, arcs to the part members. Part
// vertices share one color distinct from all original colors, so any
// isomorphism of the augmented digraphs maps parts onto parts.
inline ColoredDigraph with_part_gadget(const MCayleyDigraph& g) {
  int n = g.n(), m = g.m();
  if (n + m > 64) throw BoundExceeded("part gadget exceeds 64 vertices");
  ColoredDigraph out(n + m);
  for (const auto& [u, v] : g.arcs()) out.add_arc(u, v);
  for (int p = 0; p < m; ++p) {
    out.color[n + p] = 1;
    for (int x = 0; x < g.group().order(); ++x) out.add_arc(n + p, g.vertex(p, x));
  }
  return out;
}

}  // namespace detail

// Isomorphism mapping every part of a onto some part of b.
inline std::optional<Perm> p_isomorphism(const MCayleyDigraph& a, const MCayleyDigraph& b,
                                         const AutOptions& opt = {}) {
  if (a.group().order() != b.group().order() || a.m() != b.m()) return std::nullopt;
  auto ga = detail::with_part_gadget(a);
  auto gb = detail::with_part_gadget(b);
  auto iso = isomorphism(ga, gb, opt);
  if (!iso) return std::nullopt;
  Perm p(iso->begin(), iso->begin() + a.n());
  // parts map onto parts by construction of the gadget
  for (int part = 0; part < a.m(); ++part) {
    int target = b.part_of(p[a.vertex(part, 0)]);
    for (int x = 0; x < a.group().order(); ++x)
      if (b.part_of(p[a.vertex(part, x)]) != target)
        throw InputError("part gadget failed to enforce the part partition");
  }
  return p;
}

// Aut(G)_(parts): automorphisms fixing every part setwise.
inline PermGroup automorphism_group_parts_fixed(const MCayleyDigraph& g,
                                                const AutOptions& opt = {}) {
  return automorphism_group(to_colored(g, /*by_part=*/true), opt);
}

inline PermGroup automorphism_group_full(const MCayleyDigraph& g, const AutOptions& opt = {}) {
  return automorphism_group(to_colored(g, /*by_part=*/false), opt);
}

}  // namespace mcayley
