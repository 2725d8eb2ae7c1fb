#pragma once

// Permutation groups at desk scale: closure with an explicit element list,
// orbits, semiregularity, brute-force normalizer/centralizer oracles in small
// symmetric groups, conjugating-element search, and the constructive
// conjugator between semiregular groups with matching orbit structure.

#include <algorithm>
#include <optional>
#include <unordered_set>
#include <vector>

#include "mcayley/group.hpp"
#include "mcayley/perm.hpp"
#include "mcayley/util.hpp"

namespace mcayley {

struct PermGroup {
  int degree = 0;
  std::vector<Perm> generators;
  // Exhaustive element list, sorted lexicographically (so elements[0] is the
  // identity). Populated lazily by ensure_elements.
  std::optional<std::vector<Perm>> elements;

  std::size_t order() const {
    if (!elements) throw InputError("element list not populated");
    return elements->size();
  }
  bool contains(const Perm& p) const {
    if (!elements) throw InputError("element list not populated");
    return std::binary_search(elements->begin(), elements->end(), p);
  }
};

inline PermGroup closure(std::vector<Perm> gens, int degree,
                         std::size_t bound = kDefaultElementBound) {
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != degree || !perm_is_bijection(p))
      throw InputError("generator is not a permutation of the stated degree");
  }
  std::unordered_set<std::vector<int>, detail::IntVecHash> seen;
  std::vector<Perm> queue{perm_identity(degree)};
  seen.insert(queue[0]);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const auto& g : gens) {
      Perm x = perm_compose(queue[q], g);
      if (seen.insert(x).second) {
        if (seen.size() > bound) throw BoundExceeded("permutation group exceeds element bound");
        queue.push_back(std::move(x));
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  PermGroup out;
  out.degree = degree;
  out.generators = std::move(gens);
  out.elements = std::move(queue);
  return out;
}

inline void ensure_elements(PermGroup& g, std::size_t bound = kDefaultElementBound) {
  if (g.elements) return;
  g.elements = closure(g.generators, g.degree, bound).elements;
}

// Small generating subset of an element list (greedy, deterministic).
inline std::vector<Perm> shrink_generators(const std::vector<Perm>& elements, int degree) {
  std::vector<Perm> gens;
  std::unordered_set<std::vector<int>, detail::IntVecHash> known;
  known.insert(perm_identity(degree));
  for (const auto& e : elements) {
    if (known.count(e)) continue;
    gens.push_back(e);
    // re-close
    std::vector<Perm> queue(known.begin(), known.end());
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (const auto& g : gens) {
        Perm x = perm_compose(queue[q], g);
        if (known.insert(x).second) queue.push_back(std::move(x));
      }
    if (known.size() == elements.size()) break;
  }
  if (gens.empty()) gens.push_back(perm_identity(degree));
  return gens;
}

inline OrbitPartition orbits(const PermGroup& g) {
  std::vector<int> comp(g.degree, -1);
  OrbitPartition out;
  for (int start = 0; start < g.degree; ++start) {
    if (comp[start] >= 0) continue;
    int id = static_cast<int>(out.size());
    std::vector<int> block{start};
    comp[start] = id;
    for (std::size_t q = 0; q < block.size(); ++q)
      for (const auto& p : g.generators) {
        int y = p[block[q]];
        if (comp[y] < 0) {
          comp[y] = id;
          block.push_back(y);
        }
      }
    std::sort(block.begin(), block.end());
    out.push_back(std::move(block));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

inline bool is_semiregular(PermGroup& g, std::size_t bound = kDefaultElementBound) {
  ensure_elements(g, bound);
  for (const auto& e : *g.elements)
    if (!perm_is_identity(e) && !perm_fixed_point_free(e)) return false;
  return true;
}

// The right-multiplication action of G on G x {1..m}: R(g): x_i -> (xg)_i.
inline Perm right_translation(const FiniteGroup& g, int m, int elem) {
  int n = g.order();
  Perm p(static_cast<std::size_t>(n) * m);
  for (int part = 0; part < m; ++part)
    for (int x = 0; x < n; ++x) p[part * n + x] = part * n + g.mul(x, elem);
  return p;
}

inline PermGroup right_regular(const FiniteGroup& g, int m) {
  if (m < 1) throw InputError("part count must be at least 1");
  std::vector<Perm> gens;
  for (int e : greedy_generating_set(g)) gens.push_back(right_translation(g, m, e));
  if (gens.empty()) gens.push_back(perm_identity(g.order() * m));
  std::vector<Perm> elems;
  elems.reserve(g.order());
  for (int e = 0; e < g.order(); ++e) elems.push_back(right_translation(g, m, e));
  std::sort(elems.begin(), elems.end());
  PermGroup out;
  out.degree = g.order() * m;
  out.generators = std::move(gens);
  out.elements = std::move(elems);
  return out;
}

namespace detail {

// h^sigma == h, decided on generators against the element set.
inline bool normalizes(const Perm& sigma, const PermGroup& h) {
  for (const auto& gen : h.generators)
    if (!h.contains(perm_conjugate(gen, sigma))) return false;
  return true;
}

inline bool centralizes(const Perm& sigma, const PermGroup& h) {
  for (const auto& gen : h.generators)
    if (perm_conjugate(gen, sigma) != gen) return false;
  return true;
}

}  // namespace detail

// All sigma in S_n with h^sigma = h, by scanning the full symmetric group.
inline PermGroup brute_normalizer(int sym_degree, PermGroup& h) {
  if (sym_degree > 8) throw BoundExceeded("brute normalizer supports degree <= 8");
  if (h.degree != sym_degree) throw InputError("degree mismatch");
  ensure_elements(h);
  std::vector<Perm> found;
  Perm sigma = perm_identity(sym_degree);
  do {
    if (detail::normalizes(sigma, h)) found.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  PermGroup out;
  out.degree = sym_degree;
  out.generators = shrink_generators(found, sym_degree);
  out.elements = std::move(found);  // next_permutation yields lex order
  return out;
}

inline PermGroup brute_centralizer(int sym_degree, PermGroup& h) {
  if (sym_degree > 8) throw BoundExceeded("brute centralizer supports degree <= 8");
  if (h.degree != sym_degree) throw InputError("degree mismatch");
  ensure_elements(h);
  std::vector<Perm> found;
  Perm sigma = perm_identity(sym_degree);
  do {
    if (detail::centralizes(sigma, h)) found.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  PermGroup out;
  out.degree = sym_degree;
  out.generators = shrink_generators(found, sym_degree);
  out.elements = std::move(found);
  return out;
}

// First c in a's element order with h1^c = h2 (as sets), if any.
inline std::optional<Perm> conjugate_subgroup_search(const PermGroup& a, const PermGroup& h1,
                                                     const PermGroup& h2) {
  if (!a.elements || !h1.elements || !h2.elements)
    throw InputError("conjugate_subgroup_search requires element lists");
  for (const auto& e : *h1.elements)
    if (!a.contains(e)) throw InputError("h1 is not contained in the ambient group");
  for (const auto& e : *h2.elements)
    if (!a.contains(e)) throw InputError("h2 is not contained in the ambient group");
  if (h1.elements->size() != h2.elements->size()) return std::nullopt;
  for (const auto& c : *a.elements) {
    bool ok = true;
    for (const auto& x : *h1.elements) {
      if (!h2.contains(perm_conjugate(x, c))) {
        ok = false;
        break;
      }
    }
    if (ok) return c;
  }
  return std::nullopt;
}

// Multiplication table of a permutation group in element-list order. The
// sorted element list starts with the identity, so index 0 is the identity.
inline FiniteGroup permgroup_table(const PermGroup& h) {
  if (!h.elements) throw InputError("element list not populated");
  const auto& el = *h.elements;
  int n = static_cast<int>(el.size());
  auto index_of = [&](const Perm& p) {
    return static_cast<int>(std::lower_bound(el.begin(), el.end(), p) - el.begin());
  };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = index_of(perm_compose(el[i], el[j]));
  return FiniteGroup(std::move(t));
}

// Constructive conjugator between semiregular groups: with base points a_i
// per h1-orbit and b_i per h2-orbit (minimum elements, orbits paired in
// min-element order), sigma maps a_i^g to b_i^{g^iso}. iso maps h1 element
// indices to h2 element indices and must be an isomorphism of their tables.
inline Perm semiregular_conjugator(PermGroup& h1, PermGroup& h2, const std::vector<int>& iso) {
  ensure_elements(h1);
  ensure_elements(h2);
  if (h1.degree != h2.degree) throw InputError("semiregular_conjugator: degree mismatch");
  if (!is_semiregular(h1) || !is_semiregular(h2))
    throw InputError("semiregular_conjugator requires semiregular inputs");
  if (h1.elements->size() != h2.elements->size() ||
      iso.size() != h1.elements->size())
    throw InputError("semiregular_conjugator: isomorphism size mismatch");
  OrbitPartition o1 = orbits(PermGroup{h1.degree, *h1.elements, std::nullopt});
  OrbitPartition o2 = orbits(PermGroup{h2.degree, *h2.elements, std::nullopt});
  if (o1.size() != o2.size())
    throw InputError("semiregular_conjugator: orbit counts differ");
  // iso must be a table isomorphism
  {
    FiniteGroup t1 = permgroup_table(h1), t2 = permgroup_table(h2);
    if (!perm_is_bijection(iso)) throw InputError("iso is not a bijection");
    for (int a = 0; a < t1.order(); ++a)
      for (int b = 0; b < t1.order(); ++b)
        if (iso[t1.mul(a, b)] != t2.mul(iso[a], iso[b]))
          throw InputError("iso is not an isomorphism");
  }
  Perm sigma(h1.degree, -1);
  for (std::size_t t = 0; t < o1.size(); ++t) {
    int base1 = o1[t].front(), base2 = o2[t].front();
    for (std::size_t e = 0; e < h1.elements->size(); ++e) {
      sigma[(*h1.elements)[e][base1]] = (*h2.elements)[iso[e]][base2];
    }
  }
  if (!perm_is_bijection(sigma))
    throw InputError("semiregular_conjugator produced a non-bijection");
  // h1^sigma = h2, rechecked on every call
  for (const auto& x : *h1.elements)
    if (!h2.contains(perm_conjugate(x, sigma)))
      throw InputError("semiregular_conjugator output fails h1^sigma = h2");
  return sigma;
}

}  // namespace mcayley
