#pragma once

// Permutations on flat vertex indices. The flat index of the group element x
// in part p (0-based) is p*|G| + x. All actions are right actions: applying
// p then q is perm_compose(p, q).

#include <algorithm>
#include <numeric>
#include <vector>

#include "mcayley/util.hpp"

namespace mcayley {

using Perm = std::vector<int>;
using OrbitPartition = std::vector<std::vector<int>>;

inline Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool perm_is_identity(const Perm& p) {
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (p[i] != i) return false;
  return true;
}

inline bool perm_is_bijection(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// Apply p, then q.
inline Perm perm_compose(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

inline Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

// p^c = c^-1 p c
inline Perm perm_conjugate(const Perm& p, const Perm& c) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[c[i]] = c[p[i]];
  return r;
}

inline int perm_order(const Perm& p) {
  int n = static_cast<int>(p.size());
  std::vector<bool> seen(n, false);
  long long ord = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, static_cast<long long>(len));
  }
  return static_cast<int>(ord);
}

inline bool perm_fixed_point_free(const Perm& p) {
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (p[i] == i) return false;
  return true;
}

}  // namespace mcayley
