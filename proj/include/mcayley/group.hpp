#pragma once

// Finite groups given by multiplication tables: a catalog of named groups,
// automorphism groups by brute force over generator images, isomorphism
// testing, and generated subgroups.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcayley/util.hpp"

namespace mcayley {

class FiniteGroup {
 public:
  static constexpr int identity = 0;

  FiniteGroup() : order_(1), table_{0}, inverse_{0} {}

  explicit FiniteGroup(std::vector<std::vector<int>> table, std::string name = "")
      : name_(std::move(name)) {
    order_ = static_cast<int>(table.size());
    if (order_ < 1) throw InputError("group table is empty");
    table_.resize(static_cast<std::size_t>(order_) * order_);
    for (int a = 0; a < order_; ++a) {
      if (static_cast<int>(table[a].size()) != order_)
        throw InputError("group table is not square");
      for (int b = 0; b < order_; ++b) {
        int v = table[a][b];
        if (v < 0 || v >= order_) throw InputError("group table entry out of range");
        table_[static_cast<std::size_t>(a) * order_ + b] = v;
      }
    }
    validate();
  }

  int order() const { return order_; }
  const std::string& name() const { return name_; }

  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }

  int elem_order(int a) const {
    int o = 1;
    for (int x = a; x != identity; x = mul(x, a)) ++o;
    return o;
  }

  int conjugate(int x, int g) const { return mul(mul(inv(g), x), g); }  // x^g = g^-1 x g

  bool is_abelian() const {
    for (int a = 0; a < order_; ++a)
      for (int b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  const std::vector<int>& table_flat() const { return table_; }

  bool operator==(const FiniteGroup& o) const {
    return order_ == o.order_ && table_ == o.table_;
  }
  bool operator!=(const FiniteGroup& o) const { return !(*this == o); }

 private:
  void validate() {
    // identity row/column
    for (int x = 0; x < order_; ++x) {
      if (mul(identity, x) != x || mul(x, identity) != x)
        throw InputError("element 0 is not an identity of the table");
    }
    // Latin square
    for (int a = 0; a < order_; ++a) {
      std::vector<bool> row(order_, false), col(order_, false);
      for (int b = 0; b < order_; ++b) {
        if (row[mul(a, b)]) throw InputError("table row is not a bijection");
        row[mul(a, b)] = true;
        if (col[mul(b, a)]) throw InputError("table column is not a bijection");
        col[mul(b, a)] = true;
      }
    }
    // associativity, exhaustive at table scale
    if (order_ <= 64) {
      for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
          for (int c = 0; c < order_; ++c)
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
              throw InputError("table is not associative");
    }
    inverse_.assign(order_, -1);
    for (int a = 0; a < order_; ++a) {
      for (int b = 0; b < order_; ++b) {
        if (mul(a, b) == identity && mul(b, a) == identity) {
          inverse_[a] = b;
          break;
        }
      }
      if (inverse_[a] < 0) throw InputError("element without inverse");
    }
  }

  int order_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::string name_;
};

// An automorphism of a FiniteGroup, stored as the images array x -> images[x].
struct GroupAutomorphism {
  std::vector<int> images;

  bool operator==(const GroupAutomorphism& o) const { return images == o.images; }
  bool operator<(const GroupAutomorphism& o) const { return images < o.images; }
};

inline bool is_automorphism(const FiniteGroup& g, const std::vector<int>& images) {
  int n = g.order();
  if (static_cast<int>(images.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (int x : images) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = true;
  }
  if (images[FiniteGroup::identity] != FiniteGroup::identity) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (images[g.mul(a, b)] != g.mul(images[a], images[b])) return false;
  return true;
}

inline std::vector<int> subgroup_generated(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<bool> in(g.order(), false);
  in[FiniteGroup::identity] = true;
  std::vector<int> queue{FiniteGroup::identity};
  for (int gen : gens) {
    if (gen < 0 || gen >= g.order()) throw InputError("generator index out of range");
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (int gen : gens) {
      int x = g.mul(queue[q], gen);
      if (!in[x]) {
        in[x] = true;
        queue.push_back(x);
      }
    }
  }
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x)
    if (in[x]) out.push_back(x);
  return out;
}

// Greedy generating set: repeatedly adjoin the smallest element outside the
// current closure.
inline std::vector<int> greedy_generating_set(const FiniteGroup& g) {
  std::vector<int> gens;
  std::vector<int> cl = subgroup_generated(g, gens);
  while (static_cast<int>(cl.size()) < g.order()) {
    int next = -1;
    std::vector<bool> in(g.order(), false);
    for (int x : cl) in[x] = true;
    for (int x = 0; x < g.order(); ++x)
      if (!in[x]) {
        next = x;
        break;
      }
    gens.push_back(next);
    cl = subgroup_generated(g, gens);
  }
  return gens;
}

// Exact minimal number of generators, searched up to 3. Cached per table.
inline int min_generator_count(const FiniteGroup& g) {
  static std::map<std::vector<int>, int> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(g.table_flat());
    if (it != cache.end()) return it->second;
  }
  int result = -1;
  if (g.order() == 1) result = 0;
  if (result < 0)
    for (int x = 1; x < g.order() && result < 0; ++x)
      if (static_cast<int>(subgroup_generated(g, {x}).size()) == g.order()) result = 1;
  if (result < 0)
    for (int x = 1; x < g.order() && result < 0; ++x)
      for (int y = x + 1; y < g.order() && result < 0; ++y)
        if (static_cast<int>(subgroup_generated(g, {x, y}).size()) == g.order()) result = 2;
  if (result < 0)
    for (int x = 1; x < g.order() && result < 0; ++x)
      for (int y = x + 1; y < g.order() && result < 0; ++y)
        for (int z = y + 1; z < g.order() && result < 0; ++z)
          if (static_cast<int>(subgroup_generated(g, {x, y, z}).size()) == g.order()) result = 3;
  if (result < 0) throw InputError("group needs more than 3 generators; out of supported range");
  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(g.table_flat(), result);
  return result;
}

// Sorted order profiles (o(u1) <= ... <= o(uk)) over generating k-subsets.
inline std::vector<std::vector<int>> generating_order_profiles_uncached(const FiniteGroup& g,
                                                                        int k) {
  std::vector<std::vector<int>> out;
  auto push = [&](std::vector<int> prof) {
    std::sort(prof.begin(), prof.end());
    if (std::find(out.begin(), out.end(), prof) == out.end()) out.push_back(prof);
  };
  if (k == 0) return out;
  if (k == 1) {
    for (int x = 1; x < g.order(); ++x)
      if (static_cast<int>(subgroup_generated(g, {x}).size()) == g.order())
        push({g.elem_order(x)});
  } else if (k == 2) {
    for (int x = 1; x < g.order(); ++x)
      for (int y = x + 1; y < g.order(); ++y)
        if (static_cast<int>(subgroup_generated(g, {x, y}).size()) == g.order())
          push({g.elem_order(x), g.elem_order(y)});
  } else if (k == 3) {
    for (int x = 1; x < g.order(); ++x)
      for (int y = x + 1; y < g.order(); ++y)
        for (int z = y + 1; z < g.order(); ++z)
          if (static_cast<int>(subgroup_generated(g, {x, y, z}).size()) == g.order())
            push({g.elem_order(x), g.elem_order(y), g.elem_order(z)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline const std::vector<std::vector<int>>& generating_order_profiles(const FiniteGroup& g,
                                                                      int k) {
  static std::map<std::pair<std::vector<int>, int>, std::vector<std::vector<int>>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(g.table_flat(), k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, generating_order_profiles_uncached(g, k)).first;
  return it->second;
}

namespace detail {

inline FiniteGroup cyclic_group(int k, const std::string& name) {
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) t[a][b] = (a + b) % k;
  return FiniteGroup(std::move(t), name);
}

inline FiniteGroup product_of_cyclics(int j, int k, const std::string& name) {
  int n = j * k;
  auto idx = [&](int u, int v) { return u * k + v; };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int u1 = 0; u1 < j; ++u1)
    for (int v1 = 0; v1 < k; ++v1)
      for (int u2 = 0; u2 < j; ++u2)
        for (int v2 = 0; v2 < k; ++v2)
          t[idx(u1, v1)][idx(u2, v2)] = idx((u1 + u2) % j, (v1 + v2) % k);
  return FiniteGroup(std::move(t), name);
}

// Dihedral group of ORDER n = 2k. Elements 0..k-1 are a^0..a^{k-1}, elements
// k..2k-1 are b*a^i, with relations a^k = b^2 = 1, b a b = a^-1.
inline FiniteGroup dihedral_group(int n, const std::string& name) {
  if (n % 2 != 0 || n < 2) throw InputError("dihedral order must be even and >= 2");
  int k = n / 2;
  auto rot = [&](int i) { return ((i % k) + k) % k; };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      bool pf = p >= k, qf = q >= k;
      int i = pf ? p - k : p, j = qf ? q - k : q;
      int r;
      if (!pf && !qf) r = rot(i + j);                 // a^i a^j
      else if (!pf && qf) r = k + rot(j - i);         // a^i (b a^j) = b a^{j-i}
      else if (pf && !qf) r = k + rot(i + j);         // (b a^i) a^j
      else r = rot(j - i);                            // (b a^i)(b a^j) = a^{j-i}
      t[p][q] = r;
    }
  return FiniteGroup(std::move(t), name);
}

inline FiniteGroup symmetric_group(int n, const std::string& name) {
  if (n < 1 || n > 4) throw InputError("symmetric group catalog supports S1..S4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  int order = static_cast<int>(perms.size());
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[b][perms[a][i]];  // apply a, then b
      t[a][b] = index_of(c);
    }
  return FiniteGroup(std::move(t), name);
}

}  // namespace detail

// Catalog tokens: Zk, ZjxZk, Dn (even n, dihedral of order n), Sn (n <= 4).
inline FiniteGroup make_named_group(const std::string& token) {
  auto parse_int = [&](const std::string& s) -> std::optional<int> {
    if (s.empty()) return std::nullopt;
    int v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + (c - '0');
      if (v > 1000000) return std::nullopt;
    }
    return v;
  };
  if (token.size() >= 2 && token[0] == 'Z') {
    auto xpos = token.find('x');
    if (xpos == std::string::npos) {
      auto k = parse_int(token.substr(1));
      if (k && *k >= 1) return detail::cyclic_group(*k, token);
    } else {
      auto j = parse_int(token.substr(1, xpos - 1));
      if (j && xpos + 2 <= token.size() && token[xpos + 1] == 'Z') {
        auto k = parse_int(token.substr(xpos + 2));
        if (k && *j >= 1 && *k >= 1) return detail::product_of_cyclics(*j, *k, token);
      }
    }
  } else if (token.size() >= 2 && token[0] == 'D') {
    auto n = parse_int(token.substr(1));
    if (n) return detail::dihedral_group(*n, token);
  } else if (token.size() >= 2 && token[0] == 'S') {
    auto n = parse_int(token.substr(1));
    if (n) return detail::symmetric_group(*n, token);
  }
  throw InputError("unknown group token: " + token);
}

// All automorphisms, sorted lexicographically by images array. Cached per
// table. Brute force over images of a greedy generating set.
inline const std::vector<GroupAutomorphism>& automorphism_group(const FiniteGroup& g,
                                                                int order_bound = 24) {
  if (g.order() > order_bound)
    throw BoundExceeded("group order exceeds automorphism bound");
  static std::map<std::vector<int>, std::shared_ptr<std::vector<GroupAutomorphism>>> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(g.table_flat());
    if (it != cache.end()) return *it->second;
  }

  int n = g.order();
  std::vector<int> gens = greedy_generating_set(g);
  // expression of each element as parent * gens[gi]
  std::vector<int> parent(n, -1), via(n, -1);
  {
    std::vector<int> queue{FiniteGroup::identity};
    std::vector<bool> seen(n, false);
    seen[FiniteGroup::identity] = true;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        int x = g.mul(queue[q], gens[gi]);
        if (!seen[x]) {
          seen[x] = true;
          parent[x] = queue[q];
          via[x] = static_cast<int>(gi);
          queue.push_back(x);
        }
      }
  }
  auto build_map = [&](const std::vector<int>& gen_images) -> std::optional<std::vector<int>> {
    std::vector<int> img(n, -1);
    img[FiniteGroup::identity] = FiniteGroup::identity;
    // fill in BFS order so parents are resolved first
    std::vector<int> order_of(n, -1);
    {
      std::vector<int> queue{FiniteGroup::identity};
      std::vector<bool> seen(n, false);
      seen[FiniteGroup::identity] = true;
      for (std::size_t q = 0; q < queue.size(); ++q) {
        int x = queue[q];
        if (x != FiniteGroup::identity) img[x] = g.mul(img[parent[x]], gen_images[via[x]]);
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
          int y = g.mul(x, gens[gi]);
          if (!seen[y]) {
            seen[y] = true;
            queue.push_back(y);
          }
        }
      }
    }
    if (!is_automorphism(g, img)) return std::nullopt;
    return img;
  };

  auto result = std::make_shared<std::vector<GroupAutomorphism>>();
  std::vector<int> gen_images(gens.size());
  std::vector<std::vector<int>> candidates(gens.size());
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    int o = g.elem_order(gens[gi]);
    for (int x = 0; x < n; ++x)
      if (g.elem_order(x) == o) candidates[gi].push_back(x);
  }
  std::vector<std::size_t> pos(gens.size(), 0);
  if (gens.empty()) {
    result->push_back(GroupAutomorphism{{0}});
  } else {
    std::size_t level = 0;
    while (true) {
      if (pos[level] == candidates[level].size()) {
        if (level == 0) break;
        pos[level] = 0;
        --level;
        ++pos[level];
        continue;
      }
      gen_images[level] = candidates[level][pos[level]];
      if (level + 1 < gens.size()) {
        ++level;
      } else {
        if (auto img = build_map(gen_images))
          result->push_back(GroupAutomorphism{std::move(*img)});
        ++pos[level];
      }
    }
    std::sort(result->begin(), result->end());
    result->erase(std::unique(result->begin(), result->end()), result->end());
  }

  std::lock_guard<std::mutex> lock(mtx);
  auto [it, inserted] = cache.emplace(g.table_flat(), result);
  return *it->second;
}

// First isomorphism g -> h in lexicographic search order, if any.
inline std::optional<std::vector<int>> groups_isomorphic(const FiniteGroup& g,
                                                         const FiniteGroup& h,
                                                         int order_bound = 24) {
  if (g.order() != h.order()) return std::nullopt;
  if (g.order() > order_bound) throw BoundExceeded("group order exceeds isomorphism bound");
  int n = g.order();
  if (n == 1) return std::vector<int>{0};
  std::vector<int> gens = greedy_generating_set(g);
  std::vector<int> parent(n, -1), via(n, -1);
  {
    std::vector<int> queue{FiniteGroup::identity};
    std::vector<bool> seen(n, false);
    seen[FiniteGroup::identity] = true;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        int x = g.mul(queue[q], gens[gi]);
        if (!seen[x]) {
          seen[x] = true;
          parent[x] = queue[q];
          via[x] = static_cast<int>(gi);
          queue.push_back(x);
        }
      }
  }
  std::vector<std::vector<int>> candidates(gens.size());
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    int o = g.elem_order(gens[gi]);
    for (int x = 0; x < n; ++x)
      if (h.elem_order(x) == o) candidates[gi].push_back(x);
  }
  std::vector<int> gen_images(gens.size());
  std::vector<std::size_t> pos(gens.size(), 0);
  std::size_t level = 0;
  while (true) {
    if (pos[level] == candidates[level].size()) {
      if (level == 0) return std::nullopt;
      pos[level] = 0;
      --level;
      ++pos[level];
      continue;
    }
    gen_images[level] = candidates[level][pos[level]];
    if (level + 1 < gens.size()) {
      ++level;
      continue;
    }
    // build candidate map
    std::vector<int> img(n, -1);
    img[FiniteGroup::identity] = FiniteGroup::identity;
    {
      std::vector<int> queue{FiniteGroup::identity};
      std::vector<bool> seen(n, false);
      seen[FiniteGroup::identity] = true;
      for (std::size_t q = 0; q < queue.size(); ++q) {
        int x = queue[q];
        if (x != FiniteGroup::identity) img[x] = h.mul(img[parent[x]], gen_images[via[x]]);
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
          int y = g.mul(x, gens[gi]);
          if (!seen[y]) {
            seen[y] = true;
            queue.push_back(y);
          }
        }
      }
    }
    bool ok = true;
    std::vector<bool> hit(n, false);
    for (int x = 0; x < n && ok; ++x) {
      if (img[x] < 0 || hit[img[x]]) ok = false;
      else hit[img[x]] = true;
    }
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        if (img[g.mul(a, b)] != h.mul(img[a], img[b])) ok = false;
    if (ok) return img;
    ++pos[level];
  }
}

}  // namespace mcayley
