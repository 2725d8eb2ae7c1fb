#pragma once

// The normalizer N of the semiregular right-multiplication action R(G) on
// G x {1..m} in closed form: elements are triples (g_1..g_m, alpha, sigma)
// acting by x_i -> ((g_i^-1 x)^alpha)_{i^sigma}, the decomposition being the
// internal semidirect product (L_1 x ... x L_m) . (S_m x Aut(G)). Includes
// composition, decomposition of raw vertex permutations, streams for N and
// its distinguished subgroups, the connection-set transform of a digraph
// under a normalizer element, and the subgroups of N preserving a given
// digraph.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "mcayley/connection.hpp"
#include "mcayley/digraph.hpp"
#include "mcayley/group.hpp"
#include "mcayley/perm.hpp"
#include "mcayley/util.hpp"

namespace mcayley {

struct NormalizerElement {
  std::vector<int> left;   // g_1..g_m, element indices
  std::vector<int> alpha;  // automorphism images
  std::vector<int> sigma;  // part permutation, sigma[i] = image of part i

  bool operator==(const NormalizerElement& o) const {
    return left == o.left && alpha == o.alpha && sigma == o.sigma;
  }
  bool operator<(const NormalizerElement& o) const {
    if (left != o.left) return left < o.left;
    if (alpha != o.alpha) return alpha < o.alpha;
    return sigma < o.sigma;
  }
};

// Filters for the enumeration streams. fix_left_identity pins g_r = 1,
// fix_sigma_point pins sigma(r) = r.
struct NormalizerFilter {
  bool alpha_identity = false;
  bool sigma_identity = false;
  int fix_left_identity = -1;
  int fix_sigma_point = -1;
};

class NormalizerContext {
 public:
  NormalizerContext(FiniteGroup g, int m)
      : g_(std::move(g)), m_(m), aut_(automorphism_group(g_)) {
    if (m_ < 1) throw InputError("part count must be at least 1");
  }

  const FiniteGroup& group() const { return g_; }
  int m() const { return m_; }
  int degree() const { return g_.order() * m_; }
  const std::vector<GroupAutomorphism>& aut() const { return aut_; }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (int i = 0; i < m_; ++i) o *= static_cast<std::uint64_t>(g_.order());
    for (int i = 2; i <= m_; ++i) o *= static_cast<std::uint64_t>(i);
    return o * aut_.size();
  }

  NormalizerElement identity_element() const {
    NormalizerElement e;
    e.left.assign(m_, FiniteGroup::identity);
    e.alpha = perm_identity(g_.order());
    e.sigma = perm_identity(m_);
    return e;
  }

  // L_i(g): x_i -> (g^-1 x)_i, other parts fixed.
  NormalizerElement left_translation(int part, int elem) const {
    NormalizerElement e = identity_element();
    e.left[part] = elem;
    return e;
  }

  // R(g) = L_1(g^-1)...L_m(g^-1) Inn(g): x_i -> (xg)_i.
  NormalizerElement right_translation_element(int elem) const {
    NormalizerElement e;
    e.left.assign(m_, g_.inv(elem));
    e.alpha.resize(g_.order());
    for (int x = 0; x < g_.order(); ++x) e.alpha[x] = g_.conjugate(x, elem);
    e.sigma = perm_identity(m_);
    return e;
  }

  NormalizerElement from_alpha(const std::vector<int>& images) const {
    NormalizerElement e = identity_element();
    e.alpha = images;
    return e;
  }

  NormalizerElement from_sigma(const std::vector<int>& sig) const {
    NormalizerElement e = identity_element();
    e.sigma = sig;
    return e;
  }

  Perm to_perm(const NormalizerElement& e) const {
    Perm p(degree());
    int n = g_.order();
    for (int part = 0; part < m_; ++part) {
      int ginv = g_.inv(e.left[part]);
      for (int x = 0; x < n; ++x)
        p[part * n + x] = e.sigma[part] * n + e.alpha[g_.mul(ginv, x)];
    }
    return p;
  }

  // Apply a, then b: left_i = a_i * (b_{i^sigma_a})^{alpha_a^-1},
  // alpha = alpha_a alpha_b, sigma = sigma_a sigma_b.
  NormalizerElement compose(const NormalizerElement& a, const NormalizerElement& b) const {
    NormalizerElement r;
    std::vector<int> alpha_a_inv = perm_inverse(a.alpha);
    r.left.resize(m_);
    for (int i = 0; i < m_; ++i)
      r.left[i] = g_.mul(a.left[i], alpha_a_inv[b.left[a.sigma[i]]]);
    r.alpha = perm_compose(a.alpha, b.alpha);
    r.sigma = perm_compose(a.sigma, b.sigma);
    return r;
  }

  NormalizerElement inverse(const NormalizerElement& e) const {
    NormalizerElement r;
    r.alpha = perm_inverse(e.alpha);
    r.sigma = perm_inverse(e.sigma);
    r.left.resize(m_);
    for (int j = 0; j < m_; ++j) r.left[j] = e.alpha[g_.inv(e.left[r.sigma[j]])];
    return r;
  }

  // Unique decomposition of a vertex permutation into (left, alpha, sigma),
  // or nullopt when the permutation is not in N.
  std::optional<NormalizerElement> decompose(const Perm& p) const {
    int n = g_.order();
    if (static_cast<int>(p.size()) != degree()) return std::nullopt;
    NormalizerElement e;
    e.sigma.assign(m_, -1);
    std::vector<std::vector<int>> f(m_, std::vector<int>(n));
    for (int part = 0; part < m_; ++part) {
      int target = p[part * n] / n;
      for (int x = 0; x < n; ++x) {
        if (p[part * n + x] / n != target) return std::nullopt;
        f[part][x] = p[part * n + x] % n;
      }
      e.sigma[part] = target;
    }
    if (!perm_is_bijection(e.sigma)) return std::nullopt;
    // alpha(x) = f_p(1)^-1 * f_p(x), the same for every part
    e.alpha.resize(n);
    for (int x = 0; x < n; ++x) e.alpha[x] = g_.mul(g_.inv(f[0][FiniteGroup::identity]), f[0][x]);
    if (!is_automorphism(g_, e.alpha)) return std::nullopt;
    std::vector<int> alpha_inv = perm_inverse(e.alpha);
    e.left.resize(m_);
    for (int part = 0; part < m_; ++part)
      e.left[part] = g_.inv(alpha_inv[f[part][FiniteGroup::identity]]);
    if (to_perm(e) != p) return std::nullopt;
    return e;
  }

  // Connection sets of the image digraph: T_{i^sigma, j^sigma} =
  // (g_j^-1 S_{i,j} g_i)^alpha.
  ConnectionSets apply(const NormalizerElement& e, const ConnectionSets& c) const {
    check_context(c);
    ConnectionSets t(g_, m_);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) {
        std::uint32_t src = c.mask(i, j);
        std::uint32_t dst = 0;
        int gj_inv = g_.inv(e.left[j]);
        while (src) {
          int s = __builtin_ctz(src);
          src &= src - 1;
          dst |= 1u << e.alpha[g_.mul(g_.mul(gj_inv, s), e.left[i])];
        }
        t.set_mask(e.sigma[i], e.sigma[j], dst);
      }
    return t;
  }

  // The algebraically equivalent transform T_{i^sigma, j^sigma} =
  // g_j S^alpha_{i,j} g_i^-1; the left parameters here play the role of the
  // (g_i^-1)^alpha of apply(). Used as a cross-check only.
  ConnectionSets apply_alt(const NormalizerElement& e, const ConnectionSets& c) const {
    check_context(c);
    ConnectionSets t(g_, m_);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) {
        std::uint32_t src = c.mask(i, j);
        std::uint32_t dst = 0;
        int gi_inv = g_.inv(e.left[i]);
        while (src) {
          int s = __builtin_ctz(src);
          src &= src - 1;
          dst |= 1u << g_.mul(g_.mul(e.left[j], e.alpha[s]), gi_inv);
        }
        t.set_mask(e.sigma[i], e.sigma[j], dst);
      }
    return t;
  }

  // apply(e, src) == dst, with early exit.
  bool transform_matches(const NormalizerElement& e, const ConnectionSets& src,
                         const ConnectionSets& dst) const {
    for (int i = 0; i < m_; ++i) {
      int si = e.sigma[i];
      for (int j = 0; j < m_; ++j) {
        std::uint32_t bits = src.mask(i, j);
        std::uint32_t img = 0;
        int gj_inv = g_.inv(e.left[j]);
        while (bits) {
          int s = __builtin_ctz(bits);
          bits &= bits - 1;
          img |= 1u << e.alpha[g_.mul(g_.mul(gj_inv, s), e.left[i])];
        }
        if (img != dst.mask(si, e.sigma[j])) return false;
      }
    }
    return true;
  }

  // Streams elements in (left lex, alpha index, sigma lex) order. The
  // callback returns false to stop; the function returns false when stopped
  // early.
  template <class F>
  bool for_each(const NormalizerFilter& filter, F&& fn) const {
    int n = g_.order();
    NormalizerElement e;
    e.left.assign(m_, 0);
    if (filter.fix_left_identity >= 0) e.left[filter.fix_left_identity] = 0;
    std::vector<int> sigma0 = perm_identity(m_);
    while (true) {
      for (const auto& a : aut_) {
        if (filter.alpha_identity && !perm_is_identity(a.images)) continue;
        e.alpha = a.images;
        std::vector<int> sig = sigma0;
        do {
          if (filter.sigma_identity && !perm_is_identity(sig)) continue;
          if (filter.fix_sigma_point >= 0 && sig[filter.fix_sigma_point] != filter.fix_sigma_point)
            continue;
          e.sigma = sig;
          if (!fn(e)) return false;
        } while (std::next_permutation(sig.begin(), sig.end()));
        if (filter.alpha_identity) break;  // identity is first in the sorted list
      }
      // left odometer, last coordinate fastest
      int pos = m_ - 1;
      while (pos >= 0) {
        if (pos == filter.fix_left_identity) {
          --pos;
          continue;
        }
        if (++e.left[pos] < n) break;
        e.left[pos] = 0;
        --pos;
      }
      if (pos < 0) return true;
    }
  }

  std::vector<NormalizerElement> enumerate_n(std::size_t bound = kDefaultElementBound) const {
    return collect({}, bound);
  }
  std::vector<NormalizerElement> enumerate_c(std::size_t bound = kDefaultElementBound) const {
    NormalizerFilter f;
    f.alpha_identity = true;
    return collect(f, bound);
  }
  std::vector<NormalizerElement> enumerate_k(std::size_t bound = kDefaultElementBound) const {
    NormalizerFilter f;
    f.sigma_identity = true;
    return collect(f, bound);
  }
  std::vector<NormalizerElement> stabilizer_n1r(int r,
                                                std::size_t bound = kDefaultElementBound) const {
    NormalizerFilter f;
    f.fix_left_identity = r;
    f.fix_sigma_point = r;
    return collect(f, bound);
  }
  std::vector<NormalizerElement> blockstab_ngr(int r,
                                               std::size_t bound = kDefaultElementBound) const {
    NormalizerFilter f;
    f.fix_sigma_point = r;
    return collect(f, bound);
  }
  std::vector<NormalizerElement> stabilizer_k1r(int r,
                                                std::size_t bound = kDefaultElementBound) const {
    NormalizerFilter f;
    f.fix_left_identity = r;
    f.sigma_identity = true;
    return collect(f, bound);
  }

 private:
  void check_context(const ConnectionSets& c) const {
    if (c.group != g_ || c.m != m_) throw InputError("connection sets from a different context");
  }

  std::vector<NormalizerElement> collect(const NormalizerFilter& f, std::size_t bound) const {
    if (order() > bound) throw BoundExceeded("normalizer exceeds enumeration bound");
    std::vector<NormalizerElement> out;
    for_each(f, [&](const NormalizerElement& e) {
      out.push_back(e);
      return true;
    });
    return out;
  }

  FiniteGroup g_;
  int m_;
  std::vector<GroupAutomorphism> aut_;
};

// The subgroups of N that preserve a given digraph, each listed in stream
// order, plus the part-permutation and group-automorphism projections of the
// digraph-preserving normalizer.
struct FilteredSubgroups {
  std::vector<NormalizerElement> n_tilde;   // N intersect Aut(digraph)
  std::vector<NormalizerElement> c_tilde;   // alpha = id
  std::vector<NormalizerElement> k_tilde;   // sigma = id
  std::vector<NormalizerElement> n1r;       // g_r = 1, sigma(r) = r
  std::vector<NormalizerElement> ngr;       // sigma(r) = r
  std::vector<NormalizerElement> k1r;       // g_r = 1, sigma = id
  std::vector<std::vector<int>> sbar_m;     // sigma projections of n_tilde
  std::vector<std::vector<int>> autbar_g;   // alpha projections of n_tilde
};

inline FilteredSubgroups filtered_subgroups(const NormalizerContext& ctx,
                                            const MCayleyDigraph& g, int r = 0,
                                            std::size_t bound = kDefaultElementBound) {
  if (ctx.order() > bound) throw BoundExceeded("normalizer exceeds enumeration bound");
  FilteredSubgroups out;
  const ConnectionSets& c = g.conn();
  ctx.for_each({}, [&](const NormalizerElement& e) {
    if (!ctx.transform_matches(e, c, c)) return true;
    out.n_tilde.push_back(e);
    if (perm_is_identity(e.alpha)) out.c_tilde.push_back(e);
    if (perm_is_identity(e.sigma)) out.k_tilde.push_back(e);
    if (e.sigma[r] == r) {
      out.ngr.push_back(e);
      if (e.left[r] == FiniteGroup::identity) out.n1r.push_back(e);
    }
    if (perm_is_identity(e.sigma) && e.left[r] == FiniteGroup::identity) out.k1r.push_back(e);
    if (std::find(out.sbar_m.begin(), out.sbar_m.end(), e.sigma) == out.sbar_m.end())
      out.sbar_m.push_back(e.sigma);
    if (std::find(out.autbar_g.begin(), out.autbar_g.end(), e.alpha) == out.autbar_g.end())
      out.autbar_g.push_back(e.alpha);
    return true;
  });
  std::sort(out.sbar_m.begin(), out.sbar_m.end());
  std::sort(out.autbar_g.begin(), out.autbar_g.end());
  return out;
}

}  // namespace mcayley
