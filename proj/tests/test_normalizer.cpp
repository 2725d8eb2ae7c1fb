#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "mcayley/normalizer.hpp"
#include "mcayley/permgroup.hpp"

using namespace mcayley;

namespace {

std::set<Perm> perm_set(const NormalizerContext& ctx,
                        const std::vector<NormalizerElement>& elems) {
  std::set<Perm> out;
  for (const auto& e : elems) out.insert(ctx.to_perm(e));
  return out;
}

std::set<Perm> perm_set(const PermGroup& g) {
  return std::set<Perm>(g.elements->begin(), g.elements->end());
}

NormalizerElement pseudo_random_element(const NormalizerContext& ctx, std::uint64_t counter) {
  const FiniteGroup& g = ctx.group();
  NormalizerElement e;
  e.left.resize(ctx.m());
  for (int i = 0; i < ctx.m(); ++i)
    e.left[i] = static_cast<int>(detail::splitmix64(counter * 31 + i) % g.order());
  const auto& aut = automorphism_group(g);
  e.alpha = aut[detail::splitmix64(counter * 31 + 17) % aut.size()].images;
  e.sigma = perm_identity(ctx.m());
  std::uint64_t r = detail::splitmix64(counter * 31 + 23);
  for (int i = ctx.m() - 1; i > 0; --i) {
    std::swap(e.sigma[i], e.sigma[r % (i + 1)]);
    r = detail::splitmix64(r);
  }
  return e;
}

}  // namespace

TEST_CASE("basic element actions") {
  FiniteGroup z3 = make_named_group("Z3");
  NormalizerContext ctx(z3, 2);

  CHECK(ctx.to_perm(ctx.identity_element()) == perm_identity(6));

  // pure part swap
  NormalizerElement swap = ctx.from_sigma({1, 0});
  Perm p = ctx.to_perm(swap);
  for (int x = 0; x < 3; ++x) {
    CHECK(p[x] == 3 + x);
    CHECK(p[3 + x] == x);
  }

  // L_1(g): x_1 -> (g^-1 x)_1, second part fixed
  NormalizerElement l = ctx.left_translation(0, 1);
  Perm q = ctx.to_perm(l);
  for (int x = 0; x < 3; ++x) {
    CHECK(q[x] == z3.mul(z3.inv(1), x));
    CHECK(q[3 + x] == 3 + x);
  }

  // R(g) in canonical form acts as right translation
  for (int e = 0; e < 3; ++e)
    CHECK(ctx.to_perm(ctx.right_translation_element(e)) == right_translation(z3, 2, e));
}

TEST_CASE("composition is a homomorphism onto vertex permutations") {
  for (const char* token : {"Z3", "D6", "Z2xZ2"}) {
    FiniteGroup g = make_named_group(token);
    for (int m : {1, 2, 3}) {
      NormalizerContext ctx(g, m);
      CAPTURE(token, m);
      for (std::uint64_t i = 0; i < 50; ++i) {
        NormalizerElement a = pseudo_random_element(ctx, 2 * i);
        NormalizerElement b = pseudo_random_element(ctx, 2 * i + 1);
        REQUIRE(ctx.to_perm(ctx.compose(a, b)) ==
                perm_compose(ctx.to_perm(a), ctx.to_perm(b)));
        REQUIRE(ctx.to_perm(ctx.inverse(a)) == perm_inverse(ctx.to_perm(a)));
        CHECK(ctx.compose(a, ctx.inverse(a)) == ctx.identity_element());
      }
    }
  }
}

TEST_CASE("commutation laws hold exhaustively") {
  // sigma^-1 L_i(g) sigma = L_{i^sigma}(g); alpha^-1 L_i(g) alpha = L_i(g^alpha);
  // R(g)^alpha = R(g^alpha)
  for (const char* token : {"Z3", "D6"}) {
    FiniteGroup g = make_named_group(token);
    int m = token == std::string("Z3") ? 3 : 2;
    NormalizerContext ctx(g, m);
    const auto& aut = automorphism_group(g);
    std::vector<std::vector<int>> sigmas;
    {
      std::vector<int> s = perm_identity(m);
      do sigmas.push_back(s);
      while (std::next_permutation(s.begin(), s.end()));
    }
    for (int e = 0; e < g.order(); ++e) {
      for (int part = 0; part < m; ++part) {
        Perm l = ctx.to_perm(ctx.left_translation(part, e));
        for (const auto& s : sigmas) {
          Perm sp = ctx.to_perm(ctx.from_sigma(s));
          Perm conj = perm_compose(perm_compose(perm_inverse(sp), l), sp);
          REQUIRE(conj == ctx.to_perm(ctx.left_translation(s[part], e)));
        }
        for (const auto& a : aut) {
          Perm ap = ctx.to_perm(ctx.from_alpha(a.images));
          Perm conj = perm_compose(perm_compose(perm_inverse(ap), l), ap);
          REQUIRE(conj == ctx.to_perm(ctx.left_translation(part, a.images[e])));
        }
      }
      for (const auto& a : aut) {
        Perm ap = ctx.to_perm(ctx.from_alpha(a.images));
        Perm r = right_translation(g, m, e);
        REQUIRE(perm_compose(perm_compose(perm_inverse(ap), r), ap) ==
                right_translation(g, m, a.images[e]));
      }
    }
  }
}

TEST_CASE("normalizer enumeration counts and brute-force equality") {
  struct Case {
    const char* token;
    int m;
  };
  for (Case c : {Case{"Z2", 2}, Case{"Z2", 3}, Case{"Z3", 2}}) {
    FiniteGroup g = make_named_group(c.token);
    NormalizerContext ctx(g, c.m);
    CAPTURE(c.token, c.m);
    auto n = ctx.enumerate_n();
    CHECK(n.size() == ctx.order());
    PermGroup rg = right_regular(g, c.m);
    PermGroup bn = brute_normalizer(g.order() * c.m, rg);
    CHECK(perm_set(ctx, n) == perm_set(bn));
    auto cc = ctx.enumerate_c();
    PermGroup bc = brute_centralizer(g.order() * c.m, rg);
    CHECK(perm_set(ctx, cc) == perm_set(bc));
  }
}

TEST_CASE("holomorph at m = 1") {
  FiniteGroup z3 = make_named_group("Z3");
  NormalizerContext ctx(z3, 1);
  CHECK(ctx.enumerate_n().size() == 6);
}

TEST_CASE("element counts of the distinguished subgroups") {
  FiniteGroup z3 = make_named_group("Z3");
  NormalizerContext ctx(z3, 2);
  CHECK(ctx.enumerate_n().size() == 36);
  CHECK(ctx.enumerate_c().size() == 18);
  CHECK(ctx.enumerate_k().size() == 18);
  CHECK(ctx.stabilizer_n1r(0).size() == 6);  // |N| / |V|
  CHECK(ctx.blockstab_ngr(0).size() == 18);
  CHECK(ctx.stabilizer_k1r(0).size() == 6);
}

TEST_CASE("subgroups verify their defining properties") {
  FiniteGroup g = make_named_group("Z2xZ2");
  NormalizerContext ctx(g, 2);
  PermGroup rg = right_regular(g, 2);
  for (const auto& e : ctx.enumerate_n()) {
    Perm p = ctx.to_perm(e);
    for (const auto& r : *rg.elements)
      REQUIRE(rg.contains(perm_conjugate(r, p)));
  }
  for (const auto& e : ctx.enumerate_c()) {
    Perm p = ctx.to_perm(e);
    for (const auto& r : *rg.elements) REQUIRE(perm_conjugate(r, p) == r);
  }
  for (const auto& e : ctx.enumerate_k()) {
    Perm p = ctx.to_perm(e);
    for (int v = 0; v < ctx.degree(); ++v)
      REQUIRE(v / g.order() == p[v] / g.order());  // fixes every part setwise
  }
  for (const auto& e : ctx.stabilizer_n1r(0)) REQUIRE(ctx.to_perm(e)[0] == 0);
  for (const auto& e : ctx.stabilizer_k1r(0)) {
    REQUIRE(ctx.to_perm(e)[0] == 0);
    REQUIRE(perm_is_identity(e.sigma));
  }
}

TEST_CASE("decomposition is unique and total on N") {
  FiniteGroup g = make_named_group("D6");
  NormalizerContext ctx(g, 2);
  for (const auto& e : ctx.enumerate_n()) {
    auto back = ctx.decompose(ctx.to_perm(e));
    REQUIRE(back.has_value());
    REQUIRE(*back == e);
  }
  // a permutation outside N fails to decompose: swap two vertices in one part
  Perm p = perm_identity(12);
  std::swap(p[0], p[1]);
  CHECK_FALSE(ctx.decompose(p).has_value());
}

TEST_CASE("kernel via right-regular factorization") {
  // {L_1(g_1) R(g) alpha} equals K as a permutation set at (Z3, m = 2)
  FiniteGroup z3 = make_named_group("Z3");
  NormalizerContext ctx(z3, 2);
  std::set<Perm> alt;
  const auto& aut = automorphism_group(z3);
  for (int g1 = 0; g1 < 3; ++g1)
    for (int e = 0; e < 3; ++e)
      for (const auto& a : aut) {
        NormalizerElement x = ctx.compose(
            ctx.compose(ctx.left_translation(0, g1), ctx.right_translation_element(e)),
            ctx.from_alpha(a.images));
        alt.insert(ctx.to_perm(x));
      }
  CHECK(alt == perm_set(ctx, ctx.enumerate_k()));
}

TEST_CASE("restriction of the block stabilizer is the smaller normalizer") {
  for (const char* token : {"Z2", "Z3"}) {
    FiniteGroup g = make_named_group(token);
    NormalizerContext ctx3(g, 3);
    NormalizerContext ctx2(g, 2);
    CAPTURE(token);
    int small_degree = g.order() * 2;
    std::set<Perm> restricted;
    for (const auto& e : ctx3.blockstab_ngr(2)) {
      Perm p = ctx3.to_perm(e);
      restricted.insert(Perm(p.begin(), p.begin() + small_degree));
    }
    std::set<Perm> expected;
    for (const auto& e : ctx2.enumerate_n()) expected.insert(ctx2.to_perm(e));
    CHECK(restricted == expected);
  }
}

TEST_CASE("connection-set transform matches the arc-level image") {
  FiniteGroup g = make_named_group("D6");
  NormalizerContext ctx(g, 2);
  InstanceSpace space(g, 2, Mode::Digraph);
  for (std::uint64_t i = 0; i < 10; ++i) {
    std::uint64_t bits = detail::splitmix64(500 + i) & (space.total() - 1);
    MCayleyDigraph gamma(space.instance(bits), Mode::Digraph);
    for (std::uint64_t j = 0; j < 20; ++j) {
      NormalizerElement e = pseudo_random_element(ctx, 100 * i + j);
      ConnectionSets t = ctx.apply(e, gamma.conn());
      ConnectionSets arc_level = image_connection_sets(gamma, ctx.to_perm(e));
      REQUIRE(t == arc_level);
      // the two published parameterizations agree under g_i -> (g_i^-1)^alpha
      NormalizerElement alt = e;
      for (int part = 0; part < 2; ++part) alt.left[part] = e.alpha[g.inv(e.left[part])];
      REQUIRE(ctx.apply_alt(alt, gamma.conn()) == t);
    }
  }
}

TEST_CASE("applying the identity and pure translations") {
  FiniteGroup z3 = make_named_group("Z3");
  NormalizerContext ctx(z3, 2);
  ConnectionSets c(z3, 2);
  c.set_elems(0, 0, {1});
  c.set_elems(1, 1, {1});
  c.set_elems(0, 1, {0, 1, 2});
  MCayleyDigraph gamma(c, Mode::Digraph);

  CHECK(ctx.apply(ctx.identity_element(), c) == c);

  // pure part swap exchanges S_11 with S_22 and S_12 with S_21
  ConnectionSets swapped = ctx.apply(ctx.from_sigma({1, 0}), c);
  CHECK(swapped.mask(0, 0) == c.mask(1, 1));
  CHECK(swapped.mask(1, 1) == c.mask(0, 0));
  CHECK(swapped.mask(0, 1) == c.mask(1, 0));
  CHECK(swapped.mask(1, 0) == c.mask(0, 1));

  // R(g) fixes the digraph
  for (int e = 0; e < 3; ++e)
    CHECK(ctx.apply(ctx.right_translation_element(e), c) == c);
}

TEST_CASE("digraph-preserving subgroups of the directed 8-cycle") {
  FiniteGroup z2 = make_named_group("Z2");
  ConnectionSets c(z2, 4);
  c.set_elems(0, 1, {0});
  c.set_elems(1, 2, {0});
  c.set_elems(2, 3, {0});
  c.set_elems(3, 0, {1});
  MCayleyDigraph gamma(c, Mode::PCayleyDigraph);
  NormalizerContext ctx(z2, 4);
  FilteredSubgroups fs = filtered_subgroups(ctx, gamma);
  CHECK(fs.n_tilde.size() == 8);
  CHECK(fs.k_tilde.size() == 2);
  // the preserved normalizer is cyclic of order 8
  PermGroup n8 = closure(
      [&] {
        std::vector<Perm> g8;
        for (const auto& e : fs.n_tilde) g8.push_back(ctx.to_perm(e));
        return g8;
      }(),
      8);
  CHECK(n8.order() == 8);
  bool cyclic = false;
  for (const auto& e : *n8.elements)
    if (perm_order(e) == 8) cyclic = true;
  CHECK(cyclic);
  // no complement of the kernel: every order-4 subgroup meets it nontrivially
  std::set<Perm> kset;
  for (const auto& e : fs.k_tilde) kset.insert(ctx.to_perm(e));
  for (const auto& e : *n8.elements) {
    if (perm_order(e) != 4) continue;
    PermGroup sub = closure({e}, 8);
    bool meets = false;
    for (const auto& x : *sub.elements)
      if (!perm_is_identity(x) && kset.count(x)) meets = true;
    CHECK(meets);
  }
}

TEST_CASE("m = 1 preserved normalizer is R(G) extended by set-stabilizing automorphisms") {
  FiniteGroup z6 = make_named_group("Z6");
  NormalizerContext ctx(z6, 1);
  for (std::vector<int> s : {std::vector<int>{1}, {1, 5}, {2, 3}}) {
    ConnectionSets c(z6, 1);
    c.set_elems(0, 0, s);
    MCayleyDigraph gamma(c, Mode::Digraph);
    FilteredSubgroups fs = filtered_subgroups(ctx, gamma);
    // count = |G| * |Aut(G, S)|
    std::size_t stab = 0;
    for (const auto& a : automorphism_group(z6)) {
      std::uint32_t img = 0;
      for (int x : s) img |= 1u << a.images[x];
      if (img == c.mask(0, 0)) ++stab;
    }
    CAPTURE(s);
    CHECK(fs.n_tilde.size() == 6 * stab);
    CHECK(fs.n_tilde.size() == fs.k_tilde.size());
  }
}

TEST_CASE("empty 2-PCayley digraph of Z2 is preserved by all of N") {
  FiniteGroup z2 = make_named_group("Z2");
  NormalizerContext ctx(z2, 2);
  MCayleyDigraph gamma(ConnectionSets(z2, 2), Mode::PCayleyDigraph);
  FilteredSubgroups fs = filtered_subgroups(ctx, gamma);
  CHECK(fs.n_tilde.size() == 8);  // 2^2 * 2 * 1
}
