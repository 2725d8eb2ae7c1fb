#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "mcayley/aut.hpp"
#include "mcayley/digraph.hpp"

using namespace mcayley;

namespace {

// exhaustive oracle over all |V|! bijections, |V| <= 8
std::vector<Perm> brute_force_automorphisms(const ColoredDigraph& g) {
  std::vector<Perm> found;
  Perm p = perm_identity(g.n);
  do {
    bool ok = true;
    for (int v = 0; v < g.n && ok; ++v) {
      if (g.color[v] != g.color[p[v]]) ok = false;
      for (int w = 0; w < g.n && ok; ++w)
        if (g.arc(v, w) != g.arc(p[v], p[w])) ok = false;
    }
    if (ok) found.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return found;
}

ConnectionSets pseudo_random_conn(const FiniteGroup& g, int m, Mode mode, std::uint64_t counter) {
  InstanceSpace space(g, m, mode);
  std::uint64_t bits = detail::splitmix64(counter) & (space.total() - 1);
  return space.instance(bits);
}

}  // namespace

TEST_CASE("empty digraph on 4 vertices has S4") {
  ColoredDigraph g(4);
  PermGroup a = automorphism_group(g);
  CHECK(a.order() == 24);
}

TEST_CASE("directed path has a trivial automorphism group") {
  ColoredDigraph g(3);
  g.add_arc(0, 1);
  g.add_arc(1, 2);
  CHECK(automorphism_group(g).order() == 1);
}

TEST_CASE("colors restrict automorphisms") {
  ColoredDigraph g(4);
  g.color = {0, 0, 1, 1};
  CHECK(automorphism_group(g).order() == 4);
}

TEST_CASE("refinement search matches the factorial oracle") {
  // random Z4 m=2 digraphs on 8 vertices plus hand-picked edge cases
  FiniteGroup z4 = make_named_group("Z4");
  for (std::uint64_t i = 0; i < 25; ++i) {
    MCayleyDigraph g(pseudo_random_conn(z4, 2, Mode::Digraph, 7000 + i), Mode::Digraph);
    ColoredDigraph cd = to_colored(g, false);
    auto oracle = brute_force_automorphisms(cd);
    PermGroup fast = automorphism_group(cd);
    REQUIRE(fast.order() == oracle.size());
    CHECK(*fast.elements == oracle);
  }
  FiniteGroup z2 = make_named_group("Z2");
  for (std::uint64_t i = 0; i < 25; ++i) {
    MCayleyDigraph g(pseudo_random_conn(z2, 3, Mode::PCayleyDigraph, 9000 + i),
                     Mode::PCayleyDigraph);
    ColoredDigraph cd = to_colored(g, true);
    auto oracle = brute_force_automorphisms(cd);
    PermGroup fast = automorphism_group(cd);
    REQUIRE(fast.order() == oracle.size());
    CHECK(*fast.elements == oracle);
  }
}

TEST_CASE("automorphism groups contain the right-regular action") {
  FiniteGroup d6 = make_named_group("D6");
  for (std::uint64_t i = 0; i < 10; ++i) {
    MCayleyDigraph g(pseudo_random_conn(d6, 2, Mode::Digraph, 100 + i), Mode::Digraph);
    PermGroup a = automorphism_group_full(g);
    PermGroup r = right_regular(d6, 2);
    for (const auto& e : *r.elements) REQUIRE(a.contains(e));
  }
}

TEST_CASE("Aut(complement) equals Aut") {
  FiniteGroup z3 = make_named_group("Z3");
  for (std::uint64_t i = 0; i < 30; ++i) {
    MCayleyDigraph g(pseudo_random_conn(z3, 2, Mode::Digraph, 4242 + i), Mode::Digraph);
    PermGroup a = automorphism_group_full(g);
    PermGroup ac = automorphism_group_full(complement(g));
    CHECK(*a.elements == *ac.elements);
  }
}

TEST_CASE("isomorphism search") {
  // path vs triangle
  ColoredDigraph path(3), tri(3);
  path.add_arc(0, 1);
  path.add_arc(1, 2);
  tri.add_arc(0, 1);
  tri.add_arc(1, 2);
  tri.add_arc(2, 0);
  CHECK_FALSE(isomorphism(path, tri).has_value());
  CHECK(isomorphism(tri, tri).has_value());

  // relabeled copies are isomorphic
  ColoredDigraph a(5), b(5);
  a.add_arc(0, 1);
  a.add_arc(1, 2);
  a.add_arc(2, 3);
  a.add_arc(3, 4);
  Perm rel{4, 2, 0, 1, 3};
  for (int u = 0; u < 5; ++u)
    for (int v = 0; v < 5; ++v)
      if (a.arc(u, v)) b.add_arc(rel[u], rel[v]);
  auto iso = isomorphism(a, b);
  REQUIRE(iso.has_value());
  for (int u = 0; u < 5; ++u)
    for (int v = 0; v < 5; ++v) CHECK(a.arc(u, v) == b.arc((*iso)[u], (*iso)[v]));
}

TEST_CASE("p-isomorphism respects parts") {
  FiniteGroup z2 = make_named_group("Z2");
  // matching between parts vs its relabeled copy
  ConnectionSets c1(z2, 2);
  c1.set_elems(0, 1, {0});
  c1.set_elems(1, 0, {0});
  MCayleyDigraph g1(c1, Mode::PCayleyGraph);
  auto self = p_isomorphism(g1, g1);
  REQUIRE(self.has_value());

  ConnectionSets c2(z2, 2);
  c2.set_elems(0, 1, {1});
  c2.set_elems(1, 0, {1});
  MCayleyDigraph g2(c2, Mode::PCayleyGraph);
  CHECK(p_isomorphism(g1, g2).has_value());

  // gamma^{R(g)} is p-isomorphic via R(g)
  FiniteGroup z3 = make_named_group("Z3");
  ConnectionSets c3(z3, 2);
  c3.set_elems(0, 1, {0, 1});
  c3.set_elems(1, 0, {0, 2});
  MCayleyDigraph g3(c3, Mode::PCayleyGraph);
  CHECK(p_isomorphism(g3, g3).has_value());
}

TEST_CASE("p-isomorphism can fail where plain isomorphism succeeds") {
  // brute-force oracle: for |V| <= 8 check all bijections for a
  // part-respecting isomorphism
  FiniteGroup z2 = make_named_group("Z2");
  auto part_iso_exists = [&](const MCayleyDigraph& a, const MCayleyDigraph& b) {
    Perm p = perm_identity(a.n());
    do {
      bool ok = true;
      for (int u = 0; u < a.n() && ok; ++u)
        for (int v = 0; v < a.n() && ok; ++v)
          if (a.arc(u, v) != b.arc(p[u], p[v])) ok = false;
      if (ok) {
        bool parts = true;
        for (int part = 0; part < a.m() && parts; ++part) {
          int target = b.part_of(p[a.vertex(part, 0)]);
          for (int x = 0; x < a.group().order(); ++x)
            if (b.part_of(p[a.vertex(part, x)]) != target) parts = false;
        }
        if (parts) return true;
      }
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
  };
  for (std::uint64_t i = 0; i < 40; ++i) {
    MCayleyDigraph a(pseudo_random_conn(z2, 2, Mode::PCayleyDigraph, 31 + i),
                     Mode::PCayleyDigraph);
    MCayleyDigraph b(pseudo_random_conn(z2, 2, Mode::PCayleyDigraph, 77 + 3 * i),
                     Mode::PCayleyDigraph);
    bool oracle = part_iso_exists(a, b);
    bool fast = p_isomorphism(a, b).has_value();
    REQUIRE(fast == oracle);
  }
}

TEST_CASE("every returned automorphism preserves arcs and colors") {
  FiniteGroup z3 = make_named_group("Z3");
  MCayleyDigraph g(pseudo_random_conn(z3, 3, Mode::PCayleyDigraph, 5), Mode::PCayleyDigraph);
  ColoredDigraph cd = to_colored(g, true);
  PermGroup a = automorphism_group(cd);
  for (const auto& p : *a.elements) {
    for (int u = 0; u < cd.n; ++u) {
      CHECK(cd.color[u] == cd.color[p[u]]);
      for (int v = 0; v < cd.n; ++v) REQUIRE(cd.arc(u, v) == cd.arc(p[u], p[v]));
    }
  }
}
