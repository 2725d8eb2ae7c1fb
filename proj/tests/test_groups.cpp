#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <vector>

#include "mcayley/group.hpp"

using namespace mcayley;

namespace {

// Independent oracle: every bijection fixing the identity, filtered by the
// homomorphism law. Feasible up to order ~7.
std::vector<std::vector<int>> brute_force_automorphisms(const FiniteGroup& g) {
  int n = g.order();
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  std::vector<std::vector<int>> found;
  do {
    std::vector<int> img(n);
    img[0] = 0;
    for (int i = 1; i < n; ++i) img[i] = rest[i - 1];
    if (is_automorphism(g, img)) found.push_back(img);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return found;
}

}  // namespace

TEST_CASE("catalog groups satisfy the group axioms") {
  for (const char* token : {"Z1", "Z2", "Z3", "Z4", "Z6", "Z2xZ2", "Z3xZ3", "D6", "D8", "S3", "S4"}) {
    FiniteGroup g = make_named_group(token);
    CAPTURE(token);
    for (int a = 0; a < g.order(); ++a) {
      CHECK(g.mul(0, a) == a);
      CHECK(g.mul(a, 0) == a);
      CHECK(g.mul(a, g.inv(a)) == 0);
      for (int b = 0; b < g.order(); ++b)
        for (int c = 0; c < g.order(); ++c)
          REQUIRE(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
    }
  }
}

TEST_CASE("Z3 multiplication table") {
  FiniteGroup g = make_named_group("Z3");
  CHECK(g.order() == 3);
  CHECK(g.mul(1, 1) == 2);
  CHECK(g.mul(1, 2) == 0);
}

TEST_CASE("D6 is the nonabelian order-6 dihedral with b at index 3") {
  FiniteGroup g = make_named_group("D6");
  CHECK(g.order() == 6);
  CHECK_FALSE(g.is_abelian());
  int a = 1, b = 3;
  CHECK(g.mul(g.mul(b, a), b) == 2);  // b a b = a^2
  CHECK(g.elem_order(b) == 2);
  CHECK(g.elem_order(a) == 3);
}

TEST_CASE("Z2xZ2 has exponent 2") {
  FiniteGroup g = make_named_group("Z2xZ2");
  CHECK(g.order() == 4);
  for (int x = 1; x < 4; ++x) CHECK(g.elem_order(x) == 2);
}

TEST_CASE("unknown tokens and odd dihedral orders are rejected") {
  CHECK_THROWS_AS(make_named_group("Q8"), InputError);
  CHECK_THROWS_AS(make_named_group("D7"), InputError);
  CHECK_THROWS_AS(make_named_group("S5"), InputError);
}

TEST_CASE("automorphism group sizes") {
  CHECK(automorphism_group(make_named_group("Z3")).size() == 2);
  CHECK(automorphism_group(make_named_group("D6")).size() == 6);
  CHECK(automorphism_group(make_named_group("Z2xZ2")).size() == 6);
  CHECK(automorphism_group(make_named_group("Z4")).size() == 2);
  CHECK(automorphism_group(make_named_group("Z6")).size() == 2);
}

TEST_CASE("automorphism groups match the brute-force oracle") {
  for (const char* token : {"Z3", "Z4", "Z6", "Z2xZ2", "D6", "S3"}) {
    FiniteGroup g = make_named_group(token);
    CAPTURE(token);
    auto oracle = brute_force_automorphisms(g);
    std::sort(oracle.begin(), oracle.end());
    const auto& fast = automorphism_group(g);
    REQUIRE(fast.size() == oracle.size());
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i].images == oracle[i]);
  }
}

TEST_CASE("automorphism group is closed under composition and inversion") {
  for (const char* token : {"Z6", "D6", "Z2xZ2", "Z3xZ3"}) {
    FiniteGroup g = make_named_group(token);
    const auto& aut = automorphism_group(g);
    CAPTURE(token);
    // identity present
    bool has_id = false;
    for (const auto& a : aut)
      if (is_automorphism(g, a.images) && [&] {
            for (int x = 0; x < g.order(); ++x)
              if (a.images[x] != x) return false;
            return true;
          }())
        has_id = true;
    CHECK(has_id);
    auto find = [&](const std::vector<int>& img) {
      for (const auto& a : aut)
        if (a.images == img) return true;
      return false;
    };
    for (const auto& a : aut) {
      std::vector<int> inv(g.order());
      for (int x = 0; x < g.order(); ++x) inv[a.images[x]] = x;
      CHECK(find(inv));
      for (const auto& b : aut) {
        std::vector<int> comp(g.order());
        for (int x = 0; x < g.order(); ++x) comp[x] = b.images[a.images[x]];
        REQUIRE(find(comp));
      }
    }
    // |Aut| divides (order-1)!
    std::size_t fact = 1;
    for (int i = 2; i < g.order(); ++i) fact *= i;
    CHECK(fact % aut.size() == 0);
  }
}

TEST_CASE("isomorphism testing") {
  FiniteGroup z6 = make_named_group("Z6");
  FiniteGroup d6 = make_named_group("D6");
  auto same = groups_isomorphic(z6, z6);
  REQUIRE(same.has_value());
  CHECK(is_automorphism(z6, *same));
  CHECK_FALSE(groups_isomorphic(z6, d6).has_value());

  // Z2xZ2 with permuted element numbering
  FiniteGroup v4 = make_named_group("Z2xZ2");
  std::vector<int> relabel{0, 2, 3, 1};
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  std::vector<int> unlabel(4);
  for (int i = 0; i < 4; ++i) unlabel[relabel[i]] = i;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[relabel[a]][relabel[b]] = relabel[v4.mul(a, b)];
  FiniteGroup v4b(t);
  auto iso = groups_isomorphic(v4, v4b);
  REQUIRE(iso.has_value());
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK((*iso)[v4.mul(a, b)] == v4b.mul((*iso)[a], (*iso)[b]));
}

TEST_CASE("isomorphism witnesses invert") {
  FiniteGroup d6 = make_named_group("D6");
  FiniteGroup s3 = make_named_group("S3");
  auto iso = groups_isomorphic(d6, s3);
  REQUIRE(iso.has_value());
  std::vector<int> back(6);
  for (int x = 0; x < 6; ++x) back[(*iso)[x]] = x;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) CHECK(back[s3.mul(a, b)] == d6.mul(back[a], back[b]));
}

TEST_CASE("generated subgroups") {
  FiniteGroup z6 = make_named_group("Z6");
  CHECK(subgroup_generated(z6, {2}) == std::vector<int>{0, 2, 4});
  FiniteGroup d6 = make_named_group("D6");
  CHECK(subgroup_generated(d6, {3}).size() == 2);
  FiniteGroup z3 = make_named_group("Z3");
  CHECK(subgroup_generated(z3, {}) == std::vector<int>{0});
}

TEST_CASE("generator machinery") {
  CHECK(min_generator_count(make_named_group("Z6")) == 1);
  CHECK(min_generator_count(make_named_group("D6")) == 2);
  CHECK(min_generator_count(make_named_group("Z2xZ2")) == 2);
  auto profiles = generating_order_profiles(make_named_group("D6"), 2);
  CHECK(std::find(profiles.begin(), profiles.end(), std::vector<int>{2, 2}) != profiles.end());
  CHECK(std::find(profiles.begin(), profiles.end(), std::vector<int>{2, 3}) != profiles.end());
  CHECK(std::find(profiles.begin(), profiles.end(), std::vector<int>{3, 3}) == profiles.end());
}
