#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "mcayley/repro.hpp"

using namespace mcayley;

TEST_CASE("fixture catalog resolves ids and aliases") {
  CHECK(fixture("F2").id == "z3-not-2dci");
  CHECK(fixture("z3-not-2dci").id == "z3-not-2dci");
  CHECK(fixture("cyclic-gadget(7)").group.order() == 7);
  CHECK(fixture("dir-cycle(2,3)").m == 8);
  CHECK_THROWS_AS(fixture("nope"), InputError);
}

TEST_CASE("fixtures build as valid digraphs of their modes") {
  for (const char* id : {"F1", "F2", "F4", "F5", "F6", "F7", "F8", "F9", "F10", "F11"}) {
    Fixture f = fixture(id);
    CAPTURE(id);
    CHECK_NOTHROW(MCayleyDigraph(f.sets, f.mode));
    if (f.companion_sets) CHECK_NOTHROW(MCayleyDigraph(*f.companion_sets, f.mode));
  }
}

TEST_CASE("triangle-pair fixture fails the direct check") {
  FixtureReport rep = run_fixture("F1");
  CAPTURE(rep.id);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name, c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("rigid Z3 digraph fixture") {
  FixtureReport rep = run_fixture("F2");
  for (const auto& c : rep.checks) {
    CAPTURE(c.name, c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("directed-cycle fixture") {
  FixtureReport rep = run_fixture("F11", 5, 2, 2);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name, c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("four-part PCayley negative fixtures") {
  for (const char* id : {"F4", "F5", "F9", "F10"}) {
    FixtureReport rep = run_fixture(id);
    CAPTURE(id);
    for (const auto& c : rep.checks) {
      CAPTURE(c.name, c.detail);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("census on the small PCayley families") {
  FiniteGroup z3 = make_named_group("Z3");
  CensusOptions opt;
  opt.workers = 2;
  CensusResult c2 = census(z3, 2, Mode::PCayleyGraph, opt);
  CHECK(c2.total == 8);
  CHECK(c2.done == 8);
  CHECK(c2.aggregate());

  FiniteGroup z2 = make_named_group("Z2");
  CensusResult c3 = census(z2, 2, Mode::PCayleyDigraph, opt);
  CHECK(c3.total == 16);
  CHECK(c3.aggregate());
}

TEST_CASE("census sharding partitions and resumes") {
  FiniteGroup z3 = make_named_group("Z3");
  CensusOptions opt;
  opt.workers = 1;
  std::vector<std::uint64_t> indices;
  opt.sink = [&](const CensusRecord& r) { indices.push_back(r.index); };
  opt.shard_count = 3;
  std::uint64_t done_total = 0;
  for (std::uint64_t s = 0; s < 3; ++s) {
    opt.shard_index = s;
    CensusResult c = census(z3, 3, Mode::PCayleyGraph, opt);
    CHECK(c.aggregate());
    done_total += c.done;
  }
  CHECK(done_total == 512);
  CHECK(indices.size() == 512);
  CHECK(std::is_sorted(indices.begin(), indices.end()));
  std::set<std::uint64_t> unique_indices(indices.begin(), indices.end());
  CHECK(unique_indices.size() == 512);

  // resume skips the already-recorded prefix
  CensusOptions res;
  res.workers = 1;
  res.shard_count = 3;
  res.shard_index = 1;
  res.resume_done = 100;
  std::vector<std::uint64_t> tail;
  res.sink = [&](const CensusRecord& r) { tail.push_back(r.index); };
  CensusResult c = census(z3, 3, Mode::PCayleyGraph, res);
  CHECK(c.shard_begin == 170);
  CHECK(tail.front() == 270);
}

TEST_CASE("census records aggregate failures") {
  // the family of all 2-Cayley digraphs of Z3 contains the rigid non-CI
  // example, so the general-mode census must report failures
  FiniteGroup z3 = make_named_group("Z3");
  CensusOptions opt;
  opt.workers = 2;
  CensusResult c = census(z3, 2, Mode::Digraph, opt);
  CHECK(c.total == 1024);
  CHECK(c.done == 1024);
  CHECK_FALSE(c.aggregate());
  CHECK(c.fails > 0);
  // the recorded failing instance really fails
  InstanceSpace space(z3, 2, Mode::Digraph);
  REQUIRE_FALSE(c.failures.empty());
  MCayleyDigraph bad(space.instance(c.failures[0].index), Mode::Digraph);
  CHECK_FALSE(check_mci_babai(bad).verdict);
}

TEST_CASE("degree-6 overgroup table") {
  Table1Report rep = verify_table1();
  CHECK(rep.rows_match);
  CHECK(rep.sylow_remark_holds);
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.rows[0].order == 720);
  CHECK(rep.rows[1].order == 72);
  CHECK(rep.rows[2].order == 18);
  CHECK(rep.rows[3].order == 36);
  CHECK(rep.overgroups_scanned >= 5);
}

TEST_CASE("small theorem bundle without the long census half") {
  SmallTheoremReport rep = verify_small_theorems(4, /*include_d6_m3=*/false);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name, c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("multipartite-complement invariance of the mPCI verdict") {
  FiniteGroup z3 = make_named_group("Z3");
  InstanceSpace space(z3, 2, Mode::PCayleyDigraph);
  for (std::uint64_t k = 0; k < space.total(); ++k) {
    MCayleyDigraph gamma(space.instance(k), Mode::PCayleyDigraph);
    MCayleyDigraph mc = multipartite_complement(gamma);
    CHECK(check_mpci_babai(gamma).verdict == check_mpci_babai(mc).verdict);
  }
}

TEST_CASE("isomorphic 2-PCayley graphs are p-isomorphic across small censuses") {
  for (const char* token : {"Z2", "Z3", "Z4"}) {
    FiniteGroup g = make_named_group(token);
    InstanceSpace space(g, 2, Mode::PCayleyGraph);
    std::vector<MCayleyDigraph> family;
    for (std::uint64_t k = 0; k < space.total(); ++k)
      family.emplace_back(space.instance(k), Mode::PCayleyGraph);
    CAPTURE(token);
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t j = 0; j < family.size(); ++j) {
        bool iso = isomorphism(to_colored(family[i], false), to_colored(family[j], false))
                       .has_value();
        if (iso) REQUIRE(p_isomorphism(family[i], family[j]).has_value());
      }
  }
}

TEST_CASE("disconnected PCayley graphs with disconnected complements are the known shape") {
  // over Z2 and Z4 with m in {2, 3}: when gamma and gamma^mc are both
  // disconnected, m = 2 and gamma is two balanced complete bipartite halves
  for (const char* token : {"Z2", "Z4"}) {
    FiniteGroup g = make_named_group(token);
    for (int m : {2, 3}) {
      InstanceSpace space(g, m, Mode::PCayleyGraph);
      CAPTURE(token, m);
      for (std::uint64_t k = 0; k < space.total(); ++k) {
        MCayleyDigraph gamma(space.instance(k), Mode::PCayleyGraph);
        MCayleyDigraph mc = multipartite_complement(gamma);
        bool gamma_disc = weak_components(gamma).size() > 1;
        bool mc_disc = weak_components(mc).size() > 1;
        if (!(gamma_disc && mc_disc)) continue;
        REQUIRE(m == 2);
        auto comps = weak_components(gamma);
        REQUIRE(comps.size() == 2);
        int half = g.order() / 2;
        for (const auto& comp : comps) {
          REQUIRE(static_cast<int>(comp.size()) == 2 * half);
          // balanced across parts, complete bipartite
          int in_first = 0;
          for (int v : comp) in_first += gamma.part_of(v) == 0;
          REQUIRE(in_first == half);
          for (int u : comp)
            for (int v : comp) {
              bool cross = gamma.part_of(u) != gamma.part_of(v);
              REQUIRE(gamma.arc(u, v) == cross);
            }
        }
      }
    }
  }
}

TEST_CASE("reduction consistency between censuses") {
  // a group passing the m-part census passes the (m-1)-part census
  FiniteGroup z2 = make_named_group("Z2");
  CensusOptions opt;
  opt.workers = 2;
  bool m3 = census(z2, 3, Mode::PCayleyDigraph, opt).aggregate();
  bool m2 = census(z2, 2, Mode::PCayleyDigraph, opt).aggregate();
  CHECK(m3);
  CHECK((!m3 || m2));
}
