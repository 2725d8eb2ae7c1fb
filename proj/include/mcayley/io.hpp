#pragma once

// JSON and text serialization. JSON output is deterministic: nlohmann
// objects iterate in sorted key order and no timestamps are emitted.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mcayley/ci.hpp"
#include "mcayley/connection.hpp"
#include "mcayley/digraph.hpp"
#include "mcayley/group.hpp"
#include "mcayley/normalizer.hpp"
#include "mcayley/perm.hpp"
#include "mcayley/permgroup.hpp"
#include "mcayley/repro.hpp"
#include "mcayley/util.hpp"

namespace mcayley {

using json = nlohmann::json;

inline json group_to_json(const FiniteGroup& g) {
  json j;
  if (!g.name().empty()) j["name"] = g.name();
  j["order"] = g.order();
  std::vector<std::vector<int>> table(g.order(), std::vector<int>(g.order()));
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) table[a][b] = g.mul(a, b);
  j["table"] = table;
  return j;
}

// Accepts a bare name token or {"name"?: str, "order": n, "table": [[int]]}.
inline FiniteGroup group_from_json(const json& j) {
  try {
    if (j.is_string()) return make_named_group(j.get<std::string>());
    if (!j.is_object() || !j.contains("table")) throw InputError("group JSON needs a table");
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (j.contains("order") &&
        j.at("order").get<std::size_t>() != table.size())
      throw InputError("group order does not match the table size");
    std::string name = j.value("name", std::string{});
    return FiniteGroup(std::move(table), std::move(name));
  } catch (const json::exception& e) {
    throw InputError(std::string("bad group JSON: ") + e.what());
  }
}

inline json conn_to_json(const ConnectionSets& c, Mode mode) {
  json j;
  j["group"] = c.group.name().empty() ? group_to_json(c.group) : json(c.group.name());
  j["m"] = c.m;
  j["mode"] = mode_to_string(mode);
  std::vector<std::vector<std::vector<int>>> sets(c.m, std::vector<std::vector<int>>(c.m));
  for (int i = 0; i < c.m; ++i)
    for (int jj = 0; jj < c.m; ++jj) sets[i][jj] = c.set_of(i, jj);
  j["sets"] = sets;
  return j;
}

inline std::pair<ConnectionSets, Mode> conn_from_json(const json& j) {
  try {
    FiniteGroup g = group_from_json(j.at("group"));
    int m = j.at("m").get<int>();
    Mode mode = mode_from_string(j.at("mode").get<std::string>());
    ConnectionSets c(std::move(g), m);
    auto sets = j.at("sets").get<std::vector<std::vector<std::vector<int>>>>();
    if (static_cast<int>(sets.size()) != m) throw InputError("sets has the wrong row count");
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(sets[i].size()) != m)
        throw InputError("sets has the wrong column count");
      for (int jj = 0; jj < m; ++jj) c.set_elems(i, jj, sets[i][jj]);
    }
    validate(c, mode);
    return {std::move(c), mode};
  } catch (const json::exception& e) {
    throw InputError(std::string("bad connection-set JSON: ") + e.what());
  }
}

inline json digraph_to_json(const MCayleyDigraph& g) {
  json j;
  j["vertices"] = g.n();
  j["m"] = g.m();
  j["group_order"] = g.group().order();
  j["mode"] = mode_to_string(g.mode());
  std::vector<std::vector<int>> arcs;
  arcs.reserve(g.arcs().size());
  for (auto [u, v] : g.arcs()) arcs.push_back({u, v});
  j["arcs"] = arcs;
  return j;
}

// Arc-list text export, 1-based vertices:
//   c <comment>
//   p digraph <vertices> <arcs>
//   a <from> <to>
inline std::string digraph_to_arc_list(const MCayleyDigraph& g) {
  std::string out;
  out += "c m-Cayley digraph, parts of size " + std::to_string(g.group().order()) + "\n";
  out += "p digraph " + std::to_string(g.n()) + " " + std::to_string(g.arcs().size()) + "\n";
  for (auto [u, v] : g.arcs())
    out += "a " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  return out;
}

inline json permgroup_to_json(const PermGroup& g) {
  json j;
  j["degree"] = g.degree;
  j["generators"] = g.generators;
  if (g.elements) j["order"] = g.elements->size();
  return j;
}

inline json nelem_to_json(const NormalizerElement& e) {
  return json{{"left", e.left}, {"alpha", e.alpha}, {"sigma", e.sigma}};
}

inline NormalizerElement nelem_from_json(const json& j) {
  try {
    NormalizerElement e;
    e.left = j.at("left").get<std::vector<int>>();
    e.alpha = j.at("alpha").get<std::vector<int>>();
    e.sigma = j.at("sigma").get<std::vector<int>>();
    return e;
  } catch (const json::exception& ex) {
    throw InputError(std::string("bad normalizer-element JSON: ") + ex.what());
  }
}

// Wall time is deliberately omitted: identical invocations must produce
// byte-identical JSON.
inline json ci_report_to_json(const CiReport& r) {
  json j;
  j["property"] = r.property;
  j["verdict"] = r.verdict;
  j["vacuous"] = r.vacuous;
  j["stats"] = {{"subgroups_enumerated", r.stats.subgroups_enumerated},
                {"elements_scanned", r.stats.elements_scanned}};
  if (!r.note.empty()) j["note"] = r.note;
  if (r.conjugator) j["witness"] = {{"type", "conjugator"}, {"perm", *r.conjugator}};
  if (r.nelem) j["witness"] = {{"type", "normalizer-element"}, {"element", nelem_to_json(*r.nelem)}};
  if (r.bad_pair)
    j["witness"] = {{"type", "non-conjugate-pair"},
                    {"subgroup", r.bad_pair->first},
                    {"right_regular", r.bad_pair->second}};
  return j;
}

inline json census_record_to_json(const CensusRecord& r) {
  return json{{"instance", r.index}, {"verdict", r.verdict}, {"aut_order", r.aut_order}};
}

inline json census_result_to_json(const CensusResult& r) {
  json j;
  j["group"] = r.group_name;
  j["m"] = r.m;
  j["mode"] = mode_to_string(r.mode);
  j["total"] = r.total;
  j["shard_begin"] = r.shard_begin;
  j["shard_end"] = r.shard_end;
  j["done"] = r.done;
  j["holds"] = r.holds;
  j["fails"] = r.fails;
  j["budget_exceeded"] = r.budget_exceeded;
  j["aggregate"] = r.aggregate();
  json fail = json::array();
  for (const auto& rec : r.failures) fail.push_back(census_record_to_json(rec));
  j["failures"] = fail;
  return j;
}

inline json fixture_report_to_json(const FixtureReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return json{{"fixture", r.id}, {"pass", r.all_pass()}, {"checks", checks}};
}

inline json table1_to_json(const Table1Report& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"name", row.name},
                    {"order", row.order},
                    {"primitive", row.primitive},
                    {"regular_dihedral_conjugate", row.all_regular_dihedral_conjugate},
                    {"regular_dihedral_normal", row.some_regular_dihedral_normal},
                    {"regular_dihedral_unique", row.regular_dihedral_unique}});
  return json{{"rows", rows},
              {"rows_match", r.rows_match},
              {"sylow_remark_holds", r.sylow_remark_holds},
              {"overgroups_scanned", r.overgroups_scanned}};
}

}  // namespace mcayley
