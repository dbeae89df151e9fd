#include <catch_amalgamated.hpp>

#include "ninf/io.hpp"
#include "oracle.hpp"

using namespace ninf;
using io::json;

namespace {

std::string error_field(const std::function<void()>& f) {
  try {
    f();
  } catch (const io::ParseError& e) {
    return e.field();
  }
  return "<no error>";
}

} // namespace

TEST_CASE("groups round trip", "[io]") {
  for (const auto& g : oracle::small_groups()) {
    CAPTURE(g.name());
    Group back = io::group_from_json(io::to_json(g));
    CHECK(back == g);
    CHECK(back.subgroup_count() == g.subgroup_count());
  }
  CHECK(io::group_from_json("C2xC2") == groups::product(groups::cyclic(2), groups::cyclic(2)));
  json perms = {{"degree", 3}, {"generators", {{1, 0, 2}, {1, 2, 0}}}};
  CHECK(io::group_from_json(perms).order() == 6);
}

TEST_CASE("G-sets, maps and systems round trip", "[io]") {
  auto rng = oracle::rng(31);
  for (const auto& g : {groups::cyclic(4), groups::symmetric(3), groups::dihedral(4)}) {
    CAPTURE(g.name());
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<SubgroupId> stabs;
      const int k = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < k; ++i)
        stabs.push_back(static_cast<SubgroupId>(rng() % static_cast<unsigned>(g.subgroup_count())));
      GSet x = from_orbits(g, g.whole(), stabs);
      GSet back = io::gset_from_json(io::to_json(x), &g);
      CHECK(back.size() == x.size());
      for (Elt e = 0; e < g.order(); ++e)
        CHECK(back.perm(e) == x.perm(e));
      CHECK(isomorphic(io::gset_from_json(json{{"orbits", stabs}}, &g), x));
    }
    for (const auto& s : enumerate_all(g))
      CHECK(io::indexing_from_json(io::to_json(s), &g) == s);
  }
}

TEST_CASE("action given by generators is closed", "[io]") {
  auto g = groups::cyclic(4);
  // generator 1 rotates four points
  json j = {{"size", 4}, {"action", {{"1", {1, 2, 3, 0}}}}};
  GSet x = io::gset_from_json(j, &g);
  CHECK(isomorphic(x, orbit_gset(g, g.trivial_subgroup())));
  json bad = {{"size", 2}, {"action", {{"1", {1, 0}}, {"2", {1, 0}}}}};
  CHECK(error_field([&] { io::gset_from_json(bad, &g); }) == "action");
}

TEST_CASE("trees, objects and spans round trip", "[io]") {
  auto g = groups::cyclic(4);
  auto s = complete_system(g);
  NormedCategory c(s, orbit_gset(g, parse_subgroup(g, "C2")));
  for (const auto& t : enumerate_trees(s, 3)) {
    NormTree back = io::tree_from_json(io::to_json(t), g);
    CHECK(back == t);
  }
  for (SubgroupId k = 0; k < g.subgroup_count(); ++k)
    for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
      if (g.is_subgroup_of(k, h)) {
        auto tr = transfer_span(s, k, h);
        auto back = io::span_from_json(io::to_json(tr), s);
        CHECK(span_key(back) == span_key(tr));
      }
  auto m = CommutativeGMonoid::functions(orbit_gset(g, parse_subgroup(g, "C2")), 3);
  auto mb = io::monoid_from_json(io::to_json(m), &g);
  CHECK(mb.table() == m.table());
  CHECK(mb.action() == m.action());
  (void)c;
}

TEST_CASE("parse errors name the field", "[io]") {
  auto g = groups::cyclic(4);
  CHECK(error_field([] { io::group_from_json("Z9x"); }) == "<root>");
  CHECK(error_field([] { io::group_from_json(json{{"mul", {{0, 1}, {1, 1}}}}); }) == "mul");
  CHECK(error_field([&] { io::gset_from_json(json{{"action", json::object()}}, &g); }) == "size");
  CHECK(error_field([&] { io::gset_from_json(json{{"size", 2}, {"action", {{"7", {0, 1}}}}}, &g); }) == "action.7");
  CHECK(error_field([&] { io::indexing_from_json(json{{"pairs", {{0, 9}}}}, &g); }) == "pairs[0][1]");
  CHECK(error_field([&] { io::indexing_from_json(json{{"pairs", json::array({json::array({"G", "e"})})}}, &g); }) == "pairs[0]");
  json span = {{"source", {{"orbits", {"G"}}}},
               {"target", {{"orbits", {"G"}}}},
               {"apex", {{"orbits", {"e"}}}},
               {"left", {0, 0, 0, 0}},
               {"right", {0, 0, 1, 0}}};
  CHECK(error_field([&] { io::span_from_json(span, complete_system(g)); }) == "right");
  span["right"] = {0, 0, 0, 0};
  span["group"] = "S3";
  CHECK(error_field([&] { io::span_from_json(span, complete_system(g)); }) == "group");
  CHECK(error_field([&] { io::monoid_from_json(json{{"zmod", "x"}}, &g); }) == "zmod");
}
