// JSON encodings. Loaders take the ambient group as context: nested objects
// may omit "group", and when they give one it must equal the context.
// Malformed input throws ParseError naming the offending field path.

#ifndef NINF_IO_HPP_
#define NINF_IO_HPP_

#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "burnside.hpp"
#include "group.hpp"
#include "gset.hpp"
#include "indexing.hpp"
#include "norm_operad.hpp"
#include "normed_cat.hpp"

namespace ninf::io {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& field, const std::string& what)
      : std::runtime_error("field '" + field + "': " + what), field_(field) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

namespace detail {

inline std::string sub(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
inline std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object())
    throw ParseError(path.empty() ? "<root>" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(sub(path, key), "missing");
  return *it;
}

inline int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer())
    throw ParseError(path, "expected an integer");
  return j.get<int>();
}

inline std::vector<int> int_list(const json& j, const std::string& path) {
  if (!j.is_array())
    throw ParseError(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(integer(j[i], idx(path, i)));
  return out;
}

inline std::vector<std::vector<int>> int_table(const json& j, const std::string& path) {
  if (!j.is_array())
    throw ParseError(path, "expected an array of arrays");
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(int_list(j[i], idx(path, i)));
  return out;
}

template <typename F>
auto wrap(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(path.empty() ? "<root>" : path, e.what());
  }
}

} // namespace detail

// -- groups --------------------------------------------------------------

/// A builtin name ("C4", "S3", "C2xC2", ...), {"order", "mul", "names"?} or
/// {"degree", "generators"}.
inline Group group_from_json(const json& j, const std::string& path = "") {
  using namespace detail;
  if (j.is_string()) {
    auto g = groups::by_name(j.get<std::string>());
    if (!g)
      throw ParseError(path.empty() ? "<root>" : path, "unknown group name '" + j.get<std::string>() + "'");
    return *g;
  }
  if (!j.is_object())
    throw ParseError(path.empty() ? "<root>" : path, "expected a group name or object");
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  if (j.contains("mul")) {
    auto mul = int_table(j["mul"], sub(path, "mul"));
    if (j.contains("order") && integer(j["order"], sub(path, "order")) != static_cast<int>(mul.size()))
      throw ParseError(sub(path, "order"), "does not match the table size");
    std::vector<std::string> names;
    if (j.contains("names")) {
      if (!j["names"].is_array())
        throw ParseError(sub(path, "names"), "expected an array of strings");
      for (std::size_t i = 0; i < j["names"].size(); ++i) {
        if (!j["names"][i].is_string())
          throw ParseError(idx(sub(path, "names"), i), "expected a string");
        names.push_back(j["names"][i].get<std::string>());
      }
    }
    return wrap(sub(path, "mul"), [&] { return Group::from_table(mul, names, name); });
  }
  if (j.contains("generators")) {
    const int degree = integer(field(j, "degree", path), sub(path, "degree"));
    auto gens = int_table(j["generators"], sub(path, "generators"));
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (static_cast<int>(gens[i].size()) != degree || !is_perm(gens[i]))
        throw ParseError(idx(sub(path, "generators"), i), "not a permutation of 0.." + std::to_string(degree - 1));
    return wrap(sub(path, "generators"), [&] { return Group::from_permutations(degree, gens, name); });
  }
  throw ParseError(sub(path, "mul"), "missing (give \"mul\" or \"generators\")");
}

inline json to_json(const Group& g) {
  return {{"name", g.name()}, {"order", g.order()}, {"mul", g.table()}, {"names", g.element_names()}};
}

inline Group load_group_file(const std::string& file) {
  std::ifstream in(file);
  if (!in)
    throw ParseError("<file>", "cannot open " + file);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("<file>", std::string("invalid JSON: ") + e.what());
  }
  return group_from_json(j);
}

inline json read_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in)
    throw ParseError("<file>", "cannot open " + file);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw ParseError("<file>", std::string("invalid JSON in ") + file + ": " + e.what());
  }
}

namespace detail {

inline Group context_group(const json& j, const Group* ctx, const std::string& path) {
  if (j.is_object() && j.contains("group")) {
    Group g = group_from_json(j["group"], sub(path, "group"));
    if (ctx && !(g == *ctx))
      throw ParseError(sub(path, "group"), "differs from the ambient group");
    return g;
  }
  if (!ctx)
    throw ParseError(sub(path, "group"), "missing and no ambient group given");
  return *ctx;
}

inline SubgroupId subgroup_ref(const Group& g, const json& j, const std::string& path) {
  if (j.is_string())
    return wrap(path, [&] { return parse_subgroup(g, j.get<std::string>()); });
  const int id = integer(j, path);
  if (id < 0 || id >= g.subgroup_count())
    throw ParseError(path, "subgroup id out of range");
  return id;
}

} // namespace detail

// -- G-sets and maps -----------------------------------------------------

/// {"size", "action": {element: perm}, "acting"?} or {"orbits": [H...]}.
/// The action may list generators only; it is extended multiplicatively.
inline GSet gset_from_json(const json& j, const Group* ctx, const std::string& path = "") {
  using namespace detail;
  const Group g = context_group(j, ctx, path);
  const SubgroupId acting = j.is_object() && j.contains("acting") ? subgroup_ref(g, j["acting"], sub(path, "acting")) : g.whole();
  if (j.is_object() && j.contains("orbits")) {
    const auto& o = j["orbits"];
    if (!o.is_array())
      throw ParseError(sub(path, "orbits"), "expected an array of subgroups");
    std::vector<SubgroupId> stabs;
    for (std::size_t i = 0; i < o.size(); ++i) {
      stabs.push_back(subgroup_ref(g, o[i], idx(sub(path, "orbits"), i)));
      if (!g.is_subgroup_of(stabs.back(), acting))
        throw ParseError(idx(sub(path, "orbits"), i), "not a subgroup of the acting group");
    }
    return from_orbits(g, acting, stabs);
  }
  const int n = integer(field(j, "size", path), sub(path, "size"));
  if (n < 0)
    throw ParseError(sub(path, "size"), "negative");
  const auto& a = field(j, "action", path);
  if (!a.is_object())
    throw ParseError(sub(path, "action"), "expected an object keyed by element index");
  std::vector<Perm> act(static_cast<std::size_t>(g.order()));
  std::vector<char> known(static_cast<std::size_t>(g.order()), 0);
  act[0] = identity_perm(n);
  known[0] = 1;
  std::vector<Elt> gens;
  for (auto it = a.begin(); it != a.end(); ++it) {
    const std::string fp = sub(sub(path, "action"), it.key());
    int e = -1;
    try {
      std::size_t used = 0;
      e = std::stoi(it.key(), &used);
      if (used != it.key().size())
        e = -1;
    } catch (...) {
    }
    if (e < 0 || e >= g.order() || !g.contains(acting, e))
      throw ParseError(fp, "not an element of the acting group");
    auto p = int_list(it.value(), fp);
    if (static_cast<int>(p.size()) != n || !is_perm(p))
      throw ParseError(fp, "not a permutation of 0.." + std::to_string(n - 1));
    if (known[static_cast<std::size_t>(e)] && act[static_cast<std::size_t>(e)] != p)
      throw ParseError(fp, "inconsistent with the other listed elements");
    act[static_cast<std::size_t>(e)] = p;
    known[static_cast<std::size_t>(e)] = 1;
    gens.push_back(e);
  }
  // close under products
  std::vector<Elt> queue{0};
  for (Elt e : gens)
    queue.push_back(e);
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (Elt s : gens) {
      const Elt x = queue[q];
      const Elt y = g.mul(s, x);
      Perm p = compose(act[static_cast<std::size_t>(s)], act[static_cast<std::size_t>(x)]);
      if (known[static_cast<std::size_t>(y)]) {
        if (act[static_cast<std::size_t>(y)] != p)
          throw ParseError(sub(path, "action"), "does not define a left action (element " + std::to_string(y) + ")");
        continue;
      }
      act[static_cast<std::size_t>(y)] = std::move(p);
      known[static_cast<std::size_t>(y)] = 1;
      queue.push_back(y);
    }
  for (Elt e : g.elements(acting))
    if (!known[static_cast<std::size_t>(e)])
      throw ParseError(sub(path, "action"), "listed elements do not generate the acting group");
  return wrap(sub(path, "action"), [&] { return GSet(g, acting, n, act); });
}

inline json to_json(const GSet& x, bool with_group = false) {
  json a = json::object();
  for (Elt e : x.group().elements(x.acting()))
    a[std::to_string(e)] = x.perm(e);
  json j{{"size", x.size()}, {"acting", x.acting()}, {"action", a}};
  if (with_group)
    j["group"] = to_json(x.group());
  return j;
}

inline EquivariantMap map_from_json(const json& j, const Group* ctx, const std::string& path = "") {
  using namespace detail;
  const Group g = context_group(j, ctx, path);
  GSet src = gset_from_json(field(j, "source", path), &g, sub(path, "source"));
  GSet tgt = gset_from_json(field(j, "target", path), &g, sub(path, "target"));
  auto m = int_list(field(j, "map", path), sub(path, "map"));
  if (!is_equivariant(src, tgt, m))
    throw ParseError(sub(path, "map"), "not an equivariant map source -> target");
  return {std::move(src), std::move(tgt), std::move(m)};
}

inline json to_json(const EquivariantMap& f) {
  return {{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"map", f.map}};
}

// -- indexing systems ----------------------------------------------------

/// {"pairs": [[K, H], ...]}. Present pairs only; no closure is taken.
inline IndexingSystem indexing_from_json(const json& j, const Group* ctx, const std::string& path = "") {
  using namespace detail;
  const Group g = context_group(j, ctx, path);
  const auto& p = field(j, "pairs", path);
  if (!p.is_array())
    throw ParseError(sub(path, "pairs"), "expected an array of [K, H] pairs");
  IndexingSystem s(g);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::string fp = idx(sub(path, "pairs"), i);
    if (!p[i].is_array() || p[i].size() != 2)
      throw ParseError(fp, "expected [K, H]");
    const SubgroupId k = subgroup_ref(g, p[i][0], idx(fp, 0));
    const SubgroupId h = subgroup_ref(g, p[i][1], idx(fp, 1));
    wrap(fp, [&] {
      s.insert(k, h);
      return 0;
    });
  }
  return s;
}

inline json to_json(const IndexingSystem& s) {
  json pairs = json::array();
  for (auto [k, h] : s.pairs())
    pairs.push_back({k, h});
  return {{"pairs", pairs}};
}

inline json subgroups_json(const Group& g) {
  json out = json::array();
  for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
    out.push_back({{"id", h}, {"order", g.subgroup_order(h)}, {"elements", g.elements(h)}});
  return out;
}

// -- trees and objects ----------------------------------------------------

inline NormTree tree_from_json(const json& j, const Group& g, const std::string& path = "") {
  using namespace detail;
  if (j.is_string()) {
    if (j.get<std::string>() != "leaf")
      throw ParseError(path.empty() ? "<root>" : path, "expected \"leaf\" or a node");
    return NormTree::leaf();
  }
  const std::string np = sub(path, "node");
  const auto& n = field(j, "node", path);
  const SubgroupId h = subgroup_ref(g, field(n, "H", np), sub(np, "H"));
  json hs = field(n, "hset", np);
  if (hs.is_object() && !hs.contains("acting"))
    hs["acting"] = h;
  GSet t = gset_from_json(hs, &g, sub(np, "hset"));
  if (t.acting() != h)
    throw ParseError(sub(np, "hset"), "acting group differs from H");
  const Elt rep = integer(field(n, "rep", np), sub(np, "rep"));
  const auto& c = field(n, "children", np);
  if (!c.is_array())
    throw ParseError(sub(np, "children"), "expected an array");
  std::vector<NormTree> kids;
  for (std::size_t i = 0; i < c.size(); ++i)
    kids.push_back(tree_from_json(c[i], g, idx(sub(np, "children"), i)));
  return wrap(np, [&] { return NormTree::node(t, rep, std::move(kids)); });
}

inline json to_json(const NormTree& t) {
  if (t.is_leaf())
    return "leaf";
  json kids = json::array();
  for (const auto& c : t.children())
    kids.push_back(to_json(c));
  return {{"node", {{"H", t.subgroup()}, {"hset", to_json(t.hset())}, {"rep", t.rep()}, {"children", kids}}}};
}

inline json to_json(const SymOperation& x) {
  json j = to_json(x.tree);
  return {{"tree", j}, {"perm", x.perm}};
}

inline NormedObject object_from_json(const json& j, const NormedCategory& c, const std::string& path = "") {
  using namespace detail;
  NormTree t = tree_from_json(field(j, "tree", path), c.group(), sub(path, "tree"));
  auto labels = int_list(field(j, "labels", path), sub(path, "labels"));
  return wrap(path, [&] { return c.object(std::move(t), std::move(labels)); });
}

inline json to_json(const NormedObject& x) { return {{"tree", to_json(x.tree)}, {"labels", x.labels}}; }

inline json to_json(const NormedMorphism& f) {
  return {{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"alpha", f.alpha}};
}

/// One object per orbit of the source, at its base point.
inline json to_json(const FunctorData& f) {
  json out = json::array();
  for (const auto& o : orbits(f.source))
    out.push_back({{"basepoint", o.base()}, {"stabilizer", o.stabilizer}, {"object", to_json(f(o.base()))}});
  return out;
}

// -- spans and monoids -----------------------------------------------------

inline SpanMorphism span_from_json(const json& j, const IndexingSystem& s, const std::string& path = "") {
  using namespace detail;
  const Group& g = s.group();
  context_group(j, &g, path);
  GSet src = gset_from_json(field(j, "source", path), &g, sub(path, "source"));
  GSet tgt = gset_from_json(field(j, "target", path), &g, sub(path, "target"));
  GSet apex = gset_from_json(field(j, "apex", path), &g, sub(path, "apex"));
  auto l = int_list(field(j, "left", path), sub(path, "left"));
  auto r = int_list(field(j, "right", path), sub(path, "right"));
  if (!is_equivariant(apex, src, l))
    throw ParseError(sub(path, "left"), "not an equivariant map apex -> source");
  if (!is_equivariant(apex, tgt, r))
    throw ParseError(sub(path, "right"), "not an equivariant map apex -> target");
  return {std::move(src), std::move(tgt), std::move(apex), std::move(l), std::move(r)};
}

inline json to_json(const SpanMorphism& x) {
  return {{"source", to_json(x.source)}, {"target", to_json(x.target)}, {"apex", to_json(x.apex)},
          {"left", x.left},           {"right", x.right}};
}

inline json to_json(const SpanKey& k) {
  json out = json::array();
  for (auto [h, l, r] : k)
    out.push_back({{"stabilizer", h}, {"left", l}, {"right", r}});
  return out;
}

/// {"zmod": m} (trivial action), {"functions": gset, "modulus": m}, or
/// {"size", "add", "zero", "action": {element: perm}} (unlisted elements act
/// trivially only if they are generated by the listed ones).
inline CommutativeGMonoid monoid_from_json(const json& j, const Group* ctx, const std::string& path = "") {
  using namespace detail;
  const Group g = context_group(j, ctx, path);
  if (j.contains("zmod")) {
    const int m = integer(j["zmod"], sub(path, "zmod"));
    return wrap(sub(path, "zmod"), [&] { return CommutativeGMonoid::zmod(g, m); });
  }
  if (j.contains("functions")) {
    GSet x = gset_from_json(j["functions"], &g, sub(path, "functions"));
    const int m = integer(field(j, "modulus", path), sub(path, "modulus"));
    return wrap(path, [&] { return CommutativeGMonoid::functions(x, m); });
  }
  const int n = integer(field(j, "size", path), sub(path, "size"));
  auto add = int_table(field(j, "add", path), sub(path, "add"));
  const int zero = integer(field(j, "zero", path), sub(path, "zero"));
  json as{{"size", n}, {"action", field(j, "action", path)}};
  GSet carrier = gset_from_json(as, &g, path);
  std::vector<Perm> act;
  for (Elt e = 0; e < g.order(); ++e)
    act.push_back(carrier.perm(e));
  return wrap(path, [&] { return CommutativeGMonoid(g, add, zero, act); });
}

inline json to_json(const CommutativeGMonoid& m) {
  json a = json::object();
  for (Elt e = 0; e < m.group().order(); ++e)
    a[std::to_string(e)] = m.action()[static_cast<std::size_t>(e)];
  return {{"size", m.size()}, {"add", m.table()}, {"zero", m.zero()}, {"action", a}};
}

} // namespace ninf::io

#endif // NINF_IO_HPP_
