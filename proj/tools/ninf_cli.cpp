// ninf: command-line front end over the library.
//
// Exit codes: 0 success, 1 malformed input or usage, 2 validation failure,
// 3 budget overflow. Reports are deterministic for fixed inputs and flags.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acceptance_suite.hpp"
#include "ninf/io.hpp"
#include "ninf/ninf.hpp"

namespace {

using namespace ninf;
using nlohmann::json;
using ordered = nlohmann::ordered_json;

constexpr int kMalformed = 1;
constexpr int kValidation = 2;
constexpr int kOverflow = 3;

struct Exit : std::runtime_error {
  Exit(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

struct Config {
  std::string group;
  std::string indexing_file;
  bool complete = false;
  bool minimal = false;
  std::string gen;
  int bound = 4;
  int budget = 4;
  int apex_bound = 6;
  long max_items = 200000;
  std::uint64_t seed = oracle::kSeed;
  std::string format = "json";
  std::string out_dir;
};

// -- input resolution ------------------------------------------------------

json read_json_arg(const std::string& arg, const std::string& what) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    try {
      return json::parse(arg);
    } catch (const json::parse_error& e) {
      throw io::ParseError(what, std::string("invalid JSON: ") + e.what());
    }
  }
  return io::read_json_file(arg);
}

// The group comes from --group (file or builtin name), else from a "group"
// field of the first input file, else C2.
Group resolve_group(const Config& c, const std::vector<std::string>& inputs = {}) {
  if (!c.group.empty()) {
    if (std::filesystem::exists(c.group))
      return io::load_group_file(c.group);
    return io::group_from_json(json(c.group), "--group");
  }
  for (const auto& f : inputs) {
    json j = read_json_arg(f, f);
    if (j.is_object() && j.contains("group"))
      return io::group_from_json(j["group"], "group");
  }
  return groups::cyclic(2);
}

std::string indexing_source(const Config& c) {
  if (!c.indexing_file.empty())
    return "file:" + c.indexing_file;
  if (c.minimal)
    return "minimal";
  if (!c.gen.empty())
    return "gen:" + c.gen;
  return "complete";
}

IndexingSystem resolve_system(const Config& c, const Group& g) {
  if (!c.indexing_file.empty())
    return io::indexing_from_json(io::read_json_file(c.indexing_file), &g);
  if (c.minimal)
    return minimal_system(g);
  if (!c.gen.empty())
    return closure(g, io::detail::wrap("--gen", [&] { return parse_pairs(g, c.gen); }));
  return complete_system(g);
}

SubgroupId subgroup_arg(const Group& g, std::string token, const std::string& flag) {
  if (token.rfind("G/", 0) == 0)
    token = token.substr(2);
  return io::detail::wrap(flag, [&] { return parse_subgroup(g, token); });
}

// A set over a subgroup: a JSON file or literal, or "H:K1,K2,..." meaning
// the disjoint union of the orbits H/Ki ("H:" alone is empty).
GSet hset_arg(const Group& g, const std::string& spec, const std::string& flag) {
  if (spec.empty())
    throw io::ParseError(flag, "empty");
  const auto colon = spec.find(':');
  if (spec.front() != '{' && colon != std::string::npos && !std::filesystem::exists(spec)) {
    const SubgroupId h = subgroup_arg(g, spec.substr(0, colon), flag);
    std::vector<SubgroupId> stabs;
    std::stringstream rest(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(rest, tok, ','))
      if (!tok.empty()) {
        const SubgroupId k = subgroup_arg(g, tok, flag);
        if (!g.is_subgroup_of(k, h))
          throw io::ParseError(flag, "'" + tok + "' is not a subgroup of the acting group");
        stabs.push_back(k);
      }
    return from_orbits(g, h, stabs);
  }
  return io::gset_from_json(read_json_arg(spec, flag), &g, flag);
}

GSet gset_arg(const Group& g, const std::string& spec, const std::string& flag) {
  GSet x = hset_arg(g, spec, flag);
  if (x.acting() != g.whole())
    throw io::ParseError(flag, "expected a G-set (acting group G)");
  return x;
}

// Loads a span and checks its legs against the system; an inadmissible
// right leg is a validation failure naming the fiber.
SpanMorphism span_arg(const IndexingSystem& s, const std::string& spec, const std::string& flag) {
  SpanMorphism x = io::span_from_json(read_json_arg(spec, flag), s, flag);
  try {
    return make_span(s, x.source, x.target, x.apex, x.left, x.right);
  } catch (const SpanError& e) {
    throw Exit(kValidation, flag + ": " + e.what());
  }
}

// -- reports -----------------------------------------------------------------

ordered header(const Config& c, const std::string& command, const Group& g) {
  ordered cfg;
  cfg["group"] = g.name();
  cfg["group_order"] = g.order();
  cfg["indexing"] = indexing_source(c);
  cfg["bound"] = c.bound;
  cfg["budget"] = c.budget;
  cfg["apex_bound"] = c.apex_bound;
  cfg["seed"] = c.seed;
  ordered h;
  h["tool"] = "ninf";
  h["version"] = kVersion;
  h["command"] = command;
  h["config"] = cfg;
  return h;
}

bool scalar_array(const ordered& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const ordered& e) {
           return e.is_primitive() || (e.is_array() && std::all_of(e.begin(), e.end(), [](const ordered& f) {
                                         return f.is_primitive();
                                       }));
         });
}

void render_text(std::ostream& os, const ordered& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto inline_value = [](const ordered& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const auto& v = it.value();
      if (v.is_primitive() || scalar_array(v)) {
        os << pad << it.key() << ": " << inline_value(v) << '\n';
      } else {
        os << pad << it.key() << ":\n";
        render_text(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (j[i].is_primitive() || scalar_array(j[i])) {
        os << pad << "- " << inline_value(j[i]) << '\n';
      } else {
        os << pad << "- [" << i << "]\n";
        render_text(os, j[i], indent + 2);
      }
    }
  } else {
    os << pad << inline_value(j) << '\n';
  }
}

void emit(const Config& c, const std::string& name, const ordered& report, const std::string& dot = "") {
  std::string body;
  std::string ext = c.format;
  if (c.format == "json") {
    body = report.dump(2) + "\n";
  } else if (c.format == "text") {
    std::ostringstream os;
    render_text(os, report, 0);
    body = os.str();
    ext = "txt";
  } else {
    if (dot.empty())
      throw Exit(kMalformed, "--format dot is only available for 'indexing enumerate'");
    body = dot;
  }
  if (c.out_dir.empty()) {
    std::cout << body;
    return;
  }
  std::filesystem::create_directories(c.out_dir);
  const auto path = std::filesystem::path(c.out_dir) / (name + "." + ext);
  std::ofstream out(path);
  if (!out)
    throw Exit(kMalformed, "cannot write " + path.string());
  out << body;
  std::cout << path.string() << '\n';
}

ordered pairs_json(const std::vector<SubgroupPair>& ps) {
  ordered out = ordered::array();
  for (auto [k, h] : ps)
    out.push_back({k, h});
  return out;
}

ordered subgroups_table(const Group& g) {
  ordered out = ordered::array();
  for (SubgroupId h = 0; h < g.subgroup_count(); ++h) {
    ordered e;
    e["id"] = h;
    e["order"] = g.subgroup_order(h);
    e["elements"] = g.elements(h);
    out.push_back(e);
  }
  return out;
}

ordered gset_summary(const GSet& x) {
  ordered j;
  j["acting"] = x.acting();
  j["size"] = x.size();
  j["orbit_types"] = orbit_type(x);
  return j;
}

ordered span_json(const SpanMorphism& x) {
  ordered j;
  j["source"] = gset_summary(x.source);
  j["target"] = gset_summary(x.target);
  j["apex"] = gset_summary(x.apex);
  j["left"] = x.left;
  j["right"] = x.right;
  return j;
}

ordered key_json(const SpanKey& k) {
  ordered out = ordered::array();
  for (auto [h, l, r] : k)
    out.push_back({h, l, r});
  return out;
}

// Guards enumerations: more than the cap is a budget overflow.
struct Counter {
  long cap;
  long n = 0;
  void tick(const std::string& what) {
    if (++n > cap)
      throw Exit(kOverflow, what + " exceeds " + std::to_string(cap) + " items; lower --budget or raise --max-items");
  }
};

// -- indexing ------------------------------------------------------------

int cmd_indexing_enumerate(const Config& c) {
  const Group g = resolve_group(c);
  ordered r = header(c, "indexing enumerate", g);
  r["subgroups"] = subgroups_table(g);
  if (candidate_pairs(g).size() > 40) {
    r["count"] = count_indexing_systems(g);
    r["listed"] = false;
    emit(c, "indexing-enumerate", r);
    return 0;
  }
  auto systems = enumerate_all(g);
  auto edges = poset_edges(systems);
  ordered list = ordered::array();
  for (std::size_t i = 0; i < systems.size(); ++i) {
    ordered e;
    e["id"] = i;
    e["strict_pairs"] = pairs_json(systems[i].strict_pairs());
    list.push_back(e);
  }
  ordered ej = ordered::array();
  for (auto [a, b] : edges)
    ej.push_back({a, b});
  r["count"] = systems.size();
  r["listed"] = true;
  r["systems"] = list;
  r["poset_edges"] = ej;
  std::ostringstream dot;
  dot << "digraph indexing_systems {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < systems.size(); ++i) {
    dot << "  s" << i << " [label=\"" << i << ":";
    for (auto [k, h] : systems[i].strict_pairs())
      dot << " " << k << "<" << h;
    dot << "\"];\n";
  }
  for (auto [a, b] : edges)
    dot << "  s" << a << " -> s" << b << ";\n";
  dot << "}\n";
  emit(c, "indexing-enumerate", r, dot.str());
  return 0;
}

int cmd_indexing_validate(const Config& c) {
  const Group g = resolve_group(c);
  const IndexingSystem s = resolve_system(c, g);
  auto rep = validate_against_axioms(s, c.bound);
  ordered r = header(c, "indexing validate", g);
  r["pairs"] = pairs_json(s.pairs());
  r["checks"] = rep.checks;
  r["status"] = rep.ok ? "PASS" : "FAIL";
  if (!rep.ok) {
    r["failing_axiom"] = rep.axiom;
    r["detail"] = rep.detail;
  }
  emit(c, "indexing-validate", r);
  return rep.ok ? 0 : kValidation;
}

int cmd_indexing_closure(const Config& c) {
  if (c.gen.empty())
    throw io::ParseError("--gen", "required for 'indexing closure'");
  const Group g = resolve_group(c);
  auto gens = io::detail::wrap("--gen", [&] { return parse_pairs(g, c.gen); });
  const IndexingSystem s = closure(g, gens);
  ordered r = header(c, "indexing closure", g);
  r["subgroups"] = subgroups_table(g);
  r["generators"] = pairs_json(gens);
  r["strict_pairs"] = pairs_json(s.strict_pairs());
  std::vector<SubgroupPair> added;
  for (auto p : s.strict_pairs())
    if (std::find(gens.begin(), gens.end(), p) == gens.end())
      added.push_back(p);
  r["added"] = pairs_json(added);
  emit(c, "indexing-closure", r);
  return 0;
}

// -- operad ----------------------------------------------------------------

ordered tree_entry(const NormTree& t) {
  ordered e;
  e["expr"] = to_string(t);
  e["vertices"] = t.vertices();
  e["length"] = t.length();
  return e;
}

int cmd_operad_enumerate(const Config& c) {
  const Group g = resolve_group(c);
  const IndexingSystem s = resolve_system(c, g);
  ordered r = header(c, "operad enumerate-norms", g);
  Counter count{c.max_items};
  ordered trees = ordered::array();
  for_each_tree(s, c.budget, [&](const NormTree& t) {
    count.tick("tree enumeration");
    trees.push_back(tree_entry(t));
  });
  // one corolla per admissible orbit type H/K, at the identity representative
  ordered corollas = ordered::array();
  for (auto [k, h] : s.pairs()) {
    ordered e = tree_entry(NormTree::corolla(coset_set(g, k, h)));
    e["H"] = h;
    e["K"] = k;
    corollas.push_back(e);
  }
  r["count"] = trees.size();
  r["trees"] = trees;
  r["corollas"] = corollas;
  emit(c, "operad-enumerate-norms", r);
  return 0;
}

int cmd_operad_fixed(const Config& c, const std::string& hset, int limit) {
  const Group g = resolve_group(c);
  const IndexingSystem s = resolve_system(c, g);
  const GSet t = hset_arg(g, hset, "--hset");
  const bool adm = is_admissible_hset(s, t);
  Counter count{c.max_items};
  ordered ops = ordered::array();
  visit_fixed_operations(s, graph_subgroup_of(t), c.budget, [&](const SymOperation& x) {
    count.tick("fixed operation search");
    if (static_cast<int>(ops.size()) < limit) {
      ordered e = tree_entry(x.tree);
      e["perm"] = x.perm;
      ops.push_back(e);
    }
    return true;
  });
  const bool empty = count.n == 0;
  std::string verdict;
  int code = 0;
  if (empty && !adm) {
    verdict = "EMPTY (consistent with admissibility criterion)";
  } else if (!empty && adm) {
    verdict = "NONEMPTY (consistent with admissibility criterion)";
  } else if (empty && c.budget < t.size() + 1) {
    verdict = "EMPTY (inconclusive: budget below |T| + 1)";
  } else {
    verdict = "INCONSISTENT with admissibility criterion";
    code = kValidation;
  }
  ordered r = header(c, "operad fixed-points", g);
  r["hset"] = gset_summary(t);
  r["admissible"] = adm;
  r["count"] = count.n;
  r["shown"] = ops;
  r["verdict"] = verdict;
  emit(c, "operad-fixed-points", r);
  return code;
}

int cmd_operad_verify(const Config& c) {
  const Group g = resolve_group(c);
  const IndexingSystem s = resolve_system(c, g);
  Counter count{c.max_items};
  std::vector<NormTree> trees;
  for_each_tree(s, c.budget, [&](const NormTree& t) {
    count.tick("tree enumeration");
    trees.push_back(t);
  });
  ordered suites = ordered::array();
  bool all_ok = true;
  auto report = [&](const std::string& name, const acceptance::Tally& t) {
    ordered e;
    e["suite"] = name;
    e["status"] = t.failed == 0 ? "PASS" : "FAIL";
    e["checks"] = t.passed + t.failed;
    if (t.failed)
      e["first_failure"] = t.first_failure;
    all_ok &= t.failed == 0;
    suites.push_back(e);
  };
  {
    acceptance::Tally t;
    for (const auto& tr : trees)
      for (Elt a = 0; a < g.order(); ++a) {
        const auto at = act(a, tr);
        const auto oa = omega(tr, a);
        for (Elt b = 0; b < g.order(); ++b) {
          t.expect_lazy(act(b, at) == act(g.mul(b, a), tr), [&] { return "action law on " + to_string(tr); });
          t.expect_lazy(compose(omega(at, b), oa) == omega(tr, g.mul(b, a)),
                        [&] { return "cocycle law on " + to_string(tr); });
        }
      }
    report("action and cocycle", t);
  }
  {
    acceptance::Tally t;
    std::vector<SymOperation> ops;
    for (const auto& tr : trees)
      if (tr.length() <= 3)
        for_each_perm(tr.length(), [&](const Perm& p) { ops.emplace_back(tr, p); });
    auto rng = oracle::rng(c.seed);
    auto pick = [&](int max_arity) -> const SymOperation& {
      for (;;) {
        const auto& x = ops[rng() % ops.size()];
        if (x.arity() <= max_arity)
          return x;
      }
    };
    for (const auto& x : ops) {
      std::vector<SymOperation> units(static_cast<std::size_t>(x.arity()));
      t.expect(compose_sym(x, units) == x, "right unit");
      t.expect(compose_sym(SymOperation(), std::vector<SymOperation>{x}) == x, "left unit");
    }
    for (int trial = 0; trial < 500 && !ops.empty(); ++trial) {
      const auto& x = pick(3);
      std::vector<SymOperation> ys, zs;
      std::vector<int> sizes;
      int m = 0;
      for (int i = 0; i < x.arity(); ++i) {
        ys.push_back(pick(2));
        sizes.push_back(ys.back().arity());
        m += ys.back().arity();
      }
      for (int j = 0; j < m; ++j)
        zs.push_back(pick(2));
      std::vector<SymOperation> inner;
      std::size_t off = 0;
      for (const auto& y : ys) {
        inner.push_back(compose_sym(y, std::span<const SymOperation>(zs).subspan(off, static_cast<std::size_t>(y.arity()))));
        off += static_cast<std::size_t>(y.arity());
      }
      const auto xy = compose_sym(x, ys);
      t.expect(compose_sym(xy, zs) == compose_sym(x, inner), "associativity");
      Perm sg = identity_perm(x.arity());
      std::shuffle(sg.begin(), sg.end(), rng);
      Perm sinv = inverse(sg);
      std::vector<SymOperation> shuffled;
      for (int j = 0; j < x.arity(); ++j)
        shuffled.push_back(ys[static_cast<std::size_t>(sinv[static_cast<std::size_t>(j)])]);
      t.expect(compose_sym(right_act(x, sg), ys) == right_act(compose_sym(x, shuffled), block_perm(sg, sizes)),
               "Sigma-equivariance");
      const Elt e = static_cast<Elt>(rng() % static_cast<unsigned>(g.order()));
      std::vector<SymOperation> gys;
      for (const auto& y : ys)
        gys.push_back(act(e, y));
      t.expect(act(e, xy) == compose_sym(act(e, x), gys), "G-equivariance of composition");
    }
    report("operad axioms", t);
  }
  {
    acceptance::Tally t;
    FixedTreeGenerator gen(s, c.budget);
    for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
      for (const auto& tr : gen.all(h))
        t.expect_lazy(is_admissible_hset(s, equivariant_orbit_set(tr, h, g)),
                      [&] { return "orbit set of " + to_string(tr) + " over #" + std::to_string(h); });
    report("orbit sets of fixed trees", t);
  }
  ordered r = header(c, "operad verify", g);
  r["trees"] = trees.size();
  r["suites"] = suites;
  r["status"] = all_ok ? "PASS" : "FAIL";
  emit(c, "operad-verify", r);
  return all_ok ? 0 : kValidation;
}

// -- spans and Mackey ----------------------------------------------------------

ordered span_report(const SpanMorphism& x) {
  ordered j;
  j["canonical"] = span_json(canonical_span(x));
  j["key"] = key_json(span_key(x));
  j["automorphisms"] = span_automorphism_count(x);
  return j;
}

int cmd_spans_compose(const Config& c, const std::string& a, const std::string& b) {
  const Group g = resolve_group(c, {a, b});
  const IndexingSystem s = resolve_system(c, g);
  const auto x = span_arg(s, a, a);
  const auto y = span_arg(s, b, b);
  if (!(x.target == y.source))
    throw Exit(kMalformed, "spans are not composable: the target of " + a + " differs from the source of " + b);
  const auto xy = [&] {
    try {
      return compose_spans(s, x, y);
    } catch (const SpanError& e) {
      throw Exit(kValidation, e.what());
    }
  }();
  ordered r = header(c, "spans compose", g);
  r["composite"] = span_report(xy);
  emit(c, "spans-compose", r);
  return 0;
}

int cmd_spans_canonicalize(const Config& c, const std::string& a) {
  const Group g = resolve_group(c, {a});
  const IndexingSystem s = resolve_system(c, g);
  ordered r = header(c, "spans canonicalize", g);
  r["span"] = span_report(span_arg(s, a, a));
  emit(c, "spans-canonicalize", r);
  return 0;
}

int cmd_spans_hom(const Config& c, const std::string& src, const std::string& tgt) {
  const Group g = resolve_group(c);
  const IndexingSystem s = resolve_system(c, g);
  const GSet a = gset_arg(g, src, "--source");
  const GSet b = gset_arg(g, tgt, "--target");
  auto hom = hom_groupoid(s, a, b, c.apex_bound);
  ordered classes = ordered::array();
  for (const auto& cls : hom.classes) {
    ordered e;
    e["key"] = key_json(cls.key);
    e["apex_size"] = cls.span.apex.size();
    e["automorphisms"] = cls.automorphisms;
    classes.push_back(e);
  }
  ordered r = header(c, "spans hom", g);
  r["source"] = gset_summary(a);
  r["target"] = gset_summary(b);
  r["count"] = hom.classes.size();
  r["classes"] = classes;
  int code = 0;
  auto obs = orbits(b);
  if (obs.size() == 1) {
    // spans into an orbit G/H against H-fixed objects of the normed category on A
    const SubgroupId h = obs.front().stabilizer;
    const int fiber_bound = c.apex_bound / g.index(h, g.whole());
    auto capped = hom_groupoid(s, a, b, fiber_bound * g.index(h, g.whole()));
    NormedCategory cat(s, a);
    auto fixed = fixed_classes(cat, h, fiber_bound, 1);
    std::map<OverKey, long> fixed_auts;
    for (const auto& f : fixed)
      fixed_auts[f.key] = f.automorphisms;
    bool agree = capped.classes.size() == fixed.size();
    ordered images = ordered::array();
    for (const auto& cls : capped.classes) {
      auto x = theta_object(cat, cls.span);
      auto pf = projection_form(cls.span);
      auto it = fixed_auts.find(over_key(pf.hset, pf.labels));
      agree &= it != fixed_auts.end() && it->second == cls.automorphisms && cat.is_fixed(x, h);
      ordered e;
      e["key"] = key_json(cls.key);
      e["theta"] = to_string(x);
      e["automorphisms"] = cls.automorphisms;
      images.push_back(e);
    }
    ordered th;
    th["subgroup"] = h;
    th["fiber_bound"] = fiber_bound;
    th["span_classes"] = capped.classes.size();
    th["fixed_classes"] = fixed.size();
    th["status"] = agree ? "PASS" : "FAIL";
    th["images"] = images;
    r["theta"] = th;
    code = agree ? 0 : kValidation;
  }
  emit(c, "spans-hom", r);
  return code;
}

int cmd_mackey_eval(const Config& c, const std::string& monoid, const std::string& span, bool all_inputs) {
  const Group g = resolve_group(c, {span, monoid});
  const IndexingSystem s = resolve_system(c, g);
  const auto m = io::monoid_from_json(read_json_arg(monoid, "--monoid"), &g, "--monoid");
  const auto x = span_arg(s, span, "--span");
  std::vector<IndexMap> inputs;
  if (all_inputs) {
    inputs = equivariant_functions(m, x.source);
  } else {
    // constants at G-fixed values
    for (int v = 0; v < m.size(); ++v) {
      bool fixed = true;
      for (Elt e = 0; e < g.order(); ++e)
        fixed &= m.act(e, v) == v;
      if (fixed)
        inputs.emplace_back(static_cast<std::size_t>(x.source.size()), v);
    }
  }
  auto orbit_table = [&](const GSet& y) {
    ordered out = ordered::array();
    for (const auto& o : orbits(y)) {
      ordered e;
      e["basepoint"] = o.base();
      e["stabilizer"] = o.stabilizer;
      out.push_back(e);
    }
    return out;
  };
  ordered rows = ordered::array();
  for (const auto& phi : inputs) {
    ordered e;
    e["input"] = phi;
    e["output"] = mackey_eval(m, x, phi);
    rows.push_back(e);
  }
  ordered r = header(c, "mackey eval", g);
  r["monoid_size"] = m.size();
  r["span"] = span_json(x);
  r["source_orbits"] = orbit_table(x.source);
  r["target_orbits"] = orbit_table(x.target);
  r["inputs"] = all_inputs ? "all equivariant" : "fixed constants";
  r["rows"] = rows;
  emit(c, "mackey-eval", r);
  return 0;
}

int cmd_normedcat_fixed(const Config& c, const std::string& orbit, const std::string& base) {
  const Group g = resolve_group(c);
  const IndexingSystem s = resolve_system(c, g);
  const SubgroupId h = subgroup_arg(g, orbit, "--orbit");
  const GSet a = gset_arg(g, base, "--base");
  NormedCategory cat(s, a);
  auto fixed = fixed_classes(cat, h, c.bound, 1);
  auto slice = slice_classes(s, h, a, c.bound);
  auto spans = hom_groupoid(s, a, orbit_gset(g, h), c.bound * g.index(h, g.whole()));
  bool agree = fixed.size() == slice.size() && slice.size() == spans.classes.size();
  ordered classes = ordered::array();
  for (std::size_t i = 0; i < fixed.size() && i < slice.size(); ++i) {
    agree &= fixed[i].key == slice[i].key && fixed[i].automorphisms == slice[i].automorphisms;
    ordered e;
    ordered key = ordered::array();
    for (auto [k, l] : fixed[i].key)
      key.push_back({k, l});
    e["key"] = key;
    e["automorphisms"] = fixed[i].automorphisms;
    classes.push_back(e);
  }
  ordered r = header(c, "normedcat fixed", g);
  r["subgroup"] = h;
  r["base"] = gset_summary(a);
  r["fixed_classes"] = fixed.size();
  r["slice_classes"] = slice.size();
  r["span_classes"] = spans.classes.size();
  r["status"] = agree ? "PASS" : "FAIL";
  r["classes"] = classes;
  emit(c, "normedcat-fixed", r);
  return agree ? 0 : kValidation;
}

int cmd_verify_all(const Config& c) {
  std::ostringstream os;
  const bool ok = acceptance::run_all(os);
  if (c.format == "json") {
    const Group g = resolve_group(c);
    ordered r = header(c, "--verify-all", g);
    ordered lines = ordered::array();
    std::istringstream in(os.str());
    for (std::string line; std::getline(in, line);)
      lines.push_back(line);
    r["criteria"] = lines;
    r["status"] = ok ? "PASS" : "FAIL";
    emit(c, "verify-all", r);
  } else {
    std::cout << os.str();
  }
  return ok ? 0 : kValidation;
}

} // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"ninf: indexing systems, norm operads, normed categories and spans"};
  app.set_version_flag("--version", std::string(kVersion));
  app.fallthrough();
  app.require_subcommand(0, 1);

  auto* group = app.add_option("--group", cfg.group, "group file or builtin name (C2, C4, S3, C2xC2, D8, Q8, ...)");
  auto* ind_file = app.add_option("--indexing", cfg.indexing_file, "indexing system file ({\"pairs\": [[K, H], ...]})");
  auto* complete = app.add_flag("--complete", cfg.complete, "use the complete indexing system (default)");
  auto* minimal = app.add_flag("--minimal", cfg.minimal, "use the minimal indexing system");
  auto* gen = app.add_option("--gen", cfg.gen, "closure of generator pairs \"K<H,...\"");
  ind_file->excludes(complete, minimal);
  complete->excludes(minimal);
  (void)group;
  (void)gen;
  app.add_option("--bound", cfg.bound, "H-set size bound")->check(CLI::PositiveNumber);
  app.add_option("--budget", cfg.budget, "tree vertex budget (leaves count)")->check(CLI::PositiveNumber);
  app.add_option("--apex-bound", cfg.apex_bound, "span apex size bound")->check(CLI::NonNegativeNumber);
  app.add_option("--max-items", cfg.max_items, "enumeration cap; exceeding it exits with 3")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for randomized suites");
  app.add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json", "text", "dot"}));
  app.add_option("--out", cfg.out_dir, "write the report into this directory");
  bool verify_all = false;
  app.add_flag("--verify-all", verify_all, "run the acceptance suite");

  auto* indexing = app.add_subcommand("indexing", "indexing systems");
  indexing->require_subcommand(1);
  auto* ind_enum = indexing->add_subcommand("enumerate", "all indexing systems and the inclusion poset");
  auto* ind_validate = indexing->add_subcommand("validate", "check the set-level axioms up to --bound");
  auto* ind_closure = indexing->add_subcommand("closure", "indexing system generated by --gen");

  auto* operad = app.add_subcommand("operad", "the norm operad");
  operad->require_subcommand(1);
  auto* op_enum = operad->add_subcommand("enumerate-norms", "trees with at most --budget vertices");
  std::string hset;
  int limit = 20;
  auto* op_fixed = operad->add_subcommand("fixed-points", "fixed operations for the graph subgroup of an H-set");
  op_fixed->add_option("--hset", hset, "H-set: JSON file or literal, or \"H:K1,K2\"")->required();
  op_fixed->add_option("--limit", limit, "operations to list")->check(CLI::NonNegativeNumber);
  auto* op_verify = operad->add_subcommand("verify", "action, cocycle, operad axiom and orbit set suites");

  auto* spans = app.add_subcommand("spans", "spans of G-sets");
  spans->require_subcommand(1);
  std::string span_a, span_b, hom_src = "G:e", hom_tgt = "G:G";
  auto* sp_compose = spans->add_subcommand("compose", "compose two spans (first, then second)");
  sp_compose->add_option("first", span_a, "span file")->required();
  sp_compose->add_option("second", span_b, "span file")->required();
  auto* sp_canon = spans->add_subcommand("canonicalize", "canonical representative of a span");
  sp_canon->add_option("span", span_a, "span file")->required();
  auto* sp_hom = spans->add_subcommand("hom", "hom groupoid up to --apex-bound");
  sp_hom->add_option("--source", hom_src, "source G-set");
  sp_hom->add_option("--target", hom_tgt, "target G-set");

  auto* mackey = app.add_subcommand("mackey", "Mackey functors Hom_G(-, M)");
  mackey->require_subcommand(1);
  std::string monoid, mspan;
  bool all_inputs = false;
  auto* mk_eval = mackey->add_subcommand("eval", "evaluate a span on equivariant functions");
  mk_eval->add_option("--monoid", monoid, "commutative G-monoid file")->required();
  mk_eval->add_option("--span", mspan, "span file")->required();
  mk_eval->add_flag("--all-inputs", all_inputs, "every equivariant input instead of fixed constants");

  auto* normedcat = app.add_subcommand("normedcat", "normed categories");
  normedcat->require_subcommand(1);
  std::string orbit, base = "G:G";
  auto* nc_fixed = normedcat->add_subcommand("fixed", "H-fixed classes against slices and spans");
  nc_fixed->add_option("--orbit", orbit, "orbit G/H (subgroup token)")->required();
  nc_fixed->add_option("--base", base, "base G-set A");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  try {
    if (verify_all)
      return cmd_verify_all(cfg);
    if (ind_enum->parsed())
      return cmd_indexing_enumerate(cfg);
    if (ind_validate->parsed())
      return cmd_indexing_validate(cfg);
    if (ind_closure->parsed())
      return cmd_indexing_closure(cfg);
    if (op_enum->parsed())
      return cmd_operad_enumerate(cfg);
    if (op_fixed->parsed())
      return cmd_operad_fixed(cfg, hset, limit);
    if (op_verify->parsed())
      return cmd_operad_verify(cfg);
    if (sp_compose->parsed())
      return cmd_spans_compose(cfg, span_a, span_b);
    if (sp_canon->parsed())
      return cmd_spans_canonicalize(cfg, span_a);
    if (sp_hom->parsed())
      return cmd_spans_hom(cfg, hom_src, hom_tgt);
    if (mk_eval->parsed())
      return cmd_mackey_eval(cfg, monoid, mspan, all_inputs);
    if (nc_fixed->parsed())
      return cmd_normedcat_fixed(cfg, orbit, base);
    std::cout << app.help();
    return kMalformed;
  } catch (const Exit& e) {
    std::cerr << "ninf: " << e.what() << '\n';
    return e.code;
  } catch (const io::ParseError& e) {
    std::cerr << "ninf: malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const IndexingError& e) {
    std::cerr << "ninf: malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "ninf: " << e.what() << '\n';
    return kMalformed;
  }
}
