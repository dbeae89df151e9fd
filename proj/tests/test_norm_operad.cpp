#include <catch_amalgamated.hpp>

#include "ninf/norm_operad.hpp"
#include "oracle.hpp"

using namespace ninf;

namespace {

std::vector<SymOperation> all_operations(const IndexingSystem& s, int budget, int max_arity) {
  std::vector<SymOperation> out;
  for_each_tree(s, budget, [&](const NormTree& t) {
    if (t.length() <= max_arity)
      for_each_perm(t.length(), [&](const Perm& p) { out.emplace_back(t, p); });
  });
  return out;
}

// Z/3 with C2 acting by negation.
EndomorphismOperad zmod3_negation(const Group& c2) {
  return EndomorphismOperad(GSet::from_function(c2, c2.whole(), 3, [](Elt g, int x) { return g == 0 ? x : (3 - x) % 3; }));
}

// Over the trivial subgroup any operation is fixed; pick one that does not
// commute with negation so the coset representatives matter.
EndOp affine_sum(const EndomorphismOperad& end, const GSet& t) {
  return end.from_function(t.size(), [](const std::vector<int>& xs) {
    int s = 1;
    for (std::size_t i = 0; i < xs.size(); ++i)
      s += static_cast<int>(i + 1) * xs[i];
    return s % 3;
  });
}

// sum of x_i weighted by a constant on each orbit of T
EndOp weighted_sum(const EndomorphismOperad& end, const GSet& t) {
  if (t.acting() == 0)
    return affine_sum(end, t);
  auto idx = orbit_index(t);
  auto types = orbits(t);
  std::vector<int> w;
  for (int i = 0; i < t.size(); ++i)
    w.push_back(1 + (types[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])].stabilizer + t.acting()) % 2);
  return end.from_function(t.size(), [&](const std::vector<int>& xs) {
    int s = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      s += w[i] * xs[i];
    return s % 3;
  });
}

// Reorders every node set in the same way per label: a global change of the
// chosen orderings.
struct Reorder {
  std::mt19937_64 rng;
  std::map<LabelPtr, std::pair<LabelPtr, Perm>> chosen;  // owning keys: addresses are not reused

  NormTree operator()(const NormTree& t) {
    if (t.is_leaf())
      return t;
    auto it = chosen.find(t.label());
    if (it == chosen.end()) {
      Perm pi = identity_perm(t.arity());
      std::shuffle(pi.begin(), pi.end(), rng);
      const GSet& x = t.hset();
      Perm pinv = inverse(pi);
      GSet y = GSet::from_function(x.group(), x.acting(), x.size(), [&](Elt h, int i) {
        return pi[static_cast<std::size_t>(x.act(h, pinv[static_cast<std::size_t>(i)]))];
      });
      it = chosen.emplace(t.label(), std::make_pair(make_label(y), pi)).first;
    }
    const auto& [lab, pi] = it->second;
    std::vector<NormTree> kids(static_cast<std::size_t>(t.arity()));
    for (int i = 0; i < t.arity(); ++i)
      kids[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])] = (*this)(t.child(i));
    return NormTree::node(lab, t.rep(), kids);
  }
};

} // namespace

TEST_CASE("tree construction and length", "[operad]") {
  auto c2 = groups::cyclic(2);
  auto free2 = orbit_gset(c2, 0);
  auto t = NormTree::corolla(free2);
  CHECK(t.length() == 2);
  CHECK(t.vertices() == 3);
  CHECK(NormTree::leaf().length() == 1);
  auto empty = NormTree::corolla(trivial_set(c2, c2.whole(), 0));
  CHECK(empty.length() == 0);
  CHECK(NormTree::node(free2, 0, {empty, t}).length() == 2);
  CHECK_THROWS_AS(NormTree::node(free2, 0, {NormTree::leaf()}), OperadError);
  // 1 is not the minimal element of the coset e.C2 = C2
  CHECK_THROWS_AS(NormTree::node(free2, 1, {NormTree::leaf(), NormTree::leaf()}), OperadError);
  auto free_e = trivial_set(c2, 0, 1);
  CHECK_NOTHROW(NormTree::node(free_e, 1, {NormTree::leaf()}));
  CHECK(!is_valid_tree(minimal_system(c2), t));
  CHECK(is_valid_tree(complete_system(c2), t));
}

TEST_CASE("action examples", "[operad]") {
  auto c2 = groups::cyclic(2);
  auto t = NormTree::corolla(orbit_gset(c2, 0));
  CHECK(act(0, t) == t);
  CHECK(act(1, t) == t);
  CHECK(omega(t, 1) == Perm{1, 0});
  CHECK(omega(t, 0) == Perm{0, 1});
  CHECK(omega(NormTree::leaf(), 1) == Perm{0});

  // over the trivial subgroup the action moves the coset representative
  auto u = NormTree::node(trivial_set(c2, 0, 1), 0, {NormTree::leaf()});
  auto tu = act(1, u);
  CHECK(tu.rep() == 1);
  CHECK(act(1, tu) == u);
  CHECK(!is_fixed(u, c2.whole()));
}

TEST_CASE("action and cocycle laws", "[operad]") {
  for (const auto& g : {groups::cyclic(2), groups::cyclic(3), groups::cyclic(4), groups::symmetric(3),
                        groups::product(groups::cyclic(2), groups::cyclic(2))}) {
    CAPTURE(g.name());
    auto trees = enumerate_trees(complete_system(g), 3);
    for (const auto& t : trees) {
      REQUIRE(is_valid_tree(complete_system(g), t));
      for (Elt a = 0; a < g.order(); ++a) {
        auto at = act(a, t);
        auto oa = omega(t, a);
        REQUIRE(is_perm(oa));
        CHECK(at.length() == t.length());
        for (Elt b = 0; b < g.order(); ++b) {
          CHECK(act(b, at) == act(g.mul(b, a), t));
          CHECK(compose(omega(at, b), oa) == omega(t, g.mul(b, a)));
        }
      }
    }
  }
}

TEST_CASE("omega is a homomorphism on the stabilizer", "[operad]") {
  auto g = groups::symmetric(3);
  auto s = complete_system(g);
  for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
    for (const auto& t : fixed_trees(s, h, 4))
      for (Elt a : g.elements(h))
        for (Elt b : g.elements(h))
          CHECK(omega(t, g.mul(a, b)) == compose(omega(t, a), omega(t, b)));
}

TEST_CASE("tree enumeration", "[operad]") {
  auto c2 = groups::cyclic(2);
  // one vertex: the leaf and (x)_empty for each (H, rep): e twice, C2 once
  CHECK(enumerate_trees(complete_system(c2), 1).size() == 4);
  // two vertices: a unary node over each one-vertex tree; unary nodes are
  // the one-point sets, again three (H, rep) choices
  CHECK(enumerate_trees(complete_system(c2), 2).size() == 4 + 3 * 4);
  // three vertices add unary-over-two (3 * 12) and binary-over-two-leaves:
  // binary labels are e:{2 points} x2 reps, C2:{trivial 2, C2/e}
  CHECK(enumerate_trees(complete_system(c2), 3).size() == 16 + 36 + 4 * 16);
  CHECK(enumerate_trees(minimal_system(c2), 3).size() == 16 + 36 + 3 * 16);
  auto all = enumerate_trees(complete_system(groups::symmetric(3)), 3);
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i - 1].vertices() == all[i].vertices())
      CHECK(!(all[i - 1] == all[i]));
  std::set<std::string> names;
  for (const auto& t : all)
    names.insert(to_string(t));
  CHECK(names.size() == all.size());
}

TEST_CASE("fixed tree generator agrees with filtering", "[operad]") {
  for (const auto& g : {groups::cyclic(2), groups::cyclic(4), groups::symmetric(3),
                        groups::product(groups::cyclic(2), groups::cyclic(2))}) {
    CAPTURE(g.name());
    for (const auto& s : {minimal_system(g), complete_system(g)}) {
      auto all = enumerate_trees(s, 4);
      FixedTreeGenerator gen(s, 4);
      for (SubgroupId h = 0; h < g.subgroup_count(); ++h) {
        CAPTURE(h);
        std::vector<NormTree> filtered;
        for (const auto& t : all)
          if (is_fixed(t, h))
            filtered.push_back(t);
        auto direct = gen.all(h);
        std::sort(filtered.begin(), filtered.end());
        std::sort(direct.begin(), direct.end());
        CHECK(direct == filtered);
        for (int v = 1; v <= 4; ++v)
          for (int len = 0; len <= 4; ++len) {
            std::vector<NormTree> by_len;
            for (const auto& t : gen.exact(h, v))
              if (t.length() == len)
                by_len.push_back(t);
            CHECK(gen.exact(h, v, len) == by_len);
          }
      }
    }
  }
}

TEST_CASE("composition of trees", "[operad]") {
  auto c2 = groups::cyclic(2);
  auto s = complete_system(c2);
  auto trees = enumerate_trees(s, 3);
  auto rng = oracle::rng(3);
  for (const auto& t : trees) {
    std::vector<NormTree> leaves(static_cast<std::size_t>(t.length()));
    CHECK(compose_trees(t, leaves) == t);
    std::vector<NormTree> one{t};
    CHECK(compose_trees(NormTree::leaf(), one) == t);
    std::vector<NormTree> ins;
    int total = 0;
    for (int i = 0; i < t.length(); ++i) {
      ins.push_back(trees[rng() % trees.size()]);
      total += ins.back().length();
    }
    CHECK(compose_trees(t, ins).length() == total);
  }
  CHECK_THROWS_AS(compose_trees(NormTree::corolla(orbit_gset(c2, 0)), std::vector<NormTree>(1)), OperadError);
}

TEST_CASE("plain grafting is an operad and matches the equivariant one without twists", "[operad]") {
  auto c2 = groups::cyclic(2);
  auto s = complete_system(c2);
  auto trees = enumerate_trees(s, 3);
  auto rng = oracle::rng(29);
  auto untwisted = [](const NormTree& t) {
    auto rec = [](auto&& self, const NormTree& u) -> bool {
      if (u.is_leaf())
        return true;
      if (u.rep() != 0)
        return false;
      for (const auto& c : u.children())
        if (!self(self, c))
          return false;
      return true;
    };
    return rec(rec, t);
  };
  for (int trial = 0; trial < 3000; ++trial) {
    const auto& x = trees[rng() % trees.size()];
    std::vector<NormTree> ys, zs;
    int m = 0;
    for (int i = 0; i < x.length(); ++i) {
      ys.push_back(trees[rng() % trees.size()]);
      m += ys.back().length();
    }
    for (int j = 0; j < m; ++j)
      zs.push_back(trees[rng() % trees.size()]);
    std::vector<NormTree> inner;
    std::size_t off = 0;
    for (const auto& y : ys) {
      auto k = static_cast<std::size_t>(y.length());
      inner.push_back(compose_trees(y, std::span<const NormTree>(zs).subspan(off, k)));
      off += k;
    }
    CHECK(compose_trees(compose_trees(x, ys), zs) == compose_trees(x, inner));
    if (untwisted(x)) {
      std::vector<SymOperation> sy;
      for (const auto& y : ys)
        sy.emplace_back(y);
      auto c = compose_sym(SymOperation(x), sy);
      CHECK(c.tree == compose_trees(x, ys));
      CHECK(is_identity(c.perm));
    }
  }
}

TEST_CASE("graph subgroups", "[operad]") {
  auto c2 = groups::cyclic(2);
  auto triv = graph_subgroup_of(trivial_set(c2, c2.whole(), 3));
  CHECK(triv(1) == identity_perm(3));
  auto reg = graph_subgroup_of(orbit_gset(c2, 0));
  CHECK(reg(1) == Perm{1, 0});
  auto s3 = groups::symmetric(3);
  auto gm = graph_subgroup_of(orbit_gset(s3, s3.subgroup_of(0b11)));
  CHECK(gm.degree == 3);
  CHECK(gm.is_homomorphism());
  CHECK(gm.hset() == orbit_gset(s3, s3.subgroup_of(0b11)));
}

TEST_CASE("fixed operations", "[operad]") {
  auto c2 = groups::cyclic(2);
  auto reg = orbit_gset(c2, 0);
  auto ops = fixed_operations(complete_system(c2), graph_subgroup_of(reg), 3);
  CHECK(std::find(ops.begin(), ops.end(), SymOperation(NormTree::corolla(reg))) != ops.end());
  for (int budget = 1; budget <= 6; ++budget)
    CHECK(fixed_operations(minimal_system(c2), graph_subgroup_of(reg), budget).empty());
  auto one = fixed_operations(minimal_system(groups::trivial()), graph_subgroup_of(trivial_set(groups::trivial(), 0, 1)), 1);
  CHECK(one == std::vector<SymOperation>{SymOperation()});
  for (const auto& x : ops)
    CHECK(is_fixed(x, graph_subgroup_of(reg)));
  // the visitor and the sorted list agree
  auto gamma = graph_subgroup_of(trivial_set(c2, c2.whole(), 2));
  std::vector<SymOperation> seen;
  visit_fixed_operations(complete_system(c2), gamma, 4, [&](const SymOperation& x) {
    seen.push_back(x);
    return true;
  });
  std::sort(seen.begin(), seen.end());
  CHECK(seen == fixed_operations(complete_system(c2), gamma, 4));
  CHECK(has_fixed_operation(complete_system(c2), gamma, 4));
}

TEST_CASE("fixed points detect admissibility", "[operad][slow]") {
  for (const auto& g : {groups::cyclic(2), groups::cyclic(3), groups::cyclic(4), groups::cyclic(6),
                        groups::product(groups::cyclic(2), groups::cyclic(2)), groups::symmetric(3)}) {
    CAPTURE(g.name());
    auto systems = enumerate_all(g);
    for (const auto& s : systems) {
      for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
        for (const auto& c : hset_classes(g, h, 4))
          CHECK(has_fixed_operation(s, graph_subgroup_of(c.set), 6) == is_admissible_hset(s, c.set));
    }
  }
}

TEST_CASE("orbit sets of fixed trees", "[operad]") {
  auto s3 = groups::symmetric(3);
  auto all = complete_system(s3);
  CHECK(equivariant_orbit_set(NormTree::leaf(), s3.whole(), s3) == trivial_set(s3, s3.whole(), 1));
  for (SubgroupId h = 0; h < s3.subgroup_count(); ++h)
    for (const auto& c : hset_classes(s3, h, 4))
      CHECK(isomorphic(equivariant_orbit_set(NormTree::corolla(c.set), h), c.set));
  CHECK_THROWS_AS(equivariant_orbit_set(NormTree::node(trivial_set(s3, 0, 0), 1, {}), s3.whole()), OperadError);

  // (x)_{H/K}(h_1 tau, ..., h_m tau) with tau = (x)_S is fixed and T ~ ind_K^H S
  for (SubgroupId k = 0; k < s3.subgroup_count(); ++k)
    for (const auto& c : hset_classes(s3, k, 3)) {
      auto tau = NormTree::corolla(c.set);
      auto hk = orbit_gset(s3, k);
      std::vector<NormTree> kids;
      for (Elt r : s3.cosets(k).reps)
        kids.push_back(act(r, tau));
      auto theta = NormTree::node(hk, 0, kids);
      REQUIRE(is_fixed(theta, s3.whole()));
      CHECK(isomorphic(equivariant_orbit_set(theta, s3.whole()), induce(c.set, s3.whole())));
    }
}

TEST_CASE("orbit sets are admissible", "[operad]") {
  for (const auto& g : {groups::cyclic(4), groups::symmetric(3), groups::product(groups::cyclic(2), groups::cyclic(2))}) {
    CAPTURE(g.name());
    for (const auto& s : enumerate_all(g)) {
      FixedTreeGenerator gen(s, 4);
      for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
        for (const auto& t : gen.all(h)) {
          auto x = equivariant_orbit_set(t, h, g);
          CHECK(is_admissible_hset(s, x));
        }
    }
  }
}

TEST_CASE("orbit sets do not depend on chosen orderings", "[operad]") {
  auto rng = oracle::rng(5);
  for (const auto& g : {groups::cyclic(4), groups::symmetric(3)}) {
    auto s = complete_system(g);
    Reorder reorder{std::mt19937_64(rng()), {}};
    for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
      for (const auto& t : fixed_trees(s, h, 4)) {
        auto u = reorder(t);
        REQUIRE(is_fixed(u, h));
        CHECK(isomorphic(equivariant_orbit_set(t, h, g), equivariant_orbit_set(u, h, g)));
      }
  }
}

TEST_CASE("symmetric composition satisfies the operad axioms", "[operad]") {
  auto c2 = groups::cyclic(2);
  auto s = complete_system(c2);
  auto small = all_operations(s, 3, 3);
  auto tiny = all_operations(s, 2, 3);
  auto unit = SymOperation();

  for (const auto& x : small) {
    std::vector<SymOperation> units(static_cast<std::size_t>(x.arity()));
    CHECK(compose_sym(x, units) == x);
    std::vector<SymOperation> just{x};
    CHECK(compose_sym(unit, just) == x);
  }

  // associativity and equivariance: x over <= 3 vertices, y_i over <= 2
  // vertices, z_j over single vertices, all choices
  auto single = all_operations(s, 1, 3);
  for (const auto& x : small) {
    const int n = x.arity();
    std::vector<std::size_t> yi(static_cast<std::size_t>(n), 0);
    auto each_y = [&](auto&& self, int i) -> void {
      if (i < n) {
        for (std::size_t a = 0; a < tiny.size(); ++a) {
          yi[static_cast<std::size_t>(i)] = a;
          self(self, i + 1);
        }
        return;
      }
      std::vector<SymOperation> ys;
      int m = 0;
      for (auto a : yi) {
        ys.push_back(tiny[a]);
        m += tiny[a].arity();
      }
      auto xy = compose_sym(x, ys);
      // Sigma-equivariance for every s in Sigma_n with y's permutations moved
      for_each_perm(n, [&](const Perm& sg) {
        std::vector<SymOperation> shuffled;
        Perm sinv = inverse(sg);
        for (int j = 0; j < n; ++j)
          shuffled.push_back(ys[static_cast<std::size_t>(sinv[static_cast<std::size_t>(j)])]);
        auto lhs = compose_sym(right_act(x, sg), ys);
        // gamma(x.s; y_i) = gamma(x; y_{s^-1 j}) . s<k>
        std::vector<int> sizes;
        for (const auto& y : ys)
          sizes.push_back(y.arity());
        CHECK(lhs == right_act(compose_sym(x, shuffled), block_perm(sg, sizes)));
      });
      // gamma(x; y_i . d_i) = gamma(x; y_i) . (d_1 + ... + d_n)
      std::vector<SymOperation> bare;
      std::vector<Perm> ds;
      for (const auto& y : ys) {
        bare.emplace_back(y.tree);
        ds.push_back(y.perm);
      }
      CHECK(xy == right_act(compose_sym(x, bare), disjoint_sum(ds)));
      // G-equivariance of composition
      for (Elt g = 0; g < c2.order(); ++g) {
        std::vector<SymOperation> gys;
        for (const auto& y : ys)
          gys.push_back(act(g, y));
        CHECK(act(g, xy) == compose_sym(act(g, x), gys));
      }
      // associativity
      std::vector<std::size_t> zi(static_cast<std::size_t>(m), 0);
      auto each_z = [&](auto&& zself, int j) -> void {
        if (j < m) {
          for (std::size_t a = 0; a < single.size(); ++a) {
            zi[static_cast<std::size_t>(j)] = a;
            zself(zself, j + 1);
          }
          return;
        }
        std::vector<SymOperation> zs;
        for (auto a : zi)
          zs.push_back(single[a]);
        auto left = compose_sym(xy, zs);
        std::vector<SymOperation> inner;
        std::size_t off = 0;
        for (const auto& y : ys) {
          auto k = static_cast<std::size_t>(y.arity());
          inner.push_back(compose_sym(y, std::span<const SymOperation>(zs).subspan(off, k)));
          off += k;
        }
        CHECK(left == compose_sym(x, inner));
      };
      each_z(each_z, 0);
    };
    each_y(each_y, 0);
  }
}

TEST_CASE("symmetric composition on random larger samples", "[operad]") {
  auto c2 = groups::cyclic(2);
  auto s = complete_system(c2);
  auto big = all_operations(s, 4, 3);
  auto mid = all_operations(s, 3, 3);
  auto rng = oracle::rng(17);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto& x = big[rng() % big.size()];
    std::vector<SymOperation> ys;
    int m = 0;
    for (int i = 0; i < x.arity(); ++i) {
      ys.push_back(mid[rng() % mid.size()]);
      m += ys.back().arity();
    }
    std::vector<SymOperation> zs;
    for (int j = 0; j < m; ++j)
      zs.push_back(mid[rng() % mid.size()]);
    std::vector<SymOperation> inner;
    std::size_t off = 0;
    for (const auto& y : ys) {
      auto k = static_cast<std::size_t>(y.arity());
      inner.push_back(compose_sym(y, std::span<const SymOperation>(zs).subspan(off, k)));
      off += k;
    }
    CHECK(compose_sym(compose_sym(x, ys), zs) == compose_sym(x, inner));
  }
}

TEST_CASE("endomorphism operad", "[operad]") {
  auto c2 = groups::cyclic(2);
  auto end = zmod3_negation(c2);
  auto add = end.from_function(2, [](const std::vector<int>& v) { return (v[0] + v[1]) % 3; });
  auto first = end.from_function(2, [](const std::vector<int>& v) { return v[0]; });
  CHECK(end.compose(end.identity(), std::vector<EndOp>{add}) == add);
  CHECK(end.compose(add, std::vector<EndOp>{end.identity(), end.identity()}) == add);
  CHECK(end.right_act(first, Perm{1, 0}) == end.from_function(2, [](const std::vector<int>& v) { return v[1]; }));
  CHECK(end.act(1, add) == add);
  auto plus_one = end.from_function(1, [](const std::vector<int>& v) { return (v[0] + 1) % 3; });
  CHECK(end.act(1, plus_one) == end.from_function(1, [](const std::vector<int>& v) { return (v[0] + 2) % 3; }));
}

TEST_CASE("free extension into End_X", "[operad]") {
  auto c2 = groups::cyclic(2);
  auto s = complete_system(c2);
  auto end = zmod3_negation(c2);
  FreeExtension<EndomorphismOperad> phi(s, end, [&](const GSet& t) { return weighted_sum(end, t); });
  CHECK(phi(SymOperation()) == end.identity());

  auto ops = all_operations(s, 3, 3);
  for (const auto& x : ops) {
    for (Elt g = 0; g < c2.order(); ++g)
      CHECK(phi(act(g, x)) == end.act(g, phi(x)));
    for_each_perm(x.arity(), [&](const Perm& p) { CHECK(phi(right_act(x, p)) == end.right_act(phi(x), p)); });
  }
  auto rng = oracle::rng(23);
  auto big = all_operations(s, 4, 3);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto& x = big[rng() % big.size()];
    std::vector<SymOperation> ys;
    std::vector<EndOp> images;
    for (int i = 0; i < x.arity(); ++i) {
      ys.push_back(ops[rng() % ops.size()]);
      images.push_back(phi(ys.back()));
    }
    CHECK(phi(compose_sym(x, ys)) == end.compose(phi(x), images));
  }

  FreeExtension<EndomorphismOperad> bad(s, end, [&](const GSet& t) {
    return end.from_function(t.size(), [](const std::vector<int>& v) { return v.empty() ? 0 : v[0]; });
  });
  CHECK_THROWS_AS(bad(NormTree::corolla(orbit_gset(c2, 0))), OperadError);
  FreeExtension<EndomorphismOperad> minimal(minimal_system(c2), end, [&](const GSet& t) { return weighted_sum(end, t); });
  CHECK_THROWS_AS(minimal(NormTree::corolla(orbit_gset(c2, 0))), OperadError);
}
