#include <catch_amalgamated.hpp>

#include "ninf/normed_cat.hpp"
#include "oracle.hpp"

using namespace ninf;

namespace {

// every object with at most `budget` vertices and length at most max_length
std::vector<NormedObject> all_objects(const NormedCategory& c, int budget, int max_length = 99) {
  std::vector<NormedObject> out;
  const int na = c.base().size();
  for_each_tree(c.system(), budget, [&](const NormTree& t) {
    const int n = t.length();
    if (n > max_length || (n > 0 && na == 0))
      return;
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    for (;;) {
      out.push_back({t, labels});
      int i = 0;
      while (i < n && ++labels[static_cast<std::size_t>(i)] == na)
        labels[static_cast<std::size_t>(i++)] = 0;
      if (i == n)
        break;
    }
  });
  return out;
}

std::vector<NormedMorphism> all_morphisms(const NormedCategory& c, const std::vector<NormedObject>& objs,
                                          Morphisms which) {
  std::vector<NormedMorphism> out;
  for (const auto& x : objs)
    for (const auto& y : objs)
      for (auto& m : c.hom_set(x, y, which))
        out.push_back(std::move(m));
  return out;
}

// A random G-functor source -> target: a random fixed object of small
// length at each orbit base point.
FunctorData random_functor(const NormedCategory& target, const GSet& source, std::mt19937_64& rng, int max_length = 2) {
  std::vector<NormedObject> base;
  for (const auto& o : orbits(source)) {
    std::vector<NormedObject> pool;
    for_each_fixed_object(target, o.stabilizer, max_length, 1,
                          [&](const NormedObject& x, const GSet&, const std::vector<int>&) { pool.push_back(x); });
    base.push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
  }
  return functor_from_basepoints(target, source, base);
}

GSet two_point_c2(const Group& c2) { return orbit_gset(c2, 0); }

} // namespace

TEST_CASE("objects and the group action", "[normed]") {
  auto c2 = groups::cyclic(2);
  NormedCategory c(complete_system(c2), two_point_c2(c2));
  auto objs = all_objects(c, 3);
  for (const auto& x : objs) {
    CHECK(c.is_object(x));
    CHECK(c.act(0, x) == x);
  }
  // the regular C2-set: (x)_{C2/e} on (a, t a) is fixed
  GSet t = coset_set(c2, 0, c2.whole());
  NormedObject x = c.object(NormTree::corolla(t), {0, 1});
  CHECK(c.is_fixed(x, c2.whole()));
  CHECK(!c.is_fixed(c.object(NormTree::corolla(t), {0, 0}), c2.whole()));
  // the same object as the norm of the fixed pair (a, t a)
  std::vector<NormedObject> pair{c.leaf(0), c.leaf(1)};
  CHECK(c.external_norm(t, pair) == x);

  for (auto g : {groups::cyclic(4), groups::symmetric(3)}) {
    CAPTURE(g.name());
    NormedCategory d(complete_system(g), from_orbits(g, g.whole(), std::vector<SubgroupId>{0, 1}));
    auto xs = all_objects(d, 3, 2);
    auto rng = oracle::rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
    for (int k = 0; k < 300; ++k) {
      const auto& y = xs[pick(rng)];
      for (Elt a = 0; a < g.order(); ++a)
        for (Elt b = 0; b < g.order(); ++b)
          CHECK(d.act(a, d.act(b, y)) == d.act(g.mul(a, b), y));
    }
    // morphisms: the action is an action and keeps labels compatible
    auto ms = all_morphisms(d, std::vector<NormedObject>(xs.begin(), xs.begin() + std::min<std::size_t>(xs.size(), 60)),
                            Morphisms::all);
    for (const auto& m : ms)
      for (Elt a = 0; a < g.order(); ++a) {
        auto am = d.act(a, m);
        CHECK(d.is_morphism(am));
        for (Elt b = 0; b < g.order(); ++b)
          CHECK(d.act(b, am) == d.act(g.mul(b, a), m));
      }
  }
}

TEST_CASE("symmetric monoidal structure", "[normed]") {
  auto c2 = groups::cyclic(2);
  NormedCategory c(complete_system(c2), two_point_c2(c2));
  auto objs = all_objects(c, 2);
  const NormedObject e = c.unit();
  CHECK(e.length() == 0);
  for (const auto& x : objs) {
    CHECK(c.tensor(e, x).labels == x.labels);
    CHECK(c.left_unitor(x).alpha == identity_perm(x.length()));
    CHECK(c.right_unitor(x).alpha == identity_perm(x.length()));
    for (const auto& y : objs) {
      auto b = c.braiding(x, y);
      CHECK(c.is_morphism(b));
      CHECK(c.compose(c.braiding(y, x), b) == c.identity(c.tensor(x, y)));
      // triangle
      CHECK(c.compose(c.tensor(c.identity(x), c.left_unitor(y)), c.associator(x, e, y)) ==
            c.tensor(c.right_unitor(x), c.identity(y)));
      for (Elt g = 0; g < 2; ++g)
        CHECK(c.act(g, b) == c.braiding(c.act(g, x), c.act(g, y)));
    }
  }
  auto small = all_objects(c, 1);
  for (const auto& x : small)
    for (const auto& y : small)
      for (const auto& z : small) {
        // hexagon
        auto lhs = c.compose(c.associator(y, z, x), c.compose(c.braiding(x, c.tensor(y, z)), c.associator(x, y, z)));
        auto rhs = c.compose(c.tensor(c.identity(y), c.braiding(x, z)),
                             c.compose(c.associator(y, x, z), c.tensor(c.braiding(x, y), c.identity(z))));
        CHECK(lhs == rhs);
        for (Elt g = 0; g < 2; ++g)
          CHECK(c.act(g, c.associator(x, y, z)) == c.associator(c.act(g, x), c.act(g, y), c.act(g, z)));
        for (const auto& w : small) {
          // pentagon
          auto p1 = c.compose(c.associator(x, y, c.tensor(z, w)), c.associator(c.tensor(x, y), z, w));
          auto p2 = c.compose(c.tensor(c.identity(x), c.associator(y, z, w)),
                              c.compose(c.associator(x, c.tensor(y, z), w), c.tensor(c.associator(x, y, z), c.identity(w))));
          CHECK(p1 == p2);
        }
      }
  // naturality of the braiding
  auto ms = all_morphisms(c, all_objects(c, 2, 1), Morphisms::all);
  for (std::size_t i = 0; i < ms.size(); i += 3)
    for (std::size_t j = 0; j < ms.size(); j += 5) {
      const auto& f = ms[i];
      const auto& g = ms[j];
      CHECK(c.compose(c.braiding(f.target, g.target), c.tensor(f, g)) ==
            c.compose(c.tensor(g, f), c.braiding(f.source, g.source)));
    }
}

TEST_CASE("untwistors", "[normed]") {
  for (auto g : {groups::cyclic(4), groups::symmetric(3)}) {
    CAPTURE(g.name());
    auto s = complete_system(g);
    NormedCategory c(s, from_orbits(g, g.whole(), std::vector<SubgroupId>{0}));
    auto objs = all_objects(c, 2, 1);
    auto rng = oracle::rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, objs.size() - 1);
    for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
      for (const auto& cls : hset_classes(g, h, 3)) {
        const GSet& t = cls.set;
        for (int k = 0; k < 10; ++k) {
          std::vector<NormedObject> xs;
          for (int i = 0; i < t.size(); ++i)
            xs.push_back(objs[pick(rng)]);
          auto v = c.untwistor(t, xs);
          CHECK(c.is_morphism(v));
          for (Elt e : g.elements(h)) {
            const Perm& sigma = t.perm(e);
            std::vector<NormedObject> ys(xs.size()), hx;
            for (std::size_t i = 0; i < xs.size(); ++i) {
              ys[static_cast<std::size_t>(sigma[i])] = c.act(e, xs[i]);
              hx.push_back(c.act(e, xs[i]));
            }
            // top and bottom edges are equalities of objects
            CHECK(c.act(e, c.external_norm(t, xs)) == c.external_norm(t, ys));
            CHECK(c.act(e, c.tensor_power(xs)) == c.tensor_power(hx));
            auto right = c.compose(c.factor_permutation(ys, inverse(sigma)), c.untwistor(t, ys));
            CHECK(c.act(e, v) == right);
          }
        }
      }
  }
}

TEST_CASE("hom sets", "[normed]") {
  auto c3 = groups::cyclic(3);
  NormedCategory c(complete_system(c3), orbit_gset(c3, 0));
  for (const auto& cls : hset_classes(c3, c3.whole(), 4)) {
    const GSet& t = cls.set;
    for (int a = 0; a < 3; ++a) {
      auto x = c.leaf(a);
      auto y = c.object(NormTree::corolla(t), std::vector<int>(static_cast<std::size_t>(t.size()), a));
      CHECK(c.hom_set(x, y).size() == static_cast<std::size_t>(t.size()));
    }
  }
  auto objs = all_objects(c, 3, 2);
  for (std::size_t i = 0; i < objs.size(); i += 7) {
    const auto& x = objs[i];
    auto core = c.hom_set(x, x, Morphisms::core);
    CHECK(std::find(core.begin(), core.end(), c.identity(x)) != core.end());
    for (std::size_t j = 0; j < objs.size(); j += 11) {
      const auto& y = objs[j];
      // against all maps, filtered
      std::size_t all = 0, bij = 0;
      const int n = x.length(), m = y.length();
      if (m == 0) {
        all = n == 0;
        bij = n == 0;
      } else {
        IndexMap f(static_cast<std::size_t>(n), 0);
        for (;;) {
          NormedMorphism cand{x, y, f};
          if (c.is_morphism(cand)) {
            ++all;
            bij += is_bijection(f, m);
          }
          int k = 0;
          while (k < n && ++f[static_cast<std::size_t>(k)] == m)
            f[static_cast<std::size_t>(k++)] = 0;
          if (k == n)
            break;
        }
      }
      CHECK(c.hom_set(x, y).size() == all);
      CHECK(c.hom_set(x, y, Morphisms::core).size() == bij);
    }
  }
}

TEST_CASE("cons: identity, equivariance, strictness", "[normed]") {
  for (auto g : {groups::cyclic(2), groups::cyclic(4), groups::symmetric(3)}) {
    CAPTURE(g.name());
    auto s = complete_system(g);
    NormedCategory a(s, from_orbits(g, g.whole(), std::vector<SubgroupId>{0, g.whole()}));
    NormedCategory b(s, from_orbits(g, g.whole(), std::vector<SubgroupId>{g.whole(), 0}));
    auto objs = all_objects(a, 3, 2);
    Cons id(a, a, inclusion(a));
    for (const auto& x : objs)
      CHECK(id(x) == x);
    auto rng = oracle::rng(17);
    for (int trial = 0; trial < 4; ++trial) {
      Cons f(a, b, random_functor(b, a.base(), rng));
      std::uniform_int_distribution<std::size_t> pick(0, objs.size() - 1);
      for (int k = 0; k < 200; ++k) {
        const auto& x = objs[pick(rng)];
        auto fx = f(x);
        CHECK(b.is_object(fx));
        for (Elt e = 0; e < g.order(); ++e)
          CHECK(f(a.act(e, x)) == b.act(e, fx));
        const auto& y = objs[pick(rng)];
        CHECK(f(a.tensor(x, y)) == b.tensor(fx, f(y)));
        CHECK(f(a.identity(x)) == b.identity(fx));
        for (const auto& m : a.hom_set(x, x)) {
          auto fm = f(m);
          CHECK(b.is_morphism(fm));
          for (Elt e = 0; e < g.order(); ++e)
            CHECK(f(a.act(e, m)) == b.act(e, fm));
        }
      }
      CHECK(f(a.unit()) == b.unit());
      // external norms are preserved on the nose
      for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
        for (const auto& cls : hset_classes(g, h, 2)) {
          std::vector<NormedObject> xs, fxs;
          for (int i = 0; i < cls.set.size(); ++i) {
            xs.push_back(objs[pick(rng)]);
            fxs.push_back(f(xs.back()));
          }
          CHECK(f(a.external_norm(cls.set, xs)) == b.external_norm(cls.set, fxs));
        }
    }
  }
}

TEST_CASE("cons is a functor and composes strictly", "[normed]") {
  for (auto g : {groups::cyclic(4), groups::symmetric(3)}) {
    CAPTURE(g.name());
    auto s = complete_system(g);
    NormedCategory a(s, from_orbits(g, g.whole(), std::vector<SubgroupId>{0}));
    NormedCategory b(s, from_orbits(g, g.whole(), std::vector<SubgroupId>{1, g.whole()}));
    NormedCategory c(s, from_orbits(g, g.whole(), std::vector<SubgroupId>{g.whole(), g.whole()}));
    auto objs = all_objects(a, 3, 2);
    auto rng = oracle::rng(23);
    for (int trial = 0; trial < 3; ++trial) {
      Cons phi(a, b, random_functor(b, a.base(), rng));
      Cons psi(b, c, random_functor(c, b.base(), rng));
      Cons both(a, c, compose(psi, phi.data()));
      std::uniform_int_distribution<std::size_t> pick(0, objs.size() - 1);
      for (int k = 0; k < 150; ++k) {
        const auto& x = objs[pick(rng)];
        const auto& y = objs[pick(rng)];
        CHECK(psi(phi(x)) == both(x));
        auto hxy = a.hom_set(x, y);
        auto hyx = a.hom_set(y, x);
        for (const auto& m : hxy) {
          CHECK(psi(phi(m)) == both(m));
          for (const auto& n : hyx)
            CHECK(phi(a.compose(n, m)) == b.compose(phi(n), phi(m)));
        }
      }
    }
  }
}

TEST_CASE("cons on morphisms is the block map", "[normed]") {
  auto one = groups::trivial();
  auto s = complete_system(one);
  NormedCategory pt(s, orbit_gset(one, 0));
  NormedObject three = pt.object(NormTree::corolla(trivial_set(one, 0, 3)), {0, 0, 0});
  Cons f(pt, pt, FunctorData{pt.base(), {three}});
  NormedObject y = pt.tensor(pt.leaf(0), pt.leaf(0));
  NormedMorphism alpha = pt.morphism(pt.leaf(0), y, {1});
  CHECK(f(alpha).alpha == IndexMap{3, 4, 5});
  CHECK(f(alpha).target == pt.tensor(three, three));
}

TEST_CASE("cons of transformations", "[normed]") {
  auto g = groups::cyclic(4);
  auto s = complete_system(g);
  const SubgroupId c2 = 1;
  NormedCategory a(s, orbit_gset(g, c2));
  NormedCategory b(s, orbit_gset(g, 0));
  // psi(eC2) = (x)_{C2/e}(b, h b), phi(eC2) = (x)_{C2/C2} of that; both C2-fixed
  const int other = b.base().act(g.elements(c2)[1], 0);
  std::vector<NormedObject> pair{b.leaf(0), b.leaf(other)};
  NormedObject psi0 = b.external_norm(coset_set(g, 0, c2), pair);
  REQUIRE(b.is_fixed(psi0, c2));
  NormedObject phi0 = b.external_norm(coset_set(g, c2, c2), std::vector<NormedObject>{psi0});
  REQUIRE(b.is_fixed(phi0, c2));
  NormedMorphism w0 = b.morphism(phi0, psi0, {0, 1});
  REQUIRE(b.is_fixed(w0, c2));
  auto w = transformation_from_basepoints(b, a.base(), std::vector<NormedMorphism>{w0});
  CHECK(is_equivariant(b, a.base(), w));
  Cons cphi(a, b, functor_from_basepoints(b, a.base(), std::vector<NormedObject>{phi0}));
  Cons cpsi(a, b, functor_from_basepoints(b, a.base(), std::vector<NormedObject>{psi0}));
  auto objs = all_objects(a, 3, 2);
  for (const auto& x : objs) {
    auto wx = cphi.transformation(w, cpsi, x);
    CHECK(b.is_morphism(wx));
    CHECK(wx.is_iso());
    for (Elt e = 0; e < g.order(); ++e)
      CHECK(cphi.transformation(w, cpsi, a.act(e, x)) == b.act(e, wx));
    for (std::size_t j = 0; j < objs.size(); j += 9)
      for (const auto& m : a.hom_set(x, objs[j]))
        CHECK(b.compose(cpsi(m), wx) == b.compose(cphi.transformation(w, cpsi, objs[j]), cphi(m)));
  }
}

TEST_CASE("the projection adjunction", "[normed]") {
  auto c2 = groups::cyclic(2);
  {
    // T = H/H: unit and counit are identity maps
    auto s = complete_system(c2);
    for (SubgroupId h = 0; h < c2.subgroup_count(); ++h) {
      ProjectionAdjunction adj(s, trivial_set(c2, h, 1));
      for (const auto& m : adj.unit_data().components)
        CHECK(m.alpha == IndexMap{0});
      for (const auto& m : adj.counit_data().components)
        CHECK(m.alpha == IndexMap{0});
      for (const auto& x : all_objects(adj.upstairs(), 3))
        CHECK(adj.unit(x).alpha == identity_perm(x.length()));
    }
    // H = G, T = C2/e: the counit at eH folds ((x)_T, (eH, eH)) onto eH
    GSet t = coset_set(c2, 0, c2.whole());
    ProjectionAdjunction adj(s, t);
    const auto& eps = adj.counit_data()(0);
    CHECK(eps.alpha == IndexMap{0, 0});
    CHECK(eps.source == adj.downstairs().object(NormTree::corolla(t), {0, 0}));
    CHECK(eps.target == adj.downstairs().leaf(0));
    CHECK(adj.generator() == adj.upstairs().object(NormTree::corolla(t), {0, 1}));
  }
  auto c4 = groups::cyclic(4);
  for (const auto& s : enumerate_all(c4)) {
    for (SubgroupId h = 0; h < c4.subgroup_count(); ++h)
      for (const auto& cls : hset_classes(c4, h, 2)) {
        if (cls.set.size() == 0)
          continue;
        if (!is_admissible_hset(s, cls.set)) {
          CHECK_THROWS_AS(ProjectionAdjunction(s, cls.set), NormedError);
          continue;
        }
        ProjectionAdjunction adj(s, cls.set);
        CHECK(is_equivariant(adj.upstairs(), adj.upstairs().base(), adj.unit_data()));
        CHECK(is_equivariant(adj.downstairs(), adj.downstairs().base(), adj.counit_data()));
        for (const auto& x : all_objects(adj.upstairs(), 3, 2))
          CHECK(adj.left_triangle(x));
        for (const auto& y : all_objects(adj.downstairs(), 3))
          CHECK(adj.right_triangle(y));
      }
  }
}

TEST_CASE("Beck-Chevalley mates", "[normed]") {
  auto c4 = groups::cyclic(4);
  auto s4 = complete_system(c4);
  {
    // K = H: the identity
    GSet t = coset_set(c4, 1, c4.whole());
    BeckChevalleyMate bc(s4, c4.whole(), t);
    for (const auto& y : all_objects(bc.source(), 3)) {
      auto c = bc.component(y);
      CHECK(c.mate.alpha == identity_perm(c.mate.source.length()));
      CHECK(c.mate == c.predicted);
    }
  }
  {
    // H = C4, K = C2, T = C4/C2
    GSet t = coset_set(c4, 1, c4.whole());
    BeckChevalleyMate bc(s4, 1, t);
    for (const auto& y : all_objects(bc.source(), 3)) {
      auto c = bc.component(y);
      CHECK(c.mate.is_iso());
      CHECK(c.mate == c.predicted);
    }
  }
  for (auto g : {c4, groups::symmetric(3)}) {
    CAPTURE(g.name());
    auto s = complete_system(g);
    for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
      for (SubgroupId k = 0; k < g.subgroup_count(); ++k) {
        if (!g.is_subgroup_of(k, h))
          continue;
        for (const auto& cls : hset_classes(g, h, 3)) {
          if (cls.set.size() == 0)
            continue;
          BeckChevalleyMate bc(s, k, cls.set);
          for (const auto& y : all_objects(bc.source(), 2)) {
            auto c = bc.component(y);
            CHECK(c.mate.is_iso());
            CHECK(c.mate == c.predicted);
          }
        }
      }
  }
}

TEST_CASE("coproducts", "[normed]") {
  auto c2 = groups::cyclic(2);
  auto s = complete_system(c2);
  {
    // B empty: Psi_A is the identity, Psi_B constant at the unit
    GSet a = two_point_c2(c2);
    GSet none = trivial_set(c2, c2.whole(), 0);
    SumEquivalence eq(s, a, none);
    for (const auto& z : all_objects(eq.sum(), 3)) {
      auto [x, y] = eq.psi(z);
      CHECK(x == z);
      CHECK(y.length() == 0);
    }
  }
  GSet a = two_point_c2(c2);
  SumEquivalence eq(s, a, a);
  // eta at a leaf is the right unitor (label in A) or the left unitor (in B)
  CHECK(eq.eta(eq.sum().leaf(0)) == eq.sum().right_unitor(eq.sum().leaf(0)));
  CHECK(eq.eta(eq.sum().leaf(3)) == eq.sum().left_unitor(eq.sum().leaf(3)));
  auto zs = all_objects(eq.sum(), 3);
  for (const auto& z : zs) {
    auto e = eq.eta(z);
    CHECK(e.is_iso());
    for (Elt g = 0; g < 2; ++g)
      CHECK(eq.eta(eq.sum().act(g, z)) == eq.sum().act(g, e));
  }
  // naturality of eta on all morphisms between objects of length <= 2
  auto small = all_objects(eq.sum(), 3, 2);
  long checked = 0;
  for (const auto& x : small)
    for (const auto& y : small)
      for (const auto& m : eq.sum().hom_set(x, y)) {
        auto [ma, mb] = eq.psi(m);
        CHECK(eq.sum().compose(eq.eta(y), eq.phi(ma, mb)) == eq.sum().compose(m, eq.eta(x)));
        ++checked;
      }
  CHECK(checked > 1000);
  // epsilon: identities on positions, natural
  auto xs = all_objects(eq.left(), 3, 2);
  for (std::size_t i = 0; i < xs.size(); i += 3)
    for (std::size_t j = 0; j < xs.size(); j += 5) {
      const auto& x = xs[i];
      const auto& y = xs[j];
      auto [ex, ey] = eq.epsilon(x, y);
      CHECK(ex.is_iso());
      CHECK(ey.is_iso());
      for (const auto& f : eq.left().hom_set(x, x))
        for (const auto& g : eq.right().hom_set(y, y)) {
          auto [pf, pg] = eq.psi(eq.phi(f, g));
          CHECK(eq.left().compose(ex, pf) == eq.left().compose(f, ex));
          CHECK(eq.right().compose(ey, pg) == eq.right().compose(g, ey));
        }
    }
}

TEST_CASE("slice categories", "[normed]") {
  auto one = groups::trivial();
  {
    // A a point, H trivial: one set of each size, |Y|^|X| maps
    auto objs = slice_objects(complete_system(one), 0, orbit_gset(one, 0), 4);
    CHECK(objs.size() == 5);
    for (const auto& x : objs)
      for (const auto& y : objs) {
        std::size_t expect = 1;
        for (int i = 0; i < x.set.size(); ++i)
          expect *= static_cast<std::size_t>(y.set.size());
        CHECK(slice_morphisms(x, y).size() == expect);
      }
    auto c2 = groups::cyclic(2);
    auto zero = slice_objects(complete_system(c2), 0, orbit_gset(c2, 0), 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].set.size() == 0);
  }
  // C2, complete, A regular, bound 2: against every action table and map,
  // with automorphisms counted over all bijections
  auto c2 = groups::cyclic(2);
  auto s = complete_system(c2);
  GSet a = two_point_c2(c2);
  for (SubgroupId h = 0; h < c2.subgroup_count(); ++h) {
    const GSet ra = restrict(a, h);
    std::map<OverKey, long> brute;
    for (int n = 0; n <= 2; ++n)
      for_each_perm(n, [&](const Perm& p) {
        if (compose(p, p) != identity_perm(n) || (h == 0 && p != identity_perm(n)))
          return;
        GSet t(c2, h, n, {identity_perm(n), p});
        IndexMap u(static_cast<std::size_t>(n), 0);
        for (;;) {
          if (is_equivariant(t, ra, u)) {
            long auts = 0;
            for_each_perm(n, [&](const Perm& f) {
              auts += is_equivariant(t, t, f) && compose_maps(u, f) == u;
            });
            auto [it, fresh] = brute.try_emplace(over_key(t, u), auts);
            CHECK(it->second == auts);
          }
          int i = 0;
          while (i < n && ++u[static_cast<std::size_t>(i)] == 2)
            u[static_cast<std::size_t>(i++)] = 0;
          if (i == n)
            break;
        }
      });
    auto cls = slice_classes(s, h, a, 2);
    REQUIRE(cls.size() == brute.size());
    for (const auto& k : cls)
      CHECK(brute.at(k.key) == k.automorphisms);
  }
}

TEST_CASE("fixed objects", "[normed]") {
  auto c2 = groups::cyclic(2);
  NormedCategory c(complete_system(c2), two_point_c2(c2));
  long n = 0;
  for_each_fixed_object(c, c2.whole(), 3, 1, [&](const NormedObject& x, const GSet& t, const std::vector<int>& u) {
    CHECK(c.is_object(x));
    CHECK(c.is_fixed(x, c2.whole()));
    CHECK(u == x.labels);
    CHECK(t.size() == x.length());
    ++n;
  });
  // against filtering every object
  long filtered = 0;
  for (const auto& x : all_objects(c, 5, 3))
    if (x.tree.vertices() <= x.length() + 2 && c.is_fixed(x, c2.whole()))
      ++filtered;
  CHECK(n == filtered);
}

TEST_CASE("fixed subcategory classes agree with a brute-force isomorphism search", "[normed]") {
  for (auto g : {groups::cyclic(2), groups::cyclic(3)}) {
    CAPTURE(g.name());
    NormedCategory c(complete_system(g), from_orbits(g, g.whole(), std::vector<SubgroupId>{0, g.whole()}));
    for (SubgroupId h = 0; h < g.subgroup_count(); ++h) {
      std::vector<NormedObject> objs;
      for_each_fixed_object(c, h, 2, 1, [&](const NormedObject& x, const GSet&, const std::vector<int>&) { objs.push_back(x); });
      // classes by searching for a fixed isomorphism
      std::vector<NormedObject> reps;
      std::vector<long> auts;
      for (const auto& x : objs) {
        bool found = false;
        for (const auto& r : reps) {
          for (const auto& m : c.hom_set(x, r, Morphisms::core))
            if (c.is_fixed(m, h)) {
              found = true;
              break;
            }
          if (found)
            break;
        }
        if (!found) {
          reps.push_back(x);
          long k = 0;
          for (const auto& m : c.hom_set(x, x, Morphisms::core))
            k += c.is_fixed(m, h);
          auts.push_back(k);
        }
      }
      auto classes = fixed_classes(c, h, 2, 1);
      CHECK(classes.size() == reps.size());
      std::multiset<long> a1(auts.begin(), auts.end()), a2;
      for (const auto& k : classes)
        a2.insert(k.automorphisms);
      CHECK(a1 == a2);
    }
  }
}

TEST_CASE("fixed subcategory is equivalent to the slice", "[normed][slow]") {
  for (const auto& g : {groups::cyclic(2), groups::cyclic(3), groups::cyclic(4),
                        groups::product(groups::cyclic(2), groups::cyclic(2)), groups::symmetric(3),
                        groups::cyclic(6)}) {
    CAPTURE(g.name());
    for (const auto& s : {minimal_system(g), complete_system(g)})
      for (const auto& acls : hset_classes(g, g.whole(), 3)) {
        NormedCategory c(s, acls.set);
        for (SubgroupId h = 0; h < g.subgroup_count(); ++h) {
          CAPTURE(h, acls.orbit_types);
          auto fixed = fixed_classes(c, h, 3, 1);
          auto slice = slice_classes(s, h, acls.set, 3);
          REQUIRE(fixed.size() == slice.size());
          for (std::size_t i = 0; i < fixed.size(); ++i) {
            CHECK(fixed[i].key == slice[i].key);
            CHECK(fixed[i].automorphisms == slice[i].automorphisms);
          }
        }
      }
  }
}

TEST_CASE("freeness of the core", "[normed]") {
  auto c2 = groups::cyclic(2);
  auto s = complete_system(c2);
  for (const auto& acls : hset_classes(c2, c2.whole(), 3)) {
    NormedCategory c(s, acls.set);
    const int budget = 4;
    auto objs = generated_objects(c, budget);
    for (const auto& x : objs)
      CHECK(c.is_object(x));
    for (int n = 0; n <= 3; ++n) {
      long count = 0;
      for (const auto& x : objs)
        count += x.length() == n;
      long expect = count_trees_of_length(s, n, budget);
      for (int i = 0; i < n; ++i)
        expect *= acls.set.size();
      CHECK(count == expect);
    }
    // isomorphisms: trees^2 x A^n x n! in each length
    if (acls.set.size() <= 2) {
      for (int n = 0; n <= 2; ++n) {
        std::vector<NormedObject> level;
        for (const auto& x : objs)
          if (x.length() == n && x.tree.vertices() <= 3)
            level.push_back(x);
        long isos = 0;
        for (const auto& x : level)
          for (const auto& y : level)
            isos += static_cast<long>(c.hom_set(x, y, Morphisms::core).size());
        long trees = count_trees_of_length(s, n, 3);
        long expect = trees * trees;
        for (int i = 0; i < n; ++i)
          expect *= acls.set.size() * (i + 1);
        CHECK(isos == expect);
      }
    }
  }
}
