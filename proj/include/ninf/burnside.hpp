// Spans of finite G-sets with admissible right legs, their isomorphism
// classes and composition by pullback, and evaluation in the Mackey functor
// Hom_G(-, M) of a commutative monoid M with G-action.

#ifndef NINF_BURNSIDE_HPP_
#define NINF_BURNSIDE_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "gset.hpp"
#include "indexing.hpp"
#include "normed_cat.hpp"

namespace ninf {

class SpanError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// source <-left- apex -right-> target.
struct SpanMorphism {
  GSet source;
  GSet target;
  GSet apex;
  IndexMap left;
  IndexMap right;

  EquivariantMap left_map() const { return {apex, source, left}; }
  EquivariantMap right_map() const { return {apex, target, right}; }
  /// Each apex point labelled by its image in source x target.
  std::vector<int> labels() const {
    std::vector<int> u;
    for (int c = 0; c < apex.size(); ++c)
      u.push_back(left[static_cast<std::size_t>(c)] * target.size() + right[static_cast<std::size_t>(c)]);
    return u;
  }
};

/// The first fiber of u (over an orbit base point) that is not admissible.
inline std::optional<Fiber> inadmissible_fiber(const IndexingSystem& s, const EquivariantMap& u) {
  for (auto& f : orbit_fibers(u))
    if (!is_admissible_hset(s, f.set))
      return f;
  return std::nullopt;
}

inline std::string describe_fiber(const Fiber& f) {
  std::ostringstream os;
  os << "fiber over point " << f.base << " (stabilizer #" << f.stabilizer << ") of orbit type "
     << detail::describe(orbit_type(f.set), f.stabilizer) << " is not admissible";
  return os.str();
}

/// Checks both legs are equivariant and the right leg admissible.
inline SpanMorphism make_span(const IndexingSystem& s, GSet source, GSet target, GSet apex, IndexMap left,
                              IndexMap right) {
  if (!is_equivariant(apex, source, left))
    throw SpanError("span: left leg is not an equivariant map apex -> source");
  if (!is_equivariant(apex, target, right))
    throw SpanError("span: right leg is not an equivariant map apex -> target");
  if (auto f = inadmissible_fiber(s, {apex, target, right}))
    throw SpanError("span: right leg " + describe_fiber(*f));
  return {std::move(source), std::move(target), std::move(apex), std::move(left), std::move(right)};
}

inline SpanMorphism identity_span(const GSet& a) {
  return {a, a, a, identity_perm(a.size()), identity_perm(a.size())};
}

/// xK -> xH for K <= H, as a map G/K -> G/H.
inline EquivariantMap projection_map(const Group& g, SubgroupId k, SubgroupId h) {
  if (!g.is_subgroup_of(k, h))
    throw SpanError("projection: K is not a subgroup of H");
  GSet src = orbit_gset(g, k), tgt = orbit_gset(g, h);
  const auto& reps = g.cosets(k).reps;
  IndexMap m;
  for (Elt r : reps)
    m.push_back(tgt.act(r, 0));
  return make_map(std::move(src), std::move(tgt), std::move(m));
}

/// G/K <- G/K -> G/H: evaluates to the transfer from K to H.
inline SpanMorphism transfer_span(const IndexingSystem& s, SubgroupId k, SubgroupId h) {
  auto p = projection_map(s.group(), k, h);
  return make_span(s, p.source, p.target, p.source, identity_perm(p.source.size()), p.map);
}

/// G/H <- G/K -> G/K: evaluates to the restriction from H to K.
inline SpanMorphism restriction_span(const IndexingSystem& s, SubgroupId k, SubgroupId h) {
  auto p = projection_map(s.group(), k, h);
  return make_span(s, p.target, p.source, p.source, p.map, identity_perm(p.source.size()));
}

/// (first then second): apex the pullback of first.right and second.left.
/// Re-verifies that the pulled-back leg and the composite right leg are
/// admissible.
inline SpanMorphism compose_spans(const IndexingSystem& s, const SpanMorphism& first, const SpanMorphism& second) {
  if (!(first.target == second.source))
    throw SpanError("compose: the first span's target is not the second span's source");
  Pullback pb = pullback(first.right_map(), second.left_map());
  if (auto f = inadmissible_fiber(s, {pb.apex, second.apex, pb.to_second}))
    throw SpanError("compose: pulled-back leg " + describe_fiber(*f));
  IndexMap left, right;
  for (auto [c, e] : pb.pairs) {
    left.push_back(first.left[static_cast<std::size_t>(c)]);
    right.push_back(second.right[static_cast<std::size_t>(e)]);
  }
  if (auto f = inadmissible_fiber(s, {pb.apex, second.target, right}))
    throw SpanError("compose: composite right leg " + describe_fiber(*f));
  return {first.source, second.target, std::move(pb.apex), std::move(left), std::move(right)};
}

// -- isomorphism classes ---------------------------------------------------

/// Per apex orbit: (stabilizer, left image, right image), minimized over the
/// orbit; sorted. Equal keys iff the spans are isomorphic.
using SpanKey = std::vector<std::tuple<SubgroupId, int, int>>;

inline SpanKey span_key(const SpanMorphism& x) {
  SpanKey k;
  const int nb = x.target.size();
  for (auto [stab, label] : over_key(x.apex, x.labels()))
    k.emplace_back(stab, nb ? label / nb : 0, nb ? label % nb : 0);
  return k;
}

inline bool same_boundary(const SpanMorphism& x, const SpanMorphism& y) {
  return x.source == y.source && x.target == y.target;
}

/// An apex isomorphism w with y.left o w = x.left and y.right o w = x.right.
inline std::optional<IndexMap> span_iso(const SpanMorphism& x, const SpanMorphism& y) {
  if (!same_boundary(x, y))
    throw SpanError("span iso: spans between different G-sets");
  return over_iso(x.apex, x.labels(), y.apex, y.labels());
}

inline std::vector<IndexMap> span_isomorphisms(const SpanMorphism& x, const SpanMorphism& y) {
  if (!same_boundary(x, y))
    throw SpanError("span iso: spans between different G-sets");
  std::vector<IndexMap> out;
  if (x.apex.size() != y.apex.size())
    return out;
  for_each_over_map(x.apex, x.labels(), y.apex, y.labels(), true, [&](const IndexMap& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

inline long span_automorphism_count(const SpanMorphism& x) { return over_automorphism_count(x.apex, x.labels()); }

struct SpanClass {
  SpanKey key;
  SpanMorphism span;
  long automorphisms = 0;
};

/// Iso classes of spans a -> b with admissible right leg and apex size at
/// most apex_bound, in key order. The morphisms of the groupoid are given
/// by span_isomorphisms.
struct HomGroupoid {
  GSet source;
  GSet target;
  std::vector<SpanClass> classes;

  const SpanClass* find(const SpanKey& k) const {
    auto it = std::lower_bound(classes.begin(), classes.end(), k,
                               [](const SpanClass& c, const SpanKey& key) { return c.key < key; });
    return it != classes.end() && it->key == k ? &*it : nullptr;
  }
};

namespace detail {

struct OrbitType {
  SubgroupId stabilizer;
  int left;
  int right;
  int size;
};

// Apex orbits G/K -> a x b up to isomorphism with admissible right fibers:
// pairs (K, p) with K <= Stab(p), minimized over conjugation.
inline std::vector<OrbitType> span_orbit_types(const IndexingSystem& s, const GSet& a, const GSet& b) {
  const Group& g = a.group();
  std::set<std::tuple<SubgroupId, int, int>> seen;
  std::vector<OrbitType> out;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < b.size(); ++y) {
      const SubgroupId sp = g.intersect(a.stabilizer(x), b.stabilizer(y));
      const SubgroupId sb = b.stabilizer(y);
      for (SubgroupId k = 0; k < g.subgroup_count(); ++k) {
        if (!g.is_subgroup_of(k, sp))
          continue;
        std::tuple<SubgroupId, int, int> best{k, x, y};
        for (Elt e = 0; e < g.order(); ++e)
          best = std::min(best, std::tuple<SubgroupId, int, int>{g.conjugate(k, g.inv(e)), a.act(e, x), b.act(e, y)});
        if (!seen.insert(best).second)
          continue;
        // the right fiber over y is Stab(y)/K
        if (!s.admits(k, sb))
          continue;
        auto [kk, xx, yy] = best;
        out.push_back({kk, xx, yy, g.index(kk, g.whole())});
      }
    }
  std::sort(out.begin(), out.end(), [](const OrbitType& p, const OrbitType& q) {
    return std::tie(p.stabilizer, p.left, p.right) < std::tie(q.stabilizer, q.left, q.right);
  });
  return out;
}

inline SpanMorphism span_from_orbits(const GSet& a, const GSet& b, const std::vector<OrbitType>& types,
                                     const std::vector<int>& counts) {
  const Group& g = a.group();
  GSet apex = trivial_set(g, g.whole(), 0);
  IndexMap left, right;
  for (std::size_t i = 0; i < types.size(); ++i)
    for (int c = 0; c < counts[i]; ++c) {
      const auto& t = types[i];
      apex = disjoint_union(apex, orbit_gset(g, t.stabilizer));
      for (Elt r : g.cosets(t.stabilizer).reps) {
        left.push_back(a.act(r, t.left));
        right.push_back(b.act(r, t.right));
      }
    }
  return {a, b, std::move(apex), std::move(left), std::move(right)};
}

} // namespace detail

/// The representative of x's isomorphism class built from its key: one apex
/// orbit G/K per key entry, base point sent to the recorded leg images.
/// Isomorphic spans give identical results.
inline SpanMorphism canonical_span(const SpanMorphism& x) {
  const Group& g = x.source.group();
  std::vector<detail::OrbitType> types;
  for (auto [k, l, r] : span_key(x))
    types.push_back({k, l, r, g.index(k, g.whole())});
  return detail::span_from_orbits(x.source, x.target, types, std::vector<int>(types.size(), 1));
}

inline HomGroupoid hom_groupoid(const IndexingSystem& s, const GSet& a, const GSet& b, int apex_bound) {
  if (apex_bound < 0)
    throw SpanError("hom groupoid: negative apex bound");
  if (a.acting() != a.group().whole() || b.acting() != b.group().whole() || !(a.group() == s.group()) ||
      !(b.group() == s.group()))
    throw SpanError("hom groupoid: source and target must be G-sets for the system's group");
  const auto types = detail::span_orbit_types(s, a, b);
  HomGroupoid out{a, b, {}};
  std::vector<int> counts(types.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == types.size()) {
      SpanMorphism x = detail::span_from_orbits(a, b, types, counts);
      SpanKey k = span_key(x);
      const long auts = span_automorphism_count(x);
      out.classes.push_back({std::move(k), std::move(x), auts});
      return;
    }
    for (int c = 0; c * types[i].size <= left; ++c) {
      counts[i] = c;
      self(self, i + 1, left - c * types[i].size);
    }
    counts[i] = 0;
  };
  rec(rec, 0, apex_bound);
  std::sort(out.classes.begin(), out.classes.end(), [](const SpanClass& p, const SpanClass& q) { return p.key < q.key; });
  return out;
}

/// The part of x over the given points of its source, as a span from the
/// sub-G-set on those points.
inline SpanMorphism restrict_source(const SpanMorphism& x, std::span<const int> points) {
  std::vector<int> pos(static_cast<std::size_t>(x.source.size()), -1);
  for (std::size_t i = 0; i < points.size(); ++i)
    pos[static_cast<std::size_t>(points[i])] = static_cast<int>(i);
  std::vector<int> keep;
  for (int c = 0; c < x.apex.size(); ++c)
    if (pos[static_cast<std::size_t>(x.left[static_cast<std::size_t>(c)])] >= 0)
      keep.push_back(c);
  SpanMorphism r{sub_gset(x.source, points), x.target, sub_gset(x.apex, keep), {}, {}};
  for (int c : keep) {
    r.left.push_back(pos[static_cast<std::size_t>(x.left[static_cast<std::size_t>(c)])]);
    r.right.push_back(x.right[static_cast<std::size_t>(c)]);
  }
  return r;
}

/// hom(a + b, c) against hom(a, c) x hom(b, c) under leg restriction: a
/// bijection on iso classes (apex sizes adding up to at most the bound)
/// that multiplies automorphism orders.
inline bool semi_additivity_check(const IndexingSystem& s, const GSet& a, const GSet& b, const GSet& c, int apex_bound) {
  const GSet ab = disjoint_union(a, b);
  std::vector<int> pa, pb;
  for (int p = 0; p < ab.size(); ++p)
    (p < a.size() ? pa : pb).push_back(p);
  const HomGroupoid sum = hom_groupoid(s, ab, c, apex_bound);
  const HomGroupoid ha = hom_groupoid(s, a, c, apex_bound);
  const HomGroupoid hb = hom_groupoid(s, b, c, apex_bound);
  std::set<std::pair<SpanKey, SpanKey>> image;
  for (const auto& cls : sum.classes) {
    SpanMorphism x = restrict_source(cls.span, pa), y = restrict_source(cls.span, pb);
    const SpanClass* cx = ha.find(span_key(x));
    const SpanClass* cy = hb.find(span_key(y));
    if (!cx || !cy || cx->automorphisms * cy->automorphisms != cls.automorphisms)
      return false;
    if (!image.emplace(cx->key, cy->key).second)
      return false;
  }
  std::size_t pairs = 0;
  for (const auto& x : ha.classes)
    for (const auto& y : hb.classes)
      pairs += x.span.apex.size() + y.span.apex.size() <= apex_bound;
  return pairs == image.size();
}

// -- spans into an orbit and fixed objects ---------------------------------

/// A span A -> G/H into a single orbit, rewritten as
/// A <- ind_H^G T -> G/H: H is the stabilizer of target point 0, T the
/// fiber over it (apex points listed in `fiber`), u the left leg on T.
/// The right leg is admissible exactly when T is.
struct ProjectionForm {
  SubgroupId subgroup = 0;
  GSet hset;
  std::vector<int> fiber;
  IndexMap labels;
};

inline ProjectionForm projection_form(const SpanMorphism& x) {
  const GSet& tgt = x.target;
  if (tgt.size() == 0 || orbits(tgt).size() != 1)
    throw SpanError("projection form: the target is not a single orbit");
  ProjectionForm f;
  f.subgroup = tgt.stabilizer(0);
  for (int c = 0; c < x.apex.size(); ++c)
    if (x.right[static_cast<std::size_t>(c)] == 0)
      f.fiber.push_back(c);
  f.hset = sub_gset(restrict(x.apex, f.subgroup), f.fiber);
  for (int c : f.fiber)
    f.labels.push_back(x.left[static_cast<std::size_t>(c)]);
  return f;
}

/// A <- ind_H^G T -> G/H with (coset i, t) -> (r_i u(t), r_i . 0).
inline SpanMorphism projection_span(const ProjectionForm& f, const GSet& source, const GSet& target) {
  const Group& g = source.group();
  GSet ind = induce(f.hset, g.whole());
  const auto& reps = g.cosets(f.subgroup).reps;
  const int n = f.hset.size();
  IndexMap left, right;
  for (int p = 0; p < ind.size(); ++p) {
    const Elt r = reps[static_cast<std::size_t>(p / n)];
    left.push_back(source.act(r, f.labels[static_cast<std::size_t>(p % n)]));
    right.push_back(target.act(r, 0));
  }
  return {source, target, std::move(ind), std::move(left), std::move(right)};
}

/// ((x)_T, (u(t_1), .., u(t_n))): the H-fixed object generating the functor
/// G/H -> G(A) that the span induces.
inline NormedObject theta_object(const NormedCategory& c, const SpanMorphism& x) {
  if (!(x.source == c.base()))
    throw SpanError("theta: the span's source is not the category's base");
  ProjectionForm f = projection_form(x);
  NormedObject obj = c.object(NormTree::corolla(f.hset), f.labels);
  if (!c.is_fixed(obj, f.subgroup))
    throw SpanError("theta: generating object is not fixed (internal)");
  return obj;
}

inline FunctorData theta(const NormedCategory& c, const SpanMorphism& x) {
  NormedObject obj = theta_object(c, x);
  return functor_from_basepoints(c, x.target, std::span<const NormedObject>(&obj, 1));
}

/// A span isomorphism w: x -> y restricted to the fibers over target point
/// 0, as a morphism theta(x) -> theta(y).
inline NormedMorphism theta(const NormedCategory& c, const SpanMorphism& x, const SpanMorphism& y, const IndexMap& w) {
  ProjectionForm fx = projection_form(x), fy = projection_form(y);
  std::vector<int> pos(static_cast<std::size_t>(y.apex.size()), -1);
  for (std::size_t i = 0; i < fy.fiber.size(); ++i)
    pos[static_cast<std::size_t>(fy.fiber[i])] = static_cast<int>(i);
  IndexMap alpha;
  for (int p : fx.fiber) {
    const int q = pos[static_cast<std::size_t>(w[static_cast<std::size_t>(p)])];
    if (q < 0)
      throw SpanError("theta: map does not preserve the fiber over the base point");
    alpha.push_back(q);
  }
  return c.morphism(theta_object(c, x), theta_object(c, y), std::move(alpha));
}

// -- Mackey functors of monoids ----------------------------------------------

/// A finite commutative monoid with G acting by monoid automorphisms.
class CommutativeGMonoid {
public:
  CommutativeGMonoid(Group g, std::vector<std::vector<int>> add, int zero, std::vector<Perm> action)
      : g_(std::move(g)), add_(std::move(add)), zero_(zero), action_(std::move(action)) {
    const int n = size();
    if (n == 0 || zero_ < 0 || zero_ >= n)
      throw SpanError("monoid: empty carrier or zero out of range");
    for (const auto& row : add_)
      if (static_cast<int>(row.size()) != n || std::any_of(row.begin(), row.end(), [&](int v) { return v < 0 || v >= n; }))
        throw SpanError("monoid: addition table is not n x n over the carrier");
    for (int x = 0; x < n; ++x) {
      if (plus(zero_, x) != x)
        throw SpanError("monoid: zero is not a unit");
      for (int y = 0; y < n; ++y) {
        if (plus(x, y) != plus(y, x))
          throw SpanError("monoid: not commutative");
        for (int z = 0; z < n; ++z)
          if (plus(plus(x, y), z) != plus(x, plus(y, z)))
            throw SpanError("monoid: not associative");
      }
    }
    try {
      set_ = GSet(g_, g_.whole(), n, action_);
    } catch (const GroupError& e) {
      throw SpanError(std::string("monoid: ") + e.what());
    }
    for (Elt e = 0; e < g_.order(); ++e) {
      if (act(e, zero_) != zero_)
        throw SpanError("monoid: the action does not fix zero");
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (act(e, plus(x, y)) != plus(act(e, x), act(e, y)))
            throw SpanError("monoid: the action is not by monoid maps");
    }
  }

  /// Z/m with the trivial action.
  static CommutativeGMonoid zmod(const Group& g, int m) {
    if (m < 1)
      throw SpanError("monoid: modulus must be positive");
    std::vector<std::vector<int>> add(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        add[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = (x + y) % m;
    return {g, std::move(add), 0, std::vector<Perm>(static_cast<std::size_t>(g.order()), identity_perm(m))};
  }

  /// Functions X -> Z/m under pointwise addition, (g f)(x) = f(g^-1 x).
  /// Functions are encoded in base m, point 0 least significant.
  static CommutativeGMonoid functions(const GSet& x, int m) {
    const Group& g = x.group();
    int n = 1;
    for (int i = 0; i < x.size(); ++i)
      n *= m;
    auto digits = [&](int v) {
      std::vector<int> d(static_cast<std::size_t>(x.size()));
      for (auto& k : d) {
        k = v % m;
        v /= m;
      }
      return d;
    };
    auto encode = [&](const std::vector<int>& d) {
      int v = 0;
      for (std::size_t i = d.size(); i-- > 0;)
        v = v * m + d[i];
      return v;
    };
    std::vector<std::vector<int>> add(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        auto da = digits(a), db = digits(b);
        for (std::size_t i = 0; i < da.size(); ++i)
          da[i] = (da[i] + db[i]) % m;
        add[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = encode(da);
      }
    std::vector<Perm> action(static_cast<std::size_t>(g.order()), Perm(static_cast<std::size_t>(n)));
    for (Elt e = 0; e < g.order(); ++e)
      for (int a = 0; a < n; ++a) {
        auto d = digits(a), r = d;
        for (int p = 0; p < x.size(); ++p)
          r[static_cast<std::size_t>(x.act(e, p))] = d[static_cast<std::size_t>(p)];
        action[static_cast<std::size_t>(e)][static_cast<std::size_t>(a)] = encode(r);
      }
    return {g, std::move(add), 0, std::move(action)};
  }

  const Group& group() const { return g_; }
  int size() const { return static_cast<int>(add_.size()); }
  int zero() const { return zero_; }
  int plus(int x, int y) const { return add_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; }
  int act(Elt g, int x) const { return action_[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)]; }
  /// The carrier as a G-set.
  const GSet& gset() const { return set_; }
  const std::vector<std::vector<int>>& table() const { return add_; }
  const std::vector<Perm>& action() const { return action_; }

private:
  Group g_;
  std::vector<std::vector<int>> add_;
  int zero_;
  std::vector<Perm> action_;
  GSet set_;
};

/// Every G-map a -> M, in lexicographic order of base-point values.
inline std::vector<IndexMap> equivariant_functions(const CommutativeGMonoid& m, const GSet& a) {
  std::vector<IndexMap> out;
  const auto os = orbits(a);
  const Group& g = a.group();
  IndexMap f(static_cast<std::size_t>(a.size()), -1);
  auto rec = [&](auto&& self, std::size_t oi) -> void {
    if (oi == os.size()) {
      out.push_back(f);
      return;
    }
    const auto& reps = g.cosets(os[oi].stabilizer, a.acting()).reps;
    for (int v : fixed_points(m.gset(), os[oi].stabilizer)) {
      for (std::size_t i = 0; i < reps.size(); ++i)
        f[static_cast<std::size_t>(os[oi].witness[i])] = m.act(reps[i], v);
      self(self, oi + 1);
    }
  };
  rec(rec, 0);
  return out;
}

/// phi -> (b -> sum of phi(left c) over c in right^-1(b)).
inline IndexMap mackey_eval(const CommutativeGMonoid& m, const SpanMorphism& x, std::span<const int> phi) {
  if (!(m.group() == x.source.group()))
    throw SpanError("mackey: monoid and span over different groups");
  if (!is_equivariant(x.source, restrict(m.gset(), x.source.acting()), phi))
    throw SpanError("mackey: input is not an equivariant map to the monoid");
  IndexMap out(static_cast<std::size_t>(x.target.size()), m.zero());
  for (int c = 0; c < x.apex.size(); ++c) {
    auto& slot = out[static_cast<std::size_t>(x.right[static_cast<std::size_t>(c)])];
    slot = m.plus(slot, phi[static_cast<std::size_t>(x.left[static_cast<std::size_t>(c)])]);
  }
  return out;
}

} // namespace ninf

#endif // NINF_BURNSIDE_HPP_
