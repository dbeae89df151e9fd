// Finite H-sets for H a subgroup of an ambient group G.
//
// Every H-set keeps the ambient element numbering: the action table is
// indexed by elements of G, and only rows for elements of H are populated.
// That way restriction, induction and conjugation never relabel elements.

#ifndef NINF_GSET_HPP_
#define NINF_GSET_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "group.hpp"
#include "perm.hpp"

namespace ninf {

class GSet {
public:
  GSet() = default;

  /// act[g] must be a permutation of 0..size-1 for every g in `acting` and
  /// is ignored otherwise. Throws GroupError unless this is a left action.
  GSet(Group group, SubgroupId acting, int size, std::vector<Perm> act)
      : group_(std::move(group)), acting_(acting), size_(size), act_(std::move(act)) {
    act_.resize(static_cast<std::size_t>(group_.order()));
    for (Elt g = 0; g < group_.order(); ++g) {
      auto& p = act_[static_cast<std::size_t>(g)];
      if (!group_.contains(acting_, g)) {
        p.clear();
        continue;
      }
      if (static_cast<int>(p.size()) != size_ || !is_perm(p))
        throw GroupError("action: element " + std::to_string(g) + " does not act by a permutation");
    }
    if (!is_identity(act_[0]))
      throw GroupError("action: identity does not act trivially");
    const auto& els = group_.elements(acting_);
    for (Elt a : els)
      for (Elt b : els)
        if (act_[static_cast<std::size_t>(group_.mul(a, b))] != compose(act_[a], act_[b]))
          throw GroupError("action: not a left action at (" + std::to_string(a) + "," +
                           std::to_string(b) + ")");
  }

  template <typename F>
  static GSet from_function(const Group& g, SubgroupId acting, int size, F&& f) {
    std::vector<Perm> act(static_cast<std::size_t>(g.order()));
    for (Elt h : g.elements(acting)) {
      auto& p = act[static_cast<std::size_t>(h)];
      p.resize(static_cast<std::size_t>(size));
      for (int x = 0; x < size; ++x)
        p[x] = f(h, x);
    }
    return GSet(g, acting, size, std::move(act));
  }

  const Group& group() const { return group_; }
  SubgroupId acting() const { return acting_; }
  int size() const { return size_; }
  int act(Elt g, int x) const { return act_[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)]; }
  const Perm& perm(Elt g) const { return act_[static_cast<std::size_t>(g)]; }
  const std::vector<Elt>& acting_elements() const { return group_.elements(acting_); }

  /// Stabilizer of x, as a subgroup id of the ambient group.
  SubgroupId stabilizer(int x) const {
    ElementMask m = 0;
    for (Elt h : acting_elements())
      if (act(h, x) == x)
        m |= ElementMask{1} << h;
    return group_.subgroup_of(m);
  }

  bool operator==(const GSet& o) const {
    return size_ == o.size_ && acting_ == o.acting_ && group_ == o.group_ && act_ == o.act_;
  }
  bool operator<(const GSet& o) const {
    if (acting_ != o.acting_)
      return acting_ < o.acting_;
    if (size_ != o.size_)
      return size_ < o.size_;
    return act_ < o.act_;
  }

private:
  Group group_;
  SubgroupId acting_ = 0;
  int size_ = 0;
  std::vector<Perm> act_;
};

struct EquivariantMap {
  GSet source;
  GSet target;
  IndexMap map;

  int operator()(int x) const { return map[static_cast<std::size_t>(x)]; }
};

inline bool is_equivariant(const GSet& src, const GSet& tgt, std::span<const int> map) {
  if (src.acting() != tgt.acting() || !(src.group() == tgt.group()) ||
      static_cast<int>(map.size()) != src.size())
    return false;
  for (int x : map)
    if (x < 0 || x >= tgt.size())
      return false;
  for (Elt h : src.acting_elements())
    for (int x = 0; x < src.size(); ++x)
      if (map[static_cast<std::size_t>(src.act(h, x))] != tgt.act(h, map[static_cast<std::size_t>(x)]))
        return false;
  return true;
}

inline bool is_equivariant(const EquivariantMap& f) {
  return is_equivariant(f.source, f.target, f.map);
}

inline EquivariantMap make_map(GSet src, GSet tgt, IndexMap map) {
  if (!is_equivariant(src, tgt, map))
    throw GroupError("map: not equivariant");
  return {std::move(src), std::move(tgt), std::move(map)};
}

// -- constructions -----------------------------------------------------

/// H/K as an H-set: points are the left cosets of K in H in canonical order.
inline GSet coset_set(const Group& g, SubgroupId k, SubgroupId h) {
  CosetDecomposition c = g.cosets(k, h);
  return GSet::from_function(g, h, c.size(), [&](Elt x, int i) {
    return c.coset_of[static_cast<std::size_t>(g.mul(x, c.reps[static_cast<std::size_t>(i)]))];
  });
}

/// G/K as a G-set.
inline GSet orbit_gset(const Group& g, SubgroupId k) { return coset_set(g, k, g.whole()); }

/// n fixed points.
inline GSet trivial_set(const Group& g, SubgroupId h, int n) {
  return GSet::from_function(g, h, n, [](Elt, int x) { return x; });
}

inline GSet disjoint_union(const GSet& a, const GSet& b) {
  if (a.acting() != b.acting() || !(a.group() == b.group()))
    throw GroupError("disjoint_union: acting groups differ");
  return GSet::from_function(a.group(), a.acting(), a.size() + b.size(), [&](Elt h, int x) {
    return x < a.size() ? a.act(h, x) : a.size() + b.act(h, x - a.size());
  });
}

/// Disjoint union of H/K_i in the given order.
inline GSet from_orbits(const Group& g, SubgroupId h, std::span<const SubgroupId> stabilizers) {
  GSet r = trivial_set(g, h, 0);
  for (SubgroupId k : stabilizers)
    r = disjoint_union(r, coset_set(g, k, h));
  return r;
}

/// Cartesian product with the diagonal action; (x, y) has index x * |b| + y.
inline GSet product(const GSet& a, const GSet& b) {
  if (a.acting() != b.acting() || !(a.group() == b.group()))
    throw GroupError("product: acting groups differ");
  return GSet::from_function(a.group(), a.acting(), a.size() * b.size(), [&](Elt h, int p) {
    return a.act(h, p / b.size()) * b.size() + b.act(h, p % b.size());
  });
}

inline GSet restrict(const GSet& x, SubgroupId m) {
  if (!x.group().is_subgroup_of(m, x.acting()))
    throw GroupError("restrict: target subgroup not contained in acting group");
  return GSet::from_function(x.group(), m, x.size(), [&](Elt h, int p) { return x.act(h, p); });
}

/// ind_K^H Y with points (coset index i, point y) at index i * |Y| + y.
inline GSet induce(const GSet& y, SubgroupId h) {
  const Group& g = y.group();
  if (!g.is_subgroup_of(y.acting(), h))
    throw GroupError("induce: acting group not contained in target subgroup");
  CosetDecomposition c = g.cosets(y.acting(), h);
  const int n = y.size();
  return GSet::from_function(g, h, c.size() * n, [&](Elt x, int p) {
    Elt r = c.reps[static_cast<std::size_t>(p / n)];
    Elt xr = g.mul(x, r);
    int j = c.coset_of[static_cast<std::size_t>(xr)];
    Elt k = g.mul(g.inv(c.reps[static_cast<std::size_t>(j)]), xr);
    return j * n + y.act(k, p % n);
  });
}

/// c_g Y: an H^g-set on the same points, k acting as g k g^-1 does on Y.
inline GSet conjugate(const GSet& y, Elt g) {
  const Group& grp = y.group();
  SubgroupId hg = grp.conjugate(y.acting(), g);
  return GSet::from_function(grp, hg, y.size(), [&](Elt k, int p) {
    return y.act(grp.mul(g, grp.mul(k, grp.inv(g))), p);
  });
}

inline std::vector<int> fixed_points(const GSet& x, SubgroupId h) {
  if (!x.group().is_subgroup_of(h, x.acting()))
    throw GroupError("fixed_points: subgroup not contained in acting group");
  std::vector<int> r;
  for (int p = 0; p < x.size(); ++p) {
    bool fixed = true;
    for (Elt e : x.group().elements(h))
      if (x.act(e, p) != p) {
        fixed = false;
        break;
      }
    if (fixed)
      r.push_back(p);
  }
  return r;
}

// -- orbits ------------------------------------------------------------

struct Orbit {
  std::vector<int> points;  // sorted; points[0] is the base point
  SubgroupId stabilizer = 0;  // of the base point
  /// witness[i] = reps[i] . base, with reps the canonical cosets of the
  /// stabilizer in the acting group; an isomorphism H/Stab -> orbit.
  std::vector<int> witness;
  int base() const { return points.front(); }
};

inline std::vector<Orbit> orbits(const GSet& x) {
  std::vector<Orbit> out;
  std::vector<int> seen(static_cast<std::size_t>(x.size()), -1);
  const Group& g = x.group();
  for (int p = 0; p < x.size(); ++p) {
    if (seen[static_cast<std::size_t>(p)] >= 0)
      continue;
    Orbit o;
    for (Elt h : x.acting_elements()) {
      int q = x.act(h, p);
      if (seen[static_cast<std::size_t>(q)] < 0) {
        seen[static_cast<std::size_t>(q)] = static_cast<int>(out.size());
        o.points.push_back(q);
      }
    }
    std::sort(o.points.begin(), o.points.end());
    o.stabilizer = x.stabilizer(p);
    for (Elt r : g.cosets(o.stabilizer, x.acting()).reps)
      o.witness.push_back(x.act(r, p));
    out.push_back(std::move(o));
  }
  return out;
}

/// Which orbit each point belongs to (orbit indices as in orbits()).
inline std::vector<int> orbit_index(const GSet& x) {
  std::vector<int> idx(static_cast<std::size_t>(x.size()), -1);
  int next = 0;
  for (int p = 0; p < x.size(); ++p) {
    if (idx[static_cast<std::size_t>(p)] >= 0)
      continue;
    for (Elt h : x.acting_elements())
      idx[static_cast<std::size_t>(x.act(h, p))] = next;
    ++next;
  }
  return idx;
}

/// Sorted list of conjugacy-class representatives of orbit stabilizers;
/// a complete isomorphism invariant.
inline std::vector<SubgroupId> orbit_type(const GSet& x) {
  std::vector<SubgroupId> t;
  for (const auto& o : orbits(x))
    t.push_back(x.group().class_rep(o.stabilizer, x.acting()));
  std::sort(t.begin(), t.end());
  return t;
}

/// An equivariant bijection x -> y if one exists.
inline std::optional<IndexMap> iso_test(const GSet& x, const GSet& y) {
  if (x.acting() != y.acting() || !(x.group() == y.group()) || x.size() != y.size())
    return std::nullopt;
  auto ox = orbits(x);
  auto oy = orbits(y);
  if (ox.size() != oy.size())
    return std::nullopt;
  std::vector<char> used(oy.size(), 0);
  IndexMap m(static_cast<std::size_t>(x.size()), -1);
  for (const auto& o : ox) {
    bool matched = false;
    for (std::size_t j = 0; j < oy.size() && !matched; ++j) {
      if (used[j] || oy[j].points.size() != o.points.size())
        continue;
      for (int q : oy[j].points) {
        if (y.stabilizer(q) != o.stabilizer)
          continue;
        for (Elt h : x.acting_elements())
          m[static_cast<std::size_t>(x.act(h, o.base()))] = y.act(h, q);
        used[j] = 1;
        matched = true;
        break;
      }
    }
    if (!matched)
      return std::nullopt;
  }
  return m;
}

inline bool isomorphic(const GSet& x, const GSet& y) { return iso_test(x, y).has_value(); }

/// The invariant subset `points` of x as an H-set in its own right; point i
/// of the result is points[i]. Throws if the subset is not invariant.
inline GSet sub_gset(const GSet& x, std::span<const int> points) {
  std::vector<int> pos(static_cast<std::size_t>(x.size()), -1);
  for (std::size_t i = 0; i < points.size(); ++i)
    pos[static_cast<std::size_t>(points[i])] = static_cast<int>(i);
  for (Elt h : x.acting_elements())
    for (int p : points)
      if (pos[static_cast<std::size_t>(x.act(h, p))] < 0)
        throw GroupError("sub_gset: subset is not invariant");
  return GSet::from_function(x.group(), x.acting(), static_cast<int>(points.size()),
                             [&](Elt h, int i) {
                               return pos[static_cast<std::size_t>(x.act(h, points[static_cast<std::size_t>(i)]))];
                             });
}

/// One representative per isomorphism class of H-sets with at most
/// max_size points. Each is from_orbits() of a non-decreasing list of
/// H-conjugacy class representatives; the list is returned alongside.
/// Classes are ordered by size, then by orbit list.
struct HSetClass {
  std::vector<SubgroupId> orbit_types;
  GSet set;
};

inline std::vector<HSetClass> hset_classes(const Group& g, SubgroupId h, int max_size) {
  std::vector<SubgroupId> reps;
  for (SubgroupId k = 0; k < g.subgroup_count(); ++k)
    if (g.is_subgroup_of(k, h) && g.class_rep(k, h) == k && g.index(k, h) <= max_size)
      reps.push_back(k);
  std::vector<std::pair<int, std::vector<SubgroupId>>> lists;
  std::vector<SubgroupId> cur;
  auto rec = [&](auto&& self, std::size_t from, int size) -> void {
    lists.emplace_back(size, cur);
    for (std::size_t i = from; i < reps.size(); ++i) {
      int s = g.index(reps[i], h);
      if (size + s > max_size)
        continue;
      cur.push_back(reps[i]);
      self(self, i, size + s);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  std::sort(lists.begin(), lists.end());
  std::vector<HSetClass> out;
  out.reserve(lists.size());
  for (auto& [size, types] : lists)
    out.push_back({types, from_orbits(g, h, types)});
  return out;
}

// -- sets over a base --------------------------------------------------

// An H-set X with a labelling u: X -> L that is equivariant for some H-action
// on L (a map to res A, or the pair of legs of a span). Labels are plain ints.
// Two such are isomorphic over L iff some H-bijection preserves labels.

/// Complete isomorphism invariant of (x, u) over the labels: for each orbit
/// the least (stabilizer, label) among its points, sorted. The pairs met on
/// an orbit form one H-orbit of pairs, so two orbits are isomorphic over the
/// labels iff their least pairs agree.
using OverKey = std::vector<std::pair<SubgroupId, int>>;

inline OverKey over_key(const GSet& x, std::span<const int> u) {
  OverKey key;
  for (const auto& o : orbits(x)) {
    std::pair<SubgroupId, int> best{x.stabilizer(o.base()), u[static_cast<std::size_t>(o.base())]};
    for (int p : o.points)
      best = std::min(best, std::pair<SubgroupId, int>{x.stabilizer(p), u[static_cast<std::size_t>(p)]});
    key.push_back(best);
  }
  std::sort(key.begin(), key.end());
  return key;
}

/// Calls visit(m) for every H-map m: x -> y with uy(m(p)) = ux(p), injective
/// ones only if `injective`. Stops early when visit returns false; returns
/// false iff stopped. Chooses the image of each orbit's base point among the
/// points of y whose stabilizer contains the base point's.
template <typename Visit>
bool for_each_over_map(const GSet& x, std::span<const int> ux, const GSet& y, std::span<const int> uy,
                       bool injective, Visit&& visit) {
  if (x.acting() != y.acting() || !(x.group() == y.group()))
    throw GroupError("over map: sets over different groups");
  const Group& g = x.group();
  auto ox = orbits(x);
  std::vector<SubgroupId> ystab(static_cast<std::size_t>(y.size()));
  for (int q = 0; q < y.size(); ++q)
    ystab[static_cast<std::size_t>(q)] = y.stabilizer(q);
  IndexMap m(static_cast<std::size_t>(x.size()), -1);
  std::vector<char> used(static_cast<std::size_t>(y.size()), 0);
  auto rec = [&](auto&& self, std::size_t oi) -> bool {
    if (oi == ox.size())
      return visit(static_cast<const IndexMap&>(m));
    const Orbit& o = ox[oi];
    const int b = o.base();
    for (int q = 0; q < y.size(); ++q) {
      if (uy[static_cast<std::size_t>(q)] != ux[static_cast<std::size_t>(b)] ||
          !g.is_subgroup_of(o.stabilizer, ystab[static_cast<std::size_t>(q)]))
        continue;
      // injective on the orbit iff the stabilizers agree; then it fills q's orbit
      if (injective && (used[static_cast<std::size_t>(q)] || o.stabilizer != ystab[static_cast<std::size_t>(q)]))
        continue;
      bool ok = true;
      std::vector<int> touched;
      for (Elt h : x.acting_elements()) {
        const int p = x.act(h, b), img = y.act(h, q);
        auto& slot = m[static_cast<std::size_t>(p)];
        if (slot < 0) {
          if (uy[static_cast<std::size_t>(img)] != ux[static_cast<std::size_t>(p)]) {
            ok = false;
            break;
          }
          slot = img;
          touched.push_back(p);
          if (injective)
            used[static_cast<std::size_t>(img)] = 1;
        }
      }
      bool go = !ok || self(self, oi + 1);
      for (int p : touched) {
        if (injective)
          used[static_cast<std::size_t>(m[static_cast<std::size_t>(p)])] = 0;
        m[static_cast<std::size_t>(p)] = -1;
      }
      if (!go)
        return false;
    }
    return true;
  };
  return rec(rec, 0);
}

/// Number of label-preserving H-automorphisms of x.
inline long over_automorphism_count(const GSet& x, std::span<const int> u) {
  long n = 0;
  for_each_over_map(x, u, x, u, true, [&](const IndexMap&) {
    ++n;
    return true;
  });
  return n;
}

/// A label-preserving H-isomorphism x -> y, if any.
inline std::optional<IndexMap> over_iso(const GSet& x, std::span<const int> ux, const GSet& y,
                                        std::span<const int> uy) {
  if (x.size() != y.size())
    return std::nullopt;
  std::optional<IndexMap> found;
  for_each_over_map(x, ux, y, uy, true, [&](const IndexMap& m) {
    found = m;
    return false;
  });
  return found;
}

// -- pullbacks ---------------------------------------------------------

struct Pullback {
  GSet apex;
  std::vector<std::pair<int, int>> pairs;  // apex point -> (c, e)
  IndexMap to_first;
  IndexMap to_second;

  /// Mediating map for a cone z -> (p(z), q(z)); nullopt if the cone does
  /// not commute.
  std::optional<IndexMap> mediate(std::span<const int> p, std::span<const int> q) const {
    std::map<std::pair<int, int>, int> index;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      index[pairs[i]] = static_cast<int>(i);
    IndexMap m;
    for (std::size_t z = 0; z < p.size(); ++z) {
      auto it = index.find({p[z], q[z]});
      if (it == index.end())
        return std::nullopt;
      m.push_back(it->second);
    }
    return m;
  }
};

/// Pullback of f: C -> D and g: E -> D; points are the pairs (c, e) with
/// f(c) = g(e) in lexicographic order.
inline Pullback pullback(const EquivariantMap& f, const EquivariantMap& g) {
  if (!(f.target == g.target))
    throw GroupError("pullback: maps have different targets");
  Pullback pb;
  std::map<std::pair<int, int>, int> index;
  for (int c = 0; c < f.source.size(); ++c)
    for (int e = 0; e < g.source.size(); ++e)
      if (f(c) == g(e)) {
        index[{c, e}] = static_cast<int>(pb.pairs.size());
        pb.pairs.emplace_back(c, e);
        pb.to_first.push_back(c);
        pb.to_second.push_back(e);
      }
  const GSet& C = f.source;
  const GSet& E = g.source;
  pb.apex = GSet::from_function(C.group(), C.acting(), static_cast<int>(pb.pairs.size()),
                                [&](Elt h, int p) {
                                  auto [c, e] = pb.pairs[static_cast<std::size_t>(p)];
                                  return index.at({C.act(h, c), E.act(h, e)});
                                });
  return pb;
}

// -- nerve quotient ----------------------------------------------------

/// Compares level n of N(X~ x Y)/Gamma with level n of N((X~ x Y)/Gamma),
/// where X~ is the chaotic category on X and Y is discrete. X and Y are
/// sets over G x Gamma (element (a, b) = a * |Gamma| + b); only the Gamma
/// part enters the quotient. Returns true iff the canonical comparison map
/// is a bijection.
///
/// The map is always surjective; it is injective when Gamma acts freely on
/// X x Y, and can fail to be otherwise.
inline bool nerve_quotient_check(const Group& g, const Group& gamma, const GSet& x, const GSet& y,
                                 int n) {
  Group prod = Group::direct_product(g, gamma);
  if (!(x.group() == prod) || !(y.group() == prod) || x.acting() != x.group().whole() ||
      y.acting() != y.group().whole())
    throw GroupError("nerve_quotient_check: sets must carry an action of G x Gamma");
  if (n < 0)
    throw GroupError("nerve_quotient_check: negative level");
  const int nx = x.size(), ny = y.size(), ng = gamma.order();
  if (nx == 0 || ny == 0)
    return true;  // both sides empty

  // Gamma-orbit id of a tuple (x_0..x_k, y), as its minimal encoding.
  auto canon = [&](const std::vector<int>& xs, int yy) {
    long best = -1;
    for (Elt b = 0; b < ng; ++b) {
      long code = 0;
      for (int xi : xs)
        code = code * nx + x.act(b, xi);
      code = code * ny + y.act(b, yy);
      if (best < 0 || code < best)
        best = code;
    }
    return best;
  };

  // left side: classes of (x_0..x_n, y) and their images
  std::map<long, std::vector<long>> left;  // class -> image tuple
  std::vector<int> xs(static_cast<std::size_t>(n + 1), 0);
  for (;;) {
    for (int yy = 0; yy < ny; ++yy) {
      long cls = canon(xs, yy);
      if (left.count(cls))
        continue;
      std::vector<long> image;
      if (n == 0)
        image.push_back(canon(xs, yy));
      for (int i = 0; i < n; ++i)
        image.push_back(canon({xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(i + 1)]}, yy));
      left[cls] = std::move(image);
    }
    int i = 0;
    while (i <= n && ++xs[static_cast<std::size_t>(i)] == nx)
      xs[static_cast<std::size_t>(i++)] = 0;
    if (i > n)
      break;
  }

  // right side: composable strings of morphism classes
  std::map<long, std::pair<long, long>> arrows;  // class -> (source, target) object classes
  std::set<long> objects;
  for (int a = 0; a < nx; ++a)
    for (int yy = 0; yy < ny; ++yy) {
      objects.insert(canon({a}, yy));
      for (int b = 0; b < nx; ++b)
        arrows[canon({a, b}, yy)] = {canon({a}, yy), canon({b}, yy)};
    }
  // count strings of length n by dynamic programming over end object
  std::size_t right_count = 0;
  if (n == 0) {
    right_count = objects.size();
  } else {
    std::map<long, std::size_t> ending;  // target object -> #strings
    for (const auto& [m, st] : arrows)
      ending[st.second] += 1;
    for (int step = 1; step < n; ++step) {
      std::map<long, std::size_t> next;
      for (const auto& [m, st] : arrows) {
        auto it = ending.find(st.first);
        if (it != ending.end())
          next[st.second] += it->second;
      }
      ending = std::move(next);
    }
    for (const auto& [o, c] : ending)
      right_count += c;
  }

  std::set<std::vector<long>> images;
  for (const auto& [cls, image] : left) {
    for (std::size_t i = 0; i + 1 < image.size(); ++i)
      if (arrows.at(image[i]).second != arrows.at(image[i + 1]).first)
        return false;  // not even a composable string
    images.insert(image);
  }
  return images.size() == left.size() && images.size() == right_count;
}

} // namespace ninf

#endif // NINF_GSET_HPP_
