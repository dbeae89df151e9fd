// The free I-normed symmetric monoidal category G(A) on a finite G-set A,
// and its core F(A).
//
// Objects are (tree, labels) with one label in A per leaf; a morphism is any
// map of leaf positions that preserves labels (a bijection in the core).
// A node r (x)_T (t_1..t_n) reads as r . (x)_T(t_1..t_n), exactly as in the
// operad, so the subtrees under a node with representative r carry labels
// twisted by r^-1. Functors generated from their values on A (cons) follow
// that reading; it is what makes them equivariant.

#ifndef NINF_NORMED_CAT_HPP_
#define NINF_NORMED_CAT_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gset.hpp"
#include "indexing.hpp"
#include "norm_operad.hpp"
#include "perm.hpp"

namespace ninf {

class NormedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct NormedObject {
  NormTree tree;
  std::vector<int> labels;

  int length() const { return static_cast<int>(labels.size()); }
  bool operator==(const NormedObject& o) const { return tree == o.tree && labels == o.labels; }
  bool operator<(const NormedObject& o) const {
    const int c = compare(tree, o.tree);
    return c != 0 ? c < 0 : labels < o.labels;
  }
};

inline std::string to_string(const NormedObject& x) {
  return "(" + to_string(x.tree) + ", " + to_string(x.labels) + ")";
}

/// alpha: [|source|] -> [|target|] with source.labels[i] == target.labels[alpha[i]].
struct NormedMorphism {
  NormedObject source;
  NormedObject target;
  IndexMap alpha;

  bool operator==(const NormedMorphism& o) const {
    return alpha == o.alpha && source == o.source && target == o.target;
  }
  bool is_iso() const { return is_bijection(alpha, target.length()); }
};

enum class Morphisms { all, core };

class NormedCategory {
public:
  NormedCategory(IndexingSystem s, GSet a) : s_(std::move(s)), a_(std::move(a)) {
    if (!(a_.group() == s_.group()) || a_.acting() != a_.group().whole())
      throw NormedError("normed category: the base must be a G-set over the system's group");
    const Group& g = s_.group();
    unit_label_ = make_label(trivial_set(g, g.whole(), 0));
    pair_label_ = make_label(trivial_set(g, g.whole(), 2));
  }

  const IndexingSystem& system() const { return s_; }
  const Group& group() const { return s_.group(); }
  const GSet& base() const { return a_; }

  bool is_object(const NormedObject& x) const {
    if (!is_valid_tree(s_, x.tree) || x.length() != x.tree.length())
      return false;
    return std::all_of(x.labels.begin(), x.labels.end(), [&](int a) { return a >= 0 && a < a_.size(); });
  }
  NormedObject object(NormTree t, std::vector<int> labels) const {
    NormedObject x{std::move(t), std::move(labels)};
    if (!is_object(x))
      throw NormedError("object: invalid tree or labels " + to_string(x));
    return x;
  }

  bool is_morphism(const NormedMorphism& f) const {
    if (!is_object(f.source) || !is_object(f.target) || static_cast<int>(f.alpha.size()) != f.source.length())
      return false;
    for (std::size_t i = 0; i < f.alpha.size(); ++i) {
      const int j = f.alpha[i];
      if (j < 0 || j >= f.target.length() || f.source.labels[i] != f.target.labels[static_cast<std::size_t>(j)])
        return false;
    }
    return true;
  }
  NormedMorphism morphism(NormedObject x, NormedObject y, IndexMap alpha) const {
    NormedMorphism f{std::move(x), std::move(y), std::move(alpha)};
    if (!is_morphism(f))
      throw NormedError("morphism: " + to_string(f.alpha) + " does not preserve labels from " +
                        to_string(f.source) + " to " + to_string(f.target));
    return f;
  }
  NormedMorphism identity(const NormedObject& x) const { return {x, x, identity_perm(x.length())}; }
  /// after o before
  NormedMorphism compose(const NormedMorphism& after, const NormedMorphism& before) const {
    if (!(before.target == after.source))
      throw NormedError("compose: " + to_string(before.target) + " is not " + to_string(after.source));
    return {before.source, after.target, compose_maps(after.alpha, before.alpha)};
  }

  NormedObject leaf(int a) const { return object(NormTree::leaf(), {a}); }
  NormedObject unit() const { return {NormTree::node(unit_label_, 0, {}), {}}; }

  /// g.(theta, a) = (g theta, b) with b[omega(i)] = g a[i].
  NormedObject act(Elt g, const NormedObject& x) const {
    const Perm w = omega(x.tree, g);
    std::vector<int> labels(x.labels.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      labels[static_cast<std::size_t>(w[i])] = a_.act(g, x.labels[i]);
    return {ninf::act(g, x.tree), std::move(labels)};
  }
  /// g.alpha = omega_target(g) o alpha o omega_source(g)^-1.
  NormedMorphism act(Elt g, const NormedMorphism& f) const {
    const Perm ws = omega(f.source.tree, g);
    const Perm wt = omega(f.target.tree, g);
    IndexMap alpha(f.alpha.size());
    for (std::size_t i = 0; i < f.alpha.size(); ++i)
      alpha[static_cast<std::size_t>(ws[i])] = wt[static_cast<std::size_t>(f.alpha[i])];
    return {act(g, f.source), act(g, f.target), std::move(alpha)};
  }
  bool is_fixed(const NormedObject& x, SubgroupId h) const {
    const auto& els = group().elements(h);
    return std::all_of(els.begin(), els.end(), [&](Elt e) { return act(e, x) == x; });
  }
  bool is_fixed(const NormedMorphism& f, SubgroupId h) const {
    const auto& els = group().elements(h);
    return std::all_of(els.begin(), els.end(), [&](Elt e) { return act(e, f) == f; });
  }

  NormedObject tensor(const NormedObject& x, const NormedObject& y) const {
    std::vector<int> labels = x.labels;
    labels.insert(labels.end(), y.labels.begin(), y.labels.end());
    return {NormTree::node(pair_label_, 0, {x.tree, y.tree}), std::move(labels)};
  }
  NormedMorphism tensor(const NormedMorphism& f, const NormedMorphism& g) const {
    const int sizes[] = {f.target.length(), g.target.length()};
    return {tensor(f.source, g.source), tensor(f.target, g.target), disjoint_sum({f.alpha, g.alpha}, sizes)};
  }

  NormedObject external_norm(const GSet& t, std::span<const NormedObject> xs) const {
    return external_norm(make_label(t), xs);
  }
  NormedObject external_norm(const LabelPtr& t, std::span<const NormedObject> xs) const {
    if (!(t->hset.group() == group()))
      throw NormedError("external norm: H-set over a different group");
    if (!is_admissible_hset(s_, t->hset))
      throw NormedError("external norm: H-set is not admissible");
    if (static_cast<int>(xs.size()) != t->arity())
      throw NormedError("external norm: " + std::to_string(xs.size()) + " objects for an H-set of size " +
                        std::to_string(t->arity()));
    std::vector<NormTree> kids;
    std::vector<int> labels;
    for (const auto& x : xs) {
      kids.push_back(x.tree);
      labels.insert(labels.end(), x.labels.begin(), x.labels.end());
    }
    return {NormTree::node(t, 0, std::move(kids)), std::move(labels)};
  }
  NormedMorphism external_norm(const GSet& t, std::span<const NormedMorphism> fs) const {
    auto label = make_label(t);
    std::vector<NormedObject> src, tgt;
    std::vector<IndexMap> maps;
    std::vector<int> sizes;
    for (const auto& f : fs) {
      src.push_back(f.source);
      tgt.push_back(f.target);
      maps.push_back(f.alpha);
      sizes.push_back(f.target.length());
    }
    return {external_norm(label, src), external_norm(label, tgt), disjoint_sum(maps, sizes)};
  }

  /// The |xs|-fold tensor product ((x_1 (x) x_2) (x) x_3)...; e when empty.
  NormedObject tensor_power(std::span<const NormedObject> xs) const {
    if (xs.empty())
      return unit();
    NormedObject r = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i)
      r = tensor(r, xs[i]);
    return r;
  }

  // Structure isomorphisms: all identities on leaf positions, except the
  // braiding (block swap) and factor permutations (block permutations).
  NormedMorphism associator(const NormedObject& x, const NormedObject& y, const NormedObject& z) const {
    return {tensor(tensor(x, y), z), tensor(x, tensor(y, z)), identity_perm(x.length() + y.length() + z.length())};
  }
  NormedMorphism left_unitor(const NormedObject& x) const {
    return {tensor(unit(), x), x, identity_perm(x.length())};
  }
  NormedMorphism right_unitor(const NormedObject& x) const {
    return {tensor(x, unit()), x, identity_perm(x.length())};
  }
  NormedMorphism braiding(const NormedObject& x, const NormedObject& y) const {
    const int swap[] = {1, 0};
    const int sizes[] = {x.length(), y.length()};
    return {tensor(x, y), tensor(y, x), block_perm(swap, sizes)};
  }
  /// v_T: (x)_T(xs) -> the plain tensor power of xs; the identity on positions.
  NormedMorphism untwistor(const GSet& t, std::span<const NormedObject> xs) const {
    NormedObject src = external_norm(t, xs);
    const int n = src.length();
    return {std::move(src), tensor_power(xs), identity_perm(n)};
  }
  /// The symmetry moving factor i of the tensor power of xs to position p(i).
  NormedMorphism factor_permutation(std::span<const NormedObject> xs, std::span<const int> p) const {
    std::vector<NormedObject> ys(xs.size());
    std::vector<int> sizes;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      ys[static_cast<std::size_t>(p[i])] = xs[i];
      sizes.push_back(xs[i].length());
    }
    return {tensor_power(xs), tensor_power(ys), block_perm(p, sizes)};
  }

  /// Every label-preserving map x -> y (bijections only for the core), in
  /// lexicographic order of alpha.
  std::vector<NormedMorphism> hom_set(const NormedObject& x, const NormedObject& y,
                                      Morphisms which = Morphisms::all) const {
    std::vector<NormedMorphism> out;
    if (which == Morphisms::core && x.length() != y.length())
      return out;
    std::vector<std::vector<int>> options(x.labels.size());
    for (std::size_t i = 0; i < x.labels.size(); ++i)
      for (int j = 0; j < y.length(); ++j)
        if (y.labels[static_cast<std::size_t>(j)] == x.labels[i])
          options[i].push_back(j);
    IndexMap alpha(x.labels.size());
    std::vector<char> used(static_cast<std::size_t>(y.length()), 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == options.size()) {
        out.push_back({x, y, alpha});
        return;
      }
      for (int j : options[i]) {
        if (which == Morphisms::core && used[static_cast<std::size_t>(j)])
          continue;
        alpha[i] = j;
        used[static_cast<std::size_t>(j)] = 1;
        self(self, i + 1);
        used[static_cast<std::size_t>(j)] = 0;
      }
    };
    rec(rec, 0);
    return out;
  }

private:
  IndexingSystem s_;
  GSet a_;
  LabelPtr unit_label_;
  LabelPtr pair_label_;
};

// -- functors generated by their values on A -----------------------------

/// A G-functor from the discrete G-set `source` into a normed category:
/// images[g a] == g . images[a].
struct FunctorData {
  GSet source;
  std::vector<NormedObject> images;

  const NormedObject& operator()(int a) const { return images[static_cast<std::size_t>(a)]; }
};

/// A G-transformation between two such functors: components[a]: phi(a) -> psi(a).
struct TransformationData {
  std::vector<NormedMorphism> components;

  const NormedMorphism& operator()(int a) const { return components[static_cast<std::size_t>(a)]; }
};

inline bool is_equivariant(const NormedCategory& target, const FunctorData& f) {
  if (static_cast<int>(f.images.size()) != f.source.size() || !(f.source.group() == target.group()) ||
      f.source.acting() != target.group().whole())
    return false;
  for (const auto& x : f.images)
    if (!target.is_object(x))
      return false;
  for (Elt g = 0; g < target.group().order(); ++g)
    for (int a = 0; a < f.source.size(); ++a)
      if (!(f(f.source.act(g, a)) == target.act(g, f(a))))
        return false;
  return true;
}

inline bool is_equivariant(const NormedCategory& target, const GSet& source, const TransformationData& t) {
  if (static_cast<int>(t.components.size()) != source.size())
    return false;
  for (const auto& m : t.components)
    if (!target.is_morphism(m))
      return false;
  for (Elt g = 0; g < target.group().order(); ++g)
    for (int a = 0; a < source.size(); ++a)
      if (!(t(source.act(g, a)) == target.act(g, t(a))))
        return false;
  return true;
}

/// Extends values at orbit base points (orbits() order) equivariantly; each
/// value must be fixed by its base point's stabilizer.
inline FunctorData functor_from_basepoints(const NormedCategory& target, const GSet& source,
                                           std::span<const NormedObject> base_images) {
  auto os = orbits(source);
  if (base_images.size() != os.size())
    throw NormedError("functor data: " + std::to_string(base_images.size()) + " values for " +
                      std::to_string(os.size()) + " orbits");
  const Group& g = target.group();
  FunctorData f{source, std::vector<NormedObject>(static_cast<std::size_t>(source.size()))};
  for (std::size_t k = 0; k < os.size(); ++k) {
    if (!target.is_object(base_images[k]) || !target.is_fixed(base_images[k], os[k].stabilizer))
      throw NormedError("functor data: value at base point " + std::to_string(os[k].base()) +
                        " is not fixed by its stabilizer");
    const auto& reps = g.cosets(os[k].stabilizer).reps;
    for (std::size_t i = 0; i < reps.size(); ++i)
      f.images[static_cast<std::size_t>(os[k].witness[i])] = target.act(reps[i], base_images[k]);
  }
  return f;
}

inline TransformationData transformation_from_basepoints(const NormedCategory& target, const GSet& source,
                                                         std::span<const NormedMorphism> base_components) {
  auto os = orbits(source);
  if (base_components.size() != os.size())
    throw NormedError("transformation data: wrong number of base components");
  const Group& g = target.group();
  TransformationData t{std::vector<NormedMorphism>(static_cast<std::size_t>(source.size()))};
  for (std::size_t k = 0; k < os.size(); ++k) {
    if (!target.is_morphism(base_components[k]) || !target.is_fixed(base_components[k], os[k].stabilizer))
      throw NormedError("transformation data: base component is not fixed by its stabilizer");
    const auto& reps = g.cosets(os[k].stabilizer).reps;
    for (std::size_t i = 0; i < reps.size(); ++i)
      t.components[static_cast<std::size_t>(os[k].witness[i])] = target.act(reps[i], base_components[k]);
  }
  return t;
}

/// a -> (Leaf, a).
inline FunctorData inclusion(const NormedCategory& c) {
  FunctorData f{c.base(), {}};
  for (int a = 0; a < c.base().size(); ++a)
    f.images.push_back(c.leaf(a));
  return f;
}

/// a -> (Leaf, u(a)); cons of this is G(u).
inline FunctorData along(const NormedCategory& target, const EquivariantMap& u) {
  if (!(u.target == target.base()))
    throw NormedError("along: map does not land in the base of the target");
  FunctorData f{u.source, {}};
  for (int a = 0; a < u.source.size(); ++a)
    f.images.push_back(target.leaf(u(a)));
  return f;
}

/// Products of the representatives on the root-to-leaf paths, one per leaf.
inline std::vector<Elt> leaf_paths(const NormTree& t) {
  std::vector<Elt> out;
  auto rec = [&](auto&& self, const NormTree& u, Elt acc) -> void {
    if (u.is_leaf()) {
      out.push_back(acc);
      return;
    }
    const Elt next = u.group().mul(acc, u.rep());
    for (const auto& c : u.children())
      self(self, c, next);
  };
  rec(rec, t, Group::identity());
  return out;
}

/// The strict normed functor cons(phi): G(A) -> G(B) generated by phi.
/// On objects: leaf a -> phi(a), and r (x)_T(x_i) -> r . (x)_T(cons(x_i')) with
/// x_i' the child x_i relabelled by r^-1. Leaf i with path product p therefore
/// lands on the block phi(p^-1 a_i), relabelled by p. On morphisms: the block
/// map, where each block is matched through omega_{phi(a)}(p^-1).
class Cons {
public:
  Cons(NormedCategory source, NormedCategory target, FunctorData phi)
      : source_(std::move(source)), target_(std::move(target)), phi_(std::move(phi)) {
    if (!(phi_.source == source_.base()))
      throw NormedError("cons: functor data is not defined on the source base");
    if (!is_equivariant(target_, phi_))
      throw NormedError("cons: functor data is not equivariant");
  }

  const NormedCategory& source() const { return source_; }
  const NormedCategory& target() const { return target_; }
  const FunctorData& data() const { return phi_; }

  NormedObject operator()(const NormedObject& x) const {
    if (!source_.is_object(x))
      throw NormedError("cons: not an object of the source " + to_string(x));
    return apply(x.tree, x.labels);
  }

  NormedMorphism operator()(const NormedMorphism& f) const {
    if (!source_.is_morphism(f))
      throw NormedError("cons: not a morphism of the source");
    const Blocks bs = blocks(f.source), bt = blocks(f.target);
    IndexMap alpha(static_cast<std::size_t>(bs.start.back()));
    for (std::size_t i = 0; i < f.alpha.size(); ++i) {
      const auto j = static_cast<std::size_t>(f.alpha[i]);
      const Perm& pi = bs.twist[i];
      const Perm& pj = bt.twist[j];
      for (std::size_t k = 0; k < pi.size(); ++k)
        alpha[static_cast<std::size_t>(bs.start[i] + pi[k])] = bt.start[j] + pj[k];
    }
    return {(*this)(f.source), (*this)(f.target), std::move(alpha)};
  }

  /// cons(omega) at x, for omega: phi => psi with psi the data of `other`.
  NormedMorphism transformation(const TransformationData& omega, const Cons& other, const NormedObject& x) const {
    const Group& g = target_.group();
    const auto paths = leaf_paths(x.tree);
    std::vector<IndexMap> maps;
    std::vector<int> sizes;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const int a = source_.base().act(g.inv(paths[i]), x.labels[i]);
      maps.push_back(omega(a).alpha);
      sizes.push_back(omega(a).target.length());
    }
    return {(*this)(x), other(x), disjoint_sum(maps, sizes)};
  }

private:
  struct Blocks {
    std::vector<int> start;  // start[i]: first position of leaf i's block; back() is the total
    std::vector<Perm> twist;  // omega_{phi(a_i)}(p_i^-1)
  };

  Blocks blocks(const NormedObject& x) const {
    const Group& g = target_.group();
    const auto paths = leaf_paths(x.tree);
    Blocks b;
    b.start.push_back(0);
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const NormedObject& img = phi_(x.labels[i]);
      b.twist.push_back(omega(img.tree, g.inv(paths[i])));
      b.start.push_back(b.start.back() + img.length());
    }
    return b;
  }

  NormedObject apply(const NormTree& t, std::span<const int> labels) const {
    if (t.is_leaf())
      return phi_(labels.front());
    const Group& g = target_.group();
    const Elt r = t.rep(), ri = g.inv(r);
    std::vector<NormTree> kids;
    std::vector<int> out;
    std::size_t offset = 0;
    for (const auto& c : t.children()) {
      const auto len = static_cast<std::size_t>(c.length());
      std::vector<int> sub;
      for (std::size_t k = 0; k < len; ++k)
        sub.push_back(source_.base().act(ri, labels[offset + k]));
      NormedObject y = apply(c, sub);
      kids.push_back(std::move(y.tree));
      out.insert(out.end(), y.labels.begin(), y.labels.end());
      offset += len;
    }
    for (int& b : out)
      b = target_.base().act(r, b);
    return {NormTree::node(t.label(), r, std::move(kids)), std::move(out)};
  }

  NormedCategory source_;
  NormedCategory target_;
  FunctorData phi_;
};

/// Generator of cons(psi) o cons(phi): a -> cons(psi)(phi(a)).
inline FunctorData compose(const Cons& psi, const FunctorData& phi) {
  FunctorData f{phi.source, {}};
  for (const auto& x : phi.images)
    f.images.push_back(psi(x));
  return f;
}

// -- the adjunction along a projection ind_H^G T -> G/H -----------------------

/// G(P_T) -| G(P_T)^*, where G(P_T)^* is generated by the H-fixed object
/// ((x)_T, (t_1..t_n)) of G(ind T). Points of ind_H^G T are (coset c, t) at
/// c * |T| + t, so t_i is point i.
class ProjectionAdjunction {
public:
  ProjectionAdjunction(const IndexingSystem& s, const GSet& t)
      : h_(t.acting()),
        t_(checked_admissible(s, t)),
        up_(s, induce(t, s.group().whole())),
        down_(s, orbit_gset(s.group(), t.acting())),
        lower_(up_, down_, along(down_, projection())),
        upper_(down_, up_, build_upper()),
        id_up_(up_, up_, inclusion(up_)),
        id_down_(down_, down_, inclusion(down_)),
        up_down_(up_, up_, compose(upper_, lower_.data())),
        down_up_(down_, down_, compose(lower_, upper_.data())),
        unit_(build_unit()),
        counit_(build_counit()) {}

  SubgroupId subgroup() const { return h_; }
  const GSet& hset() const { return t_; }
  const NormedCategory& upstairs() const { return up_; }
  const NormedCategory& downstairs() const { return down_; }
  const Cons& lower() const { return lower_; }
  const Cons& upper() const { return upper_; }
  /// ((x)_T, (t_1..t_n)).
  NormedObject generator() const {
    std::vector<int> labels(static_cast<std::size_t>(t_.size()));
    for (int i = 0; i < t_.size(); ++i)
      labels[static_cast<std::size_t>(i)] = i;
    return up_.object(NormTree::corolla(t_), labels);
  }
  const TransformationData& unit_data() const { return unit_; }
  const TransformationData& counit_data() const { return counit_; }

  /// x -> G(P)^* G(P) x.
  NormedMorphism unit(const NormedObject& x) const { return id_up_.transformation(unit_, up_down_, x); }
  /// G(P) G(P)^* y -> y.
  NormedMorphism counit(const NormedObject& y) const { return down_up_.transformation(counit_, id_down_, y); }

  /// counit_{G(P) x} o G(P)(unit_x) is the identity of G(P) x.
  bool left_triangle(const NormedObject& x) const {
    NormedMorphism a = lower_(unit(x));
    NormedMorphism b = counit(lower_(x));
    if (!(a.target == b.source) || !(a.source == b.target))
      return false;
    return down_.compose(b, a) == down_.identity(a.source);
  }
  /// G(P)^*(counit_y) o unit_{G(P)^* y} is the identity of G(P)^* y.
  bool right_triangle(const NormedObject& y) const {
    NormedMorphism a = unit(upper_(y));
    NormedMorphism b = upper_(counit(y));
    if (!(a.target == b.source) || !(a.source == b.target))
      return false;
    return up_.compose(b, a) == up_.identity(a.source);
  }

private:
  static const GSet& checked_admissible(const IndexingSystem& s, const GSet& t) {
    if (!(t.group() == s.group()) || !is_admissible_hset(s, t))
      throw NormedError("projection adjunction: T is not an admissible H-set");
    return t;
  }

  EquivariantMap projection() const {
    const GSet& ind = up_.base();
    const int n = t_.size();
    IndexMap m;
    for (int p = 0; p < ind.size(); ++p)
      m.push_back(p / n);
    return make_map(ind, down_.base(), std::move(m));
  }

  FunctorData build_upper() const {
    const NormedObject z = generator();
    if (!up_.is_fixed(z, h_))
      throw NormedError("projection adjunction: the generating object is not fixed");
    return functor_from_basepoints(up_, down_.base(), std::span<const NormedObject>(&z, 1));
  }

  // at t_i: the map [1] -> [n] onto position i; elsewhere by equivariance
  TransformationData build_unit() const {
    const NormedObject z = generator();
    const GSet& ind = up_.base();
    TransformationData d{std::vector<NormedMorphism>(static_cast<std::size_t>(ind.size()))};
    const auto& reps = up_.group().cosets(h_).reps;
    const int n = t_.size();
    for (int p = 0; p < ind.size(); ++p) {
      const Elt g = reps[static_cast<std::size_t>(p / n)];
      const NormedObject gz = up_.act(g, z);
      const int pos = omega(z.tree, g)[static_cast<std::size_t>(p % n)];
      d.components[static_cast<std::size_t>(p)] = up_.morphism(up_.leaf(p), gz, {pos});
    }
    return d;
  }

  // at eH: the unique map ((x)_T, (eH..eH)) -> eH
  TransformationData build_counit() const {
    const NormedObject src = down_up_.data()(0);
    NormedMorphism m = down_.morphism(src, down_.leaf(0), IndexMap(static_cast<std::size_t>(src.length()), 0));
    return transformation_from_basepoints(down_, down_.base(), std::span<const NormedMorphism>(&m, 1));
  }

  SubgroupId h_;
  GSet t_;
  NormedCategory up_;
  NormedCategory down_;
  Cons lower_;
  Cons upper_;
  Cons id_up_;
  Cons id_down_;
  Cons up_down_;
  Cons down_up_;
  TransformationData unit_;
  TransformationData counit_;
};

// -- the Beck-Chevalley mate ---------------------------------------------

/// For K <= H and T an admissible H-set, the square
///   ind_K res T --v--> ind_H T
///        |P'              |P
///       G/K  ----w--->  G/H
/// and the mate G(v) G(P')^* => G(P)^* G(w) of the identity G(P) G(v) = G(w) G(P').
/// The predicted mate is cons of the K-fixed identity map
/// ((x)_{res T}, (t_i)) -> ((x)_T, (t_i)).
struct MateComponent {
  NormedMorphism mate;
  NormedMorphism predicted;
};

class BeckChevalleyMate {
public:
  BeckChevalleyMate(const IndexingSystem& s, SubgroupId k, const GSet& t)
      : k_(k),
        big_(s, t),
        small_(s, checked_restrict(t, k)),
        v_(small_.upstairs(), big_.upstairs(), along(big_.upstairs(), v_map())),
        w_(small_.downstairs(), big_.downstairs(), along(big_.downstairs(), w_map())),
        pred_src_(small_.downstairs(), big_.upstairs(), compose(v_, small_.upper().data())),
        pred_tgt_(small_.downstairs(), big_.upstairs(), compose(big_.upper(), w_.data())),
        mu_(predicted_data()) {}

  const NormedCategory& source() const { return small_.downstairs(); }
  const ProjectionAdjunction& outer() const { return big_; }
  const ProjectionAdjunction& inner() const { return small_; }

  /// (G(P)^* G(w) counit'_y) o unit_{G(v) G(P')^* y}, and the prediction at y.
  MateComponent component(const NormedObject& y) const {
    NormedMorphism first = big_.unit(v_(small_.upper()(y)));
    NormedMorphism second = big_.upper()(w_(small_.counit(y)));
    return {big_.upstairs().compose(second, first), pred_src_.transformation(mu_, pred_tgt_, y)};
  }

private:
  static GSet checked_restrict(const GSet& t, SubgroupId k) {
    if (!t.group().is_subgroup_of(k, t.acting()))
      throw NormedError("mate: K is not a subgroup of H");
    return restrict(t, k);
  }

  // (cK, t) -> c . (eH, t)
  EquivariantMap v_map() const {
    const GSet& src = small_.upstairs().base();
    const GSet& tgt = big_.upstairs().base();
    const int n = big_.hset().size();
    const auto& reps = tgt.group().cosets(k_).reps;
    IndexMap m;
    for (int p = 0; p < src.size(); ++p)
      m.push_back(tgt.act(reps[static_cast<std::size_t>(p / n)], p % n));
    return make_map(src, tgt, std::move(m));
  }

  EquivariantMap w_map() const {
    const GSet& src = small_.downstairs().base();
    const GSet& tgt = big_.downstairs().base();
    const Group& g = src.group();
    const auto& reps = g.cosets(k_).reps;
    IndexMap m;
    for (int c = 0; c < src.size(); ++c)
      m.push_back(tgt.act(reps[static_cast<std::size_t>(c)], 0));
    return make_map(src, tgt, std::move(m));
  }

  TransformationData predicted_data() const {
    const NormedObject src = pred_src_.data()(0);
    const NormedObject tgt = pred_tgt_.data()(0);
    NormedMorphism m = big_.upstairs().morphism(src, tgt, identity_perm(src.length()));
    return transformation_from_basepoints(big_.upstairs(), source().base(), std::span<const NormedMorphism>(&m, 1));
  }

  SubgroupId k_;
  ProjectionAdjunction big_;
  ProjectionAdjunction small_;
  Cons v_;
  Cons w_;
  Cons pred_src_;
  Cons pred_tgt_;
  TransformationData mu_;
};

// -- coproducts ----------------------------------------------------------

/// G(A) x G(B) and G(A + B) are equivalent: Phi(x, y) = G(i_A) x (x) G(i_B) y,
/// Psi = (cons psi_A, cons psi_B) with psi_A the inclusion on A and constant
/// at the unit on B. Points of A + B are those of A, then those of B.
class SumEquivalence {
public:
  SumEquivalence(const IndexingSystem& s, GSet a, GSet b)
      : na_(a.size()),
        ca_(s, a),
        cb_(s, b),
        cs_(s, disjoint_union(a, b)),
        inc_a_(ca_, cs_, along(cs_, inclusion_map(a, 0))),
        inc_b_(cb_, cs_, along(cs_, inclusion_map(b, a.size()))),
        psi_a_(cs_, ca_, retraction(ca_, 0)),
        psi_b_(cs_, cb_, retraction(cb_, a.size())) {}

  const NormedCategory& left() const { return ca_; }
  const NormedCategory& right() const { return cb_; }
  const NormedCategory& sum() const { return cs_; }

  NormedObject phi(const NormedObject& x, const NormedObject& y) const { return cs_.tensor(inc_a_(x), inc_b_(y)); }
  NormedMorphism phi(const NormedMorphism& f, const NormedMorphism& g) const {
    return cs_.tensor(inc_a_(f), inc_b_(g));
  }
  std::pair<NormedObject, NormedObject> psi(const NormedObject& z) const { return {psi_a_(z), psi_b_(z)}; }
  std::pair<NormedMorphism, NormedMorphism> psi(const NormedMorphism& m) const { return {psi_a_(m), psi_b_(m)}; }

  /// Phi Psi z -> z: the leaves labelled in A come first in Phi Psi z, then
  /// those labelled in B, each in their order in z.
  NormedMorphism eta(const NormedObject& z) const {
    IndexMap alpha;
    for (int i = 0; i < z.length(); ++i)
      if (z.labels[static_cast<std::size_t>(i)] < na_)
        alpha.push_back(i);
    for (int i = 0; i < z.length(); ++i)
      if (z.labels[static_cast<std::size_t>(i)] >= na_)
        alpha.push_back(i);
    auto [x, y] = psi(z);
    return cs_.morphism(phi(x, y), z, std::move(alpha));
  }
  /// Psi Phi (x, y) -> (x, y): identities on positions.
  std::pair<NormedMorphism, NormedMorphism> epsilon(const NormedObject& x, const NormedObject& y) const {
    auto [px, py] = psi(phi(x, y));
    return {ca_.morphism(px, x, identity_perm(x.length())), cb_.morphism(py, y, identity_perm(y.length()))};
  }

private:
  EquivariantMap inclusion_map(const GSet& part, int offset) const {
    IndexMap m;
    for (int p = 0; p < part.size(); ++p)
      m.push_back(p + offset);
    return make_map(part, cs_.base(), std::move(m));
  }

  FunctorData retraction(const NormedCategory& part, int offset) const {
    FunctorData f{cs_.base(), {}};
    for (int c = 0; c < cs_.base().size(); ++c) {
      const int p = c - offset;
      f.images.push_back(p >= 0 && p < part.base().size() ? part.leaf(p) : part.unit());
    }
    return f;
  }

  int na_;
  NormedCategory ca_;
  NormedCategory cb_;
  NormedCategory cs_;
  Cons inc_a_;
  Cons inc_b_;
  Cons psi_a_;
  Cons psi_b_;
};

// -- fixed subcategories and slices --------------------------------------

/// One isomorphism class of H-sets over A: its key, the order of its
/// automorphism group, and how many enumerated objects fell into it.
struct OverClass {
  OverKey key;
  long automorphisms = 0;
  long members = 0;
};

/// Calls visit(x, t, u) for every H-fixed object x of G(A) of length at most
/// max_length with at most length + 1 + slack vertices; t is T_x, the leaf
/// positions as an H-set, and u its labels. Every H-fixed object is
/// isomorphic to the corolla on T_x, which has length + 1 vertices, so any
/// slack >= 0 reaches every class.
template <typename Visit>
void for_each_fixed_object(const NormedCategory& c, SubgroupId h, int max_length, int slack, Visit&& visit) {
  if (max_length < 0 || slack < 0)
    throw NormedError("fixed objects: negative bound");
  const Group& g = c.group();
  const GSet& a = c.base();
  FixedTreeGenerator gen(c.system(), max_length + 1 + slack);
  std::map<SubgroupId, std::vector<int>> fixed;  // A^K by K
  for (int n = 0; n <= max_length; ++n)
    for (int v = 1; v <= n + 1 + slack; ++v)
      for (const auto& t : gen.exact(h, v, n)) {
        const GSet tt = equivariant_orbit_set(t, h, g);
        const auto os = orbits(tt);
        std::vector<const std::vector<int>*> choices;
        for (const auto& o : os) {
          auto it = fixed.find(o.stabilizer);
          if (it == fixed.end())
            it = fixed.emplace(o.stabilizer, fixed_points(a, o.stabilizer)).first;
          choices.push_back(&it->second);
        }
        std::vector<int> labels(static_cast<std::size_t>(n), -1);
        auto rec = [&](auto&& self, std::size_t oi) -> void {
          if (oi == os.size()) {
            visit(NormedObject{t, labels}, tt, static_cast<const std::vector<int>&>(labels));
            return;
          }
          const auto& reps = g.cosets(os[oi].stabilizer, h).reps;
          for (int x : *choices[oi]) {
            for (std::size_t i = 0; i < reps.size(); ++i)
              labels[static_cast<std::size_t>(os[oi].witness[i])] = a.act(reps[i], x);
            self(self, oi + 1);
          }
        };
        rec(rec, 0);
      }
}

/// Isomorphism classes of G(A)^H (core morphisms) among the objects of
/// for_each_fixed_object. Two fixed objects are isomorphic iff their leaf
/// H-sets are isomorphic over A; automorphism orders are counted on one
/// representative as the H-fixed label-preserving bijections.
inline std::vector<OverClass> fixed_classes(const NormedCategory& c, SubgroupId h, int max_length, int slack) {
  std::map<OverKey, OverClass> classes;
  for_each_fixed_object(c, h, max_length, slack, [&](const NormedObject& x, const GSet& t, const std::vector<int>& u) {
    OverKey key = over_key(t, u);
    auto [it, fresh] = classes.try_emplace(key, OverClass{key, 0, 0});
    if (fresh)
      for (const auto& m : c.hom_set(x, x, Morphisms::core))
        it->second.automorphisms += c.is_fixed(m, h);
    ++it->second.members;
  });
  std::vector<OverClass> out;
  for (auto& [k, v] : classes)
    out.push_back(std::move(v));
  return out;
}

/// An object of I(H)/res A: an admissible H-set with an H-map to A.
struct SliceObject {
  GSet set;
  IndexMap map;
};

/// Objects of I(H)/res A with |T| <= size_bound, one T per isomorphism class
/// of admissible H-sets and every H-map T -> res A (found by filtering all
/// functions).
inline std::vector<SliceObject> slice_objects(const IndexingSystem& s, SubgroupId h, const GSet& a, int size_bound) {
  if (size_bound < 0)
    throw NormedError("slice: negative size bound");
  const GSet ra = restrict(a, h);
  std::vector<SliceObject> out;
  for (const auto& cls : hset_classes(s.group(), h, size_bound)) {
    if (!is_admissible_hset(s, cls.set))
      continue;
    const int n = cls.set.size();
    IndexMap u(static_cast<std::size_t>(n), 0);
    for (;;) {
      if (is_equivariant(cls.set, ra, u))
        out.push_back({cls.set, u});
      int i = 0;
      while (i < n && ++u[static_cast<std::size_t>(i)] == a.size())
        u[static_cast<std::size_t>(i++)] = 0;
      if (i == n || a.size() == 0)
        break;
    }
  }
  return out;
}

/// H-maps x -> y over A, by filtering all functions.
inline std::vector<IndexMap> slice_morphisms(const SliceObject& x, const SliceObject& y) {
  std::vector<IndexMap> out;
  const int n = x.set.size(), m = y.set.size();
  if (m == 0) {
    if (n == 0)
      out.push_back({});
    return out;
  }
  IndexMap f(static_cast<std::size_t>(n), 0);
  for (;;) {
    bool over = true;
    for (int i = 0; i < n && over; ++i)
      over = y.map[static_cast<std::size_t>(f[static_cast<std::size_t>(i)])] == x.map[static_cast<std::size_t>(i)];
    if (over && is_equivariant(x.set, y.set, f))
      out.push_back(f);
    int i = 0;
    while (i < n && ++f[static_cast<std::size_t>(i)] == m)
      f[static_cast<std::size_t>(i++)] = 0;
    if (i == n)
      break;
  }
  return out;
}

/// Isomorphism classes of the core of I(H)/res A with |T| <= size_bound.
inline std::vector<OverClass> slice_classes(const IndexingSystem& s, SubgroupId h, const GSet& a, int size_bound) {
  std::map<OverKey, OverClass> classes;
  for (const auto& x : slice_objects(s, h, a, size_bound)) {
    OverKey key = over_key(x.set, x.map);
    auto [it, fresh] = classes.try_emplace(key, OverClass{key, 0, 0});
    if (fresh)
      for (const auto& f : slice_morphisms(x, x))
        it->second.automorphisms += is_bijection(f, x.set.size());
    ++it->second.members;
  }
  std::vector<OverClass> out;
  for (auto& [k, v] : classes)
    out.push_back(std::move(v));
  return out;
}

// -- freeness --------------------------------------------------------------

/// The objects of F(A) reachable from the points of A by the unit, the
/// external norms and the G-action, with at most `budget` vertices. Built
/// only through the category's operations, so comparing with
/// (trees of length n) x A^n checks that nothing is missed or identified.
inline std::vector<NormedObject> generated_objects(const NormedCategory& c, int budget) {
  std::vector<std::vector<NormedObject>> by_v(static_cast<std::size_t>(std::max(budget, 0)) + 1);
  if (budget < 1)
    return {};
  const Group& g = c.group();
  const auto labels = admissible_labels(c.system(), budget - 1);
  for (int v = 1; v <= budget; ++v) {
    std::set<NormedObject> found;
    auto add = [&](const NormedObject& x) {
      for (Elt e = 0; e < g.order(); ++e)
        found.insert(c.act(e, x));
    };
    if (v == 1)
      for (int a = 0; a < c.base().size(); ++a)
        add(c.leaf(a));
    for (const auto& lab : labels) {
      const int k = lab->arity();
      if (k == 0) {
        if (v == 1)
          add(c.external_norm(lab, {}));
        continue;
      }
      if (k + 1 > v)
        continue;
      std::vector<NormedObject> kids(static_cast<std::size_t>(k));
      auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == k) {
          if (left == 0)
            add(c.external_norm(lab, kids));
          return;
        }
        for (int u = 1; u <= left - (k - 1 - i); ++u)
          for (const auto& x : by_v[static_cast<std::size_t>(u)]) {
            kids[static_cast<std::size_t>(i)] = x;
            self(self, i + 1, left - u);
          }
      };
      rec(rec, 0, v - 1);
    }
    by_v[static_cast<std::size_t>(v)].assign(found.begin(), found.end());
  }
  std::vector<NormedObject> out;
  for (const auto& level : by_v)
    out.insert(out.end(), level.begin(), level.end());
  return out;
}

} // namespace ninf

#endif // NINF_NORMED_CAT_HPP_
