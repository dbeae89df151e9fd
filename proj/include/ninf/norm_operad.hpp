// Formal external norms and the free G-operad they generate.
//
// A norm tree is a planar tree: a leaf is the identity symbol, and an inner
// node r (x)_T carries an admissible H-set T (its point order fixes
// sigma: H -> Sigma_|T|), the minimal representative r of a coset rH, and
// exactly |T| children. Trees are immutable and share subtrees.
//
// Size bounds count vertices, leaves included: a node decorated by the empty
// set has length 0, so length alone does not bound anything.

#ifndef NINF_NORM_OPERAD_HPP_
#define NINF_NORM_OPERAD_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "group.hpp"
#include "gset.hpp"
#include "indexing.hpp"
#include "perm.hpp"

namespace ninf {

class OperadError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The H-set decorating a node. Shared between trees so that enumeration
/// does not copy action tables.
struct NodeLabel {
  GSet hset;
  SubgroupId subgroup() const { return hset.acting(); }
  int arity() const { return hset.size(); }
};
using LabelPtr = std::shared_ptr<const NodeLabel>;

inline LabelPtr make_label(GSet t) { return std::make_shared<const NodeLabel>(NodeLabel{std::move(t)}); }

class NormTree {
public:
  /// The identity symbol.
  NormTree() = default;
  static NormTree leaf() { return {}; }

  /// r (x)_T (children). Throws OperadError unless r is the canonical
  /// representative of its coset of G/H and there are |T| children.
  static NormTree node(LabelPtr label, Elt rep, std::vector<NormTree> children) {
    const GSet& t = label->hset;
    const Group& g = t.group();
    if (rep < 0 || rep >= g.order())
      throw OperadError("norm tree: representative out of range");
    const auto& cos = g.cosets(t.acting());
    if (cos.reps[static_cast<std::size_t>(cos.coset_of[static_cast<std::size_t>(rep)])] != rep)
      throw OperadError("norm tree: " + std::to_string(rep) + " is not a canonical coset representative");
    if (static_cast<int>(children.size()) != t.size())
      throw OperadError("norm tree: node over a set of size " + std::to_string(t.size()) + " has " +
                        std::to_string(children.size()) + " children");
    for (const auto& c : children)
      if (!c.is_leaf() && !(c.group() == g))
        throw OperadError("norm tree: children over a different group");
    return unchecked(std::move(label), rep, std::move(children));
  }
  static NormTree node(const GSet& t, Elt rep, std::vector<NormTree> children) {
    return node(make_label(t), rep, std::move(children));
  }
  /// (x)_T = 1 (x)_T (Id, ..., Id).
  static NormTree corolla(const GSet& t) { return node(t, 0, std::vector<NormTree>(static_cast<std::size_t>(t.size()))); }
  static NormTree corolla(LabelPtr label) {
    auto n = static_cast<std::size_t>(label->arity());
    return node(std::move(label), 0, std::vector<NormTree>(n));
  }

  bool is_leaf() const { return !n_; }
  const LabelPtr& label() const { return n_->label; }
  const GSet& hset() const { return n_->label->hset; }
  const Group& group() const { return hset().group(); }
  SubgroupId subgroup() const { return hset().acting(); }
  Elt rep() const { return n_->rep; }
  const std::vector<NormTree>& children() const { return n_->children; }
  const NormTree& child(int i) const { return n_->children[static_cast<std::size_t>(i)]; }
  int arity() const { return n_ ? static_cast<int>(n_->children.size()) : 0; }
  int length() const { return n_ ? n_->length : 1; }
  int vertices() const { return n_ ? n_->vertices : 1; }

  friend int compare(const NormTree& a, const NormTree& b) {
    if (a.n_ == b.n_)
      return 0;
    if (!a.n_ || !b.n_)
      return a.n_ ? 1 : -1;
    if (a.subgroup() != b.subgroup())
      return a.subgroup() < b.subgroup() ? -1 : 1;
    if (a.n_->label != b.n_->label && !(a.hset() == b.hset()))
      return a.hset() < b.hset() ? -1 : 1;
    if (a.rep() != b.rep())
      return a.rep() < b.rep() ? -1 : 1;
    for (int i = 0; i < a.arity(); ++i)
      if (int c = compare(a.child(i), b.child(i)))
        return c;
    return 0;
  }
  bool operator==(const NormTree& o) const { return compare(*this, o) == 0; }
  bool operator<(const NormTree& o) const { return compare(*this, o) < 0; }

private:
  friend NormTree act(Elt g, const NormTree& t);
  friend NormTree compose_trees(const NormTree& theta, std::span<const NormTree> taus);
  template <typename F>
  friend void for_each_tree_exact(const std::vector<LabelPtr>&, const Group&, int,
                                  std::vector<std::vector<NormTree>>&, F&&);

  struct Node {
    LabelPtr label;
    Elt rep;
    std::vector<NormTree> children;
    int length;
    int vertices;
  };

  static NormTree unchecked(LabelPtr label, Elt rep, std::vector<NormTree> children) {
    int len = 0, verts = 1;
    for (const auto& c : children) {
      len += c.length();
      verts += c.vertices();
    }
    NormTree t;
    t.n_ = std::make_shared<const Node>(Node{std::move(label), rep, std::move(children), len, verts});
    return t;
  }

  std::shared_ptr<const Node> n_;
};

inline std::string to_string(const NormTree& t) {
  if (t.is_leaf())
    return "1";
  std::string s = t.group().element_name(t.rep()) + "*N[H=" + std::to_string(t.subgroup()) + ";";
  const GSet& x = t.hset();
  bool first = true;
  for (SubgroupId k : orbit_type(x)) {
    s += first ? "" : ",";
    s += std::to_string(k);
    first = false;
  }
  s += "](";
  for (int i = 0; i < t.arity(); ++i)
    s += (i ? "," : "") + to_string(t.child(i));
  return s + ")";
}

namespace detail {

/// gr = r'h with r' canonical; returns (r', h).
inline std::pair<Elt, Elt> split_coset(const Group& g, SubgroupId h, Elt x, Elt r) {
  const auto& cos = g.cosets(h);
  Elt gr = g.mul(x, r);
  Elt r2 = cos.reps[static_cast<std::size_t>(cos.coset_of[static_cast<std::size_t>(gr)])];
  return {r2, g.mul(g.inv(r2), gr)};
}

} // namespace detail

/// g . (r (x)_T (t_1..t_n)) = r' (x)_T (h t_{s^-1 1}, ..., h t_{s^-1 n}) with gr = r'h, s = sigma(h).
inline NormTree act(Elt g, const NormTree& t) {
  if (t.is_leaf() || g == 0)
    return t;
  auto [r2, h] = detail::split_coset(t.group(), t.subgroup(), g, t.rep());
  const Perm& s = t.hset().perm(h);
  std::vector<NormTree> kids(static_cast<std::size_t>(t.arity()));
  for (int i = 0; i < t.arity(); ++i)
    kids[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])] = act(h, t.child(i));
  return NormTree::unchecked(t.label(), r2, std::move(kids));
}

/// omega_theta(g): where each leaf of theta lands in g.theta.
/// Leaf -> id; node -> sigma(h)[[omega_{t_1}(h), ..., omega_{t_n}(h)]].
inline Perm omega(const NormTree& t, Elt g) {
  if (t.is_leaf())
    return {0};
  if (g == 0)
    return identity_perm(t.length());
  auto [r2, h] = detail::split_coset(t.group(), t.subgroup(), g, t.rep());
  std::vector<Perm> inner;
  inner.reserve(static_cast<std::size_t>(t.arity()));
  for (const auto& c : t.children())
    inner.push_back(omega(c, h));
  return nested_perm(t.hset().perm(h), inner);
}

/// Nonsymmetric grafting gamma(theta; tau_1..tau_n): the inputs are handed to
/// the children of each node left to right, in blocks of their lengths.
/// This is the free nonsymmetric operad in sets; it ignores the G-action
/// (compose_sym is the equivariant composition).
inline NormTree compose_trees(const NormTree& theta, std::span<const NormTree> taus) {
  if (static_cast<int>(taus.size()) != theta.length())
    throw OperadError("compose: " + std::to_string(taus.size()) + " inputs for an operation of arity " +
                      std::to_string(theta.length()));
  if (theta.is_leaf())
    return taus.front();
  std::vector<NormTree> kids;
  kids.reserve(static_cast<std::size_t>(theta.arity()));
  std::size_t offset = 0;
  for (const auto& c : theta.children()) {
    auto len = static_cast<std::size_t>(c.length());
    kids.push_back(compose_trees(c, taus.subspan(offset, len)));
    offset += len;
  }
  return NormTree::unchecked(theta.label(), theta.rep(), std::move(kids));
}

namespace detail {

/// Grafting inside the G-operad. A node r (x)_T (t_i) is r . gamma((x)_T; t_i)
/// (the reading the action and the free extension are built on), so input j
/// arrives as p_j^-1 . tau_j, with p_j the product of the representatives on
/// the path to leaf j. `w` collects omega_{tau_j}(p_j^-1), shifted to its block.
inline NormTree graft_twisted(const NormTree& theta, std::span<const NormTree> taus, Elt twist,
                              std::size_t& next, Perm& w) {
  if (theta.is_leaf()) {
    const NormTree& tau = taus[next++];
    const int base = static_cast<int>(w.size());
    for (int x : omega(tau, twist))
      w.push_back(base + x);
    return act(twist, tau);
  }
  const Group& g = theta.group();
  Elt inner = g.mul(g.inv(theta.rep()), twist);
  std::vector<NormTree> kids;
  kids.reserve(static_cast<std::size_t>(theta.arity()));
  for (const auto& c : theta.children())
    kids.push_back(graft_twisted(c, taus, inner, next, w));
  return NormTree::node(theta.label(), theta.rep(), std::move(kids));
}

} // namespace detail

inline bool is_fixed(const NormTree& t, SubgroupId h) {
  if (t.is_leaf())
    return true;
  for (Elt x : t.group().elements(h))
    if (!(act(x, t) == t))
      return false;
  return true;
}

/// Every node decoration is admissible for s and lives over s's group.
inline bool is_valid_tree(const IndexingSystem& s, const NormTree& t) {
  if (t.is_leaf())
    return true;
  if (!(t.group() == s.group()) || !is_admissible_hset(s, t.hset()))
    return false;
  for (const auto& c : t.children())
    if (!is_valid_tree(s, c))
      return false;
  return true;
}

// -- symmetric operations ------------------------------------------------

/// (theta, delta) in T_n x Sigma_n, read as theta . delta: input i of the
/// operation is fed to leaf delta(i).
struct SymOperation {
  NormTree tree;
  Perm perm;

  SymOperation() : perm{0} {}
  explicit SymOperation(NormTree t) : tree(std::move(t)), perm(identity_perm(tree.length())) {}
  SymOperation(NormTree t, Perm p) : tree(std::move(t)), perm(std::move(p)) {
    if (static_cast<int>(perm.size()) != tree.length() || !is_perm(perm))
      throw OperadError("operation: permutation degree does not match the tree length");
  }

  int arity() const { return tree.length(); }
  bool operator==(const SymOperation& o) const { return tree == o.tree && perm == o.perm; }
  bool operator<(const SymOperation& o) const {
    int c = compare(tree, o.tree);
    return c != 0 ? c < 0 : perm < o.perm;
  }
};

/// g . (theta, delta) = (g theta, omega_theta(g) o delta).
inline SymOperation act(Elt g, const SymOperation& x) {
  return SymOperation(act(g, x.tree), compose(omega(x.tree, g), x.perm));
}

/// Right Sigma action: (theta, delta) . s = (theta, delta o s).
inline SymOperation right_act(const SymOperation& x, std::span<const int> s) {
  return SymOperation(x.tree, compose(x.perm, s));
}

/// Composition of the free G-operad. With (theta, d) = theta . d and
/// gamma(x.s; y_i.d_i) = gamma(x; y_{s^-1 j}) . s[[d_i]], the inputs are
/// reordered by d, grafted with the representative twist of graft_twisted,
/// and the permutation is W o d[[perm y_1, ..., perm y_n]].
inline SymOperation compose_sym(const SymOperation& x, std::span<const SymOperation> ys) {
  if (static_cast<int>(ys.size()) != x.arity())
    throw OperadError("compose: " + std::to_string(ys.size()) + " inputs for an operation of arity " +
                      std::to_string(x.arity()));
  Perm inv = inverse(x.perm);
  std::vector<NormTree> taus;
  std::vector<Perm> inner;
  taus.reserve(ys.size());
  inner.reserve(ys.size());
  for (std::size_t j = 0; j < ys.size(); ++j)
    taus.push_back(ys[static_cast<std::size_t>(inv[j])].tree);
  for (const auto& y : ys)
    inner.push_back(y.perm);
  std::size_t next = 0;
  Perm w;
  NormTree t = detail::graft_twisted(x.tree, taus, 0, next, w);
  return SymOperation(std::move(t), compose(w, nested_perm(x.perm, inner)));
}

// -- graph subgroups ---------------------------------------------------

/// Gamma = {(h, sigma(h)) : h in H} in G x Sigma_n.
struct GraphSubgroup {
  Group group;
  SubgroupId subgroup = 0;
  int degree = 0;
  std::vector<Perm> sigma;  // indexed by element of G; empty outside H

  const Perm& operator()(Elt h) const { return sigma[static_cast<std::size_t>(h)]; }

  bool is_homomorphism() const {
    for (Elt a : group.elements(subgroup))
      for (Elt b : group.elements(subgroup))
        if ((*this)(group.mul(a, b)) != compose((*this)(a), (*this)(b)))
          return false;
    return true;
  }
  /// The H-set on 0..degree-1 this graph corresponds to.
  GSet hset() const {
    return GSet::from_function(group, subgroup, degree, [&](Elt h, int i) { return (*this)(h)[static_cast<std::size_t>(i)]; });
  }
};

inline GraphSubgroup graph_subgroup_of(const GSet& t) {
  GraphSubgroup r{t.group(), t.acting(), t.size(), std::vector<Perm>(static_cast<std::size_t>(t.group().order()))};
  for (Elt h : t.acting_elements())
    r.sigma[static_cast<std::size_t>(h)] = t.perm(h);
  return r;
}

/// (theta, d) is Gamma-fixed iff theta is H-fixed and omega_theta(h) o d = d o sigma(h).
inline bool is_fixed(const SymOperation& x, const GraphSubgroup& gamma) {
  if (x.arity() != gamma.degree)
    return false;
  for (Elt h : gamma.group.elements(gamma.subgroup)) {
    if (!(act(h, x.tree) == x.tree))
      return false;
    if (compose(omega(x.tree, h), x.perm) != compose(x.perm, gamma(h)))
      return false;
  }
  return true;
}

/// T_theta: leaf positions of an H-fixed theta with h acting by omega_theta(h).
inline GSet equivariant_orbit_set(const NormTree& t, SubgroupId h, const Group& g) {
  if (!t.is_leaf() && !(t.group() == g))
    throw OperadError("orbit set: tree over a different group");
  if (!is_fixed(t, h))
    throw OperadError("orbit set: tree is not fixed by subgroup " + std::to_string(h));
  std::vector<Perm> act(static_cast<std::size_t>(g.order()));
  for (Elt x : g.elements(h))
    act[static_cast<std::size_t>(x)] = omega(t, x);
  return GSet(g, h, t.length(), std::move(act));
}
inline GSet equivariant_orbit_set(const NormTree& t, SubgroupId h) {
  if (t.is_leaf())
    throw OperadError("orbit set: the group of a bare leaf is unknown; pass it explicitly");
  return equivariant_orbit_set(t, h, t.group());
}

// -- enumeration ---------------------------------------------------------

/// Node decorations: for each subgroup H (ascending), one admissible H-set
/// per isomorphism class of size <= max_arity, in hset_classes() order.
inline std::vector<LabelPtr> admissible_labels(const IndexingSystem& s, int max_arity) {
  const Group& g = s.group();
  std::vector<LabelPtr> out;
  for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
    for (auto& c : hset_classes(g, h, max_arity))
      if (is_admissible_hset(s, c.set))
        out.push_back(make_label(std::move(c.set)));
  return out;
}

/// Calls f on every tree with exactly `v` vertices built from `labels`,
/// using by_v[u] (all trees with u < v vertices) for children.
template <typename F>
void for_each_tree_exact(const std::vector<LabelPtr>& labels, const Group& g, int v,
                         std::vector<std::vector<NormTree>>& by_v, F&& f) {
  if (v == 1)
    f(NormTree::leaf());
  for (const auto& lab : labels) {
    const int k = lab->arity();
    if (k + 1 > v || (k == 0 && v != 1))
      continue;
    const auto& reps = g.cosets(lab->subgroup()).reps;
    // distribute v - 1 vertices over k children, each at least 1
    std::vector<int> sizes(static_cast<std::size_t>(k), 1);
    std::vector<NormTree> kids(static_cast<std::size_t>(k));
    auto fill = [&](auto&& self, int i) -> void {
      if (i == k) {
        for (Elt r : reps)
          f(NormTree::unchecked(lab, r, kids));
        return;
      }
      for (const auto& c : by_v[static_cast<std::size_t>(sizes[static_cast<std::size_t>(i)])]) {
        kids[static_cast<std::size_t>(i)] = c;
        self(self, i + 1);
      }
    };
    auto split = [&](auto&& self, int i, int left) -> void {
      if (i == k - 1) {
        sizes[static_cast<std::size_t>(i)] = left;
        fill(fill, 0);
        return;
      }
      for (int s = 1; s <= left - (k - 1 - i); ++s) {
        sizes[static_cast<std::size_t>(i)] = s;
        self(self, i + 1, left - s);
      }
    };
    if (k == 0)
      fill(fill, 0);
    else
      split(split, 0, v - 1);
  }
}

/// Calls f on every tree over s with at most `budget` vertices, grouped by
/// vertex count. Only trees smaller than the budget are held in memory.
template <typename F>
void for_each_tree(const IndexingSystem& s, int budget, F&& f) {
  if (budget < 1)
    return;
  auto labels = admissible_labels(s, budget - 1);
  std::vector<std::vector<NormTree>> by_v(static_cast<std::size_t>(budget) + 1);
  for (int v = 1; v <= budget; ++v) {
    const bool keep = v < budget;
    for_each_tree_exact(labels, s.group(), v, by_v, [&](const NormTree& t) {
      if (keep)
        by_v[static_cast<std::size_t>(v)].push_back(t);
      f(t);
    });
  }
}

inline std::vector<NormTree> enumerate_trees(const IndexingSystem& s, int budget) {
  std::vector<NormTree> out;
  for_each_tree(s, budget, [&](const NormTree& t) { out.push_back(t); });
  return out;
}

inline long count_trees_of_length(const IndexingSystem& s, int n, int budget) {
  long c = 0;
  for_each_tree(s, budget, [&](const NormTree& t) { c += t.length() == n; });
  return c;
}

/// All H-fixed trees over s with at most `budget` vertices, built directly:
/// at a node r (x)_T with H <= rKr^-1, the children over each orbit of
/// res_{r^-1 H r} T are determined by one child fixed by the point stabilizer.
class FixedTreeGenerator {
public:
  FixedTreeGenerator(const IndexingSystem& s, int budget)
      : group_(s.group()), budget_(budget), labels_(admissible_labels(s, std::max(budget - 1, 0))) {}

  std::vector<NormTree> all(SubgroupId h) {
    std::vector<NormTree> out;
    for (int v = 1; v <= budget_; ++v) {
      const auto& e = exact(h, v);
      out.insert(out.end(), e.begin(), e.end());
    }
    return out;
  }

  const std::vector<NormTree>& exact(SubgroupId h, int v) {
    auto key = std::make_pair(h, v);
    auto it = memo_.find(key);
    if (it != memo_.end())
      return it->second;
    std::vector<NormTree> out;
    if (v == 1)
      out.push_back(NormTree::leaf());
    for (const auto& lab : labels_) {
      const SubgroupId k = lab->subgroup();
      const int arity = lab->arity();
      if (arity + 1 > v || (arity == 0 && v != 1))
        continue;
      for (Elt r : group_.cosets(k).reps) {
        SubgroupId hr = group_.conjugate(h, r);  // r^-1 H r
        if (!group_.is_subgroup_of(hr, k))
          continue;
        auto orbs = orbits(restrict(lab->hset, hr));
        std::vector<NormTree> kids(static_cast<std::size_t>(arity));
        const auto& cos_reps_of = [&](const Orbit& o) { return group_.cosets(o.stabilizer, hr).reps; };
        auto rec = [&](auto&& self, std::size_t oi, int left) -> void {
          if (oi == orbs.size()) {
            if (left == 0)
              out.push_back(NormTree::node(lab, r, kids));
            return;
          }
          const Orbit& o = orbs[oi];
          const int size = static_cast<int>(o.points.size());
          // remaining orbits each need at least one vertex per point
          int rest = 0;
          for (std::size_t j = oi + 1; j < orbs.size(); ++j)
            rest += static_cast<int>(orbs[j].points.size());
          auto reps = cos_reps_of(o);
          for (int u = 1; u * size <= left - rest; ++u) {
            for (const auto& c : exact(o.stabilizer, u)) {
              for (std::size_t i = 0; i < reps.size(); ++i)
                kids[static_cast<std::size_t>(o.witness[i])] = act(reps[i], c);
              self(self, oi + 1, left - u * size);
            }
          }
        };
        rec(rec, 0, v - 1);
      }
    }
    std::sort(out.begin(), out.end());
    return memo_.emplace(key, std::move(out)).first->second;
  }

  /// The H-fixed trees with exactly v vertices and exactly `len` leaves.
  /// Memoizes only what a fixed length needs, so it stays small where
  /// exact(h, v) does not.
  const std::vector<NormTree>& exact(SubgroupId h, int v, int len) {
    auto key = std::make_tuple(h, v, len);
    auto it = memo_len_.find(key);
    if (it != memo_len_.end())
      return it->second;
    std::vector<NormTree> out;
    if (v == 1 && len == 1)
      out.push_back(NormTree::leaf());
    for (const auto& lab : labels_) {
      const SubgroupId k = lab->subgroup();
      const int arity = lab->arity();
      if (arity == 0) {
        if (v != 1 || len != 0)
          continue;
        for (Elt r : group_.cosets(k).reps)
          if (group_.is_subgroup_of(group_.conjugate(h, r), k))
            out.push_back(NormTree::node(lab, r, {}));
        continue;
      }
      if (arity + 1 > v)
        continue;
      for (Elt r : group_.cosets(k).reps) {
        SubgroupId hr = group_.conjugate(h, r);
        if (!group_.is_subgroup_of(hr, k))
          continue;
        auto orbs = orbits(restrict(lab->hset, hr));
        std::vector<std::vector<Elt>> reps;
        std::vector<int> rest(orbs.size() + 1, 0);
        for (const auto& o : orbs)
          reps.push_back(group_.cosets(o.stabilizer, hr).reps);
        for (std::size_t j = orbs.size(); j-- > 0;)
          rest[j] = rest[j + 1] + static_cast<int>(orbs[j].points.size());
        std::vector<NormTree> kids(static_cast<std::size_t>(arity));
        auto rec = [&](auto&& self, std::size_t oi, int left, int lleft) -> void {
          if (oi == orbs.size()) {
            if (left == 0 && lleft == 0)
              out.push_back(NormTree::node(lab, r, kids));
            return;
          }
          const Orbit& o = orbs[oi];
          const int size = static_cast<int>(o.points.size());
          const bool last = oi + 1 == orbs.size();
          for (int u = 1; u * size <= left - rest[oi + 1]; ++u)
            for (int l = 0; l <= u && l * size <= lleft; ++l) {
              // every leaf is a vertex, so later orbits need room for the leaves still owed
              const int rem_v = left - u * size;
              const int rem_l = lleft - l * size;
              if (last ? (rem_v != 0 || rem_l != 0) : rem_v < std::max(rest[oi + 1], rem_l))
                continue;
              for (const auto& c : exact(o.stabilizer, u, l)) {
                for (std::size_t i = 0; i < reps[oi].size(); ++i)
                  kids[static_cast<std::size_t>(o.witness[i])] = act(reps[oi][i], c);
                self(self, oi + 1, rem_v, rem_l);
              }
            }
        };
        rec(rec, 0, v - 1, len);
      }
    }
    std::sort(out.begin(), out.end());
    return memo_len_.emplace(key, std::move(out)).first->second;
  }

private:
  Group group_;
  int budget_;
  std::vector<LabelPtr> labels_;
  std::map<std::pair<SubgroupId, int>, std::vector<NormTree>> memo_;
  std::map<std::tuple<SubgroupId, int, int>, std::vector<NormTree>> memo_len_;
};

inline std::vector<NormTree> fixed_trees(const IndexingSystem& s, SubgroupId h, int budget) {
  return FixedTreeGenerator(s, budget).all(h);
}

/// Visits the Gamma-fixed (theta, d) of arity gamma.degree with at most
/// `budget` vertices, by vertex count, then tree, then d. Stops as soon as
/// `visit` returns false; returns false iff it was stopped.
template <typename Visit>
bool visit_fixed_operations(const IndexingSystem& s, const GraphSubgroup& gamma, int budget, Visit&& visit) {
  if (budget < 1)
    throw OperadError("fixed operations: budget must be at least 1");
  const auto& hs = gamma.group.elements(gamma.subgroup);
  FixedTreeGenerator gen(s, budget);
  std::vector<Perm> om(hs.size());
  for (int v = 1; v <= budget; ++v)
    for (const auto& t : gen.exact(gamma.subgroup, v, gamma.degree)) {
      for (std::size_t i = 0; i < hs.size(); ++i)
        om[i] = omega(t, hs[i]);
      bool go = true;
      for_each_perm(gamma.degree, [&](const Perm& d) {
        if (!go)
          return;
        for (std::size_t i = 0; i < hs.size(); ++i)
          if (compose(om[i], d) != compose(d, gamma(hs[i])))
            return;
        go = visit(SymOperation(t, d));
      });
      if (!go)
        return false;
    }
  return true;
}

/// All Gamma-fixed (theta, d) of arity gamma.degree with at most `budget`
/// vertices, sorted. Nonempty iff the H-set of gamma is admissible.
inline std::vector<SymOperation> fixed_operations(const IndexingSystem& s, const GraphSubgroup& gamma, int budget) {
  std::vector<SymOperation> out;
  visit_fixed_operations(s, gamma, budget, [&](const SymOperation& x) {
    out.push_back(x);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline bool has_fixed_operation(const IndexingSystem& s, const GraphSubgroup& gamma, int budget) {
  return !visit_fixed_operations(s, gamma, budget, [](const SymOperation&) { return false; });
}

// -- target operads and the free extension ------------------------------

/// End_X for a finite G-set X: n-ary operations are all maps X^n -> X,
/// stored as value tables with x_0 the most significant digit.
/// (g.f)(x) = g f(g^-1 x_1, ...); (f.p) feeds input i into slot p(i).
struct EndOp {
  int arity = 0;
  std::vector<int> table;
  bool operator==(const EndOp&) const = default;
};

class EndomorphismOperad {
public:
  using Operation = EndOp;

  explicit EndomorphismOperad(GSet x) : x_(std::move(x)) {
    if (x_.acting() != x_.group().whole())
      throw OperadError("End_X: X must be a G-set");
  }

  const GSet& set() const { return x_; }
  const Group& group() const { return x_.group(); }

  long level_size(int n) const {
    long r = 1;
    for (int i = 0; i < n; ++i)
      r *= x_.size();
    return r;
  }

  template <typename F>
  EndOp from_function(int arity, F&& f) const {
    EndOp op{arity, {}};
    std::vector<int> xs(static_cast<std::size_t>(arity), 0);
    op.table.resize(static_cast<std::size_t>(level_size(arity)));
    for (std::size_t idx = 0; idx < op.table.size(); ++idx) {
      decode(idx, xs);
      op.table[idx] = f(static_cast<const std::vector<int>&>(xs));
    }
    return op;
  }

  int eval(const EndOp& f, std::span<const int> xs) const {
    std::size_t idx = 0;
    for (int x : xs)
      idx = idx * static_cast<std::size_t>(x_.size()) + static_cast<std::size_t>(x);
    return f.table[idx];
  }

  EndOp identity() const {
    return from_function(1, [](const std::vector<int>& xs) { return xs[0]; });
  }

  EndOp compose(const EndOp& f, std::span<const EndOp> gs) const {
    if (static_cast<int>(gs.size()) != f.arity)
      throw OperadError("End_X compose: arity mismatch");
    int total = 0;
    for (const auto& g : gs)
      total += g.arity;
    std::vector<int> mid(gs.size());
    return from_function(total, [&](const std::vector<int>& xs) {
      std::size_t off = 0;
      for (std::size_t i = 0; i < gs.size(); ++i) {
        auto a = static_cast<std::size_t>(gs[i].arity);
        mid[i] = eval(gs[i], std::span<const int>(xs).subspan(off, a));
        off += a;
      }
      return eval(f, mid);
    });
  }

  EndOp act(Elt g, const EndOp& f) const {
    Elt gi = group().inv(g);
    std::vector<int> ys(static_cast<std::size_t>(f.arity));
    return from_function(f.arity, [&](const std::vector<int>& xs) {
      for (std::size_t i = 0; i < xs.size(); ++i)
        ys[i] = x_.act(gi, xs[i]);
      return x_.act(g, eval(f, ys));
    });
  }

  EndOp right_act(const EndOp& f, std::span<const int> p) const {
    std::vector<int> ys(static_cast<std::size_t>(f.arity));
    return from_function(f.arity, [&](const std::vector<int>& xs) {
      for (std::size_t i = 0; i < xs.size(); ++i)
        ys[static_cast<std::size_t>(p[i])] = xs[i];
      return eval(f, ys);
    });
  }

private:
  void decode(std::size_t idx, std::vector<int>& xs) const {
    for (std::size_t i = xs.size(); i-- > 0;) {
      xs[i] = static_cast<int>(idx % static_cast<std::size_t>(x_.size()));
      idx /= static_cast<std::size_t>(x_.size());
    }
  }

  GSet x_;
};

/// The operad map out of the free operad determined by a Gamma_T-fixed
/// operation (x)_T^O for each admissible T:
///   Phi(Id) = 1, Phi(r (x)_T (t_i)) = r . gamma((x)_T^O; Phi(t_i)),
///   Phi(theta, d) = Phi(theta) . d.
template <typename Operad>
class FreeExtension {
public:
  using Op = typename Operad::Operation;
  using Assignment = std::function<Op(const GSet&)>;

  FreeExtension(IndexingSystem s, Operad target, Assignment assign)
      : s_(std::move(s)), target_(std::move(target)), assign_(std::move(assign)) {}

  const Operad& target() const { return target_; }

  /// (x)_T^O, checked to be Gamma_T-fixed: h . op = op . sigma(h).
  const Op& generator(const GSet& t) const {
    for (const auto& [set, op] : cache_)
      if (set == t)
        return op;
    if (!is_admissible_hset(s_, t))
      throw OperadError("free extension: node decorated by an inadmissible set");
    Op op = assign_(t);
    for (Elt h : t.acting_elements())
      if (!(target_.act(h, op) == target_.right_act(op, t.perm(h))))
        throw OperadError("free extension: assigned operation is not fixed by the graph subgroup");
    cache_.emplace_back(t, std::move(op));
    return cache_.back().second;
  }

  Op operator()(const NormTree& t) const {
    if (t.is_leaf())
      return target_.identity();
    std::vector<Op> inner;
    inner.reserve(static_cast<std::size_t>(t.arity()));
    for (const auto& c : t.children())
      inner.push_back((*this)(c));
    return target_.act(t.rep(), target_.compose(generator(t.hset()), inner));
  }

  Op operator()(const SymOperation& x) const { return target_.right_act((*this)(x.tree), x.perm); }

private:
  IndexingSystem s_;
  Operad target_;
  Assignment assign_;
  mutable std::vector<std::pair<GSet, Op>> cache_;
};

} // namespace ninf

#endif // NINF_NORM_OPERAD_HPP_
