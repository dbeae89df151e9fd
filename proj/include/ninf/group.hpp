// Finite groups given by multiplication tables, with the full subgroup
// lattice, coset and double-coset decompositions, and conjugation.
//
// Element 0 is always the identity. Subgroups are enumerated once at
// construction and sorted by (order, sorted element list); a SubgroupId is a
// position in that list, so ids are reproducible for a given table.
//
// Conjugation convention: conjugate(H, g) is H^g = g^-1 H g.

#ifndef NINF_GROUP_HPP_
#define NINF_GROUP_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "perm.hpp"

namespace ninf {

using Elt = int;
using SubgroupId = int;
/// Subset of group elements; bit g set iff element g is a member.
using ElementMask = std::uint64_t;

inline constexpr int kMaxGroupOrder = 64;

class GroupError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Subgroup {
  SubgroupId id = 0;
  ElementMask mask = 0;
  std::vector<Elt> elements;  // strictly increasing
  int order() const { return static_cast<int>(elements.size()); }
};

/// Left cosets x*sub of `sub` inside `ambient`, each named by its minimal
/// element. reps[0] is the identity.
struct CosetDecomposition {
  SubgroupId sub = 0;
  SubgroupId ambient = 0;
  std::vector<Elt> reps;
  std::vector<int> coset_of;  // per group element; -1 outside ambient
  int size() const { return static_cast<int>(reps.size()); }
};

namespace detail {

struct GroupData {
  std::string name;
  int order = 0;
  std::vector<std::vector<Elt>> mul;
  std::vector<Elt> inv;
  std::vector<std::string> names;
  std::vector<Subgroup> subgroups;
  std::map<ElementMask, SubgroupId> by_mask;
  std::vector<std::vector<SubgroupId>> conj;   // conj[H][g] = id of g^-1 H g
  std::vector<CosetDecomposition> cosets;      // cosets[K] = G/K
};

} // namespace detail

class Group {
public:
  Group() = default;

  /// Builds a group from a Cayley table (mul[a][b] = a*b). Throws GroupError
  /// if the table is not a group. If the identity is not element 0, elements 0
  /// and e are swapped (names travel with their elements).
  static Group from_table(std::vector<std::vector<Elt>> mul,
                          std::vector<std::string> names = {}, std::string name = {});

  /// Expands permutation generators into the generated group. Elements are the
  /// permutations in lexicographic order, so the identity is element 0.
  static Group from_permutations(int degree, const std::vector<Perm>& generators,
                                 std::string name = {});

  bool valid() const { return d_ != nullptr; }
  const std::string& name() const { return d_->name; }
  int order() const { return d_->order; }
  static constexpr Elt identity() { return 0; }
  Elt mul(Elt a, Elt b) const { return d_->mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  Elt inv(Elt a) const { return d_->inv[static_cast<std::size_t>(a)]; }
  /// g^-1 h g
  Elt conj(Elt h, Elt g) const { return mul(inv(g), mul(h, g)); }
  const std::string& element_name(Elt a) const { return d_->names[static_cast<std::size_t>(a)]; }
  const std::vector<std::vector<Elt>>& table() const { return d_->mul; }
  const std::vector<std::string>& element_names() const { return d_->names; }

  bool same_as(const Group& o) const { return d_ == o.d_; }
  bool operator==(const Group& o) const { return d_ == o.d_ || (d_ && o.d_ && d_->mul == o.d_->mul); }

  int subgroup_count() const { return static_cast<int>(d_->subgroups.size()); }
  const std::vector<Subgroup>& subgroups() const { return d_->subgroups; }
  const Subgroup& subgroup(SubgroupId h) const { return d_->subgroups.at(static_cast<std::size_t>(h)); }
  SubgroupId trivial_subgroup() const { return 0; }
  SubgroupId whole() const { return subgroup_count() - 1; }
  int subgroup_order(SubgroupId h) const { return subgroup(h).order(); }
  ElementMask mask(SubgroupId h) const { return subgroup(h).mask; }
  const std::vector<Elt>& elements(SubgroupId h) const { return subgroup(h).elements; }
  bool contains(SubgroupId h, Elt g) const { return (mask(h) >> g) & 1U; }
  /// inner <= outer
  bool is_subgroup_of(SubgroupId inner, SubgroupId outer) const {
    return (mask(inner) & ~mask(outer)) == 0;
  }
  int index(SubgroupId inner, SubgroupId outer) const {
    return subgroup_order(outer) / subgroup_order(inner);
  }

  std::optional<SubgroupId> find_subgroup(ElementMask m) const {
    auto it = d_->by_mask.find(m);
    if (it == d_->by_mask.end())
      return std::nullopt;
    return it->second;
  }
  SubgroupId subgroup_of(ElementMask m) const {
    auto id = find_subgroup(m);
    if (!id)
      throw GroupError("element set is not a subgroup");
    return *id;
  }
  /// Subgroup generated by a set of elements.
  SubgroupId generated(ElementMask m) const { return subgroup_of(closure(m)); }

  SubgroupId intersect(SubgroupId a, SubgroupId b) const { return subgroup_of(mask(a) & mask(b)); }
  /// H^g = g^-1 H g
  SubgroupId conjugate(SubgroupId h, Elt g) const {
    return d_->conj[static_cast<std::size_t>(h)][static_cast<std::size_t>(g)];
  }
  /// gHg^-1
  SubgroupId conjugate_left(SubgroupId h, Elt g) const { return conjugate(h, inv(g)); }
  bool is_normal(SubgroupId h) const {
    for (Elt g = 0; g < order(); ++g)
      if (conjugate(h, g) != h)
        return false;
    return true;
  }
  /// Are a and b conjugate by an element of `within`?
  bool conjugate_in(SubgroupId a, SubgroupId b, SubgroupId within) const {
    for (Elt g : elements(within))
      if (conjugate(a, g) == b)
        return true;
    return false;
  }
  /// Least subgroup id in the `within`-conjugacy class of h.
  SubgroupId class_rep(SubgroupId h, SubgroupId within) const {
    SubgroupId best = h;
    for (Elt g : elements(within))
      best = std::min(best, conjugate(h, g));
    return best;
  }
  SubgroupId normalizer(SubgroupId h, SubgroupId within) const {
    ElementMask m = 0;
    for (Elt g : elements(within))
      if (conjugate(h, g) == h)
        m |= ElementMask{1} << g;
    return subgroup_of(m);
  }

  /// Left cosets of `sub` in G.
  const CosetDecomposition& cosets(SubgroupId sub) const {
    return d_->cosets.at(static_cast<std::size_t>(sub));
  }
  /// Left cosets of `sub` in `ambient`; requires sub <= ambient.
  CosetDecomposition cosets(SubgroupId sub, SubgroupId ambient) const;
  /// Minimal representatives of the double cosets left \ ambient / right.
  std::vector<Elt> double_cosets(SubgroupId left, SubgroupId right, SubgroupId ambient) const;
  std::vector<Elt> double_cosets(SubgroupId left, SubgroupId right) const {
    return double_cosets(left, right, whole());
  }

  ElementMask closure(ElementMask m) const;
  ElementMask all_elements() const {
    return order() == 64 ? ~ElementMask{0} : ((ElementMask{1} << order()) - 1);
  }

  /// Direct product; element (a, b) has index a * |B| + b.
  static Group direct_product(const Group& a, const Group& b, std::string name = {});

private:
  explicit Group(std::shared_ptr<const detail::GroupData> d) : d_(std::move(d)) {}
  static Group build(std::vector<std::vector<Elt>> mul, std::vector<std::string> names,
                     std::string name);

  std::shared_ptr<const detail::GroupData> d_;
};

// -- implementation ---------------------------------------------------------

inline ElementMask Group::closure(ElementMask m) const {
  m |= 1U;  // identity
  std::vector<Elt> members;
  for (Elt g = 0; g < order(); ++g)
    if ((m >> g) & 1U)
      members.push_back(g);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (Elt p : {mul(members[i], members[j]), mul(members[j], members[i])}) {
        if (!((m >> p) & 1U)) {
          m |= ElementMask{1} << p;
          members.push_back(p);
        }
      }
    }
  }
  return m;
}

inline Group Group::from_table(std::vector<std::vector<Elt>> mul, std::vector<std::string> names,
                               std::string name) {
  const int n = static_cast<int>(mul.size());
  if (n == 0)
    throw GroupError("mul: empty table");
  if (n > kMaxGroupOrder)
    throw GroupError("order: groups above order 64 are not supported");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n)
      throw GroupError("mul: table is not square");
    for (Elt x : row)
      if (x < 0 || x >= n)
        throw GroupError("mul: entry out of range");
  }
  if (!names.empty() && static_cast<int>(names.size()) != n)
    throw GroupError("names: length differs from order");
  // locate identity
  Elt e = -1;
  for (Elt a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (Elt b = 0; b < n && ok; ++b)
      ok = mul[a][b] == b && mul[b][a] == b;
    if (ok)
      e = a;
  }
  if (e < 0)
    throw GroupError("mul: no two-sided identity");
  if (names.empty()) {
    names.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      names[i] = "g" + std::to_string(i);
  }
  if (e != 0) {
    auto relabel = [e](Elt x) { return x == e ? 0 : (x == 0 ? e : x); };
    std::vector<std::vector<Elt>> m2(n, std::vector<Elt>(n));
    for (Elt a = 0; a < n; ++a)
      for (Elt b = 0; b < n; ++b)
        m2[relabel(a)][relabel(b)] = relabel(mul[a][b]);
    std::swap(names[0], names[static_cast<std::size_t>(e)]);
    mul = std::move(m2);
  }
  for (Elt a = 0; a < n; ++a)
    for (Elt b = 0; b < n; ++b)
      for (Elt c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          throw GroupError("mul: not associative at (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(c) + ")");
  return build(std::move(mul), std::move(names), std::move(name));
}

namespace detail {

inline std::string cycle_string(const Perm& p) {
  std::string s;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i))
      continue;
    s += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first)
        s += ' ';
      s += std::to_string(j);
      first = false;
      j = static_cast<std::size_t>(p[j]);
    }
    s += ')';
  }
  return s.empty() ? "e" : s;
}

} // namespace detail

inline Group Group::from_permutations(int degree, const std::vector<Perm>& generators,
                                      std::string name) {
  for (const auto& g : generators)
    if (static_cast<int>(g.size()) != degree || !is_perm(g))
      throw GroupError("generators: not a permutation of the stated degree");
  std::set<Perm> elements{identity_perm(degree)};
  std::vector<Perm> frontier{identity_perm(degree)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (const auto& g : generators) {
        Perm y = compose(g, x);
        if (elements.insert(y).second) {
          next.push_back(y);
          if (static_cast<int>(elements.size()) > kMaxGroupOrder)
            throw GroupError("generators: group order exceeds 64");
        }
      }
    frontier = std::move(next);
  }
  std::vector<Perm> list(elements.begin(), elements.end());
  std::map<Perm, Elt> index;
  for (std::size_t i = 0; i < list.size(); ++i)
    index[list[i]] = static_cast<Elt>(i);
  const auto n = list.size();
  std::vector<std::vector<Elt>> mul(n, std::vector<Elt>(n));
  std::vector<std::string> names(n);
  for (std::size_t a = 0; a < n; ++a) {
    names[a] = detail::cycle_string(list[a]);
    for (std::size_t b = 0; b < n; ++b)
      mul[a][b] = index.at(compose(list[a], list[b]));
  }
  return build(std::move(mul), std::move(names), std::move(name));
}

inline Group Group::build(std::vector<std::vector<Elt>> mul, std::vector<std::string> names,
                          std::string name) {
  auto d = std::make_shared<detail::GroupData>();
  d->name = std::move(name);
  d->order = static_cast<int>(mul.size());
  d->mul = std::move(mul);
  d->names = std::move(names);
  const int n = d->order;
  d->inv.assign(static_cast<std::size_t>(n), -1);
  for (Elt a = 0; a < n; ++a)
    for (Elt b = 0; b < n; ++b)
      if (d->mul[a][b] == 0 && d->mul[b][a] == 0)
        d->inv[a] = b;
  for (Elt a = 0; a < n; ++a)
    if (d->inv[a] < 0)
      throw GroupError("mul: element " + std::to_string(a) + " has no inverse");

  Group g(d);  // temporary view for closure()
  // subgroup lattice by joining one element at a time
  std::set<ElementMask> found{ElementMask{1}};
  std::vector<ElementMask> queue{ElementMask{1}};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Elt x = 0; x < n; ++x) {
      if ((queue[i] >> x) & 1U)
        continue;
      ElementMask m = g.closure(queue[i] | (ElementMask{1} << x));
      if (found.insert(m).second)
        queue.push_back(m);
    }
  }
  std::vector<std::pair<std::vector<Elt>, ElementMask>> subs;
  for (ElementMask m : found) {
    std::vector<Elt> els;
    for (Elt x = 0; x < n; ++x)
      if ((m >> x) & 1U)
        els.push_back(x);
    subs.emplace_back(std::move(els), m);
  }
  std::sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size())
      return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  for (std::size_t i = 0; i < subs.size(); ++i) {
    Subgroup s;
    s.id = static_cast<SubgroupId>(i);
    s.mask = subs[i].second;
    s.elements = std::move(subs[i].first);
    d->by_mask[s.mask] = s.id;
    d->subgroups.push_back(std::move(s));
  }
  const auto count = d->subgroups.size();
  d->conj.assign(count, std::vector<SubgroupId>(static_cast<std::size_t>(n)));
  for (std::size_t h = 0; h < count; ++h)
    for (Elt x = 0; x < n; ++x) {
      ElementMask m = 0;
      for (Elt y : d->subgroups[h].elements)
        m |= ElementMask{1} << g.conj(y, x);
      d->conj[h][x] = d->by_mask.at(m);
    }
  for (std::size_t k = 0; k < count; ++k)
    d->cosets.push_back(g.cosets(static_cast<SubgroupId>(k), static_cast<SubgroupId>(count - 1)));
  return g;
}

inline CosetDecomposition Group::cosets(SubgroupId sub, SubgroupId ambient) const {
  if (!is_subgroup_of(sub, ambient))
    throw GroupError("cosets: subgroup not contained in ambient subgroup");
  CosetDecomposition c;
  c.sub = sub;
  c.ambient = ambient;
  c.coset_of.assign(static_cast<std::size_t>(order()), -1);
  for (Elt x : elements(ambient)) {
    if (c.coset_of[static_cast<std::size_t>(x)] >= 0)
      continue;
    int idx = c.size();
    c.reps.push_back(x);  // ascending scan: x is minimal in its coset
    for (Elt k : elements(sub))
      c.coset_of[static_cast<std::size_t>(mul(x, k))] = idx;
  }
  return c;
}

inline std::vector<Elt> Group::double_cosets(SubgroupId left, SubgroupId right,
                                             SubgroupId ambient) const {
  if (!is_subgroup_of(left, ambient) || !is_subgroup_of(right, ambient))
    throw GroupError("double_cosets: subgroups not contained in ambient subgroup");
  std::vector<char> covered(static_cast<std::size_t>(order()), 0);
  std::vector<Elt> reps;
  for (Elt x : elements(ambient)) {
    if (covered[static_cast<std::size_t>(x)])
      continue;
    reps.push_back(x);
    for (Elt l : elements(left))
      for (Elt r : elements(right))
        covered[static_cast<std::size_t>(mul(mul(l, x), r))] = 1;
  }
  return reps;
}

inline Group Group::direct_product(const Group& a, const Group& b, std::string name) {
  const int na = a.order(), nb = b.order();
  if (na * nb > kMaxGroupOrder)
    throw GroupError("direct_product: order exceeds 64");
  std::vector<std::vector<Elt>> mul(static_cast<std::size_t>(na * nb),
                                    std::vector<Elt>(static_cast<std::size_t>(na * nb)));
  std::vector<std::string> names(static_cast<std::size_t>(na * nb));
  for (int x = 0; x < na * nb; ++x) {
    names[x] = "(" + a.element_name(x / nb) + "," + b.element_name(x % nb) + ")";
    for (int y = 0; y < na * nb; ++y)
      mul[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  }
  return build(std::move(mul), std::move(names), std::move(name));
}

// -- standard groups ------------------------------------------------------

namespace groups {

inline Group trivial() { return Group::from_permutations(1, {}, "1"); }

inline Group cyclic(int n) {
  Perm g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    g[i] = (i + 1) % n;
  return Group::from_permutations(n, {g}, "C" + std::to_string(n));
}

inline Group symmetric(int n) {
  std::vector<Perm> gens;
  if (n >= 2) {
    Perm t = identity_perm(n);
    std::swap(t[0], t[1]);
    gens.push_back(t);
    Perm c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      c[i] = (i + 1) % n;
    gens.push_back(c);
  }
  return Group::from_permutations(n, gens, "S" + std::to_string(n));
}

/// Dihedral group of order 2n acting on an n-gon.
inline Group dihedral(int n) {
  Perm rot(static_cast<std::size_t>(n)), ref(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    ref[i] = (n - i) % n;
  }
  return Group::from_permutations(n, {rot, ref}, "D" + std::to_string(2 * n));
}

/// Quaternion group of order 8, regular representation.
inline Group quaternion() {
  // points 0..7 = 1, i, j, k, -1, -i, -j, -k; left multiplication by i and j
  Perm li{1, 4, 3, 6, 5, 0, 7, 2};
  Perm lj{2, 7, 4, 1, 6, 3, 0, 5};
  return Group::from_permutations(8, {li, lj}, "Q8");
}

inline Group product(const Group& a, const Group& b) {
  return Group::direct_product(a, b, a.name() + "x" + b.name());
}

/// One representative of every isomorphism class of groups of order <= 8.
inline std::vector<Group> all_of_order_at_most_8() {
  return {trivial(),
          cyclic(2),
          cyclic(3),
          cyclic(4),
          product(cyclic(2), cyclic(2)),
          cyclic(5),
          cyclic(6),
          symmetric(3),
          cyclic(7),
          cyclic(8),
          product(cyclic(4), cyclic(2)),
          product(product(cyclic(2), cyclic(2)), cyclic(2)),
          dihedral(4),
          quaternion()};
}

/// Looks up a builtin group by name: 1, C<n>, S<n>, D<2n>, Q8, C2xC2, ...
inline std::optional<Group> by_name(const std::string& name) {
  auto num = [&](std::size_t from) -> int {
    try {
      return std::stoi(name.substr(from));
    } catch (...) {
      return -1;
    }
  };
  auto pos = name.find('x');
  if (pos != std::string::npos) {
    auto a = by_name(name.substr(0, pos));
    auto b = by_name(name.substr(pos + 1));
    if (a && b)
      return Group::direct_product(*a, *b, name);
    return std::nullopt;
  }
  if (name == "1" || name == "trivial")
    return trivial();
  if (name == "Q8")
    return quaternion();
  if (name.size() >= 2) {
    int n = num(1);
    if (n <= 0)
      return std::nullopt;
    switch (name[0]) {
    case 'C':
      if (n <= kMaxGroupOrder)
        return cyclic(n);
      break;
    case 'S':
      if (n <= 4)
        return symmetric(n);
      break;
    case 'D':
      if (n % 2 == 0 && n >= 4 && n <= kMaxGroupOrder)
        return dihedral(n / 2);
      break;
    default:
      break;
    }
  }
  return std::nullopt;
}

} // namespace groups

} // namespace ninf

#endif // NINF_GROUP_HPP_
