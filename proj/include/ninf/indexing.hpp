// Indexing systems stored as transfer relations: the pair (K, H), K <= H,
// is present iff H/K is admissible. Membership of an arbitrary H-set is then
// decided orbit by orbit.
//
// A relation is an indexing system iff it is closed under
//   reflexivity   (H, H) for every H
//   conjugation   (K, H) => (K^g, H^g)
//   restriction   (K, H), M <= H, h in H => (M ∩ hKh^-1, M)
//   composition   (L, K), (K, H) => (L, H)
// Restriction is what the restriction and subobject axioms say about the
// double coset decomposition of res_M(H/K); composition is the induction
// axiom applied to K/L. validate_against_axioms() checks the set-level
// axioms directly, so this reduction is verified rather than assumed.

#ifndef NINF_INDEXING_HPP_
#define NINF_INDEXING_HPP_

#include <algorithm>
#include <array>
#include <initializer_list>
#include <bit>
#include <cctype>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "group.hpp"
#include "gset.hpp"

namespace ninf {

using SubgroupPair = std::pair<SubgroupId, SubgroupId>;  // (K, H)

class IndexingError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A transfer relation on the subgroups of G. Not necessarily closed; see
/// is_indexing_system().
class IndexingSystem {
public:
  IndexingSystem() = default;
  explicit IndexingSystem(Group g) : group_(std::move(g)) {
    const auto n = static_cast<std::size_t>(group_.subgroup_count());
    adm_.assign(n * n, 0);
  }
  IndexingSystem(Group g, const std::vector<SubgroupPair>& pairs) : IndexingSystem(std::move(g)) {
    for (auto [k, h] : pairs)
      insert(k, h);
  }

  static IndexingSystem complete(const Group& g) {
    IndexingSystem s(g);
    for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
      for (SubgroupId k = 0; k < g.subgroup_count(); ++k)
        if (g.is_subgroup_of(k, h))
          s.insert(k, h);
    return s;
  }

  const Group& group() const { return group_; }
  bool admits(SubgroupId k, SubgroupId h) const { return adm_[idx(k, h)] != 0; }
  void insert(SubgroupId k, SubgroupId h) {
    if (k < 0 || h < 0 || k >= group_.subgroup_count() || h >= group_.subgroup_count() ||
        !group_.is_subgroup_of(k, h))
      throw IndexingError("pairs: (" + std::to_string(k) + "," + std::to_string(h) +
                          ") is not a subgroup pair K <= H");
    adm_[idx(k, h)] = 1;
  }

  /// Present pairs sorted by (K, H).
  std::vector<SubgroupPair> pairs() const {
    std::vector<SubgroupPair> r;
    const int n = group_.subgroup_count();
    for (SubgroupId k = 0; k < n; ++k)
      for (SubgroupId h = 0; h < n; ++h)
        if (admits(k, h))
          r.emplace_back(k, h);
    return r;
  }
  /// Present pairs with K != H.
  std::vector<SubgroupPair> strict_pairs() const {
    auto r = pairs();
    std::erase_if(r, [](const SubgroupPair& p) { return p.first == p.second; });
    return r;
  }
  std::size_t size() const { return static_cast<std::size_t>(std::count(adm_.begin(), adm_.end(), 1)); }

  /// this ⊆ other
  bool contained_in(const IndexingSystem& o) const {
    for (std::size_t i = 0; i < adm_.size(); ++i)
      if (adm_[i] && !o.adm_[i])
        return false;
    return true;
  }
  bool operator==(const IndexingSystem& o) const { return adm_ == o.adm_ && group_ == o.group_; }
  /// Lexicographic on the sorted pair lists.
  bool operator<(const IndexingSystem& o) const { return pairs() < o.pairs(); }

private:
  std::size_t idx(SubgroupId k, SubgroupId h) const {
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(group_.subgroup_count()) +
           static_cast<std::size_t>(h);
  }

  Group group_;
  std::vector<char> adm_;
};

/// All subgroup pairs K < H (strict), sorted.
inline std::vector<SubgroupPair> candidate_pairs(const Group& g) {
  std::vector<SubgroupPair> r;
  for (SubgroupId k = 0; k < g.subgroup_count(); ++k)
    for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
      if (k != h && g.is_subgroup_of(k, h))
        r.emplace_back(k, h);
  return r;
}

// -- bit-packed relations ------------------------------------------------

/// Set of subgroup pairs as 128 bits, indexed by PairTable.
struct PairMask {
  std::uint64_t w[2] = {0, 0};

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1U; }
  bool none() const { return (w[0] | w[1]) == 0; }
  /// this ⊆ o
  bool subset_of(const PairMask& o) const { return (w[0] & ~o.w[0]) == 0 && (w[1] & ~o.w[1]) == 0; }
  bool intersects(const PairMask& o) const { return ((w[0] & o.w[0]) | (w[1] & o.w[1])) != 0; }
  PairMask operator|(const PairMask& o) const { return {{w[0] | o.w[0], w[1] | o.w[1]}}; }
  PairMask operator&(const PairMask& o) const { return {{w[0] & o.w[0], w[1] & o.w[1]}}; }
  PairMask minus(const PairMask& o) const { return {{w[0] & ~o.w[0], w[1] & ~o.w[1]}}; }
  PairMask& operator|=(const PairMask& o) {
    w[0] |= o.w[0];
    w[1] |= o.w[1];
    return *this;
  }
  bool operator==(const PairMask& o) const { return w[0] == o.w[0] && w[1] == o.w[1]; }
  bool operator<(const PairMask& o) const { return w[1] != o.w[1] ? w[1] < o.w[1] : w[0] < o.w[0]; }
};

/// Numbering of all subgroup pairs K <= H (reflexive included) in sorted
/// (K, H) order. Limited to 128 pairs.
class PairTable {
public:
  static constexpr int kMaxPairs = 128;

  explicit PairTable(const Group& g) : group_(g) {
    const int n = g.subgroup_count();
    index_.assign(static_cast<std::size_t>(n * n), -1);
    for (SubgroupId k = 0; k < n; ++k)
      for (SubgroupId h = 0; h < n; ++h)
        if (g.is_subgroup_of(k, h)) {
          index_[static_cast<std::size_t>(k * n + h)] = static_cast<int>(pairs_.size());
          pairs_.emplace_back(k, h);
        }
    if (static_cast<int>(pairs_.size()) > kMaxPairs)
      throw IndexingError("group has " + std::to_string(pairs_.size()) +
                          " subgroup pairs; bit-packed relations support at most 128");
  }

  static bool fits(const Group& g) {
    int count = 0;
    for (SubgroupId k = 0; k < g.subgroup_count(); ++k)
      for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
        count += g.is_subgroup_of(k, h) ? 1 : 0;
    return count <= kMaxPairs;
  }

  const Group& group() const { return group_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  const SubgroupPair& pair(int i) const { return pairs_[static_cast<std::size_t>(i)]; }
  int index(SubgroupId k, SubgroupId h) const {
    return index_[static_cast<std::size_t>(k * group_.subgroup_count() + h)];
  }

  PairMask mask(const IndexingSystem& s) const {
    PairMask m;
    for (int i = 0; i < size(); ++i)
      if (s.admits(pair(i).first, pair(i).second))
        m.set(i);
    return m;
  }
  IndexingSystem system(const PairMask& m) const {
    IndexingSystem s(group_);
    for (int i = 0; i < size(); ++i)
      if (m.test(i))
        s.insert(pair(i).first, pair(i).second);
    return s;
  }
  PairMask reflexive() const {
    PairMask m;
    for (SubgroupId h = 0; h < group_.subgroup_count(); ++h)
      m.set(index(h, h));
    return m;
  }
  /// Pairs an H-set needs: (Stab(base), H) for each orbit.
  PairMask required(const GSet& t) const {
    PairMask m;
    for (const auto& o : orbits(t))
      m.set(index(o.stabilizer, t.acting()));
    return m;
  }

private:
  Group group_;
  std::vector<SubgroupPair> pairs_;
  std::vector<int> index_;
};

/// The four closure rules compiled to Horn clauses over pair indices.
class ClosureRules {
public:
  explicit ClosureRules(const PairTable& t) : table_(t) {
    const Group& g = t.group();
    const int n = g.subgroup_count();
    unary_.resize(static_cast<std::size_t>(t.size()));
    binary_.resize(static_cast<std::size_t>(t.size()));
    for (int p = 0; p < t.size(); ++p) {
      auto [k, h] = t.pair(p);
      PairMask& u = unary_[static_cast<std::size_t>(p)];
      for (Elt x = 0; x < g.order(); ++x)
        u.set(t.index(g.conjugate(k, x), g.conjugate(h, x)));
      for (SubgroupId m = 0; m < n; ++m)
        if (g.is_subgroup_of(m, h))
          for (Elt x : g.elements(h))
            u.set(t.index(g.intersect(m, g.conjugate_left(k, x)), m));
      for (SubgroupId j = 0; j < n; ++j) {
        if (g.is_subgroup_of(h, j))  // (K,H),(H,J) => (K,J)
          binary_[static_cast<std::size_t>(p)].push_back({t.index(h, j), t.index(k, j)});
        if (g.is_subgroup_of(j, k))  // (J,K),(K,H) => (J,H)
          binary_[static_cast<std::size_t>(p)].push_back({t.index(j, k), t.index(j, h)});
      }
    }
    // make the single-premise rules transitive
    for (bool changed = true; changed;) {
      changed = false;
      for (auto& u : unary_) {
        PairMask grown = u;
        for (int q = 0; q < t.size(); ++q)
          if (u.test(q))
            grown |= unary_[static_cast<std::size_t>(q)];
        if (!(grown == u)) {
          u = grown;
          changed = true;
        }
      }
    }
  }

  const PairTable& table() const { return table_; }

  /// Least closed relation containing s and the pairs in `add`; s must be
  /// closed already.
  PairMask close(PairMask s, std::initializer_list<int> add) const {
    // each pair enters the worklist at most once, when it is first set
    std::array<int, PairTable::kMaxPairs> work;
    std::size_t top = 0;
    for (int p : add)
      if (!s.test(p)) {
        s.set(p);
        work[top++] = p;
      }
    while (top > 0) {
      int p = work[--top];
      const PairMask& u = unary_[static_cast<std::size_t>(p)];
      PairMask fresh = u.minus(s);
      if (!fresh.none()) {
        s |= fresh;
        for (int word = 0; word < 2; ++word)
          for (std::uint64_t bits = fresh.w[word]; bits != 0; bits &= bits - 1)
            work[top++] = word * 64 + std::countr_zero(bits);
      }
      for (auto [other, result] : binary_[static_cast<std::size_t>(p)])
        if (s.test(other) && !s.test(result)) {
          s.set(result);
          work[top++] = result;
        }
    }
    return s;
  }

  PairMask minimal() const {
    PairMask s;
    for (SubgroupId h = 0; h < table_.group().subgroup_count(); ++h)
      s = close(s, {table_.index(h, h)});
    return s;
  }

private:
  const PairTable& table_;
  std::vector<PairMask> unary_;
  std::vector<std::vector<std::pair<int, int>>> binary_;
};

namespace detail {

/// Adds the pairs in `work` to s and closes under the four rules, assuming
/// s was already closed. Works for any number of subgroups.
inline void close_from(IndexingSystem& s, std::deque<SubgroupPair> work) {
  const Group& g = s.group();
  const int n = g.subgroup_count();
  auto add = [&](SubgroupId k, SubgroupId h) {
    if (!s.admits(k, h)) {
      s.insert(k, h);
      work.emplace_back(k, h);
    }
  };
  for (auto it = work.begin(); it != work.end();) {
    if (s.admits(it->first, it->second)) {
      it = work.erase(it);
    } else {
      s.insert(it->first, it->second);
      ++it;
    }
  }
  while (!work.empty()) {
    auto [k, h] = work.front();
    work.pop_front();
    for (Elt x = 0; x < g.order(); ++x)
      add(g.conjugate(k, x), g.conjugate(h, x));
    for (SubgroupId m = 0; m < n; ++m) {
      if (!g.is_subgroup_of(m, h))
        continue;
      for (Elt x : g.elements(h))
        add(g.intersect(m, g.conjugate_left(k, x)), m);
    }
    for (SubgroupId j = 0; j < n; ++j) {
      if (g.is_subgroup_of(j, k) && s.admits(j, k))
        add(j, h);
      if (g.is_subgroup_of(h, j) && s.admits(h, j))
        add(k, j);
    }
  }
}

} // namespace detail

/// Least indexing system containing the generators.
inline IndexingSystem closure(const Group& g, const std::vector<SubgroupPair>& generators) {
  IndexingSystem s(g);
  std::deque<SubgroupPair> work;
  for (SubgroupId h = 0; h < g.subgroup_count(); ++h)
    work.emplace_back(h, h);
  for (auto p : generators) {
    if (p.first < 0 || p.second < 0 || p.first >= g.subgroup_count() ||
        p.second >= g.subgroup_count() || !g.is_subgroup_of(p.first, p.second))
      throw IndexingError("generators: (" + std::to_string(p.first) + "," +
                          std::to_string(p.second) + ") is not a subgroup pair K <= H");
    work.push_back(p);
  }
  detail::close_from(s, std::move(work));
  return s;
}

inline IndexingSystem minimal_system(const Group& g) { return closure(g, {}); }
inline IndexingSystem complete_system(const Group& g) { return IndexingSystem::complete(g); }

/// Is the relation closed under the four rules?
inline bool is_indexing_system(const IndexingSystem& s) {
  const Group& g = s.group();
  const int n = g.subgroup_count();
  for (SubgroupId h = 0; h < n; ++h)
    if (!s.admits(h, h))
      return false;
  for (auto [k, h] : s.pairs()) {
    for (Elt x = 0; x < g.order(); ++x)
      if (!s.admits(g.conjugate(k, x), g.conjugate(h, x)))
        return false;
    for (SubgroupId m = 0; m < n; ++m)
      if (g.is_subgroup_of(m, h))
        for (Elt x : g.elements(h))
          if (!s.admits(g.intersect(m, g.conjugate_left(k, x)), m))
            return false;
    for (SubgroupId j = 0; j < n; ++j)
      if (g.is_subgroup_of(h, j) && s.admits(h, j) && !s.admits(k, j))
        return false;
  }
  return true;
}

/// Calls visit(mask) for every indexing system on G, in increasing
/// lexicographic order of sorted pair lists, without storing them.
///
/// Depth-first search over pairs in table order: either the lowest
/// undecided pair is added (and the relation closed), or it is forbidden.
/// Closing never adds a pair below the branching pair, so the "added"
/// branch yields exactly the smaller systems.
inline void for_each_indexing_system(const ClosureRules& rules,
                                     const std::function<void(const PairMask&)>& visit) {
  const int n = rules.table().size();
  auto rec = [&](auto&& self, const PairMask& s, const PairMask& forbidden, int from) -> void {
    int p = from;
    while (p < n && (s.test(p) || forbidden.test(p)))
      ++p;
    if (p == n) {
      visit(s);
      return;
    }
    PairMask with = rules.close(s, {p});
    if (!with.intersects(forbidden))
      self(self, with, forbidden, p + 1);
    PairMask f = forbidden;
    f.set(p);
    self(self, s, f, p + 1);
  };
  rec(rec, rules.minimal(), PairMask{}, 0);
}

inline long count_indexing_systems(const Group& g) {
  PairTable t(g);
  ClosureRules r(t);
  long count = 0;
  for_each_indexing_system(r, [&](const PairMask&) { ++count; });
  return count;
}

/// Every indexing system on G, sorted. Throws IndexingError when G has more
/// than max_pairs strict subgroup pairs; use for_each_indexing_system there.
inline std::vector<IndexingSystem> enumerate_all(const Group& g, std::size_t max_pairs = 40) {
  auto cands = candidate_pairs(g);
  if (cands.size() > max_pairs)
    throw IndexingError("enumerate_all: " + std::to_string(cands.size()) +
                        " subgroup pairs exceed the bound " + std::to_string(max_pairs));
  PairTable t(g);
  ClosureRules r(t);
  std::vector<IndexingSystem> out;
  for_each_indexing_system(r, [&](const PairMask& m) { out.push_back(t.system(m)); });
  return out;
}

/// Covering relations of the inclusion poset, as index pairs into `systems`.
inline std::vector<std::pair<int, int>> poset_edges(const std::vector<IndexingSystem>& systems) {
  std::vector<std::pair<int, int>> edges;
  const int n = static_cast<int>(systems.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !systems[a].contained_in(systems[b]))
        continue;
      bool cover = true;
      for (int c = 0; c < n && cover; ++c)
        if (c != a && c != b && systems[a].contained_in(systems[c]) &&
            systems[c].contained_in(systems[b]))
          cover = false;
      if (cover)
        edges.emplace_back(a, b);
    }
  return edges;
}

// -- admissibility -------------------------------------------------------

inline bool is_admissible_hset(const IndexingSystem& s, const GSet& t) {
  for (const auto& o : orbits(t))
    if (!s.admits(o.stabilizer, t.acting()))
      return false;
  return true;
}

/// For each orbit of B, the fiber over its base point as a Stab(base)-set.
struct Fiber {
  int base = 0;
  SubgroupId stabilizer = 0;
  std::vector<int> points;  // in A
  GSet set;
};

inline std::vector<Fiber> orbit_fibers(const EquivariantMap& u) {
  std::vector<Fiber> out;
  for (const auto& o : orbits(u.target)) {
    Fiber f;
    f.base = o.base();
    f.stabilizer = o.stabilizer;
    for (int a = 0; a < u.source.size(); ++a)
      if (u(a) == f.base)
        f.points.push_back(a);
    f.set = sub_gset(restrict(u.source, f.stabilizer), f.points);
    out.push_back(std::move(f));
  }
  return out;
}

inline bool is_admissible_map(const IndexingSystem& s, const EquivariantMap& u) {
  for (const auto& f : orbit_fibers(u))
    if (!is_admissible_hset(s, f.set))
      return false;
  return true;
}

// -- set-level axioms ------------------------------------------------------

struct AxiomReport {
  bool ok = true;
  int axiom = 0;  // least-numbered failing axiom, 1..7
  std::string detail;
  long checks = 0;
};

namespace detail {

inline std::string describe(const std::vector<SubgroupId>& types, SubgroupId h) {
  std::string s = "H=#" + std::to_string(h) + " orbits=[";
  for (std::size_t i = 0; i < types.size(); ++i)
    s += (i ? ",#" : "#") + std::to_string(types[i]);
  return s + "]";
}

using AxiomVisitor = std::function<void(int axiom, const std::vector<const GSet*>& premises,
                                        const GSet& conclusion, const std::function<std::string()>& what)>;

/// Every instance "premises admissible => conclusion admissible" of the
/// seven axioms over H-sets with at most size_bound points. Axiom 2 (an
/// "iff") contributes both directions.
inline void for_each_axiom_instance(const Group& g, int size_bound, const AxiomVisitor& visit) {
  const int n = g.subgroup_count();
  std::vector<std::vector<HSetClass>> classes(static_cast<std::size_t>(n));
  for (SubgroupId h = 0; h < n; ++h)
    classes[static_cast<std::size_t>(h)] = hset_classes(g, h, size_bound);

  for (SubgroupId h = 0; h < n; ++h)
    for (int m = 0; m <= size_bound; ++m)
      visit(1, {}, trivial_set(g, h, m),
            [=] { return "trivial #" + std::to_string(h) + "-set of size " + std::to_string(m); });

  for (SubgroupId h = 0; h < n; ++h) {
    const auto& hc = classes[static_cast<std::size_t>(h)];
    for (const auto& c : hc) {
      const GSet& a = c.set;
      auto what = [&](const std::string& tail) {
        return [&c, h, tail] { return describe(c.orbit_types, h) + tail; };
      };
      // 2: other presentations of the same iso class
      for (Elt x : g.elements(h)) {
        std::vector<SubgroupId> alt;
        for (SubgroupId k : c.orbit_types)
          alt.push_back(g.conjugate(k, x));
        std::reverse(alt.begin(), alt.end());
        GSet b = from_orbits(g, h, alt);
        auto w = what(" presented with stabilizers conjugated by " + std::to_string(x));
        visit(2, {&a}, b, w);
        visit(2, {&b}, a, w);
      }
      if (a.size() > 1) {
        Perm shift(static_cast<std::size_t>(a.size()));
        for (int i = 0; i < a.size(); ++i)
          shift[static_cast<std::size_t>(i)] = (i + 1) % a.size();
        Perm back = inverse(shift);
        GSet b = GSet::from_function(g, h, a.size(), [&](Elt e, int p) {
          return shift[static_cast<std::size_t>(a.act(e, back[static_cast<std::size_t>(p)]))];
        });
        visit(2, {&a}, b, what(" relabelled"));
        visit(2, {&b}, a, what(" relabelled"));
      }
      // 3: restriction
      for (SubgroupId k = 0; k < n; ++k)
        if (g.is_subgroup_of(k, h))
          visit(3, {&a}, restrict(a, k), what(" restricted to #" + std::to_string(k)));
      // 4: conjugation
      for (Elt x = 0; x < g.order(); ++x)
        visit(4, {&a}, conjugate(a, x), what(" conjugated by " + std::to_string(x)));
      // 5: sub-H-sets are unions of orbits
      auto os = orbits(a);
      for (std::uint32_t mask = 0; mask < (1U << os.size()); ++mask) {
        std::vector<int> pts;
        for (std::size_t i = 0; i < os.size(); ++i)
          if ((mask >> i) & 1U)
            pts.insert(pts.end(), os[i].points.begin(), os[i].points.end());
        std::sort(pts.begin(), pts.end());
        visit(5, {&a}, sub_gset(a, pts), what(" orbit subset " + std::to_string(mask)));
      }
      // 6: coproducts (classes are sorted by size)
      for (const auto& c2 : hc) {
        if (a.size() + c2.set.size() > size_bound)
          break;
        visit(6, {&a, &c2.set}, disjoint_union(a, c2.set),
              what(" + " + describe(c2.orbit_types, h)));
      }
      // 7: induction along K/H for H <= K
      for (SubgroupId k = 0; k < n; ++k) {
        if (!g.is_subgroup_of(h, k) || h == k || a.size() * g.index(h, k) > size_bound)
          continue;
        GSet kh = coset_set(g, h, k);
        visit(7, {&a, &kh}, induce(a, k), what(" induced to #" + std::to_string(k)));
      }
    }
  }
}

/// Evaluates every instance with is_admissible_hset on the actual H-sets.
inline AxiomReport validate_direct(const IndexingSystem& s, int size_bound) {
  AxiomReport rep;
  for_each_axiom_instance(s.group(), size_bound,
                          [&](int axiom, const std::vector<const GSet*>& premises,
                              const GSet& conclusion, const std::function<std::string()>& what) {
                            ++rep.checks;
                            for (const GSet* p : premises)
                              if (!is_admissible_hset(s, *p))
                                return;
                            if (is_admissible_hset(s, conclusion))
                              return;
                            if (rep.ok || axiom < rep.axiom) {
                              rep.ok = false;
                              rep.axiom = axiom;
                              rep.detail = what();
                            }
                          });
  return rep;
}

} // namespace detail

/// The axiom instances for one group and size bound, compiled to
/// implications between sets of required pairs. An instance fails for a
/// relation S iff S contains all premise pairs but not all conclusion pairs,
/// which is exactly when is_admissible_hset accepts the premises and
/// rejects the conclusion. Identical implications are merged.
class AxiomSuite {
public:
  AxiomSuite(const Group& g, int size_bound) : table_(std::make_shared<PairTable>(g)) {
    std::map<std::pair<PairMask, PairMask>, std::size_t> seen;
    detail::for_each_axiom_instance(
        g, size_bound,
        [&](int axiom, const std::vector<const GSet*>& premises, const GSet& conclusion,
            const std::function<std::string()>& what) {
          ++instances_;
          PairMask p;
          for (const GSet* s : premises)
            p |= table_->required(*s);
          PairMask c = table_->required(conclusion).minus(p);
          if (c.none())
            return;  // cannot fail
          auto [it, fresh] = seen.try_emplace({p, c}, rules_.size());
          if (fresh) {
            rules_.push_back({p, c, axiom});
            details_.push_back(what());
          } else if (axiom < rules_[it->second].axiom) {
            rules_[it->second].axiom = axiom;
            details_[it->second] = what();
          }
        });
    compact();
  }

  const PairTable& table() const { return *table_; }
  long instances() const { return instances_; }
  std::size_t clauses() const { return compact_.size(); }
  std::size_t implications() const { return rules_.size(); }

  AxiomReport check(const PairMask& s) const {
    AxiomReport rep;
    rep.checks = instances_;
    // compact_ is sorted by axiom, so the first violation has the least axiom
    for (const Rule& r : compact_) {
      if (r.premise.subset_of(s) && !r.conclusion.subset_of(s)) {
        rep.ok = false;
        rep.axiom = r.axiom;
        rep.detail = details_[r.source];
        break;
      }
    }
    return rep;
  }
  AxiomReport check(const IndexingSystem& s) const { return check(table_->mask(s)); }

private:
  struct Rule {
    PairMask premise;
    PairMask conclusion;
    int axiom;
    std::size_t source = 0;  // index into details_
  };

  /// Equivalent smaller rule set: a rule with conclusion bit c and premise P
  /// is implied by one with the same bit, premise P' ⊆ P and no larger
  /// axiom number. Survivors are regrouped by (axiom, premise).
  void compact() {
    struct Bit {
      PairMask premise;
      int bit;
      int axiom;
      std::size_t source;
    };
    std::vector<Bit> bits;
    for (std::size_t i = 0; i < rules_.size(); ++i)
      for (int b = 0; b < table_->size(); ++b)
        if (rules_[i].conclusion.test(b))
          bits.push_back({rules_[i].premise, b, rules_[i].axiom, i});
    auto popcount = [](const PairMask& m) { return std::popcount(m.w[0]) + std::popcount(m.w[1]); };
    std::sort(bits.begin(), bits.end(), [&](const Bit& a, const Bit& b) {
      if (a.bit != b.bit)
        return a.bit < b.bit;
      if (a.axiom != b.axiom)
        return a.axiom < b.axiom;
      return popcount(a.premise) < popcount(b.premise);
    });
    std::vector<Bit> kept;
    for (const Bit& x : bits) {
      bool dominated = false;
      for (auto it = kept.rbegin(); it != kept.rend() && it->bit == x.bit; ++it)
        if (it->axiom <= x.axiom && it->premise.subset_of(x.premise)) {
          dominated = true;
          break;
        }
      if (!dominated)
        kept.push_back(x);
    }
    std::map<std::pair<int, PairMask>, std::size_t> group;
    for (const Bit& x : kept) {
      auto [it, fresh] = group.try_emplace({x.axiom, x.premise}, compact_.size());
      if (fresh)
        compact_.push_back({x.premise, PairMask{}, x.axiom, x.source});
      compact_[it->second].conclusion.set(x.bit);
    }
    std::stable_sort(compact_.begin(), compact_.end(),
                     [](const Rule& a, const Rule& b) { return a.axiom < b.axiom; });
  }

  std::shared_ptr<PairTable> table_;
  std::vector<Rule> rules_;
  std::vector<Rule> compact_;
  std::vector<std::string> details_;
  long instances_ = 0;
};

/// Checks the seven set-level axioms on every H-set with at most size_bound
/// points, for every H, using is_admissible_hset as the membership oracle.
inline AxiomReport validate_against_axioms(const IndexingSystem& s, int size_bound) {
  if (size_bound < 1)
    throw IndexingError("validate: size bound must be at least 1");
  if (!PairTable::fits(s.group()))
    return detail::validate_direct(s, size_bound);
  return AxiomSuite(s.group(), size_bound).check(s);
}

// -- parsing ---------------------------------------------------------------

/// Resolves a subgroup token: "e", "G", "#id", "C<n>" (the unique cyclic
/// subgroup of order n) or "|n|" (the unique subgroup of order n).
inline SubgroupId parse_subgroup(const Group& g, const std::string& token) {
  auto trimmed = token;
  std::erase_if(trimmed, [](char c) { return c == ' '; });
  if (trimmed == "e" || trimmed == "1")
    return g.trivial_subgroup();
  if (trimmed == "G")
    return g.whole();
  auto number = [&](const std::string& digits) {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw IndexingError("subgroup token '" + token + "' is malformed");
    return std::stoi(digits);
  };
  if (!trimmed.empty() && trimmed[0] == '#') {
    int id = number(trimmed.substr(1));
    if (id >= g.subgroup_count())
      throw IndexingError("subgroup token '" + token + "' is out of range");
    return id;
  }
  auto element_order = [&](Elt x) {
    int k = 1;
    for (Elt y = x; y != 0; y = g.mul(y, x))
      ++k;
    return k;
  };
  std::vector<SubgroupId> hits;
  if (trimmed.size() >= 3 && trimmed.front() == '|' && trimmed.back() == '|') {
    int n = number(trimmed.substr(1, trimmed.size() - 2));
    for (SubgroupId k = 0; k < g.subgroup_count(); ++k)
      if (g.subgroup_order(k) == n)
        hits.push_back(k);
  } else if (!trimmed.empty() && trimmed[0] == 'C') {
    int n = number(trimmed.substr(1));
    for (SubgroupId k = 0; k < g.subgroup_count(); ++k)
      if (g.subgroup_order(k) == n &&
          std::any_of(g.elements(k).begin(), g.elements(k).end(),
                      [&](Elt x) { return element_order(x) == n; }))
        hits.push_back(k);
  } else {
    throw IndexingError("subgroup token '" + token + "' is malformed");
  }
  if (hits.size() != 1)
    throw IndexingError("subgroup token '" + token + "' matches " + std::to_string(hits.size()) +
                        " subgroups; use #id");
  return hits.front();
}

/// Parses "K<H[,K<H...]" into subgroup pairs.
inline std::vector<SubgroupPair> parse_pairs(const Group& g, const std::string& spec) {
  std::vector<SubgroupPair> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t end = spec.find(',', start);
    if (end == std::string::npos)
      end = spec.size();
    std::string item = spec.substr(start, end - start);
    if (!item.empty()) {
      auto lt = item.find('<');
      if (lt == std::string::npos)
        throw IndexingError("pair '" + item + "' must have the form K<H");
      SubgroupId k = parse_subgroup(g, item.substr(0, lt));
      SubgroupId h = parse_subgroup(g, item.substr(lt + 1));
      if (!g.is_subgroup_of(k, h))
        throw IndexingError("pair '" + item + "': K is not contained in H");
      out.emplace_back(k, h);
    }
    start = end + 1;
  }
  return out;
}

} // namespace ninf

#endif // NINF_INDEXING_HPP_
