// Permutations and maps of finite ordinals.
//
// A permutation p of {0..n-1} is stored as its image vector: p[i] is where
// i goes. Composition follows function composition: compose(a, b)[i] = a[b[i]].

#ifndef NINF_PERM_HPP_
#define NINF_PERM_HPP_

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ninf {

using Perm = std::vector<int>;
/// A map [n] -> [m] between finite ordinals, stored as its image vector.
using IndexMap = std::vector<int>;

inline Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_identity(std::span<const int> p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i))
      return false;
  return true;
}

inline bool is_perm(std::span<const int> p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[static_cast<std::size_t>(x)])
      return false;
    seen[static_cast<std::size_t>(x)] = 1;
  }
  return true;
}

inline bool is_bijection(std::span<const int> map, int target_size) {
  return static_cast<int>(map.size()) == target_size && is_perm(map);
}

inline Perm compose(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("compose: degree mismatch");
  Perm r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    r[i] = a[static_cast<std::size_t>(b[i])];
  return r;
}

/// Composition of arbitrary index maps: (a . b)[i] = a[b[i]].
inline IndexMap compose_maps(std::span<const int> a, std::span<const int> b) {
  IndexMap r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    r[i] = a[static_cast<std::size_t>(b[i])];
  return r;
}

inline Perm inverse(std::span<const int> p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}

/// Disjoint sum of index maps: block i of the source goes into block i of
/// the target. `target_sizes[i]` is the size of the i-th target block.
inline IndexMap disjoint_sum(const std::vector<IndexMap>& maps,
                             std::span<const int> target_sizes) {
  IndexMap r;
  int offset = 0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (int x : maps[i])
      r.push_back(x + offset);
    offset += target_sizes[i];
  }
  return r;
}

inline Perm disjoint_sum(const std::vector<Perm>& perms) {
  std::vector<int> sizes;
  sizes.reserve(perms.size());
  for (const auto& p : perms)
    sizes.push_back(static_cast<int>(p.size()));
  return disjoint_sum(perms, sizes);
}

/// Block permutation delta<k_1..k_n>: the block of size k_i that sits at
/// position i in the source is moved, order preserved, to block position
/// delta(i) in the target.
inline Perm block_perm(std::span<const int> delta, std::span<const int> sizes) {
  const std::size_t n = delta.size();
  if (sizes.size() != n)
    throw std::invalid_argument("block_perm: size count mismatch");
  Perm inv = inverse(delta);
  // start offset of each target block position
  std::vector<int> target_start(n + 1, 0);
  for (std::size_t p = 0; p < n; ++p)
    target_start[p + 1] = target_start[p] + sizes[static_cast<std::size_t>(inv[p])];
  Perm r;
  r.reserve(static_cast<std::size_t>(target_start[n]));
  for (std::size_t i = 0; i < n; ++i) {
    int start = target_start[static_cast<std::size_t>(delta[i])];
    for (int j = 0; j < sizes[i]; ++j)
      r.push_back(start + j);
  }
  return r;
}

/// The permutation delta[[delta_1..delta_n]] = delta<k_1..k_n> o (delta_1 + ... + delta_n)
/// with k_i the degree of delta_i.
inline Perm nested_perm(std::span<const int> delta, const std::vector<Perm>& inner) {
  std::vector<int> sizes;
  sizes.reserve(inner.size());
  for (const auto& p : inner)
    sizes.push_back(static_cast<int>(p.size()));
  return compose(block_perm(delta, sizes), disjoint_sum(inner));
}

/// Block map alpha(k_1..k_n)(l_1..l_m): [sum k] -> [sum l] sending the i-th
/// source block onto the alpha(i)-th target block, which must have the same size.
inline IndexMap block_map(std::span<const int> alpha, std::span<const int> source_sizes,
                          std::span<const int> target_sizes) {
  std::vector<int> target_start(target_sizes.size() + 1, 0);
  for (std::size_t j = 0; j < target_sizes.size(); ++j)
    target_start[j + 1] = target_start[j] + target_sizes[j];
  IndexMap r;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    auto j = static_cast<std::size_t>(alpha[i]);
    if (source_sizes[i] != target_sizes[j])
      throw std::invalid_argument("block_map: block size mismatch");
    for (int x = 0; x < source_sizes[i]; ++x)
      r.push_back(target_start[j] + x);
  }
  return r;
}

/// Calls f(p) for every permutation of degree n, in lexicographic order.
template <typename F>
void for_each_perm(int n, F&& f) {
  Perm p = identity_perm(n);
  do {
    f(static_cast<const Perm&>(p));
  } while (std::next_permutation(p.begin(), p.end()));
}

inline std::string to_string(std::span<const int> p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i)
      s += ',';
    s += std::to_string(p[i]);
  }
  return s + "]";
}

} // namespace ninf

#endif // NINF_PERM_HPP_
