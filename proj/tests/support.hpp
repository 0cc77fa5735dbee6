#pragma once

// Brute-force oracles. They decode group elements into coordinate tuples and
// work with plain modular arithmetic, so they share no code with the
// verifiers under test.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "diff_forge/design.hpp"
#include "diff_forge/family.hpp"
#include "diff_forge/group.hpp"

namespace oracle {

using Coords = std::vector<std::uint64_t>;

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

inline bool prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (n % i == 0) return false;
  return true;
}

inline std::uint64_t least_primitive_root(std::uint64_t p) {
  for (std::uint64_t g = 1; g < p; ++g) {
    std::uint64_t x = 1, ord = 0;
    do {
      x = x * g % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1) return g;
  }
  return 0;
}

/// index[x] = i with x = g^i mod p, for the least primitive root g.
inline std::vector<std::uint64_t> prime_logs(std::uint64_t p) {
  std::vector<std::uint64_t> log(p, 0);
  const auto g = least_primitive_root(p);
  std::uint64_t x = 1;
  for (std::uint64_t i = 0; i + 1 < p; ++i) {
    log[x] = i;
    x = x * g % p;
  }
  return log;
}

/// Moduli of the coordinates of a group: Z_n gives n, GF(p^f) gives f copies
/// of p, products concatenate.
inline Coords moduli(const diff_forge::AbelianGroup& g) {
  using K = diff_forge::AbelianGroup::Kind;
  if (g.kind() == K::cyclic) return {g.order()};
  if (g.kind() == K::field_additive) return Coords(g.field().degree(), g.field().characteristic());
  auto l = moduli(g.left());
  const auto r = moduli(g.right());
  l.insert(l.end(), r.begin(), r.end());
  return l;
}

/// Mixed-radix decoding; the last coordinate is the least significant except
/// inside a field, where the constant term comes first.
inline Coords decode(const diff_forge::AbelianGroup& g, std::uint64_t code) {
  using K = diff_forge::AbelianGroup::Kind;
  if (g.kind() == K::cyclic) return {code};
  if (g.kind() == K::field_additive) {
    Coords c;
    for (unsigned i = 0; i < g.field().degree(); ++i) {
      c.push_back(code % g.field().characteristic());
      code /= g.field().characteristic();
    }
    return c;
  }
  const auto ro = g.right().order();
  auto l = decode(g.left(), code / ro);
  const auto r = decode(g.right(), code % ro);
  l.insert(l.end(), r.begin(), r.end());
  return l;
}

inline Coords diff(const Coords& a, const Coords& b, const Coords& mod) {
  Coords out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + mod[i] - b[i]) % mod[i];
  return out;
}

inline std::map<Coords, std::uint64_t> tally(const std::vector<diff_forge::Block>& blocks,
                                             const diff_forge::AbelianGroup& g) {
  const auto mod = moduli(g);
  std::map<Coords, std::uint64_t> t;
  for (const auto& b : blocks) {
    std::vector<Coords> c;
    for (auto x : b) c.push_back(decode(g, x.code));
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j)
        if (i != j) ++t[diff(c[i], c[j], mod)];
  }
  return t;
}

/// Every element of G is hit mu times.
inline bool is_sdf(const std::vector<diff_forge::Block>& blocks, const diff_forge::AbelianGroup& g,
                   std::uint64_t mu) {
  const auto t = tally(blocks, g);
  if (t.size() != g.order()) return false;
  for (const auto& [k, v] : t)
    if (v != mu) return false;
  return true;
}

/// Elements of N never hit, everything else lambda times. `in_subgroup`
/// receives decoded coordinates.
template <class InN>
bool is_df(const std::vector<diff_forge::Block>& blocks, const diff_forge::AbelianGroup& g, std::uint64_t n_order,
           std::uint64_t lambda, InN in_subgroup) {
  const auto t = tally(blocks, g);
  std::uint64_t hit = 0;
  for (const auto& [k, v] : t) {
    if (in_subgroup(k)) return false;
    if (v != lambda) return false;
    ++hit;
  }
  return hit == g.order() - n_order;
}

/// Pair coverage counted with a map over unordered pairs.
inline bool is_design(const diff_forge::Design& d) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> cover;
  for (const auto& b : d.blocks) {
    if (b.size() != d.k) return false;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] >= d.v) return false;
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        if (b[i] == b[j]) return false;
        ++cover[{std::min(b[i], b[j]), std::max(b[i], b[j])}];
      }
    }
  }
  if (cover.size() != std::uint64_t{d.v} * (d.v - 1) / 2) return false;
  for (const auto& [k, v] : cover)
    if (v != d.lambda) return false;
  return true;
}

}  // namespace oracle
