#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "logcount/bitstring.hpp"
#include "logcount/nat.hpp"

// String-encoding toolkit: the pairing function with its projections, and
// the extraction functions that read lists of strings, grids of strings,
// lists of numbers and number matrices out of a single string, together
// with the canonical builders inverting them.
namespace logcount::encoding {

// <x,y> = (x+y)(x+y+1) + 2y
inline Nat pair(const Nat& x, const Nat& y) {
  Nat s = x + y;
  return s * (s + 1) + 2 * y;
}

// Chained form <x1,...,xk> = <<x1,...,x_{k-1}>,xk>.
template <typename... Rest>
inline Nat pair(const Nat& x, const Nat& y, const Nat& z, const Rest&... rest) {
  return pair(pair(x, y), z, rest...);
}

struct PairParts {
  Nat left;
  Nat right;
};

namespace detail {

inline std::optional<PairParts> split_u64(std::uint64_t z) {
  unsigned __int128 t = (unsigned __int128)4 * z + 1;
  std::uint64_t r = static_cast<std::uint64_t>(sqrtl((long double)t));
  while ((unsigned __int128)r * r > t) --r;
  while ((unsigned __int128)(r + 1) * (r + 1) <= t) ++r;
  std::uint64_t s = (r - 1) / 2;
  while (s > 0 && (unsigned __int128)s * (s + 1) > z) --s;
  while ((unsigned __int128)(s + 1) * (s + 2) <= z) ++s;
  unsigned __int128 base = (unsigned __int128)s * (s + 1);
  std::uint64_t rem = static_cast<std::uint64_t>(z - base);
  if (rem % 2 != 0) return std::nullopt;
  std::uint64_t y = rem / 2;
  if (y > s) return std::nullopt;
  return PairParts{nat_from_u64(s - y), nat_from_u64(y)};
}

}  // namespace detail

// Decomposes z as <left,right> by inverting the quadratic, or returns
// nullopt when z is not a pair number.
inline std::optional<PairParts> split(const Nat& z) {
  if (fits_u64(z)) return detail::split_u64(to_u64(z));
  // s = x+y solves s(s+1) <= z < (s+1)(s+2).
  Nat s = (nat_isqrt(4 * z + 1) - 1) / 2;
  Nat base = s * (s + 1);
  while (base > z) {
    --s;
    base = s * (s + 1);
  }
  while ((s + 1) * (s + 2) <= z) {
    ++s;
    base = s * (s + 1);
  }
  Nat rem = z - base;
  if (rem % 2 != 0) return std::nullopt;
  Nat y = rem / 2;
  if (y > s) return std::nullopt;
  return PairParts{s - y, y};
}

inline bool is_pair(const Nat& z) { return split(z).has_value(); }

// left(x) = right(x) = 0 when x is not a pair number.
inline Nat left(const Nat& z) {
  auto p = split(z);
  return p ? p->left : Nat(0);
}

inline Nat right(const Nat& z) {
  auto p = split(z);
  return p ? p->right : Nat(0);
}

// Row(x,Z)(i) <-> i < |Z| and Z(<x,i>). Every set bit <x,i> of Z satisfies
// i <= <x,i> < |Z|, so it suffices to project the set positions.
inline BitString row(const Nat& x, const BitString& Z) {
  BitStringBuilder out;
  for (const Nat& b : Z.positions()) {
    auto p = split(b);
    if (p && p->left == x) out.set(std::move(p->right));
  }
  return out.finish();
}

// Row2(x,y,Z)(i) <-> i < |Z| and Row(x,Z)(<y,i>); equal to row(y, row(x,Z))
// since positions only shrink under projection.
inline BitString row2(const Nat& x, const Nat& y, const BitString& Z) {
  return row(y, row(x, Z));
}

// seq(i,Z): the least y < |Z| with Z(<i,y>), or |Z| when row i has no set
// bit.
inline Nat seq(const Nat& i, const BitString& Z) {
  std::optional<Nat> best;
  for (const Nat& b : Z.positions()) {
    auto p = split(b);
    if (p && p->left == i && (!best || p->right < *best))
      best = std::move(p->right);
  }
  return best ? *best : Z.length();
}

// entry(i,j,Z) = seq(j, row(i,Z)).
inline Nat entry(const Nat& i, const Nat& j, const BitString& Z) {
  return seq(j, row(i, Z));
}

// The builders below emit the lexicographically least string whose
// readouts reproduce the inputs; in particular no bit is set at a
// non-pair position.

inline BitString build_list(const std::vector<BitString>& items) {
  BitStringBuilder out;
  for (std::size_t x = 0; x < items.size(); ++x)
    for (const Nat& i : items[x].positions())
      out.set(pair(nat_from_u64(x), i));
  return out.finish();
}

inline BitString build_grid(const std::vector<std::vector<BitString>>& grid) {
  BitStringBuilder out;
  for (std::size_t x = 0; x < grid.size(); ++x)
    for (std::size_t y = 0; y < grid[x].size(); ++y)
      for (const Nat& i : grid[x][y].positions())
        out.set(pair(nat_from_u64(x), pair(nat_from_u64(y), i)));
  return out.finish();
}

// List of numbers read back by seq. An all-zero list encodes as the empty
// string (the seq default already reads 0 there); otherwise every entry
// needs its witness bit, zeros included.
inline BitString build_numlist(const std::vector<Nat>& nums) {
  bool all_zero = true;
  for (const Nat& v : nums)
    if (v != 0) all_zero = false;
  BitStringBuilder out;
  if (!all_zero)
    for (std::size_t i = 0; i < nums.size(); ++i)
      out.set(pair(nat_from_u64(i), nums[i]));
  return out.finish();
}

// Number matrix read back by entry. All-zero rows vanish entirely; any row
// with a nonzero entry keeps witness bits for its zeros as well.
inline BitString build_natmatrix(const std::vector<std::vector<Nat>>& m) {
  BitStringBuilder out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    bool all_zero = true;
    for (const Nat& v : m[i])
      if (v != 0) all_zero = false;
    if (all_zero) continue;
    for (std::size_t j = 0; j < m[i].size(); ++j)
      out.set(pair(nat_from_u64(i), pair(nat_from_u64(j), m[i][j])));
  }
  return out.finish();
}

}  // namespace logcount::encoding
