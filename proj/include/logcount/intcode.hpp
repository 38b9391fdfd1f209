#pragma once

#include <cstddef>
#include <vector>

#include "logcount/bitstring.hpp"
#include "logcount/encoding.hpp"
#include "logcount/nat.hpp"

// Sign-magnitude integer encoding: bit 0 is the sign (set means negative),
// bit i+1 is magnitude bit 2^i. Zero has exactly one encoding, the all-zero
// string. Addition, multiplication and list summation are computed from
// their defining bit formulas; decode-and-recompute is the test oracle,
// never the implementation.
namespace logcount::intcode {

struct IntString {
  BitString raw;

  friend bool operator==(const IntString& a, const IntString& b) {
    return a.raw == b.raw;
  }
  friend bool operator!=(const IntString& a, const IntString& b) {
    return !(a == b);
  }
};

namespace detail {

constexpr std::size_t kDenseCap = std::size_t(1) << 22;

// Dense bool view of an encoded integer; index 0 is the sign position.
struct Dense {
  std::vector<bool> bit;

  bool at(std::size_t i) const { return i < bit.size() && bit[i]; }
  std::size_t len() const { return bit.size(); }  // = |X|
};

inline Dense densify(const BitString& x) {
  Dense d;
  for (const Nat& p : x.positions()) {
    std::uint64_t i = to_u64(p, "integer bit position");
    if (i >= kDenseCap)
      throw BadInput("integer encoding too long for bit-formula arithmetic");
    if (i >= d.bit.size()) d.bit.resize(i + 1, false);
    d.bit[i] = true;
  }
  return d;
}

inline BitString undensify(const std::vector<bool>& bit) {
  BitStringBuilder out;
  for (std::size_t i = 0; i < bit.size(); ++i)
    if (bit[i]) out.set(nat_from_u64(i));
  return out.finish();
}

// intsize(X) > intsize(Y), decided by bit comparison on the magnitude
// positions. k ranges over magnitude bits only; the sign at position 0
// never takes part in the comparison.
inline bool fid(const Dense& x, const Dense& y) {
  if (x.len() < y.len()) return false;
  for (std::size_t k = x.len(); k >= 1; --k) {
    if (x.at(k) && !y.at(k)) {
      bool dominated = true;
      for (std::size_t j = k + 1; j <= x.len(); ++j)
        if (y.at(j) && !x.at(j)) dominated = false;
      if (dominated) return true;
    }
  }
  return false;
}

inline bool carry(std::size_t i, const Dense& x, const Dense& y) {
  if (x.at(0) != y.at(0)) return false;
  for (std::size_t k = 1; k < i; ++k) {
    if (!(x.at(k) && y.at(k))) continue;
    bool chain = true;
    for (std::size_t j = k + 1; j < i; ++j)
      if (!(x.at(j) || y.at(j))) chain = false;
    if (chain) return true;
  }
  return false;
}

inline bool borrow(std::size_t i, const Dense& x, const Dense& y) {
  if (x.at(0) == y.at(0)) return false;
  if (!fid(x, y)) return false;
  for (std::size_t k = 1; k < i; ++k) {
    if (!(!x.at(k) && y.at(k))) continue;
    bool chain = true;
    for (std::size_t j = k + 1; j < i; ++j)
      if (!(!x.at(j) || y.at(j))) chain = false;
    if (chain) return true;
  }
  return false;
}

// Ripple-carry addition of plain binary strings (no sign position).
inline std::vector<bool> bin_add(const std::vector<bool>& a,
                                 const std::vector<bool>& b) {
  std::vector<bool> out;
  out.reserve(std::max(a.size(), b.size()) + 1);
  bool c = false;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()) || c; ++i) {
    bool x = i < a.size() && a[i];
    bool y = i < b.size() && b[i];
    out.push_back(x ^ y ^ c);
    c = (x && y) || (x && c) || (y && c);
  }
  while (!out.empty() && !out.back()) out.pop_back();
  return out;
}

}  // namespace detail

inline bool is_canonical(const IntString& x) {
  // The only malformed shape is a sign bit with no magnitude ("-0").
  return !(x.raw.popcount() == 1 && x.raw.test(0));
}

inline IntString normalize(const IntString& x) {
  if (is_canonical(x)) return x;
  return IntString{};
}

inline BitString binary_part(const IntString& x) {
  BitStringBuilder out;
  for (const Nat& p : x.raw.positions())
    if (p >= 1) out.set(p - 1);
  return out.finish();
}

inline Nat intsize(const IntString& x) {
  Nat v = 0;
  for (const Nat& p : x.raw.positions())
    if (p >= 1) mpz_setbit(v.get_mpz_t(), to_u64(p - 1, "magnitude bit"));
  return v;
}

inline Int decode_int(const IntString& x) {
  Nat mag = intsize(x);
  return x.raw.test(0) ? Int(-mag) : Int(mag);
}

inline IntString encode_int(const Int& z) {
  if (z == 0) return IntString{};
  Nat mag = abs(z);
  BitStringBuilder out;
  if (z < 0) out.set(0);
  std::size_t top = mpz_sizeinbase(mag.get_mpz_t(), 2);
  for (std::size_t i = 0; i < top; ++i)
    if (mpz_tstbit(mag.get_mpz_t(), i)) out.set(nat_from_u64(i + 1));
  return IntString{out.finish()};
}

inline bool carry_z(const Nat& i, const IntString& x, const IntString& y) {
  return detail::carry(to_u64(i, "bit index"), detail::densify(x.raw),
                       detail::densify(y.raw));
}

inline bool first_int_dominates(const IntString& x, const IntString& y) {
  return detail::fid(detail::densify(x.raw), detail::densify(y.raw));
}

inline bool borrow(const Nat& i, const IntString& x, const IntString& y) {
  return detail::borrow(to_u64(i, "bit index"), detail::densify(x.raw),
                        detail::densify(y.raw));
}

// Integer addition from its defining bit formula. The sign clause fires
// for whichever operand dominates, or when both operands are negative (the
// equal-magnitude negative case has no dominator but still needs the sign);
// each magnitude bit is the XOR of the operand bits and exactly one of the
// carry/borrow clauses. Equal magnitudes of opposite sign cancel to the
// all-zero string.
inline IntString add_z(const IntString& xs, const IntString& ys) {
  detail::Dense x = detail::densify(normalize(xs).raw);
  detail::Dense y = detail::densify(normalize(ys).raw);
  bool fxy = detail::fid(x, y);
  bool fyx = detail::fid(y, x);
  std::vector<bool> out(std::max(x.len(), y.len()) + 2, false);
  out[0] = (x.at(0) && fxy) || (y.at(0) && fyx) || (x.at(0) && y.at(0));
  for (std::size_t i = 1; i < out.size(); ++i) {
    bool circ = detail::carry(i, x, y) || detail::borrow(i, x, y) ||
                detail::borrow(i, y, x);
    out[i] = x.at(i) ^ y.at(i) ^ circ;
  }
  return IntString{detail::undensify(out)};
}

// Natural binary product, schoolbook shift-and-add over the bit vectors.
inline BitString mul_bin(const BitString& x, const BitString& y) {
  detail::Dense a = detail::densify(x);
  detail::Dense b = detail::densify(y);
  std::vector<bool> acc;
  for (std::size_t k = 0; k < b.len(); ++k) {
    if (!b.at(k)) continue;
    std::vector<bool> shifted(k, false);
    shifted.insert(shifted.end(), a.bit.begin(), a.bit.end());
    acc = detail::bin_add(acc, shifted);
  }
  return detail::undensify(acc);
}

// Integer multiplication: magnitude is the binary product of the two
// magnitude parts shifted back into place, sign is set when the operand
// signs differ. A zero magnitude yields the canonical all-zero string
// rather than a signed zero.
inline IntString mul_z(const IntString& xs, const IntString& ys) {
  IntString x = normalize(xs);
  IntString y = normalize(ys);
  BitString mag = mul_bin(binary_part(x), binary_part(y));
  if (mag.empty()) return IntString{};
  BitStringBuilder out;
  if (x.raw.test(0) != y.raw.test(0)) out.set(0);
  for (const Nat& p : mag.positions()) out.set(p + 1);
  return IntString{out.finish()};
}

// Sum of the first n rows of Z, each row a plain binary string. The length
// bound m is part of the calling convention only; sums are exact.
inline BitString sum_nat(std::uint64_t n, const Nat& /*m*/,
                         const BitString& Z) {
  std::vector<bool> acc;
  for (std::uint64_t i = 0; i < n; ++i) {
    BitString r = encoding::row(nat_from_u64(i), Z);
    if (r.empty()) continue;
    acc = detail::bin_add(acc, detail::densify(r).bit);
  }
  return detail::undensify(acc);
}

namespace detail {

inline BitString signed_part_list(const BitString& Z, bool negatives) {
  BitStringBuilder out;
  // Group the set bits of Z by row; row i is an encoded integer.
  std::vector<std::pair<Nat, Nat>> cells;
  for (const Nat& b : Z.positions()) {
    auto p = encoding::split(b);
    if (p) cells.emplace_back(p->left, p->right);
  }
  // A row belongs to the requested partition according to its sign bit.
  for (auto& [i, c] : cells) {
    if (c == 0) continue;  // sign position, never part of a magnitude
    bool row_negative = Z.test(encoding::pair(i, Nat(0)));
    if (row_negative == negatives) out.set(encoding::pair(i, c - 1));
  }
  return out.finish();
}

}  // namespace detail

// Keeps the magnitude parts of the non-negative rows of a list of encoded
// integers; other rows become zero.
inline BitString pos_list(const BitString& Z) {
  return detail::signed_part_list(Z, false);
}

inline BitString neg_list(const BitString& Z) {
  return detail::signed_part_list(Z, true);
}

namespace detail {

inline BitString shift_up(const BitString& x) {
  BitStringBuilder out;
  for (const Nat& p : x.positions()) out.set(p + 1);
  return out.finish();
}

}  // namespace detail

inline IntString pos_sum(std::uint64_t n, const Nat& m, const BitString& Z) {
  return IntString{detail::shift_up(sum_nat(n, m, pos_list(Z)))};
}

// The defining formula pins the sign position even when no negative rows
// exist; add_z normalizes the resulting "-0" away.
inline IntString neg_sum(std::uint64_t n, const Nat& m, const BitString& Z) {
  BitString mag = detail::shift_up(sum_nat(n, m, neg_list(Z)));
  return IntString{mag.flipped(0)};
}

// Sum of a list of encoded integers: positive and negative partitions are
// summed as naturals and recombined with one signed addition.
inline IntString sum_z(std::uint64_t n, const Nat& m, const BitString& Z) {
  return add_z(pos_sum(n, m, Z), neg_sum(n, m, Z));
}

}  // namespace logcount::intcode
