#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "logcount/bitstring.hpp"
#include "logcount/encoding.hpp"
#include "logcount/intcode.hpp"
#include "logcount/nat.hpp"

// Matrix powering over Z2 and Z. A Z2 matrix stores entry (i,j) as the
// single bit <i,j>; a Z matrix stores entry (i,j) as an encoded integer in
// a doubly indexed row. Power sequences list [I, X, X^2, ..., X^k]; the
// checkers validate a claimed sequence conjunct by conjunct, and the
// explicit witness records every bitwise product behind every entry.
namespace logcount::matpow {

struct BoolMatrix {
  std::uint64_t n = 0;
  BitString raw;

  friend bool operator==(const BoolMatrix& a, const BoolMatrix& b) {
    return a.n == b.n && a.raw == b.raw;
  }
  friend bool operator!=(const BoolMatrix& a, const BoolMatrix& b) {
    return !(a == b);
  }
};

struct IntMatrix {
  std::uint64_t n = 0;
  BitString raw;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.n == b.n && a.raw == b.raw;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) {
    return !(a == b);
  }
};

// Row l of raw is the l-th power, row 0 the identity.
struct Pow2Sequence {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  BitString raw;
};

struct PowZSequence {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  BitString raw;
};

struct ExplicitWitness2 {
  Pow2Sequence powers;
  BitString witness;  // row2(l+1, <i,j>) = bitwise products behind (i,j)
};

namespace detail {

// Row of a Z2 matrix as packed words.
struct Mask {
  std::vector<std::uint64_t> w;

  explicit Mask(std::uint64_t n = 0) : w((n + 63) / 64, 0) {}

  bool get(std::uint64_t b) const {
    std::uint64_t word = b / 64;
    return word < w.size() && (w[word] >> (b % 64)) & 1;
  }
  void set(std::uint64_t b) { w[b / 64] |= std::uint64_t(1) << (b % 64); }

  bool and_parity(const Mask& o) const {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < w.size() && i < o.w.size(); ++i)
      acc ^= w[i] & o.w[i];
    return __builtin_parityll(acc);
  }

  friend bool operator==(const Mask& a, const Mask& b) { return a.w == b.w; }
};

using MaskRows = std::vector<Mask>;

inline MaskRows identity_rows(std::uint64_t n) {
  MaskRows rows(n, Mask(n));
  for (std::uint64_t i = 0; i < n; ++i) rows[i].set(i);
  return rows;
}

inline Mask column(const MaskRows& rows, std::uint64_t j) {
  Mask c(rows.size());
  for (std::uint64_t b = 0; b < rows.size(); ++b)
    if (rows[b].get(j)) c.set(b);
  return c;
}

inline MaskRows to_rows(const BoolMatrix& x) {
  MaskRows rows(x.n, Mask(x.n));
  for (const Nat& b : x.raw.positions()) {
    auto p = encoding::split(b);
    if (!p || p->left >= x.n || p->right >= x.n)
      throw BadInput("matrix string has a bit outside the entry region");
    rows[to_u64(p->left)].set(to_u64(p->right));
  }
  return rows;
}

inline BoolMatrix from_rows(std::uint64_t n, const MaskRows& rows) {
  BitStringBuilder out;
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j)
      if (rows[i].get(j)) out.set(encoding::pair(nat_from_u64(i), nat_from_u64(j)));
  return BoolMatrix{n, out.finish()};
}

// Entry (i,j) of the product is the parity of row i of a AND column j of b.
inline MaskRows rows_prod(std::uint64_t n, const MaskRows& a, const MaskRows& b) {
  MaskRows out(n, Mask(n));
  std::vector<Mask> cols;
  cols.reserve(n);
  for (std::uint64_t j = 0; j < n; ++j) cols.push_back(column(b, j));
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j)
      if (a[i].and_parity(cols[j])) out[i].set(j);
  return out;
}

inline void require_dims(std::uint64_t n, std::uint64_t a, std::uint64_t b) {
  if (a != n || b != n) throw BadInput("matrix dimension mismatch");
}

}  // namespace detail

// The n x n identity over Z2: exactly the bits <i,i> for i < n.
inline BoolMatrix id2(std::uint64_t n) {
  BitStringBuilder out;
  for (std::uint64_t i = 0; i < n; ++i)
    out.set(encoding::pair(nat_from_u64(i), nat_from_u64(i)));
  return BoolMatrix{n, out.finish()};
}

inline bool parity(const BitString& x) { return x.popcount() % 2 == 1; }

// Pairwise products of row i of X1 against column j of X2; entry (i,j) of
// the mod-2 product is the parity of this string.
inline BitString g2(std::uint64_t n, std::uint64_t i, std::uint64_t j,
                    const BoolMatrix& x1, const BoolMatrix& x2) {
  if (i >= n || j >= n) throw BadInput("entry index out of range");
  detail::require_dims(n, x1.n, x2.n);
  detail::MaskRows a = detail::to_rows(x1);
  detail::MaskRows b = detail::to_rows(x2);
  BitStringBuilder out;
  for (std::uint64_t c = 0; c < n; ++c)
    if (a[i].get(c) && b[c].get(j)) out.set(nat_from_u64(c));
  return out.finish();
}

inline BoolMatrix prod2(std::uint64_t n, const BoolMatrix& x1,
                        const BoolMatrix& x2) {
  detail::require_dims(n, x1.n, x2.n);
  return detail::from_rows(
      n, detail::rows_prod(n, detail::to_rows(x1), detail::to_rows(x2)));
}

// [ID(n), X, X^2, ..., X^k], assembled as a list of matrix strings with all
// unused bits zero.
inline Pow2Sequence powseq2(std::uint64_t n, std::uint64_t k,
                            const BoolMatrix& x) {
  detail::require_dims(n, x.n, n);
  detail::MaskRows xr = detail::to_rows(x);
  detail::MaskRows cur = detail::identity_rows(n);
  BitStringBuilder out;
  for (std::uint64_t l = 0; l <= k; ++l) {
    if (l > 0) cur = detail::rows_prod(n, xr, cur);
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j)
        if (cur[i].get(j))
          out.set(encoding::pair(nat_from_u64(l),
                                 encoding::pair(nat_from_u64(i), nat_from_u64(j))));
  }
  return Pow2Sequence{n, k, out.finish()};
}

inline BoolMatrix powseq2_row(const Pow2Sequence& seq, std::uint64_t l) {
  return BoolMatrix{seq.n, encoding::row(nat_from_u64(l), seq.raw)};
}

// X^k, read off as row k of the power sequence.
inline BoolMatrix pow2(std::uint64_t n, std::uint64_t k, const BoolMatrix& x) {
  return powseq2_row(powseq2(n, k, x), k);
}

inline bool decide_pow2_entry(std::uint64_t n, std::uint64_t k, std::uint64_t i,
                              std::uint64_t j, const BoolMatrix& x) {
  if (i >= n || j >= n) throw BadInput("entry index out of range");
  return pow2(n, k, x).raw.test(encoding::pair(nat_from_u64(i), nat_from_u64(j)));
}

namespace detail {

// Decodes a claimed power-sequence string into per-power mask rows.
// Returns nullopt if any set bit falls outside the encoded list: every bit
// must be <l,<i,j>> with l <= k and i,j < n, which is exactly the "all
// other bits are zero" convention made checkable.
inline std::optional<std::vector<MaskRows>> decode_seq2(std::uint64_t n,
                                                        std::uint64_t k,
                                                        const BitString& y) {
  std::vector<MaskRows> rows(k + 1, MaskRows(n, Mask(n)));
  for (const Nat& b : y.positions()) {
    auto p = encoding::split(b);
    if (!p || p->left > k) return std::nullopt;
    auto q = encoding::split(p->right);
    if (!q || q->left >= n || q->right >= n) return std::nullopt;
    rows[to_u64(p->left)][to_u64(q->left)].set(to_u64(q->right));
  }
  return rows;
}

}  // namespace detail

// Checks every conjunct of the power-sequence graph: the size bound, the
// convention that set bits only encode list entries, row 0 = ID(n), and the
// product recurrence between consecutive rows.
inline bool check_delta_powseq2(std::uint64_t n, std::uint64_t k,
                                const BoolMatrix& x, const BitString& y) {
  detail::require_dims(n, x.n, n);
  if (!y.empty() &&
      y.length() >= encoding::pair(nat_from_u64(k),
                                   encoding::pair(nat_from_u64(n), nat_from_u64(n))))
    return false;
  auto rows = detail::decode_seq2(n, k, y);
  if (!rows) return false;
  if ((*rows)[0] != detail::identity_rows(n)) return false;
  detail::MaskRows xr = detail::to_rows(x);
  for (std::uint64_t l = 0; l < k; ++l)
    if ((*rows)[l + 1] != detail::rows_prod(n, xr, (*rows)[l])) return false;
  return true;
}

// Power sequence plus the string recording, for every power and entry, the
// bitwise products whose parity is that entry. Each power here is read off
// the witness parities rather than taken from powseq2, so the two
// constructions can be compared against each other.
inline ExplicitWitness2 explicit_witness2(std::uint64_t n, std::uint64_t k,
                                          const BoolMatrix& x) {
  detail::MaskRows xr = detail::to_rows(x);
  detail::MaskRows cur = detail::identity_rows(n);
  BitStringBuilder ybits;
  BitStringBuilder zbits;
  auto emit_power = [&](std::uint64_t l, const detail::MaskRows& rows) {
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j)
        if (rows[i].get(j))
          ybits.set(encoding::pair(nat_from_u64(l),
                                   encoding::pair(nat_from_u64(i), nat_from_u64(j))));
  };
  emit_power(0, cur);
  for (std::uint64_t l = 0; l < k; ++l) {
    detail::MaskRows next(n, detail::Mask(n));
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j) {
        Nat cell = encoding::pair(nat_from_u64(i), nat_from_u64(j));
        bool odd = false;
        for (std::uint64_t b = 0; b < n; ++b)
          if (xr[i].get(b) && cur[b].get(j)) {
            odd = !odd;
            zbits.set(encoding::pair(nat_from_u64(l + 1),
                                     encoding::pair(cell, nat_from_u64(b))));
          }
        if (odd) next[i].set(j);
      }
    emit_power(l + 1, next);
    cur = std::move(next);
  }
  return ExplicitWitness2{Pow2Sequence{n, k, ybits.finish()}, zbits.finish()};
}

// Validates a claimed (Y, Z) pair: Y must be the power sequence and Z must
// witness every bitwise product, bit for bit.
inline bool check_explicit_witness2(std::uint64_t n, std::uint64_t k,
                                    const BoolMatrix& x, const BitString& y,
                                    const BitString& z) {
  detail::require_dims(n, x.n, n);
  auto rows = detail::decode_seq2(n, k, y);
  if (!rows) return false;
  if ((*rows)[0] != detail::identity_rows(n)) return false;

  // Witness bits live at <l+1, <<i,j>, b>> with b < n; anything else is out
  // of region.
  std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>, detail::Mask>
      wit;
  for (const Nat& pos : z.positions()) {
    auto p = encoding::split(pos);
    if (!p || p->left < 1 || p->left > k) return false;
    auto q = encoding::split(p->right);
    if (!q) return false;
    auto cell = encoding::split(q->left);
    if (!cell || cell->left >= n || cell->right >= n || q->right >= n)
      return false;
    auto key = std::make_tuple(to_u64(p->left), to_u64(cell->left),
                               to_u64(cell->right));
    wit.try_emplace(key, detail::Mask(n)).first->second.set(to_u64(q->right));
  }

  detail::MaskRows xr = detail::to_rows(x);
  for (std::uint64_t l = 0; l < k; ++l) {
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j) {
        detail::Mask expect(n);
        for (std::uint64_t b = 0; b < n; ++b)
          if (xr[i].get(b) && (*rows)[l][b].get(j)) expect.set(b);
        auto it = wit.find(std::make_tuple(l + 1, i, j));
        detail::Mask got = it == wit.end() ? detail::Mask(n) : it->second;
        if (got != expect) return false;
        bool odd = false;
        for (std::uint64_t b = 0; b < n; ++b) odd ^= expect.get(b);
        if ((*rows)[l + 1][i].get(j) != odd) return false;
      }
  }
  return true;
}

// Maximum of the n numbers listed in W (0 when n = 0). Rows with no set bit
// read as |W|, as seq defines.
inline Nat max_list(std::uint64_t n, const BitString& w) {
  Nat best = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    Nat v = encoding::seq(nat_from_u64(i), w);
    if (i == 0 || v > best) best = v;
  }
  return best;
}

// Block-diagonal assembly: block a, of dimension (W1)^a, occupies rows and
// columns [a*m, a*m + (W1)^a) of a (b*m)-dimensional matrix, m the largest
// listed dimension. Entries outside a block's own dimension are ignored.
inline BoolMatrix block_diag(std::uint64_t b, const BitString& w1,
                             const BitString& x) {
  std::uint64_t m = to_u64(max_list(b, w1), "block dimension");
  BitStringBuilder out;
  for (std::uint64_t a = 0; a < b; ++a) {
    std::uint64_t na = to_u64(encoding::seq(nat_from_u64(a), w1), "dimension");
    BitString block = encoding::row(nat_from_u64(a), x);
    for (const Nat& bit : block.positions()) {
      auto p = encoding::split(bit);
      if (!p || p->left >= na || p->right >= na) continue;
      out.set(encoding::pair(nat_from_u64(a * m) + p->left,
                             nat_from_u64(a * m) + p->right));
    }
  }
  return BoolMatrix{b * m, out.finish()};
}

// Batched power sequences: row i of the result is powseq2((W1)^i, (W2)^i,
// X^[i]). Computed by powering one block-diagonal matrix and extracting
// each block, then cross-checked against the per-instance sequences; the
// two must agree.
inline BitString powseq2_star(std::uint64_t b, const BitString& w1,
                              const BitString& w2, const BitString& x) {
  std::uint64_t n_max = to_u64(max_list(b, w1), "dimension");
  std::uint64_t k_max = to_u64(max_list(b, w2), "power");

  Pow2Sequence agg = powseq2(b * n_max, k_max, block_diag(b, w1, x));
  std::vector<detail::MaskRows> agg_rows;
  for (std::uint64_t p = 0; p <= k_max; ++p)
    agg_rows.push_back(detail::to_rows(powseq2_row(agg, p)));

  BitStringBuilder out;
  for (std::uint64_t mi = 0; mi < b; ++mi) {
    std::uint64_t nm = to_u64(encoding::seq(nat_from_u64(mi), w1), "dimension");
    std::uint64_t km = to_u64(encoding::seq(nat_from_u64(mi), w2), "power");
    for (std::uint64_t p = 0; p <= km; ++p)
      for (std::uint64_t i = 0; i < nm; ++i)
        for (std::uint64_t j = 0; j < nm; ++j)
          if (agg_rows[p][n_max * mi + i].get(n_max * mi + j))
            out.set(encoding::pair(
                nat_from_u64(mi),
                encoding::pair(nat_from_u64(p),
                               encoding::pair(nat_from_u64(i), nat_from_u64(j)))));
  }
  BitString extracted = out.finish();

  std::vector<BitString> direct;
  for (std::uint64_t mi = 0; mi < b; ++mi) {
    std::uint64_t nm = to_u64(encoding::seq(nat_from_u64(mi), w1), "dimension");
    std::uint64_t km = to_u64(encoding::seq(nat_from_u64(mi), w2), "power");
    BoolMatrix xm{nm, encoding::row(nat_from_u64(mi), x)};
    direct.push_back(powseq2(nm, km, xm).raw);
  }
  if (extracted != encoding::build_list(direct))
    throw MismatchError("batched power extraction disagrees with per-instance sequences");
  return extracted;
}

// ---------------------------------------------------------------------------
// The integer ring.

inline intcode::IntString int_entry(const IntMatrix& m, std::uint64_t i,
                                    std::uint64_t j) {
  return intcode::IntString{
      encoding::row2(nat_from_u64(i), nat_from_u64(j), m.raw)};
}

namespace detail {

using EntryRows = std::vector<std::vector<intcode::IntString>>;

// Extracts all entries, rejecting bits outside the entry region and
// non-canonical entry encodings.
inline EntryRows int_entries(const IntMatrix& m) {
  EntryRows e(m.n, std::vector<intcode::IntString>(m.n));
  std::vector<std::vector<BitStringBuilder>> cells(
      m.n, std::vector<BitStringBuilder>(m.n));
  for (const Nat& b : m.raw.positions()) {
    auto p = encoding::split(b);
    if (!p || p->left >= m.n) throw BadInput("malformed integer matrix entry");
    auto q = encoding::split(p->right);
    if (!q || q->left >= m.n) throw BadInput("malformed integer matrix entry");
    cells[to_u64(p->left)][to_u64(q->left)].set(q->right);
  }
  for (std::uint64_t i = 0; i < m.n; ++i)
    for (std::uint64_t j = 0; j < m.n; ++j) {
      e[i][j] = intcode::IntString{cells[i][j].finish()};
      if (!intcode::is_canonical(e[i][j]))
        throw BadInput("malformed integer matrix entry");
    }
  return e;
}

inline IntMatrix int_matrix_from_entry_rows(std::uint64_t n, const EntryRows& e) {
  BitStringBuilder out;
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j)
      for (const Nat& c : e[i][j].raw.positions())
        out.set(encoding::pair(nat_from_u64(i),
                               encoding::pair(nat_from_u64(j), c)));
  return IntMatrix{n, out.finish()};
}

}  // namespace detail

inline void validate_int_matrix(const IntMatrix& m) { detail::int_entries(m); }

inline IntMatrix int_matrix_from_entries(const std::vector<std::vector<Int>>& a) {
  std::uint64_t n = a.size();
  detail::EntryRows e(n, std::vector<intcode::IntString>(n));
  for (std::uint64_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw BadInput("integer matrix must be square");
    for (std::uint64_t j = 0; j < n; ++j) e[i][j] = intcode::encode_int(a[i][j]);
  }
  return detail::int_matrix_from_entry_rows(n, e);
}

inline std::vector<std::vector<Int>> decode_int_matrix(const IntMatrix& m) {
  detail::EntryRows e = detail::int_entries(m);
  std::vector<std::vector<Int>> out(m.n, std::vector<Int>(m.n));
  for (std::uint64_t i = 0; i < m.n; ++i)
    for (std::uint64_t j = 0; j < m.n; ++j)
      out[i][j] = intcode::decode_int(e[i][j]);
  return out;
}

// The integer identity: entry (i,i) is the encoding of +1, every bit of the
// string is <i,<i,1>>.
inline IntMatrix id_z(std::uint64_t n) {
  BitStringBuilder out;
  for (std::uint64_t i = 0; i < n; ++i)
    out.set(encoding::pair(nat_from_u64(i),
                           encoding::pair(nat_from_u64(i), Nat(1))));
  return IntMatrix{n, out.finish()};
}

// Witness list for entry (i,j) of the product: row l is the integer product
// X1[i][l] * X2[l][j].
inline BitString g_z(std::uint64_t n, std::uint64_t i, std::uint64_t j,
                     const IntMatrix& x1, const IntMatrix& x2) {
  if (i >= n || j >= n) throw BadInput("entry index out of range");
  detail::require_dims(n, x1.n, x2.n);
  detail::EntryRows a = detail::int_entries(x1);
  detail::EntryRows b = detail::int_entries(x2);
  std::vector<BitString> rows;
  for (std::uint64_t l = 0; l < n; ++l)
    rows.push_back(intcode::mul_z(a[i][l], b[l][j]).raw);
  return encoding::build_list(rows);
}

// Integer matrix product: entry (i,j) is the signed sum of its witness
// list.
inline IntMatrix prod_z(std::uint64_t n, const IntMatrix& x1,
                        const IntMatrix& x2) {
  detail::require_dims(n, x1.n, x2.n);
  detail::EntryRows a = detail::int_entries(x1);
  detail::EntryRows b = detail::int_entries(x2);
  Nat m = x1.raw.length() + x2.raw.length();
  detail::EntryRows out(n, std::vector<intcode::IntString>(n));
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j) {
      std::vector<BitString> rows;
      for (std::uint64_t l = 0; l < n; ++l)
        rows.push_back(intcode::mul_z(a[i][l], b[l][j]).raw);
      out[i][j] = intcode::sum_z(n, m, encoding::build_list(rows));
    }
  return detail::int_matrix_from_entry_rows(n, out);
}

inline PowZSequence powseq_z(std::uint64_t n, std::uint64_t k,
                             const IntMatrix& x) {
  detail::require_dims(n, x.n, n);
  validate_int_matrix(x);
  IntMatrix cur = id_z(n);
  BitStringBuilder out;
  for (std::uint64_t l = 0; l <= k; ++l) {
    if (l > 0) cur = prod_z(n, x, cur);
    for (const Nat& b : cur.raw.positions())
      out.set(encoding::pair(nat_from_u64(l), b));
  }
  return PowZSequence{n, k, out.finish()};
}

inline IntMatrix powseq_z_row(const PowZSequence& seq, std::uint64_t l) {
  return IntMatrix{seq.n, encoding::row(nat_from_u64(l), seq.raw)};
}

inline IntMatrix pow_z(std::uint64_t n, std::uint64_t k, const IntMatrix& x) {
  return powseq_z_row(powseq_z(n, k, x), k);
}

// Integer power-sequence checker: region convention, size bound and the
// row recurrence. The size cap also admits the extent of the identity row,
// so the all-zero input matrix (whose own string is empty) validates.
inline bool check_delta_powseq_z(std::uint64_t n, std::uint64_t k,
                                 const IntMatrix& x, const BitString& y) {
  detail::require_dims(n, x.n, n);
  Nat bound_base = x.raw.length();
  Nat id_len = id_z(n).raw.length();
  if (id_len > bound_base) bound_base = id_len;
  if (!y.empty() &&
      y.length() >=
          encoding::pair(nat_from_u64(k), encoding::pair(bound_base, bound_base)))
    return false;
  // Every set bit must be <l, <i, <j, c>>> with l <= k and i, j < n.
  for (const Nat& b : y.positions()) {
    auto p = encoding::split(b);
    if (!p || p->left > k) return false;
    auto q = encoding::split(p->right);
    if (!q || q->left >= n) return false;
    auto r = encoding::split(q->right);
    if (!r || r->left >= n) return false;
  }
  BitString expect = id_z(n).raw;
  for (std::uint64_t l = 0; l <= k; ++l) {
    if (encoding::row(nat_from_u64(l), y) != expect) return false;
    if (l < k) expect = prod_z(n, x, IntMatrix{n, expect}).raw;
  }
  return true;
}

inline IntMatrix block_diag_z(std::uint64_t b, const BitString& w1,
                              const BitString& x) {
  std::uint64_t m = to_u64(max_list(b, w1), "block dimension");
  BitStringBuilder out;
  for (std::uint64_t a = 0; a < b; ++a) {
    std::uint64_t na = to_u64(encoding::seq(nat_from_u64(a), w1), "dimension");
    IntMatrix block{na, encoding::row(nat_from_u64(a), x)};
    detail::EntryRows e = detail::int_entries(block);
    for (std::uint64_t i = 0; i < na; ++i)
      for (std::uint64_t j = 0; j < na; ++j)
        for (const Nat& c : e[i][j].raw.positions())
          out.set(encoding::pair(
              nat_from_u64(a * m + i),
              encoding::pair(nat_from_u64(a * m + j), c)));
  }
  return IntMatrix{b * m, out.finish()};
}

// Integer analogue of the batched power sequences, by the same
// block-diagonal construction with the integer identity and product.
inline BitString powseq_z_star(std::uint64_t b, const BitString& w1,
                               const BitString& w2, const BitString& x) {
  std::uint64_t n_max = to_u64(max_list(b, w1), "dimension");
  std::uint64_t k_max = to_u64(max_list(b, w2), "power");

  PowZSequence agg = powseq_z(b * n_max, k_max, block_diag_z(b, w1, x));
  std::vector<detail::EntryRows> agg_rows;
  for (std::uint64_t p = 0; p <= k_max; ++p)
    agg_rows.push_back(detail::int_entries(powseq_z_row(agg, p)));

  BitStringBuilder out;
  for (std::uint64_t mi = 0; mi < b; ++mi) {
    std::uint64_t nm = to_u64(encoding::seq(nat_from_u64(mi), w1), "dimension");
    std::uint64_t km = to_u64(encoding::seq(nat_from_u64(mi), w2), "power");
    for (std::uint64_t p = 0; p <= km; ++p)
      for (std::uint64_t i = 0; i < nm; ++i)
        for (std::uint64_t j = 0; j < nm; ++j)
          for (const Nat& c :
               agg_rows[p][n_max * mi + i][n_max * mi + j].raw.positions())
            out.set(encoding::pair(
                nat_from_u64(mi),
                encoding::pair(
                    nat_from_u64(p),
                    encoding::pair(nat_from_u64(i),
                                   encoding::pair(nat_from_u64(j), c)))));
  }
  BitString extracted = out.finish();

  std::vector<BitString> direct;
  for (std::uint64_t mi = 0; mi < b; ++mi) {
    std::uint64_t nm = to_u64(encoding::seq(nat_from_u64(mi), w1), "dimension");
    std::uint64_t km = to_u64(encoding::seq(nat_from_u64(mi), w2), "power");
    IntMatrix xm{nm, encoding::row(nat_from_u64(mi), x)};
    direct.push_back(powseq_z(nm, km, xm).raw);
  }
  if (extracted != encoding::build_list(direct))
    throw MismatchError("batched integer power extraction disagrees with per-instance sequences");
  return extracted;
}

inline BoolMatrix bool_matrix_from_entries(const std::vector<std::vector<int>>& a) {
  std::uint64_t n = a.size();
  BitStringBuilder out;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw BadInput("matrix must be square");
    for (std::uint64_t j = 0; j < n; ++j) {
      if (a[i][j] != 0 && a[i][j] != 1)
        throw BadInput("mod-2 matrix entries must be 0 or 1");
      if (a[i][j])
        out.set(encoding::pair(nat_from_u64(i), nat_from_u64(j)));
    }
  }
  return BoolMatrix{n, out.finish()};
}

inline std::vector<std::vector<int>> decode_bool_matrix(const BoolMatrix& m) {
  detail::MaskRows rows = detail::to_rows(m);
  std::vector<std::vector<int>> out(m.n, std::vector<int>(m.n, 0));
  for (std::uint64_t i = 0; i < m.n; ++i)
    for (std::uint64_t j = 0; j < m.n; ++j)
      if (rows[i].get(j)) out[i][j] = 1;
  return out;
}

}  // namespace logcount::matpow
