#pragma once

#include <cstdint>
#include <vector>

#include "logcount/nat.hpp"

// Independent reference computations for the verification harness and the
// tests. Everything here works on plain dense values and deliberately
// shares no code with the string-encoded implementations it checks.
namespace logcount::oracle {

using BoolDense = std::vector<std::vector<int>>;
using IntDense = std::vector<std::vector<Int>>;

inline BoolDense mod2_identity(std::size_t n) {
  BoolDense r(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

inline BoolDense mod2_mul(const BoolDense& a, const BoolDense& b) {
  std::size_t n = a.size();
  BoolDense r(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l)
      if (a[i][l])
        for (std::size_t j = 0; j < n; ++j) r[i][j] ^= b[l][j];
  return r;
}

inline BoolDense mod2_pow(const BoolDense& a, std::uint64_t k) {
  BoolDense r = mod2_identity(a.size());
  for (std::uint64_t i = 0; i < k; ++i) r = mod2_mul(a, r);
  return r;
}

inline IntDense int_identity(std::size_t n) {
  IntDense r(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

inline IntDense int_mul(const IntDense& a, const IntDense& b) {
  std::size_t n = a.size();
  IntDense r(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

inline IntDense int_pow(const IntDense& a, std::uint64_t k) {
  IntDense r = int_identity(a.size());
  for (std::uint64_t i = 0; i < k; ++i) r = int_mul(a, r);
  return r;
}

// Number of s-t walks of length at most p over a dense adjacency matrix,
// by the layer-count recurrence (a third route, independent of both the
// branch enumeration and the string-encoded power sums).
inline Nat count_walks(const IntDense& adj, std::size_t s, std::size_t t,
                       std::uint64_t p) {
  std::size_t n = adj.size();
  std::vector<Nat> ways(n, 0);
  ways[s] = 1;
  Nat total = s == t ? 1 : 0;
  for (std::uint64_t step = 0; step < p; ++step) {
    std::vector<Nat> nxt(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
      if (ways[u] == 0) continue;
      for (std::size_t v = 0; v < n; ++v)
        if (adj[u][v] != 0) nxt[v] += ways[u] * adj[u][v];
    }
    ways = std::move(nxt);
    total += ways[t];
  }
  return total;
}

}  // namespace logcount::oracle
