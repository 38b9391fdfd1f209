#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logcount/budget.hpp"
#include "logcount/encoding.hpp"
#include "logcount/matpow.hpp"
#include "logcount/nat.hpp"

// Bounded s-t walk counting on simple graphs, multigraphs and signed
// integer matrices, plus the layered-graph and edge-bisection reductions
// that tie the graph counts to matrix powering. Counts are exact; walks may
// revisit vertices, and when s = t the empty walk counts once.
namespace logcount::counting {

// Directed graph over an unbounded label space; labels without edges are
// isolated and implicit. n bounds the label space, s = 0 and t = 1 by the
// encoding convention.
struct SimpleGraph {
  Nat n;
  std::vector<std::pair<Nat, Nat>> edges;  // sorted, unique

  static SimpleGraph from_edges(Nat n, std::vector<std::pair<Nat, Nat>> e) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    for (const auto& [u, v] : e)
      if (u >= n || v >= n) throw BadInput("edge endpoint outside label bound");
    return SimpleGraph{std::move(n), std::move(e)};
  }
};

struct MultiGraph {
  std::uint64_t n = 0;
  std::vector<std::vector<Nat>> mult;  // n x n edge multiplicities
};

struct PathCount {
  Nat value;
  BitString binary;  // the value, least significant bit first
};

inline PathCount make_path_count(const Nat& v) {
  BitStringBuilder b;
  std::size_t top = v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
  for (std::size_t i = 0; i < top; ++i)
    if (mpz_tstbit(v.get_mpz_t(), i)) b.set(nat_from_u64(i));
  return PathCount{v, b.finish()};
}

enum class Via { dfs, matpow, both };

namespace detail {

// Dense view of the labels that can matter for counting: s, t and every
// edge endpoint. Isolated labels cannot lie on a walk.
struct Compact {
  std::vector<Nat> labels;
  std::vector<std::vector<std::uint32_t>> adj;
  std::uint32_t s = 0;
  std::uint32_t t = 0;

  std::uint32_t index_of(const Nat& label) const {
    return static_cast<std::uint32_t>(
        std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
  }
};

inline Compact compact(const SimpleGraph& g, const Nat& s, const Nat& t) {
  std::vector<Nat> labels{s, t};
  for (const auto& [u, v] : g.edges) {
    labels.push_back(u);
    labels.push_back(v);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  Compact c;
  c.adj.resize(labels.size());
  c.labels = std::move(labels);
  for (const auto& [u, v] : g.edges)
    c.adj[c.index_of(u)].push_back(c.index_of(v));
  c.s = c.index_of(s);
  c.t = c.index_of(t);
  return c;
}

inline void count_walks_rec(const Compact& g, std::uint32_t v,
                            std::uint64_t steps_left, BudgetMeter& meter,
                            Nat& count) {
  meter.spend();
  if (v == g.t) ++count;
  if (steps_left == 0) return;
  for (std::uint32_t u : g.adj[v])
    count_walks_rec(g, u, steps_left - 1, meter, count);
}

}  // namespace detail

// Dense 0/1 adjacency over the labels that can carry a walk, for callers
// that want to run plain matrix arithmetic against a sparse graph.
struct DenseAdjacency {
  std::vector<Nat> labels;
  std::vector<std::vector<Int>> matrix;
  std::uint32_t s = 0;
  std::uint32_t t = 0;
};

inline DenseAdjacency dense_adjacency(const SimpleGraph& g, const Nat& s,
                                      const Nat& t) {
  detail::Compact c = detail::compact(g, s, t);
  std::size_t dim = c.labels.size();
  DenseAdjacency out;
  out.matrix.assign(dim, std::vector<Int>(dim, 0));
  for (std::size_t u = 0; u < dim; ++u)
    for (std::uint32_t v : c.adj[u]) out.matrix[u][v] = 1;
  out.labels = std::move(c.labels);
  out.s = c.s;
  out.t = c.t;
  return out;
}

// Sum over l <= p of the (s,t) entry of the l-th power of the adjacency
// matrix, computed with the integer matrix-powering machinery.
inline PathCount stcon_via_matpow(const Nat& n, const Nat& s, const Nat& t,
                                  std::uint64_t p, const SimpleGraph& g) {
  if (s >= n || t >= n) throw BadInput("s or t outside label bound");
  detail::Compact c = detail::compact(g, s, t);
  std::uint64_t dim = c.labels.size();
  std::vector<std::vector<Int>> a(dim, std::vector<Int>(dim, 0));
  for (std::uint64_t i = 0; i < dim; ++i)
    for (std::uint32_t j : c.adj[i]) a[i][j] = 1;
  matpow::IntMatrix adj = matpow::int_matrix_from_entries(a);
  matpow::PowZSequence seq = matpow::powseq_z(dim, p, adj);
  Nat total = 0;
  for (std::uint64_t l = 0; l <= p; ++l) {
    matpow::IntMatrix power = matpow::powseq_z_row(seq, l);
    total += intcode::decode_int(matpow::int_entry(power, c.s, c.t));
  }
  return make_path_count(total);
}

// Number of walks from s to t that traverse at most p edges. The dfs route
// expands the choice tree hop by hop; the matpow route sums powers of the
// adjacency matrix; `both` runs the two and insists they agree.
inline PathCount stcon_count(const Nat& n, const Nat& s, const Nat& t,
                             std::uint64_t p, const SimpleGraph& g,
                             Via via = Via::both,
                             std::uint64_t budget = default_budget()) {
  if (s >= n || t >= n) throw BadInput("s or t outside label bound");
  std::optional<Nat> dfs_count;
  if (via != Via::matpow) {
    detail::Compact c = detail::compact(g, s, t);
    BudgetMeter meter{budget};
    Nat count = 0;
    detail::count_walks_rec(c, c.s, p, meter, count);
    dfs_count = count;
  }
  if (via == Via::dfs) return make_path_count(*dfs_count);
  PathCount mp = stcon_via_matpow(n, s, t, p, g);
  if (via == Via::both && *dfs_count != mp.value)
    throw MismatchError("walk enumeration = " + dfs_count->get_str() +
                        " but power sums = " + mp.value.get_str());
  return mp;
}

// The layered expansion: p+1 layers of vertex copies, fresh endpoints
// s' = 0 and t' = 1, and every s-t walk of length <= p in X turned into one
// s'-t' walk of length exactly p+2. Layer vertex (v,l) gets label <v,l>+2;
// the offset keeps the copy of vertex 0 in layer 0 distinct from s' itself,
// which the raw pair label would collide with.
inline SimpleGraph layered_graph(std::uint64_t p, const SimpleGraph& x) {
  if (x.n < 2) throw BadInput("layered expansion needs the two listed vertices");
  auto layer_label = [](const Nat& v, std::uint64_t l) -> Nat {
    return encoding::pair(v, nat_from_u64(l)) + 2;
  };
  std::vector<std::pair<Nat, Nat>> edges;
  edges.emplace_back(Nat(0), layer_label(Nat(0), 0));
  edges.emplace_back(Nat(1), Nat(1));
  for (std::uint64_t l = 0; l <= p; ++l)
    edges.emplace_back(layer_label(Nat(1), l), Nat(1));
  for (std::uint64_t l = 0; l < p; ++l)
    for (const auto& [u, v] : x.edges)
      edges.emplace_back(layer_label(u, l), layer_label(v, l + 1));
  Nat bound = 2;
  for (const auto& [u, v] : edges) {
    if (u >= bound) bound = u + 1;
    if (v >= bound) bound = v + 1;
  }
  return SimpleGraph::from_edges(bound, std::move(edges));
}

// Edge bisection: every one of the entry(i,j) parallel edges becomes a
// two-edge detour through its own fresh vertex <i,j,c+n>, so walk counts
// between original vertices survive with all lengths doubled.
inline SimpleGraph convert(const MultiGraph& x) {
  std::vector<std::pair<Nat, Nat>> edges;
  Nat n = nat_from_u64(x.n);
  for (std::uint64_t i = 0; i < x.n; ++i)
    for (std::uint64_t j = 0; j < x.n; ++j) {
      std::uint64_t g = to_u64(x.mult[i][j], "edge multiplicity");
      for (std::uint64_t c = 0; c < g; ++c) {
        Nat detour = encoding::pair(nat_from_u64(i), nat_from_u64(j),
                                    nat_from_u64(c) + n);
        edges.emplace_back(nat_from_u64(i), detour);
        edges.emplace_back(detour, nat_from_u64(j));
      }
    }
  Nat bound = n;
  for (const auto& [u, v] : edges) {
    if (u >= bound) bound = u + 1;
    if (v >= bound) bound = v + 1;
  }
  return SimpleGraph::from_edges(bound, std::move(edges));
}

namespace detail {

inline void multigraph_walk(const MultiGraph& g, std::uint32_t v,
                            std::uint64_t steps_left, BudgetMeter& meter,
                            Nat& count);

// The bit-guessing subroutine: a number is guessed one bit at a time, most
// significant first, against the multiplicity written in binary; exactly
// mult branches survive per hop.
inline void multigraph_hop(const MultiGraph& g, std::uint32_t next,
                           std::uint64_t steps_left, const Nat& mult,
                           std::size_t bit, bool reachable, BudgetMeter& meter,
                           Nat& count) {
  meter.spend();
  for (int guess = 0; guess <= 1; ++guess) {
    bool mult_bit = mpz_tstbit(mult.get_mpz_t(), bit);
    bool r = reachable;
    if (!r) {
      if (guess == 0 && mult_bit) r = true;
      if (guess == 1 && !mult_bit) continue;  // guessed above the count
    }
    if (bit == 0) {
      if (r) multigraph_walk(g, next, steps_left, meter, count);
    } else {
      multigraph_hop(g, next, steps_left, mult, bit - 1, r, meter, count);
    }
  }
}

inline void multigraph_walk(const MultiGraph& g, std::uint32_t v,
                            std::uint64_t steps_left, BudgetMeter& meter,
                            Nat& count) {
  meter.spend();
  if (v == 1) ++count;
  if (steps_left == 0) return;
  for (std::uint32_t next = 0; next < g.n; ++next) {
    const Nat& mult = g.mult[v][next];
    std::size_t len = mult == 0 ? 0 : mpz_sizeinbase(mult.get_mpz_t(), 2);
    multigraph_hop(g, next, steps_left - 1, mult, len, false, meter, count);
  }
}

}  // namespace detail

// Multiplicity-weighted walk count as a sum of integer matrix powers.
inline PathCount multigraph_stcon_via_matpow(std::uint64_t n, const Nat& s,
                                             const Nat& t, std::uint64_t p,
                                             const MultiGraph& g) {
  std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j) a[i][j] = Int(g.mult[i][j]);
  matpow::IntMatrix adj = matpow::int_matrix_from_entries(a);
  matpow::PowZSequence seq = matpow::powseq_z(n, p, adj);
  std::uint64_t si = to_u64(s);
  std::uint64_t ti = to_u64(t);
  Nat total = 0;
  for (std::uint64_t l = 0; l <= p; ++l)
    total += intcode::decode_int(
        matpow::int_entry(matpow::powseq_z_row(seq, l), si, ti));
  return make_path_count(total);
}

// Walks of length <= p weighted by edge multiplicities, enumerated branch
// by branch including the per-hop bit guessing. Requires s = 0, t = 1 (the
// listed-vertex convention). The matpow route sums integer matrix powers
// instead; `both` insists the two agree.
inline PathCount multigraph_stcon_count(std::uint64_t n, const Nat& s,
                                        const Nat& t, std::uint64_t p,
                                        const MultiGraph& g,
                                        std::uint64_t budget = default_budget(),
                                        Via via = Via::dfs) {
  if (g.n != n || g.mult.size() != n) throw BadInput("multigraph dimension mismatch");
  if (s != 0 || t != 1) throw BadInput("multigraph counting expects s=0, t=1");
  if (n < 2) throw BadInput("multigraph counting needs at least the two listed vertices");
  std::optional<Nat> enumerated;
  if (via != Via::matpow) {
    BudgetMeter meter{budget};
    Nat count = 0;
    detail::multigraph_walk(g, 0, p, meter, count);
    enumerated = count;
  }
  if (via == Via::dfs) return make_path_count(*enumerated);
  PathCount mp = multigraph_stcon_via_matpow(n, s, t, p, g);
  if (via == Via::both && *enumerated != mp.value)
    throw MismatchError("branch enumeration = " + enumerated->get_str() +
                        " but power sums = " + mp.value.get_str());
  return mp;
}

struct SignedCount {
  Nat pos;
  Nat neg;
};

namespace detail {

struct SignedEntry {
  std::uint64_t mult = 0;
  bool negative = false;
};

inline void signed_walk(const std::vector<std::vector<SignedEntry>>& a,
                        std::uint32_t v, std::uint64_t steps_left, bool sign,
                        std::uint32_t target, BudgetMeter& meter,
                        SignedCount& out) {
  meter.spend();
  if (steps_left == 0) {
    if (v == target) ++(sign ? out.neg : out.pos);
    return;
  }
  for (std::uint32_t next = 0; next < a.size(); ++next) {
    const SignedEntry& e = a[v][next];
    for (std::uint64_t c = 0; c < e.mult; ++c)
      signed_walk(a, next, steps_left - 1, sign ^ e.negative, target, meter, out);
  }
}

}  // namespace detail

// Branch counts of the sign-tracking traversals: walks of length exactly k
// from i, branching into |entry| paths per hop and accumulating the entry
// signs. posCount - negCount is the (i,j) entry of the k-th matrix power.
inline SignedCount signed_power_entry(std::uint64_t i, std::uint64_t j,
                                      std::uint64_t k,
                                      const matpow::IntMatrix& x,
                                      std::uint64_t budget = default_budget()) {
  if (i >= x.n || j >= x.n) throw BadInput("entry index out of range");
  std::vector<std::vector<Int>> entries = matpow::decode_int_matrix(x);
  std::vector<std::vector<detail::SignedEntry>> a(
      x.n, std::vector<detail::SignedEntry>(x.n));
  for (std::uint64_t r = 0; r < x.n; ++r)
    for (std::uint64_t c = 0; c < x.n; ++c) {
      a[r][c].negative = entries[r][c] < 0;
      a[r][c].mult = to_u64(abs(entries[r][c]), "entry magnitude");
    }
  BudgetMeter meter{budget};
  SignedCount out{0, 0};
  detail::signed_walk(a, static_cast<std::uint32_t>(i), k, false,
                      static_cast<std::uint32_t>(j), meter, out);
  return out;
}

}  // namespace logcount::counting
