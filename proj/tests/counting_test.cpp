#include <catch2/catch.hpp>

#include <vector>

#include "logcount/counting.hpp"
#include "logcount/encoding.hpp"
#include "logcount/oracle.hpp"
#include "logcount/rng.hpp"
#include "logcount/verify.hpp"

using namespace logcount;
using namespace logcount::counting;

namespace {

SimpleGraph graph(std::uint64_t n, std::vector<std::pair<unsigned long, unsigned long>> e) {
  std::vector<std::pair<Nat, Nat>> edges;
  for (auto [u, v] : e) edges.emplace_back(nat_from_u64(u), nat_from_u64(v));
  return SimpleGraph::from_edges(nat_from_u64(n), std::move(edges));
}

MultiGraph multigraph(std::vector<std::vector<unsigned long>> m) {
  MultiGraph g;
  g.n = m.size();
  for (auto& row : m) {
    std::vector<Nat> r;
    for (unsigned long v : row) r.push_back(nat_from_u64(v));
    g.mult.push_back(std::move(r));
  }
  return g;
}

}  // namespace

TEST_CASE("walk counting basics") {
  SimpleGraph direct = graph(2, {{0, 1}});
  REQUIRE(stcon_count(direct.n, Nat(0), Nat(1), 1, direct).value == 1);

  SimpleGraph two = graph(3, {{0, 1}, {0, 2}, {2, 1}});
  REQUIRE(stcon_count(two.n, Nat(0), Nat(1), 2, two).value == 2);
  REQUIRE(stcon_count(two.n, Nat(0), Nat(1), 0, two).value == 0);

  // walks may pass through the target and count again
  SimpleGraph loop = graph(2, {{0, 1}, {1, 1}});
  REQUIRE(stcon_count(loop.n, Nat(0), Nat(1), 3, loop).value == 3);

  // binary form is the value, least significant bit first
  PathCount pc = stcon_count(loop.n, Nat(0), Nat(1), 3, loop);
  REQUIRE(pc.binary.to_text() == "11");
}

TEST_CASE("walk counts agree with an independent recurrence") {
  Rng rng(3);
  for (int c = 0; c < 220; ++c) {
    std::uint64_t n = 2 + rng.below(5);
    SimpleGraph g = verify::detail::random_simple_graph(rng, n);
    std::uint64_t p = rng.below(9);
    DenseAdjacency d = dense_adjacency(g, Nat(0), Nat(1));
    Nat expect = oracle::count_walks(d.matrix, d.s, d.t, p);
    // dual-route count; Via::both already cross-checks dfs against matpow
    REQUIRE(stcon_count(g.n, Nat(0), Nat(1), p, g, Via::both).value == expect);
  }
}

TEST_CASE("walk counts grow with the bound") {
  Rng rng(5);
  for (int c = 0; c < 30; ++c) {
    SimpleGraph g = verify::detail::random_simple_graph(rng, 2 + rng.below(4));
    Nat prev = 0;
    for (std::uint64_t p = 0; p <= 6; ++p) {
      Nat cur = stcon_count(g.n, Nat(0), Nat(1), p, g, Via::dfs).value;
      REQUIRE(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("layered expansion") {
  SimpleGraph empty = graph(2, {});
  SimpleGraph lay0 = layered_graph(3, empty);
  DenseAdjacency d0 = dense_adjacency(lay0, Nat(0), Nat(1));
  REQUIRE(oracle::int_pow(d0.matrix, 5)[d0.s][d0.t] == 0);
  REQUIRE(stcon_count(empty.n, Nat(0), Nat(1), 3, empty).value == 0);

  // single edge, p = 1: exactly one layered walk of length 3
  SimpleGraph single = graph(2, {{0, 1}});
  SimpleGraph lay = layered_graph(1, single);
  DenseAdjacency d = dense_adjacency(lay, Nat(0), Nat(1));
  REQUIRE(oracle::int_pow(d.matrix, 3)[d.s][d.t] == 1);

  Rng rng(7);
  for (int c = 0; c < 40; ++c) {
    std::uint64_t n = 2 + rng.below(4);
    std::uint64_t p = rng.below(6);
    SimpleGraph g = verify::detail::random_simple_graph(rng, n);
    Nat count = stcon_count(g.n, Nat(0), Nat(1), p, g).value;
    DenseAdjacency da = dense_adjacency(layered_graph(p, g), Nat(0), Nat(1));
    REQUIRE(oracle::int_pow(da.matrix, p + 2)[da.s][da.t] == Int(count));
  }
}

TEST_CASE("edge bisection") {
  REQUIRE(convert(multigraph({{0, 0}, {0, 0}})).edges.empty());

  MultiGraph three = multigraph({{0, 3}, {0, 0}});
  SimpleGraph conv = convert(three);
  REQUIRE(conv.edges.size() == 6);
  REQUIRE(stcon_count(conv.n, Nat(0), Nat(1), 2, conv).value == 3);
  // detour labels are pair numbers above the original vertex range
  for (const auto& [u, v] : conv.edges) {
    if (u >= 2) REQUIRE(encoding::is_pair(u));
    if (v >= 2) REQUIRE(encoding::is_pair(v));
  }

  // walks between original vertices have even length: odd bounds add nothing
  Rng rng(11);
  for (int c = 0; c < 25; ++c) {
    MultiGraph mg;
    mg.n = 2 + rng.below(3);
    for (std::uint64_t i = 0; i < mg.n; ++i) {
      std::vector<Nat> row;
      for (std::uint64_t j = 0; j < mg.n; ++j) row.push_back(nat_from_u64(rng.below(3)));
      mg.mult.push_back(std::move(row));
    }
    SimpleGraph cg = convert(mg);
    std::uint64_t k = rng.below(3);
    for (std::uint64_t i = 0; i < mg.n; ++i)
      for (std::uint64_t j = 0; j < mg.n; ++j) {
        Nat even = stcon_count(cg.n, nat_from_u64(i), nat_from_u64(j), 2 * k, cg,
                               Via::dfs).value;
        Nat odd = stcon_count(cg.n, nat_from_u64(i), nat_from_u64(j), 2 * k + 1,
                              cg, Via::dfs).value;
        REQUIRE(even == odd);
      }
  }
}

TEST_CASE("bisection follows the entry readout of the encoded matrix") {
  Rng rng(23);
  for (int c = 0; c < 20; ++c) {
    std::uint64_t n = 2 + rng.below(3);
    MultiGraph mg;
    mg.n = n;
    std::vector<std::vector<Nat>> entries(n, std::vector<Nat>(n));
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j)
        entries[i][j] = nat_from_u64(rng.below(4));
    mg.mult = entries;
    SimpleGraph conv = convert(mg);

    // recompute the edge set from the string encoding's entry readout
    BitString x = encoding::build_natmatrix(entries);
    std::vector<std::pair<Nat, Nat>> expect;
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j) {
        Nat count = encoding::entry(nat_from_u64(i), nat_from_u64(j), x);
        for (Nat cc = 0; cc < count; ++cc) {
          Nat detour =
              encoding::pair(nat_from_u64(i), nat_from_u64(j), Nat(cc + n));
          expect.emplace_back(nat_from_u64(i), detour);
          expect.emplace_back(detour, nat_from_u64(j));
        }
      }
    std::sort(expect.begin(), expect.end());
    expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
    REQUIRE(conv.edges == expect);
  }
}

TEST_CASE("multigraph counting") {
  // all multiplicities 1 degenerates to the simple count
  Rng rng(13);
  for (int c = 0; c < 20; ++c) {
    std::uint64_t n = 2 + rng.below(3);
    MultiGraph mg;
    mg.n = n;
    std::vector<std::pair<Nat, Nat>> edges;
    for (std::uint64_t i = 0; i < n; ++i) {
      std::vector<Nat> row;
      for (std::uint64_t j = 0; j < n; ++j) {
        bool edge = rng.chance(1, 2);
        row.push_back(Nat(edge ? 1 : 0));
        if (edge) edges.emplace_back(nat_from_u64(i), nat_from_u64(j));
      }
      mg.mult.push_back(std::move(row));
    }
    SimpleGraph sg = SimpleGraph::from_edges(nat_from_u64(n), std::move(edges));
    std::uint64_t p = rng.below(5);
    REQUIRE(multigraph_stcon_count(n, Nat(0), Nat(1), p, mg).value ==
            stcon_count(sg.n, Nat(0), Nat(1), p, sg).value);
  }

  REQUIRE(multigraph_stcon_count(2, Nat(0), Nat(1), 1,
                                 multigraph({{0, 5}, {0, 0}}))
              .value == 5);
  REQUIRE(multigraph_stcon_count(3, Nat(0), Nat(1), 2,
                                 multigraph({{0, 0, 2}, {0, 0, 0}, {0, 3, 0}}))
              .value == 6);

  // both routes agree, including multiplicities needing several guessed bits
  MultiGraph mixed = multigraph({{1, 2, 0}, {0, 0, 3}, {2, 1, 0}});
  REQUIRE_NOTHROW(multigraph_stcon_count(3, Nat(0), Nat(1), 4, mixed,
                                         default_budget(), Via::both));
  Rng r4(31);
  for (int c = 0; c < 20; ++c) {
    std::uint64_t n = 2 + r4.below(2);
    MultiGraph mg;
    mg.n = n;
    for (std::uint64_t i = 0; i < n; ++i) {
      std::vector<Nat> row;
      for (std::uint64_t j = 0; j < n; ++j) row.push_back(nat_from_u64(r4.below(7)));
      mg.mult.push_back(std::move(row));
    }
    REQUIRE_NOTHROW(multigraph_stcon_count(n, Nat(0), Nat(1), 3, mg,
                                           default_budget(), Via::both));
  }
}

TEST_CASE("signed entry counts") {
  matpow::IntMatrix id = matpow::id_z(3);
  for (std::uint64_t i = 0; i < 3; ++i)
    for (std::uint64_t j = 0; j < 3; ++j) {
      SignedCount sc = signed_power_entry(i, j, 2, id);
      REQUIRE(sc.pos == (i == j ? 1 : 0));
      REQUIRE(sc.neg == 0);
    }

  matpow::IntMatrix rot =
      matpow::int_matrix_from_entries({{Int(0), Int(-1)}, {Int(1), Int(0)}});
  SignedCount sc = signed_power_entry(0, 0, 2, rot);
  REQUIRE(sc.pos == 0);
  REQUIRE(sc.neg == 1);

  Rng rng(17);
  for (int c = 0; c < 15; ++c) {
    std::uint64_t n = 1 + rng.below(4);
    std::uint64_t k = rng.below(5);
    std::vector<std::vector<Int>> e(n, std::vector<Int>(n));
    for (auto& row : e)
      for (Int& v : row) v = Int(rng.in_range(-3, 3));
    matpow::IntMatrix x = matpow::int_matrix_from_entries(e);
    auto native = oracle::int_pow(e, k);
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j) {
        SignedCount s = signed_power_entry(i, j, k, x);
        REQUIRE(Int(s.pos - s.neg) == native[i][j]);
      }
  }
}

TEST_CASE("power-sum route") {
  SimpleGraph two = graph(3, {{0, 1}, {0, 2}, {2, 1}});
  REQUIRE(stcon_via_matpow(two.n, Nat(0), Nat(1), 2, two).value == 2);
  REQUIRE(stcon_via_matpow(two.n, Nat(0), Nat(1), 0, two).value == 0);

  // complete digraph on 3 vertices: growth follows the power sums
  SimpleGraph k3 = graph(3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2},
                             {2, 0}, {2, 1}, {2, 2}});
  DenseAdjacency d = dense_adjacency(k3, Nat(0), Nat(1));
  for (std::uint64_t p = 0; p <= 6; ++p)
    REQUIRE(stcon_via_matpow(k3.n, Nat(0), Nat(1), p, k3).value ==
            oracle::count_walks(d.matrix, d.s, d.t, p));
}

TEST_CASE("walk enumeration budget fails loudly") {
  SimpleGraph k3 = graph(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}, {2, 1}, {1, 0}});
  REQUIRE_THROWS_AS(stcon_count(k3.n, Nat(0), Nat(1), 20, k3, Via::dfs, 50),
                    BudgetExceeded);
  REQUIRE_THROWS_AS(
      signed_power_entry(0, 0, 6,
                         matpow::int_matrix_from_entries(
                             {{Int(3), Int(3)}, {Int(3), Int(3)}}),
                         20),
      BudgetExceeded);
  REQUIRE_THROWS_AS(multigraph_stcon_count(2, Nat(0), Nat(1), 12,
                                           multigraph({{2, 2}, {2, 2}}), 30),
                    BudgetExceeded);
}

TEST_CASE("bad indices are rejected") {
  SimpleGraph g = graph(2, {{0, 1}});
  REQUIRE_THROWS_AS(stcon_count(g.n, Nat(0), Nat(7), 1, g), BadInput);
  REQUIRE_THROWS_AS(multigraph_stcon_count(2, Nat(1), Nat(0), 1,
                                           multigraph({{0, 1}, {0, 0}})),
                    BadInput);
}
