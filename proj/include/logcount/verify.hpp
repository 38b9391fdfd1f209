#pragma once

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "logcount/budget.hpp"
#include "logcount/counting.hpp"
#include "logcount/encoding.hpp"
#include "logcount/intcode.hpp"
#include "logcount/json_io.hpp"
#include "logcount/matpow.hpp"
#include "logcount/nlmachine.hpp"
#include "logcount/oracle.hpp"
#include "logcount/rng.hpp"

// The cross-oracle verification suites. Every suite draws its instances
// from a seeded generator, checks exact equality against an independent
// route, and reports the first counterexample on failure. A fixed
// (seed, cases) pair produces a byte-identical report.
namespace logcount::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  std::uint64_t cases = 0;
  bool pass = true;
  std::string detail;      // first counterexample, empty when passing
  double seconds = 0.0;    // wall time, reported by the acceptance runner
  double time_limit = 0.0; // seconds
};

struct Options {
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> cases;  // per-criterion override
  std::uint64_t budget = default_budget();
};

namespace detail {

inline matpow::BoolMatrix random_bool_matrix(Rng& rng, std::uint64_t n) {
  std::vector<std::vector<int>> e(n, std::vector<int>(n, 0));
  for (auto& row : e)
    for (int& v : row) v = static_cast<int>(rng.below(2));
  return matpow::bool_matrix_from_entries(e);
}

inline std::vector<std::vector<Int>> random_int_entries(Rng& rng,
                                                        std::uint64_t n,
                                                        std::int64_t lo,
                                                        std::int64_t hi) {
  std::vector<std::vector<Int>> e(n, std::vector<Int>(n));
  for (auto& row : e)
    for (Int& v : row) v = Int(rng.in_range(lo, hi));
  return e;
}

inline counting::SimpleGraph random_simple_graph(Rng& rng, std::uint64_t n) {
  std::vector<std::pair<Nat, Nat>> edges;
  for (std::uint64_t u = 0; u < n; ++u)
    for (std::uint64_t v = 0; v < n; ++v)
      if (rng.chance(2, 5)) edges.emplace_back(nat_from_u64(u), nat_from_u64(v));
  return counting::SimpleGraph::from_edges(nat_from_u64(n), std::move(edges));
}

inline nlmachine::MachineDescription random_machine(Rng& rng) {
  nlmachine::MachineDescription m;
  m.num_states = static_cast<std::uint32_t>(2 + rng.below(4));
  m.accept_state = m.num_states - 1;
  m.time_exponent = rng.chance(1, 8) ? 2 : 1;
  bool guessy = rng.chance(1, 4);  // densely nondeterministic flavor
  for (std::uint32_t s = 0; s < m.num_states; ++s) {
    if (s == m.accept_state) continue;
    for (char read : {'0', '1', '$'})
      for (int work : {0, 1}) {
        std::uint64_t roll = rng.below(20);
        std::uint64_t fanout = guessy ? (roll < 14 ? 2 : 1)
                                      : (roll < 4 ? 0 : (roll < 13 ? 1 : 2));
        for (std::uint64_t o = 0; o < fanout; ++o) {
          nlmachine::Transition t;
          t.from = s;
          t.read = read;
          t.work = work;
          t.to = rng.chance(1, 6)
                    ? m.accept_state
                    : static_cast<std::uint32_t>(rng.below(m.num_states));
          t.write = static_cast<int>(rng.below(2));
          t.work_move = rng.below(2) ? 'R' : 'L';
          std::uint64_t im = rng.below(3);
          t.input_move = im == 0 ? 'L' : (im == 1 ? 'R' : 'S');
          m.delta.push_back(t);
        }
      }
    // the dense flavor funnels every branch that reaches the end marker
    // into the accept state, so large path counts actually occur
    if (guessy)
      for (int work : {0, 1})
        m.delta.push_back({s, '$', work, m.accept_state, 0, 'R', 'S'});
  }
  return m;
}

// Two states, one guessed work bit per input cell, accept at the marker:
// exactly 2^|X| accepting branches through every route.
inline nlmachine::MachineDescription guesser_machine() {
  nlmachine::MachineDescription m;
  m.num_states = 2;
  m.accept_state = 1;
  m.time_exponent = 1;
  for (char read : {'0', '1'}) {
    m.delta.push_back({0, read, 0, 0, 0, 'R', 'R'});
    m.delta.push_back({0, read, 0, 0, 1, 'R', 'R'});
  }
  m.delta.push_back({0, '$', 0, 1, 0, 'R', 'S'});
  return m;
}

inline std::string int_matrix_str(const std::vector<std::vector<Int>>& e) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < e.size(); ++i) {
    os << (i ? ";" : "");
    for (std::size_t j = 0; j < e[i].size(); ++j)
      os << (j ? "," : "") << e[i][j].get_str();
  }
  os << "]";
  return os.str();
}

using CaseBody = std::function<std::optional<std::string>(Rng&, std::uint64_t)>;

inline CriterionResult drive(int id, std::string name, double time_limit,
                             std::uint64_t cases, std::uint64_t seed,
                             const CaseBody& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.cases = cases;
  r.time_limit = time_limit;
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(seed ^ (0x8000000000000000ull + static_cast<std::uint64_t>(id)));
  for (std::uint64_t c = 0; c < cases; ++c) {
    std::optional<std::string> fail;
    try {
      fail = body(rng, c);
    } catch (const Error& e) {
      fail = std::string("case ") + std::to_string(c) + ": " + e.what();
    }
    if (fail) {
      r.pass = false;
      r.detail = *fail;
      break;
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                  .count();
  return r;
}

}  // namespace detail

// 1. Encoded integer addition and multiplication against native integers,
// plus the cancellation law for equal magnitudes of opposite sign.
inline CriterionResult check_int_arithmetic(const Options& opt) {
  return detail::drive(
      1, "integer add/mul vs native", 5.0, opt.cases.value_or(10'000), opt.seed,
      [](Rng& rng, std::uint64_t c) -> std::optional<std::string> {
        Int a(rng.in_range(-65536, 65536));
        Int b(rng.in_range(-65536, 65536));
        intcode::IntString ea = intcode::encode_int(a);
        intcode::IntString eb = intcode::encode_int(b);
        Int sum = intcode::decode_int(intcode::add_z(ea, eb));
        if (sum != a + b)
          return "a=" + a.get_str() + " b=" + b.get_str() +
                 ": add decoded " + sum.get_str();
        Int prod = intcode::decode_int(intcode::mul_z(ea, eb));
        if (prod != a * b)
          return "a=" + a.get_str() + " b=" + b.get_str() +
                 ": mul decoded " + prod.get_str();
        Int v = c == 0 ? Int(3) : Int(rng.in_range(0, 65536));
        if (!intcode::add_z(intcode::encode_int(v), intcode::encode_int(-v))
                 .raw.empty())
          return "v=" + v.get_str() + ": opposite signs did not cancel to zero";
        return std::nullopt;
      });
}

// 2. Mod-2 powering against a native oracle; the sequence checker accepts
// the construction and rejects 50 single-bit mutations per instance.
inline CriterionResult check_pow2(const Options& opt) {
  return detail::drive(
      2, "mod-2 powering + checker mutations", 10.0, opt.cases.value_or(200),
      opt.seed, [](Rng& rng, std::uint64_t) -> std::optional<std::string> {
        std::uint64_t n = 1 + rng.below(8);
        std::uint64_t k = rng.below(17);
        matpow::BoolMatrix x = detail::random_bool_matrix(rng, n);
        std::string tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
        auto native = oracle::mod2_pow(matpow::decode_bool_matrix(x), k);
        if (matpow::decode_bool_matrix(matpow::pow2(n, k, x)) != native)
          return tag + ": power disagrees with native mod-2 oracle";
        matpow::Pow2Sequence seq = matpow::powseq2(n, k, x);
        if (!matpow::check_delta_powseq2(n, k, x, seq.raw))
          return tag + ": checker rejected the constructed sequence";
        std::uint64_t span = to_u64(seq.raw.length()) + 64;
        for (int m = 0; m < 50; ++m) {
          Nat pos = nat_from_u64(rng.below(span));
          if (matpow::check_delta_powseq2(n, k, x, seq.raw.flipped(pos)))
            return tag + ": checker accepted a flip at bit " + pos.get_str();
        }
        return std::nullopt;
      });
}

// 3. Integer powering decodes to the native big-integer power.
inline CriterionResult check_powz(const Options& opt) {
  return detail::drive(
      3, "integer powering vs native", 30.0, opt.cases.value_or(100), opt.seed,
      [](Rng& rng, std::uint64_t) -> std::optional<std::string> {
        std::uint64_t n = 1 + rng.below(6);
        std::uint64_t k = rng.below(9);
        auto entries = detail::random_int_entries(rng, n, -8, 8);
        matpow::IntMatrix x = matpow::int_matrix_from_entries(entries);
        auto got = matpow::decode_int_matrix(matpow::pow_z(n, k, x));
        if (got != oracle::int_pow(entries, k))
          return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " X=" +
                 detail::int_matrix_str(entries) + ": power decoded wrongly";
        return std::nullopt;
      });
}

// 4. The explicit-witness construction reproduces the power sequence, its
// checker accepts, and single-bit mutations of Y or Z are rejected.
inline CriterionResult check_witness(const Options& opt) {
  return detail::drive(
      4, "explicit witness coherence", 10.0, opt.cases.value_or(50), opt.seed,
      [](Rng& rng, std::uint64_t) -> std::optional<std::string> {
        std::uint64_t n = 1 + rng.below(8);
        std::uint64_t k = rng.below(13);
        matpow::BoolMatrix x = detail::random_bool_matrix(rng, n);
        std::string tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
        matpow::ExplicitWitness2 w = matpow::explicit_witness2(n, k, x);
        if (w.powers.raw != matpow::powseq2(n, k, x).raw)
          return tag + ": witness powers differ from the power sequence";
        if (!matpow::check_explicit_witness2(n, k, x, w.powers.raw, w.witness))
          return tag + ": checker rejected the constructed witness";
        std::uint64_t yspan = to_u64(w.powers.raw.length()) + 64;
        std::uint64_t zspan = to_u64(w.witness.length()) + 64;
        for (int m = 0; m < 50; ++m) {
          bool mutate_z = m % 2 == 1;
          Nat pos = nat_from_u64(rng.below(mutate_z ? zspan : yspan));
          BitString y = w.powers.raw;
          BitString z = w.witness;
          (mutate_z ? z : y) = (mutate_z ? z : y).flipped(pos);
          if (matpow::check_explicit_witness2(n, k, x, y, z))
            return tag + ": checker accepted a flip at bit " + pos.get_str() +
                   (mutate_z ? " of Z" : " of Y");
        }
        return std::nullopt;
      });
}

// 5. Batched power sequences: block-diagonal extraction equals the
// per-instance sequences.
inline CriterionResult check_aggregate(const Options& opt) {
  return detail::drive(
      5, "batched powering extraction", 10.0, opt.cases.value_or(50), opt.seed,
      [](Rng& rng, std::uint64_t) -> std::optional<std::string> {
        std::uint64_t b = 1 + rng.below(4);
        std::vector<Nat> dims, powers;
        std::vector<BitString> mats;
        for (std::uint64_t i = 0; i < b; ++i) {
          std::uint64_t n = 1 + rng.below(4);
          dims.push_back(nat_from_u64(n));
          powers.push_back(nat_from_u64(rng.below(7)));
          mats.push_back(detail::random_bool_matrix(rng, n).raw);
        }
        BitString w1 = encoding::build_numlist(dims);
        BitString w2 = encoding::build_numlist(powers);
        BitString x = encoding::build_list(mats);
        BitString star = matpow::powseq2_star(b, w1, w2, x);  // self-checking
        std::vector<BitString> expect;
        for (std::uint64_t i = 0; i < b; ++i) {
          matpow::BoolMatrix xm{to_u64(dims[i]), mats[i]};
          expect.push_back(
              matpow::powseq2(to_u64(dims[i]), to_u64(powers[i]), xm).raw);
        }
        if (star != encoding::build_list(expect))
          return "b=" + std::to_string(b) +
                 ": extraction differs from per-instance sequences";
        return std::nullopt;
      });
}

// 6. Layered-graph identity: the bounded s-t walk count equals the
// (s',t') entry of the (p+2)-th power of the layered adjacency matrix.
inline CriterionResult check_layered(const Options& opt) {
  return detail::drive(
      6, "layered-graph count identity", 20.0, opt.cases.value_or(100),
      opt.seed, [&opt](Rng& rng, std::uint64_t) -> std::optional<std::string> {
        std::uint64_t n = 2 + rng.below(4);
        std::uint64_t p = rng.below(6);
        counting::SimpleGraph g = detail::random_simple_graph(rng, n);
        std::string tag = "n=" + std::to_string(n) + " p=" + std::to_string(p);
        counting::PathCount count =
            counting::stcon_count(g.n, Nat(0), Nat(1), p, g,
                                  counting::Via::both, opt.budget);
        counting::SimpleGraph lay = counting::layered_graph(p, g);
        counting::DenseAdjacency d =
            counting::dense_adjacency(lay, Nat(0), Nat(1));
        Int entry = oracle::int_pow(d.matrix, p + 2)[d.s][d.t];
        if (count.value != entry)
          return tag + ": walks=" + count.value.get_str() +
                 " layered power entry=" + entry.get_str();
        return std::nullopt;
      });
}

// 7. Edge-bisection identity: every entry of the (k+1)-th power equals the
// difference of two bounded walk counts in the bisected graph.
inline CriterionResult check_convert(const Options& opt) {
  return detail::drive(
      7, "edge-bisection count identity", 30.0, opt.cases.value_or(50),
      opt.seed, [&opt](Rng& rng, std::uint64_t) -> std::optional<std::string> {
        std::uint64_t n = 2 + rng.below(3);
        std::uint64_t k = rng.below(4);
        counting::MultiGraph mg;
        mg.n = n;
        std::vector<std::vector<Int>> entries(n, std::vector<Int>(n));
        for (std::uint64_t i = 0; i < n; ++i) {
          std::vector<Nat> row;
          for (std::uint64_t j = 0; j < n; ++j) {
            std::uint64_t m = rng.below(4);
            row.push_back(nat_from_u64(m));
            entries[i][j] = Int(static_cast<long>(m));
          }
          mg.mult.push_back(std::move(row));
        }
        matpow::IntMatrix x = matpow::int_matrix_from_entries(entries);
        matpow::IntMatrix powered = matpow::pow_z(n, k + 1, x);
        auto native = oracle::int_pow(entries, k + 1);
        counting::SimpleGraph conv = counting::convert(mg);
        for (std::uint64_t i = 0; i < n; ++i)
          for (std::uint64_t j = 0; j < n; ++j) {
            std::string tag = "n=" + std::to_string(n) + " k=" +
                              std::to_string(k) + " entry (" +
                              std::to_string(i) + "," + std::to_string(j) + ")";
            Int lhs = intcode::decode_int(matpow::int_entry(powered, i, j));
            if (lhs != native[i][j])
              return tag + ": encoded power disagrees with native";
            Nat longer = counting::stcon_count(conv.n, nat_from_u64(i),
                                               nat_from_u64(j), 2 * (k + 1),
                                               conv, counting::Via::dfs,
                                               opt.budget)
                             .value;
            Nat shorter = counting::stcon_count(conv.n, nat_from_u64(i),
                                                nat_from_u64(j), 2 * k, conv,
                                                counting::Via::dfs, opt.budget)
                              .value;
            if (lhs != longer - shorter)
              return tag + ": power=" + lhs.get_str() + " walk difference=" +
                     Nat(longer - shorter).get_str();
          }
        return std::nullopt;
      });
}

// 8. Exhaustive accepting-path counting equals the 0-to-1 walk count of the
// configuration graph.
inline CriterionResult check_machines(const Options& opt) {
  return detail::drive(
      8, "machine paths vs configuration graph", 60.0, opt.cases.value_or(30),
      opt.seed, [&opt](Rng& rng, std::uint64_t c) -> std::optional<std::string> {
        nlmachine::MachineDescription m =
            c % 6 == 5 ? detail::guesser_machine() : detail::random_machine(rng);
        std::uint64_t len = rng.below(m.time_exponent > 1 ? 4 : 7);
        std::vector<Nat> bits;
        for (std::uint64_t i = 0; i < len; ++i)
          if (rng.below(2)) bits.push_back(nat_from_u64(i));
        BitString input = BitString::from_positions(std::move(bits));
        Nat direct = nlmachine::count_accepting_paths(m, input, opt.budget);
        Nat graph = nlmachine::f_via_config_graph(m, input, opt.budget);
        if (direct != graph)
          return "states=" + std::to_string(m.num_states) + " |X|=" +
                 input.length().get_str() + ": direct=" + direct.get_str() +
                 " via graph=" + graph.get_str();
        return std::nullopt;
      });
}

// 9. Signed branch counting: the positive/negative accepting-branch
// difference equals every entry of the integer matrix power.
inline CriterionResult check_signed(const Options& opt) {
  return detail::drive(
      9, "signed branch counts vs power", 30.0, opt.cases.value_or(50),
      opt.seed, [&opt](Rng& rng, std::uint64_t) -> std::optional<std::string> {
        std::uint64_t n = 1 + rng.below(4);
        std::uint64_t k = rng.below(5);
        auto entries = detail::random_int_entries(rng, n, -3, 3);
        matpow::IntMatrix x = matpow::int_matrix_from_entries(entries);
        matpow::IntMatrix powered = matpow::pow_z(n, k, x);
        for (std::uint64_t i = 0; i < n; ++i)
          for (std::uint64_t j = 0; j < n; ++j) {
            counting::SignedCount sc =
                counting::signed_power_entry(i, j, k, x, opt.budget);
            Int expect = intcode::decode_int(matpow::int_entry(powered, i, j));
            if (Int(sc.pos - sc.neg) != expect)
              return "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                     " X=" + detail::int_matrix_str(entries) + " (" +
                     std::to_string(i) + "," + std::to_string(j) + "): pos=" +
                     sc.pos.get_str() + " neg=" + sc.neg.get_str() +
                     " power=" + expect.get_str();
          }
        return std::nullopt;
      });
}

// 10. Chain multigraphs: hop multiplicities multiply branch counts exactly.
inline CriterionResult check_branching(const Options& opt) {
  return detail::drive(
      10, "chain branching law", 5.0, opt.cases.value_or(50), opt.seed,
      [&opt](Rng& rng, std::uint64_t) -> std::optional<std::string> {
        std::uint64_t q = 1 + rng.below(4);
        std::vector<std::uint64_t> mults;
        Nat expect = 1;
        for (std::uint64_t h = 0; h < q; ++h) {
          mults.push_back(1 + rng.below(5));
          expect *= nat_from_u64(mults.back());
        }
        // Chain 0 -> 2 -> 3 -> ... -> q -> 1 (interior vertices 2..q).
        counting::MultiGraph g;
        g.n = q + 1;
        g.mult.assign(q + 1, std::vector<Nat>(q + 1, Nat(0)));
        for (std::uint64_t h = 0; h < q; ++h) {
          std::uint64_t from = h == 0 ? 0 : h + 1;
          std::uint64_t to = h == q - 1 ? 1 : h + 2;
          g.mult[from][to] = nat_from_u64(mults[h]);
        }
        Nat got = counting::multigraph_stcon_count(q + 1, Nat(0), Nat(1), q, g,
                                                   opt.budget)
                      .value;
        if (got != expect) {
          std::string ms;
          for (std::uint64_t m : mults) ms += std::to_string(m) + " ";
          return "hops=" + ms + ": count=" + got.get_str() + " product=" +
                 expect.get_str();
        }
        return std::nullopt;
      });
}

inline std::vector<CriterionResult> run_all(const Options& opt) {
  return {check_int_arithmetic(opt), check_pow2(opt),     check_powz(opt),
          check_witness(opt),        check_aggregate(opt), check_layered(opt),
          check_convert(opt),        check_machines(opt),  check_signed(opt),
          check_branching(opt)};
}

// Deterministic summary: identical (seed, cases) inputs yield identical
// bytes. Timings are deliberately left out; the acceptance runner prints
// them separately.
inline std::string report(const std::vector<CriterionResult>& results,
                          const Options& opt) {
  std::ostringstream os;
  os << "verification report (seed=" << opt.seed << ", cases=";
  if (opt.cases)
    os << *opt.cases;
  else
    os << "default";
  os << ")\n\n";
  char line[128];
  std::snprintf(line, sizeof line, " %2s  %-38s %7s  %s\n", "#", "criterion",
                "cases", "result");
  os << line;
  std::size_t passed = 0;
  for (const CriterionResult& r : results) {
    std::snprintf(line, sizeof line, " %2d  %-38s %7llu  %s\n", r.id,
                  r.name.c_str(),
                  static_cast<unsigned long long>(r.cases),
                  r.pass ? "pass" : "FAIL");
    os << line;
    if (!r.pass) os << "     first counterexample: " << r.detail << "\n";
    passed += r.pass;
  }
  os << "\nresult: " << passed << "/" << results.size() << " passed\n";
  return os.str();
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace logcount::verify
