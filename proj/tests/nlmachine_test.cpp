#include <catch2/catch.hpp>

#include <map>
#include <set>

#include "logcount/nlmachine.hpp"
#include "logcount/rng.hpp"
#include "logcount/verify.hpp"

using namespace logcount;
using namespace logcount::nlmachine;

namespace {

// Guesses one work bit per input cell, moving right; accepts at the end
// marker. 2^|X| accepting branches.
MachineDescription bit_guesser() {
  MachineDescription m;
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

}  // namespace

TEST_CASE("configuration encoding roundtrip") {
  REQUIRE(encode_config(Configuration{0, 0, 0, 0, 0}) == 0);
  Rng rng(3);
  std::set<Nat> seen;
  for (int c = 0; c < 200; ++c) {
    Configuration cfg{nat_from_u64(rng.below(9)), nat_from_u64(rng.below(9)),
                      nat_from_u64(rng.below(40)), nat_from_u64(rng.below(4096)),
                      nat_from_u64(rng.below(4096))};
    Nat enc = encode_config(cfg);
    REQUIRE(decode_config(enc) == cfg);
    seen.insert(enc);
  }
  REQUIRE_THROWS_AS(decode_config(Nat(1)), BadInput);
}

TEST_CASE("successor arithmetic matches the tape layout") {
  MachineDescription m;
  m.num_states = 13;
  m.accept_state = 12;
  m.time_exponent = 2;
  m.delta.push_back({9, '0', 0, 12, 1, 'R', 'L'});
  BitString x = BitString::from_text("110001");

  // write 1, work head right, input head left, counter 17 -> 18
  Configuration cfg{Nat(9), Nat(2), Nat(17), Nat(2), Nat(4)};
  auto succ = successors(m, x, cfg);
  REQUIRE(succ.size() == 1);
  REQUIRE(succ[0] == Configuration{Nat(12), Nat(1), Nat(18), Nat(5), Nat(2)});

  // the transition reads 0; a cell holding 1 does not match
  REQUIRE(successors(m, x, Configuration{Nat(9), Nat(0), Nat(1), Nat(0), Nat(0)})
              .empty());
  // accept configurations halt
  REQUIRE(successors(m, x, Configuration{Nat(12), Nat(0), Nat(1), Nat(0), Nat(0)})
              .empty());
  // counter exhausted: |X|^2 + 1 = 37 steps, so counter 37 cannot move
  REQUIRE(successors(m, x, Configuration{Nat(9), Nat(2), Nat(37), Nat(0), Nat(0)})
              .empty());
  REQUIRE_FALSE(
      successors(m, x, Configuration{Nat(9), Nat(2), Nat(36), Nat(0), Nat(0)})
          .empty());
}

TEST_CASE("work tape moves left") {
  MachineDescription m;
  m.num_states = 3;
  m.accept_state = 2;
  m.time_exponent = 1;
  m.delta.push_back({0, '$', 1, 1, 0, 'L', 'S'});
  // head cell holds 1 (rest = 4+1), cell to the left holds 1 (left = 3)
  Configuration cfg{Nat(0), Nat(0), Nat(0), Nat(3), Nat(5)};
  auto succ = successors(m, BitString{}, cfg);
  REQUIRE(succ.size() == 1);
  // write 0 over the 1, move left: left = 1, rest = 2*4 + 1
  REQUIRE(succ[0] == Configuration{Nat(1), Nat(0), Nat(1), Nat(1), Nat(9)});
}

TEST_CASE("input head boundaries") {
  MachineDescription m;
  m.num_states = 2;
  m.accept_state = 1;
  m.time_exponent = 1;
  m.delta.push_back({0, '1', 0, 1, 0, 'R', 'L'});  // left at cell 0: inapplicable
  m.delta.push_back({0, '$', 0, 1, 0, 'R', 'R'});  // right at the marker: inapplicable
  BitString x = BitString::from_text("1");
  REQUIRE(successors(m, x, Configuration{Nat(0), Nat(0), Nat(0), Nat(0), Nat(0)})
              .empty());
  REQUIRE(successors(m, x, Configuration{Nat(0), Nat(1), Nat(0), Nat(0), Nat(0)})
              .empty());
}

TEST_CASE("duplicate-effect transitions collapse to one successor") {
  MachineDescription m;
  m.num_states = 2;
  m.accept_state = 1;
  m.time_exponent = 1;
  // on an all-zero tape, writing 0 then stepping either way lands in the
  // same configuration
  m.delta.push_back({0, '$', 0, 0, 0, 'R', 'S'});
  m.delta.push_back({0, '$', 0, 0, 0, 'L', 'S'});
  auto succ = successors(m, BitString{},
                         Configuration{Nat(0), Nat(0), Nat(0), Nat(0), Nat(0)});
  REQUIRE(succ.size() == 1);
}

TEST_CASE("accepting path counts") {
  MachineDescription silent;
  silent.num_states = 2;
  silent.accept_state = 1;
  silent.time_exponent = 1;
  REQUIRE(count_accepting_paths(silent, BitString::from_text("01")) == 0);

  // two guessed writes, then both branches accept (input "1" allows 2 steps)
  MachineDescription fork;
  fork.num_states = 3;
  fork.accept_state = 2;
  fork.time_exponent = 1;
  fork.delta.push_back({0, '1', 0, 1, 0, 'R', 'S'});
  fork.delta.push_back({0, '1', 0, 1, 1, 'R', 'S'});
  fork.delta.push_back({1, '1', 0, 2, 0, 'R', 'S'});
  fork.delta.push_back({1, '1', 1, 2, 0, 'R', 'S'});
  REQUIRE(count_accepting_paths(fork, BitString::from_text("1")) == 2);

  MachineDescription guess = bit_guesser();
  for (std::uint64_t len = 0; len <= 5; ++len) {
    std::vector<Nat> bits;
    for (std::uint64_t i = 0; i + 1 < len; i += 2) bits.push_back(nat_from_u64(i));
    if (len > 0) bits.push_back(nat_from_u64(len - 1));
    BitString x = BitString::from_positions(bits);
    REQUIRE(count_accepting_paths(guess, x) == Nat(1) << to_u64(x.length()));
  }
}

TEST_CASE("configuration graph wraps source and sink") {
  MachineDescription m;
  m.num_states = 1;
  m.accept_state = 0;  // starts accepted
  m.time_exponent = 1;
  counting::SimpleGraph g = config_graph(m, BitString{});
  REQUIRE(g.edges.size() == 2);
  REQUIRE(g.edges[0] == std::make_pair(Nat(0), Nat(2)));
  REQUIRE(g.edges[1] == std::make_pair(Nat(2), Nat(1)));
  REQUIRE(f_via_config_graph(m, BitString{}) == 1);

  MachineDescription silent;
  silent.num_states = 2;
  silent.accept_state = 1;
  silent.time_exponent = 1;
  REQUIRE(f_via_config_graph(silent, BitString{}) == 0);
}

TEST_CASE("deterministic always-accept machine has one path") {
  MachineDescription m;
  m.num_states = 2;
  m.accept_state = 1;
  m.time_exponent = 1;
  for (char read : {'0', '1'})
    m.delta.push_back({0, read, 0, 0, 0, 'R', 'R'});
  m.delta.push_back({0, '$', 0, 1, 0, 'R', 'S'});
  BitString x = BitString::from_text("1011");
  REQUIRE(count_accepting_paths(m, x) == 1);
  REQUIRE(f_via_config_graph(m, x) == 1);
}

TEST_CASE("graph structure invariants") {
  Rng rng(17);
  for (int c = 0; c < 15; ++c) {
    MachineDescription m = verify::detail::random_machine(rng);
    std::vector<Nat> bits;
    for (std::uint64_t i = 0; i < 5; ++i)
      if (rng.below(2)) bits.push_back(nat_from_u64(i));
    BitString x = BitString::from_positions(bits);
    counting::SimpleGraph g = config_graph(m, x);
    for (const auto& [u, v] : g.edges) {
      if (u == 0) {
        REQUIRE(v == config_node_label(start_configuration()));
      } else if (v == 1) {
        REQUIRE(decode_config(u - 2).state == m.accept_state);
      } else {
        // counters strictly increase along configuration edges: no cycles
        REQUIRE(decode_config(v - 2).counter == decode_config(u - 2).counter + 1);
      }
    }
  }
}

TEST_CASE("direct count equals the configuration-graph count") {
  Rng rng(19);
  for (int c = 0; c < 25; ++c) {
    MachineDescription m = verify::detail::random_machine(rng);
    std::uint64_t len = rng.below(m.time_exponent > 1 ? 4 : 7);
    std::vector<Nat> bits;
    for (std::uint64_t i = 0; i < len; ++i)
      if (rng.below(2)) bits.push_back(nat_from_u64(i));
    BitString x = BitString::from_positions(bits);
    REQUIRE(count_accepting_paths(m, x) == f_via_config_graph(m, x));
  }
}

TEST_CASE("configuration labels beyond machine words") {
  // Writes a 1 and moves right every step; after |X|^2 + 1 steps the work
  // tape value needs far more than 64 bits inside the node label.
  MachineDescription m;
  m.num_states = 2;
  m.accept_state = 1;
  m.time_exponent = 2;
  for (char read : {'0', '1', '$'}) {
    m.delta.push_back({0, read, 0, 0, 1, 'R', 'S'});
    m.delta.push_back({0, read, 1, 0, 1, 'R', 'S'});
  }
  BitString x = BitString::from_text("111111");
  REQUIRE(count_accepting_paths(m, x) == 0);
  REQUIRE(f_via_config_graph(m, x) == 0);
  counting::SimpleGraph g = config_graph(m, x);
  Nat widest = 0;
  for (const auto& [u, v] : g.edges)
    if (v > widest) widest = v;
  REQUIRE(widest > (Nat(1) << 64));
  Configuration deepest = decode_config(widest - 2);
  REQUIRE(deepest.counter == 37);  // |X|^2 + 1 with |X| = 6
  REQUIRE(deepest.work_left == (Nat(1) << 37) - 1);
}

TEST_CASE("enumeration budget fails loudly") {
  REQUIRE_THROWS_AS(count_accepting_paths(bit_guesser(),
                                          BitString::from_text("000001"), 10),
                    BudgetExceeded);
}

TEST_CASE("machine validation") {
  MachineDescription m;
  m.num_states = 2;
  m.accept_state = 1;
  m.time_exponent = 0;
  REQUIRE_THROWS_AS(validate(m), BadInput);
  m.time_exponent = 1;
  m.delta.push_back({1, '0', 0, 0, 0, 'R', 'S'});  // accept with an out-edge
  REQUIRE_THROWS_AS(validate(m), BadInput);
}
