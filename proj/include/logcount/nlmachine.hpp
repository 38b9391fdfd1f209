#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "logcount/bitstring.hpp"
#include "logcount/budget.hpp"
#include "logcount/counting.hpp"
#include "logcount/encoding.hpp"
#include "logcount/nat.hpp"

// Nondeterministic machine model with a read-only input tape over {0,1,$},
// a two-way infinite work tape, a step counter and a single accepting
// state. The work tape is carried as two numbers: the value to the left of
// the head, and the value from the head rightwards read in reverse, so the
// current cell is the low bit of the right part. Accepting-path counting by
// exhaustive simulation is the semantic oracle; the configuration graph
// reduces the same count to bounded s-t walk counting.
namespace logcount::nlmachine {

struct Transition {
  std::uint32_t from = 0;
  char read = '0';  // '0', '1' or '$'
  int work = 0;     // bit under the work head
  std::uint32_t to = 0;
  int write = 0;
  char work_move = 'R';   // 'L' or 'R'
  char input_move = 'S';  // 'L', 'R' or 'S'
};

struct MachineDescription {
  std::uint32_t num_states = 1;
  std::uint32_t accept_state = 0;  // start state is always 0
  std::uint32_t time_exponent = 1;
  std::vector<Transition> delta;
};

inline void validate(const MachineDescription& m) {
  if (m.num_states == 0) throw BadInput("machine needs at least one state");
  if (m.accept_state >= m.num_states) throw BadInput("accept state out of range");
  if (m.time_exponent < 1) throw BadInput("time exponent must be at least 1");
  for (const Transition& t : m.delta) {
    if (t.from >= m.num_states || t.to >= m.num_states)
      throw BadInput("transition state out of range");
    if (t.from == m.accept_state)
      throw BadInput("accept state must have no outgoing transitions");
    if (t.read != '0' && t.read != '1' && t.read != '$')
      throw BadInput("transition reads one of 0, 1, $");
    if (t.work != 0 && t.work != 1) throw BadInput("work bit must be 0 or 1");
    if (t.write != 0 && t.write != 1) throw BadInput("write bit must be 0 or 1");
    if (t.work_move != 'L' && t.work_move != 'R')
      throw BadInput("work move must be L or R");
    if (t.input_move != 'L' && t.input_move != 'R' && t.input_move != 'S')
      throw BadInput("input move must be L, R or S");
  }
}

// The 5-tuple (a,b,c,d,e): state, input-head position, counter, work tape
// left of the head, rest of the work tape reversed.
struct Configuration {
  Nat state;
  Nat head;
  Nat counter;
  Nat work_left;
  Nat work_rest;

  friend bool operator==(const Configuration& x, const Configuration& y) {
    return x.state == y.state && x.head == y.head && x.counter == y.counter &&
           x.work_left == y.work_left && x.work_rest == y.work_rest;
  }
};

inline Nat encode_config(const Configuration& c) {
  return encoding::pair(c.state, c.head, c.counter, c.work_left, c.work_rest);
}

// Inverse of encode_config; rejects numbers whose left spine is not a
// 4-fold pairing.
inline Configuration decode_config(const Nat& v) {
  Nat rest = v;
  Nat parts[4];
  for (int level = 0; level < 4; ++level) {
    auto p = encoding::split(rest);
    if (!p) throw BadInput("not an encoded configuration: " + v.get_str());
    parts[level] = p->right;
    rest = p->left;
  }
  return Configuration{rest, parts[3], parts[2], parts[1], parts[0]};
}

// |X|^k + 1: the number of steps available on input X.
inline Nat time_bound(const MachineDescription& m, const BitString& input) {
  return nat_pow(input.length(), m.time_exponent) + 1;
}

// The distinct next configurations. Halting (accept state, exhausted
// counter, or no applicable transition) yields the empty set. A transition
// moving the input head left of cell 0 or right of the end marker does not
// apply.
inline std::vector<Configuration> successors(const MachineDescription& m,
                                             const BitString& input,
                                             const Configuration& cfg) {
  std::vector<Configuration> out;
  if (cfg.state == m.accept_state) return out;
  if (cfg.counter + 1 > time_bound(m, input)) return out;
  Nat input_len = input.length();
  if (cfg.head > input_len) throw BadInput("input head beyond the end marker");
  char sym = cfg.head == input_len ? '$' : (input.test(cfg.head) ? '1' : '0');
  int work_bit = mpz_tstbit(cfg.work_rest.get_mpz_t(), 0);
  for (const Transition& t : m.delta) {
    if (t.from != cfg.state || t.read != sym || t.work != work_bit) continue;
    Configuration next;
    next.state = t.to;
    next.counter = cfg.counter + 1;
    if (t.input_move == 'L') {
      if (cfg.head == 0) continue;
      next.head = cfg.head - 1;
    } else if (t.input_move == 'R') {
      if (cfg.head == input_len) continue;  // never moves past $
      next.head = cfg.head + 1;
    } else {
      next.head = cfg.head;
    }
    Nat written = cfg.work_rest - work_bit + t.write;
    if (t.work_move == 'R') {
      next.work_left = 2 * cfg.work_left + t.write;
      next.work_rest = written / 2;
    } else {
      next.work_left = cfg.work_left / 2;
      next.work_rest = 2 * written + cfg.work_left % 2;
    }
    out.push_back(std::move(next));
  }
  std::sort(out.begin(), out.end(),
            [](const Configuration& a, const Configuration& b) {
              return encode_config(a) < encode_config(b);
            });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Configuration start_configuration() {
  return Configuration{0, 0, 0, 0, 0};
}

// Number of maximal computation branches ending in the accept state within
// the time bound, by exhaustive depth-first expansion.
inline Nat count_accepting_paths(const MachineDescription& m,
                                 const BitString& input,
                                 std::uint64_t budget = default_budget()) {
  validate(m);
  BudgetMeter meter{budget};
  Nat count = 0;
  std::vector<Configuration> stack{start_configuration()};
  while (!stack.empty()) {
    meter.spend();
    Configuration cfg = std::move(stack.back());
    stack.pop_back();
    if (cfg.state == m.accept_state) {
      ++count;
      continue;
    }
    for (Configuration& next : successors(m, input, cfg))
      stack.push_back(std::move(next));
  }
  return count;
}

// Node labels of the configuration graph: 0 is the source wrapper, 1 the
// sink wrapper, and a configuration lives at its encoding plus 2. The
// offset keeps the start configuration (which encodes as 0) off the
// wrapper labels; without it the source edge would degenerate into a
// self-loop and walk counts would depend on the length bound.
inline Nat config_node_label(const Configuration& c) {
  return encode_config(c) + 2;
}

// The reachable part of the configuration graph: an edge from the source
// wrapper to the start configuration, an edge for every transition, and an
// edge from each in-bound accepting configuration to the sink wrapper.
// Restricting to configurations reachable from the start leaves the 0-to-1
// walk count unchanged.
inline counting::SimpleGraph config_graph(
    const MachineDescription& m, const BitString& input,
    std::uint64_t budget = default_budget()) {
  validate(m);
  BudgetMeter meter{budget};
  Nat bound = time_bound(m, input);
  std::vector<std::pair<Nat, Nat>> edges;
  Configuration start = start_configuration();
  edges.emplace_back(Nat(0), config_node_label(start));
  std::set<Nat> seen{encode_config(start)};
  std::vector<Configuration> frontier{start};
  while (!frontier.empty()) {
    meter.spend();
    Configuration cfg = std::move(frontier.back());
    frontier.pop_back();
    Nat label = config_node_label(cfg);
    if (cfg.state == m.accept_state && cfg.counter <= bound)
      edges.emplace_back(label, Nat(1));
    for (Configuration& next : successors(m, input, cfg)) {
      edges.emplace_back(label, config_node_label(next));
      if (seen.insert(encode_config(next)).second)
        frontier.push_back(std::move(next));
    }
  }
  Nat label_bound = 2;
  for (const auto& [u, v] : edges) {
    if (u >= label_bound) label_bound = u + 1;
    if (v >= label_bound) label_bound = v + 1;
  }
  return counting::SimpleGraph::from_edges(label_bound, std::move(edges));
}

// The accepting-path count recovered as the number of walks from node 0 to
// node 1 in the configuration graph. Any length bound of at least
// |X|^k + 3 gives the same count (source edge + accept edge + time bound);
// the graph is acyclic, so the walk enumeration route suffices.
inline Nat f_via_config_graph(const MachineDescription& m,
                              const BitString& input,
                              std::uint64_t budget = default_budget()) {
  counting::SimpleGraph g = config_graph(m, input, budget);
  std::uint64_t p = to_u64(time_bound(m, input) + 2, "walk length bound");
  return counting::stcon_count(g.n, Nat(0), Nat(1), p, g, counting::Via::dfs,
                               budget)
      .value;
}

}  // namespace logcount::nlmachine
