#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "logcount/bitstring.hpp"
#include "logcount/counting.hpp"
#include "logcount/matpow.hpp"
#include "logcount/nat.hpp"
#include "logcount/nlmachine.hpp"

// The JSON file formats shared by the command-line tool and the test
// fixtures. Labels that do not fit a double-exact JSON number are carried
// as decimal strings; readers accept either form.
namespace logcount::json_io {

using json = nlohmann::json;

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw BadInput(path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw BadInput("cannot write " + path);
  out << j.dump(2) << "\n";
}

inline json nat_to_json(const Nat& v) {
  static const Nat kExact = Nat(1) << 53;
  if (v < kExact) return json(to_u64(v));
  return json(v.get_str());
}

inline Nat nat_from_json(const json& j, const char* what) {
  if (j.is_number_unsigned()) return nat_from_u64(j.get<std::uint64_t>());
  if (j.is_number_integer()) {
    auto v = j.get<std::int64_t>();
    if (v < 0) throw BadInput(std::string(what) + " must be nonnegative");
    return nat_from_u64(static_cast<std::uint64_t>(v));
  }
  if (j.is_string()) {
    Nat out;
    if (out.set_str(j.get<std::string>(), 10) != 0 || out < 0)
      throw BadInput(std::string(what) + " is not a decimal natural");
    return out;
  }
  throw BadInput(std::string(what) + " must be a number or decimal string");
}

// --- graphs -----------------------------------------------------------

inline bool is_multigraph_json(const json& j) {
  return j.is_object() && j.contains("multiplicities");
}

inline counting::SimpleGraph simple_graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw BadInput("graph file needs \"n\" and \"edges\"");
  Nat n = nat_from_json(j.at("n"), "n");
  std::vector<std::pair<Nat, Nat>> edges;
  for (const json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw BadInput("each edge is a [u, v] pair");
    edges.emplace_back(nat_from_json(e[0], "edge endpoint"),
                       nat_from_json(e[1], "edge endpoint"));
  }
  return counting::SimpleGraph::from_edges(std::move(n), std::move(edges));
}

inline json simple_graph_to_json(const counting::SimpleGraph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges)
    edges.push_back(json::array({nat_to_json(u), nat_to_json(v)}));
  return json{{"n", nat_to_json(g.n)}, {"edges", std::move(edges)}};
}

inline counting::MultiGraph multigraph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("multiplicities"))
    throw BadInput("multigraph file needs \"n\" and \"multiplicities\"");
  counting::MultiGraph g;
  g.n = to_u64(nat_from_json(j.at("n"), "n"), "n");
  const json& rows = j.at("multiplicities");
  if (!rows.is_array() || rows.size() != g.n)
    throw BadInput("multiplicities must be an n x n array");
  for (const json& row : rows) {
    if (!row.is_array() || row.size() != g.n)
      throw BadInput("multiplicities must be an n x n array");
    std::vector<Nat> r;
    for (const json& v : row) r.push_back(nat_from_json(v, "multiplicity"));
    g.mult.push_back(std::move(r));
  }
  return g;
}

inline json multigraph_to_json(const counting::MultiGraph& g) {
  json rows = json::array();
  for (const auto& row : g.mult) {
    json r = json::array();
    for (const Nat& v : row) r.push_back(nat_to_json(v));
    rows.push_back(std::move(r));
  }
  return json{{"n", g.n}, {"multiplicities", std::move(rows)}};
}

// --- matrices ---------------------------------------------------------

inline std::string matrix_ring(const json& j) {
  if (!j.is_object() || !j.contains("ring"))
    throw BadInput("matrix file needs a \"ring\" of z2 or z");
  std::string ring = j.at("ring").get<std::string>();
  if (ring != "z2" && ring != "z") throw BadInput("ring must be z2 or z");
  return ring;
}

inline std::vector<std::vector<Int>> matrix_entries(const json& j) {
  if (!j.contains("n") || !j.contains("entries"))
    throw BadInput("matrix file needs \"n\" and \"entries\"");
  std::uint64_t n = to_u64(nat_from_json(j.at("n"), "n"), "n");
  const json& rows = j.at("entries");
  if (!rows.is_array() || rows.size() != n)
    throw BadInput("entries must be an n x n array");
  std::vector<std::vector<Int>> out;
  for (const json& row : rows) {
    if (!row.is_array() || row.size() != n)
      throw BadInput("entries must be an n x n array");
    std::vector<Int> r;
    for (const json& v : row) {
      if (v.is_number_integer())
        r.push_back(Int(v.get<std::int64_t>()));
      else if (v.is_string()) {
        Int x;
        if (x.set_str(v.get<std::string>(), 10) != 0)
          throw BadInput("matrix entry is not a decimal integer");
        r.push_back(std::move(x));
      } else {
        throw BadInput("matrix entry must be an integer");
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline matpow::BoolMatrix bool_matrix_from_json(const json& j) {
  auto entries = matrix_entries(j);
  std::vector<std::vector<int>> e(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (const Int& v : entries[i]) {
      if (v != 0 && v != 1) throw BadInput("z2 matrix entries must be 0 or 1");
      e[i].push_back(static_cast<int>(v.get_si()));
    }
  return matpow::bool_matrix_from_entries(e);
}

inline matpow::IntMatrix int_matrix_from_json(const json& j) {
  return matpow::int_matrix_from_entries(matrix_entries(j));
}

inline json entries_to_json(const std::vector<std::vector<Int>>& e) {
  json rows = json::array();
  for (const auto& row : e) {
    json r = json::array();
    for (const Int& v : row) {
      if (v >= -(Int(1) << 53) && v <= (Int(1) << 53))
        r.push_back(v.get_si());
      else
        r.push_back(v.get_str());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

// --- witnesses --------------------------------------------------------

struct WitnessFile {
  BitString y;
  std::optional<BitString> z;
};

inline WitnessFile witness_from_json(const json& j) {
  if (!j.is_object() || !j.contains("Y"))
    throw BadInput("witness file needs \"Y\"");
  WitnessFile w;
  w.y = BitString::from_text(j.at("Y").get<std::string>());
  if (j.contains("Z"))
    w.z = BitString::from_text(j.at("Z").get<std::string>());
  return w;
}

inline json witness_to_json(const WitnessFile& w) {
  json j{{"Y", w.y.to_text()}};
  if (w.z) j["Z"] = w.z->to_text();
  return j;
}

// --- machines ---------------------------------------------------------

inline nlmachine::MachineDescription machine_from_json(const json& j) {
  if (!j.is_object() || !j.contains("states") || !j.contains("accept") ||
      !j.contains("k") || !j.contains("delta"))
    throw BadInput("machine file needs \"states\", \"accept\", \"k\", \"delta\"");
  nlmachine::MachineDescription m;
  m.num_states = j.at("states").get<std::uint32_t>();
  m.accept_state = j.at("accept").get<std::uint32_t>();
  m.time_exponent = j.at("k").get<std::uint32_t>();
  for (const json& t : j.at("delta")) {
    nlmachine::Transition tr;
    tr.from = t.at("from").get<std::uint32_t>();
    std::string read = t.at("read").get<std::string>();
    if (read.size() != 1) throw BadInput("transition read must be 0, 1 or $");
    tr.read = read[0];
    tr.work = t.at("work").get<int>();
    tr.to = t.at("to").get<std::uint32_t>();
    tr.write = t.at("write").get<int>();
    std::string wm = t.at("workMove").get<std::string>();
    std::string im = t.at("inputMove").get<std::string>();
    if (wm.size() != 1 || im.size() != 1) throw BadInput("moves are single letters");
    tr.work_move = wm[0];
    tr.input_move = im[0];
    m.delta.push_back(tr);
  }
  nlmachine::validate(m);
  return m;
}

inline json machine_to_json(const nlmachine::MachineDescription& m) {
  json delta = json::array();
  for (const nlmachine::Transition& t : m.delta)
    delta.push_back(json{{"from", t.from},
                         {"read", std::string(1, t.read)},
                         {"work", t.work},
                         {"to", t.to},
                         {"write", t.write},
                         {"workMove", std::string(1, t.work_move)},
                         {"inputMove", std::string(1, t.input_move)}});
  return json{{"states", m.num_states},
              {"accept", m.accept_state},
              {"k", m.time_exponent},
              {"delta", std::move(delta)}};
}

}  // namespace logcount::json_io
