// Command-line front end: every library operation is reachable from one of
// the subcommands encode, int, matpow, machine, stcon, reduce, verify.
// Exit status: 0 success/verified, 1 verification mismatch, 2 bad input.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logcount/budget.hpp"
#include "logcount/counting.hpp"
#include "logcount/encoding.hpp"
#include "logcount/intcode.hpp"
#include "logcount/json_io.hpp"
#include "logcount/matpow.hpp"
#include "logcount/nlmachine.hpp"
#include "logcount/verify.hpp"

namespace {

using namespace logcount;
using json_io::json;

std::string signed_str(const Int& v) {
  return v > 0 ? "+" + v.get_str() : v.get_str();
}

// An integer argument is a bit literal when it consists of 0s and 1s only
// (the empty literal encodes zero); anything with a sign or another digit
// parses as decimal. --dec forces decimal for ambiguous strings like "10".
intcode::IntString parse_int_arg(const std::string& s, bool force_decimal) {
  bool bits_only = !force_decimal;
  for (char c : s)
    if (c != '0' && c != '1') bits_only = false;
  if (bits_only) return intcode::IntString{BitString::from_text(s)};
  Int v;
  if (v.set_str(s.empty() ? "0" : s, 10) != 0)
    throw BadInput("not a bit literal or decimal integer: " + s);
  return intcode::encode_int(v);
}

Nat parse_nat_arg(const std::string& s) {
  Nat v;
  if (s.empty() || v.set_str(s, 10) != 0 || v < 0)
    throw BadInput("not a natural number: " + s);
  return v;
}

void print_int(const intcode::IntString& v) {
  std::cout << v.raw.to_text() << "\n" << signed_str(intcode::decode_int(v)) << "\n";
}

counting::Via parse_via(const std::string& s) {
  if (s == "dfs") return counting::Via::dfs;
  if (s == "matpow") return counting::Via::matpow;
  if (s == "both") return counting::Via::both;
  throw BadInput("--via must be dfs, matpow or both");
}

int run(int argc, char** argv) {
  CLI::App app{"logcount: bit-string encodings, exact path counting and "
               "matrix powering with checkable witnesses"};
  app.require_subcommand(1);

  // ----- encode ---------------------------------------------------------
  CLI::App* enc = app.add_subcommand("encode", "pairing and string readouts");
  enc->require_subcommand(1);

  std::vector<std::string> pair_args;
  CLI::App* enc_pair = enc->add_subcommand("pair", "chained pairing of numbers");
  enc_pair->add_option("values", pair_args, "two or more naturals")->expected(-2);
  enc_pair->callback([&] {
    if (pair_args.size() < 2) throw BadInput("pair needs at least two values");
    Nat acc = encoding::pair(parse_nat_arg(pair_args[0]), parse_nat_arg(pair_args[1]));
    for (std::size_t i = 2; i < pair_args.size(); ++i)
      acc = encoding::pair(acc, parse_nat_arg(pair_args[i]));
    std::cout << acc.get_str() << "\n";
  });

  std::string unpair_arg;
  CLI::App* enc_unpair = enc->add_subcommand("unpair", "projections of a number");
  enc_unpair->add_option("value", unpair_arg)->required();
  enc_unpair->callback([&] {
    Nat z = parse_nat_arg(unpair_arg);
    std::cout << "is_pair " << (encoding::is_pair(z) ? "true" : "false") << "\n"
              << "left " << encoding::left(z).get_str() << "\n"
              << "right " << encoding::right(z).get_str() << "\n";
  });

  std::string row_x, row_y, row_bits;
  CLI::App* enc_row = enc->add_subcommand("row", "extract row x of a list");
  enc_row->add_option("x", row_x)->required();
  enc_row->add_option("bits", row_bits)->required();
  enc_row->callback([&] {
    std::cout << encoding::row(parse_nat_arg(row_x), BitString::from_text(row_bits)).to_text()
              << "\n";
  });

  CLI::App* enc_row2 = enc->add_subcommand("row2", "extract cell (x,y) of a grid");
  enc_row2->add_option("x", row_x)->required();
  enc_row2->add_option("y", row_y)->required();
  enc_row2->add_option("bits", row_bits)->required();
  enc_row2->callback([&] {
    std::cout << encoding::row2(parse_nat_arg(row_x), parse_nat_arg(row_y),
                                BitString::from_text(row_bits))
                     .to_text()
              << "\n";
  });

  CLI::App* enc_seq = enc->add_subcommand("seq", "read number i of a list");
  enc_seq->add_option("i", row_x)->required();
  enc_seq->add_option("bits", row_bits)->required();
  enc_seq->callback([&] {
    std::cout << encoding::seq(parse_nat_arg(row_x), BitString::from_text(row_bits)).get_str()
              << "\n";
  });

  CLI::App* enc_entry = enc->add_subcommand("entry", "read entry (i,j) of a number matrix");
  enc_entry->add_option("i", row_x)->required();
  enc_entry->add_option("j", row_y)->required();
  enc_entry->add_option("bits", row_bits)->required();
  enc_entry->callback([&] {
    std::cout << encoding::entry(parse_nat_arg(row_x), parse_nat_arg(row_y),
                                 BitString::from_text(row_bits))
                     .get_str()
              << "\n";
  });

  CLI::App* enc_build = enc->add_subcommand("build", "inverse encoders");
  enc_build->require_subcommand(1);
  std::vector<std::string> build_items;
  std::string build_json;

  CLI::App* b_list = enc_build->add_subcommand("list", "encode a list of bit literals");
  b_list->add_option("items", build_items, "bit literals")->expected(-1);
  b_list->callback([&] {
    std::vector<BitString> items;
    for (const std::string& s : build_items) items.push_back(BitString::from_text(s));
    std::cout << encoding::build_list(items).to_text() << "\n";
  });

  CLI::App* b_nums = enc_build->add_subcommand("numlist", "encode a list of naturals");
  b_nums->add_option("nums", build_items)->expected(-1);
  b_nums->callback([&] {
    std::vector<Nat> nums;
    for (const std::string& s : build_items) nums.push_back(parse_nat_arg(s));
    std::cout << encoding::build_numlist(nums).to_text() << "\n";
  });

  CLI::App* b_grid = enc_build->add_subcommand("grid", "encode a JSON grid of bit literals");
  b_grid->add_option("json", build_json)->required();
  b_grid->callback([&] {
    json j = json::parse(build_json, nullptr, false);
    if (j.is_discarded() || !j.is_array()) throw BadInput("grid must be a JSON array of arrays");
    std::vector<std::vector<BitString>> grid;
    for (const json& row : j) {
      std::vector<BitString> r;
      for (const json& cell : row) r.push_back(BitString::from_text(cell.get<std::string>()));
      grid.push_back(std::move(r));
    }
    std::cout << encoding::build_grid(grid).to_text() << "\n";
  });

  CLI::App* b_mat = enc_build->add_subcommand("natmatrix", "encode a JSON matrix of naturals");
  b_mat->add_option("json", build_json)->required();
  b_mat->callback([&] {
    json j = json::parse(build_json, nullptr, false);
    if (j.is_discarded() || !j.is_array()) throw BadInput("natmatrix must be a JSON array of arrays");
    std::vector<std::vector<Nat>> m;
    for (const json& row : j) {
      std::vector<Nat> r;
      for (const json& cell : row) r.push_back(json_io::nat_from_json(cell, "entry"));
      m.push_back(std::move(r));
    }
    std::cout << encoding::build_natmatrix(m).to_text() << "\n";
  });

  // ----- int ------------------------------------------------------------
  CLI::App* integer = app.add_subcommand("int", "encoded integer arithmetic");
  integer->require_subcommand(1);
  std::vector<std::string> int_args;
  bool int_dec = false;

  CLI::App* int_add = integer->add_subcommand("add", "add two encoded integers");
  int_add->add_flag("--dec", int_dec, "parse arguments as decimal");
  int_add->add_option("values", int_args)->expected(2);
  int_add->callback([&] {
    print_int(intcode::add_z(parse_int_arg(int_args[0], int_dec),
                             parse_int_arg(int_args[1], int_dec)));
  });

  CLI::App* int_mul = integer->add_subcommand("mul", "multiply two encoded integers");
  int_mul->add_flag("--dec", int_dec, "parse arguments as decimal");
  int_mul->add_option("values", int_args)->expected(2);
  int_mul->callback([&] {
    print_int(intcode::mul_z(parse_int_arg(int_args[0], int_dec),
                             parse_int_arg(int_args[1], int_dec)));
  });

  CLI::App* int_sum = integer->add_subcommand("sum", "sum a list of encoded integers");
  int_sum->add_flag("--dec", int_dec, "parse arguments as decimal");
  int_sum->add_option("values", int_args)->expected(-1);
  int_sum->callback([&] {
    std::vector<BitString> rows;
    Nat m = 0;
    for (const std::string& s : int_args) {
      intcode::IntString v = parse_int_arg(s, int_dec);
      if (v.raw.length() > m) m = v.raw.length();
      rows.push_back(v.raw);
    }
    print_int(intcode::sum_z(rows.size(), m, encoding::build_list(rows)));
  });

  // ----- matpow ---------------------------------------------------------
  CLI::App* mp = app.add_subcommand("matpow", "matrix powering with witnesses");
  std::string mp_ring, mp_in, mp_witness;
  std::uint64_t mp_k = 0;
  std::optional<std::uint64_t> mp_n, mp_i, mp_j;
  bool mp_check = false;
  mp->add_option("--ring", mp_ring, "z2 or z")->required();
  mp->add_option("--n", mp_n, "dimension (defaults to the file's)");
  mp->add_option("--k", mp_k, "power")->required();
  mp->add_option("--in", mp_in, "matrix JSON file")->required();
  mp->add_option("--i", mp_i, "print a single entry: row");
  mp->add_option("--j", mp_j, "print a single entry: column");
  mp->add_option("--witness", mp_witness, "witness JSON file to write, or to check");
  mp->add_flag("--check", mp_check, "validate the witness file instead of writing it");
  mp->callback([&] {
    json j = json_io::load_json_file(mp_in);
    std::string file_ring = json_io::matrix_ring(j);
    if (mp_ring != "z2" && mp_ring != "z") throw BadInput("--ring must be z2 or z");
    if (file_ring != mp_ring) throw BadInput("--ring disagrees with the matrix file");
    if (mp_check && mp_witness.empty())
      throw BadInput("--check needs --witness FILE");
    if (mp_ring == "z2") {
      matpow::BoolMatrix x = json_io::bool_matrix_from_json(j);
      if (mp_n && *mp_n != x.n) throw BadInput("--n disagrees with the matrix file");
      std::uint64_t n = x.n;
      if (mp_check) {
        json_io::WitnessFile w = json_io::witness_from_json(json_io::load_json_file(mp_witness));
        bool ok = matpow::check_delta_powseq2(n, mp_k, x, w.y);
        if (ok && w.z) ok = matpow::check_explicit_witness2(n, mp_k, x, w.y, *w.z);
        std::cout << (ok ? "witness ok" : "witness rejected") << "\n";
        if (!ok) throw MismatchError("witness rejected");
        return;
      }
      if (mp_i || mp_j) {
        if (!mp_i || !mp_j) throw BadInput("--i and --j go together");
        std::cout << (matpow::decide_pow2_entry(n, mp_k, *mp_i, *mp_j, x) ? 1 : 0)
                  << "\n";
        return;
      }
      matpow::BoolMatrix powered = matpow::pow2(n, mp_k, x);
      std::vector<std::vector<Int>> out;
      for (const auto& row : matpow::decode_bool_matrix(powered)) {
        std::vector<Int> r(row.begin(), row.end());
        out.push_back(std::move(r));
      }
      std::cout << json_io::entries_to_json(out).dump() << "\n";
      if (!mp_witness.empty()) {
        matpow::ExplicitWitness2 w = matpow::explicit_witness2(n, mp_k, x);
        json_io::save_json_file(
            mp_witness, json_io::witness_to_json({w.powers.raw, w.witness}));
      }
    } else {
      matpow::IntMatrix x = json_io::int_matrix_from_json(j);
      if (mp_n && *mp_n != x.n) throw BadInput("--n disagrees with the matrix file");
      std::uint64_t n = x.n;
      if (mp_check) {
        json_io::WitnessFile w = json_io::witness_from_json(json_io::load_json_file(mp_witness));
        bool ok = matpow::check_delta_powseq_z(n, mp_k, x, w.y);
        std::cout << (ok ? "witness ok" : "witness rejected") << "\n";
        if (!ok) throw MismatchError("witness rejected");
        return;
      }
      matpow::IntMatrix powered = matpow::pow_z(n, mp_k, x);
      if (mp_i || mp_j) {
        if (!mp_i || !mp_j) throw BadInput("--i and --j go together");
        if (*mp_i >= n || *mp_j >= n) throw BadInput("entry index out of range");
        std::cout << signed_str(intcode::decode_int(
                         matpow::int_entry(powered, *mp_i, *mp_j)))
                  << "\n";
        return;
      }
      std::cout << json_io::entries_to_json(matpow::decode_int_matrix(powered)).dump()
                << "\n";
      if (!mp_witness.empty())
        json_io::save_json_file(
            mp_witness,
            json_io::witness_to_json({matpow::powseq_z(n, mp_k, x).raw, std::nullopt}));
    }
  });

  // ----- machine --------------------------------------------------------
  CLI::App* mach = app.add_subcommand("machine", "nondeterministic machine runs");
  mach->require_subcommand(1);
  std::string mach_file, mach_input, mach_out, mach_via = "enum";
  bool mach_decode = false;

  CLI::App* mach_count = mach->add_subcommand("count", "count accepting paths");
  mach_count->add_option("--machine", mach_file)->required();
  mach_count->add_option("--input", mach_input, "input bit literal");
  mach_count->add_option("--via", mach_via, "enum, graph or both");
  mach_count->callback([&] {
    nlmachine::MachineDescription m =
        json_io::machine_from_json(json_io::load_json_file(mach_file));
    BitString input = BitString::from_text(mach_input);
    if (mach_via != "enum" && mach_via != "graph" && mach_via != "both")
      throw BadInput("--via must be enum, graph or both");
    std::optional<Nat> direct, graph;
    if (mach_via != "graph") direct = nlmachine::count_accepting_paths(m, input);
    if (mach_via != "enum") graph = nlmachine::f_via_config_graph(m, input);
    if (direct && graph && *direct != *graph)
      throw MismatchError("direct count " + direct->get_str() +
                          " != configuration-graph count " + graph->get_str());
    std::cout << (direct ? *direct : *graph).get_str() << "\n";
  });

  CLI::App* mach_graph = mach->add_subcommand("graph", "emit the configuration graph");
  mach_graph->add_option("--machine", mach_file)->required();
  mach_graph->add_option("--input", mach_input, "input bit literal");
  mach_graph->add_option("--out", mach_out)->required();
  mach_graph->add_flag("--decode", mach_decode, "attach decoded configurations");
  mach_graph->callback([&] {
    nlmachine::MachineDescription m =
        json_io::machine_from_json(json_io::load_json_file(mach_file));
    BitString input = BitString::from_text(mach_input);
    counting::SimpleGraph g = nlmachine::config_graph(m, input);
    json out = json_io::simple_graph_to_json(g);
    if (mach_decode) {
      json nodes = json::array();
      std::set<Nat> seen;
      for (const auto& [u, v] : g.edges)
        for (const Nat& node : {u, v})
          if (node >= 2 && seen.insert(node).second) {
            nlmachine::Configuration c = nlmachine::decode_config(node - 2);
            nodes.push_back(json{{"id", json_io::nat_to_json(node)},
                                 {"state", json_io::nat_to_json(c.state)},
                                 {"head", json_io::nat_to_json(c.head)},
                                 {"counter", json_io::nat_to_json(c.counter)},
                                 {"workLeft", json_io::nat_to_json(c.work_left)},
                                 {"workRest", json_io::nat_to_json(c.work_rest)}});
          }
      out["nodes"] = std::move(nodes);
    }
    json_io::save_json_file(mach_out, out);
    std::cout << "wrote " << mach_out << "\n";
  });

  // ----- stcon ----------------------------------------------------------
  CLI::App* stcon = app.add_subcommand("stcon", "bounded s-t walk counting");
  std::string st_graph, st_via = "both", st_s = "0", st_t = "1";
  std::uint64_t st_p = 0;
  stcon->add_option("--graph", st_graph)->required();
  stcon->add_option("--p", st_p, "walk length bound")->required();
  stcon->add_option("--s", st_s, "source label (default 0)");
  stcon->add_option("--t", st_t, "target label (default 1)");
  stcon->add_option("--via", st_via, "dfs, matpow or both");
  stcon->callback([&] {
    json j = json_io::load_json_file(st_graph);
    Nat s = parse_nat_arg(st_s);
    Nat t = parse_nat_arg(st_t);
    if (s == t) throw BadInput("s and t must differ");
    counting::PathCount count;
    if (json_io::is_multigraph_json(j)) {
      counting::MultiGraph g = json_io::multigraph_from_json(j);
      count = counting::multigraph_stcon_count(g.n, s, t, st_p, g,
                                               default_budget(), parse_via(st_via));
    } else {
      counting::SimpleGraph g = json_io::simple_graph_from_json(j);
      count = counting::stcon_count(g.n, s, t, st_p, g, parse_via(st_via));
    }
    std::cout << count.value.get_str() << "\n" << count.binary.to_text() << "\n";
  });

  // ----- reduce ---------------------------------------------------------
  CLI::App* reduce = app.add_subcommand("reduce", "graph and matrix reductions");
  reduce->require_subcommand(1);
  std::string rd_graph, rd_out, rd_matrix;
  std::uint64_t rd_p = 0, rd_k = 0;
  std::optional<std::uint64_t> rd_i, rd_j;

  CLI::App* rd_layered = reduce->add_subcommand(
      "layered", "expand a graph into layers so bounded walks get one exact length");
  rd_layered->add_option("--graph", rd_graph)->required();
  rd_layered->add_option("--p", rd_p)->required();
  rd_layered->add_option("--out", rd_out);
  rd_layered->callback([&] {
    counting::SimpleGraph g =
        json_io::simple_graph_from_json(json_io::load_json_file(rd_graph));
    json out = json_io::simple_graph_to_json(counting::layered_graph(rd_p, g));
    if (rd_out.empty())
      std::cout << out.dump() << "\n";
    else {
      json_io::save_json_file(rd_out, out);
      std::cout << "wrote " << rd_out << "\n";
    }
  });

  CLI::App* rd_convert = reduce->add_subcommand(
      "convert", "bisect multigraph edges into a simple graph");
  rd_convert->add_option("--graph", rd_graph)->required();
  rd_convert->add_option("--out", rd_out);
  rd_convert->callback([&] {
    counting::MultiGraph g =
        json_io::multigraph_from_json(json_io::load_json_file(rd_graph));
    json out = json_io::simple_graph_to_json(counting::convert(g));
    if (rd_out.empty())
      std::cout << out.dump() << "\n";
    else {
      json_io::save_json_file(rd_out, out);
      std::cout << "wrote " << rd_out << "\n";
    }
  });

  CLI::App* rd_signed = reduce->add_subcommand(
      "signed", "signed branch counts for one entry of an integer matrix power");
  rd_signed->add_option("--matrix", rd_matrix)->required();
  rd_signed->add_option("--k", rd_k)->required();
  rd_signed->add_option("--i", rd_i)->required();
  rd_signed->add_option("--j", rd_j)->required();
  rd_signed->callback([&] {
    matpow::IntMatrix x =
        json_io::int_matrix_from_json(json_io::load_json_file(rd_matrix));
    counting::SignedCount sc = counting::signed_power_entry(*rd_i, *rd_j, rd_k, x);
    Int expect = intcode::decode_int(
        matpow::int_entry(matpow::pow_z(x.n, rd_k, x), *rd_i, *rd_j));
    std::cout << "pos " << sc.pos.get_str() << "\nneg " << sc.neg.get_str()
              << "\ndiff " << signed_str(Int(sc.pos - sc.neg)) << "\npower "
              << signed_str(expect) << "\n";
    if (Int(sc.pos - sc.neg) != expect)
      throw MismatchError("signed branch difference disagrees with the matrix power");
  });

  // ----- verify ---------------------------------------------------------
  CLI::App* ver = app.add_subcommand("verify", "cross-oracle verification suites");
  ver->require_subcommand(1);
  CLI::App* ver_all = ver->add_subcommand("all", "run every suite");
  std::uint64_t ver_seed = 1;
  std::optional<std::uint64_t> ver_cases;
  ver_all->add_option("--seed", ver_seed, "generator seed (default 1)");
  ver_all->add_option("--cases", ver_cases, "cases per suite (default: full load)");
  ver_all->callback([&] {
    verify::Options opt;
    opt.seed = ver_seed;
    opt.cases = ver_cases;
    std::vector<verify::CriterionResult> results = verify::run_all(opt);
    std::cout << verify::report(results, opt);
    if (!verify::all_passed(results)) throw MismatchError("verification failed");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const logcount::MismatchError& e) {
    std::cerr << "mismatch: " << e.what() << "\n";
    return 1;
  } catch (const logcount::BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const logcount::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
