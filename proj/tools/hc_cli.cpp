// Command line front end; talks to the library through the C API only.
// Exit codes: 0 success, 1 domain failure (invalid proof), 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hc.h"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CLI::ValidationError("cannot open output file: " + path);
  out << text;
}

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { hc_string_free(s); }
};

int fail_usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Horizontal compression of natural deduction proofs"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a proof family instance");
  gen->require_subcommand(1);
  int fib_n = 5;
  std::string gen_out;
  auto* gen_fib = gen->add_subcommand("fib", "Fibonacci family");
  gen_fib->add_option("--n", fib_n, "family parameter (>= 3)")->required();
  gen_fib->add_option("-o,--output", gen_out, "output proof json")->required();
  std::string graph_file;
  auto* gen_nonham =
      gen->add_subcommand("nonham", "non-hamiltonicity proof for a digraph");
  gen_nonham->add_option("--graph", graph_file, "digraph json file")
      ->required();
  gen_nonham->add_option("-o,--output", gen_out, "output proof json")
      ->required();

  // compress
  std::string in_file, out_file, trace_file;
  bool mue_only = false;
  auto* cmp = app.add_subcommand("compress", "compress a proof into a DLDS");
  cmp->add_option("-i,--input", in_file, "proof json")->required();
  cmp->add_option("-o,--output", out_file, "output DLDS json")->required();
  cmp->add_option("--trace", trace_file, "rule application trace (jsonl)");
  cmp->add_flag("--mue-only", mue_only, "stop after the MUE pass");

  // verify
  std::string delta;
  auto* ver = app.add_subcommand("verify", "verify a DLDS derivation");
  ver->add_option("-i,--input", in_file, "DLDS json")->required();
  ver->add_option("--delta", delta, "comma separated assumption formulas")
      ->required();

  // stats
  auto* stats = app.add_subcommand("stats", "size metric and bound check");
  stats->add_option("-i,--input", in_file, "proof or DLDS json")->required();

  // export-dot
  auto* dot = app.add_subcommand("export-dot", "render a DLDS as DOT");
  dot->add_option("-i,--input", in_file, "proof or DLDS json")->required();
  dot->add_option("-o,--output", out_file, "output dot file")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "compression benchmark table");
  std::string family;
  int from = 5, to = 12;
  bench->add_option("family", family, "fib or nonham")->required();
  bench->add_option("--from", from, "first parameter")->required();
  bench->add_option("--to", to, "last parameter")->required();
  bench->add_option("-o,--output", out_file, "output csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      hc_proof* proof = nullptr;
      if (gen_fib->parsed()) {
        proof = hc_gen_fibonacci(fib_n);
      } else {
        proof = hc_gen_nonhamiltonian(read_file(graph_file).c_str());
      }
      if (!proof) return fail_usage(hc_last_error());
      StringGuard json{hc_proof_to_json(proof)};
      hc_proof_free(proof);
      if (!json.s) return fail_usage(hc_last_error());
      write_file(gen_out, json.s);
      return 0;
    }

    if (cmp->parsed()) {
      hc_proof* proof = hc_proof_from_json(read_file(in_file).c_str());
      if (!proof) return fail_usage(hc_last_error());
      StringGuard report;
      if (hc_proof_validate(proof, &report.s) != HC_OK) {
        std::cerr << "invalid proof: " << (report.s ? report.s : "") << "\n";
        hc_proof_free(proof);
        return 1;
      }
      StringGuard trace;
      hc_dlds* dlds = hc_proof_compress(proof, mue_only ? 1 : 0,
                                        trace_file.empty() ? nullptr : &trace.s);
      hc_proof_free(proof);
      if (!dlds) return fail_usage(hc_last_error());
      StringGuard json{hc_dlds_to_json(dlds)};
      hc_dlds_free(dlds);
      if (!json.s) return fail_usage(hc_last_error());
      write_file(out_file, json.s);
      if (!trace_file.empty()) write_file(trace_file, trace.s ? trace.s : "");
      return 0;
    }

    if (ver->parsed()) {
      hc_dlds* dlds = hc_dlds_from_json(read_file(in_file).c_str());
      if (!dlds) return fail_usage(hc_last_error());
      int valid = 0;
      StringGuard diags;
      int rc = hc_dlds_verify(dlds, delta.c_str(), &valid, &diags.s);
      hc_dlds_free(dlds);
      if (rc != HC_OK) return fail_usage(hc_last_error());
      if (valid) {
        std::cout << "valid\n";
        return 0;
      }
      std::cout << (diags.s ? diags.s : "[]") << "\n";
      return 1;
    }

    if (stats->parsed() || dot->parsed()) {
      std::string text = read_file(in_file);
      hc_dlds* dlds = hc_dlds_from_json(text.c_str());
      if (!dlds) {
        // maybe a proof file: decorate it first
        hc_proof* proof = hc_proof_from_json(text.c_str());
        if (!proof) return fail_usage(hc_last_error());
        dlds = hc_proof_to_dlds(proof);
        hc_proof_free(proof);
        if (!dlds) return fail_usage(hc_last_error());
      }
      StringGuard out{stats->parsed() ? hc_dlds_stats_json(dlds)
                                      : hc_dlds_to_dot(dlds)};
      hc_dlds_free(dlds);
      if (!out.s) return fail_usage(hc_last_error());
      if (stats->parsed())
        std::cout << out.s << "\n";
      else
        write_file(out_file, out.s);
      return 0;
    }

    if (bench->parsed()) {
      if (family != "fib" && family != "nonham")
        return fail_usage("family must be fib or nonham");
      StringGuard csv{hc_bench_csv(family.c_str(), from, to)};
      if (!csv.s) return fail_usage(hc_last_error());
      write_file(out_file, csv.s);
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    return fail_usage(e.what());
  } catch (const std::exception& e) {
    return fail_usage(e.what());
  }
  return 2;
}
