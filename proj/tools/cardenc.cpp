// cardenc: command-line front end for the cardinality-encoding library.
//
// Subcommands:
//   encode       n, r, method, variant -> DIMACS
//   testcase     grid-covering instance -> DIMACS
//   enumerate    exact model counting (projected or total)
//   solve        embedded CDCL or an external solver; exit 10/20
//   bench        run a benchmark config file
//   stats        DIMACS -> encoding statistics
//   sweep-counts clause/variable-count comparison over n, r ranges

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cardenc/bench.hpp"
#include "cardenc/cnf.hpp"
#include "cardenc/dimacs.hpp"
#include "cardenc/encode.hpp"
#include "cardenc/external.hpp"
#include "cardenc/geometry.hpp"
#include "cardenc/solve.hpp"

namespace {

using namespace cardenc;

constexpr const char* kSolverEnv = "CARDENC_SOLVER";

void emit(const Formula& f, const std::string& output) {
  if (output.empty() || output == "-") {
    write_dimacs(f, std::cout);
  } else {
    std::ofstream os(output);
    if (!os) throw std::runtime_error("cannot open " + output);
    write_dimacs(f, os);
  }
}

Formula load_formula(const std::string& input) {
  if (input.empty() || input == "-") return read_dimacs(std::cin);
  std::ifstream is(input);
  if (!is) throw std::runtime_error("cannot open " + input);
  return read_dimacs(is);
}

std::string status_line(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "s SATISFIABLE";
    case SolveStatus::Unsat: return "s UNSATISFIABLE";
    default: return "s UNKNOWN";
  }
}

void print_model(const std::vector<bool>& model) {
  std::ostringstream line;
  line << "v";
  for (std::size_t v = 1; v < model.size(); ++v) {
    line << ' ' << (model[v] ? static_cast<long>(v) : -static_cast<long>(v));
    if (line.str().size() > 72) {
      std::cout << line.str() << "\n";
      line.str("");
      line << "v";
    }
  }
  line << " 0";
  std::cout << line.str() << "\n";
}

int exit_code_for(SolveStatus s) {
  if (s == SolveStatus::Sat) return 10;
  if (s == SolveStatus::Unsat) return 20;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CNF encodings of cardinality constraints: generation, "
               "verification, and benchmarking"};
  app.require_subcommand(1);

  // ---- encode ----
  auto* enc = app.add_subcommand("encode", "Encode sum(x_1..x_n) <= r (or = r)");
  int enc_n = 0, enc_r = 0;
  std::string enc_method = "seq", enc_variant = "unstrengthened", enc_out;
  enc->add_option("-n,--num-vars", enc_n, "number of main variables")->required();
  enc->add_option("-r,--bound", enc_r, "cardinality bound")->required();
  enc->add_option("-m,--method", enc_method, "seq | tree | sort");
  enc->add_option("-v,--variant", enc_variant, "encoding variant");
  enc->add_option("-o,--output", enc_out, "output file (default stdout)");

  // ---- testcase ----
  auto* tc = app.add_subcommand("testcase", "Generate a grid-covering instance");
  std::string tc_seq = "A227116", tc_pol = "sat", tc_ord = "row";
  std::string tc_method = "seq", tc_variant = "unstrengthened", tc_out;
  int tc_L = 4;
  unsigned tc_seed = 1;
  tc->add_option("-s,--sequence", tc_seq,
                 "A152125 | A240443 | A319158 | A227116 | A319159");
  tc->add_option("-L,--side", tc_L, "grid side length")->required();
  tc->add_option("-p,--polarity", tc_pol, "sat (r=a(L)) | unsat (r=a(L)-1)");
  tc->add_option("--ordering", tc_ord, "row | spiral | random");
  tc->add_option("--seed", tc_seed, "shuffle seed for random ordering");
  tc->add_option("-m,--method", tc_method, "seq | tree | sort");
  tc->add_option("-v,--variant", tc_variant, "encoding variant");
  tc->add_option("-o,--output", tc_out, "output file (default stdout)");

  // ---- enumerate ----
  auto* en = app.add_subcommand("enumerate", "Count models exactly");
  std::string en_in, en_proj = "all";
  unsigned long long en_cap = 2'000'000;
  std::size_t en_show = 0;
  en->add_option("-i,--input", en_in, "DIMACS file (default stdin)");
  en->add_option("--projection", en_proj, "all | mains");
  en->add_option("--cap", en_cap, "stop after this many models");
  en->add_option("--show", en_show, "print up to this many models");

  // ---- solve ----
  auto* so = app.add_subcommand("solve", "Solve one instance");
  std::string so_in, so_external;
  unsigned so_seed = 1;
  double so_timeout = 0.0;
  bool so_model = false;
  so->add_option("-i,--input", so_in, "DIMACS file (default stdin)");
  so->add_option("--seed", so_seed, "branching / solver seed");
  so->add_option("--timeout", so_timeout, "seconds (0 = none)");
  so->add_option("--external", so_external,
                 "external solver command with {file} and optional {seed}");
  so->add_flag("--model", so_model, "print v-lines for SAT");

  // ---- bench ----
  auto* be = app.add_subcommand("bench", "Run a benchmark configuration");
  std::string be_config;
  be->add_option("config", be_config, "key = value config file")->required();

  // ---- stats ----
  auto* st = app.add_subcommand("stats", "Report encoding statistics");
  std::string st_in;
  st->add_option("-i,--input", st_in, "DIMACS file (default stdin)");

  // ---- sweep-counts ----
  auto* sw = app.add_subcommand(
      "sweep-counts", "Compare clause/variable counts across methods");
  int sw_max_n = 50;
  sw->add_option("--max-n", sw_max_n, "sweep 1 <= r < n <= max-n");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enc) {
      const EncodingChoice choice = EncodingChoice::parse(enc_method, enc_variant);
      Formula f(enc_n);
      f.add_comment("mains " + std::to_string(enc_n));
      f.add_comment("r " + std::to_string(enc_r));
      f.add_comment("encoding " + method_name(choice.method));
      f.add_comment("variant " + choice.variant_name());
      encode_cardinality(f, f.main_vars(), enc_r, choice);
      emit(f, enc_out);
      return 0;
    }

    if (*tc) {
      TestCaseSpec spec;
      spec.sequence = parse_sequence(tc_seq);
      spec.L = tc_L;
      if (tc_pol == "sat") spec.sat_polarity = true;
      else if (tc_pol == "unsat") spec.sat_polarity = false;
      else throw std::runtime_error("polarity must be sat or unsat");
      spec.ordering = parse_ordering(tc_ord);
      spec.seed = tc_seed;
      const EncodingChoice choice = EncodingChoice::parse(tc_method, tc_variant);
      emit(build_instance(spec, choice), tc_out);
      return 0;
    }

    if (*en) {
      const Formula f = load_formula(en_in);
      const Projection proj =
          en_proj == "mains" ? Projection::MainsOnly : Projection::AllVars;
      if (en_proj != "mains" && en_proj != "all")
        throw std::runtime_error("projection must be all or mains");
      const EnumerateResult res = enumerate_models(f, proj, en_cap, en_show);
      std::cout << "c projection " << en_proj << "\n";
      std::cout << (res.exact ? "c exact\n" : "c lower-bound (cap reached)\n");
      std::cout << "s " << res.count << "\n";
      for (const auto& m : res.models) print_model(m);
      return 0;
    }

    if (*so) {
      const Formula f = load_formula(so_in);
      if (so_external.empty()) {
        if (const char* env = std::getenv(kSolverEnv)) so_external = env;
      }
      SolveStatus status;
      std::vector<bool> model;
      if (so_external.empty()) {
        const SolveResult r = solve(f, so_seed, so_timeout);
        status = r.status;
        if (r.model) model = *r.model;
        std::cerr << "c decisions " << r.decisions << " conflicts "
                  << r.conflicts << " time " << r.wall_time << "\n";
      } else {
        SolverCommand sc;
        sc.command = so_external;
        sc.timeout_s = so_timeout;
        const ExternalResult r = run_external(f, sc, so_seed);
        status = r.status;
        model = r.model;
        std::cerr << "c time " << r.wall_time << "\n";
      }
      std::cout << status_line(status) << "\n";
      if (status == SolveStatus::Sat && so_model) print_model(model);
      return exit_code_for(status);
    }

    if (*be) {
      std::ifstream cf(be_config);
      if (!cf) throw std::runtime_error("cannot open " + be_config);
      BenchConfig cfg = parse_bench_config(cf);
      if (cfg.solver.empty()) {
        if (const char* env = std::getenv(kSolverEnv)) cfg.solver = env;
      }
      const std::vector<RunRecord> records = run_suite(cfg);
      const std::vector<Summary> summaries = summarize(records, cfg.metric);
      write_csv(std::cout, summaries, cfg.metric);
      if (!cfg.csv_path.empty()) {
        std::ofstream os(cfg.csv_path);
        write_csv(os, summaries, cfg.metric);
      }
      if (!cfg.svg_path.empty()) {
        std::ofstream os(cfg.svg_path);
        write_svg(os, summaries, cfg.metric);
      }
      return 0;
    }

    if (*st) {
      const Formula f = load_formula(st_in);
      const EncodingStats s = f.stats();
      std::cout << "mains " << f.num_main() << "\n"
                << "vars " << f.num_vars() << "\n"
                << "aux-vars " << s.aux_vars << "\n"
                << "clauses " << s.clauses << "\n"
                << "literals " << s.literals << "\n"
                << "main-var-literals " << s.main_var_literals << "\n";
      return 0;
    }

    if (*sw) {
      std::cout << "n,r,seq_clauses,tree_clauses,sort_clauses,"
                   "tree_aux,tree_aux_bound\n";
      for (int n = 2; n <= sw_max_n; ++n) {
        for (int r = 1; r < n; ++r) {
          EncodingStats per[3];
          const char* methods[3] = {"seq", "tree", "sort"};
          const char* variants[3] = {"unstrengthened", "unstrengthened",
                                     "partial-oneway"};
          for (int m = 0; m < 3; ++m) {
            Formula f(n);
            f.set_counting_only(true);
            encode_cardinality(f, f.main_vars(), r,
                               EncodingChoice::parse(methods[m], variants[m]));
            per[m] = f.stats();
          }
          std::cout << n << ',' << r << ',' << per[0].clauses << ','
                    << per[1].clauses << ',' << per[2].clauses << ','
                    << per[1].aux_vars << ','
                    << static_cast<long long>(r) * (n - 2) << "\n";
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
