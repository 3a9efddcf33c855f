#include "smallcut/generators.hpp"
#include "smallcut/oracle.hpp"
#include "smallcut/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

using namespace smallcut;

namespace {

enum Exit { kOk = 0, kInput = 2, kBandwidth = 3, kTimeout = 4, kVerifyFail = 5 };

struct Source {
  std::string graph_path;
  std::string family;
  int n = 0;
  uint64_t seed = 1;
  double edge_prob = 0.35;
  int min_lambda = 0;

  Graph load() const {
    if (!graph_path.empty()) return load_edge_list(graph_path);
    if (family.empty()) throw InputError("give --graph FILE or --family F --n N");
    GenParams p;
    p.n = n;
    p.seed = seed;
    p.edge_prob = edge_prob;
    p.min_lambda = min_lambda;
    return generate(parse_family(family), p);
  }
};

struct RunOpts {
  std::string root = "0";
  int max_size = 3;
  bool strict = false;
  bool verbose = false;
  long round_limit = SimulatorConfig{}.round_limit;
  int max_slot_rounds = 0;
  std::string report;

  PipelineConfig config(const Graph& g) const {
    PipelineConfig c;
    c.max_size = max_size;
    c.verbose = verbose;
    c.sim.strict_bandwidth = strict;
    c.sim.round_limit = round_limit;
    c.sim.max_slot_rounds = max_slot_rounds;
    if (root == "auto") {
      c.auto_root = true;
    } else {
      size_t used = 0;
      long r = -1;
      try {
        r = std::stol(root, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != root.size() || r < 0 || r >= g.n())
        throw InputError("--root must be auto or a vertex id below " + std::to_string(g.n()));
      c.root = static_cast<Vertex>(r);
    }
    return c;
  }
};

void add_source(CLI::App* cmd, Source& s, bool family_allowed) {
  auto* gopt = cmd->add_option("--graph", s.graph_path, "edge-list file")->check(CLI::ExistingFile);
  if (!family_allowed) {
    gopt->required();
    return;
  }
  auto* fam = cmd->add_option("--family", s.family, "generated family")->excludes(gopt);
  cmd->add_option("--n", s.n, "vertex count for --family")->needs(fam);
  cmd->add_option("--seed", s.seed, "generator seed")->needs(fam);
  cmd->add_option("--edge-prob", s.edge_prob, "random_connected edge probability")->needs(fam);
  cmd->add_option("--min-lambda", s.min_lambda, "random_connected connectivity filter")->needs(fam);
}

void add_run_opts(CLI::App* cmd, RunOpts& o) {
  cmd->add_option("--root", o.root, "root vertex id or auto (centre vertex)");
  cmd->add_option("--max-size", o.max_size, "largest cut size searched")->check(CLI::Range(1, 3));
  cmd->add_flag("--strict-bandwidth", o.strict, "abort on the first over-budget edge-round");
  cmd->add_flag("--verbose", o.verbose, "run every stage and list all induced cuts found");
  cmd->add_option("--round-limit", o.round_limit, "abort once this many rounds elapse")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-slot-rounds", o.max_slot_rounds,
                  "cap rounds per protocol step (overloads edges when too small)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--report", o.report, "write the JSON report here ('-' for stdout)");
}

void write_json(const std::string& path, const Json& j) {
  if (path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << '\n';
}

void print_summary(const Graph& g, const PipelineResult& r) {
  std::cout << "n=" << g.n() << " m=" << g.m() << " root=" << r.root << " depth=" << r.depth
            << "\nlambda=" << r.lambda << " cuts=" << r.report.size() << '\n';
  for (const auto& e : r.report.sorted())
    std::cout << "  " << to_string(e.edges) << ' ' << e.label << " @" << e.detected_by << '\n';
  std::cout << "rounds: size<=2 " << r.rounds_small << ", size 3 "
            << (r.size3_ran ? std::to_string(r.rounds_size3) : std::string("skipped"))
            << ", total " << r.stats.rounds_elapsed << "\npeak bits/edge/round "
            << r.stats.max_bits_per_edge_per_round << ", violations "
            << r.stats.bandwidth_violations << '\n';
}

int cmd_run(const Source& src, const RunOpts& o) {
  Graph g = src.load();
  PipelineConfig cfg = o.config(g);
  PipelineResult r = run_full_pipeline(g, cfg);
  if (o.report != "-") print_summary(g, r);
  if (!o.report.empty()) write_json(o.report, pipeline_json(g, cfg, r));
  return kOk;
}

int cmd_verify(const Source& src, const RunOpts& o) {
  Graph g = src.load();
  if (g.n() > oracle_limit())
    throw CapacityError("n=" + std::to_string(g.n()) + " exceeds the oracle limit " +
                        std::to_string(oracle_limit()) + " (MINCUT_ORACLE_LIMIT)");
  PipelineConfig cfg = o.config(g);
  PipelineResult r = run_full_pipeline(g, cfg);
  Verdict v = verify_against_oracle(g, cfg.max_size, r);
  std::cout << (v.pass ? "PASS" : "FAIL") << " lambda=" << r.lambda
            << " oracle=" << v.oracle_lambda << " cuts=" << r.report.size() << '\n';
  if (r.lambda != v.expected_lambda)
    std::cout << "  lambda: reported " << r.lambda << ", expected " << v.expected_lambda << '\n';
  for (const auto& k : v.missing) std::cout << "- " << to_string(k) << '\n';
  for (const auto& k : v.extra) std::cout << "+ " << to_string(k) << '\n';
  if (!o.report.empty()) write_json(o.report, pipeline_json(g, cfg, r, &v));
  return v.pass ? kOk : kVerifyFail;
}

struct BenchOpts {
  std::string family;
  std::vector<int> sizes;
  int trials = 1;
  uint64_t seed = 1;
  std::string out;
};

// Sums phase rounds by the label prefix before ':' ("layered:eta" -> "layered").
std::map<std::string, long> phase_groups(const RoundStats& s) {
  std::map<std::string, long> m;
  for (const auto& p : s.phases) m[p.label.substr(0, p.label.find(':'))] += p.rounds;
  return m;
}

int cmd_bench(const BenchOpts& b, RunOpts o) {
  Family fam = parse_family(b.family);
  o.verbose = true;  // every stage runs, so all columns are filled
  Json rows = Json::array();
  // the table goes to stderr when stdout carries the JSON
  std::ostream& tab = b.out == "-" ? std::cerr : std::cout;
  tab << std::left << std::setw(6) << "n" << std::setw(7) << "trial" << std::setw(7) << "m"
            << std::setw(5) << "D" << std::setw(7) << "depth" << std::setw(8) << "lambda"
            << std::setw(10) << "r_size12" << std::setw(10) << "r_size3" << std::setw(10)
            << "bits_peak" << std::setw(9) << "r12/D" << "r3/D^2\n";
  for (int n : b.sizes)
    for (int t = 0; t < b.trials; ++t) {
      GenParams p;
      p.n = n;
      p.seed = b.seed + static_cast<uint64_t>(t);
      Graph g = generate(fam, p);
      PipelineConfig cfg = o.config(g);
      PipelineResult r = run_full_pipeline(g, cfg);
      int d = measure_diameter(g);
      double per_d = d ? static_cast<double>(r.rounds_small) / d : 0.0;
      double per_d2 = d ? static_cast<double>(r.rounds_size3) / (static_cast<double>(d) * d) : 0.0;
      std::ostringstream line;
      line << std::left << std::setw(6) << n << std::setw(7) << t << std::setw(7) << g.m()
           << std::setw(5) << d << std::setw(7) << r.depth << std::setw(8) << r.lambda
           << std::setw(10) << r.rounds_small << std::setw(10) << r.rounds_size3 << std::setw(10)
           << r.stats.max_bits_per_edge_per_round << std::fixed << std::setprecision(2)
           << std::setw(9) << per_d << per_d2;
      tab << line.str() << std::endl;
      Json phases;
      for (const auto& [k, v] : phase_groups(r.stats)) phases[k] = v;
      rows.push_back(Json{{"family", family_name(fam)},
                          {"n", n},
                          {"trial", t},
                          {"seed", p.seed},
                          {"m", g.m()},
                          {"diameter", d},
                          {"depth", r.depth},
                          {"root", r.root},
                          {"lambda", r.lambda},
                          {"rounds_size_1_2", r.rounds_small},
                          {"rounds_size_3", r.rounds_size3},
                          {"rounds_total", r.stats.rounds_elapsed},
                          {"bits_peak", r.stats.max_bits_per_edge_per_round},
                          {"budget_bits", 2 * word_bits_for(g.n())},
                          {"bandwidth_violations", r.stats.bandwidth_violations},
                          {"rounds_per_d", per_d},
                          {"rounds_size_3_per_d2", per_d2},
                          {"phase_rounds", phases}});
    }
  if (!b.out.empty()) write_json(b.out, Json{{"family", family_name(fam)}, {"rows", rows}});
  return kOk;
}

int cmd_gen(const Source& src, const std::string& out) {
  Graph g = src.load();
  if (out.empty() || out == "-") {
    write_edge_list(std::cout, g);
    return kOk;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  write_edge_list(f, g);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed small min-cut detection on a simulated synchronous network"};
  app.require_subcommand(1);

  Source run_src, verify_src, gen_src;
  RunOpts run_opts, verify_opts, bench_opts;
  BenchOpts bench;
  std::string gen_out;

  auto* run = app.add_subcommand("run", "run the detection pipeline");
  add_source(run, run_src, true);
  add_run_opts(run, run_opts);

  auto* verify = app.add_subcommand("verify", "run the pipeline and compare with the brute-force oracle");
  add_source(verify, verify_src, true);
  add_run_opts(verify, verify_opts);

  auto* bm = app.add_subcommand("bench", "round and bandwidth sweep over a family");
  bm->add_option("--family", bench.family, "graph family")->required();
  bm->add_option("--sizes", bench.sizes, "vertex counts, comma separated")
      ->required()
      ->delimiter(',');
  bm->add_option("--trials", bench.trials, "runs per size (seeds seed..seed+trials-1)")
      ->check(CLI::PositiveNumber);
  bm->add_option("--seed", bench.seed, "first seed");
  bm->add_option("--out", bench.out, "write the JSON table here ('-' for stdout)");
  bm->add_option("--root", bench_opts.root, "root vertex id or auto");
  bm->add_flag("--strict-bandwidth", bench_opts.strict, "abort on the first over-budget edge-round");

  auto* gen = app.add_subcommand("gen", "write a generated graph as an edge list");
  gen->add_option("--family", gen_src.family, "graph family: " + [] {
    std::string s;
    for (const auto& f : family_names()) s += (s.empty() ? "" : "|") + f;
    return s;
  }())->required();
  gen->add_option("--n", gen_src.n, "vertex count")->required();
  gen->add_option("--seed", gen_src.seed, "generator seed");
  gen->add_option("--edge-prob", gen_src.edge_prob, "random_connected edge probability");
  gen->add_option("--min-lambda", gen_src.min_lambda, "random_connected connectivity filter");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*run) return cmd_run(run_src, run_opts);
    if (*verify) return cmd_verify(verify_src, verify_opts);
    if (*bm) return cmd_bench(bench, bench_opts);
    if (*gen) return cmd_gen(gen_src, gen_out);
  } catch (const BandwidthError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBandwidth;
  } catch (const TimeoutError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kTimeout;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const GenerationError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const CapacityError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}
