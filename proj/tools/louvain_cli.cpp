// Command line front end: `detect` clusters a graph and emits a membership
// file plus a flat key=value run report, `bench` repeats runs across thread
// counts and prints a strong-scaling table, `convert` translates between the
// MatrixMarket and TSV edge list formats.
//
// Exit codes: 0 success, 1 input parse failure, 2 degenerate graph (no edge
// weight), 3 internal invariant violation.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "louvain/errors.hpp"
#include "louvain/graph.hpp"
#include "louvain/io.hpp"
#include "louvain/louvain_compact.hpp"
#include "louvain/louvain_mc.hpp"
#include "louvain/oracle.hpp"
#include "louvain/quality.hpp"

namespace {

using namespace louvain;

constexpr int kExitParse = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitInternal = 3;

struct Options {
  std::string input;
  std::string format;  // empty: guess from the extension
  std::string engine = "mc";
  std::string threads;  // single count, or a comma list for bench
  int max_passes = 10;
  int max_iterations = 20;
  double tolerance = 0.01;
  double tolerance_drop = 10.0;
  double aggregation_tolerance = 0.8;
  int pl_period = 4;
  std::uint64_t switch_move = 64;
  std::uint64_t switch_aggregate = 128;
  std::string probing = "quadratic-double";
  int value_bits = 32;
  std::string output;
  std::string report;
  int repetitions = 5;
  bool symmetrize = false;
};

EdgeListFormat parse_format(const std::string& name, const std::string& path) {
  if (name.empty()) return guess_format(path);
  if (name == "mtx") return EdgeListFormat::matrix_market;
  if (name == "tsv") return EdgeListFormat::whitespace_tsv;
  throw ParseError("unknown format '" + name + "' (expected mtx or tsv)");
}

Probing parse_probing(const std::string& name) {
  if (name == "linear") return Probing::linear;
  if (name == "quadratic") return Probing::quadratic;
  if (name == "double") return Probing::double_hash;
  if (name == "quadratic-double") return Probing::quadratic_double;
  throw ParseError("unknown probing mode '" + name + "'");
}

std::vector<int> parse_thread_list(const std::string& list) {
  if (list.empty()) return {0};
  std::vector<int> counts;
  std::stringstream in(list);
  std::string token;
  while (std::getline(in, token, ',')) {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size() || value < 0) throw ParseError("bad thread count '" + token + "'");
    counts.push_back(value);
  }
  if (counts.empty()) throw ParseError("empty thread list");
  return counts;
}

LouvainParams engine_params(const Options& opt, int threads) {
  LouvainParams p;
  p.max_passes = opt.max_passes;
  p.max_iterations = opt.max_iterations;
  p.initial_tolerance = opt.tolerance;
  p.tolerance_drop = opt.tolerance_drop;
  p.aggregation_tolerance = opt.aggregation_tolerance;
  p.thread_count = threads;
  return p;
}

CompactOptions compact_options(const Options& opt) {
  CompactOptions c;
  c.pick_less.period = opt.pl_period;
  c.switch_degrees.move = opt.switch_move;
  c.switch_degrees.aggregate = opt.switch_aggregate;
  c.probing = parse_probing(opt.probing);
  c.value_bits = opt.value_bits;
  return c;
}

LouvainResult run_engine(const Options& opt, const CsrGraph& g, int threads) {
  const LouvainParams params = engine_params(opt, threads);
  if (opt.engine == "mc") return louvain_mc(g, params);
  if (opt.engine == "compact") return louvain_compact(g, params, compact_options(opt));
  if (opt.engine == "sequential") return sequential_louvain(g, params);
  throw ParseError("unknown engine '" + opt.engine + "'");
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::ostringstream out;
  out.precision(12);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ",";
    out << values[i];
  }
  return out.str();
}

// Writes the report to `path`, or standard output when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open report path " + path);
  out << text;
}

void describe_input(std::ostream& out, const Options& opt, const CsrGraph& g) {
  out << "input=" << opt.input << "\n";
  out << "vertices=" << g.num_vertices() << "\n";
  out << "edges=" << g.num_arcs() / 2.0 << "\n";
  out << "avg_degree="
      << (g.num_vertices() ? static_cast<double>(g.num_arcs()) / g.num_vertices() : 0.0) << "\n";
  out << "engine=" << opt.engine << "\n";
}

void describe_params(std::ostream& out, const Options& opt, int threads) {
  out << "threads=" << threads << "\n";
  out << "max_passes=" << opt.max_passes << "\n";
  out << "max_iterations=" << opt.max_iterations << "\n";
  out << "tolerance=" << opt.tolerance << "\n";
  out << "tolerance_drop=" << opt.tolerance_drop << "\n";
  out << "aggregation_tolerance=" << opt.aggregation_tolerance << "\n";
  if (opt.engine == "compact") {
    out << "pl_period=" << opt.pl_period << "\n";
    out << "switch_move=" << opt.switch_move << "\n";
    out << "switch_aggregate=" << opt.switch_aggregate << "\n";
    out << "probing=" << opt.probing << "\n";
    out << "value_bits=" << opt.value_bits << "\n";
  }
}

void describe_result(std::ostream& out, const CsrGraph& g, const LouvainResult& r) {
  out << "modularity=" << r.modularity << "\n";
  out << "communities=" << r.num_communities << "\n";
  out << "passes=" << r.passes << "\n";
  out << "iterations_per_pass=" << join(r.iterations_per_pass) << "\n";
  out << "phase_local_moving=" << r.phase.local_moving / r.wall_seconds << "\n";
  out << "phase_aggregation=" << r.phase.aggregation / r.wall_seconds << "\n";
  out << "phase_other=" << r.phase.other / r.wall_seconds << "\n";
  std::vector<double> pass_split(r.pass_seconds.size());
  for (std::size_t i = 0; i < pass_split.size(); ++i)
    pass_split[i] = r.pass_seconds[i] / r.wall_seconds;
  out << "pass_split=" << join(pass_split) << "\n";
  out << "wall_time=" << r.wall_seconds << "\n";
  out << "edges_per_second=" << (g.num_arcs() / 2.0) / r.wall_seconds << "\n";
}

// The report is never trusted state: the emitted membership must be a
// contiguous renumbering whose recomputed modularity matches the reported
// value.
void verify_result(const CsrGraph& g, const LouvainResult& r) {
  if (r.membership.size() != g.num_vertices())
    throw InternalError("membership size does not match the graph");
  std::vector<bool> seen(r.num_communities, false);
  for (const CommunityId c : r.membership) {
    if (c >= r.num_communities) throw InternalError("membership is not a contiguous renumbering");
    seen[c] = true;
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    throw InternalError("membership is not a contiguous renumbering");
  const double recomputed = modularity(g, r.membership);
  if (std::abs(recomputed - r.modularity) > 1e-9)
    throw InternalError("reported modularity diverges from the membership file");
}

int cmd_detect(const Options& opt) {
  const EdgeList edges = load_edge_list(opt.input, parse_format(opt.format, opt.input));
  const CsrGraph g = build_csr(edges, true);
  const std::vector<int> threads = parse_thread_list(opt.threads);
  if (threads.size() != 1) throw ParseError("detect takes a single --threads value");

  const LouvainResult result = run_engine(opt, g, threads.front());
  verify_result(g, result);
  if (!opt.output.empty()) save_membership_tsv(opt.output, result.membership);

  std::ostringstream report;
  report.precision(12);
  describe_input(report, opt, g);
  describe_params(report, opt, threads.front());
  describe_result(report, g, result);
  emit(opt.report, report.str());
  return 0;
}

int cmd_bench(const Options& opt) {
  const EdgeList edges = load_edge_list(opt.input, parse_format(opt.format, opt.input));
  const CsrGraph g = build_csr(edges, true);
  const std::vector<int> threads = parse_thread_list(opt.threads);
  if (opt.repetitions < 1) throw ParseError("--repetitions must be at least 1");

  std::ostringstream report;
  report.precision(12);
  describe_input(report, opt, g);
  describe_params(report, opt, threads.front());
  report << "repetitions=" << opt.repetitions << "\n";

  struct Aggregate {
    double wall_geomean = 0.0;
    double modularity_mean = 0.0;
    double local_moving = 0.0, aggregation = 0.0, other = 0.0;
  };
  std::vector<std::pair<int, Aggregate>> table;

  for (const int t : threads) {
    Aggregate agg;
    double log_wall = 0.0;
    for (int rep = 0; rep < opt.repetitions; ++rep) {
      const LouvainResult r = run_engine(opt, g, t);
      verify_result(g, r);
      report << "row=run threads=" << t << " rep=" << rep + 1 << " wall_time=" << r.wall_seconds
             << " modularity=" << r.modularity << " passes=" << r.passes << "\n";
      log_wall += std::log(r.wall_seconds);
      agg.modularity_mean += r.modularity;
      agg.local_moving += r.phase.local_moving / r.wall_seconds;
      agg.aggregation += r.phase.aggregation / r.wall_seconds;
      agg.other += r.phase.other / r.wall_seconds;
    }
    agg.wall_geomean = std::exp(log_wall / opt.repetitions);
    agg.modularity_mean /= opt.repetitions;
    agg.local_moving /= opt.repetitions;
    agg.aggregation /= opt.repetitions;
    agg.other /= opt.repetitions;
    table.emplace_back(t, agg);
  }

  // Speedups are relative to the 1-thread row when present, the first row
  // otherwise.
  const auto reference =
      std::find_if(table.begin(), table.end(), [](const auto& row) { return row.first == 1; });
  const double base =
      (reference != table.end() ? reference : table.begin())->second.wall_geomean;
  for (const auto& [t, agg] : table) {
    report << "row=scaling threads=" << t << " runs=" << opt.repetitions
           << " wall_time_geomean=" << agg.wall_geomean
           << " modularity_mean=" << agg.modularity_mean
           << " phase_local_moving=" << agg.local_moving
           << " phase_aggregation=" << agg.aggregation << " phase_other=" << agg.other
           << " speedup=" << base / agg.wall_geomean << "\n";
  }
  emit(opt.report, report.str());
  return 0;
}

int cmd_convert(const Options& opt) {
  if (opt.output.empty()) throw ParseError("convert requires --output");
  EdgeList edges = load_edge_list(opt.input, parse_format(opt.format, opt.input));
  if (opt.symmetrize) edges = to_edge_list(build_csr(edges, true));
  if (guess_format(opt.output) == EdgeListFormat::matrix_market)
    save_matrix_market(opt.output, edges);
  else
    save_whitespace_tsv(opt.output, edges);
  return 0;
}

void add_input_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--input", opt.input, "graph file")->required();
  cmd->add_option("--format", opt.format, "input format: mtx or tsv (default: by extension)");
}

void add_engine_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--engine", opt.engine, "mc, compact or sequential");
  cmd->add_option("--threads", opt.threads, "worker count (bench: comma list, e.g. 1,2,4)")
      ->envname("LOUVAIN_THREADS");
  cmd->add_option("--max-passes", opt.max_passes);
  cmd->add_option("--max-iterations", opt.max_iterations);
  cmd->add_option("--tolerance", opt.tolerance);
  cmd->add_option("--tolerance-drop", opt.tolerance_drop);
  cmd->add_option("--aggregation-tolerance", opt.aggregation_tolerance);
  cmd->add_option("--pl-period", opt.pl_period);
  cmd->add_option("--switch-move", opt.switch_move);
  cmd->add_option("--switch-aggregate", opt.switch_aggregate);
  cmd->add_option("--probing", opt.probing,
                  "linear, quadratic, double or quadratic-double");
  cmd->add_option("--value-bits", opt.value_bits, "scan table value width: 32 or 64");
  cmd->add_option("--report", opt.report, "report path (default: standard output)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel Louvain community detection"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* detect = app.add_subcommand("detect", "cluster a graph and emit the membership");
  add_input_flags(detect, opt);
  add_engine_flags(detect, opt);
  detect->add_option("--output", opt.output, "membership TSV path");

  CLI::App* bench = app.add_subcommand("bench", "repeat runs and print a strong-scaling table");
  add_input_flags(bench, opt);
  add_engine_flags(bench, opt);
  bench->add_option("--repetitions", opt.repetitions, "runs per thread count");

  CLI::App* convert = app.add_subcommand("convert", "translate between mtx and tsv");
  add_input_flags(convert, opt);
  convert->add_option("--output", opt.output, "converted file path")->required();
  convert->add_flag("--symmetrize", opt.symmetrize, "merge duplicates and emit both arc directions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (detect->parsed()) return cmd_detect(opt);
    if (bench->parsed()) return cmd_bench(opt);
    return cmd_convert(opt);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const DegenerateGraphError& e) {
    std::cerr << "degenerate graph: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}
