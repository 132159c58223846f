#include "polytree_cli/cli.hpp"

#include <optional>

#include <CLI11.hpp>

#include "polytree/errors.hpp"
#include "polytree/exact_dp.hpp"
#include "polytree/gen.hpp"
#include "polytree/greedy.hpp"
#include "polytree/oracle.hpp"
#include "polytree/reductions.hpp"
#include "polytree/scoreio.hpp"
#include "polytree_cli/bench.hpp"

namespace polytree::cli {

namespace {

struct LoadFlags {
  std::string scores;
  bool no_normalize = false;
  bool no_timing = false;
  std::string out;
};

struct SolveFlags : LoadFlags {
  std::string algo = "dp";
  std::optional<int> k;
  std::optional<int> q;
  int slack = 2;
  bool connected = false;
  bool force = false;
  std::uint64_t max_states = 0;
  double time_limit_ms = 0.0;
};

struct ApproxFlags : LoadFlags {
  std::string algo = "greedy";
  std::optional<int> k;
  std::optional<int> q;
  bool audit = false;
};

struct ReduceFlags {
  std::string kind;
  std::string in;
  int epsilon_inv = 1;
  std::string out;
  std::string cert;
};

struct GenFlags {
  GenConfig cfg;
  std::string kind = "random";
  int hub_k = 5;
  double hub_score = 10;
  double ring_score = 9;
  std::string out;
};

struct BenchFlags {
  std::string suite = "small";
  std::string out;
  bool no_timing = false;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

Instance load(const LoadFlags& flags, std::ostream& err) {
  Instance raw = parse_scores(read_text_file(flags.scores));
  if (flags.no_normalize) return raw;
  std::vector<std::string> warnings;
  Instance normalized = normalize(raw, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  if (warnings.empty() && !(normalized == raw)) {
    err << "warning: scores shifted so that every empty parent set scores 0\n";
  }
  return normalized;
}

std::string record(SolveResult result, const Instance& inst, bool no_timing) {
  if (no_timing) result.runtime_ms = 0.0;
  return write_result(result, inst.names());
}

int cmd_solve(const SolveFlags& f, std::ostream& out, std::ostream& err) {
  Instance inst = load(f, err);
  if (f.k) inst = inst.with_max_indegree(*f.k);
  if (f.q) inst = inst.with_max_component_arcs(*f.q);
  SolveResult result;
  if (f.algo == "brute") {
    result = brute_force(inst, ConstraintSet{f.k, f.q, f.connected});
  } else {
    if (f.q || f.connected) {
      throw RefusalError("--max-component-arcs and --connected need --algo brute");
    }
    const DpOptions options{f.force, f.max_states, f.time_limit_ms};
    result = f.algo == "dp" ? solve_full_dp(inst, options) : solve_pruned_dp(inst, f.slack, options);
  }
  emit(f.out, record(std::move(result), inst, f.no_timing), out);
  return kExitOk;
}

int cmd_approx(const ApproxFlags& f, std::ostream& out, std::ostream& err) {
  Instance inst = load(f, err);
  const GreedyOptions options{f.audit};
  SolveResult result;
  if (f.algo == "greedy") {
    if (f.k) inst = inst.with_max_indegree(*f.k);
    result = greedy_parent_sets(inst, options);
  } else if (f.algo == "additive") {
    if (!is_additive_consistent(inst)) {
      throw PreconditionError("--algo additive needs additive scores");
    }
    inst = inst.with_additive(true);
    result = greedy_arcs_additive(inst, f.k.value_or(inst.indegree_bound()), options);
  } else {
    if (!f.q) throw InputError("--algo " + f.algo + " needs --max-component-arcs");
    if (f.k) inst = inst.with_max_indegree(*f.k);
    result = f.algo == "density" ? greedy_density_comp(inst, *f.q, options)
                                 : greedy_parent_sets_comp(inst, *f.q, options);
  }
  emit(f.out, record(std::move(result), inst, f.no_timing), out);
  return kExitOk;
}

int cmd_reduce(const ReduceFlags& f, std::ostream& out) {
  const std::string text = read_text_file(f.in);
  Reduction red;
  if (f.kind == "setpart") {
    red = reduce_set_partition(parse_set_family(text), f.epsilon_inv);
  } else if (f.kind == "indset") {
    red = reduce_independent_set(parse_graph(text));
  } else {
    red = reduce_independent_set_comp(parse_graph(text));
  }
  emit(f.out, write_scores(red.instance), out);
  std::string cert_path = f.cert;
  if (cert_path.empty() && !f.out.empty()) cert_path = f.out + ".cert.json";
  if (!cert_path.empty()) write_text_file(cert_path, write_certificate(red.certificate, red.instance));
  return kExitOk;
}

int cmd_gen(const GenFlags& f, std::ostream& out) {
  Instance inst;
  if (f.kind == "random") {
    inst = random_instance(f.cfg);
  } else if (f.kind == "hub") {
    inst = adversarial_hub(f.hub_k, f.hub_score, f.ring_score);
  } else {
    inst = adversarial_indegree(f.hub_score, f.ring_score);
  }
  emit(f.out, write_scores(inst), out);
  return kExitOk;
}

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  emit(f.out, write_bench_csv(run_bench_suite(f.suite, !f.no_timing)), out);
  return kExitOk;
}

void add_load_flags(CLI::App* cmd, LoadFlags& f) {
  cmd->add_option("--scores", f.scores, "Score file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", f.out, "Write the result record here instead of stdout");
  cmd->add_flag("--no-normalize", f.no_normalize, "Skip normalization on load");
  cmd->add_flag("--no-timing", f.no_timing, "Report runtime_ms as 0 for reproducible output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Score-based polytree learning: exact, approximate and reduction tooling",
               "polytree"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Exact solve (DP, pruned DP or brute force)");
  add_load_flags(solve_cmd, solve);
  solve_cmd->add_option("--algo", solve.algo)
      ->check(CLI::IsMember({"dp", "dp-pruned", "brute"}))
      ->capture_default_str();
  solve_cmd->add_option("--max-indegree", solve.k)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-component-arcs", solve.q)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--slack", solve.slack, "Pruned DP headroom")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  solve_cmd->add_flag("--connected", solve.connected, "Require a single skeleton tree (brute)");
  solve_cmd->add_flag("--force", solve.force, "Lift the exact DP node cap");
  solve_cmd->add_option("--max-states", solve.max_states, "Refuse past this many DP states");
  solve_cmd->add_option("--time-limit-ms", solve.time_limit_ms, "Refuse past this DP wall time")
      ->check(CLI::NonNegativeNumber);

  ApproxFlags approx;
  auto* approx_cmd = app.add_subcommand("approx", "Greedy approximation with certified ratio");
  add_load_flags(approx_cmd, approx);
  approx_cmd->add_option("--algo", approx.algo)
      ->check(CLI::IsMember({"greedy", "additive", "density", "greedy-comp"}))
      ->capture_default_str();
  approx_cmd->add_option("--max-indegree", approx.k)->check(CLI::PositiveNumber);
  approx_cmd->add_option("--max-component-arcs", approx.q)->check(CLI::PositiveNumber);
  approx_cmd->add_flag("--audit", approx.audit, "Re-check skipped candidates at the end");

  ReduceFlags reduce;
  auto* reduce_cmd = app.add_subcommand("reduce", "Build a score instance from a hard problem");
  reduce_cmd->add_option("kind", reduce.kind)
      ->required()
      ->check(CLI::IsMember({"setpart", "indset", "indset-comp"}));
  reduce_cmd->add_option("--in", reduce.in, "Graph or set-family file")
      ->required()
      ->check(CLI::ExistingFile);
  reduce_cmd->add_option("--epsilon-inv", reduce.epsilon_inv, "Choice-node budget (setpart)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  reduce_cmd->add_option("--out", reduce.out, "Score file (default stdout)");
  reduce_cmd->add_option("--cert", reduce.cert, "Certificate file (default <out>.cert.json)");

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a score instance");
  gen_cmd->add_option("--kind", gen.kind)
      ->check(CLI::IsMember({"random", "hub", "indegree"}))
      ->capture_default_str();
  gen_cmd->add_option("--n", gen.cfg.n)->capture_default_str();
  gen_cmd->add_option("--max-parent-size", gen.cfg.max_parent_size)->capture_default_str();
  gen_cmd->add_option("--sets-per-node", gen.cfg.sets_per_node)->capture_default_str();
  gen_cmd->add_option("--score-low", gen.cfg.score_low)->capture_default_str();
  gen_cmd->add_option("--score-high", gen.cfg.score_high)->capture_default_str();
  gen_cmd->add_option("--seed", gen.cfg.seed)->capture_default_str();
  gen_cmd->add_flag("--additive", gen.cfg.additive, "Singleton parent sets only");
  gen_cmd->add_option("--hub-k", gen.hub_k, "hub: ring length")->capture_default_str();
  gen_cmd->add_option("--hub-score", gen.hub_score, "hub/indegree: heavy score")
      ->capture_default_str();
  gen_cmd->add_option("--ring-score", gen.ring_score, "hub/indegree: light score")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Score file (default stdout)");

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Paired exact/approximate runs as CSV");
  bench_cmd->add_option("--suite", bench.suite)
      ->check(CLI::IsMember({"small", "medium"}))
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "CSV file (default stdout)");
  bench_cmd->add_flag("--no-timing", bench.no_timing, "Report runtime_ms as 0");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, out, err);
    if (*approx_cmd) return cmd_approx(approx, out, err);
    if (*reduce_cmd) return cmd_reduce(reduce, out);
    if (*gen_cmd) return cmd_gen(gen, out);
    return cmd_bench(bench, out);
  } catch (const RefusalError& e) {
    err << "refused: " << e.what() << '\n';
    return kExitRefused;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace polytree::cli
