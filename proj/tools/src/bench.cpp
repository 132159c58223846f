#include "polytree_cli/bench.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "polytree/errors.hpp"
#include "polytree/exact_dp.hpp"
#include "polytree/gen.hpp"
#include "polytree/greedy.hpp"
#include "polytree/oracle.hpp"
#include "polytree/scoreio.hpp"

namespace polytree::cli {

namespace {

double ratio_of(Score opt, Score got) {
  if (got > 0.0) return opt / got;
  return opt <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
}

class Suite {
 public:
  explicit Suite(bool timing) : timing_(timing) {}

  void exact(const std::string& name, const Instance& inst, const SolveResult& r) {
    add(name, inst, r, r.score);
  }

  void approx(const std::string& name, const Instance& inst, const SolveResult& r, Score opt) {
    add(name, inst, r, opt);
  }

  std::vector<BenchRow> take() { return std::move(rows_); }

 private:
  void add(const std::string& name, const Instance& inst, const SolveResult& r, Score opt) {
    BenchRow row;
    row.instance = name;
    row.n = inst.n();
    row.algo = r.algorithm;
    row.score = r.score;
    row.opt = opt;
    row.ratio = ratio_of(opt, r.score);
    row.states_visited = r.states_visited;
    row.runtime_ms = timing_ ? r.runtime_ms : 0.0;
    row.bound = r.ratio_bound;
    rows_.push_back(std::move(row));
  }

  bool timing_;
  std::vector<BenchRow> rows_;
};

GenConfig config(std::size_t n, std::uint64_t seed) {
  GenConfig cfg;
  cfg.n = n;
  cfg.max_parent_size = 2;
  cfg.sets_per_node = 3;
  cfg.score_low = -5;
  cfg.score_high = 10;
  cfg.seed = seed;
  return cfg;
}

void unconstrained_rows(Suite& suite, const std::string& name, const Instance& inst) {
  const SolveResult full = solve_full_dp(inst);
  suite.exact(name, inst, full);
  suite.exact(name, inst, solve_pruned_dp(inst));
  suite.approx(name, inst, greedy_parent_sets(inst), full.score);
}

void additive_rows(Suite& suite, const std::string& name, const Instance& inst, int k) {
  const Instance bounded = inst.with_max_indegree(k);
  const SolveResult opt = solve_full_dp(bounded);
  suite.exact(name, bounded, opt);
  suite.approx(name, bounded, greedy_arcs_additive(bounded, k), opt.score);
}

std::vector<BenchRow> small_suite(bool timing) {
  Suite suite(timing);
  for (std::uint64_t i = 0; i < 12; ++i) {
    const std::size_t n = 4 + i % 5;
    const std::uint64_t seed = 1000 + i;
    const Instance inst = random_instance(config(n, seed));
    unconstrained_rows(suite, fmt::format("rand-n{}-s{}", n, seed), inst);

    const int q = 2 + static_cast<int>(i % 2);
    const SolveResult opt_q = brute_force(inst, ConstraintSet{std::nullopt, q, false});
    const std::string comp_name = fmt::format("comp-n{}-s{}-q{}", n, seed, q);
    suite.exact(comp_name, inst, opt_q);
    suite.approx(comp_name, inst, greedy_density_comp(inst, q), opt_q.score);

    GenConfig add_cfg = config(n, 2000 + i);
    add_cfg.additive = true;
    const int k = 1 + static_cast<int>(i % 2);
    additive_rows(suite, fmt::format("add-n{}-s{}-k{}", n, add_cfg.seed, k),
                  random_instance(add_cfg), k);
  }
  unconstrained_rows(suite, "hub-k5", adversarial_hub(5, 10, 9));
  additive_rows(suite, "indegree-k1", adversarial_indegree(10, 9), 1);
  return suite.take();
}

std::vector<BenchRow> medium_suite(bool timing) {
  Suite suite(timing);
  for (std::uint64_t i = 0; i < 8; ++i) {
    const std::size_t n = 10 + i % 4;
    const std::uint64_t seed = 3000 + i;
    unconstrained_rows(suite, fmt::format("rand-n{}-s{}", n, seed),
                       random_instance(config(n, seed)));
    GenConfig add_cfg = config(n, 4000 + i);
    add_cfg.additive = true;
    additive_rows(suite, fmt::format("add-n{}-s{}-k2", n, add_cfg.seed), random_instance(add_cfg),
                  2);
  }
  return suite.take();
}

}  // namespace

std::vector<BenchRow> run_bench_suite(const std::string& suite, bool timing) {
  if (suite == "small") return small_suite(timing);
  if (suite == "medium") return medium_suite(timing);
  throw InputError("unknown bench suite '" + suite + "' (expected small or medium)");
}

std::string write_bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "instance,n,algo,score,opt,ratio,states_visited,runtime_ms\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{},{},{:.6f},{},{:.3f}\n", r.instance, r.n, r.algo,
                       format_score(r.score), format_score(r.opt), r.ratio, r.states_visited,
                       r.runtime_ms);
  }
  return out.str();
}

}  // namespace polytree::cli
