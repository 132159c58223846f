#pragma once

#include <cstddef>
#include <cstdint>

#include "polytree/model.hpp"
#include "polytree/scoreio.hpp"

namespace polytree {

struct GenConfig {
  std::size_t n = 5;
  std::size_t max_parent_size = 2;
  std::size_t sets_per_node = 3;
  std::int64_t score_low = -5;
  std::int64_t score_high = 10;
  std::uint64_t seed = 0;
  /// Draw singleton parent sets only and mark the instance additive.
  bool additive = false;
};

/// Every node gets the empty set at score 0 plus sets_per_node distinct
/// parent sets of size <= max_parent_size, drawn uniformly, with integer
/// scores in [score_low, score_high]. Pure function of the config.
/// Throws InputError for invalid or infeasible configs.
Instance random_instance(const GenConfig& config);

/// Node c with parent set {a_1..a_k} scoring hub_score, and a chain
/// a_i <- a_{i+1} of ring_score arcs. Greedy by parent-set score takes the
/// hub and blocks the whole chain. Requires k >= 2, hub > ring > 0.
Instance adversarial_hub(int k, double hub_score, double ring_score);

/// Additive, in-degree 1: arc a -> b scores heavy, arcs c -> b and b -> a
/// score light. The arc greedy takes a -> b and blocks both light arcs
/// (in-degree and cycle), so opt / greedy = 2 light / heavy when that
/// exceeds 1. Requires heavy > light > 0.
Instance adversarial_indegree(double heavy, double light);

/// G(n, p) with edge probability given in millionths.
GraphInput random_graph(std::size_t n, std::uint32_t edge_ppm, std::uint64_t seed);

/// m random nonempty subsets of [0, universe) of size <= max_set.
SetFamilyInput random_set_family(std::size_t universe, std::size_t m, std::size_t t,
                                 std::size_t max_set, std::uint64_t seed);

}  // namespace polytree
