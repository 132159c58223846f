#pragma once

#include <cstddef>
#include <optional>

#include "polytree/model.hpp"
#include "polytree/scoreio.hpp"

namespace polytree {

/// Restrictions for brute_force. Unset bounds fall back to the instance's own.
struct ConstraintSet {
  std::optional<int> k;
  std::optional<int> q;
  /// Only polytrees whose skeleton is a single spanning tree.
  bool require_connected = false;
};

inline constexpr double kBruteForceGuard = 1e7;

/// Exhaustive search over one family entry per node (odometer order).
/// Ties go to the lexicographically smallest arc list. Throws RefusalError
/// when the product of family sizes exceeds kBruteForceGuard.
SolveResult brute_force(const Instance& instance, const ConstraintSet& constraints = {});

/// Additive scores without an in-degree bound reduce to a maximum-weight
/// spanning forest on w{u,v} = max(f_v({u}), f_u({v})); each chosen edge is
/// oriented toward its better direction (u -> v on ties, u < v).
SolveResult max_weight_forest_additive(const Instance& instance);

inline constexpr std::size_t kMisNodeGuard = 20;
inline constexpr std::size_t kPartitionFamilyGuard = 20;

/// Size of a maximum independent set, by subset enumeration.
std::size_t brute_mis(const GraphInput& graph);

/// True iff at most t pairwise disjoint family sets cover the universe.
bool brute_set_partition(const SetFamilyInput& family);

}  // namespace polytree
