#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "polytree/model.hpp"

namespace polytree {

/// Exact solvers over Q[S, T]: the best connected polytree on node set S in
/// which only nodes of T may have nonempty parent sets. Node sets are 64-bit
/// masks, so the (connectified) instance must have at most 64 nodes.

inline constexpr std::size_t kExactNodeCap = 25;

struct Connectified {
  Instance instance;
  NodeId aux = 0;
};

/// Appends an auxiliary node whose only parent set is the empty set, and
/// lists S and S + {aux} with equal score for every original entry S. The
/// in-degree bound, if any, grows by one. Requires a normalized instance.
Connectified connectify(const Instance& instance);

/// k * (floor(log2 n) + slack): the largest |S| - |T| the pruned DP expands.
int state_bound(int k, int n, int slack);

enum class OverlapCase { disjoint, single_overlap };

struct DpChoice {
  NodeId node = 0;
  std::uint64_t parents = 0;
  OverlapCase overlap = OverlapCase::disjoint;
  /// The single parent already in T, for OverlapCase::single_overlap.
  std::optional<NodeId> shared;
};

struct DpEntryDump {
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  Score value = kNegInf;
};

struct DpOptions {
  /// Lift the kExactNodeCap refusal (64-node hard limit remains).
  bool allow_large = false;
  /// Refuse once the memo holds this many states (0: unlimited).
  std::uint64_t max_states = 0;
  /// Refuse once this much wall time has elapsed (0: unlimited).
  double time_limit_ms = 0.0;
};

/// Top-down memoized table. Ties resolve to the smallest node, then the
/// lexicographically smallest parent set (family order).
class ConnectedPolytreeTable {
 public:
  /// With max_gap set, states with |S| - |T| > max_gap are refused (valued
  /// kNegInf and not memoized).
  /// Budgets in `options` raise RefusalError when exhausted.
  explicit ConnectedPolytreeTable(const Instance& instance,
                                  std::optional<int> max_gap = std::nullopt,
                                  const DpOptions& options = {});
  ~ConnectedPolytreeTable();
  ConnectedPolytreeTable(ConnectedPolytreeTable&&) noexcept;
  ConnectedPolytreeTable& operator=(ConnectedPolytreeTable&&) noexcept;

  std::uint64_t full_mask() const noexcept;

  /// Requires T nonempty and T a subset of S.
  Score value(std::uint64_t s, std::uint64_t t);

  /// Argmax of the recurrence (or base case); nullopt when the value is kNegInf.
  std::optional<DpChoice> choice(std::uint64_t s, std::uint64_t t);

  /// Parent masks per node of the polytree realizing value(s, t). Nodes
  /// outside S get no parents. Throws PreconditionError for kNegInf states.
  std::vector<std::uint64_t> traceback(std::uint64_t s, std::uint64_t t);

  std::uint64_t states_visited() const noexcept;
  std::uint64_t states_refused() const noexcept;

  /// Memoized entries sorted by (S, T).
  std::vector<DpEntryDump> entries() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Optimal polytree. Requires a normalized instance; throws RefusalError
/// past the node cap and PreconditionError otherwise.
SolveResult solve_full_dp(const Instance& instance, const DpOptions& options = {});

/// As solve_full_dp, expanding only states with
/// |S| - |T| <= state_bound(k_eff of the connectified instance, n + 1, slack).
SolveResult solve_pruned_dp(const Instance& instance, int slack = 2,
                            const DpOptions& options = {});

}  // namespace polytree
