#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "polytree/model.hpp"
#include "polytree/union_find.hpp"

namespace polytree {

/// Partial polytree under construction: skeleton components, arcs per
/// component, in-degrees, and which nodes already received a parent set.
class ForestState {
 public:
  explicit ForestState(std::size_t n);

  bool assigned(NodeId v) const { return assigned_.at(v); }
  std::size_t indegree(NodeId v) const { return indegree_.at(v); }
  std::size_t component_arcs(NodeId v);
  std::size_t total_arcs() const noexcept { return total_arcs_; }

  /// v and every member of parents lie in pairwise distinct components.
  bool keeps_forest(NodeId v, const NodeSet& parents);

  /// Arc count of the component that committing (v, parents) would create.
  std::size_t merged_arcs(NodeId v, const NodeSet& parents);

  /// Assigns v its parent set. Requires !assigned(v) and keeps_forest.
  void commit_parent_set(NodeId v, const NodeSet& parents);

  /// Adds the single arc u -> v. Requires u and v in distinct components.
  void commit_arc(NodeId u, NodeId v);

  Polytree polytree() const { return Polytree(parent_sets_); }

 private:
  void join(NodeId a, NodeId b);

  UnionFind uf_;
  std::vector<std::size_t> arcs_by_root_;
  std::vector<std::size_t> indegree_;
  std::vector<bool> assigned_;
  std::vector<NodeSet> parent_sets_;
  std::size_t total_arcs_ = 0;
};

struct GreedyOptions {
  /// After termination, re-check every skipped candidate and throw
  /// std::logic_error if one became feasible again.
  bool audit = false;
};

/// Repeatedly commits the highest-scoring positive parent set (ties: smallest
/// node, then lexicographically smallest set) whose node is unassigned and
/// whose members lie in distinct components. ratio_bound = k_eff + 1.
SolveResult greedy_parent_sets(const Instance& instance, const GreedyOptions& options = {});

/// Additive scores: repeatedly adds the heaviest positive arc u -> v
/// (ties: smallest v, then smallest u) joining two components with
/// in-degree(v) < k. ratio_bound = 2. Throws PreconditionError on
/// non-additive scores.
SolveResult greedy_arcs_additive(const Instance& instance, int k,
                                 const GreedyOptions& options = {});

/// Component-bounded variant: ranks parent sets by f_v(D) / |D| (ties:
/// larger score, smallest node, lexicographically smallest set) and keeps
/// every component at <= q arcs. ratio_bound = 2q.
SolveResult greedy_density_comp(const Instance& instance, int q,
                                const GreedyOptions& options = {});

/// Comparison mode only: the score-ranked greedy with the q arc bound added
/// as a feasibility test. No ratio guarantee.
SolveResult greedy_parent_sets_comp(const Instance& instance, int q,
                                    const GreedyOptions& options = {});

}  // namespace polytree
