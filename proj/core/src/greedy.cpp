#include "polytree/greedy.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>

#include "polytree/errors.hpp"

namespace polytree {

ForestState::ForestState(std::size_t n)
    : uf_(n), arcs_by_root_(n, 0), indegree_(n, 0), assigned_(n, false), parent_sets_(n) {}

std::size_t ForestState::component_arcs(NodeId v) { return arcs_by_root_[uf_.find(v)]; }

bool ForestState::keeps_forest(NodeId v, const NodeSet& parents) {
  std::vector<std::size_t> roots{uf_.find(v)};
  bool distinct = true;
  parents.for_each([&](NodeId u) {
    if (!distinct) return;
    const std::size_t r = uf_.find(u);
    if (std::find(roots.begin(), roots.end(), r) != roots.end()) {
      distinct = false;
    } else {
      roots.push_back(r);
    }
  });
  return distinct;
}

std::size_t ForestState::merged_arcs(NodeId v, const NodeSet& parents) {
  std::vector<std::size_t> roots{uf_.find(v)};
  parents.for_each([&](NodeId u) {
    const std::size_t r = uf_.find(u);
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  });
  std::size_t total = parents.size();
  for (std::size_t r : roots) total += arcs_by_root_[r];
  return total;
}

void ForestState::join(NodeId a, NodeId b) {
  const std::size_t ra = uf_.find(a);
  const std::size_t rb = uf_.find(b);
  const std::size_t arcs = arcs_by_root_[ra] + arcs_by_root_[rb] + 1;
  uf_.unite(ra, rb);
  arcs_by_root_[uf_.find(a)] = arcs;
  ++total_arcs_;
}

void ForestState::commit_parent_set(NodeId v, const NodeSet& parents) {
  assigned_[v] = true;
  parents.for_each([&](NodeId u) { join(u, v); });
  indegree_[v] += parents.size();
  parent_sets_[v] |= parents;
}

void ForestState::commit_arc(NodeId u, NodeId v) {
  join(u, v);
  ++indegree_[v];
  parent_sets_[v].insert(u);
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct SetCandidate {
  NodeId node;
  std::size_t index;  // family position, i.e. lexicographic rank
  const ParentSetEntry* entry;
};

std::vector<SetCandidate> positive_parent_sets(const Instance& instance) {
  std::vector<SetCandidate> out;
  for (NodeId v = 0; v < instance.n(); ++v) {
    const auto fam = instance.family(v);
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (!fam[i].parents.empty() && fam[i].score > 0.0) out.push_back({v, i, &fam[i]});
    }
  }
  return out;
}

/// Candidate priorities never change and feasibility only ever shrinks, so one
/// sweep in priority order is a max-heap with lazy invalidation: a candidate
/// that fails on pop can be dropped for good.
SolveResult sweep_parent_sets(const Instance& instance, std::vector<SetCandidate> candidates,
                              std::optional<int> q, const GreedyOptions& options) {
  ForestState forest(instance.n());
  auto feasible = [&](const SetCandidate& c) {
    if (forest.assigned(c.node) || !forest.keeps_forest(c.node, c.entry->parents)) return false;
    return !q || forest.merged_arcs(c.node, c.entry->parents) <= static_cast<std::size_t>(*q);
  };
  std::vector<SetCandidate> skipped;
  for (const auto& c : candidates) {
    if (feasible(c)) {
      forest.commit_parent_set(c.node, c.entry->parents);
    } else if (options.audit) {
      skipped.push_back(c);
    }
  }
  if (options.audit) {
    for (const auto& c : skipped) {
      if (feasible(c)) {
        throw std::logic_error("greedy audit: skipped candidate for node " +
                               std::to_string(c.node) + " became feasible again");
      }
    }
  }
  SolveResult result;
  result.polytree = forest.polytree();
  result.score = score(instance, result.polytree);
  return result;
}

Instance prepared(const Instance& instance, const char* algorithm) {
  if (!is_normalized(instance)) {
    throw PreconditionError(std::string(algorithm) + " requires a normalized instance");
  }
  return materialize_additive(instance);
}

}  // namespace

SolveResult greedy_parent_sets(const Instance& instance, const GreedyOptions& options) {
  const auto start = Clock::now();
  const Instance work = prepared(instance, "greedy");
  auto candidates = positive_parent_sets(work);
  std::sort(candidates.begin(), candidates.end(), [](const SetCandidate& a, const SetCandidate& b) {
    if (a.entry->score != b.entry->score) return a.entry->score > b.entry->score;
    if (a.node != b.node) return a.node < b.node;
    return a.index < b.index;
  });
  SolveResult result = sweep_parent_sets(work, std::move(candidates), std::nullopt, options);
  result.algorithm = "greedy";
  result.ratio_bound = work.k_eff() + 1;
  result.runtime_ms = elapsed_ms(start);
  return result;
}

SolveResult greedy_parent_sets_comp(const Instance& instance, int q,
                                    const GreedyOptions& options) {
  if (q < 1) throw InputError("component arc bound must be >= 1");
  const auto start = Clock::now();
  const Instance work = prepared(instance, "greedy-comp");
  auto candidates = positive_parent_sets(work);
  std::sort(candidates.begin(), candidates.end(), [](const SetCandidate& a, const SetCandidate& b) {
    if (a.entry->score != b.entry->score) return a.entry->score > b.entry->score;
    if (a.node != b.node) return a.node < b.node;
    return a.index < b.index;
  });
  SolveResult result = sweep_parent_sets(work, std::move(candidates), q, options);
  result.algorithm = "greedy-comp";
  result.runtime_ms = elapsed_ms(start);
  return result;
}

SolveResult greedy_density_comp(const Instance& instance, int q, const GreedyOptions& options) {
  if (q < 1) throw InputError("component arc bound must be >= 1");
  const auto start = Clock::now();
  const Instance work = prepared(instance, "density greedy");
  auto candidates = positive_parent_sets(work);
  std::sort(candidates.begin(), candidates.end(), [](const SetCandidate& a, const SetCandidate& b) {
    // f_a / |A| vs f_b / |B| without dividing
    const double lhs = a.entry->score * static_cast<double>(b.entry->parents.size());
    const double rhs = b.entry->score * static_cast<double>(a.entry->parents.size());
    if (lhs != rhs) return lhs > rhs;
    if (a.entry->score != b.entry->score) return a.entry->score > b.entry->score;
    if (a.node != b.node) return a.node < b.node;
    return a.index < b.index;
  });
  SolveResult result = sweep_parent_sets(work, std::move(candidates), q, options);
  result.algorithm = "density";
  result.ratio_bound = 2.0 * q;
  result.runtime_ms = elapsed_ms(start);
  return result;
}

SolveResult greedy_arcs_additive(const Instance& instance, int k, const GreedyOptions& options) {
  if (k < 1) throw InputError("in-degree bound must be >= 1");
  if (!is_additive_consistent(instance)) {
    throw PreconditionError("additive greedy requires additive scores");
  }
  const auto start = Clock::now();
  struct ArcCandidate {
    NodeId parent;
    NodeId child;
    Score weight;
  };
  std::vector<ArcCandidate> arcs;
  for (NodeId v = 0; v < instance.n(); ++v) {
    for (const auto& e : instance.family(v)) {
      if (e.parents.size() == 1 && e.score > 0.0) {
        arcs.push_back({e.parents.members().front(), v, e.score});
      }
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const ArcCandidate& a, const ArcCandidate& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.child != b.child) return a.child < b.child;
    return a.parent < b.parent;
  });

  ForestState forest(instance.n());
  auto feasible = [&](const ArcCandidate& a) {
    return forest.indegree(a.child) < static_cast<std::size_t>(k) &&
           forest.keeps_forest(a.child, NodeSet{a.parent});
  };
  std::vector<ArcCandidate> skipped;
  for (const auto& a : arcs) {
    if (feasible(a)) {
      forest.commit_arc(a.parent, a.child);
    } else if (options.audit) {
      skipped.push_back(a);
    }
  }
  if (options.audit) {
    for (const auto& a : skipped) {
      if (feasible(a)) throw std::logic_error("greedy audit: skipped arc became feasible again");
    }
  }

  SolveResult result;
  result.polytree = forest.polytree();
  result.score = score(instance.with_additive(true), result.polytree);
  result.algorithm = "additive";
  result.ratio_bound = 2.0;
  result.runtime_ms = elapsed_ms(start);
  return result;
}

}  // namespace polytree
