#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "polytree/node_set.hpp"

namespace polytree {

/// Local and total scores. Unspecified parent sets score kNegInf, which is
/// absorbing under addition and never compares greater than a finite value.
using Score = double;
inline constexpr Score kNegInf = -std::numeric_limits<double>::infinity();

inline bool is_finite_score(Score s) noexcept { return s > kNegInf; }

struct ParentSetEntry {
  NodeSet parents;
  Score score = 0.0;

  friend bool operator==(const ParentSetEntry&, const ParentSetEntry&) = default;
};

/// Score instance in the non-zero encoding: every node lists its candidate
/// parent sets. Families are kept canonical: duplicates collapsed to their
/// maximum score, entries sorted by lex_less on the parent set.
class Instance {
 public:
  Instance() = default;

  /// Throws InputError on self-parents, out-of-range members, NaN scores,
  /// duplicate names, or a name count different from the node count.
  explicit Instance(std::vector<std::vector<ParentSetEntry>> families,
                    std::vector<std::string> names = {});

  std::size_t n() const noexcept { return families_.size(); }

  std::span<const ParentSetEntry> family(NodeId v) const { return families_.at(v); }
  std::size_t total_entries() const noexcept;

  /// Explicit entry index, if the set is listed for v.
  std::optional<std::size_t> find(NodeId v, const NodeSet& parents) const;

  /// f_v(parents). For additive instances unlisted sets are the sum of their
  /// singleton scores. Sets above the in-degree bound score kNegInf.
  Score local_score(NodeId v, const NodeSet& parents) const;

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(NodeId v) const { return names_.at(v); }

  std::optional<int> max_indegree() const noexcept { return max_indegree_; }
  std::optional<int> max_component_arcs() const noexcept { return max_component_arcs_; }
  bool additive() const noexcept { return additive_; }

  /// Largest listed parent set.
  int k_eff() const noexcept;

  /// In-degree bound the algorithms work with: the explicit bound if set,
  /// otherwise k_eff (or n-1 for additive instances, where unlisted sets
  /// still score).
  int indegree_bound() const noexcept;

  /// Copy restricted to parent sets of size <= k, with the bound recorded.
  Instance with_max_indegree(int k) const;
  Instance with_max_component_arcs(int q) const;
  /// Throws PreconditionError if the scores are not additive-consistent.
  Instance with_additive(bool additive) const;
  Instance with_names(std::vector<std::string> names) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.families_ == b.families_ && a.names_ == b.names_ &&
           a.max_indegree_ == b.max_indegree_ &&
           a.max_component_arcs_ == b.max_component_arcs_ && a.additive_ == b.additive_;
  }

 private:
  void build_index();

  std::vector<std::vector<ParentSetEntry>> families_;
  std::vector<std::string> names_;
  std::vector<std::unordered_map<NodeSet, std::size_t, NodeSetHash>> index_;
  std::optional<int> max_indegree_;
  std::optional<int> max_component_arcs_;
  bool additive_ = false;
};

struct Arc {
  NodeId parent;
  NodeId child;

  friend bool operator==(const Arc&, const Arc&) = default;
  /// Ordered by (child, parent).
  friend auto operator<=>(const Arc& a, const Arc& b) {
    return std::tie(a.child, a.parent) <=> std::tie(b.child, b.parent);
  }
};

/// One parent set per node. Whether the skeleton is a forest is checked by
/// validate_polytree, not enforced here.
class Polytree {
 public:
  Polytree() = default;
  explicit Polytree(std::size_t n) : parent_sets_(n) {}
  explicit Polytree(std::vector<NodeSet> parent_sets) : parent_sets_(std::move(parent_sets)) {}

  static Polytree from_arcs(std::size_t n, std::span<const Arc> arcs);

  std::size_t n() const noexcept { return parent_sets_.size(); }
  const NodeSet& parents(NodeId v) const { return parent_sets_.at(v); }
  const std::vector<NodeSet>& parent_sets() const noexcept { return parent_sets_; }

  /// Sorted by (child, parent).
  std::vector<Arc> arcs() const;
  std::size_t arc_count() const noexcept;

  friend bool operator==(const Polytree&, const Polytree&) = default;

 private:
  std::vector<NodeSet> parent_sets_;
};

struct SolveResult {
  Score score = kNegInf;
  Polytree polytree;
  std::string algorithm;
  std::uint64_t states_visited = 0;
  double runtime_ms = 0.0;
  /// Proven approximation factor, set by the greedy algorithms.
  std::optional<double> ratio_bound;
};

struct ValidationReport {
  bool ok = true;
  std::optional<Arc> offending;
  std::string message;

  explicit operator bool() const noexcept { return ok; }
};

/// Shifts every node's scores so that f_v(empty) = 0. A family without a
/// finite empty-set entry gets one inserted with score 0 and a warning.
Instance normalize(const Instance& instance, std::vector<std::string>* warnings = nullptr);

bool is_normalized(const Instance& instance);

/// Sum of local scores; kNegInf if any chosen parent set is unlisted.
Score score(const Instance& instance, const Polytree& polytree);

/// True iff the skeleton is acyclic. Throws InputError on out-of-range indices.
ValidationReport validate_polytree(std::size_t n, std::span<const NodeSet> parent_sets);
ValidationReport validate_polytree(const Polytree& polytree);

/// In-degree <= k and, per skeleton component, arc count <= q (each when set).
/// Assumes validate_polytree holds.
ValidationReport check_constraints(const Polytree& polytree, std::optional<int> k,
                                   std::optional<int> q);
ValidationReport check_constraints(const Instance& instance, const Polytree& polytree);

/// Number of connected components of the skeleton.
std::size_t skeleton_components(const Polytree& polytree);

/// Every listed set scores the sum of its members' singleton scores
/// (absolute tolerance 1e-9; a missing singleton counts as kNegInf).
bool is_additive_consistent(const Instance& instance);

/// For additive instances: lists every subset of each node's singleton
/// candidates up to indegree_bound(), scored additively. Non-additive
/// instances are returned unchanged. Throws RefusalError past max_entries.
Instance materialize_additive(const Instance& instance, std::size_t max_entries = 1'000'000);

}  // namespace polytree
