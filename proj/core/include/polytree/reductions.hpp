#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polytree/model.hpp"
#include "polytree/scoreio.hpp"

namespace polytree {

/// Hardness constructions turned into instance generators. Each produced
/// instance comes with a certificate describing node roles and the score
/// relation the optimum must satisfy against a combinatorial oracle.

enum class ReductionKind { set_partition, independent_set, independent_set_comp };

enum class NodeRole { universe, choice, connecting, element, edge, dummy };

struct ReductionCertificate {
  ReductionKind kind = ReductionKind::independent_set;
  std::vector<NodeRole> roles;
  /// Per node: universe element, choice index (0-based), graph node, edge
  /// index, or owning graph node for dummies; -1 for the connecting node.
  std::vector<std::int64_t> source;
  /// set_partition: universe size n'. Unused otherwise.
  std::size_t target_score = 0;
  /// independent_set_comp: the component arc bound.
  std::optional<int> q;
};

struct Reduction {
  Instance instance;
  ReductionCertificate certificate;
};

inline constexpr double kReductionSizeGuard = 1e6;

/// Universe nodes, ceil(t / epsilon_inv) choice nodes and one connecting
/// node p. Every choice node may take p plus a union of at most
/// epsilon_inv pairwise disjoint family sets (the last one takes the
/// remaining budget), scored by the number of universe elements it covers.
/// Optimum = n' iff the family has a partition into at most t sets.
/// Throws RefusalError when n'^(k' * epsilon_inv) > 1e6 for k' the largest set.
Reduction reduce_set_partition(const SetFamilyInput& input, int epsilon_inv);

/// Graph nodes, one node per edge, and p. Graph node v scores 1 with parent
/// set {incident edge nodes} + {p}; all other sets score 0 or are unlisted.
/// Optimum = maximum independent set size.
Reduction reduce_independent_set(const GraphInput& graph);

/// Graph nodes and edge nodes, each incident-edge set padded with fresh
/// dummy nodes to a common size s and scored 1, with component arc bound
/// q = s + 1. s is the maximum degree d, raised to 2 when d = 1 so that two
/// adjacent sets cannot share a component. Requires d >= 1.
Reduction reduce_independent_set_comp(const GraphInput& graph);

bool set_partition_predicate(const ReductionCertificate& cert, Score optimum,
                             bool partition_exists);
bool independent_set_predicate(const ReductionCertificate& cert, Score optimum,
                               std::size_t max_independent_set);

/// Family indices encoded by a polytree of score n', or nullopt if the
/// choice nodes' parent sets do not form a partition of the universe.
std::optional<std::vector<std::size_t>> decode_set_partition(const SetFamilyInput& input,
                                                             const ReductionCertificate& cert,
                                                             const Polytree& polytree);

/// Graph nodes holding a nonempty parent set.
std::vector<NodeId> decode_independent_set(const ReductionCertificate& cert,
                                           const Polytree& polytree);

std::string to_string(ReductionKind kind);
std::string to_string(NodeRole role);

/// JSON sidecar: kind, predicate, target / q where applicable, and the
/// per-node role table.
std::string write_certificate(const ReductionCertificate& cert, const Instance& instance);

}  // namespace polytree
