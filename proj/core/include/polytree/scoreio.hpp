#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polytree/model.hpp"

namespace polytree {

/// Undirected simple graph on nodes [0, n).
struct GraphInput {
  std::size_t n = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;

  friend bool operator==(const GraphInput&, const GraphInput&) = default;
};

/// Set partitioning input: nonempty subsets of [0, universe) and a budget t.
struct SetFamilyInput {
  std::size_t universe = 0;
  std::vector<NodeSet> sets;
  std::size_t t = 0;

  friend bool operator==(const SetFamilyInput&, const SetFamilyInput&) = default;
};

/// Local score file:
///
///     n
///     name m            (once per variable, in NodeId order)
///     score p parent_1 ... parent_p    (m lines)
///
/// Parents may name variables declared later in the file. Tokens are
/// separated by any whitespace; blank lines are skipped. Throws ParseError.
Instance parse_scores(std::string_view text);
std::string write_scores(const Instance& instance);

/// `n m` followed by m lines `u v`.
GraphInput parse_graph(std::string_view text);
std::string write_graph(const GraphInput& graph);

/// `n' m t` followed by m lines `size e_1 ... e_size`.
SetFamilyInput parse_set_family(std::string_view text);
std::string write_set_family(const SetFamilyInput& family);

/// JSON record with fields in fixed order: score, arcs, algorithm, n,
/// states_visited, runtime_ms, and ratio_bound when present. Arcs are
/// [parent, child] name pairs sorted by (child, parent); an infinite score
/// is written as the string "-inf".
std::string write_result(const SolveResult& result, const std::vector<std::string>& names);

/// Shortest decimal text that parses back to the same double; "-inf" for kNegInf.
std::string format_score(Score s);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace polytree
