#include "polytree/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include <nlohmann/json.hpp>

#include "polytree/errors.hpp"

namespace polytree {

namespace {

void validate_family(const SetFamilyInput& input) {
  if (input.t < 1 || input.t > input.universe) {
    throw InputError("budget t must satisfy 1 <= t <= universe size");
  }
  for (const auto& s : input.sets) {
    if (s.empty()) throw InputError("family sets must be nonempty");
    if (s.upper_bound() > input.universe) throw InputError("family set outside the universe");
  }
}

void validate_graph(const GraphInput& graph) {
  for (const auto& [u, v] : graph.edges) {
    if (u >= graph.n || v >= graph.n) throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("self-loop");
  }
}

/// Distinct unions of at most `budget` pairwise disjoint family sets,
/// including the empty union.
std::vector<NodeSet> disjoint_unions(const std::vector<NodeSet>& sets, std::size_t budget) {
  std::vector<NodeSet> out;
  std::function<void(std::size_t, std::size_t, const NodeSet&)> extend =
      [&](std::size_t start, std::size_t left, const NodeSet& current) {
        out.push_back(current);
        if (left == 0) return;
        for (std::size_t i = start; i < sets.size(); ++i) {
          if (!sets[i].intersects(current)) extend(i + 1, left - 1, current | sets[i]);
        }
      };
  extend(0, budget, NodeSet{});
  return out;
}

std::vector<std::vector<NodeId>> incident_edges(const GraphInput& graph) {
  std::vector<std::vector<NodeId>> incident(graph.n);
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    const auto edge_node = static_cast<NodeId>(graph.n + i);
    incident[graph.edges[i].first].push_back(edge_node);
    incident[graph.edges[i].second].push_back(edge_node);
  }
  return incident;
}

std::string edge_name(const std::pair<NodeId, NodeId>& e) {
  return "e" + std::to_string(e.first) + "_" + std::to_string(e.second);
}

}  // namespace

Reduction reduce_set_partition(const SetFamilyInput& input, int epsilon_inv) {
  if (epsilon_inv < 1) throw InputError("epsilon_inv must be >= 1");
  validate_family(input);
  std::size_t max_set = 0;
  for (const auto& s : input.sets) max_set = std::max(max_set, s.size());
  const double work = std::pow(static_cast<double>(input.universe),
                               static_cast<double>(max_set) * epsilon_inv);
  if (work > kReductionSizeGuard) {
    throw RefusalError("set partition reduction exceeds the size guard (n'^(k'/eps) > 1e6)");
  }

  const std::size_t universe = input.universe;
  const std::size_t budget = static_cast<std::size_t>(epsilon_inv);
  const std::size_t choices = (input.t + budget - 1) / budget;
  const std::size_t n = universe + choices + 1;
  const auto p = static_cast<NodeId>(n - 1);

  std::vector<std::vector<ParentSetEntry>> families(n);
  std::vector<std::string> names(n);
  ReductionCertificate cert;
  cert.kind = ReductionKind::set_partition;
  cert.roles.resize(n);
  cert.source.resize(n);
  cert.target_score = universe;

  for (NodeId e = 0; e < universe; ++e) {
    names[e] = "u" + std::to_string(e);
    families[e].push_back({NodeSet{}, 0.0});
    cert.roles[e] = NodeRole::universe;
    cert.source[e] = e;
  }
  for (std::size_t j = 0; j < choices; ++j) {
    const auto node = static_cast<NodeId>(universe + j);
    names[node] = "s" + std::to_string(j + 1);
    cert.roles[node] = NodeRole::choice;
    cert.source[node] = static_cast<std::int64_t>(j);
    const std::size_t c = j + 1 < choices ? budget : input.t - (choices - 1) * budget;
    families[node].push_back({NodeSet{}, 0.0});
    for (NodeSet u : disjoint_unions(input.sets, c)) {
      const auto covered = static_cast<double>(u.size());
      u.insert(p);
      families[node].push_back({std::move(u), covered});
    }
  }
  names[p] = "p";
  families[p].push_back({NodeSet{}, 0.0});
  cert.roles[p] = NodeRole::connecting;
  cert.source[p] = -1;

  return {Instance(std::move(families), std::move(names)), std::move(cert)};
}

Reduction reduce_independent_set(const GraphInput& graph) {
  validate_graph(graph);
  const std::size_t m = graph.edges.size();
  const std::size_t n = graph.n + m + 1;
  const auto p = static_cast<NodeId>(n - 1);
  const auto incident = incident_edges(graph);

  std::vector<std::vector<ParentSetEntry>> families(n);
  std::vector<std::string> names(n);
  ReductionCertificate cert;
  cert.kind = ReductionKind::independent_set;
  cert.roles.resize(n);
  cert.source.resize(n);
  for (NodeId v = 0; v < n; ++v) families[v].push_back({NodeSet{}, 0.0});

  for (NodeId v = 0; v < graph.n; ++v) {
    names[v] = "v" + std::to_string(v);
    cert.roles[v] = NodeRole::element;
    cert.source[v] = v;
    NodeSet parents = NodeSet::from_members(incident[v]);
    parents.insert(p);
    families[v].push_back({std::move(parents), 1.0});
  }
  for (std::size_t i = 0; i < m; ++i) {
    const auto node = static_cast<NodeId>(graph.n + i);
    names[node] = edge_name(graph.edges[i]);
    cert.roles[node] = NodeRole::edge;
    cert.source[node] = static_cast<std::int64_t>(i);
  }
  names[p] = "p";
  cert.roles[p] = NodeRole::connecting;
  cert.source[p] = -1;
  return {Instance(std::move(families), std::move(names)), std::move(cert)};
}

Reduction reduce_independent_set_comp(const GraphInput& graph) {
  validate_graph(graph);
  const auto incident = incident_edges(graph);
  std::size_t degree = 0;
  for (const auto& inc : incident) degree = std::max(degree, inc.size());
  if (degree < 1) throw PreconditionError("component reduction needs maximum degree >= 1");
  const std::size_t width = std::max<std::size_t>(degree, 2);

  const std::size_t m = graph.edges.size();
  std::size_t dummies = 0;
  for (const auto& inc : incident) dummies += width - inc.size();
  const std::size_t n = graph.n + m + dummies;

  std::vector<std::vector<ParentSetEntry>> families(n);
  std::vector<std::string> names(n);
  ReductionCertificate cert;
  cert.kind = ReductionKind::independent_set_comp;
  cert.roles.resize(n);
  cert.source.resize(n);
  for (NodeId v = 0; v < n; ++v) families[v].push_back({NodeSet{}, 0.0});

  for (std::size_t i = 0; i < m; ++i) {
    const auto node = static_cast<NodeId>(graph.n + i);
    names[node] = edge_name(graph.edges[i]);
    cert.roles[node] = NodeRole::edge;
    cert.source[node] = static_cast<std::int64_t>(i);
  }
  auto next_dummy = static_cast<NodeId>(graph.n + m);
  for (NodeId v = 0; v < graph.n; ++v) {
    names[v] = "v" + std::to_string(v);
    cert.roles[v] = NodeRole::element;
    cert.source[v] = v;
    NodeSet parents = NodeSet::from_members(incident[v]);
    for (std::size_t j = incident[v].size(); j < width; ++j) {
      names[next_dummy] = "d" + std::to_string(v) + "_" + std::to_string(j);
      cert.roles[next_dummy] = NodeRole::dummy;
      cert.source[next_dummy] = v;
      parents.insert(next_dummy++);
    }
    families[v].push_back({std::move(parents), 1.0});
  }
  const int q = static_cast<int>(width) + 1;
  cert.q = q;
  Instance instance = Instance(std::move(families), std::move(names)).with_max_component_arcs(q);
  return {std::move(instance), std::move(cert)};
}

bool set_partition_predicate(const ReductionCertificate& cert, Score optimum,
                             bool partition_exists) {
  return (optimum == static_cast<double>(cert.target_score)) == partition_exists;
}

bool independent_set_predicate(const ReductionCertificate&, Score optimum,
                               std::size_t max_independent_set) {
  return optimum == static_cast<double>(max_independent_set);
}

std::optional<std::vector<std::size_t>> decode_set_partition(const SetFamilyInput& input,
                                                             const ReductionCertificate& cert,
                                                             const Polytree& polytree) {
  std::optional<NodeId> p;
  for (NodeId v = 0; v < cert.roles.size(); ++v) {
    if (cert.roles[v] == NodeRole::connecting) p = v;
  }
  if (!p || polytree.n() != cert.roles.size()) return std::nullopt;

  std::vector<std::size_t> chosen;
  NodeSet covered;
  for (NodeId v = 0; v < polytree.n(); ++v) {
    if (cert.roles[v] != NodeRole::choice || polytree.parents(v).empty()) continue;
    NodeSet target = polytree.parents(v);
    target.erase(*p);
    // smallest exact cover of `target` by family sets inside it
    std::vector<std::size_t> current;
    std::optional<std::vector<std::size_t>> best;
    std::function<void(const NodeSet&)> cover = [&](const NodeSet& left) {
      if (best && current.size() >= best->size()) return;
      if (left.empty()) {
        best = current;
        return;
      }
      const NodeId first = left.members().front();
      for (std::size_t i = 0; i < input.sets.size(); ++i) {
        const NodeSet& s = input.sets[i];
        if (s.contains(first) && s.is_subset_of(left)) {
          current.push_back(i);
          cover(left - s);
          current.pop_back();
        }
      }
    };
    cover(target);
    if (!best || target.intersects(covered)) return std::nullopt;
    covered |= target;
    chosen.insert(chosen.end(), best->begin(), best->end());
  }
  if (covered.size() != input.universe || chosen.size() > input.t) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<NodeId> decode_independent_set(const ReductionCertificate& cert,
                                           const Polytree& polytree) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < polytree.n() && v < cert.roles.size(); ++v) {
    if (cert.roles[v] == NodeRole::element && !polytree.parents(v).empty()) {
      out.push_back(static_cast<NodeId>(cert.source[v]));
    }
  }
  return out;
}

std::string to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::set_partition: return "set_partition";
    case ReductionKind::independent_set: return "independent_set";
    case ReductionKind::independent_set_comp: return "independent_set_comp";
  }
  return "unknown";
}

std::string to_string(NodeRole role) {
  switch (role) {
    case NodeRole::universe: return "universe";
    case NodeRole::choice: return "choice";
    case NodeRole::connecting: return "connecting";
    case NodeRole::element: return "element";
    case NodeRole::edge: return "edge";
    case NodeRole::dummy: return "dummy";
  }
  return "unknown";
}

std::string write_certificate(const ReductionCertificate& cert, const Instance& instance) {
  nlohmann::ordered_json record;
  record["kind"] = to_string(cert.kind);
  switch (cert.kind) {
    case ReductionKind::set_partition:
      record["predicate"] = "optimum == target_score iff a partition into <= t sets exists";
      record["target_score"] = cert.target_score;
      break;
    case ReductionKind::independent_set:
      record["predicate"] = "optimum == maximum independent set size";
      break;
    case ReductionKind::independent_set_comp:
      record["predicate"] =
          "optimum with component arc bound q == maximum independent set size";
      record["q"] = *cert.q;
      break;
  }
  auto nodes = nlohmann::ordered_json::array();
  for (NodeId v = 0; v < cert.roles.size(); ++v) {
    nlohmann::ordered_json node;
    node["name"] = instance.name(v);
    node["role"] = to_string(cert.roles[v]);
    node["source"] = cert.source[v];
    nodes.push_back(std::move(node));
  }
  record["nodes"] = std::move(nodes);
  return record.dump(2) + "\n";
}

}  // namespace polytree
