#include "polytree/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "polytree/errors.hpp"
#include "polytree/union_find.hpp"

namespace polytree {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

SolveResult brute_force(const Instance& instance, const ConstraintSet& constraints) {
  const auto start = Clock::now();
  const Instance work = materialize_additive(instance);
  const std::size_t n = work.n();
  const std::optional<int> k = constraints.k ? constraints.k : work.max_indegree();
  const std::optional<int> q = constraints.q ? constraints.q : work.max_component_arcs();

  double product = 1.0;
  for (NodeId v = 0; v < n; ++v) {
    product *= static_cast<double>(work.family(v).size());
    if (product > kBruteForceGuard) {
      throw RefusalError("brute force would enumerate more than 1e7 assignments");
    }
  }

  SolveResult result;
  result.algorithm = "brute";
  if (product == 0.0) {
    // Some node lists no parent set at all: nothing is feasible.
    result.polytree = Polytree(n);
    result.runtime_ms = elapsed_ms(start);
    return result;
  }

  std::vector<std::vector<std::vector<NodeId>>> members(n);
  for (NodeId v = 0; v < n; ++v) {
    for (const auto& e : work.family(v)) members[v].push_back(e.parents.members());
  }

  std::vector<std::size_t> digit(n, 0);
  std::vector<std::size_t> parent(n);
  std::vector<std::size_t> arcs_at(n);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  Score best = kNegInf;
  std::vector<Arc> best_arcs;
  std::vector<NodeSet> best_sets;
  std::uint64_t visited = 0;

  while (true) {
    ++visited;
    bool ok = true;
    Score total = 0.0;
    std::size_t arc_count = 0;
    for (NodeId v = 0; v < n && ok; ++v) {
      const auto& e = work.family(v)[digit[v]];
      total += e.score;
      arc_count += members[v][digit[v]].size();
      if (!is_finite_score(e.score)) ok = false;
      if (k && e.parents.size() > static_cast<std::size_t>(*k)) ok = false;
    }
    if (ok && constraints.require_connected && arc_count + 1 != n) ok = false;
    if (ok && total >= best) {
      for (std::size_t i = 0; i < n; ++i) {
        parent[i] = i;
        arcs_at[i] = 0;
      }
      for (NodeId v = 0; v < n && ok; ++v) {
        for (NodeId u : members[v][digit[v]]) {
          const std::size_t ru = find(u);
          const std::size_t rv = find(v);
          if (ru == rv) {
            ok = false;
            break;
          }
          parent[ru] = rv;
          arcs_at[rv] += arcs_at[ru] + 1;
        }
      }
      if (ok && q) {
        for (std::size_t i = 0; i < n; ++i) {
          if (parent[i] == i && arcs_at[i] > static_cast<std::size_t>(*q)) ok = false;
        }
      }
      if (ok) {
        std::vector<NodeSet> sets(n);
        for (NodeId v = 0; v < n; ++v) sets[v] = work.family(v)[digit[v]].parents;
        Polytree candidate(std::move(sets));
        auto arcs = candidate.arcs();
        if (total > best || arcs < best_arcs) {
          best = total;
          best_arcs = std::move(arcs);
          best_sets = candidate.parent_sets();
        }
      }
    }
    // odometer: the last node turns fastest
    bool advanced = false;
    for (std::size_t pos = n; pos-- > 0;) {
      if (++digit[pos] < work.family(static_cast<NodeId>(pos)).size()) {
        advanced = true;
        break;
      }
      digit[pos] = 0;
    }
    if (!advanced) break;
  }

  result.states_visited = visited;
  if (is_finite_score(best)) {
    result.polytree = Polytree(std::move(best_sets));
    result.score = score(work, result.polytree);
  } else {
    result.polytree = Polytree(n);
  }
  result.runtime_ms = elapsed_ms(start);
  return result;
}

SolveResult max_weight_forest_additive(const Instance& instance) {
  if (instance.max_indegree()) {
    throw RefusalError("forest oracle has no in-degree bound; use brute force");
  }
  if (!is_additive_consistent(instance)) {
    throw PreconditionError("forest oracle requires additive scores");
  }
  const auto start = Clock::now();
  const std::size_t n = instance.n();
  auto singleton = [&](NodeId child, NodeId parent) {
    auto i = instance.find(child, NodeSet{parent});
    return i ? instance.family(child)[*i].score : kNegInf;
  };
  struct Edge {
    NodeId a;
    NodeId b;  // a < b
    Score weight;
    bool toward_b;
  };
  std::vector<Edge> edges;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      const Score ab = singleton(b, a);  // arc a -> b
      const Score ba = singleton(a, b);  // arc b -> a
      const Score w = std::max(ab, ba);
      if (w > 0.0) edges.push_back({a, b, w, ab >= ba});
    }
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const Edge& x, const Edge& y) { return x.weight > y.weight; });
  UnionFind uf(n);
  std::vector<NodeSet> sets(n);
  for (const Edge& e : edges) {
    if (!uf.unite(e.a, e.b)) continue;
    if (e.toward_b) {
      sets[e.b].insert(e.a);
    } else {
      sets[e.a].insert(e.b);
    }
  }
  SolveResult result;
  result.algorithm = "forest";
  result.polytree = Polytree(std::move(sets));
  result.score = score(instance.with_additive(true), result.polytree);
  result.runtime_ms = elapsed_ms(start);
  return result;
}

std::size_t brute_mis(const GraphInput& graph) {
  const std::size_t n = graph.n;
  if (n > kMisNodeGuard) throw RefusalError("independent set oracle limited to 20 nodes");
  std::vector<std::uint32_t> adj(n, 0);
  for (const auto& [u, v] : graph.edges) {
    adj[u] |= 1U << v;
    adj[v] |= 1U << u;
  }
  std::size_t best = 0;
  const std::uint32_t limit = n == 0 ? 1 : (1U << n);
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    bool independent = true;
    for (std::uint32_t rest = mask; rest != 0 && independent; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if ((adj[v] & mask) != 0) independent = false;
    }
    if (independent) best = std::max<std::size_t>(best, std::popcount(mask));
  }
  return best;
}

bool brute_set_partition(const SetFamilyInput& family) {
  if (family.sets.size() > kPartitionFamilyGuard) {
    throw RefusalError("set partition oracle limited to 20 sets");
  }
  NodeSet universe;
  for (NodeId e = 0; e < family.universe; ++e) universe.insert(e);

  std::function<bool(const NodeSet&, std::size_t)> search = [&](const NodeSet& covered,
                                                                std::size_t used) {
    const NodeSet open = universe - covered;
    if (open.empty()) return true;
    if (used == family.t) return false;
    const NodeId first = open.members().front();
    for (const NodeSet& s : family.sets) {
      if (s.contains(first) && !s.intersects(covered) && search(covered | s, used + 1)) {
        return true;
      }
    }
    return false;
  };
  return search(NodeSet{}, 0);
}

}  // namespace polytree
