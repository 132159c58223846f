#include "polytree/gen.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "polytree/errors.hpp"

namespace polytree {

namespace {

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection; identical on every platform.
std::uint64_t below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

std::int64_t between(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(span == 0 ? rng() : below(rng, span));
}

/// First `count` entries of a partial Fisher-Yates shuffle.
template <class T>
std::vector<T> sample(std::vector<T> pool, std::size_t count, Rng& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(pool[i], pool[i + below(rng, pool.size() - i)]);
  }
  pool.resize(count);
  return pool;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double b = 1.0;
  for (std::size_t j = 1; j <= k; ++j) b = b * static_cast<double>(n - k + j) / static_cast<double>(j);
  return b;
}

constexpr double kEnumerateLimit = 4096;

std::vector<NodeSet> draw_parent_sets(NodeId v, const GenConfig& cfg, Rng& rng) {
  std::vector<NodeId> others;
  for (NodeId u = 0; u < cfg.n; ++u) {
    if (u != v) others.push_back(u);
  }
  std::vector<double> by_size(cfg.max_parent_size + 1, 0.0);
  double capacity = 0.0;
  for (std::size_t s = 1; s <= cfg.max_parent_size; ++s) {
    by_size[s] = binomial(others.size(), s);
    capacity += by_size[s];
  }
  if (static_cast<double>(cfg.sets_per_node) > capacity) {
    throw InputError("cannot draw " + std::to_string(cfg.sets_per_node) +
                     " distinct parent sets of size <= " + std::to_string(cfg.max_parent_size) +
                     " among " + std::to_string(others.size()) + " nodes");
  }
  if (capacity <= kEnumerateLimit) {
    std::vector<NodeSet> all;
    std::function<void(std::size_t, NodeSet&)> extend = [&](std::size_t start, NodeSet& cur) {
      for (std::size_t i = start; i < others.size(); ++i) {
        cur.insert(others[i]);
        all.push_back(cur);
        if (cur.size() < cfg.max_parent_size) extend(i + 1, cur);
        cur.erase(others[i]);
      }
    };
    NodeSet cur;
    extend(0, cur);
    return sample(std::move(all), cfg.sets_per_node, rng);
  }
  // Large pools: size proportional to its number of sets, then a uniform
  // subset of that size, rejecting repeats.
  std::vector<NodeSet> out;
  std::set<std::vector<NodeId>> seen;
  while (out.size() < cfg.sets_per_node) {
    double pick = static_cast<double>(below(rng, 1ULL << 53)) / static_cast<double>(1ULL << 53) *
                  capacity;
    std::size_t size = 1;
    while (size < cfg.max_parent_size && pick >= by_size[size]) pick -= by_size[size++];
    auto members = sample(others, size, rng);
    std::sort(members.begin(), members.end());
    if (seen.insert(members).second) out.push_back(NodeSet::from_members(members));
  }
  return out;
}

}  // namespace

Instance random_instance(const GenConfig& cfg) {
  if (cfg.n < 2) throw InputError("generator needs n >= 2");
  if (cfg.max_parent_size < 1 || cfg.max_parent_size >= cfg.n) {
    throw InputError("generator needs 1 <= max_parent_size < n");
  }
  if (cfg.score_low > cfg.score_high) throw InputError("score_low must not exceed score_high");
  if (cfg.additive && cfg.sets_per_node > cfg.n - 1) {
    throw InputError("additive generator draws at most n - 1 singleton parents per node");
  }

  Rng rng(cfg.seed);
  std::vector<std::vector<ParentSetEntry>> families(cfg.n);
  for (NodeId v = 0; v < cfg.n; ++v) {
    families[v].push_back({NodeSet{}, 0.0});
    std::vector<NodeSet> sets;
    if (cfg.additive) {
      std::vector<NodeId> others;
      for (NodeId u = 0; u < cfg.n; ++u) {
        if (u != v) others.push_back(u);
      }
      for (NodeId u : sample(std::move(others), cfg.sets_per_node, rng)) sets.push_back(NodeSet{u});
    } else {
      sets = draw_parent_sets(v, cfg, rng);
    }
    for (auto& s : sets) {
      const auto value = static_cast<double>(between(rng, cfg.score_low, cfg.score_high));
      families[v].push_back({std::move(s), value});
    }
  }
  Instance out(std::move(families));
  return cfg.additive ? out.with_additive(true) : out;
}

Instance adversarial_hub(int k, double hub_score, double ring_score) {
  if (k < 2) throw InputError("adversarial_hub needs k >= 2");
  if (!(hub_score > ring_score && ring_score > 0.0)) {
    throw InputError("adversarial_hub needs hub_score > ring_score > 0");
  }
  const auto size = static_cast<std::size_t>(k) + 1;
  std::vector<std::vector<ParentSetEntry>> families(size);
  std::vector<std::string> names{"c"};
  NodeSet ring_nodes;
  for (NodeId i = 1; i < size; ++i) {
    names.push_back("a" + std::to_string(i));
    ring_nodes.insert(i);
  }
  for (auto& f : families) f.push_back({NodeSet{}, 0.0});
  families[0].push_back({ring_nodes, hub_score});
  for (NodeId i = 1; i + 1 < size; ++i) families[i].push_back({NodeSet{i + 1}, ring_score});
  return Instance(std::move(families), std::move(names));
}

Instance adversarial_indegree(double heavy, double light) {
  if (!(heavy > light && light > 0.0)) {
    throw InputError("adversarial_indegree needs heavy > light > 0");
  }
  std::vector<std::vector<ParentSetEntry>> families(3);
  for (auto& f : families) f.push_back({NodeSet{}, 0.0});
  families[1].push_back({NodeSet{0}, heavy});  // a -> b
  families[1].push_back({NodeSet{2}, light});  // c -> b
  families[0].push_back({NodeSet{1}, light});  // b -> a
  return Instance(std::move(families), {"a", "b", "c"}).with_additive(true).with_max_indegree(1);
}

GraphInput random_graph(std::size_t n, std::uint32_t edge_ppm, std::uint64_t seed) {
  Rng rng(seed);
  GraphInput g;
  g.n = n;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (below(rng, 1'000'000) < edge_ppm) g.edges.emplace_back(u, v);
    }
  }
  return g;
}

SetFamilyInput random_set_family(std::size_t universe, std::size_t m, std::size_t t,
                                 std::size_t max_set, std::uint64_t seed) {
  if (universe < 1 || max_set < 1 || t < 1 || t > universe) {
    throw InputError("random_set_family needs universe >= 1, max_set >= 1, 1 <= t <= universe");
  }
  Rng rng(seed);
  SetFamilyInput f;
  f.universe = universe;
  f.t = t;
  std::vector<NodeId> elements(universe);
  for (NodeId e = 0; e < universe; ++e) elements[e] = e;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t size = 1 + below(rng, std::min(max_set, universe));
    f.sets.push_back(NodeSet::from_members(sample(elements, size, rng)));
  }
  return f;
}

}  // namespace polytree
