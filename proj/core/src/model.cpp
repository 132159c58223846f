#include "polytree/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>
#include <utility>

#include "polytree/errors.hpp"
#include "polytree/union_find.hpp"

namespace polytree {

namespace {

constexpr double kAdditiveTolerance = 1e-9;

std::vector<ParentSetEntry> canonical_family(NodeId v, std::size_t n,
                                             std::vector<ParentSetEntry> entries) {
  std::vector<std::pair<std::vector<NodeId>, ParentSetEntry>> keyed;
  keyed.reserve(entries.size());
  for (auto& e : entries) {
    if (std::isnan(e.score) || e.score == std::numeric_limits<double>::infinity()) {
      throw InputError("node " + std::to_string(v) + ": score must be finite or -inf");
    }
    if (e.parents.upper_bound() > n) {
      throw InputError("node " + std::to_string(v) + ": parent set " + e.parents.to_string() +
                       " references a node outside [0, " + std::to_string(n) + ")");
    }
    if (e.parents.contains(v)) {
      throw InputError("node " + std::to_string(v) + ": parent set contains the node itself");
    }
    keyed.emplace_back(e.parents.members(), std::move(e));
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ParentSetEntry> out;
  out.reserve(keyed.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && keyed[i].first == keyed[i - 1].first) {
      out.back().score = std::max(out.back().score, keyed[i].second.score);
    } else {
      out.push_back(std::move(keyed[i].second));
    }
  }
  return out;
}

}  // namespace

Instance::Instance(std::vector<std::vector<ParentSetEntry>> families,
                   std::vector<std::string> names) {
  const std::size_t n = families.size();
  if (names.empty()) {
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  }
  if (names.size() != n) {
    throw InputError("expected " + std::to_string(n) + " names, got " +
                     std::to_string(names.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : names) {
    if (!seen.insert(name).second) throw InputError("duplicate node name '" + name + "'");
  }
  families_.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    families_.push_back(canonical_family(static_cast<NodeId>(v), n, std::move(families[v])));
  }
  names_ = std::move(names);
  build_index();
}

void Instance::build_index() {
  index_.assign(families_.size(), {});
  for (std::size_t v = 0; v < families_.size(); ++v) {
    index_[v].reserve(families_[v].size());
    for (std::size_t i = 0; i < families_[v].size(); ++i) {
      index_[v].emplace(families_[v][i].parents, i);
    }
  }
}

std::size_t Instance::total_entries() const noexcept {
  std::size_t total = 0;
  for (const auto& f : families_) total += f.size();
  return total;
}

std::optional<std::size_t> Instance::find(NodeId v, const NodeSet& parents) const {
  const auto& idx = index_.at(v);
  auto it = idx.find(parents);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

Score Instance::local_score(NodeId v, const NodeSet& parents) const {
  if (max_indegree_ && parents.size() > static_cast<std::size_t>(*max_indegree_)) {
    return kNegInf;
  }
  if (auto i = find(v, parents)) return families_[v][*i].score;
  if (!additive_ || parents.empty()) return kNegInf;
  Score total = 0.0;
  parents.for_each([&](NodeId u) {
    auto i = find(v, NodeSet{u});
    total += i ? families_[v][*i].score : kNegInf;
  });
  return total;
}

int Instance::k_eff() const noexcept {
  std::size_t k = 0;
  for (const auto& f : families_) {
    for (const auto& e : f) k = std::max(k, e.parents.size());
  }
  return static_cast<int>(k);
}

int Instance::indegree_bound() const noexcept {
  if (max_indegree_) return *max_indegree_;
  if (additive_) return n() == 0 ? 0 : static_cast<int>(n() - 1);
  return k_eff();
}

Instance Instance::with_max_indegree(int k) const {
  if (k < 1) throw InputError("in-degree bound must be >= 1");
  Instance out = *this;
  for (auto& f : out.families_) {
    std::erase_if(f, [k](const ParentSetEntry& e) {
      return e.parents.size() > static_cast<std::size_t>(k);
    });
  }
  out.max_indegree_ = k;
  out.build_index();
  return out;
}

Instance Instance::with_max_component_arcs(int q) const {
  if (q < 1) throw InputError("component arc bound must be >= 1");
  Instance out = *this;
  out.max_component_arcs_ = q;
  return out;
}

Instance Instance::with_additive(bool additive) const {
  Instance out = *this;
  out.additive_ = additive;
  if (additive && !is_additive_consistent(out)) {
    throw PreconditionError("scores are not additive");
  }
  return out;
}

Instance Instance::with_names(std::vector<std::string> names) const {
  Instance out(families_, std::move(names));
  out.max_indegree_ = max_indegree_;
  out.max_component_arcs_ = max_component_arcs_;
  out.additive_ = additive_;
  return out;
}

Polytree Polytree::from_arcs(std::size_t n, std::span<const Arc> arcs) {
  std::vector<NodeSet> sets(n);
  for (const Arc& a : arcs) {
    if (a.parent >= n || a.child >= n) throw InputError("arc endpoint out of range");
    sets[a.child].insert(a.parent);
  }
  return Polytree(std::move(sets));
}

std::vector<Arc> Polytree::arcs() const {
  std::vector<Arc> out;
  for (std::size_t v = 0; v < parent_sets_.size(); ++v) {
    parent_sets_[v].for_each([&](NodeId u) { out.push_back({u, static_cast<NodeId>(v)}); });
  }
  return out;
}

std::size_t Polytree::arc_count() const noexcept {
  std::size_t total = 0;
  for (const auto& s : parent_sets_) total += s.size();
  return total;
}

Instance normalize(const Instance& instance, std::vector<std::string>* warnings) {
  const std::size_t n = instance.n();
  std::vector<std::vector<ParentSetEntry>> families(n);
  for (NodeId v = 0; v < n; ++v) {
    const auto fam = instance.family(v);
    families[v].assign(fam.begin(), fam.end());
    auto empty_it = std::find_if(families[v].begin(), families[v].end(),
                                 [](const ParentSetEntry& e) { return e.parents.empty(); });
    if (empty_it == families[v].end() || !is_finite_score(empty_it->score)) {
      if (warnings) {
        warnings->push_back("node '" + instance.name(v) +
                            "' has no finite empty parent set; inserted with score 0");
      }
      if (empty_it == families[v].end()) {
        families[v].push_back({NodeSet{}, 0.0});
      } else {
        empty_it->score = 0.0;
      }
      continue;
    }
    const Score shift = empty_it->score;
    if (shift == 0.0) continue;
    for (auto& e : families[v]) {
      if (is_finite_score(e.score)) e.score -= shift;
    }
  }
  Instance out(std::move(families), instance.names());
  if (auto k = instance.max_indegree()) out = out.with_max_indegree(*k);
  if (auto q = instance.max_component_arcs()) out = out.with_max_component_arcs(*q);
  if (instance.additive()) out = out.with_additive(true);
  return out;
}

bool is_normalized(const Instance& instance) {
  for (NodeId v = 0; v < instance.n(); ++v) {
    auto i = instance.find(v, NodeSet{});
    if (!i || instance.family(v)[*i].score != 0.0) return false;
  }
  return true;
}

Score score(const Instance& instance, const Polytree& polytree) {
  if (polytree.n() != instance.n()) {
    throw InputError("polytree has " + std::to_string(polytree.n()) + " nodes, instance has " +
                     std::to_string(instance.n()));
  }
  Score total = 0.0;
  for (NodeId v = 0; v < instance.n(); ++v) {
    const NodeSet& parents = polytree.parents(v);
    if (parents.upper_bound() > instance.n()) throw InputError("parent index out of range");
    total += instance.local_score(v, parents);
  }
  return total;
}

ValidationReport validate_polytree(std::size_t n, std::span<const NodeSet> parent_sets) {
  if (parent_sets.size() != n) {
    throw InputError("expected " + std::to_string(n) + " parent sets, got " +
                     std::to_string(parent_sets.size()));
  }
  for (const auto& s : parent_sets) {
    if (s.upper_bound() > n) throw InputError("parent index out of range");
  }
  UnionFind uf(n);
  for (NodeId v = 0; v < n; ++v) {
    std::optional<Arc> bad;
    parent_sets[v].for_each([&](NodeId u) {
      if (!bad && !uf.unite(u, v)) bad = Arc{u, v};
    });
    if (bad) {
      return {false, bad,
              "arc " + std::to_string(bad->parent) + "->" + std::to_string(bad->child) +
                  " closes a cycle in the skeleton"};
    }
  }
  return {};
}

ValidationReport validate_polytree(const Polytree& polytree) {
  return validate_polytree(polytree.n(), polytree.parent_sets());
}

ValidationReport check_constraints(const Polytree& polytree, std::optional<int> k,
                                   std::optional<int> q) {
  const std::size_t n = polytree.n();
  if (k) {
    for (NodeId v = 0; v < n; ++v) {
      const std::size_t d = polytree.parents(v).size();
      if (d > static_cast<std::size_t>(*k)) {
        return {false, std::nullopt,
                "in-degree of node " + std::to_string(v) + " is " + std::to_string(d) +
                    " > " + std::to_string(*k)};
      }
    }
  }
  if (q) {
    UnionFind uf(n);
    const auto arcs = polytree.arcs();
    for (const Arc& a : arcs) uf.unite(a.parent, a.child);
    std::map<std::size_t, std::size_t> per_component;
    for (const Arc& a : arcs) ++per_component[uf.find(a.child)];
    for (const auto& [root, count] : per_component) {
      if (count > static_cast<std::size_t>(*q)) {
        return {false, std::nullopt,
                "component of node " + std::to_string(root) + " has " + std::to_string(count) +
                    " arcs > " + std::to_string(*q)};
      }
    }
  }
  return {};
}

ValidationReport check_constraints(const Instance& instance, const Polytree& polytree) {
  return check_constraints(polytree, instance.max_indegree(), instance.max_component_arcs());
}

std::size_t skeleton_components(const Polytree& polytree) {
  UnionFind uf(polytree.n());
  std::size_t components = polytree.n();
  for (const Arc& a : polytree.arcs()) {
    if (uf.unite(a.parent, a.child)) --components;
  }
  return components;
}

bool is_additive_consistent(const Instance& instance) {
  for (NodeId v = 0; v < instance.n(); ++v) {
    for (const auto& e : instance.family(v)) {
      if (e.parents.size() == 1) continue;
      Score sum = 0.0;
      e.parents.for_each([&](NodeId u) {
        auto i = instance.find(v, NodeSet{u});
        sum += i ? instance.family(v)[*i].score : kNegInf;
      });
      const bool both_inf = !is_finite_score(sum) && !is_finite_score(e.score);
      if (both_inf) continue;
      if (!is_finite_score(sum) || !is_finite_score(e.score)) return false;
      if (std::abs(sum - e.score) > kAdditiveTolerance) return false;
    }
  }
  return true;
}

namespace {

void enumerate_subsets(const std::vector<std::pair<NodeId, Score>>& candidates,
                       std::size_t start, std::size_t remaining, NodeSet& current,
                       Score current_score, std::vector<ParentSetEntry>& out) {
  for (std::size_t i = start; i < candidates.size() && remaining > 0; ++i) {
    current.insert(candidates[i].first);
    const Score s = current_score + candidates[i].second;
    out.push_back({current, s});
    enumerate_subsets(candidates, i + 1, remaining - 1, current, s, out);
    current.erase(candidates[i].first);
  }
}

std::size_t count_subsets_up_to(std::size_t c, std::size_t k, std::size_t cap) {
  // sum_{j=1..k} C(c, j), saturating at cap
  std::size_t total = 0;
  double binom = 1.0;
  for (std::size_t j = 1; j <= std::min(c, k); ++j) {
    binom = binom * static_cast<double>(c - j + 1) / static_cast<double>(j);
    total += static_cast<std::size_t>(std::min(binom, static_cast<double>(cap) + 1.0));
    if (total > cap) return cap + 1;
  }
  return total;
}

}  // namespace

Instance materialize_additive(const Instance& instance, std::size_t max_entries) {
  if (!instance.additive()) return instance;
  const std::size_t n = instance.n();
  const auto bound = static_cast<std::size_t>(instance.indegree_bound());
  std::vector<std::vector<std::pair<NodeId, Score>>> candidates(n);
  std::size_t total = 0;
  for (NodeId v = 0; v < n; ++v) {
    for (const auto& e : instance.family(v)) {
      if (e.parents.size() == 1 && is_finite_score(e.score)) {
        candidates[v].emplace_back(e.parents.members().front(), e.score);
      }
    }
    total += 1 + count_subsets_up_to(candidates[v].size(), bound, max_entries);
    if (total > max_entries) {
      throw RefusalError("materializing additive scores needs more than " +
                         std::to_string(max_entries) + " parent sets");
    }
  }
  std::vector<std::vector<ParentSetEntry>> families(n);
  for (NodeId v = 0; v < n; ++v) {
    if (auto i = instance.find(v, NodeSet{})) {
      families[v].push_back(instance.family(v)[*i]);
    }
    NodeSet current;
    enumerate_subsets(candidates[v], 0, bound, current, 0.0, families[v]);
  }
  Instance out(std::move(families), instance.names());
  if (auto k = instance.max_indegree()) out = out.with_max_indegree(*k);
  if (auto q = instance.max_component_arcs()) out = out.with_max_component_arcs(*q);
  return out.with_additive(true);
}

}  // namespace polytree
