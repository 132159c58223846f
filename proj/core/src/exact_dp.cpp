#include "polytree/exact_dp.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/numeric/int128.h>

#include <algorithm>
#include <bit>
#include <chrono>

#include "polytree/errors.hpp"

namespace polytree {

namespace {

constexpr std::size_t kMaxMaskNodes = 64;

std::uint64_t bit(NodeId v) { return std::uint64_t{1} << v; }

int gap(std::uint64_t s, std::uint64_t t) { return std::popcount(s) - std::popcount(t); }

std::string aux_name(const Instance& instance) {
  std::string name = "__aux";
  const auto& names = instance.names();
  while (std::find(names.begin(), names.end(), name) != names.end()) name += "_";
  return name;
}

}  // namespace

Connectified connectify(const Instance& instance) {
  if (!is_normalized(instance)) {
    throw PreconditionError("connectify requires a normalized instance");
  }
  const std::size_t n = instance.n();
  const auto aux = static_cast<NodeId>(n);
  std::vector<std::vector<ParentSetEntry>> families(n + 1);
  for (NodeId v = 0; v < n; ++v) {
    for (const auto& e : instance.family(v)) {
      families[v].push_back(e);
      NodeSet with_aux = e.parents;
      with_aux.insert(aux);
      families[v].push_back({std::move(with_aux), e.score});
    }
  }
  families[aux].push_back({NodeSet{}, 0.0});
  auto names = instance.names();
  names.push_back(aux_name(instance));
  Instance out(std::move(families), std::move(names));
  if (auto k = instance.max_indegree()) out = out.with_max_indegree(*k + 1);
  if (auto q = instance.max_component_arcs()) out = out.with_max_component_arcs(*q);
  if (instance.additive()) out = out.with_additive(true);
  return {std::move(out), aux};
}

int state_bound(int k, int n, int slack) {
  if (k < 1 || n < 1) throw InputError("state_bound requires k >= 1 and n >= 1");
  if (slack < 0) throw InputError("slack must be non-negative");
  const int log2n = static_cast<int>(std::bit_width(static_cast<unsigned>(n))) - 1;
  return k * (log2n + slack);
}

struct ConnectedPolytreeTable::Impl {
  struct Candidate {
    std::uint64_t parents;
    Score score;
  };

  std::size_t n = 0;
  std::uint64_t full = 0;
  std::optional<int> max_gap;
  std::vector<std::vector<Candidate>> candidates;  // family order, finite scores only
  bool wide = false;
  absl::flat_hash_map<std::uint64_t, Score> narrow_memo;
  absl::flat_hash_map<absl::uint128, Score> wide_memo;
  std::uint64_t refused = 0;
  std::uint64_t max_states = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  const Score* lookup(std::uint64_t s, std::uint64_t t) const {
    if (wide) {
      auto it = wide_memo.find(absl::MakeUint128(s, t));
      return it == wide_memo.end() ? nullptr : &it->second;
    }
    auto it = narrow_memo.find((s << 32) | t);
    return it == narrow_memo.end() ? nullptr : &it->second;
  }

  void store(std::uint64_t s, std::uint64_t t, Score v) {
    if (wide) {
      wide_memo.emplace(absl::MakeUint128(s, t), v);
    } else {
      narrow_memo.emplace((s << 32) | t, v);
    }
    const std::uint64_t size = wide ? wide_memo.size() : narrow_memo.size();
    if (max_states != 0 && size >= max_states) {
      throw RefusalError("exact DP exceeded the budget of " + std::to_string(max_states) +
                         " states");
    }
    if (deadline && size % 4096 == 0 && std::chrono::steady_clock::now() > *deadline) {
      throw RefusalError("exact DP exceeded its time limit after " + std::to_string(size) +
                         " states");
    }
  }

  bool refuses(std::uint64_t s, std::uint64_t t) const {
    return max_gap && gap(s, t) > *max_gap;
  }

  Score base_value(std::uint64_t s, NodeId v, const Candidate** arg) const {
    Score best = kNegInf;
    for (const Candidate& c : candidates[v]) {
      if ((c.parents | bit(v)) == s && c.score > best) {
        best = c.score;
        if (arg) *arg = &c;
      }
    }
    return best;
  }

  /// Successor state of picking parent set `parents` for v in state (s, t);
  /// nullopt when |parents & t| >= 2.
  static std::optional<std::pair<std::uint64_t, std::uint64_t>> successor(
      std::uint64_t s, std::uint64_t t, NodeId v, std::uint64_t parents) {
    const std::uint64_t overlap = parents & t;
    const std::uint64_t t_next = t & ~bit(v);
    if (overlap == 0) return std::pair{s & ~parents, t_next};
    if (std::has_single_bit(overlap)) {
      return std::pair{s & ~((parents | bit(v)) & ~overlap), t_next};
    }
    return std::nullopt;
  }

  Score value(std::uint64_t s, std::uint64_t t) {
    if (refuses(s, t)) {
      ++refused;
      return kNegInf;
    }
    if (const Score* hit = lookup(s, t)) return *hit;
    Score best = kNegInf;
    if (std::has_single_bit(t)) {
      best = base_value(s, static_cast<NodeId>(std::countr_zero(t)), nullptr);
    } else {
      for (std::uint64_t rest = t; rest != 0; rest &= rest - 1) {
        const auto v = static_cast<NodeId>(std::countr_zero(rest));
        for (const Candidate& c : candidates[v]) {
          if ((c.parents & ~s) != 0) continue;
          auto next = successor(s, t, v, c.parents);
          if (!next) continue;
          const Score total = c.score + value(next->first, next->second);
          if (total > best) best = total;
        }
      }
    }
    store(s, t, best);
    return best;
  }

  std::optional<DpChoice> choice(std::uint64_t s, std::uint64_t t) {
    if (value(s, t) == kNegInf) return std::nullopt;
    if (std::has_single_bit(t)) {
      const auto v = static_cast<NodeId>(std::countr_zero(t));
      const Candidate* arg = nullptr;
      base_value(s, v, &arg);
      return DpChoice{v, arg->parents, OverlapCase::disjoint, std::nullopt};
    }
    Score best = kNegInf;
    std::optional<DpChoice> out;
    for (std::uint64_t rest = t; rest != 0; rest &= rest - 1) {
      const auto v = static_cast<NodeId>(std::countr_zero(rest));
      for (const Candidate& c : candidates[v]) {
        if ((c.parents & ~s) != 0) continue;
        auto next = successor(s, t, v, c.parents);
        if (!next) continue;
        const Score total = c.score + value(next->first, next->second);
        if (total > best) {
          best = total;
          const std::uint64_t overlap = c.parents & t;
          if (overlap == 0) {
            out = DpChoice{v, c.parents, OverlapCase::disjoint, std::nullopt};
          } else {
            out = DpChoice{v, c.parents, OverlapCase::single_overlap,
                           static_cast<NodeId>(std::countr_zero(overlap))};
          }
        }
      }
    }
    return out;
  }
};

ConnectedPolytreeTable::ConnectedPolytreeTable(const Instance& instance,
                                               std::optional<int> max_gap,
                                               const DpOptions& options)
    : impl_(std::make_unique<Impl>()) {
  const std::size_t n = instance.n();
  if (n > kMaxMaskNodes) {
    throw RefusalError("exact DP supports at most " + std::to_string(kMaxMaskNodes) + " nodes");
  }
  impl_->n = n;
  impl_->full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  impl_->max_gap = max_gap;
  impl_->max_states = options.max_states;
  if (options.time_limit_ms > 0.0) {
    impl_->deadline = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double, std::milli>(options.time_limit_ms));
  }
  impl_->wide = n > 32;
  impl_->candidates.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    for (const auto& e : instance.family(v)) {
      if (!is_finite_score(e.score)) continue;
      impl_->candidates[v].push_back({e.parents.low_word(), e.score});
    }
  }
}

ConnectedPolytreeTable::~ConnectedPolytreeTable() = default;
ConnectedPolytreeTable::ConnectedPolytreeTable(ConnectedPolytreeTable&&) noexcept = default;
ConnectedPolytreeTable& ConnectedPolytreeTable::operator=(ConnectedPolytreeTable&&) noexcept =
    default;

std::uint64_t ConnectedPolytreeTable::full_mask() const noexcept { return impl_->full; }

Score ConnectedPolytreeTable::value(std::uint64_t s, std::uint64_t t) {
  if (t == 0 || (t & ~s) != 0 || (s & ~impl_->full) != 0) {
    throw InputError("DP state requires nonempty T within S within the node set");
  }
  return impl_->value(s, t);
}

std::optional<DpChoice> ConnectedPolytreeTable::choice(std::uint64_t s, std::uint64_t t) {
  value(s, t);
  return impl_->choice(s, t);
}

std::vector<std::uint64_t> ConnectedPolytreeTable::traceback(std::uint64_t s, std::uint64_t t) {
  if (value(s, t) == kNegInf) throw PreconditionError("no polytree realizes this DP state");
  std::vector<std::uint64_t> parents(impl_->n, 0);
  while (true) {
    auto c = impl_->choice(s, t);
    parents[c->node] = c->parents;
    if (std::has_single_bit(t)) break;
    auto next = Impl::successor(s, t, c->node, c->parents);
    s = next->first;
    t = next->second;
  }
  return parents;
}

std::uint64_t ConnectedPolytreeTable::states_visited() const noexcept {
  return impl_->wide ? impl_->wide_memo.size() : impl_->narrow_memo.size();
}

std::uint64_t ConnectedPolytreeTable::states_refused() const noexcept { return impl_->refused; }

std::vector<DpEntryDump> ConnectedPolytreeTable::entries() const {
  std::vector<DpEntryDump> out;
  if (impl_->wide) {
    for (const auto& [key, v] : impl_->wide_memo) {
      out.push_back({absl::Uint128High64(key), absl::Uint128Low64(key), v});
    }
  } else {
    for (const auto& [key, v] : impl_->narrow_memo) {
      out.push_back({key >> 32, key & 0xffffffffULL, v});
    }
  }
  std::sort(out.begin(), out.end(), [](const DpEntryDump& a, const DpEntryDump& b) {
    return a.s != b.s ? a.s < b.s : a.t < b.t;
  });
  return out;
}

namespace {

SolveResult solve_dp(const Instance& instance, std::optional<int> slack,
                     const DpOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = instance.n();
  if (n > kExactNodeCap && !options.allow_large) {
    throw RefusalError("exact DP refuses n = " + std::to_string(n) + " > " +
                       std::to_string(kExactNodeCap) + " without override");
  }
  if (n + 1 > kMaxMaskNodes) {
    throw RefusalError("exact DP supports at most " + std::to_string(kMaxMaskNodes - 1) +
                       " nodes");
  }
  if (!is_normalized(instance)) {
    throw PreconditionError("exact DP requires f_v(empty) = 0 for every node; normalize first");
  }

  SolveResult result;
  result.algorithm = slack ? "dp-pruned" : "dp";
  if (n == 0) {
    result.score = 0.0;
    return result;
  }

  const Connectified conn = connectify(materialize_additive(instance));
  std::optional<int> max_gap;
  if (slack) {
    max_gap = state_bound(conn.instance.k_eff(), static_cast<int>(n + 1), *slack);
  }
  ConnectedPolytreeTable table(conn.instance, max_gap, options);
  const std::uint64_t full = table.full_mask();
  table.value(full, full);
  const auto masks = table.traceback(full, full);
  std::vector<NodeSet> sets(n);
  for (NodeId v = 0; v < n; ++v) {
    sets[v] = NodeSet::from_mask(masks[v] & ~bit(conn.aux));
  }
  result.polytree = Polytree(std::move(sets));
  result.score = score(instance, result.polytree);
  result.states_visited = table.states_visited();
  result.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

SolveResult solve_full_dp(const Instance& instance, const DpOptions& options) {
  return solve_dp(instance, std::nullopt, options);
}

SolveResult solve_pruned_dp(const Instance& instance, int slack, const DpOptions& options) {
  if (slack < 0) throw InputError("slack must be non-negative");
  return solve_dp(instance, slack, options);
}

}  // namespace polytree
