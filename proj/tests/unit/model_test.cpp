#include "polytree/model.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "polytree/errors.hpp"
#include "polytree/gen.hpp"
#include "polytree/oracle.hpp"
#include "test_support.hpp"

namespace polytree {
namespace {

using testing::Builder;

TEST(Instance, CanonicalizesFamilies) {
  // duplicate {b} collapses to the larger score; entries end up lex-sorted
  std::vector<std::vector<ParentSetEntry>> families{
      {{NodeSet{1}, 2.0}, {NodeSet{}, 0.0}, {NodeSet{1}, 7.0}},
      {{NodeSet{}, 0.0}}};
  Instance inst(families);
  ASSERT_EQ(inst.family(0).size(), 2u);
  EXPECT_EQ(inst.family(0)[0].parents, NodeSet{});
  EXPECT_EQ(inst.family(0)[1].score, 7.0);
  EXPECT_EQ(inst.name(1), "v1");
  EXPECT_EQ(inst.k_eff(), 1);
}

TEST(Instance, RejectsMalformedEntries) {
  EXPECT_THROW(Instance({{{NodeSet{0}, 1.0}}}), InputError);
  EXPECT_THROW(Instance({{{NodeSet{3}, 1.0}}, {}}), InputError);
  EXPECT_THROW(Instance({{{NodeSet{}, std::numeric_limits<double>::quiet_NaN()}}}), InputError);
  EXPECT_THROW(Instance({{}, {}}, {"x", "x"}), InputError);
}

TEST(Instance, IndegreeBoundFiltersAndDefaults) {
  const Instance inst = testing::v_structure_example();
  EXPECT_EQ(inst.indegree_bound(), 2);
  const Instance k1 = inst.with_max_indegree(1);
  EXPECT_EQ(k1.k_eff(), 1);
  EXPECT_EQ(k1.local_score(2, NodeSet{0, 1}), kNegInf);
  EXPECT_THROW(inst.with_max_indegree(0), InputError);
}

TEST(Normalize, ShiftsByEmptyScore) {
  const Instance raw = Builder({"a", "b"}).empty_score("a", -3).set("a", {"b"}, 2).build();
  const Instance norm = normalize(raw);
  EXPECT_EQ(norm.local_score(0, NodeSet{}), 0.0);
  EXPECT_EQ(norm.local_score(0, NodeSet{1}), 5.0);
  EXPECT_TRUE(is_normalized(norm));
}

TEST(Normalize, AlreadyNormalizedIsIdentity) {
  const Instance inst = testing::v_structure_example();
  std::vector<std::string> warnings;
  EXPECT_EQ(normalize(inst, &warnings), inst);
  EXPECT_TRUE(warnings.empty());
}

TEST(Normalize, InsertsMissingEmptySetWithWarning) {
  const Instance raw({{{NodeSet{1}, 2.0}}, {{NodeSet{}, 0.0}}}, {"a", "b"});
  std::vector<std::string> warnings;
  const Instance norm = normalize(raw, &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("'a'"), std::string::npos);
  ASSERT_EQ(norm.family(0).size(), 2u);
  EXPECT_EQ(norm.local_score(0, NodeSet{}), 0.0);
  EXPECT_EQ(norm.local_score(0, NodeSet{1}), 2.0);
}

TEST(Normalize, PreservesBoundsAndAdditiveFlag) {
  const Instance inst = Builder({"a", "b", "c"})
                            .empty_score("c", 1)
                            .set("c", {"a"}, 3)
                            .build()
                            .with_max_indegree(1)
                            .with_max_component_arcs(2);
  const Instance norm = normalize(inst);
  EXPECT_EQ(norm.max_indegree(), 1);
  EXPECT_EQ(norm.max_component_arcs(), 2);
}

TEST(Score, SumsChosenEntries) {
  const Instance inst = testing::v_structure_example();
  EXPECT_EQ(score(inst, Polytree(3)), 0.0);
  EXPECT_EQ(score(inst, Polytree({NodeSet{}, NodeSet{}, NodeSet{0, 1}})), 5.0);
  EXPECT_EQ(score(inst, Polytree({NodeSet{1}, NodeSet{}, NodeSet{}})), kNegInf);
  EXPECT_THROW(score(inst, Polytree(2)), InputError);
}

TEST(Validate, VStructureIsPolytree) {
  EXPECT_TRUE(validate_polytree(Polytree({NodeSet{}, NodeSet{}, NodeSet{0, 1}})));
  EXPECT_TRUE(validate_polytree(Polytree(4)));
}

TEST(Validate, SkeletonFourCycleReportsOffendingArc) {
  // a->b, a->c, b->d, c->d
  const Polytree d({NodeSet{}, NodeSet{0}, NodeSet{0}, NodeSet{1, 2}});
  const auto report = validate_polytree(d);
  EXPECT_FALSE(report.ok);
  ASSERT_TRUE(report.offending);
  EXPECT_EQ(report.offending->child, 3u);
  EXPECT_EQ(report.offending->parent, 2u);
}

TEST(Validate, OutOfRangeIsInputError) {
  const std::vector<NodeSet> sets{NodeSet{5}, NodeSet{}};
  EXPECT_THROW(validate_polytree(2, sets), InputError);
}

TEST(Validate, OppositeArcsFormSkeletonCycle) {
  EXPECT_FALSE(validate_polytree(Polytree({NodeSet{1}, NodeSet{0}})));
}

TEST(Constraints, IndegreeAndComponentArcs) {
  const Polytree v({NodeSet{}, NodeSet{}, NodeSet{0, 1}});
  EXPECT_FALSE(check_constraints(v, 1, std::nullopt));
  EXPECT_TRUE(check_constraints(v, 2, std::nullopt));
  // a->b, c->d
  const Polytree two({NodeSet{}, NodeSet{0}, NodeSet{}, NodeSet{2}});
  EXPECT_TRUE(check_constraints(two, std::nullopt, 1));
  // a->b, b->c
  const Polytree path({NodeSet{}, NodeSet{0}, NodeSet{1}});
  EXPECT_FALSE(check_constraints(path, std::nullopt, 1));
  EXPECT_EQ(skeleton_components(two), 2u);
}

TEST(Additive, Consistency) {
  const auto base = Builder({"a", "b", "c"}).set("c", {"a"}, 2).set("c", {"b"}, 3);
  EXPECT_TRUE(is_additive_consistent(Builder(base).set("c", {"a", "b"}, 5).build()));
  EXPECT_FALSE(is_additive_consistent(Builder(base).set("c", {"a", "b"}, 6).build()));
  EXPECT_TRUE(is_additive_consistent(base.build()));
  EXPECT_FALSE(is_additive_consistent(Builder({"a", "b", "c"}).set("c", {"a", "b"}, 1).build()));
}

TEST(Additive, DerivedScoresAndMaterialize) {
  const Instance inst =
      Builder({"a", "b", "c"}).set("c", {"a"}, 2).set("c", {"b"}, 3).build().with_additive(true);
  EXPECT_EQ(inst.local_score(2, NodeSet{0, 1}), 5.0);
  const Instance full = materialize_additive(inst);
  EXPECT_EQ(full.find(2, NodeSet{0, 1}).has_value(), true);
  EXPECT_EQ(full.local_score(2, NodeSet{0, 1}), 5.0);
  EXPECT_THROW(Builder({"a", "b"}).set("b", {"a"}, 1).empty_score("b", 2).build().with_additive(true),
               PreconditionError);
}

// ---- properties over generated instances ----

Instance shifted(const Instance& inst, std::mt19937_64& rng, std::vector<double>& offsets) {
  std::vector<std::vector<ParentSetEntry>> families(inst.n());
  offsets.assign(inst.n(), 0.0);
  for (NodeId v = 0; v < inst.n(); ++v) {
    offsets[v] = testing::uniform_int(rng, -6, 6);
    for (const auto& e : inst.family(v)) families[v].push_back({e.parents, e.score + offsets[v]});
  }
  return Instance(std::move(families), inst.names());
}

Polytree random_assignment(const Instance& inst, std::mt19937_64& rng) {
  std::vector<NodeSet> sets;
  for (NodeId v = 0; v < inst.n(); ++v) {
    const auto fam = inst.family(v);
    sets.push_back(fam[rng() % fam.size()].parents);
  }
  return Polytree(std::move(sets));
}

GenConfig small_config(std::size_t n, std::uint64_t seed) {
  GenConfig cfg;
  cfg.n = n;
  cfg.max_parent_size = std::min<std::size_t>(2, n - 1);
  cfg.sets_per_node = 2;
  cfg.seed = seed;
  return cfg;
}

TEST(NormalizeProperty, IdempotentAndShiftInvariant) {
  std::mt19937_64 rng(101);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance base = random_instance(small_config(3 + seed % 3, seed));
    std::vector<double> offsets;
    const Instance raw = shifted(base, rng, offsets);
    const Instance once = normalize(raw);
    EXPECT_EQ(normalize(once), once);
    EXPECT_EQ(once, base);
    const double total_offset = std::accumulate(offsets.begin(), offsets.end(), 0.0);
    for (int t = 0; t < 10; ++t) {
      const Polytree d = random_assignment(raw, rng);
      const Score before = score(raw, d);
      if (before == kNegInf) continue;
      EXPECT_DOUBLE_EQ(score(once, d), before - total_offset);
    }
  }
}

TEST(NormalizeProperty, MaximizersUnchanged) {
  std::mt19937_64 rng(202);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Instance base = random_instance(small_config(3 + seed % 3, 500 + seed));
    std::vector<double> offsets;
    const Instance raw = shifted(base, rng, offsets);
    const SolveResult a = brute_force(raw);
    const SolveResult b = brute_force(normalize(raw));
    // same maximizer set implies the same lexicographically first witness
    EXPECT_EQ(a.polytree, b.polytree);
  }
}

TEST(ValidateProperty, ForestIffArcsPlusComponentsEqualsN) {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    std::vector<NodeSet> sets(n);
    std::vector<Arc> arcs;
    const int attempts = testing::uniform_int(rng, 0, static_cast<int>(n) + 1);
    for (int i = 0; i < attempts; ++i) {
      const auto p = static_cast<NodeId>(rng() % n);
      const auto c = static_cast<NodeId>(rng() % n);
      if (p == c || sets[c].contains(p)) continue;
      sets[c].insert(p);
      arcs.push_back({p, c});
    }
    // component count by label propagation, independent of union-find
    std::vector<NodeId> label(n);
    std::iota(label.begin(), label.end(), NodeId{0});
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& a : arcs) {
        const NodeId m = std::min(label[a.parent], label[a.child]);
        if (label[a.parent] != m || label[a.child] != m) {
          label[a.parent] = label[a.child] = m;
          changed = true;
        }
      }
    }
    std::sort(label.begin(), label.end());
    const auto components =
        static_cast<std::size_t>(std::unique(label.begin(), label.end()) - label.begin());
    const Polytree d(sets);
    EXPECT_EQ(validate_polytree(d).ok, arcs.size() + components == n);
    EXPECT_EQ(validate_polytree(d).ok, testing::skeleton_is_forest(n, arcs));
  }
}

TEST(ScoreProperty, LabelPermutationInvariance) {
  std::mt19937_64 rng(404);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = random_instance(small_config(4 + seed % 3, 900 + seed));
    const std::size_t n = inst.n();
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    auto map_set = [&](const NodeSet& s) {
      NodeSet out;
      s.for_each([&](NodeId u) { out.insert(perm[u]); });
      return out;
    };
    std::vector<std::vector<ParentSetEntry>> families(n);
    for (NodeId v = 0; v < n; ++v) {
      for (const auto& e : inst.family(v)) families[perm[v]].push_back({map_set(e.parents), e.score});
    }
    const Instance permuted(std::move(families));
    for (int t = 0; t < 10; ++t) {
      const Polytree d = random_assignment(inst, rng);
      std::vector<NodeSet> moved(n);
      for (NodeId v = 0; v < n; ++v) moved[perm[v]] = map_set(d.parents(v));
      EXPECT_EQ(score(permuted, Polytree(moved)), score(inst, d));
    }
  }
}

}  // namespace
}  // namespace polytree
