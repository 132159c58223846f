#include "polytree/reductions.hpp"

#include <random>

#include <nlohmann/json.hpp>

#include <gtest/gtest.h>

#include "polytree/errors.hpp"
#include "polytree/exact_dp.hpp"
#include "polytree/gen.hpp"
#include "polytree/oracle.hpp"
#include "test_support.hpp"

namespace polytree {
namespace {

GraphInput triangle() { return GraphInput{3, {{0, 1}, {1, 2}, {0, 2}}}; }

TEST(SetPartitionReduction, TwoSingletonsOneChoiceNode) {
  const SetFamilyInput input{2, {NodeSet{0}, NodeSet{1}}, 2};
  const Reduction red = reduce_set_partition(input, 2);
  ASSERT_EQ(red.instance.n(), 4u);
  EXPECT_EQ(red.instance.name(2), "s1");
  EXPECT_EQ(red.instance.name(3), "p");
  EXPECT_EQ(red.instance.local_score(2, NodeSet{0, 1, 3}), 2.0);
  EXPECT_EQ(red.instance.local_score(2, NodeSet{0, 3}), 1.0);
  const SolveResult r = solve_full_dp(red.instance);
  EXPECT_TRUE(brute_set_partition(input));
  EXPECT_EQ(r.score, 2.0);
  EXPECT_TRUE(set_partition_predicate(red.certificate, r.score, true));
  const auto chosen = decode_set_partition(input, red.certificate, r.polytree);
  ASSERT_TRUE(chosen);
  EXPECT_EQ(*chosen, (std::vector<std::size_t>{0, 1}));
}

TEST(SetPartitionReduction, NodeCountFormula) {
  const SetFamilyInput input{5, {NodeSet{0, 1}, NodeSet{2}, NodeSet{3, 4}}, 5};
  for (int eps_inv = 1; eps_inv <= 3; ++eps_inv) {
    const Reduction red = reduce_set_partition(input, eps_inv);
    const std::size_t choices = (input.t + eps_inv - 1) / eps_inv;
    EXPECT_EQ(red.instance.n(), input.universe + choices + 1);
    EXPECT_TRUE(is_normalized(red.instance));
    for (NodeId v = 0; v < red.instance.n(); ++v) {
      for (const auto& e : red.instance.family(v)) {
        EXPECT_LE(e.parents.size(), static_cast<std::size_t>(2 * eps_inv + 1));
      }
    }
  }
}

TEST(SetPartitionReduction, LastChoiceNodeUsesRemainder) {
  // t = 3, eps_inv = 2: s1 may take two sets, s2 only one
  const SetFamilyInput input{3, {NodeSet{0}, NodeSet{1}, NodeSet{2}}, 3};
  const Reduction red = reduce_set_partition(input, 2);
  const NodeId s1 = 3;
  const NodeId s2 = 4;
  const NodeId p = 5;
  EXPECT_EQ(red.instance.local_score(s1, NodeSet{0, 1, p}), 2.0);
  EXPECT_EQ(red.instance.local_score(s2, NodeSet{0, 1, p}), kNegInf);
  EXPECT_EQ(red.instance.local_score(s2, NodeSet{2, p}), 1.0);
  EXPECT_EQ(solve_full_dp(red.instance).score, 3.0);
}

TEST(SetPartitionReduction, NoPartitionScoresBelowUniverse) {
  const SetFamilyInput input{3, {NodeSet{0, 1}, NodeSet{1, 2}}, 2};
  const Reduction red = reduce_set_partition(input, 1);
  EXPECT_FALSE(brute_set_partition(input));
  const Score opt = solve_full_dp(red.instance).score;
  EXPECT_LT(opt, 3.0);
  EXPECT_TRUE(set_partition_predicate(red.certificate, opt, false));
  EXPECT_FALSE(decode_set_partition(input, red.certificate, solve_full_dp(red.instance).polytree));
}

TEST(SetPartitionReduction, GuardsAndErrors) {
  const SetFamilyInput input{11, {NodeSet{0, 1, 2}}, 1};
  EXPECT_THROW(reduce_set_partition(input, 2), RefusalError);
  EXPECT_THROW(reduce_set_partition(SetFamilyInput{2, {NodeSet{0}}, 1}, 0), InputError);
}

TEST(IndependentSetReduction, EdgelessGraph) {
  const GraphInput g{3, {}};
  const Reduction red = reduce_independent_set(g);
  ASSERT_EQ(red.instance.n(), 4u);
  EXPECT_EQ(red.instance.local_score(0, NodeSet{3}), 1.0);
  const SolveResult r = solve_full_dp(red.instance);
  EXPECT_EQ(r.score, 3.0);
  EXPECT_EQ(brute_mis(g), 3u);
  EXPECT_EQ(decode_independent_set(red.certificate, r.polytree).size(), 3u);
}

TEST(IndependentSetReduction, SingleEdge) {
  const GraphInput g{2, {{0, 1}}};
  const Reduction red = reduce_independent_set(g);
  EXPECT_EQ(red.instance.name(2), "e0_1");
  EXPECT_EQ(red.certificate.roles[2], NodeRole::edge);
  EXPECT_EQ(red.certificate.roles[3], NodeRole::connecting);
  EXPECT_EQ(solve_full_dp(red.instance).score, 1.0);
}

TEST(IndependentSetReduction, Triangle) {
  const Reduction red = reduce_independent_set(triangle());
  const Score opt = solve_full_dp(red.instance).score;
  EXPECT_EQ(opt, 1.0);
  EXPECT_TRUE(independent_set_predicate(red.certificate, opt, brute_mis(triangle())));
}

TEST(IndependentSetReduction, DecodedSetIsIndependent) {
  const GraphInput g{5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}};
  const Reduction red = reduce_independent_set(g);
  const SolveResult r = solve_full_dp(red.instance);
  const auto chosen = decode_independent_set(red.certificate, r.polytree);
  EXPECT_EQ(chosen.size(), 3u);
  for (const auto& [u, v] : g.edges) {
    const bool both = std::count(chosen.begin(), chosen.end(), u) &&
                      std::count(chosen.begin(), chosen.end(), v);
    EXPECT_FALSE(both);
  }
}

TEST(ComponentReduction, SingleEdgePadsToTwo) {
  const Reduction red = reduce_independent_set_comp(GraphInput{2, {{0, 1}}});
  ASSERT_TRUE(red.certificate.q);
  EXPECT_EQ(*red.certificate.q, 3);
  EXPECT_EQ(red.instance.max_component_arcs(), 3);
  EXPECT_EQ(red.instance.n(), 5u);  // 2 nodes, 1 edge node, 2 dummies
  EXPECT_EQ(brute_force(red.instance).score, 1.0);
}

TEST(ComponentReduction, StarPadsLeaves) {
  const GraphInput star{4, {{0, 1}, {0, 2}, {0, 3}}};
  const Reduction red = reduce_independent_set_comp(star);
  EXPECT_EQ(red.certificate.q, 4);
  // centre needs no dummies, each leaf gets two
  EXPECT_EQ(std::count(red.certificate.roles.begin(), red.certificate.roles.end(), NodeRole::dummy),
            6);
  const Score opt = brute_force(red.instance).score;
  EXPECT_EQ(opt, 3.0);
  EXPECT_TRUE(independent_set_predicate(red.certificate, opt, brute_mis(star)));
}

TEST(ComponentReduction, PathOnThreeNodes) {
  const Reduction red = reduce_independent_set_comp(GraphInput{3, {{0, 1}, {1, 2}}});
  EXPECT_EQ(red.certificate.q, 3);
  EXPECT_EQ(brute_force(red.instance).score, 2.0);
}

TEST(ComponentReduction, NeedsAnEdge) {
  EXPECT_THROW(reduce_independent_set_comp(GraphInput{3, {}}), PreconditionError);
}

TEST(Certificate, JsonRecord) {
  const Reduction red = reduce_independent_set_comp(GraphInput{2, {{0, 1}}});
  const auto j = nlohmann::json::parse(write_certificate(red.certificate, red.instance));
  EXPECT_EQ(j["kind"], "independent_set_comp");
  EXPECT_EQ(j["q"], 3);
  ASSERT_EQ(j["nodes"].size(), red.instance.n());
  EXPECT_EQ(j["nodes"][0]["role"], "element");
  EXPECT_EQ(to_string(NodeRole::connecting), "connecting");
}

TEST(ReductionProperty, IndependentSetOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const GraphInput g = random_graph(2 + seed % 5, 400'000, seed);
    if (g.n + g.edges.size() > 9) continue;  // keeps the 3^N table small
    const Reduction red = reduce_independent_set(g);
    EXPECT_EQ(solve_full_dp(red.instance).score, static_cast<double>(brute_mis(g)))
        << write_graph(g);
    if (!g.edges.empty() && g.n <= 5) {
      const Reduction comp = reduce_independent_set_comp(g);
      EXPECT_EQ(brute_force(comp.instance).score, static_cast<double>(brute_mis(g)))
          << write_graph(g);
    }
  }
}

TEST(ReductionProperty, SetPartitionIff) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const SetFamilyInput f = random_set_family(2 + seed % 3, 2 + seed % 3, 1 + seed % 2, 2, seed);
    const Reduction red = reduce_set_partition(f, 1 + static_cast<int>(seed % 2));
    const Score opt = solve_full_dp(red.instance).score;
    EXPECT_TRUE(set_partition_predicate(red.certificate, opt, brute_set_partition(f)))
        << write_set_family(f);
  }
}

}  // namespace
}  // namespace polytree
