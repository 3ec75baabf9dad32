#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <blocksched/heuristics.hpp>
#include <blocksched/scenarios.hpp>

#include "support.hpp"

using namespace blocksched;
using namespace blocksched::literals;
using testing_support::fixture;
using testing_support::names;
using testing_support::type;

namespace {

using Names = std::vector<std::string>;

ScheduleEvaluation at_means(const AppointmentTemplate& tpl, Duration R = 300_min) {
  return evaluate(tpl, mean_realization(tpl.slots), R);
}

ClinicInstance of_types(std::vector<PatientTypeSpec> types) {
  ClinicInstance inst;
  inst.types = std::move(types);
  inst.regular_time = 300_min;
  return inst;
}

}  // namespace

TEST(Algorithm1, ExampleOne) {
  const auto inst = fixture("ex1.json");
  EXPECT_EQ(names(inst, algorithm1(expand_block(inst))),
            (Names{"T3", "T4", "T4", "T4", "T2", "T2", "T1", "T1", "T1"}));
}

TEST(Algorithm1, AllQPlusSortsByLambda) {
  const auto inst = of_types({type("A", 5, 9, 1), type("B", 12, 20, 1), type("C", 8, 8, 1)});
  EXPECT_EQ(names(inst, algorithm1(expand_block(inst))), (Names{"B", "C", "A"}));
}

TEST(Algorithm1, LambdaTieBrokenBySmallerMu) {
  const auto inst = of_types({type("long", 10, 30, 1), type("short", 10, 12, 1)});
  EXPECT_EQ(names(inst, algorithm1(expand_block(inst))), (Names{"short", "long"}));
}

TEST(Algorithm1, WarnsWithoutQPlus) {
  const auto inst = of_types({type("A", 5, 0, 2)});
  std::vector<std::string> warnings;
  algorithm1(expand_block(inst), &warnings);
  EXPECT_FALSE(warnings.empty());
}

TEST(Algorithm2, ExampleOne) {
  const auto inst = fixture("ex1.json");
  const auto tpl = algorithm2(expand_block(inst));
  EXPECT_EQ(names(inst, tpl.slots), (Names{"T3", "T1", "T4", "T1", "T1", "T4", "T2", "T4", "T2"}));
  const auto ev = at_means(tpl);
  EXPECT_EQ(ev.wait(), 5_min);
  EXPECT_EQ(ev.last_finish_a, 125_min);
  EXPECT_EQ(ev.last_finish_p, 150_min);
  EXPECT_EQ(ev.idle_a, Duration());
}

TEST(Algorithm2, TableSevenBlock) {
  const auto inst = fixture("table7.json");
  EXPECT_EQ(names(inst, algorithm2(expand_block(inst)).slots),
            (Names{"HC", "HC", "L", "MC", "MC", "MC", "MC", "LC", "L", "LC", "L", "LC", "LC", "M", "M", "H"}));
}

TEST(Algorithm2, GapsExactlyFilled) {
  // Gaps of 10 after A and 10 after the first B; two Q patients of λ=10.
  const auto inst = of_types({type("A", 10, 20, 1), type("B", 10, 20, 2), type("q", 10, 0, 2)});
  const auto ev = at_means(algorithm2(expand_block(inst)));
  EXPECT_EQ(ev.wait(), Duration());
  EXPECT_EQ(ev.idle_a, Duration());
  EXPECT_EQ(ev.idle_p, Duration());
}

TEST(Algorithm3, ExampleOneHorizon) {
  const auto inst = fixture("ex1.json");
  const auto ev = at_means(algorithm3(inst));
  EXPECT_EQ(ev.wait(), 180_min);
  EXPECT_EQ(ev.completion, 280_min);

  ClinicInstance k1 = inst;
  k1.blocks = 1;
  const auto one = algorithm3(k1);
  const auto block = pa_continuous(algorithm1(expand_block(inst)));
  EXPECT_EQ(one.tau, block.tau);
  EXPECT_EQ(names(inst, one.slots), names(inst, block.slots));
}

TEST(Algorithm4, NeverWorseThanAlgorithm3OnWait) {
  for (const char* f : {"ex1.json", "ex2.json", "table7.json"}) {
    const auto inst = fixture(f);
    const auto e3 = at_means(algorithm3(inst), inst.regular_time);
    const auto e4 = at_means(algorithm4(inst), inst.regular_time);
    EXPECT_LE(e4.wait(), e3.wait()) << f;
    EXPECT_EQ(e4.idle_p, Duration()) << f;
  }
}

TEST(Fcfa, PermutesEachBlockDeterministically) {
  const auto inst = fixture("ex1.json");
  std::mt19937_64 a(5), b(5);
  const auto t1 = fcfa(inst, a);
  const auto t2 = fcfa(inst, b);
  EXPECT_EQ(names(inst, t1.slots), names(inst, t2.slots));
  EXPECT_EQ(t1.tau, t2.tau);
  ASSERT_EQ(t1.size(), 18u);
  for (std::size_t blk = 0; blk < 2; ++blk) {
    std::map<std::size_t, int> count;
    for (const auto& s : t1.slots)
      if (s.block == blk) ++count[s.type];
    EXPECT_EQ(count, (std::map<std::size_t, int>{{0, 3}, {1, 2}, {2, 1}, {3, 3}}));
  }
}

TEST(Fcfa, FirstSlotFrequenciesFollowRatios) {
  const auto inst = fixture("ex1.json");
  std::mt19937_64 g(99);
  const int N = 10000;
  std::vector<int> hits(4);
  for (int i = 0; i < N; ++i) ++hits[fcfa(inst, g).slots[0].type];
  const double ratios[] = {3, 2, 1, 3};
  for (std::size_t t = 0; t < 4; ++t) {
    const double p = ratios[t] / 9.0;
    EXPECT_NEAR(hits[t], N * p, 3 * std::sqrt(N * p * (1 - p))) << t;
  }
}

TEST(ClosedForm, PublishedValues) {
  const auto inst = fixture("ex1.json");
  const auto seq = algorithm1(expand_block(inst));
  EXPECT_EQ(closed_form_wait(seq), 90_min);
  EXPECT_EQ(wait_bound_block(seq), 120_min);
  EXPECT_EQ(wait_bound_horizon(seq, 2), 260_min);
  const auto rep = bounds(seq, 2);
  EXPECT_EQ(rep.theta, 5_min);
  EXPECT_TRUE(rep.conformant);

  const auto lone = of_types({type("A", 10, 25, 1), type("q", 5, 0, 3)});
  const auto s1 = algorithm1(expand_block(lone));
  EXPECT_EQ(closed_form_wait(s1), Duration());
  EXPECT_EQ(wait_bound_block(s1), Duration());

  const auto same = of_types({type("A", 10, 10, 3)});
  EXPECT_EQ(closed_form_wait(algorithm1(expand_block(same))), Duration());
}

TEST(ClosedFormProperty, MatchesEvaluatedAlgorithmOneWait) {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto inst = testing_support::random_instance(g, 12);
    const auto seq = algorithm1(expand_block(inst));
    const auto ev = at_means(pa_continuous(seq));
    ASSERT_EQ(closed_form_wait(seq), ev.wait()) << trial;
  }
}

TEST(BoundsProperty, BracketRealizedWaits) {
  std::mt19937_64 g(8);
  for (int trial = 0; trial < 1000; ++trial) {
    auto inst = testing_support::random_instance(g, 12);
    inst.blocks = 1 + trial % 3;
    const auto seq = algorithm1(expand_block(inst));
    const auto rep = bounds(seq, inst.blocks);
    const Duration w1 = at_means(pa_continuous(seq)).wait();
    EXPECT_LE(w1, rep.block_bound);
    if (inst.q_count() + 2 <= inst.block_size()) EXPECT_GE(w1, rep.gamma1 - rep.gamma2);
    if (balance_workload(inst).identity()) {
      const Duration w3 = at_means(algorithm3(inst)).wait();
      EXPECT_LE(w3, rep.horizon_bound);
    }
  }
}

// Every front ordering that keeps λ descending is tried; Algorithm 1's
// tie rule must reach the smallest wait among them.
TEST(TieOrderProperty, AlgorithmOneFrontIsBestAmongDescendingOrders) {
  std::mt19937_64 g(31);
  std::uniform_int_distribution<int> lam(1, 3), extra(0, 30), count(2, 6);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<PatientTypeSpec> types;
    const int n = count(g);
    for (int i = 0; i < n; ++i) {
      const double l = 10.0 * lam(g);  // few distinct values, many ties
      types.push_back(type("P" + std::to_string(i), l, l + extra(g), 1));
    }
    const auto inst = of_types(types);
    const auto seq = algorithm1(expand_block(inst));
    const Duration best = at_means(pa_continuous(seq)).wait();

    std::vector<std::size_t> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Duration oracle = Duration::from_ticks(1e12);
    do {
      bool descending = true;
      for (int i = 1; i < n; ++i) descending = descending && types[perm[i - 1]].lambda_mean >= types[perm[i]].lambda_mean;
      if (!descending) continue;
      PatientList block;
      for (std::size_t t : perm) block.push_back({t, types[t].lambda_mean, types[t].mu_mean, true});
      oracle = min(oracle, at_means(pa_continuous(to_sequence(block))).wait());
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(best, oracle) << trial;
  }
}

TEST(Algorithm2Property, NoWorseThanAlgorithmOne) {
  std::mt19937_64 g(12);
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = testing_support::random_instance(g, 12);
    const auto e1 = at_means(pa_continuous(algorithm1(expand_block(inst))));
    const auto e2 = at_means(algorithm2(expand_block(inst)));
    EXPECT_LE(e2.wait(), e1.wait()) << trial;
    EXPECT_EQ(e1.idle_a, Duration());
    EXPECT_EQ(e2.idle_a, Duration());
  }
}

TEST(Robustness, ExampleOneThreshold) {
  const auto inst = fixture("ex1.json");
  const auto seq = algorithm1(expand_block(inst));
  EXPECT_EQ(w_threshold(seq), 0.5);
  const auto tpl = robust_template(seq, 0.5);
  const double expected[] = {0, 15, 26.25, 37.5, 48.75};
  for (std::size_t t = 0; t < 5; ++t) EXPECT_DOUBLE_EQ(tpl.tau[t].minutes(), expected[t]);

  const auto equal = of_types({type("A", 10, 10, 3), type("q", 5, 0, 1)});
  EXPECT_EQ(w_threshold(algorithm1(expand_block(equal))), 0.0);
}

TEST(RobustnessProperty, NoPhysicianIdleUpToThreshold) {
  std::mt19937_64 g(17);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = testing_support::random_instance(g, 10);
    const auto seq = algorithm1(expand_block(inst));
    const double w_star = w_threshold(seq);
    for (const double w : {w_star, w_star / 2}) {
      if (w <= 0) continue;
      const auto tpl = robust_template(seq, w);
      const ScenarioSet set(inst.types, DistributionSpec{Family::uniform_width, w}, 1000,
                            StreamKey{static_cast<std::uint64_t>(trial), 1, 0});
      for (std::size_t s = 0; s < set.size(); ++s)
        ASSERT_LE(evaluate(tpl, set.realize(tpl, s), inst.regular_time).idle_p.minutes(), 1e-9)
            << "trial " << trial << " w " << w << " path " << s;
    }
  }
}
