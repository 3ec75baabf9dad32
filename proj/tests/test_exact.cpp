#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <blocksched/exact.hpp>
#include <blocksched/heuristics.hpp>
#include <blocksched/scenarios.hpp>
#include <blocksched/stochastic.hpp>

#include "support.hpp"

using namespace blocksched;
using namespace blocksched::literals;
using testing_support::fixture;
using testing_support::type;

namespace {

ClinicInstance of_types(std::vector<PatientTypeSpec> types, int blocks = 1, Duration R = 300_min) {
  ClinicInstance inst;
  inst.types = std::move(types);
  inst.regular_time = R;
  inst.blocks = blocks;
  return inst;
}

std::vector<std::size_t> composition(const ClinicInstance& inst) {
  std::vector<std::size_t> v;
  for (const auto& p : expand_block(inst)) v.push_back(p.type);
  return v;
}

// Brute force over distinct orders of one block; the objective comes from
// evaluate() on a PA-continuous template.
double brute_block(const ClinicInstance& inst, const CostWeights& w) {
  auto types = composition(inst);
  std::sort(types.begin(), types.end());
  bool any_qp = false;
  for (std::size_t t : types) any_qp = any_qp || inst.types[t].q_plus();
  double best = std::numeric_limits<double>::infinity();
  do {
    if (any_qp && !inst.types[types[0]].q_plus()) continue;
    PatientList block;
    for (std::size_t t : types) block.push_back({t, inst.types[t].lambda_mean, inst.types[t].mu_mean, inst.types[t].q_plus()});
    const auto tpl = pa_continuous(to_sequence(block));
    best = std::min(best, total_cost(evaluate(tpl, mean_realization(tpl.slots), Duration()), w, Overtime::exclude));
  } while (std::next_permutation(types.begin(), types.end()));
  return best;
}

SearchConfig mode(SearchMode m) {
  SearchConfig c;
  c.mode = m;
  return c;
}

}  // namespace

TEST(ExactBlock, ExampleOne) {
  const auto inst = fixture("ex1.json");
  const auto block = expand_block(inst);
  const CostWeights w{};
  const auto prob = make_block_problem(block, w);
  EXPECT_EQ(search_space_size(prob), 2240);
  const auto e = solve_block_exact(block, w, mode(SearchMode::enumerate));
  const auto b = solve_block_exact(block, w, mode(SearchMode::branch_and_bound));
  EXPECT_TRUE(e.optimal);
  EXPECT_TRUE(b.optimal);
  EXPECT_EQ(e.objective, b.objective);
  EXPECT_LE(b.objective, 90.0);
  EXPECT_LT(b.nodes, e.nodes);
  EXPECT_TRUE(b.tpl.slots[0].q_plus);
  EXPECT_EQ(b.objective, brute_block(inst, w));
}

TEST(ExactBlock, SinglePatient) {
  const auto inst = of_types({type("A", 10, 5, 1)});
  const auto s = solve_block_exact(expand_block(inst), CostWeights{}, SearchConfig{});
  EXPECT_EQ(s.objective, 0.0);
  EXPECT_EQ(s.tpl.size(), 1u);
}

TEST(ExactBlock, TwoQPlusPatients) {
  const auto inst = of_types({type("A", 10, 20, 1), type("B", 5, 5, 1)});
  const CostWeights w{};
  const auto s = solve_block_exact(expand_block(inst), w, SearchConfig{});
  EXPECT_EQ(s.objective, brute_block(inst, w));
  // [A, B]: B waits 30 - 15 = 15. [B, A]: nobody waits, P idles 5.
  EXPECT_EQ(s.objective, 5.0);
  EXPECT_EQ(s.tpl.slots[0].type, 1u);
}

TEST(ExactBlockProperty, ModesAgreeWithBruteForce) {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int trial = 0; trial < 150; ++trial) {
    const auto inst = testing_support::random_instance(g, 7, trial % 2 == 0);
    const CostWeights w{std::round(u(g) * 10) / 10, std::round(u(g) * 10) / 10, std::round(u(g) * 10) / 10, 1, 1};
    const auto block = expand_block(inst);
    const auto e = solve_block_exact(block, w, mode(SearchMode::enumerate));
    const auto b = solve_block_exact(block, w, mode(SearchMode::branch_and_bound));
    const double oracle = brute_block(inst, w);
    ASSERT_EQ(e.objective, b.objective) << trial;
    ASSERT_NEAR(b.objective, oracle, 1e-9) << trial;
    const auto tpl = b.tpl;
    EXPECT_NEAR(total_cost(evaluate(tpl, mean_realization(tpl.slots), Duration()), w, Overtime::exclude),
                b.objective, 1e-9);
  }
}

TEST(ExactBlockProperty, NoWorseThanBlockHeuristics) {
  std::mt19937_64 g(4);
  for (int trial = 0; trial < 150; ++trial) {
    const auto inst = testing_support::random_instance(g, 8);
    const CostWeights w{0.5, 1, 1, 1.5, 1.5};
    const auto block = expand_block(inst);
    const double exact = solve_block_exact(block, w, SearchConfig{}).objective;
    const auto a1 = pa_continuous(algorithm1(block));
    const auto a2 = algorithm2(block);
    EXPECT_LE(exact, total_cost(evaluate(a1, mean_realization(a1.slots), Duration()), w, Overtime::exclude) + 1e-9);
    EXPECT_LE(exact, total_cost(evaluate(a2, mean_realization(a2.slots), Duration()), w, Overtime::exclude) + 1e-9);
  }
}

TEST(ExactHorizon, SingleBlockWithAmpleTimeMatchesBlockSearch) {
  const auto inst = fixture("ex1.json");
  ClinicInstance k1 = inst;
  k1.blocks = 1;
  k1.regular_time = 1000_min;
  const CostWeights w{};
  EXPECT_EQ(solve_horizon_exact(k1, w, SearchConfig{}).objective,
            solve_block_exact(expand_block(inst), w, SearchConfig{}).objective);
}

TEST(ExactHorizon, TwoBlocksAgainstPairBruteForce) {
  const auto inst = of_types({type("A", 10, 25, 1), type("B", 15, 20, 1), type("q", 10, 0, 2)}, 2, 60_min);
  const CostWeights w{0.5, 1, 1, 1.5, 1.5};
  const auto prob = make_horizon_problem(inst, w);
  auto types = composition(inst);
  std::sort(types.begin(), types.end());
  std::vector<std::vector<std::size_t>> orders;
  do {
    if (inst.types[types[0]].q_plus()) orders.push_back(types);
  } while (std::next_permutation(types.begin(), types.end()));
  double oracle = std::numeric_limits<double>::infinity();
  for (const auto& a : orders)
    for (auto b : orders) {
      std::sort(b.begin(), b.end());
      do {
        std::vector<std::size_t> seq = a;
        seq.insert(seq.end(), b.begin(), b.end());
        for (const auto rule : {JunctionRule::pa_continuous, JunctionRule::p_continuous}) {
          const auto tpl = template_for(prob, seq, 0.0, rule);
          oracle = std::min(oracle, total_cost(evaluate(tpl, mean_realization(tpl.slots), inst.regular_time), w));
        }
      } while (std::next_permutation(b.begin(), b.end()));
    }
  const auto e = solve_horizon_exact(inst, w, mode(SearchMode::enumerate));
  const auto b = solve_horizon_exact(inst, w, mode(SearchMode::branch_and_bound));
  EXPECT_NEAR(e.objective, oracle, 1e-9);
  EXPECT_EQ(e.objective, b.objective);
}

TEST(ExactHorizon, PContinuousJunctionReproducesAlgorithmFour) {
  for (const int k : {2, 3}) {
    auto inst = fixture("ex1.json");
    inst.blocks = k;
    const auto a4 = algorithm4(inst);
    const auto prob = make_horizon_problem(inst, inst.costs);
    std::vector<std::size_t> types;
    for (const auto& s : a4.slots) types.push_back(s.type);
    EXPECT_EQ(template_for(prob, types, 0.0, JunctionRule::p_continuous).tau, a4.tau) << k;
    EXPECT_EQ(sequence_objective(prob, types),
              std::min(total_cost(evaluate(a4, mean_realization(a4.slots), inst.regular_time), inst.costs),
                       total_cost(evaluate(template_for(prob, types), mean_realization(a4.slots), inst.regular_time),
                                  inst.costs)))
        << k;
  }
}

TEST(LowerBound, AdmissibleOnRandomPrefixes) {
  std::mt19937_64 g(21);
  for (int trial = 0; trial < 60; ++trial) {
    auto inst = testing_support::random_instance(g, 7);
    inst.regular_time = Duration::from_decimal(60);
    const CostWeights w{0.7, 1, 1, 1.2, 1.8};
    const auto prob = make_horizon_problem(inst, w);
    auto types = composition(inst);
    std::sort(types.begin(), types.end());
    std::vector<std::vector<std::size_t>> all;
    do {
      if (inst.types[types[0]].q_plus()) all.push_back(types);
    } while (std::next_permutation(types.begin(), types.end()));
    const std::size_t n = types.size();
    EXPECT_EQ(node_lower_bound(prob, all.front()), sequence_objective(prob, all.front()));
    const auto& pick = all[g() % all.size()];
    for (std::size_t d = 0; d <= n; ++d) {
      const std::vector<std::size_t> prefix(pick.begin(), pick.begin() + static_cast<long>(d));
      double best = std::numeric_limits<double>::infinity();
      for (const auto& s : all)
        if (std::equal(prefix.begin(), prefix.end(), s.begin())) best = std::min(best, sequence_objective(prob, s));
      EXPECT_LE(node_lower_bound(prob, prefix), best + 1e-9) << trial << " depth " << d;
    }
  }
  const auto ex1 = fixture("ex1.json");
  EXPECT_EQ(node_lower_bound(make_block_problem(expand_block(ex1), CostWeights{}), {}), 0.0);
}

TEST(ExactDeterministic, EarlierAppointmentsNeverHelp) {
  const auto inst = fixture("ex1.json");
  const CostWeights w{};
  const auto s = solve_block_exact(expand_block(inst), w, SearchConfig{});
  const double base = total_cost(evaluate(s.tpl, mean_realization(s.tpl.slots), Duration()), w, Overtime::exclude);
  for (std::size_t t = 1; t < s.tpl.size(); ++t)
    for (const double cut : {0.1, 1.0, 5.0}) {
      auto tpl = s.tpl;
      tpl.tau[t] = tpl.tau[t] - Duration::from_decimal(cut);
      EXPECT_GE(total_cost(evaluate(tpl, mean_realization(tpl.slots), Duration()), w, Overtime::exclude), base);
    }
}

TEST(ExactLimits, NodeLimitClearsOptimalFlag) {
  SearchConfig c;
  c.node_limit = 12;  // enough for the first dive to a leaf, not for the proof
  const auto s = solve_block_exact(expand_block(fixture("ex1.json")), CostWeights{}, c);
  EXPECT_FALSE(s.optimal);
  EXPECT_EQ(s.tpl.size(), 9u);
}

TEST(ExactSaa, MeanScenarioEqualsDeterministicSearch) {
  const auto inst = fixture("ex1.json");  // all sd = 0
  const CostWeights w{0.4, 1, 1, 1.2, 1.2};
  const auto set = draw_scenarios(inst, DistributionSpec{}, 1, StreamKey{1, 2, 3});
  EXPECT_EQ(solve_saa_replication(inst, w, set, SearchConfig{}).objective,
            solve_block_exact(expand_block(inst), w, SearchConfig{}).objective);
}

TEST(ExactSaa, SymmetricPerturbationCostsAtLeastTheMean) {
  const auto inst = of_types({type("A", 20, 25, 1), type("B", 15, 35, 2), type("q", 10, 0, 2)});
  const CostWeights w{};
  auto prob = make_scenario_problem(inst, w, draw_scenarios(inst, DistributionSpec{}, 2, StreamKey{}), Scope::block,
                                    TauRule::earliest);
  const auto det = solve(prob, SearchConfig{});
  // Stretch one B patient by ±5 in the two scenarios.
  const std::size_t i0 = prob.index(0, 0, 1, 0), i1 = prob.index(1, 0, 1, 0);
  prob.mu[i0] = prob.mu[i0] + 5_min;
  prob.mu[i1] = prob.mu[i1] - 5_min;
  EXPECT_GE(solve(prob, SearchConfig{}).objective, det.objective);
}

TEST(ExactSaa, UniformScenariosAgainstBruteForce) {
  const auto inst = fixture("ex1.json");
  const CostWeights w{};
  const auto set = draw_scenarios(inst, DistributionSpec{Family::uniform_width, 0.2}, 5, StreamKey{42, 7, 0});
  for (const TauRule rule : {TauRule::earliest, TauRule::quantile_grid}) {
    const auto prob = make_scenario_problem(inst, w, set, Scope::block, rule);
    auto types = composition(inst);
    std::sort(types.begin(), types.end());
    double oracle = std::numeric_limits<double>::infinity();
    const std::vector<double> grid = rule == TauRule::earliest ? std::vector<double>{0.0}
                                                               : std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    do {
      if (!inst.types[types[0]].q_plus()) continue;
      for (const double q : grid) {
        const auto tpl = template_for(prob, types, q);
        oracle = std::min(oracle, average_cost(tpl, set, Duration(), w, Overtime::exclude));
      }
    } while (std::next_permutation(types.begin(), types.end()));
    SearchConfig c;
    c.tau_rule = rule;
    const auto s = solve(prob, c);
    EXPECT_NEAR(s.objective, oracle, 1e-9);
    EXPECT_NEAR(average_cost(s.tpl, set, Duration(), w, Overtime::exclude), s.objective, 1e-9);
  }
}
