#ifndef BLOCKSCHED_EXACT_HPP
#define BLOCKSCHED_EXACT_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "blocksched/instance.hpp"
#include "blocksched/scenarios.hpp"
#include "blocksched/timeline.hpp"

namespace blocksched {

enum class SearchMode { enumerate, branch_and_bound };
enum class TauRule { earliest, quantile_grid };
enum class Scope { block, horizon };

struct SearchConfig {
  std::uint64_t node_limit = 200'000'000;
  double time_limit = 600.0;  // seconds
  SearchMode mode = SearchMode::branch_and_bound;
  TauRule tau_rule = TauRule::earliest;
};

struct Solution {
  AppointmentTemplate tpl;
  double objective = 0.0;
  bool optimal = false;
  std::uint64_t nodes = 0;
  double quantile = 0.0;  // chosen grid point under TauRule::quantile_grid
  JunctionRule junction = JunctionRule::pa_continuous;
};

// Search over distinct multiset permutations, block by block. Each scenario
// carries its own service times; τ is shared across scenarios. With a single
// mean scenario and TauRule::earliest, τ equals the mean PA prefix sums, so
// PA never waits for an appointment (τ = e_a). With junction_choice, later
// blocks may instead start late enough that P runs on without a gap, and the
// search keeps the cheaper of the two junction rules.
struct SearchProblem {
  struct TypeInfo {
    Duration lambda_mean, mu_mean;
    bool q_plus = false;
  };
  std::vector<TypeInfo> types;
  std::vector<std::vector<int>> block_counts;  // [block][type]
  std::size_t scenarios = 1;
  // Realized times, flat: [scenario][block][type][copy] through offset().
  std::vector<Duration> lambda, mu;
  std::vector<std::vector<std::size_t>> offsets;  // [block][type] start of copies
  std::size_t per_scenario = 0;
  CostWeights weights;
  Duration R;
  Overtime overtime = Overtime::exclude;
  TauRule tau_rule = TauRule::earliest;
  bool junction_choice = false;  // only honoured for one scenario under TauRule::earliest

  std::size_t index(std::size_t s, std::size_t block, std::size_t type, std::size_t copy) const {
    return s * per_scenario + offsets[block][type] + copy;
  }
  std::size_t slots() const;
};

SearchProblem make_block_problem(const PatientList& block, const CostWeights& w);
SearchProblem make_horizon_problem(const ClinicInstance& inst, const CostWeights& w);
SearchProblem make_scenario_problem(const ClinicInstance& inst, const CostWeights& w, const ScenarioSet& set,
                                    Scope scope, TauRule rule);

Solution solve(const SearchProblem& prob, const SearchConfig& config);

// Objective of a complete type sequence, and the admissible bound of a prefix.
double sequence_objective(const SearchProblem& prob, const std::vector<std::size_t>& types);
double node_lower_bound(const SearchProblem& prob, const std::vector<std::size_t>& prefix);

// Template that the search would emit for a complete type sequence.
AppointmentTemplate template_for(const SearchProblem& prob, const std::vector<std::size_t>& types,
                                 double quantile = 0.0, JunctionRule junction = JunctionRule::pa_continuous);

Solution solve_block_exact(const PatientList& block, const CostWeights& w, const SearchConfig& config);
Solution solve_horizon_exact(const ClinicInstance& inst, const CostWeights& w, const SearchConfig& config);
Solution solve_saa_replication(const ClinicInstance& inst, const CostWeights& w, const ScenarioSet& set,
                               const SearchConfig& config, Scope scope = Scope::block);

// Count of distinct sequences the search space holds (Q+ first in block 1).
double search_space_size(const SearchProblem& prob);

}  // namespace blocksched

#endif
