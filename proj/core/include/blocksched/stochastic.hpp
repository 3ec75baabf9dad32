#ifndef BLOCKSCHED_STOCHASTIC_HPP
#define BLOCKSCHED_STOCHASTIC_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "blocksched/exact.hpp"
#include "blocksched/instance.hpp"
#include "blocksched/scenarios.hpp"
#include "blocksched/timeline.hpp"

namespace blocksched {

// Two-sided critical value t_{df, 1-p/2}. Uses the three-decimal table for
// p = 0.05 and df <= 30, the Student-t quantile otherwise.
double t_quantile(std::size_t df, double p);

struct IntervalEstimate {
  double psi_bar = 0.0;
  double S2 = 0.0;  // (1/ν) Σ (ψ - ψ̄)²
  double h = 0.0;   // t · sqrt(S2 / (ν - 1))
  bool stop = false;
};

IntervalEstimate interval_estimate(const std::vector<double>& psi, double p, double xi);

// cross[x][v] is the cost of replication x's solution on scenario set v.
struct Tournament {
  std::size_t best = 0;
  std::vector<double> running_average;  // incumbent's u-replication average, u = 1..ν
};

Tournament incumbent_selection(const std::vector<std::vector<double>>& cross);

double average_cost(const AppointmentTemplate& tpl, const ScenarioSet& set, Duration R, const CostWeights& w,
                    Overtime ot);

enum class InnerSolver { exact, alg4 };

struct SAAConfig {
  std::size_t K = 15;
  std::size_t nu0 = 5;
  std::size_t nu_max = 10;
  double xi = 0.04;
  double p = 0.05;
  std::size_t K_step = 5;
  std::size_t max_rounds = 3;
  DistributionSpec dist;
  Scope scope = Scope::block;
  SearchConfig search;
};

struct SAAResult {
  double psi_bar = 0.0;
  double h = 0.0;
  double S2 = 0.0;
  std::size_t replications_used = 0;
  std::size_t K = 0;
  std::size_t rounds = 0;
  std::vector<double> objectives;  // ψ_K^u of the final round
  Solution incumbent;
  std::size_t incumbent_replication = 0;
  std::vector<double> running_average;
  bool stopped = false;
  bool converged = false;
};

SAAResult saa_procedure(const ClinicInstance& inst, const CostWeights& w, const SAAConfig& config,
                        std::uint64_t seed, InnerSolver inner);

struct MetricStat {
  double mean = 0.0;
  double se = 0.0;
};

struct PathMetrics {
  double wait_a = 0, wait_p = 0, idle_a = 0, idle_p = 0, overtime_a = 0, overtime_p = 0, objective = 0;
  double wait() const { return wait_a + wait_p; }
};

struct MonteCarloResult {
  std::vector<PathMetrics> paths;
  MetricStat wait_a, wait_p, wait, idle_a, idle_p, overtime_a, overtime_p, objective;
};

using TemplateSource = std::function<AppointmentTemplate(std::size_t path)>;

// Paths come from `set`; passing the same set to several methods gives
// common random numbers.
MonteCarloResult evaluate_template_mc(const AppointmentTemplate& tpl, const ScenarioSet& set, Duration R,
                                      const CostWeights& w);
MonteCarloResult evaluate_template_mc(const TemplateSource& source, const ScenarioSet& set, Duration R,
                                      const CostWeights& w);
MonteCarloResult evaluate_template_mc(const AppointmentTemplate& tpl, const ClinicInstance& inst,
                                      const DistributionSpec& dist, std::size_t N, std::uint64_t seed,
                                      const CostWeights& w);

// Per-path differences a - b of one metric; `upper`/`lower` bound a 95% CI.
struct PairedDifference {
  double mean = 0.0, se = 0.0, lower = 0.0, upper = 0.0;
};

PairedDifference paired_difference(const MonteCarloResult& a, const MonteCarloResult& b,
                                   double (*metric)(const PathMetrics&));

StreamKey mc_key(std::uint64_t seed);

}  // namespace blocksched

#endif
