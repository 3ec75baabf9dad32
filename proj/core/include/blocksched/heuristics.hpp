#ifndef BLOCKSCHED_HEURISTICS_HPP
#define BLOCKSCHED_HEURISTICS_HPP

#include <random>
#include <string>
#include <vector>

#include "blocksched/instance.hpp"
#include "blocksched/timeline.hpp"

namespace blocksched {

// Q+ front by descending λ (ties: ascending μ, then list order); Q back by
// descending λ. A block without Q+ patients yields a warning.
Sequence algorithm1(const PatientList& block, std::vector<std::string>* warnings = nullptr);

// No-wait Q+ chain with Q patients packed first-fit into the PA gaps, then
// gaps closed. Times are PA-continuous from 0.
AppointmentTemplate algorithm2(const PatientList& block, std::vector<std::string>* warnings = nullptr);

// Horizon templates. Without an explicit BalanceResult the instance is
// balanced first; the overflow block, if any, is appended last.
AppointmentTemplate algorithm3(const ClinicInstance& inst);
AppointmentTemplate algorithm3(const ClinicInstance& inst, const BalanceResult& balance);
AppointmentTemplate algorithm4(const ClinicInstance& inst);
AppointmentTemplate algorithm4(const ClinicInstance& inst, const BalanceResult& balance);

AppointmentTemplate fcfa(const ClinicInstance& inst, std::mt19937_64& rng);

struct BoundReport {
  Duration closed_form_wait;
  Duration block_bound;
  Duration horizon_bound;
  Duration gamma1, gamma2, theta;
  bool conformant = true;
};

// All of these expect an Algorithm-1 ordered sequence; only its Q+ slots are used.
Duration closed_form_wait(const Sequence& sorted_block);
Duration wait_bound_block(const Sequence& sorted_block);
Duration wait_bound_horizon(const Sequence& sorted_block, int k);
BoundReport bounds(const Sequence& sorted_block, int k);

struct RobustnessReport {
  double w_star = 0.0;
  std::vector<double> prefix_limits;  // one per j = 1..r-v-1
  std::vector<Duration> robust_taus;  // at w_star
};

// With fewer than two Q+ patients no prefix constrains the width; w* is then
// reported as 2, the widest interval that stays nonnegative.
double w_threshold(const Sequence& sorted_block);
RobustnessReport robustness(const Sequence& sorted_block);
AppointmentTemplate robust_template(const Sequence& sorted_block, double w);

}  // namespace blocksched

#endif
