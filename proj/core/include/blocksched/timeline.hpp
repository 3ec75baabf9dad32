#ifndef BLOCKSCHED_TIMELINE_HPP
#define BLOCKSCHED_TIMELINE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "blocksched/duration.hpp"
#include "blocksched/instance.hpp"

namespace blocksched {

struct Slot {
  std::size_t type = 0;
  Duration lambda_mean;
  Duration mu_mean;
  bool q_plus = false;
  std::size_t block = 0;
};

using Sequence = std::vector<Slot>;

Sequence to_sequence(const PatientList& patients, std::size_t block = 0);

struct AppointmentTemplate {
  Sequence slots;
  std::vector<Duration> tau;

  std::size_t size() const { return slots.size(); }
  std::size_t block_count() const { return slots.empty() ? 0 : slots.back().block + 1; }
};

// τ_t = sum of mean λ over earlier slots, starting at `start`.
std::vector<Duration> prefix_taus(const Sequence& seq, Duration start = Duration());
AppointmentTemplate pa_continuous(Sequence seq);

struct ServiceRealization {
  std::vector<Duration> lambda;
  std::vector<Duration> mu;
  std::vector<std::uint8_t> show;  // empty means everyone shows

  bool shows(std::size_t t) const { return show.empty() || show[t] != 0; }
};

ServiceRealization mean_realization(const Sequence& seq);

struct SlotTimes {
  Duration e_a, f_a, e_p, f_p;
  Duration w_a, w_p;
  Duration gap_a, gap_p;  // idle immediately before this slot's start
  bool shown = true;
};

struct ScheduleEvaluation {
  std::vector<SlotTimes> slots;
  Duration wait_a, wait_p;
  Duration idle_a, idle_p;
  Duration busy_a, busy_p;
  Duration first_start_a, last_finish_a;
  Duration first_start_p, last_finish_p;
  bool any_a = false, any_p = false;
  Duration overtime_a, overtime_p;
  Duration completion;

  Duration wait() const { return wait_a + wait_p; }
};

ScheduleEvaluation evaluate(const AppointmentTemplate& tpl, const ServiceRealization& real, Duration R);

enum class Overtime { include, exclude };

double total_cost(const ScheduleEvaluation& ev, const CostWeights& w, Overtime ot = Overtime::include);
// The same combination from raw metric totals; search code uses it so that
// its objectives match total_cost bit for bit.
double weighted_cost(const CostWeights& w, Duration wait, Duration idle_a, Duration idle_p,
                     Duration overtime_a, Duration overtime_p, Overtime ot = Overtime::include);

struct BlockSections {
  Duration head, body, tail, completion;
};

std::vector<BlockSections> sections(const ScheduleEvaluation& ev, const AppointmentTemplate& tpl);

enum class JunctionRule {
  p_continuous,   // next block's first P start meets the previous P finish (Algorithms 3/4)
  pa_continuous,  // blocks back to back on the PA timeline (FCFA)
};

// Each input is a single block with block-local, mean-based times starting at 0.
AppointmentTemplate concatenate(const std::vector<AppointmentTemplate>& blocks, JunctionRule rule);
AppointmentTemplate concatenate(const AppointmentTemplate& block, int k, JunctionRule rule);

}  // namespace blocksched

#endif
