#ifndef BLOCKSCHED_NOSHOW_HPP
#define BLOCKSCHED_NOSHOW_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "blocksched/instance.hpp"
#include "blocksched/timeline.hpp"

namespace blocksched {

using Rational = boost::multiprecision::cpp_rational;

// Exact value of a decimal input such as 0.3 (rounded to 1e-6 first).
Rational decimal_rational(double x);
double to_double(const Rational& q);

struct NoShowProbs {
  double p_plus = 0.0;  // Q+ patients
  double p = 0.0;       // Q patients
};

enum class OverbookStrategy { none, level_front, full_front };

struct OverbookEntry {
  std::size_t slot = 0;
  int duplicates = 0;
};

struct OverbookPlan {
  AppointmentTemplate base;
  std::vector<OverbookEntry> entries;
  OverbookStrategy strategy = OverbookStrategy::none;
  int e_plus = 0;
  int e = 0;

  // Base slots with duplicates inserted right after their host, sharing τ.
  AppointmentTemplate expanded() const;
  std::size_t scheduled() const;
};

OverbookPlan build_overbook_plan(const AppointmentTemplate& base, OverbookStrategy strategy,
                                 const NoShowProbs& probs);

struct ExpectedMetrics {
  Rational wait, idle_a, idle_p, overtime_a, overtime_p;  // minutes
  Rational mass;
  std::uint64_t paths = 0;

  double wait_d() const { return to_double(wait); }
  double idle_a_d() const { return to_double(idle_a); }
  double idle_p_d() const { return to_double(idle_p); }
  double overtime_a_d() const { return to_double(overtime_a); }
  double overtime_p_d() const { return to_double(overtime_p); }
};

constexpr std::size_t kEnumerationCap = 24;

// Sums over every show pattern of the expanded plan. Requires grid-aligned
// appointment and service times so per-path metrics are exact integers in
// ticks; probabilities are exact rationals.
ExpectedMetrics enumerate_expected_metrics(const OverbookPlan& plan, Duration R, const NoShowProbs& probs,
                                           std::size_t cap = kEnumerationCap);

Rational expected_cost_per_patient_exact(const ExpectedMetrics& m, const CostWeights& w, std::size_t n_scheduled);
double expected_cost_per_patient(const ExpectedMetrics& m, const CostWeights& w, std::size_t n_scheduled);

// Monte-Carlo fallback above the cap: Bernoulli show flags over mean service times.
struct NoShowSample {
  double wait = 0, idle_a = 0, idle_p = 0, overtime_a = 0, overtime_p = 0;
  std::size_t paths = 0;
};
NoShowSample sample_expected_metrics(const OverbookPlan& plan, Duration R, const NoShowProbs& probs,
                                     std::size_t N, std::uint64_t seed);

}  // namespace blocksched

#endif
