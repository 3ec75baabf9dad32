#ifndef BLOCKSCHED_SCENARIOS_HPP
#define BLOCKSCHED_SCENARIOS_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "blocksched/instance.hpp"
#include "blocksched/timeline.hpp"

namespace blocksched {

enum class Family { normal, uniform_width };

struct DistributionSpec {
  Family family = Family::normal;
  double width = 0.0;  // uniform_width: support [(1 - w/2) m, (1 + w/2) m]
};

struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t tag = 0;
  std::uint64_t replication = 0;
};

// K sample paths with weight 1/K each. Draws are keyed by
// (seed, tag, replication, scenario, block, type, copy, stage); the copy
// index is the occurrence count of that type within its block, so every
// template built from the same instance sees the same patient draws.
class ScenarioSet {
 public:
  ScenarioSet() = default;
  ScenarioSet(std::vector<PatientTypeSpec> types, DistributionSpec dist, std::size_t K, StreamKey key);

  std::size_t size() const { return K_; }
  double weight() const { return K_ ? 1.0 / static_cast<double>(K_) : 0.0; }
  const StreamKey& key() const { return key_; }
  const DistributionSpec& distribution() const { return dist_; }

  std::pair<Duration, Duration> draw(std::size_t scenario, std::size_t block, std::size_t type,
                                     std::size_t copy) const;
  ServiceRealization realize(const AppointmentTemplate& tpl, std::size_t scenario) const;

 private:
  Duration sample(std::size_t scenario, std::size_t block, std::size_t type, std::size_t copy,
                  int stage, Duration mean, Duration sd) const;

  std::vector<PatientTypeSpec> types_;
  DistributionSpec dist_;
  std::size_t K_ = 0;
  StreamKey key_;
};

ScenarioSet draw_scenarios(const ClinicInstance& inst, const DistributionSpec& dist, std::size_t K,
                           StreamKey key);

// Mean of max(0, X) for X ~ N(m, s); the clamped-normal oracle.
double clamped_normal_mean(double m, double s);

}  // namespace blocksched

#endif
