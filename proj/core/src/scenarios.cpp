#include "blocksched/scenarios.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "blocksched/random.hpp"

namespace blocksched {

ScenarioSet::ScenarioSet(std::vector<PatientTypeSpec> types, DistributionSpec dist, std::size_t K,
                         StreamKey key)
    : types_(std::move(types)), dist_(dist), K_(K), key_(key) {}

Duration ScenarioSet::sample(std::size_t scenario, std::size_t block, std::size_t type,
                             std::size_t copy, int stage, Duration mean, Duration sd) const {
  const std::uint64_t h = hash_coords(key_.seed, {key_.tag, key_.replication, scenario, block, type,
                                                  copy, static_cast<std::uint64_t>(stage)});
  if (dist_.family == Family::uniform_width) {
    const Duration lo = mean * (1.0 - dist_.width / 2.0);
    const Duration hi = mean * (1.0 + dist_.width / 2.0);
    return lo + (hi - lo) * uniform_open(h);
  }
  if (sd == Duration()) return mean;
  return positive_part(mean + sd * standard_normal(h));
}

std::pair<Duration, Duration> ScenarioSet::draw(std::size_t scenario, std::size_t block,
                                                std::size_t type, std::size_t copy) const {
  const PatientTypeSpec& t = types_.at(type);
  const Duration lam = sample(scenario, block, type, copy, 0, t.lambda_mean, t.lambda_sd);
  const Duration mu = t.q_plus() ? sample(scenario, block, type, copy, 1, t.mu_mean, t.mu_sd) : Duration();
  return {lam, mu};
}

ServiceRealization ScenarioSet::realize(const AppointmentTemplate& tpl, std::size_t scenario) const {
  ServiceRealization r;
  r.lambda.reserve(tpl.size());
  r.mu.reserve(tpl.size());
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  for (const Slot& s : tpl.slots) {
    const std::size_t copy = seen[{s.block, s.type}]++;
    const auto [lam, mu] = draw(scenario, s.block, s.type, copy);
    r.lambda.push_back(lam);
    r.mu.push_back(s.q_plus ? mu : Duration());
  }
  return r;
}

ScenarioSet draw_scenarios(const ClinicInstance& inst, const DistributionSpec& dist, std::size_t K,
                           StreamKey key) {
  return ScenarioSet(inst.types, dist, K, key);
}

double clamped_normal_mean(double m, double s) {
  if (s <= 0) return std::max(0.0, m);
  const double z = m / s;
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  return m * cdf + s * pdf;
}

}  // namespace blocksched
