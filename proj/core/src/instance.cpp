#include "blocksched/instance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace blocksched {

int ClinicInstance::block_size() const {
  int r = 0;
  for (const auto& t : types) r += t.ratio;
  return r;
}

int ClinicInstance::q_count() const {
  int v = 0;
  for (const auto& t : types)
    if (!t.q_plus()) v += t.ratio;
  return v;
}

ValidationReport validate_instance(const ClinicInstance& inst) {
  ValidationReport rep;
  if (inst.types.empty()) rep.errors.push_back("no patient types");
  for (std::size_t i = 0; i < inst.types.size(); ++i) {
    const auto& t = inst.types[i];
    const std::string where = "types[" + std::to_string(i) + "] (" + t.name + "): ";
    if (t.lambda_mean <= Duration()) rep.errors.push_back(where + "nonpositive stage-1 time");
    if (t.ratio < 1) rep.errors.push_back(where + "ratio < 1");
    if (t.lambda_sd < Duration() || t.mu_sd < Duration() || t.mu_mean < Duration())
      rep.errors.push_back(where + "negative time value");
    if (t.mu_mean == Duration() && t.mu_sd > Duration())
      rep.errors.push_back(where + "mu_sd > 0 with mu_mean = 0");
    if (!t.conformant()) rep.warnings.push_back(where + "mu < lambda for a Q+ type");
  }
  const CostWeights& c = inst.costs;
  if (c.alpha < 0 || c.beta_a < 0 || c.beta_p < 0 || c.o_a < 0 || c.o_p < 0)
    rep.errors.push_back("negative cost weight");
  if (inst.blocks < 1) rep.errors.push_back("blocks < 1");
  if (inst.regular_time < Duration()) rep.errors.push_back("negative regular_time");
  if (rep.ok()) {
    const Workloads w = workloads(inst);
    if (w.pa > w.p) {
      std::ostringstream os;
      os << "L_a=" << w.pa.minutes() << " > L_p=" << w.p.minutes() << "; run balance";
      rep.warnings.push_back(os.str());
    }
  }
  return rep;
}

void require_valid(const ClinicInstance& inst) {
  const auto rep = validate_instance(inst);
  if (!rep.ok()) throw std::invalid_argument("invalid instance: " + rep.errors.front());
}

PatientList expand_block(const ClinicInstance& inst, const std::vector<int>& ratios) {
  PatientList out;
  for (std::size_t i = 0; i < inst.types.size(); ++i) {
    const auto& t = inst.types[i];
    for (int c = 0; c < ratios[i]; ++c) out.push_back({i, t.lambda_mean, t.mu_mean, t.q_plus()});
  }
  return out;
}

PatientList expand_block(const ClinicInstance& inst) {
  std::vector<int> ratios;
  for (const auto& t : inst.types) ratios.push_back(t.ratio);
  return expand_block(inst, ratios);
}

Workloads workloads(const ClinicInstance& inst, const std::vector<int>& ratios) {
  Workloads w;
  for (std::size_t i = 0; i < inst.types.size(); ++i) {
    w.pa += inst.types[i].lambda_mean * ratios[i];
    w.p += inst.types[i].mu_mean * ratios[i];
  }
  return w;
}

Workloads workloads(const ClinicInstance& inst) {
  std::vector<int> ratios;
  for (const auto& t : inst.types) ratios.push_back(t.ratio);
  return workloads(inst, ratios);
}

BalanceResult balance_workload(const ClinicInstance& inst) {
  BalanceResult res;
  for (const auto& t : inst.types) res.reduced_ratios.push_back(t.ratio);
  Workloads w = workloads(inst);
  res.initial_L_a = w.pa;
  res.initial_L_p = w.p;
  auto& u = res.reduced_ratios;
  while (w.pa > w.p) {
    std::size_t best = inst.types.size();
    for (std::size_t i = 0; i < inst.types.size(); ++i) {
      if (inst.types[i].q_plus() || u[i] == 0) continue;
      if (best == inst.types.size() || u[i] > u[best] ||
          (u[i] == u[best] && inst.types[i].lambda_mean > inst.types[best].lambda_mean))
        best = i;
    }
    if (best == inst.types.size()) {
      res.unbalanceable = true;
      break;
    }
    --u[best];
    res.overflow.push_back(best);
    w.pa -= inst.types[best].lambda_mean;
  }
  res.final_L_a = w.pa;
  res.final_L_p = w.p;
  return res;
}

PatientList overflow_block(const ClinicInstance& inst, const BalanceResult& balance) {
  std::vector<std::size_t> chunk = balance.overflow;
  std::stable_sort(chunk.begin(), chunk.end(), [&](std::size_t a, std::size_t b) {
    if (inst.types[a].lambda_mean != inst.types[b].lambda_mean)
      return inst.types[a].lambda_mean > inst.types[b].lambda_mean;
    return a < b;
  });
  PatientList out;
  for (int c = 0; c < inst.blocks; ++c)
    for (std::size_t i : chunk) {
      const auto& t = inst.types[i];
      out.push_back({i, t.lambda_mean, t.mu_mean, t.q_plus()});
    }
  return out;
}

long long round_half_away(double x) {
  // Products such as 0.3 * 5 land a hair below the half; snap first.
  x = std::round(x * 1e9) / 1e9;
  return static_cast<long long>(x < 0 ? -std::floor(-x + 0.5) : std::floor(x + 0.5));
}

}  // namespace blocksched
