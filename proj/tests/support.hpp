#ifndef BLOCKSCHED_TESTS_SUPPORT_HPP
#define BLOCKSCHED_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <blocksched/instance.hpp>
#include <blocksched/timeline.hpp>

#include "blocksched_cli/io.hpp"

namespace testing_support {

using namespace blocksched;

inline std::string data_path(const std::string& name) { return std::string(BLOCKSCHED_DATA_DIR) + "/" + name; }

inline ClinicInstance fixture(const std::string& name) { return cli::load_instance(data_path(name)); }

inline std::vector<std::string> names(const ClinicInstance& inst, const Sequence& seq) {
  std::vector<std::string> out;
  for (const auto& s : seq) out.push_back(inst.types[s.type].name);
  return out;
}

inline PatientTypeSpec type(const std::string& name, double lambda, double mu, int ratio, double lsd = 0,
                            double msd = 0) {
  return {name, Duration::from_decimal(lambda), Duration::from_decimal(lsd), Duration::from_decimal(mu),
          Duration::from_decimal(msd), ratio};
}

// Two passes in plain minutes: first the PA line on its own, then the P line
// fed by PA finishes. Nothing is shared with evaluate().
struct OracleTotals {
  double wait = 0, idle_a = 0, idle_p = 0, ot_a = 0, ot_p = 0, pa_finish = 0, p_finish = 0;
};

inline OracleTotals oracle_replay(const std::vector<double>& tau, const std::vector<double>& lam,
                                  const std::vector<double>& mu, const std::vector<bool>& show, double R) {
  OracleTotals o;
  const std::size_t n = tau.size();
  std::vector<double> fa(n, -1.0);
  double free_a = -1e300, first_a = -1, last_a = 0, busy_a = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (!show[t]) continue;
    const double start = std::max(tau[t], free_a);
    o.wait += start - tau[t];
    fa[t] = start + lam[t];
    free_a = fa[t];
    if (first_a < 0) first_a = start;
    last_a = fa[t];
    busy_a += lam[t];
  }
  double free_p = -1e300, first_p = -1, last_p = 0, busy_p = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (!show[t] || mu[t] <= 0) continue;
    const double start = std::max(fa[t], free_p);
    o.wait += start - fa[t];
    free_p = start + mu[t];
    if (first_p < 0) first_p = start;
    last_p = free_p;
    busy_p += mu[t];
  }
  if (first_a >= 0) {
    o.idle_a = last_a - first_a - busy_a;
    o.ot_a = std::max(0.0, last_a - R);
    o.pa_finish = last_a;
  }
  if (first_p >= 0) {
    o.idle_p = last_p - first_p - busy_p;
    o.ot_p = std::max(0.0, last_p - R);
    o.p_finish = last_p;
  }
  return o;
}

inline OracleTotals oracle_replay(const AppointmentTemplate& tpl, const ServiceRealization& real, Duration R) {
  std::vector<double> tau, lam, mu;
  std::vector<bool> show;
  for (std::size_t t = 0; t < tpl.size(); ++t) {
    tau.push_back(tpl.tau[t].minutes());
    lam.push_back(real.lambda[t].minutes());
    mu.push_back(tpl.slots[t].q_plus ? real.mu[t].minutes() : 0.0);
    show.push_back(real.shows(t));
  }
  return oracle_replay(tau, lam, mu, show, R.minutes());
}

// Random instance on the tick grid. Q+ types get μ >= λ when `conformant`.
inline ClinicInstance random_instance(std::mt19937_64& g, int max_ratio_sum, bool conformant = true,
                                      int blocks = 1) {
  std::uniform_int_distribution<int> ticks(20, 300), ntypes(2, 5), coin(0, 1);
  ClinicInstance inst;
  inst.blocks = blocks;
  inst.regular_time = Duration::from_decimal(300);
  int budget = max_ratio_sum;
  const int m = ntypes(g);
  for (int i = 0; i < m && budget > 0; ++i) {
    const bool qp = i == 0 || coin(g);
    const Duration lam = Duration::from_ticks(ticks(g));
    Duration mu;
    if (qp) {
      mu = Duration::from_ticks(ticks(g));
      if (conformant && mu < lam) mu = lam + Duration::from_ticks(ticks(g) / 4);
    }
    const int r = std::uniform_int_distribution<int>(1, std::min(budget, 4))(g);
    budget -= r;
    inst.types.push_back({"T" + std::to_string(i + 1), lam, Duration(), mu, Duration(), r});
  }
  return inst;
}

}  // namespace testing_support

#endif
