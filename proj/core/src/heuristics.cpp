#include "blocksched/heuristics.hpp"

#include <algorithm>

namespace blocksched {

namespace {

void split_groups(const PatientList& block, PatientList& front, PatientList& back) {
  for (const auto& p : block) (p.q_plus ? front : back).push_back(p);
}

void sort_front(PatientList& front) {
  std::stable_sort(front.begin(), front.end(), [](const PatientRecord& a, const PatientRecord& b) {
    if (a.lambda_mean != b.lambda_mean) return a.lambda_mean > b.lambda_mean;
    return a.mu_mean < b.mu_mean;
  });
}

Sequence front_of(const Sequence& seq) {
  Sequence f;
  for (const auto& s : seq)
    if (s.q_plus) f.push_back(s);
  return f;
}

PatientList balanced_block(const ClinicInstance& inst, const BalanceResult& balance) {
  return expand_block(inst, balance.reduced_ratios);
}

AppointmentTemplate build_horizon(const ClinicInstance& inst, const BalanceResult& balance,
                                  const AppointmentTemplate& block) {
  std::vector<AppointmentTemplate> parts(static_cast<std::size_t>(inst.blocks), block);
  if (!balance.overflow.empty())
    parts.push_back(pa_continuous(to_sequence(overflow_block(inst, balance))));
  return concatenate(parts, JunctionRule::p_continuous);
}

}  // namespace

Sequence algorithm1(const PatientList& block, std::vector<std::string>* warnings) {
  PatientList front, back;
  split_groups(block, front, back);
  if (front.empty() && warnings) warnings->push_back("block has no Q+ patient; slot 1 holds a Q patient");
  sort_front(front);
  std::stable_sort(back.begin(), back.end(), [](const PatientRecord& a, const PatientRecord& b) {
    return a.lambda_mean > b.lambda_mean;
  });
  front.insert(front.end(), back.begin(), back.end());
  return to_sequence(front);
}

AppointmentTemplate algorithm2(const PatientList& block, std::vector<std::string>* warnings) {
  PatientList front, back;
  split_groups(block, front, back);
  sort_front(front);
  std::stable_sort(back.begin(), back.end(), [](const PatientRecord& a, const PatientRecord& b) {
    return a.lambda_mean < b.lambda_mean;
  });
  if (front.empty()) {
    if (warnings) warnings->push_back("block has no Q+ patient; Q patients listed by ascending lambda");
    return pa_continuous(to_sequence(back));
  }

  // No-wait chain: each Q+ starts PA as late as lets it step straight into P.
  std::vector<Duration> gap(front.size() > 1 ? front.size() - 1 : 0);
  Duration f_a = front[0].lambda_mean;
  Duration f_p = f_a + front[0].mu_mean;
  for (std::size_t j = 1; j < front.size(); ++j) {
    const Duration start = max(f_a, f_p - front[j].lambda_mean);
    gap[j - 1] = start - f_a;
    f_a = start + front[j].lambda_mean;
    f_p = max(f_a, f_p) + front[j].mu_mean;
  }

  std::vector<PatientList> placed(gap.size());
  PatientList leftover;
  for (const auto& q : back) {
    auto it = std::find_if(gap.begin(), gap.end(), [&](Duration g) { return g >= q.lambda_mean; });
    if (it == gap.end()) {
      leftover.push_back(q);
      continue;
    }
    *it -= q.lambda_mean;
    placed[static_cast<std::size_t>(it - gap.begin())].push_back(q);
  }

  PatientList order;
  for (std::size_t j = 0; j < front.size(); ++j) {
    order.push_back(front[j]);
    if (j < placed.size()) order.insert(order.end(), placed[j].begin(), placed[j].end());
  }
  order.insert(order.end(), leftover.begin(), leftover.end());
  return pa_continuous(to_sequence(order));
}

AppointmentTemplate algorithm3(const ClinicInstance& inst, const BalanceResult& balance) {
  return build_horizon(inst, balance, pa_continuous(algorithm1(balanced_block(inst, balance))));
}

AppointmentTemplate algorithm3(const ClinicInstance& inst) { return algorithm3(inst, balance_workload(inst)); }

AppointmentTemplate algorithm4(const ClinicInstance& inst, const BalanceResult& balance) {
  return build_horizon(inst, balance, algorithm2(balanced_block(inst, balance)));
}

AppointmentTemplate algorithm4(const ClinicInstance& inst) { return algorithm4(inst, balance_workload(inst)); }

AppointmentTemplate fcfa(const ClinicInstance& inst, std::mt19937_64& rng) {
  const PatientList block = expand_block(inst);
  std::vector<AppointmentTemplate> parts;
  for (int c = 0; c < inst.blocks; ++c) {
    PatientList perm = block;
    std::shuffle(perm.begin(), perm.end(), rng);
    parts.push_back(pa_continuous(to_sequence(perm)));
  }
  return concatenate(parts, JunctionRule::pa_continuous);
}

Duration closed_form_wait(const Sequence& sorted_block) {
  const Sequence f = front_of(sorted_block);
  const std::size_t g = f.size();
  Duration w;
  for (std::size_t j = 1; j < g; ++j)
    w += (f[j - 1].mu_mean - f[j].lambda_mean) * static_cast<double>(g - j);
  return w;
}

Duration wait_bound_block(const Sequence& sorted_block) {
  const Sequence f = front_of(sorted_block);
  const std::size_t g = f.size();
  if (g <= 1) return Duration();
  Duration g1 = f[0].mu_mean;
  for (std::size_t j = 0; j + 1 < g; ++j) g1 = max(g1, f[j].mu_mean);
  Duration g2 = f[1].lambda_mean;
  for (std::size_t j = 1; j < g; ++j) g2 = min(g2, f[j].lambda_mean);
  return (g1 - g2) * (static_cast<double>(g * (g - 1)) / 2.0);
}

namespace {
Duration theta_of(const Sequence& sorted_block) {
  Duration mu, lam;
  for (const auto& s : sorted_block) {
    lam += s.lambda_mean;
    if (s.q_plus) mu += s.mu_mean;
  }
  return positive_part(mu - lam);
}
}  // namespace

Duration wait_bound_horizon(const Sequence& sorted_block, int k) {
  const double g = static_cast<double>(front_of(sorted_block).size());
  const double kk = static_cast<double>(k);
  return wait_bound_block(sorted_block) * kk + theta_of(sorted_block) * (kk * (kk - 1) * g / 2.0);
}

BoundReport bounds(const Sequence& sorted_block, int k) {
  BoundReport rep;
  const Sequence f = front_of(sorted_block);
  rep.closed_form_wait = closed_form_wait(sorted_block);
  rep.block_bound = wait_bound_block(sorted_block);
  rep.horizon_bound = wait_bound_horizon(sorted_block, k);
  rep.theta = theta_of(sorted_block);
  if (f.size() > 1) {
    rep.gamma1 = f[0].mu_mean;
    for (std::size_t j = 0; j + 1 < f.size(); ++j) rep.gamma1 = max(rep.gamma1, f[j].mu_mean);
    rep.gamma2 = f[1].lambda_mean;
    for (std::size_t j = 1; j < f.size(); ++j) rep.gamma2 = min(rep.gamma2, f[j].lambda_mean);
  }
  for (const auto& s : f) rep.conformant = rep.conformant && s.mu_mean >= s.lambda_mean;
  return rep;
}

RobustnessReport robustness(const Sequence& sorted_block) {
  RobustnessReport rep;
  const Sequence f = front_of(sorted_block);
  rep.w_star = 2.0;
  Duration num, den;
  for (std::size_t j = 1; j < f.size(); ++j) {
    num += f[j - 1].mu_mean - f[j].lambda_mean;
    den += f[j - 1].mu_mean + f[j].lambda_mean;
    const double limit = num < Duration() ? 0.0 : 2.0 * (num / den);
    rep.prefix_limits.push_back(limit);
    rep.w_star = std::min(rep.w_star, limit);
  }
  rep.robust_taus = robust_template(sorted_block, rep.w_star).tau;
  return rep;
}

double w_threshold(const Sequence& sorted_block) { return robustness(sorted_block).w_star; }

AppointmentTemplate robust_template(const Sequence& sorted_block, double w) {
  AppointmentTemplate tpl;
  tpl.slots = sorted_block;
  const double scale = 1.0 - w / 2.0;
  for (const Duration t : prefix_taus(sorted_block)) tpl.tau.push_back(t * scale);
  return tpl;
}

}  // namespace blocksched
