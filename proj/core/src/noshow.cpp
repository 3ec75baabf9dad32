#include "blocksched/noshow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blocksched/random.hpp"

namespace blocksched {

Rational decimal_rational(double x) {
  return Rational(static_cast<long long>(std::llround(x * 1e6)), 1000000LL);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

AppointmentTemplate OverbookPlan::expanded() const {
  AppointmentTemplate out;
  std::size_t next = 0;
  for (std::size_t t = 0; t < base.size(); ++t) {
    out.slots.push_back(base.slots[t]);
    out.tau.push_back(base.tau[t]);
    while (next < entries.size() && entries[next].slot == t) {
      for (int d = 0; d < entries[next].duplicates; ++d) {
        out.slots.push_back(base.slots[t]);
        out.tau.push_back(base.tau[t]);
      }
      ++next;
    }
  }
  return out;
}

std::size_t OverbookPlan::scheduled() const {
  std::size_t n = base.size();
  for (const auto& e : entries) n += static_cast<std::size_t>(e.duplicates);
  return n;
}

OverbookPlan build_overbook_plan(const AppointmentTemplate& base, OverbookStrategy strategy,
                                 const NoShowProbs& probs) {
  if (base.size() == 0) throw std::invalid_argument("overbook plan needs a nonempty template");
  OverbookPlan plan;
  plan.base = base;
  plan.strategy = strategy;
  std::vector<std::size_t> qplus_slots, q_slots;
  for (std::size_t t = 0; t < base.size(); ++t) {
    if (base.slots[t].block != base.slots.front().block) continue;
    (base.slots[t].q_plus ? qplus_slots : q_slots).push_back(t);
  }
  if (strategy == OverbookStrategy::none) return plan;
  plan.e_plus = static_cast<int>(round_half_away(probs.p_plus * static_cast<double>(qplus_slots.size())));
  plan.e = static_cast<int>(round_half_away(probs.p * static_cast<double>(q_slots.size())));

  std::vector<OverbookEntry> entries;
  auto assign = [&](const std::vector<std::size_t>& slots, int count) {
    if (count == 0) return;
    if (strategy == OverbookStrategy::level_front) {
      if (static_cast<std::size_t>(count) > slots.size()) throw std::invalid_argument("LF capacity exceeded");
      for (int i = 0; i < count; ++i) entries.push_back({slots[static_cast<std::size_t>(i)], 1});
    } else {
      if (slots.empty()) throw std::invalid_argument("FF has no host slot for its duplicates");
      entries.push_back({slots.front(), count});
    }
  };
  assign(qplus_slots, plan.e_plus);
  assign(q_slots, plan.e);
  std::sort(entries.begin(), entries.end(),
            [](const OverbookEntry& a, const OverbookEntry& b) { return a.slot < b.slot; });
  plan.entries = std::move(entries);
  return plan;
}

namespace {

long long to_ticks(Duration d) {
  if (!d.on_grid()) throw std::invalid_argument("enumeration needs times on the 0.1-minute grid");
  return static_cast<long long>(d.ticks());
}

struct ClassSums {
  long long paths = 0;
  long long wait = 0, idle_a = 0, idle_p = 0, ot_a = 0, ot_p = 0;
};

}  // namespace

ExpectedMetrics enumerate_expected_metrics(const OverbookPlan& plan, Duration R, const NoShowProbs& probs,
                                           std::size_t cap) {
  const AppointmentTemplate tpl = plan.expanded();
  const std::size_t n = tpl.size();
  if (n > cap)
    throw std::invalid_argument("plan has " + std::to_string(n) + " patients, above the enumeration cap of " +
                                std::to_string(cap) + "; use the Monte-Carlo fallback");
  if (!(probs.p_plus >= 0 && probs.p_plus <= 1 && probs.p >= 0 && probs.p <= 1))
    throw std::invalid_argument("no-show probabilities must lie in [0, 1]");

  std::vector<long long> tau(n), lam(n), mu(n);
  std::vector<char> qp(n);
  std::size_t n_plus = 0, n_q = 0;
  for (std::size_t t = 0; t < n; ++t) {
    tau[t] = to_ticks(tpl.tau[t]);
    lam[t] = to_ticks(tpl.slots[t].lambda_mean);
    mu[t] = tpl.slots[t].q_plus ? to_ticks(tpl.slots[t].mu_mean) : 0;
    qp[t] = tpl.slots[t].q_plus;
    (qp[t] ? n_plus : n_q)++;
  }
  const long long r = to_ticks(R);

  // Same recurrence as evaluate(), specialised to integer ticks.
  std::vector<ClassSums> sums((n_plus + 1) * (n_q + 1));
  const std::uint64_t patterns = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    bool any_a = false, any_p = false;
    long long f_a = 0, f_p = 0, wait = 0, idle_a = 0, idle_p = 0;
    std::size_t miss_plus = 0, miss_q = 0;
    for (std::size_t t = 0; t < n; ++t) {
      if (mask >> t & 1U) {
        (qp[t] ? miss_plus : miss_q)++;
        continue;
      }
      const long long e_a = any_a ? std::max(tau[t], f_a) : tau[t];
      if (any_a) idle_a += e_a - f_a;
      wait += e_a - tau[t];
      f_a = e_a + lam[t];
      any_a = true;
      if (qp[t]) {
        const long long e_p = any_p ? std::max(f_a, f_p) : f_a;
        if (any_p) idle_p += e_p - f_p;
        wait += e_p - f_a;
        f_p = e_p + mu[t];
        any_p = true;
      }
    }
    ClassSums& c = sums[miss_plus * (n_q + 1) + miss_q];
    ++c.paths;
    c.wait += wait;
    c.idle_a += idle_a;
    c.idle_p += idle_p;
    if (any_a) c.ot_a += std::max(0LL, f_a - r);
    if (any_p) c.ot_p += std::max(0LL, f_p - r);
  }

  const Rational pp = decimal_rational(probs.p_plus), pq = decimal_rational(probs.p);
  auto power = [](const Rational& b, std::size_t e) {
    Rational x = 1;
    for (std::size_t i = 0; i < e; ++i) x *= b;
    return x;
  };
  ExpectedMetrics m;
  m.paths = patterns;
  for (std::size_t a = 0; a <= n_plus; ++a)
    for (std::size_t c = 0; c <= n_q; ++c) {
      const ClassSums& s = sums[a * (n_q + 1) + c];
      if (s.paths == 0) continue;
      const Rational pr = power(pp, a) * power(1 - pp, n_plus - a) * power(pq, c) * power(1 - pq, n_q - c);
      m.mass += pr * s.paths;
      m.wait += pr * s.wait;
      m.idle_a += pr * s.idle_a;
      m.idle_p += pr * s.idle_p;
      m.overtime_a += pr * s.ot_a;
      m.overtime_p += pr * s.ot_p;
    }
  const Rational tick(1, 10);
  m.wait *= tick;
  m.idle_a *= tick;
  m.idle_p *= tick;
  m.overtime_a *= tick;
  m.overtime_p *= tick;
  return m;
}

Rational expected_cost_per_patient_exact(const ExpectedMetrics& m, const CostWeights& w, std::size_t n_scheduled) {
  if (n_scheduled == 0) throw std::invalid_argument("n_scheduled must be positive");
  const Rational total = decimal_rational(w.alpha) * m.wait + decimal_rational(w.beta_a) * m.idle_a +
                         decimal_rational(w.beta_p) * m.idle_p + decimal_rational(w.o_a) * m.overtime_a +
                         decimal_rational(w.o_p) * m.overtime_p;
  return total / static_cast<long long>(n_scheduled);
}

double expected_cost_per_patient(const ExpectedMetrics& m, const CostWeights& w, std::size_t n_scheduled) {
  return to_double(expected_cost_per_patient_exact(m, w, n_scheduled));
}

NoShowSample sample_expected_metrics(const OverbookPlan& plan, Duration R, const NoShowProbs& probs,
                                     std::size_t N, std::uint64_t seed) {
  const AppointmentTemplate tpl = plan.expanded();
  ServiceRealization real = mean_realization(tpl.slots);
  real.show.assign(tpl.size(), 1);
  NoShowSample out;
  out.paths = N;
  for (std::size_t path = 0; path < N; ++path) {
    for (std::size_t t = 0; t < tpl.size(); ++t) {
      const double p = tpl.slots[t].q_plus ? probs.p_plus : probs.p;
      real.show[t] = uniform_open(hash_coords(seed, {tag_of("noshow"), path, t})) < p ? 0 : 1;
    }
    const ScheduleEvaluation ev = evaluate(tpl, real, R);
    out.wait += ev.wait().minutes();
    out.idle_a += ev.idle_a.minutes();
    out.idle_p += ev.idle_p.minutes();
    out.overtime_a += ev.overtime_a.minutes();
    out.overtime_p += ev.overtime_p.minutes();
  }
  if (N > 0) {
    const double inv = 1.0 / static_cast<double>(N);
    out.wait *= inv;
    out.idle_a *= inv;
    out.idle_p *= inv;
    out.overtime_a *= inv;
    out.overtime_p *= inv;
  }
  return out;
}

}  // namespace blocksched
