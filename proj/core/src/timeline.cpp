#include "blocksched/timeline.hpp"

#include <stdexcept>

namespace blocksched {

Sequence to_sequence(const PatientList& patients, std::size_t block) {
  Sequence seq;
  seq.reserve(patients.size());
  for (const auto& p : patients) seq.push_back({p.type, p.lambda_mean, p.mu_mean, p.q_plus, block});
  return seq;
}

std::vector<Duration> prefix_taus(const Sequence& seq, Duration start) {
  std::vector<Duration> tau;
  tau.reserve(seq.size());
  Duration t = start;
  for (const auto& s : seq) {
    tau.push_back(t);
    t += s.lambda_mean;
  }
  return tau;
}

AppointmentTemplate pa_continuous(Sequence seq) {
  AppointmentTemplate tpl;
  tpl.tau = prefix_taus(seq);
  tpl.slots = std::move(seq);
  return tpl;
}

ServiceRealization mean_realization(const Sequence& seq) {
  ServiceRealization r;
  r.lambda.reserve(seq.size());
  r.mu.reserve(seq.size());
  for (const auto& s : seq) {
    r.lambda.push_back(s.lambda_mean);
    r.mu.push_back(s.q_plus ? s.mu_mean : Duration());
  }
  return r;
}

ScheduleEvaluation evaluate(const AppointmentTemplate& tpl, const ServiceRealization& real, Duration R) {
  const std::size_t n = tpl.size();
  if (tpl.tau.size() != n || real.lambda.size() != n || real.mu.size() != n ||
      (!real.show.empty() && real.show.size() != n))
    throw std::invalid_argument("evaluate: template and realization lengths differ");

  ScheduleEvaluation ev;
  ev.slots.resize(n);
  Duration f_a_prev, f_p_prev;
  for (std::size_t t = 0; t < n; ++t) {
    SlotTimes& st = ev.slots[t];
    if (!real.shows(t)) {
      st.shown = false;
      st.e_a = st.f_a = st.e_p = st.f_p = tpl.tau[t];
      continue;
    }
    const Duration lam = real.lambda[t];
    st.e_a = ev.any_a ? max(tpl.tau[t], f_a_prev) : tpl.tau[t];
    st.gap_a = ev.any_a ? st.e_a - f_a_prev : Duration();
    st.f_a = st.e_a + lam;
    st.w_a = st.e_a - tpl.tau[t];
    if (!ev.any_a) ev.first_start_a = st.e_a;
    ev.any_a = true;
    f_a_prev = st.f_a;
    ev.busy_a += lam;
    ev.idle_a += st.gap_a;
    ev.wait_a += st.w_a;

    if (tpl.slots[t].q_plus) {
      const Duration mu = real.mu[t];
      st.e_p = ev.any_p ? max(st.f_a, f_p_prev) : st.f_a;
      st.gap_p = ev.any_p ? st.e_p - f_p_prev : Duration();
      st.f_p = st.e_p + mu;
      st.w_p = st.e_p - st.f_a;
      if (!ev.any_p) ev.first_start_p = st.e_p;
      ev.any_p = true;
      f_p_prev = st.f_p;
      ev.busy_p += mu;
      ev.idle_p += st.gap_p;
      ev.wait_p += st.w_p;
    } else {
      st.e_p = st.f_p = st.f_a;
    }
  }
  if (ev.any_a) {
    ev.last_finish_a = f_a_prev;
    ev.overtime_a = positive_part(f_a_prev - R);
    ev.completion = f_a_prev;
  }
  if (ev.any_p) {
    ev.last_finish_p = f_p_prev;
    ev.overtime_p = positive_part(f_p_prev - R);
    ev.completion = max(ev.completion, f_p_prev);
  }
  return ev;
}

double weighted_cost(const CostWeights& w, Duration wait, Duration idle_a, Duration idle_p,
                     Duration overtime_a, Duration overtime_p, Overtime ot) {
  double c = w.alpha * wait.minutes() + w.beta_a * idle_a.minutes() + w.beta_p * idle_p.minutes();
  if (ot == Overtime::include) c += w.o_a * overtime_a.minutes() + w.o_p * overtime_p.minutes();
  return c;
}

double total_cost(const ScheduleEvaluation& ev, const CostWeights& w, Overtime ot) {
  return weighted_cost(w, ev.wait(), ev.idle_a, ev.idle_p, ev.overtime_a, ev.overtime_p, ot);
}

std::vector<BlockSections> sections(const ScheduleEvaluation& ev, const AppointmentTemplate& tpl) {
  const std::size_t nb = tpl.block_count();
  std::vector<BlockSections> out(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    bool any_a = false, any_p = false;
    Duration start_a, end_a, start_p, end_p;
    for (std::size_t t = 0; t < tpl.size(); ++t) {
      if (tpl.slots[t].block != b || !ev.slots[t].shown) continue;
      const SlotTimes& st = ev.slots[t];
      if (!any_a) start_a = st.e_a;
      end_a = st.f_a;
      any_a = true;
      if (tpl.slots[t].q_plus) {
        if (!any_p) start_p = st.e_p;
        end_p = st.f_p;
        any_p = true;
      }
    }
    if (!any_a) continue;
    BlockSections& s = out[b];
    const Duration finish = any_p ? max(end_a, end_p) : end_a;
    s.completion = finish - start_a;
    if (!any_p) {
      s.head = s.completion;
      continue;
    }
    s.head = start_p - start_a;
    s.body = positive_part(end_a - start_p);
    s.tail = s.completion - s.head - s.body;
  }
  return out;
}

AppointmentTemplate concatenate(const std::vector<AppointmentTemplate>& blocks, JunctionRule rule) {
  AppointmentTemplate out;
  std::size_t block_index = 0;
  for (const auto& blk : blocks) {
    if (blk.slots.empty()) continue;
    Duration start;
    if (!out.slots.empty()) {
      const ScheduleEvaluation sofar = evaluate(out, mean_realization(out.slots), Duration());
      start = sofar.last_finish_a;
      if (rule == JunctionRule::p_continuous && sofar.any_p) {
        const ScheduleEvaluation local = evaluate(blk, mean_realization(blk.slots), Duration());
        if (local.any_p) start = max(start, sofar.last_finish_p - (local.first_start_p - blk.tau.front()));
      }
    }
    for (std::size_t t = 0; t < blk.size(); ++t) {
      Slot s = blk.slots[t];
      s.block = block_index;
      out.slots.push_back(s);
      out.tau.push_back(start + (blk.tau[t] - blk.tau.front()));
    }
    ++block_index;
  }
  return out;
}

AppointmentTemplate concatenate(const AppointmentTemplate& block, int k, JunctionRule rule) {
  if (k < 1) throw std::invalid_argument("concatenate: k must be at least 1");
  return concatenate(std::vector<AppointmentTemplate>(static_cast<std::size_t>(k), block), rule);
}

}  // namespace blocksched
