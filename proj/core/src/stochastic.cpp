#include "blocksched/stochastic.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "blocksched/heuristics.hpp"
#include "blocksched/random.hpp"

namespace blocksched {

double t_quantile(std::size_t df, double p) {
  static constexpr std::array<double, 30> t975 = {
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
      2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (df == 0) throw std::invalid_argument("t_quantile: df must be positive");
  if (p == 0.05 && df <= t975.size()) return t975[df - 1];
  const boost::math::students_t dist(static_cast<double>(df));
  return boost::math::quantile(dist, 1.0 - p / 2.0);
}

IntervalEstimate interval_estimate(const std::vector<double>& psi, double p, double xi) {
  IntervalEstimate e;
  const double nu = static_cast<double>(psi.size());
  if (psi.size() < 2) throw std::invalid_argument("interval_estimate: need at least two replications");
  for (double x : psi) e.psi_bar += x;
  e.psi_bar /= nu;
  for (double x : psi) e.S2 += (x - e.psi_bar) * (x - e.psi_bar);
  e.S2 /= nu;
  e.h = t_quantile(psi.size() - 1, p) * std::sqrt(e.S2 / (nu - 1.0));
  if (e.h == 0.0) e.stop = true;
  else e.stop = e.psi_bar > 0.0 && e.h / e.psi_bar < xi / (1.0 + xi);
  return e;
}

Tournament incumbent_selection(const std::vector<std::vector<double>>& cross) {
  Tournament t;
  if (cross.empty()) throw std::invalid_argument("incumbent_selection: no replications");
  auto avg = [&](std::size_t x, std::size_t u) {
    double s = 0.0;
    for (std::size_t v = 0; v < u; ++v) s += cross[x][v];
    return s / static_cast<double>(u);
  };
  t.running_average.push_back(cross[0][0]);
  for (std::size_t u = 2; u <= cross.size(); ++u) {
    const double challenger = avg(u - 1, u);
    const double holder = avg(t.best, u);
    if (challenger < holder) t.best = u - 1;
    t.running_average.push_back(std::min(challenger, holder));
  }
  return t;
}

double average_cost(const AppointmentTemplate& tpl, const ScenarioSet& set, Duration R, const CostWeights& w,
                    Overtime ot) {
  double sum = 0.0;
  for (std::size_t s = 0; s < set.size(); ++s) sum += total_cost(evaluate(tpl, set.realize(tpl, s), R), w, ot);
  return sum / static_cast<double>(set.size());
}

namespace {

struct Replication {
  Solution solution;
  ScenarioSet set;
};

Replication solve_replication(const ClinicInstance& inst, const CostWeights& w, const SAAConfig& cfg,
                              std::size_t K, StreamKey key, InnerSolver inner) {
  Replication rep;
  rep.set = draw_scenarios(inst, cfg.dist, K, key);
  const Overtime ot = cfg.scope == Scope::horizon ? Overtime::include : Overtime::exclude;
  if (inner == InnerSolver::exact) {
    rep.solution = solve_saa_replication(inst, w, rep.set, cfg.search, cfg.scope);
  } else {
    rep.solution.tpl = cfg.scope == Scope::horizon ? algorithm4(inst) : algorithm2(expand_block(inst));
    rep.solution.objective = average_cost(rep.solution.tpl, rep.set, inst.regular_time, w, ot);
    rep.solution.optimal = false;
  }
  return rep;
}

}  // namespace

SAAResult saa_procedure(const ClinicInstance& inst, const CostWeights& w, const SAAConfig& cfg,
                        std::uint64_t seed, InnerSolver inner) {
  if (cfg.nu0 < 2 || cfg.nu_max < cfg.nu0 || !(cfg.xi > 0 && cfg.xi < 1) || !(cfg.p > 0 && cfg.p < 1) ||
      cfg.K == 0 || cfg.max_rounds == 0)
    throw std::invalid_argument("saa_procedure: invalid configuration");
  require_valid(inst);
  const Overtime ot = cfg.scope == Scope::horizon ? Overtime::include : Overtime::exclude;
  SAAResult res;
  std::size_t K = cfg.K;
  std::vector<Replication> reps;
  for (std::size_t round = 0; round < cfg.max_rounds; ++round) {
    reps.clear();
    res.objectives.clear();
    auto add = [&] {
      const StreamKey key{seed, tag_of("saa"), (static_cast<std::uint64_t>(round) << 32) | reps.size()};
      reps.push_back(solve_replication(inst, w, cfg, K, key, inner));
      res.objectives.push_back(reps.back().solution.objective);
    };
    while (reps.size() < cfg.nu0) add();
    IntervalEstimate est = interval_estimate(res.objectives, cfg.p, cfg.xi);
    while (!est.stop && reps.size() < cfg.nu_max) {
      add();
      est = interval_estimate(res.objectives, cfg.p, cfg.xi);
    }
    res.psi_bar = est.psi_bar;
    res.S2 = est.S2;
    res.h = est.h;
    res.K = K;
    res.rounds = round + 1;
    res.replications_used = reps.size();
    res.converged = est.stop;
    if (est.stop) break;
    if (round + 1 < cfg.max_rounds) K += cfg.K_step;
  }
  res.stopped = true;

  std::vector<std::vector<double>> cross(reps.size(), std::vector<double>(reps.size()));
  for (std::size_t x = 0; x < reps.size(); ++x)
    for (std::size_t v = 0; v < reps.size(); ++v)
      cross[x][v] = x == v ? reps[x].solution.objective
                           : average_cost(reps[x].solution.tpl, reps[v].set, inst.regular_time, w, ot);
  const Tournament t = incumbent_selection(cross);
  res.incumbent = reps[t.best].solution;
  res.incumbent_replication = t.best;
  res.running_average = t.running_average;
  return res;
}

StreamKey mc_key(std::uint64_t seed) { return StreamKey{seed, tag_of("mc"), 0}; }

MonteCarloResult evaluate_template_mc(const TemplateSource& source, const ScenarioSet& set, Duration R,
                                      const CostWeights& w) {
  MonteCarloResult res;
  const std::size_t N = set.size();
  res.paths.reserve(N);
  for (std::size_t s = 0; s < N; ++s) {
    const AppointmentTemplate tpl = source(s);
    const ScheduleEvaluation ev = evaluate(tpl, set.realize(tpl, s), R);
    PathMetrics m;
    m.wait_a = ev.wait_a.minutes();
    m.wait_p = ev.wait_p.minutes();
    m.idle_a = ev.idle_a.minutes();
    m.idle_p = ev.idle_p.minutes();
    m.overtime_a = ev.overtime_a.minutes();
    m.overtime_p = ev.overtime_p.minutes();
    m.objective = total_cost(ev, w);
    res.paths.push_back(m);
  }
  auto stat = [&](auto get) {
    MetricStat st;
    if (N == 0) return st;
    for (const auto& p : res.paths) st.mean += get(p);
    st.mean /= static_cast<double>(N);
    if (N > 1) {
      double ss = 0.0;
      for (const auto& p : res.paths) ss += (get(p) - st.mean) * (get(p) - st.mean);
      st.se = std::sqrt(ss / static_cast<double>(N - 1) / static_cast<double>(N));
    }
    return st;
  };
  res.wait_a = stat([](const PathMetrics& p) { return p.wait_a; });
  res.wait_p = stat([](const PathMetrics& p) { return p.wait_p; });
  res.wait = stat([](const PathMetrics& p) { return p.wait(); });
  res.idle_a = stat([](const PathMetrics& p) { return p.idle_a; });
  res.idle_p = stat([](const PathMetrics& p) { return p.idle_p; });
  res.overtime_a = stat([](const PathMetrics& p) { return p.overtime_a; });
  res.overtime_p = stat([](const PathMetrics& p) { return p.overtime_p; });
  res.objective = stat([](const PathMetrics& p) { return p.objective; });
  return res;
}

MonteCarloResult evaluate_template_mc(const AppointmentTemplate& tpl, const ScenarioSet& set, Duration R,
                                      const CostWeights& w) {
  return evaluate_template_mc([&](std::size_t) { return tpl; }, set, R, w);
}

MonteCarloResult evaluate_template_mc(const AppointmentTemplate& tpl, const ClinicInstance& inst,
                                      const DistributionSpec& dist, std::size_t N, std::uint64_t seed,
                                      const CostWeights& w) {
  return evaluate_template_mc(tpl, draw_scenarios(inst, dist, N, mc_key(seed)), inst.regular_time, w);
}

PairedDifference paired_difference(const MonteCarloResult& a, const MonteCarloResult& b,
                                   double (*metric)(const PathMetrics&)) {
  if (a.paths.size() != b.paths.size() || a.paths.size() < 2)
    throw std::invalid_argument("paired_difference: need equal path counts of at least two");
  const std::size_t N = a.paths.size();
  PairedDifference d;
  for (std::size_t i = 0; i < N; ++i) d.mean += metric(a.paths[i]) - metric(b.paths[i]);
  d.mean /= static_cast<double>(N);
  double ss = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double x = metric(a.paths[i]) - metric(b.paths[i]) - d.mean;
    ss += x * x;
  }
  d.se = std::sqrt(ss / static_cast<double>(N - 1) / static_cast<double>(N));
  const double t = t_quantile(N - 1, 0.05);
  d.lower = d.mean - t * d.se;
  d.upper = d.mean + t * d.se;
  return d;
}

}  // namespace blocksched
