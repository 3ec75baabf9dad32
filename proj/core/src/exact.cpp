#include "blocksched/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace blocksched {

namespace {

constexpr double kGrid[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

Duration quantile(std::vector<Duration> xs, double q) {
  std::sort(xs.begin(), xs.end());
  const double h = static_cast<double>(xs.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= xs.size()) return xs.back();
  return xs[lo] + (xs[lo + 1] - xs[lo]) * (h - static_cast<double>(lo));
}

struct PathState {
  Duration f_a, f_p;
  Duration wait_a, wait_p, idle_a, idle_p;
};

// Incremental replay of the timeline recurrence over K scenarios and V τ
// variants. Depth d holds the state after d slots.
class Searcher {
 public:
  Searcher(const SearchProblem& p, const SearchConfig& cfg)
      : P_(p), cfg_(cfg), K_(p.scenarios),
        jc_(p.junction_choice && p.scenarios == 1 && p.tau_rule == TauRule::earliest),
        V_(p.tau_rule == TauRule::quantile_grid ? std::size(kGrid) : (jc_ ? 2 : 1)), n_(p.slots()) {
    for (std::size_t b = 0; b < P_.block_counts.size(); ++b)
      for (int c : P_.block_counts[b])
        for (int j = 0; j < c; ++j) block_of_.push_back(b);
    st_.assign(n_ + 1, std::vector<PathState>(V_ * K_));
    plam_.assign(n_ + 1, std::vector<Duration>(K_));
    pmu_.assign(n_ + 1, std::vector<Duration>(K_));
    mean_prefix_.assign(n_ + 1, Duration());
    any_p_.assign(n_ + 1, 0);
    tau_.assign(n_ + 1, std::vector<Duration>(V_));
    shift_.assign(n_ + 1, std::vector<Duration>(V_));
    qplus_placed_.assign(P_.block_counts.size(), 0);
    remaining_ = P_.block_counts;
    rem_qplus_ = 0;
    for (const auto& bc : P_.block_counts)
      for (std::size_t i = 0; i < bc.size(); ++i)
        if (P_.types[i].q_plus) rem_qplus_ += bc[i];
    total_lam_.assign(K_, Duration());
    total_mu_.assign(K_, Duration());
    for (std::size_t s = 0; s < K_; ++s)
      for (std::size_t b = 0; b < P_.block_counts.size(); ++b)
        for (std::size_t i = 0; i < P_.types.size(); ++i)
          for (int c = 0; c < P_.block_counts[b][i]; ++c) {
            const std::size_t idx = P_.index(s, b, i, static_cast<std::size_t>(c));
            total_lam_[s] += P_.lambda[idx];
            if (P_.types[i].q_plus) total_mu_[s] += P_.mu[idx];
          }
    restrict_first_ = false;
    if (!P_.block_counts.empty())
      for (std::size_t i = 0; i < P_.types.size(); ++i)
        if (P_.types[i].q_plus && P_.block_counts[0][i] > 0) restrict_first_ = true;
  }

  std::size_t slots() const { return n_; }

  bool allowed(std::size_t d, std::size_t type) const {
    const std::size_t b = block_of_[d];
    if (remaining_[b][type] == 0) return false;
    return !(d == 0 && restrict_first_ && !P_.types[type].q_plus);
  }

  void place(std::size_t d, std::size_t type) {
    const std::size_t b = block_of_[d];
    const auto copy = static_cast<std::size_t>(P_.block_counts[b][type] - remaining_[b][type]);
    --remaining_[b][type];
    const bool qp = P_.types[type].q_plus;
    // Variant 1 shifts a later block when its first Q+ patient arrives.
    const bool junction = jc_ && qp && b > 0 && qplus_placed_[b] == 0 && any_p_[d];
    if (qp) --rem_qplus_, ++qplus_placed_[b];
    seq_.push_back(type);

    for (std::size_t v = 0; v < V_; ++v) {
      if (P_.tau_rule == TauRule::earliest) tau_[d][v] = mean_prefix_[d] + shift_[d][v];
      else tau_[d][v] = quantile(plam_[d], kGrid[v]);
      shift_[d + 1][v] = shift_[d][v];
    }
    mean_prefix_[d + 1] = mean_prefix_[d] + P_.types[type].lambda_mean;
    any_p_[d + 1] = any_p_[d] || qp;
    for (std::size_t s = 0; s < K_; ++s) {
      const std::size_t idx = P_.index(s, b, type, copy);
      const Duration lam = P_.lambda[idx];
      const Duration mu = qp ? P_.mu[idx] : Duration();
      plam_[d + 1][s] = plam_[d][s] + lam;
      pmu_[d + 1][s] = pmu_[d][s] + mu;
      for (std::size_t v = 0; v < V_; ++v) {
        const PathState& a = st_[d][v * K_ + s];
        PathState& z = st_[d + 1][v * K_ + s];
        z = a;
        const Duration tau = tau_[d][v];
        const Duration e_a = d == 0 ? tau : max(tau, a.f_a);
        const Duration gap_a = d == 0 ? Duration() : e_a - a.f_a;
        z.f_a = e_a + lam;
        z.wait_a = a.wait_a + (e_a - tau);
        z.idle_a = a.idle_a + gap_a;
        if (qp) {
          const Duration e_p = any_p_[d] ? max(z.f_a, a.f_p) : z.f_a;
          const Duration gap_p = any_p_[d] ? e_p - a.f_p : Duration();
          z.f_p = e_p + mu;
          z.wait_p = a.wait_p + (e_p - z.f_a);
          z.idle_p = a.idle_p + gap_p;
        }
        if (junction && v == 1) {
          const Duration delta = positive_part(a.f_p - z.f_a);
          if (delta > Duration()) {
            shift_[d + 1][v] += delta;
            z.f_a += delta;
            z.idle_a += delta;
            z.f_p = z.f_a + mu;
            z.wait_p = a.wait_p;
            z.idle_p = a.idle_p;
          }
        }
      }
    }
  }

  void unplace(std::size_t d) {
    const std::size_t type = seq_.back();
    seq_.pop_back();
    ++remaining_[block_of_[d]][type];
    if (P_.types[type].q_plus) ++rem_qplus_, --qplus_placed_[block_of_[d]];
  }

  // Lower bound at depth d; exact once every slot is placed.
  double bound(std::size_t d, std::size_t* best_variant = nullptr) const {
    const bool complete = d == n_;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < V_; ++v) {
      double sum = 0.0;
      for (std::size_t s = 0; s < K_; ++s) {
        const PathState& z = st_[d][v * K_ + s];
        Duration ot_a, ot_p;
        if (P_.overtime == Overtime::include && d > 0) {
          const Duration rem_lam = complete ? Duration() : total_lam_[s] - plam_[d][s];
          ot_a = positive_part(z.f_a + rem_lam - P_.R);
          if (!complete && rem_qplus_ > 0) {
            const Duration base = any_p_[d] ? z.f_p : z.f_a;
            ot_p = positive_part(base + (total_mu_[s] - pmu_[d][s]) - P_.R);
          } else if (any_p_[d]) {
            ot_p = positive_part(z.f_p - P_.R);
          }
        }
        sum += weighted_cost(P_.weights, z.wait_a + z.wait_p, z.idle_a, z.idle_p, ot_a, ot_p, P_.overtime);
      }
      const double avg = sum / static_cast<double>(K_);
      if (avg < best) {
        best = avg;
        if (best_variant) *best_variant = v;
      }
    }
    return best;
  }

  Solution run() {
    start_ = std::chrono::steady_clock::now();
    best_ = std::numeric_limits<double>::infinity();
    dfs(0);
    Solution sol;
    sol.objective = best_;
    sol.nodes = nodes_;
    sol.optimal = !aborted_ && !best_seq_.empty();
    if (!best_seq_.empty()) {
      sol.quantile = P_.tau_rule == TauRule::quantile_grid ? kGrid[best_variant_] : 0.0;
      if (jc_ && best_variant_ == 1) sol.junction = JunctionRule::p_continuous;
      sol.tpl = template_for(P_, best_seq_, sol.quantile, sol.junction);
    }
    if (n_ == 0) sol.optimal = true, sol.objective = 0.0;
    return sol;
  }

 private:
  void dfs(std::size_t d) {
    if (aborted_) return;
    if (d == n_) {
      std::size_t v = 0;
      const double val = bound(d, &v);
      if (val < best_) {
        best_ = val;
        best_seq_ = seq_;
        best_variant_ = v;
      }
      return;
    }
    for (std::size_t i = 0; i < P_.types.size(); ++i) {
      if (!allowed(d, i)) continue;
      if (++nodes_ >= cfg_.node_limit || ((nodes_ & 4095) == 0 && out_of_time())) {
        aborted_ = true;
        return;
      }
      place(d, i);
      if (cfg_.mode == SearchMode::enumerate || d + 1 == n_ || bound(d + 1) < best_) dfs(d + 1);
      unplace(d);
      if (aborted_) return;
    }
  }

  bool out_of_time() const {
    const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
    return el.count() > cfg_.time_limit;
  }

  const SearchProblem& P_;
  SearchConfig cfg_;
  std::size_t K_;
  bool jc_;
  std::size_t V_, n_;
  std::vector<std::size_t> block_of_;
  std::vector<std::vector<PathState>> st_;
  std::vector<std::vector<Duration>> plam_, pmu_;
  std::vector<Duration> mean_prefix_;
  std::vector<char> any_p_;
  std::vector<std::vector<Duration>> tau_, shift_;
  std::vector<int> qplus_placed_;
  std::vector<std::vector<int>> remaining_;
  int rem_qplus_ = 0;
  std::vector<Duration> total_lam_, total_mu_;
  bool restrict_first_ = false;
  std::vector<std::size_t> seq_;

  std::chrono::steady_clock::time_point start_;
  double best_ = 0.0;
  std::vector<std::size_t> best_seq_;
  std::size_t best_variant_ = 0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

void check_sequence(const SearchProblem& prob, const std::vector<std::size_t>& types, bool complete) {
  if (types.size() > prob.slots() || (complete && types.size() != prob.slots()))
    throw std::invalid_argument("sequence length does not match the search problem");
}

void replay(const SearchProblem& prob, Searcher& s, const std::vector<std::size_t>& types) {
  for (std::size_t d = 0; d < types.size(); ++d) {
    if (types[d] >= prob.types.size() || !s.allowed(d, types[d]))
      throw std::invalid_argument("sequence violates block composition or the Q+-first rule");
    s.place(d, types[d]);
  }
}

SearchProblem base_problem(std::vector<SearchProblem::TypeInfo> types, std::vector<std::vector<int>> counts,
                           std::size_t K) {
  SearchProblem p;
  p.types = std::move(types);
  p.block_counts = std::move(counts);
  p.scenarios = K;
  p.offsets.assign(p.block_counts.size(), std::vector<std::size_t>(p.types.size()));
  std::size_t off = 0;
  for (std::size_t b = 0; b < p.block_counts.size(); ++b)
    for (std::size_t i = 0; i < p.types.size(); ++i) {
      p.offsets[b][i] = off;
      off += static_cast<std::size_t>(p.block_counts[b][i]);
    }
  p.per_scenario = off;
  p.lambda.assign(off * K, Duration());
  p.mu.assign(off * K, Duration());
  return p;
}

void fill_means(SearchProblem& p) {
  for (std::size_t b = 0; b < p.block_counts.size(); ++b)
    for (std::size_t i = 0; i < p.types.size(); ++i)
      for (int c = 0; c < p.block_counts[b][i]; ++c) {
        const std::size_t idx = p.index(0, b, i, static_cast<std::size_t>(c));
        p.lambda[idx] = p.types[i].lambda_mean;
        p.mu[idx] = p.types[i].q_plus ? p.types[i].mu_mean : Duration();
      }
}

std::vector<SearchProblem::TypeInfo> type_infos(const ClinicInstance& inst) {
  std::vector<SearchProblem::TypeInfo> out;
  for (const auto& t : inst.types) out.push_back({t.lambda_mean, t.mu_mean, t.q_plus()});
  return out;
}

std::vector<int> ratios_of(const ClinicInstance& inst) {
  std::vector<int> r;
  for (const auto& t : inst.types) r.push_back(t.ratio);
  return r;
}

}  // namespace

std::size_t SearchProblem::slots() const {
  std::size_t n = 0;
  for (const auto& bc : block_counts)
    for (int c : bc) n += static_cast<std::size_t>(c);
  return n;
}

SearchProblem make_block_problem(const PatientList& block, const CostWeights& w) {
  std::size_t m = 0;
  for (const auto& p : block) m = std::max(m, p.type + 1);
  std::vector<SearchProblem::TypeInfo> types(m);
  std::vector<int> counts(m, 0);
  for (const auto& p : block) {
    types[p.type] = {p.lambda_mean, p.mu_mean, p.q_plus};
    ++counts[p.type];
  }
  SearchProblem prob = base_problem(std::move(types), {counts}, 1);
  fill_means(prob);
  prob.weights = w;
  prob.overtime = Overtime::exclude;
  return prob;
}

SearchProblem make_horizon_problem(const ClinicInstance& inst, const CostWeights& w) {
  SearchProblem prob = base_problem(type_infos(inst),
                                    std::vector<std::vector<int>>(static_cast<std::size_t>(inst.blocks), ratios_of(inst)), 1);
  fill_means(prob);
  prob.weights = w;
  prob.R = inst.regular_time;
  prob.overtime = Overtime::include;
  prob.junction_choice = true;
  return prob;
}

SearchProblem make_scenario_problem(const ClinicInstance& inst, const CostWeights& w, const ScenarioSet& set,
                                    Scope scope, TauRule rule) {
  const std::size_t nb = scope == Scope::block ? 1 : static_cast<std::size_t>(inst.blocks);
  SearchProblem prob = base_problem(type_infos(inst), std::vector<std::vector<int>>(nb, ratios_of(inst)), set.size());
  for (std::size_t s = 0; s < set.size(); ++s)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t i = 0; i < prob.types.size(); ++i)
        for (int c = 0; c < prob.block_counts[b][i]; ++c) {
          const auto [lam, mu] = set.draw(s, b, i, static_cast<std::size_t>(c));
          const std::size_t idx = prob.index(s, b, i, static_cast<std::size_t>(c));
          prob.lambda[idx] = lam;
          prob.mu[idx] = prob.types[i].q_plus ? mu : Duration();
        }
  prob.weights = w;
  prob.tau_rule = rule;
  if (scope == Scope::horizon) {
    prob.R = inst.regular_time;
    prob.overtime = Overtime::include;
  }
  return prob;
}

Solution solve(const SearchProblem& prob, const SearchConfig& config) {
  if (config.node_limit == 0 || config.time_limit <= 0) throw std::invalid_argument("search limits must be positive");
  Searcher s(prob, config);
  return s.run();
}

double sequence_objective(const SearchProblem& prob, const std::vector<std::size_t>& types) {
  check_sequence(prob, types, true);
  Searcher s(prob, SearchConfig{});
  replay(prob, s, types);
  return s.bound(types.size());
}

double node_lower_bound(const SearchProblem& prob, const std::vector<std::size_t>& prefix) {
  check_sequence(prob, prefix, false);
  Searcher s(prob, SearchConfig{});
  replay(prob, s, prefix);
  return s.bound(prefix.size());
}

AppointmentTemplate template_for(const SearchProblem& prob, const std::vector<std::size_t>& types, double q,
                                 JunctionRule junction) {
  check_sequence(prob, types, true);
  if (junction == JunctionRule::p_continuous && prob.block_counts.size() > 1) {
    if (prob.tau_rule != TauRule::earliest) throw std::invalid_argument("P-continuous junctions need TauRule::earliest");
    std::vector<AppointmentTemplate> blocks;
    std::size_t d = 0;
    for (const auto& bc : prob.block_counts) {
      Sequence seq;
      for (int c = std::accumulate(bc.begin(), bc.end(), 0); c > 0; --c, ++d) {
        const auto& ti = prob.types[types[d]];
        seq.push_back({types[d], ti.lambda_mean, ti.mu_mean, ti.q_plus, 0});
      }
      blocks.push_back(pa_continuous(std::move(seq)));
    }
    return concatenate(blocks, JunctionRule::p_continuous);
  }
  AppointmentTemplate tpl;
  std::vector<std::vector<int>> used(prob.block_counts.size(), std::vector<int>(prob.types.size(), 0));
  std::vector<Duration> prefix(prob.scenarios);
  Duration mean_prefix;
  std::size_t b = 0, in_block = 0;
  for (std::size_t d = 0; d < types.size(); ++d) {
    while (in_block == static_cast<std::size_t>(std::accumulate(prob.block_counts[b].begin(), prob.block_counts[b].end(), 0))) {
      ++b;
      in_block = 0;
    }
    const std::size_t i = types[d];
    const auto& ti = prob.types[i];
    tpl.slots.push_back({i, ti.lambda_mean, ti.mu_mean, ti.q_plus, b});
    tpl.tau.push_back(prob.tau_rule == TauRule::quantile_grid ? quantile(prefix, q) : mean_prefix);
    const auto copy = static_cast<std::size_t>(used[b][i]++);
    for (std::size_t s = 0; s < prob.scenarios; ++s) prefix[s] += prob.lambda[prob.index(s, b, i, copy)];
    mean_prefix += ti.lambda_mean;
    ++in_block;
  }
  return tpl;
}

Solution solve_block_exact(const PatientList& block, const CostWeights& w, const SearchConfig& config) {
  return solve(make_block_problem(block, w), config);
}

Solution solve_horizon_exact(const ClinicInstance& inst, const CostWeights& w, const SearchConfig& config) {
  return solve(make_horizon_problem(inst, w), config);
}

Solution solve_saa_replication(const ClinicInstance& inst, const CostWeights& w, const ScenarioSet& set,
                               const SearchConfig& config, Scope scope) {
  return solve(make_scenario_problem(inst, w, set, scope, config.tau_rule), config);
}

double search_space_size(const SearchProblem& prob) {
  auto multinomial = [](const std::vector<int>& c) {
    double lg = std::lgamma(static_cast<double>(std::accumulate(c.begin(), c.end(), 0)) + 1.0);
    for (int x : c) lg -= std::lgamma(static_cast<double>(x) + 1.0);
    return std::exp(lg);
  };
  double total = 1.0;
  for (std::size_t b = 0; b < prob.block_counts.size(); ++b) {
    const auto& c = prob.block_counts[b];
    bool has_qplus = false;
    for (std::size_t i = 0; i < c.size(); ++i) has_qplus = has_qplus || (prob.types[i].q_plus && c[i] > 0);
    if (b == 0 && has_qplus) {
      double sum = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (!prob.types[i].q_plus || c[i] == 0) continue;
        auto rest = c;
        --rest[i];
        sum += multinomial(rest);
      }
      total *= std::round(sum);
    } else {
      total *= std::round(multinomial(c));
    }
  }
  return total;
}

}  // namespace blocksched
