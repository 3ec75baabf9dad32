#include "blocksched_cli/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <memory>
#include <optional>
#include <random>

#include <CLI11.hpp>

#include <blocksched/exact.hpp>
#include <blocksched/heuristics.hpp>
#include <blocksched/noshow.hpp>
#include <blocksched/random.hpp>
#include <blocksched/stochastic.hpp>

#include "blocksched_cli/io.hpp"

namespace blocksched::cli {

namespace {

struct Common {
  std::string instance;
  std::string format = "csv";
  std::string out;
};

struct WeightFlags {
  std::optional<double> alpha, beta, o;
  std::vector<double> alpha_grid, o_grid;
};

struct DistFlags {
  std::string family = "normal";
  double width = 0.0;
};

struct SearchFlags {
  std::string mode = "bnb";
  std::uint64_t node_limit = SearchConfig{}.node_limit;
  double time_limit = SearchConfig{}.time_limit;
  std::string tau_rule = "earliest";
};

struct Options {
  Common common;
  WeightFlags weights;
  DistFlags dist;
  SearchFlags search;
  std::string method = "alg4";
  std::vector<std::string> methods = {"alg3", "alg4", "fcfa"};
  std::optional<int> k;
  std::uint64_t seed = 1;
  std::size_t paths = 1000;
  std::string timeline;
  std::string scope = "block";
  // saa
  std::size_t K = SAAConfig{}.K, nu0 = SAAConfig{}.nu0, nu_max = SAAConfig{}.nu_max;
  std::size_t k_step = SAAConfig{}.K_step, max_rounds = SAAConfig{}.max_rounds;
  double xi = SAAConfig{}.xi, conf = 0.95;
  std::string inner = "exact";
  // noshow
  std::vector<std::string> plans = {"none", "lf", "ff"};
  double p_plus = 0.0, p = 0.0;
  std::optional<double> R;
  std::size_t cap = kEnumerationCap;
  std::size_t mc_paths = 0;
};

class Sink {
 public:
  Sink(std::ostream& fallback, const Common& c, const std::string& sub) : os_(&fallback) {
    const std::string ext = c.format == "json" ? ".json" : ".csv";
    std::string path = c.out;
    if (path.empty()) {
      if (const char* dir = std::getenv("BLOCKSCHED_OUTPUT_DIR"); dir && *dir) {
        std::filesystem::create_directories(dir);
        path = (std::filesystem::path(dir) / (sub + ext)).string();
      }
    }
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ostream* os_;
  std::unique_ptr<std::ofstream> file_;
};

Format format_of(const Common& c) { return c.format == "json" ? Format::json : Format::csv; }

CostWeights single_weights(const ClinicInstance& inst, const WeightFlags& f) {
  CostWeights w = inst.costs;
  if (f.alpha) w.alpha = *f.alpha;
  if (f.beta) w.beta_a = w.beta_p = *f.beta;
  if (f.o) w.o_a = w.o_p = *f.o;
  return w;
}

// Cross product of the α and o grids; either falls back to the instance value.
std::vector<CostWeights> weight_grid(const ClinicInstance& inst, const WeightFlags& f) {
  const CostWeights base = single_weights(inst, f);
  std::vector<double> alphas = f.alpha_grid, os = f.o_grid;
  if (alphas.empty()) alphas = {base.alpha};
  std::vector<CostWeights> grid;
  for (double a : alphas) {
    if (os.empty()) {
      CostWeights w = base;
      w.alpha = a;
      grid.push_back(w);
      continue;
    }
    for (double o : os) {
      CostWeights w = base;
      w.alpha = a;
      w.o_a = w.o_p = o;
      grid.push_back(w);
    }
  }
  return grid;
}

DistributionSpec dist_of(const DistFlags& f) {
  DistributionSpec d;
  d.family = f.family == "uniform" ? Family::uniform_width : Family::normal;
  d.width = f.width;
  return d;
}

SearchConfig search_of(const SearchFlags& f) {
  SearchConfig c;
  c.mode = f.mode == "enumerate" ? SearchMode::enumerate : SearchMode::branch_and_bound;
  c.node_limit = f.node_limit;
  c.time_limit = f.time_limit;
  c.tau_rule = f.tau_rule == "quantile" ? TauRule::quantile_grid : TauRule::earliest;
  return c;
}

std::mt19937_64 fcfa_stream(std::uint64_t seed, std::uint64_t path) {
  return std::mt19937_64(hash_coords(seed, {tag_of("fcfa"), path}));
}

AppointmentTemplate build_template(const ClinicInstance& inst, const std::string& method, std::uint64_t seed,
                                   const CostWeights& w, const SearchConfig& search) {
  if (method == "alg1") return pa_continuous(algorithm1(expand_block(inst)));
  if (method == "alg2") return algorithm2(expand_block(inst));
  if (method == "alg3") return algorithm3(inst);
  if (method == "alg4") return algorithm4(inst);
  if (method == "fcfa") {
    auto rng = fcfa_stream(seed, 0);
    return fcfa(inst, rng);
  }
  if (method == "exact") return solve_horizon_exact(inst, w, search).tpl;
  throw std::invalid_argument("unknown method " + method);
}

ScheduleEvaluation mean_evaluation(const ClinicInstance& inst, const AppointmentTemplate& tpl) {
  return evaluate(tpl, mean_realization(tpl.slots), inst.regular_time);
}

Json solution_json(const ClinicInstance& inst, const Solution& s) {
  const ScheduleEvaluation ev = mean_evaluation(inst, s.tpl);
  Json j;
  j["objective"] = s.objective;
  j["optimal"] = s.optimal;
  j["nodes"] = s.nodes;
  j["quantile"] = s.quantile;
  j["junction"] = s.junction == JunctionRule::p_continuous ? "p_continuous" : "pa_continuous";
  j["template"] = template_json(inst, s.tpl);
  j["evaluation"] = evaluation_json(s.tpl, ev);
  return j;
}

void write_timeline(const std::string& path, const ClinicInstance& inst, const AppointmentTemplate& tpl) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  write_evaluation_csv(inst, tpl, mean_evaluation(inst, tpl), f);
}

int cmd_validate(const Options& o, std::ostream& out) {
  const ClinicInstance inst = load_instance(o.common.instance, false);
  const ValidationReport rep = validate_instance(inst);
  Sink sink(out, o.common, "validate");
  if (format_of(o.common) == Format::json) {
    sink.stream() << Json{{"ok", rep.ok()}, {"errors", rep.errors}, {"warnings", rep.warnings}}.dump(2) << '\n';
  } else {
    sink.stream() << "level,message\n";
    for (const auto& e : rep.errors) sink.stream() << "error," << e << '\n';
    for (const auto& w : rep.warnings) sink.stream() << "warning," << w << '\n';
  }
  return rep.ok() ? kExitOk : kExitDomain;
}

int cmd_balance(const Options& o, std::ostream& out) {
  const ClinicInstance inst = load_instance(o.common.instance);
  const BalanceResult b = balance_workload(inst);
  Sink sink(out, o.common, "balance");
  if (format_of(o.common) == Format::json) {
    Json ratios = Json::object(), overflow = Json::array();
    for (std::size_t i = 0; i < inst.types.size(); ++i) ratios[inst.types[i].name] = b.reduced_ratios[i];
    for (std::size_t i : b.overflow) overflow.push_back(inst.types[i].name);
    sink.stream() << Json{{"initial_L_a", b.initial_L_a.minutes()},
                          {"initial_L_p", b.initial_L_p.minutes()},
                          {"final_L_a", b.final_L_a.minutes()},
                          {"final_L_p", b.final_L_p.minutes()},
                          {"unbalanceable", b.unbalanceable},
                          {"reduced_ratios", ratios},
                          {"overflow", overflow}}
                         .dump(2)
                  << '\n';
  } else {
    sink.stream() << "type,ratio,reduced_ratio,removed\n";
    for (std::size_t i = 0; i < inst.types.size(); ++i)
      sink.stream() << inst.types[i].name << ',' << inst.types[i].ratio << ',' << b.reduced_ratios[i] << ','
                    << inst.types[i].ratio - b.reduced_ratios[i] << '\n';
  }
  return kExitOk;
}

int cmd_template(const Options& o, std::ostream& out) {
  ClinicInstance inst = load_instance(o.common.instance);
  if (o.k) inst.blocks = *o.k;
  require_valid(inst);
  const CostWeights w = single_weights(inst, o.weights);
  const AppointmentTemplate tpl = build_template(inst, o.method, o.seed, w, search_of(o.search));
  const ScheduleEvaluation ev = mean_evaluation(inst, tpl);
  Sink sink(out, o.common, "template");
  if (format_of(o.common) == Format::json) {
    Json j;
    j["method"] = o.method;
    j["template"] = template_json(inst, tpl);
    j["evaluation"] = evaluation_json(tpl, ev);
    j["objective"] = total_cost(ev, w);
    sink.stream() << j.dump(2) << '\n';
  } else {
    write_evaluation_csv(inst, tpl, ev, sink.stream());
  }
  write_timeline(o.timeline, inst, tpl);
  return kExitOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  const ClinicInstance inst = load_instance(o.common.instance);
  const Sequence sorted = algorithm1(expand_block(inst));
  const BoundReport b = bounds(sorted, inst.blocks);
  const double w_star = w_threshold(sorted);
  Sink sink(out, o.common, "bounds");
  if (format_of(o.common) == Format::json) {
    sink.stream() << Json{{"instance", o.common.instance},
                          {"closed_form_wait", b.closed_form_wait.minutes()},
                          {"block_bound", b.block_bound.minutes()},
                          {"horizon_bound", b.horizon_bound.minutes()},
                          {"w_star", w_star},
                          {"conformant", b.conformant}}
                         .dump(2)
                  << '\n';
  } else {
    sink.stream() << "instance,closed_form_wait,block_bound,horizon_bound,w_star,conformant\n"
                  << o.common.instance << ',' << decimal(b.closed_form_wait.minutes()) << ','
                  << decimal(b.block_bound.minutes()) << ',' << decimal(b.horizon_bound.minutes()) << ','
                  << decimal(w_star) << ',' << (b.conformant ? "true" : "false") << '\n';
  }
  return kExitOk;
}

int cmd_exact(const Options& o, std::ostream& out) {
  const ClinicInstance inst = load_instance(o.common.instance);
  const CostWeights w = single_weights(inst, o.weights);
  const SearchConfig cfg = search_of(o.search);
  Solution sol;
  if (o.scope == "block") {
    sol = solve_block_exact(expand_block(inst), w, cfg);
  } else if (o.scope == "horizon") {
    sol = solve_horizon_exact(inst, w, cfg);
  } else {
    const ScenarioSet set = draw_scenarios(inst, dist_of(o.dist), o.K, StreamKey{o.seed, tag_of("exact"), 0});
    sol = solve_saa_replication(inst, w, set, cfg);
  }
  Sink sink(out, o.common, "exact");
  if (format_of(o.common) == Format::json) {
    Json j = solution_json(inst, sol);
    j["scope"] = o.scope;
    sink.stream() << j.dump(2) << '\n';
  } else {
    write_evaluation_csv(inst, sol.tpl, mean_evaluation(inst, sol.tpl), sink.stream());
  }
  write_timeline(o.timeline, inst, sol.tpl);
  return kExitOk;
}

int cmd_saa(const Options& o, std::ostream& out) {
  const ClinicInstance inst = load_instance(o.common.instance);
  const CostWeights w = single_weights(inst, o.weights);
  SAAConfig cfg;
  cfg.K = o.K;
  cfg.nu0 = o.nu0;
  cfg.nu_max = o.nu_max;
  cfg.xi = o.xi;
  cfg.p = 1.0 - o.conf;
  cfg.K_step = o.k_step;
  cfg.max_rounds = o.max_rounds;
  cfg.dist = dist_of(o.dist);
  cfg.scope = o.scope == "horizon" ? Scope::horizon : Scope::block;
  cfg.search = search_of(o.search);
  const SAAResult r = saa_procedure(inst, w, cfg, o.seed, o.inner == "alg4" ? InnerSolver::alg4 : InnerSolver::exact);
  Sink sink(out, o.common, "saa");
  if (format_of(o.common) == Format::json) {
    Json j;
    j["psi_bar"] = r.psi_bar;
    j["h"] = r.h;
    j["S2"] = r.S2;
    j["replications_used"] = r.replications_used;
    j["K"] = r.K;
    j["rounds"] = r.rounds;
    j["converged"] = r.converged;
    j["objectives"] = r.objectives;
    j["running_average"] = r.running_average;
    j["incumbent_replication"] = r.incumbent_replication + 1;
    j["incumbent"] = solution_json(inst, r.incumbent);
    sink.stream() << j.dump(2) << '\n';
  } else {
    sink.stream() << "replication,K,objective,running_average,incumbent\n";
    for (std::size_t u = 0; u < r.objectives.size(); ++u)
      sink.stream() << u + 1 << ',' << r.K << ',' << decimal(r.objectives[u]) << ','
                    << decimal(r.running_average[u]) << ',' << (u == r.incumbent_replication ? 1 : 0) << '\n';
  }
  return kExitOk;
}

// Every method sees the same sample paths; FCFA redraws its order per path.
std::vector<ResultRow> monte_carlo_rows(const ClinicInstance& inst, const std::vector<std::string>& methods,
                                        const Options& o) {
  const ScenarioSet set = draw_scenarios(inst, dist_of(o.dist), o.paths, mc_key(o.seed));
  const std::vector<CostWeights> grid = weight_grid(inst, o.weights);
  const SearchConfig search = search_of(o.search);
  std::vector<ResultRow> rows;
  for (const auto& method : methods) {
    std::optional<MonteCarloResult> shared;
    for (const CostWeights& w : grid) {
      MonteCarloResult mc;
      if (method == "exact") {
        mc = evaluate_template_mc(solve_horizon_exact(inst, w, search).tpl, set, inst.regular_time, w);
      } else {
        if (!shared) {
          if (method == "fcfa") {
            const TemplateSource source = [&](std::size_t path) {
              auto rng = fcfa_stream(o.seed, path);
              return fcfa(inst, rng);
            };
            shared = evaluate_template_mc(source, set, inst.regular_time, w);
          } else {
            shared = evaluate_template_mc(build_template(inst, method, o.seed, w, search), set,
                                          inst.regular_time, w);
          }
        }
        mc = *shared;
      }
      ResultRow r;
      r.method = method;
      r.alpha = w.alpha;
      r.beta_a = w.beta_a;
      r.beta_p = w.beta_p;
      r.o_a = w.o_a;
      r.o_p = w.o_p;
      r.pa_overtime = mc.overtime_a.mean;
      r.p_overtime = mc.overtime_p.mean;
      r.pa_idle = mc.idle_a.mean;
      r.p_idle = mc.idle_p.mean;
      r.wait_stage1 = mc.wait_a.mean;
      r.wait_stage2 = mc.wait_p.mean;
      r.objective = r.recombined();
      r.seed = o.seed;
      r.paths = o.paths;
      rows.push_back(r);
    }
  }
  return rows;
}

int cmd_simulate(const Options& o, std::ostream& out, const std::string& sub) {
  const ClinicInstance inst = load_instance(o.common.instance);
  if (o.paths == 0) throw std::invalid_argument("--paths must be positive");
  const auto methods = sub == "simulate" ? std::vector<std::string>{o.method} : o.methods;
  if (methods.empty()) throw std::invalid_argument("--methods is empty");
  const auto rows = monte_carlo_rows(inst, methods, o);
  Sink sink(out, o.common, sub);
  write_rows(rows, format_of(o.common), sink.stream());
  return kExitOk;
}

OverbookStrategy strategy_of(const std::string& s) {
  if (s == "lf") return OverbookStrategy::level_front;
  if (s == "ff") return OverbookStrategy::full_front;
  if (s == "none") return OverbookStrategy::none;
  throw std::invalid_argument("unknown plan " + s);
}

int cmd_noshow(const Options& o, std::ostream& out) {
  const ClinicInstance inst = load_instance(o.common.instance);
  const AppointmentTemplate base = algorithm2(expand_block(inst));
  const Duration R = o.R ? Duration::from_decimal(*o.R) : inst.regular_time;
  const NoShowProbs probs{o.p_plus, o.p};
  const std::vector<CostWeights> grid = weight_grid(inst, o.weights);

  struct Metrics {
    double wait, idle_a, idle_p, ot_a, ot_p;
    bool exact;
    std::uint64_t paths;
  };
  Json plans = Json::array();
  std::vector<std::string> lines;
  for (const auto& name : o.plans) {
    const OverbookPlan plan = build_overbook_plan(base, strategy_of(name), probs);
    Metrics m{};
    std::vector<double> costs;
    if (plan.scheduled() <= o.cap) {
      const ExpectedMetrics e = enumerate_expected_metrics(plan, R, probs, o.cap);
      if (e.mass != 1) throw std::runtime_error("probability mass differs from 1");
      m = {e.wait_d(), e.idle_a_d(), e.idle_p_d(), e.overtime_a_d(), e.overtime_p_d(), true, e.paths};
      for (const auto& w : grid) costs.push_back(expected_cost_per_patient(e, w, plan.scheduled()));
    } else if (o.mc_paths > 0) {
      const NoShowSample s = sample_expected_metrics(plan, R, probs, o.mc_paths, o.seed);
      m = {s.wait, s.idle_a, s.idle_p, s.overtime_a, s.overtime_p, false, s.paths};
      for (const auto& w : grid)
        costs.push_back((w.alpha * s.wait + w.beta_a * s.idle_a + w.beta_p * s.idle_p + w.o_a * s.overtime_a +
                         w.o_p * s.overtime_p) /
                        static_cast<double>(plan.scheduled()));
    } else {
      enumerate_expected_metrics(plan, R, probs, o.cap);  // throws with the fallback hint
    }
    Json entries = Json::array();
    for (const auto& e : plan.entries) entries.push_back({{"slot", e.slot + 1}, {"duplicates", e.duplicates}});
    Json cost_rows = Json::array();
    for (std::size_t g = 0; g < grid.size(); ++g) {
      cost_rows.push_back({{"alpha", grid[g].alpha}, {"o", grid[g].o_a}, {"cost_per_patient", costs[g]}});
      lines.push_back(name + ',' + decimal(grid[g].alpha) + ',' + decimal(grid[g].beta_a) + ',' +
                      decimal(grid[g].o_a) + ',' + decimal(m.wait) + ',' + decimal(m.idle_a) + ',' +
                      decimal(m.idle_p) + ',' + decimal(m.ot_a) + ',' + decimal(m.ot_p) + ',' +
                      std::to_string(plan.scheduled()) + ',' + decimal(costs[g]));
    }
    plans.push_back({{"plan", name},
                     {"e_plus", plan.e_plus},
                     {"e", plan.e},
                     {"scheduled", plan.scheduled()},
                     {"entries", entries},
                     {"method", m.exact ? "enumeration" : "monte_carlo"},
                     {"paths", m.paths},
                     {"metrics",
                      {{"wait", m.wait},
                       {"idle_a", m.idle_a},
                       {"idle_p", m.idle_p},
                       {"overtime_a", m.ot_a},
                       {"overtime_p", m.ot_p}}},
                     {"costs", cost_rows}});
  }
  Sink sink(out, o.common, "noshow");
  if (format_of(o.common) == Format::json) {
    sink.stream() << Json{{"p_plus", o.p_plus}, {"p", o.p}, {"R", R.minutes()}, {"plans", plans}}.dump(2) << '\n';
  } else {
    sink.stream() << "plan,alpha,beta,o,wait,idle_a,idle_p,overtime_a,overtime_p,scheduled,cost_per_patient\n";
    for (const auto& l : lines) sink.stream() << l << '\n';
  }
  return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--instance", o.common.instance, "instance JSON file")->required()->check(CLI::ExistingFile);
  sub->add_option("--format", o.common.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.common.out, "output file (default: stdout or $BLOCKSCHED_OUTPUT_DIR)");
}

void add_weights(CLI::App* sub, Options& o, bool grids) {
  sub->add_option("--alpha", o.weights.alpha, "waiting cost weight");
  sub->add_option("--beta", o.weights.beta, "idle cost weight for both resources");
  sub->add_option("--o", o.weights.o, "overtime cost weight for both resources");
  if (grids) {
    sub->add_option("--alpha-grid", o.weights.alpha_grid, "comma-separated α values")->delimiter(',');
    sub->add_option("--o-grid", o.weights.o_grid, "comma-separated overtime weights")->delimiter(',');
  }
}

void add_dist(CLI::App* sub, Options& o) {
  sub->add_option("--dist", o.dist.family, "service-time family")->check(CLI::IsMember({"normal", "uniform"}));
  sub->add_option("--width", o.dist.width, "uniform width w")->check(CLI::Range(0.0, 2.0));
}

void add_search(CLI::App* sub, Options& o) {
  sub->add_option("--mode", o.search.mode)->check(CLI::IsMember({"enumerate", "bnb"}));
  sub->add_option("--node-limit", o.search.node_limit);
  sub->add_option("--time-limit", o.search.time_limit, "seconds");
  sub->add_option("--tau-rule", o.search.tau_rule)->check(CLI::IsMember({"earliest", "quantile"}));
}

const std::vector<std::string> kMethods = {"alg1", "alg2", "alg3", "alg4", "fcfa", "exact"};
const std::vector<std::string> kHorizonMethods = {"alg3", "alg4", "fcfa", "exact"};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block appointment templates for two-stage outpatient clinics", "blocksched"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "check an instance file");
  add_common(validate, o);

  auto* balance = app.add_subcommand("balance", "reduce ratios until L_a <= L_p");
  add_common(balance, o);

  auto* tmpl = app.add_subcommand("template", "build and evaluate a template");
  add_common(tmpl, o);
  add_weights(tmpl, o, false);
  add_search(tmpl, o);
  tmpl->add_option("--method", o.method)->check(CLI::IsMember(kMethods));
  tmpl->add_option("--k", o.k, "number of blocks")->check(CLI::PositiveNumber);
  tmpl->add_option("--seed", o.seed);
  tmpl->add_option("--timeline", o.timeline, "also write the timeline CSV here");

  auto* bnds = app.add_subcommand("bounds", "closed-form wait, bounds and w*");
  add_common(bnds, o);

  auto* exact = app.add_subcommand("exact", "exact sequence search");
  add_common(exact, o);
  add_weights(exact, o, false);
  add_search(exact, o);
  add_dist(exact, o);
  exact->add_option("--scope", o.scope)->check(CLI::IsMember({"block", "horizon", "saa"}));
  exact->add_option("--K", o.K, "scenarios for --scope saa")->check(CLI::PositiveNumber);
  exact->add_option("--seed", o.seed);
  exact->add_option("--timeline", o.timeline, "also write the timeline CSV here");

  auto* saa = app.add_subcommand("saa", "sample average approximation");
  add_common(saa, o);
  add_weights(saa, o, false);
  add_search(saa, o);
  add_dist(saa, o);
  saa->add_option("--K", o.K)->check(CLI::PositiveNumber);
  saa->add_option("--nu0", o.nu0)->check(CLI::Range(2, 1000));
  saa->add_option("--nu-max", o.nu_max)->check(CLI::Range(2, 1000));
  saa->add_option("--xi", o.xi)->check(CLI::Range(0.0, 1.0));
  saa->add_option("--conf", o.conf, "confidence level")->check(CLI::Range(0.0, 1.0));
  saa->add_option("--k-step", o.k_step);
  saa->add_option("--max-rounds", o.max_rounds)->check(CLI::PositiveNumber);
  saa->add_option("--seed", o.seed);
  saa->add_option("--inner", o.inner)->check(CLI::IsMember({"exact", "alg4"}));
  saa->add_option("--scope", o.scope)->check(CLI::IsMember({"block", "horizon"}));

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo evaluation of one method");
  add_common(simulate, o);
  add_weights(simulate, o, true);
  add_dist(simulate, o);
  add_search(simulate, o);
  simulate->add_option("--method", o.method)->check(CLI::IsMember(kHorizonMethods));
  simulate->add_option("--paths", o.paths)->check(CLI::PositiveNumber);
  simulate->add_option("--seed", o.seed);

  auto* compare = app.add_subcommand("compare", "methods on shared sample paths");
  add_common(compare, o);
  add_weights(compare, o, true);
  add_dist(compare, o);
  add_search(compare, o);
  compare->add_option("--methods", o.methods)->delimiter(',')->check(CLI::IsMember(kHorizonMethods));
  compare->add_option("--paths", o.paths)->check(CLI::PositiveNumber);
  compare->add_option("--seed", o.seed);

  auto* noshow = app.add_subcommand("noshow", "overbooking plans under no-shows");
  add_common(noshow, o);
  add_weights(noshow, o, true);
  noshow->add_option("--plan", o.plans)->delimiter(',')->check(CLI::IsMember({"none", "lf", "ff"}));
  noshow->add_option("--p-plus", o.p_plus)->check(CLI::Range(0.0, 1.0));
  noshow->add_option("--p", o.p)->check(CLI::Range(0.0, 1.0));
  noshow->add_option("--R", o.R, "regular time override");
  noshow->add_option("--cap", o.cap, "enumeration cap in patients");
  noshow->add_option("--mc-paths", o.mc_paths, "Monte-Carlo paths when the cap is exceeded");
  noshow->add_option("--seed", o.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "validate") return cmd_validate(o, out);
    if (sub == "balance") return cmd_balance(o, out);
    if (sub == "template") return cmd_template(o, out);
    if (sub == "bounds") return cmd_bounds(o, out);
    if (sub == "exact") return cmd_exact(o, out);
    if (sub == "saa") return cmd_saa(o, out);
    if (sub == "simulate" || sub == "compare") return cmd_simulate(o, out, sub);
    if (sub == "noshow") return cmd_noshow(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace blocksched::cli
