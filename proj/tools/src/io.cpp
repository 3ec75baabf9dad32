#include "blocksched_cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace blocksched::cli {

namespace {

const Json* field(const Json& obj, const std::string& key, const std::string& where, bool required) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) throw InputError(where + "." + key + " missing");
    return nullptr;
  }
  return &*it;
}

double number(const Json& obj, const std::string& key, const std::string& where, bool required, double fallback) {
  const Json* v = field(obj, key, where, required);
  if (!v) return fallback;
  if (!v->is_number()) throw InputError(where + "." + key + " must be a number");
  const double x = v->get<double>();
  if (!std::isfinite(x)) throw InputError(where + "." + key + " must be finite");
  return x;
}

int integer(const Json& obj, const std::string& key, const std::string& where, bool required, int fallback) {
  const double x = number(obj, key, where, required, fallback);
  if (x != std::floor(x)) throw InputError(where + "." + key + " must be an integer");
  return static_cast<int>(x);
}

}  // namespace

ClinicInstance parse_instance(const Json& j) {
  if (!j.is_object()) throw InputError("instance must be a JSON object");
  ClinicInstance inst;
  const Json* types = field(j, "types", "instance", true);
  if (!types->is_array()) throw InputError("instance.types must be an array");
  for (std::size_t i = 0; i < types->size(); ++i) {
    const Json& t = (*types)[i];
    const std::string where = "types[" + std::to_string(i) + "]";
    if (!t.is_object()) throw InputError(where + " must be an object");
    PatientTypeSpec s;
    if (const Json* n = field(t, "name", where, false)) {
      if (!n->is_string()) throw InputError(where + ".name must be a string");
      s.name = n->get<std::string>();
    } else {
      s.name = "T" + std::to_string(i + 1);
    }
    s.lambda_mean = Duration::from_decimal(number(t, "lambda_mean", where, true, 0));
    s.lambda_sd = Duration::from_decimal(number(t, "lambda_sd", where, false, 0));
    s.mu_mean = Duration::from_decimal(number(t, "mu_mean", where, false, 0));
    s.mu_sd = Duration::from_decimal(number(t, "mu_sd", where, false, 0));
    s.ratio = integer(t, "ratio", where, true, 0);
    inst.types.push_back(std::move(s));
  }
  if (const Json* c = field(j, "costs", "instance", false)) {
    if (!c->is_object()) throw InputError("instance.costs must be an object");
    inst.costs.alpha = number(*c, "alpha", "costs", false, 1);
    inst.costs.beta_a = number(*c, "beta_a", "costs", false, 1);
    inst.costs.beta_p = number(*c, "beta_p", "costs", false, 1);
    inst.costs.o_a = number(*c, "o_a", "costs", false, 1);
    inst.costs.o_p = number(*c, "o_p", "costs", false, 1);
  }
  inst.regular_time = Duration::from_decimal(number(j, "regular_time", "instance", true, 0));
  inst.blocks = integer(j, "blocks", "instance", false, 1);
  return inst;
}

ClinicInstance load_instance(const std::string& path, bool validate) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  ClinicInstance inst;
  try {
    inst = parse_instance(j);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
  if (validate) require_valid(inst);
  return inst;
}

Json instance_json(const ClinicInstance& inst) {
  Json j;
  j["types"] = Json::array();
  for (const auto& t : inst.types)
    j["types"].push_back({{"name", t.name},
                          {"lambda_mean", t.lambda_mean.minutes()},
                          {"lambda_sd", t.lambda_sd.minutes()},
                          {"mu_mean", t.mu_mean.minutes()},
                          {"mu_sd", t.mu_sd.minutes()},
                          {"ratio", t.ratio}});
  j["costs"] = {{"alpha", inst.costs.alpha},
                {"beta_a", inst.costs.beta_a},
                {"beta_p", inst.costs.beta_p},
                {"o_a", inst.costs.o_a},
                {"o_p", inst.costs.o_p}};
  j["regular_time"] = inst.regular_time.minutes();
  j["blocks"] = inst.blocks;
  return j;
}

std::string decimal(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s(buf);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

double ResultRow::recombined() const {
  return alpha * (wait_stage1 + wait_stage2) + beta_a * pa_idle + beta_p * p_idle + o_a * pa_overtime +
         o_p * p_overtime;
}

const std::vector<std::string> kResultColumns = {
    "method",  "alpha",  "beta_a",      "beta_p",      "o_a",       "o_p",  "pa_overtime", "p_overtime",
    "pa_idle", "p_idle", "wait_stage1", "wait_stage2", "objective", "seed", "paths"};

namespace {

std::vector<std::string> cells(const ResultRow& r) {
  return {r.method,
          decimal(r.alpha),
          decimal(r.beta_a),
          decimal(r.beta_p),
          decimal(r.o_a),
          decimal(r.o_p),
          decimal(r.pa_overtime),
          decimal(r.p_overtime),
          decimal(r.pa_idle),
          decimal(r.p_idle),
          decimal(r.wait_stage1),
          decimal(r.wait_stage2),
          decimal(r.objective),
          std::to_string(r.seed),
          std::to_string(r.paths)};
}

}  // namespace

void write_rows(const std::vector<ResultRow>& rows, Format format, std::ostream& os) {
  if (format == Format::csv) {
    for (std::size_t c = 0; c < kResultColumns.size(); ++c) os << (c ? "," : "") << kResultColumns[c];
    os << '\n';
    for (const auto& r : rows) {
      const auto v = cells(r);
      for (std::size_t c = 0; c < v.size(); ++c) os << (c ? "," : "") << v[c];
      os << '\n';
    }
    return;
  }
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json o;
    o["method"] = r.method;
    o["alpha"] = r.alpha;
    o["beta_a"] = r.beta_a;
    o["beta_p"] = r.beta_p;
    o["o_a"] = r.o_a;
    o["o_p"] = r.o_p;
    o["pa_overtime"] = r.pa_overtime;
    o["p_overtime"] = r.p_overtime;
    o["pa_idle"] = r.pa_idle;
    o["p_idle"] = r.p_idle;
    o["wait_stage1"] = r.wait_stage1;
    o["wait_stage2"] = r.wait_stage2;
    o["objective"] = r.objective;
    o["seed"] = r.seed;
    o["paths"] = r.paths;
    arr.push_back(std::move(o));
  }
  os << arr.dump(2) << '\n';
}

std::vector<ResultRow> read_rows_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("empty result file");
  std::string expected;
  for (std::size_t c = 0; c < kResultColumns.size(); ++c) expected += (c ? "," : "") + kResultColumns[c];
  if (line != expected) throw InputError("unexpected result header: " + line);
  std::vector<ResultRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(cell);
    if (v.size() != kResultColumns.size())
      throw InputError("line " + std::to_string(lineno) + ": expected " + std::to_string(kResultColumns.size()) +
                       " columns");
    ResultRow r;
    r.method = v[0];
    double* nums[] = {&r.alpha,   &r.beta_a, &r.beta_p,      &r.o_a,         &r.o_p,     &r.pa_overtime,
                      &r.p_overtime, &r.pa_idle, &r.p_idle, &r.wait_stage1, &r.wait_stage2, &r.objective};
    for (std::size_t c = 0; c < 12; ++c) *nums[c] = std::stod(v[c + 1]);
    r.seed = std::stoull(v[13]);
    r.paths = std::stoull(v[14]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_evaluation_csv(const ClinicInstance& inst, const AppointmentTemplate& tpl,
                          const ScheduleEvaluation& ev, std::ostream& os) {
  os << "block,slot,type,tau,e_a,f_a,e_p,f_p,w_a,w_p\n";
  for (std::size_t t = 0; t < tpl.size(); ++t) {
    const Slot& s = tpl.slots[t];
    const SlotTimes& st = ev.slots[t];
    os << s.block + 1 << ',' << t + 1 << ',' << inst.types.at(s.type).name << ',' << decimal(tpl.tau[t].minutes());
    if (!st.shown) {
      os << ",,,,,,\n";
      continue;
    }
    os << ',' << decimal(st.e_a.minutes()) << ',' << decimal(st.f_a.minutes());
    if (s.q_plus)
      os << ',' << decimal(st.e_p.minutes()) << ',' << decimal(st.f_p.minutes());
    else
      os << ",,";
    os << ',' << decimal(st.w_a.minutes()) << ',' << decimal(st.w_p.minutes()) << '\n';
  }
  os << "summary,,,," << decimal(ev.first_start_a.minutes()) << ',' << decimal(ev.last_finish_a.minutes()) << ','
     << decimal(ev.first_start_p.minutes()) << ',' << decimal(ev.last_finish_p.minutes()) << ','
     << decimal(ev.wait_a.minutes()) << ',' << decimal(ev.wait_p.minutes()) << '\n';
}

Json template_json(const ClinicInstance& inst, const AppointmentTemplate& tpl) {
  Json slots = Json::array();
  for (std::size_t t = 0; t < tpl.size(); ++t)
    slots.push_back({{"block", tpl.slots[t].block + 1},
                     {"type", inst.types.at(tpl.slots[t].type).name},
                     {"tau", tpl.tau[t].minutes()}});
  return {{"blocks", tpl.block_count()}, {"slots", slots}};
}

Json evaluation_json(const AppointmentTemplate& tpl, const ScheduleEvaluation& ev) {
  Json j;
  j["wait_stage1"] = ev.wait_a.minutes();
  j["wait_stage2"] = ev.wait_p.minutes();
  j["pa_idle"] = ev.idle_a.minutes();
  j["p_idle"] = ev.idle_p.minutes();
  j["pa_overtime"] = ev.overtime_a.minutes();
  j["p_overtime"] = ev.overtime_p.minutes();
  j["pa_finish"] = ev.last_finish_a.minutes();
  j["p_finish"] = ev.last_finish_p.minutes();
  Json secs = Json::array();
  for (const auto& s : sections(ev, tpl))
    secs.push_back({{"head", s.head.minutes()}, {"body", s.body.minutes()}, {"tail", s.tail.minutes()}});
  j["sections"] = secs;
  return j;
}

}  // namespace blocksched::cli
