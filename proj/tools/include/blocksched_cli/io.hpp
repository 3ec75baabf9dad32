#ifndef BLOCKSCHED_CLI_IO_HPP
#define BLOCKSCHED_CLI_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <blocksched/instance.hpp>
#include <blocksched/timeline.hpp>

namespace blocksched::cli {

using Json = nlohmann::ordered_json;

// Malformed input files. The message names the offending field.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structural parse only; semantic checks are validate_instance's job.
ClinicInstance parse_instance(const Json& j);
ClinicInstance load_instance(const std::string& path, bool validate = true);
Json instance_json(const ClinicInstance& inst);

// Shortest fixed-point rendering with at most six decimals ("17.8", "90").
std::string decimal(double x);

struct ResultRow {
  std::string method;
  double alpha = 0, beta_a = 0, beta_p = 0, o_a = 0, o_p = 0;
  double pa_overtime = 0, p_overtime = 0, pa_idle = 0, p_idle = 0;
  double wait_stage1 = 0, wait_stage2 = 0;
  double objective = 0;
  std::uint64_t seed = 0;
  std::size_t paths = 0;

  double recombined() const;
};

extern const std::vector<std::string> kResultColumns;

enum class Format { csv, json };

void write_rows(const std::vector<ResultRow>& rows, Format format, std::ostream& os);
std::vector<ResultRow> read_rows_csv(std::istream& is);

// Per-slot timeline with a trailing summary row.
void write_evaluation_csv(const ClinicInstance& inst, const AppointmentTemplate& tpl,
                          const ScheduleEvaluation& ev, std::ostream& os);
Json evaluation_json(const AppointmentTemplate& tpl, const ScheduleEvaluation& ev);
Json template_json(const ClinicInstance& inst, const AppointmentTemplate& tpl);

}  // namespace blocksched::cli

#endif
