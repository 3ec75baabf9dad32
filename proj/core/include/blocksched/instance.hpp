#ifndef BLOCKSCHED_INSTANCE_HPP
#define BLOCKSCHED_INSTANCE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "blocksched/duration.hpp"

namespace blocksched {

struct PatientTypeSpec {
  std::string name;
  Duration lambda_mean;
  Duration lambda_sd;
  Duration mu_mean;  // zero for the Q group
  Duration mu_sd;
  int ratio = 1;

  bool q_plus() const { return mu_mean > Duration(); }
  bool conformant() const { return !q_plus() || mu_mean >= lambda_mean; }
};

struct CostWeights {
  double alpha = 1.0;
  double beta_a = 1.0;
  double beta_p = 1.0;
  double o_a = 1.0;
  double o_p = 1.0;
};

struct ClinicInstance {
  std::vector<PatientTypeSpec> types;
  CostWeights costs;
  Duration regular_time;
  int blocks = 1;

  int block_size() const;       // r
  int q_count() const;          // v
  int horizon_size() const { return blocks * block_size(); }  // n
};

struct PatientRecord {
  std::size_t type = 0;
  Duration lambda_mean;
  Duration mu_mean;
  bool q_plus = false;
};

using PatientList = std::vector<PatientRecord>;

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

struct Workloads {
  Duration pa;  // L_a
  Duration p;   // L_p
};

struct BalanceResult {
  std::vector<int> reduced_ratios;
  std::vector<std::size_t> overflow;  // removal order (list V), one entry per block
  Duration initial_L_a, initial_L_p;
  Duration final_L_a, final_L_p;
  bool unbalanceable = false;

  bool identity() const { return overflow.empty(); }
};

ValidationReport validate_instance(const ClinicInstance& inst);
// Throws std::invalid_argument carrying the first hard error.
void require_valid(const ClinicInstance& inst);

PatientList expand_block(const ClinicInstance& inst);
PatientList expand_block(const ClinicInstance& inst, const std::vector<int>& ratios);

Workloads workloads(const ClinicInstance& inst);
Workloads workloads(const ClinicInstance& inst, const std::vector<int>& ratios);

BalanceResult balance_workload(const ClinicInstance& inst);

// Overflow block contents: k copies of the per-block removals, each copy
// ordered by descending λ (declaration order on ties).
PatientList overflow_block(const ClinicInstance& inst, const BalanceResult& balance);

long long round_half_away(double x);

}  // namespace blocksched

#endif
