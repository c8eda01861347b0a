#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ustlab/network.hpp"

namespace ustlab {

// Configuration shared by every experiment; JSON fields mirror the struct.
struct ExperimentSpec {
  std::string experiment;
  std::string family = "hypercube";
  std::vector<int> sizes;
  int replicas = 200;
  std::uint64_t seed = 1;
  double alpha = 0.1;            // r = n^(1/2 - alpha/3), s = n^(1/2 - 2 alpha/3)
  double theta = 20.0;           // escaping threshold for audits
  double d_max = 8.0;            // balance threshold for audits
  std::vector<double> beta_grid = {0.2, 0.5, 1.0};
  std::vector<int> ell_grid = {4, 8, 16, 32};
  std::string capacity_backend = "auto";  // auto | exact | monte-carlo
  long mc_samples = 20000;
  int r_override = -1;
  int s_override = -1;
  int threads = 1;
  std::string out;

  int run_time(int n) const;
  int buffer_time(int n) const;

  void validate() const;
  std::string to_json() const;
  static ExperimentSpec from_json(const std::string& text);
};

struct ResultRow {
  std::string family;
  int n = 0;
  long replica = -1;  // -1 marks summary rows
  std::uint64_t seed = 0;
  std::string statistic;
  double value = 0.0;
  double se = 0.0;
  bool has_se = false;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
  std::string to_csv() const;
  static ExperimentResult from_csv(const std::string& text);
  std::optional<double> summary(const std::string& statistic, int n) const;
};

ExperimentResult run_diameter_scaling(const ExperimentSpec& spec);
ExperimentResult run_path_law(const ExperimentSpec& spec);
ExperimentResult run_sunny_coupling(const ExperimentSpec& spec);
ExperimentResult run_two_walk_claims(const ExperimentSpec& spec);
ExperimentResult run_height_and_ball(const ExperimentSpec& spec);
ExperimentResult run_experiment(const ExperimentSpec& spec);

// Assumption audit of a single network: balance, mixing against
// n^(1/2-alpha), escaping against theta. Quantities that exceed the exact
// backend caps are estimated and labelled as such.
struct AuditReport {
  double balance = 0.0;
  bool balance_pass = false;
  long t_mix = -1;  // -1: not determined below the cutoff
  double mixing_threshold = 0.0;
  bool mixing_pass = false;
  bool mixing_estimated = false;
  double bubble = 0.0;
  bool bubble_truncated = false;  // sqrt(n)-truncated fallback
  bool escaping_pass = false;
  std::string to_text() const;
};
AuditReport run_assumption_audit(const Network& g, double alpha, double theta, double d_max);

// Exact non-intersection probability P(X[0,r] and Y[1,r] disjoint) for two
// independent lazy walks on K_n from a common uniform start; the oracle the
// two-walk experiment is checked against on complete graphs.
double complete_nonintersection_exact(int n, int r);

}  // namespace ustlab
