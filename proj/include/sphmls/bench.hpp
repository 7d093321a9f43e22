#pragma once

#include "sphmls/ansatz.hpp"
#include "sphmls/io.hpp"
#include "sphmls/mls.hpp"
#include "sphmls/node_set.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace sphmls {

// f(y) = sum_i c_i exp(-alpha_i (1 - <p_i, y>)).
struct TestFunctionParams {
  struct Term {
    SpherePoint p;
    double alpha;
    double c;
    int n;  // carried along; only used by the opt-in exponent variant
  };
  std::vector<Term> terms;
};

// The five-term benchmark function; centers are renormalized on load.
TestFunctionParams default_test_function();

// With use_n_exponent each term becomes c_i exp(-alpha_i (1 - <p_i, y>))^{n_i}.
double test_function(const TestFunctionParams& params, const SpherePoint& y, bool use_n_exponent = false);
double test_function(const TestFunctionParams& params, const Vector& y, bool use_n_exponent = false);

struct AnsatzRun {
  std::string name;  // CSV column name
  AnsatzSpec spec;
  double R;  // delta = R h
};

// all_harm (R = 4.5), even_harm, even_mon_cent, tangent, even_mon (R = 3.5).
AnsatzRun standard_ansatz(const std::string& name, int L = 3);
std::vector<AnsatzRun> standard_ansatz_set(const std::vector<std::string>& names, int L = 3);

struct SweepConfig {
  std::vector<int> grid_exponents;  // n = 5 * 2^k
  std::vector<AnsatzRun> ansatz;
  std::size_t test_set_size = 10000;
  std::uint64_t seed = 1;
  std::size_t fill_samples = 10000;  // random probes on top of the probe grid
  unsigned threads = 1;
  bool use_n_exponent = false;
  bool rescale_diagonal = true;
  TestFunctionParams function = default_test_function();

  void validate() const;
};

struct AnsatzResult {
  std::string name;
  double linf = 0.0;          // over successful test points
  double worst_condition = 0.0;
  double max_lebesgue = 0.0;
  std::size_t failures = 0;   // test points whose solve failed

  bool failed() const { return failures > 0; }
};

struct SweepRecord {
  int k = 0;
  std::size_t nodes = 0;
  double fill = 0.0;        // radians
  double separation = 0.0;  // radians
  std::vector<AnsatzResult> results;

  double fill_deg() const;
  double separation_deg() const;
  double uniformity() const { return fill / separation; }
  const AnsatzResult* find(const std::string& name) const;
};

std::vector<SweepRecord> run_sweep(const SweepConfig& config);

// errors.csv and conds.csv use the fixed columns
// filldist_deg, all_harm, even_harm, even_mon_cent, tangent (missing or
// failed entries are empty); lebesgue.csv has one column per ansatz run;
// grid.csv holds N, fill_deg, sep_deg, uniformity.
void write_sweep_csvs(const std::vector<SweepRecord>& records, const std::filesystem::path& outdir);

CsvTable errors_table(const std::vector<SweepRecord>& records);
CsvTable conds_table(const std::vector<SweepRecord>& records);
CsvTable lebesgue_table(const std::vector<SweepRecord>& records);
CsvTable grid_table(const std::vector<SweepRecord>& records);

struct GridStats {
  std::size_t nodes;
  double fill;
  double separation;
};
GridStats grid_stats(const NodeSet& nodes, std::size_t fill_samples, std::uint64_t seed);
CsvTable grid_table(const std::vector<GridStats>& stats);

struct OrderFit {
  double slope;
  double intercept;
  double residual;  // RMS of the log-log fit
  std::size_t used;
};

// Least-squares slope of log(error) against log(h) over records with
// h_min_deg <= h <= h_max_deg and a finite, positive, unflagged error.
OrderFit estimate_order(const std::vector<SweepRecord>& records, const std::string& ansatz, double h_min_deg,
                        double h_max_deg);

// Same fit on explicit (h, error) pairs; needs at least three points.
OrderFit fit_order(const std::vector<double>& h, const std::vector<double>& error);

}  // namespace sphmls
