#ifndef BZDOS_BENCH_HPP
#define BZDOS_BENCH_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bzdos/adaptive.hpp"
#include "bzdos/bcd.hpp"
#include "bzdos/iai.hpp"
#include "bzdos/lt.hpp"
#include "bzdos/ptr.hpp"
#include "bzdos/ref_models.hpp"

// Driver for the studies the CLI runs: convergence tables, eta optimization,
// cost-to-accuracy sweeps, diagnostics, CSV and SVG output.

namespace bzdos::bench {

enum class Method { ptr, iai, lt, bcd };
Method method_from_string(const std::string& name);
std::string method_name(Method m);

struct StudySpec {
  ref::ReferenceSystem system;
  Method method = Method::ptr;
  bcd::BcdParams bcd;
  SmearingParams smearing;
  AdaptiveConfig adaptive;           // template for IAI runs (tolerance comes from the schedule)
  std::vector<double> schedule;      // N values, or tolerances when schedule_is_tol
  bool schedule_is_tol = false;
  std::string reference = "analytic";  // "analytic" | path to a value file
  int threads = 1;
  bool emit_timing = true;  // false writes wall_time_s = 0 for byte-stable CSVs

  void validate() const;
};

struct ConvergenceRow {
  double n_or_tol = 0.0;
  long n_evals = 0;
  double wall_time_s = 0.0;
  double value = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
};

// One method evaluation at a schedule point (N for grid methods, tolerance
// for IAI; `eta_override` routes the smeared-DOS variants).
DosEstimate run_method(const StudySpec& spec, double energy, double n_or_tol,
                       std::optional<double> eta_override = std::nullopt);

double reference_value(const StudySpec& spec, double energy);

std::vector<ConvergenceRow> run_convergence(const StudySpec& spec, double energy);

struct EtaRow {
  double budget = 0.0;
  double eta = 0.0;
  double n_or_tol = 0.0;
  long n_evals = 0;
  double value = 0.0;
  double abs_error = 0.0;
  bool best = false;
};

// For each evaluation budget, run the smearing method at every eta and mark
// the eta minimizing the error against the zero-smearing reference.
std::vector<EtaRow> optimal_eta_sweep(const StudySpec& spec, double energy,
                                      const std::vector<double>& budgets,
                                      const std::vector<double>& etas);

struct CostRow {
  double eta = 0.0;
  double n_or_tol = 0.0;
  long n_evals = 0;
  double wall_time_s = 0.0;
  double value = 0.0;
  bool reached = false;  // false: target unreachable within the schedule
};

// Smallest schedule entry reaching |value - D_eta(E)| <= target for each eta;
// D_eta comes from a converged IAI run at tight tolerance.
std::vector<CostRow> cost_to_accuracy(const StudySpec& spec, double energy, double target,
                                      const std::vector<double>& etas);

// Text report + exit code (0 clean, 2 failed).
int diagnose(const StudySpec& spec, double energy, int n, std::ostream& out);

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows,
                           bool emit_timing);
void write_eta_csv(std::ostream& out, const std::vector<EtaRow>& rows);
void write_cost_csv(std::ostream& out, const std::vector<CostRow>& rows, bool emit_timing);

// Standalone log-log SVG plot of (x_col, y_col) series taken from CSV files.
struct PlotSpec {
  std::string x_column = "n";
  std::string y_column = "rel_error";
  bool log_x = true;
  bool log_y = true;
  std::string title;
};
void emit_plot(const std::vector<std::string>& csv_paths, const PlotSpec& plot,
               const std::string& out_path);

}  // namespace bzdos::bench

#endif
