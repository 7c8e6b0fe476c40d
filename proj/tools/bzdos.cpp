// bzdos: density-of-states benchmark driver.
//
// Subcommands: dos, converge, eta-sweep, cost, diagnose, plot.
// Exit codes: 0 success, 1 usage/configuration error, 2 BCD diagnostic failure.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "bzdos/bench.hpp"
#include "bzdos/wannier.hpp"

namespace fs = std::filesystem;
using namespace bzdos;

namespace {

struct CommonOpts {
  std::string system = "chain";
  std::string hr_path;
  double fermi = 0.0;
  std::string method = "ptr";
  std::vector<double> energies;
  double alpha = 0.01;
  double delta_e = 0.1;
  double diag_tol = 1e-6;
  double eta = 0.05;
  int n = 100;
  double tol = 1e-8;
  std::vector<double> schedule;
  bool schedule_is_tol = false;
  std::string reference = "analytic";
  std::string out_dir;
  int threads = 1;
  bool no_timing = false;
  double t_hop = 1.0;
  double gamma = 1.0, delta = 2.0, window = 3.0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_method = true) {
  cmd->add_option("--system", o.system, "named system: chain|graphene|gas1d|gas2d|gas3d|toy");
  cmd->add_option("--hr", o.hr_path, "Wannier90 seedname_hr.dat path (overrides --system)");
  cmd->add_option("--fermi", o.fermi, "Fermi level subtracted at ingestion (eV)");
  if (with_method) cmd->add_option("--method", o.method, "ptr|iai|lt|bcd");
  cmd->add_option("--energy", o.energies, "energies E (eV); repeatable");
  cmd->add_option("--alpha", o.alpha, "BCD deformation amplitude (1/eV)");
  cmd->add_option("--delta-e", o.delta_e, "BCD energy window (eV)");
  cmd->add_option("--diag-tol", o.diag_tol, "BCD diagnostic tolerance (eV)");
  cmd->add_option("--eta", o.eta, "Lorentzian smearing width (eV)");
  cmd->add_option("--n", o.n, "grid points per dimension");
  cmd->add_option("--tol", o.tol, "adaptive tolerance (iai)");
  cmd->add_option("--schedule", o.schedule, "schedule of N (or tolerances with --tol-schedule)")
      ->delimiter(',');
  cmd->add_flag("--tol-schedule", o.schedule_is_tol, "schedule lists tolerances, not N");
  cmd->add_option("--reference", o.reference, "analytic | path to a reference value file");
  cmd->add_option("--out", o.out_dir, "output directory for CSV/SVG files");
  cmd->add_option("--threads", o.threads, "worker threads (results are thread-count invariant)");
  cmd->add_flag("--no-timing", o.no_timing, "write wall_time_s = 0 for byte-stable CSVs");
  cmd->add_option("--t", o.t_hop, "hopping constant for chain/graphene (eV)");
  cmd->add_option("--gamma", o.gamma, "toy model slope gamma");
  cmd->add_option("--delta", o.delta, "toy model slope delta");
  cmd->add_option("--window", o.window, "toy model half-width of the k interval");
}

bench::StudySpec build_spec(const CommonOpts& o) {
  bench::StudySpec spec;
  if (!o.hr_path.empty()) {
    const auto hr = wannier::parse_hr_file(o.hr_path);
    spec.system.name = fs::path(o.hr_path).stem().string();
    spec.system.model = std::make_shared<TightBindingModel>(wannier::to_model(hr, o.fermi));
  } else if (o.system == "chain") {
    spec.system = ref::make_chain(o.t_hop);
  } else if (o.system == "graphene") {
    spec.system = ref::make_graphene(o.t_hop);
  } else if (o.system == "toy") {
    spec.system = ref::make_two_block_toy(o.gamma, o.delta, o.window);
  } else {
    spec.system = ref::make_by_name(o.system);
  }
  spec.method = bench::method_from_string(o.method);
  spec.bcd.alpha = o.alpha;
  spec.bcd.delta_e = o.delta_e;
  spec.bcd.diag_tol = o.diag_tol;
  spec.smearing.eta = o.eta;
  spec.schedule = o.schedule;
  spec.schedule_is_tol = o.schedule_is_tol;
  spec.reference = o.reference;
  spec.threads = o.threads;
  spec.emit_timing = !o.no_timing;
  if (spec.schedule.empty()) spec.schedule = {static_cast<double>(o.n)};
  return spec;
}

std::vector<double> energies_or_default(const CommonOpts& o, const bench::StudySpec& spec) {
  if (!o.energies.empty()) return o.energies;
  std::vector<double> out;
  for (const auto& b : spec.system.benchmark_energies) out.push_back(b.energy);
  if (out.empty()) throw ConfigError("no --energy given and the system has no benchmark list");
  return out;
}

std::string energy_tag(double e) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", e);
  std::string s = buf;
  for (char& c : s) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
  }
  return s;
}

fs::path ensure_out(const CommonOpts& o) {
  if (o.out_dir.empty()) return {};
  fs::create_directories(o.out_dir);
  return fs::path(o.out_dir);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_dos(const CommonOpts& o) {
  auto spec = build_spec(o);
  const auto energies = energies_or_default(o, spec);
  const auto out_dir = ensure_out(o);
  std::ostringstream csv;
  csv << "energy,value,nevals,wall_time_s\n";
  for (double e : energies) {
    const double n_or_tol = spec.method == bench::Method::iai && !o.schedule_is_tol
                                ? o.tol
                                : spec.schedule.back();
    const DosEstimate est = bench::run_method(spec, e, n_or_tol);
    csv << fmt17(e) << ',' << fmt17(est.value) << ',' << est.n_evals << ','
        << fmt17(spec.emit_timing ? est.wall_time_s : 0.0) << '\n';
    if (!out_dir.empty()) {
      std::ofstream ref_out(out_dir / ("value_" + spec.system.name + "_" + o.method + "_e" +
                                       energy_tag(e) + ".txt"));
      ref_out << fmt17(est.value) << "\n";
    }
  }
  std::cout << csv.str();
  if (!out_dir.empty()) {
    std::ofstream f(out_dir / ("dos_" + spec.system.name + "_" + o.method + ".csv"));
    f << csv.str();
  }
  return 0;
}

int cmd_converge(const CommonOpts& o) {
  auto spec = build_spec(o);
  if (spec.schedule.size() < 2) throw ConfigError("converge needs --schedule with several entries");
  const auto energies = energies_or_default(o, spec);
  const auto out_dir = ensure_out(o);
  for (double e : energies) {
    const auto rows = bench::run_convergence(spec, e);
    if (out_dir.empty()) {
      bench::write_convergence_csv(std::cout, rows, spec.emit_timing);
    } else {
      const auto path = out_dir / ("converge_" + spec.system.name + "_" + o.method + "_e" +
                                   energy_tag(e) + ".csv");
      std::ofstream f(path);
      bench::write_convergence_csv(f, rows, spec.emit_timing);
      std::cout << path.string() << "\n";
    }
  }
  return 0;
}

int cmd_eta_sweep(const CommonOpts& o, const std::vector<double>& budgets,
                  const std::vector<double>& etas) {
  auto spec = build_spec(o);
  spec.schedule = {1.0};  // unused by the sweep; budgets drive the runs
  const auto energies = energies_or_default(o, spec);
  const auto out_dir = ensure_out(o);
  for (double e : energies) {
    const auto rows = bench::optimal_eta_sweep(spec, e, budgets, etas);
    std::cout << "# E = " << e << ": best eta per budget:";
    for (const auto& r : rows)
      if (r.best) std::cout << "  " << r.budget << " -> " << r.eta;
    std::cout << "\n";
    if (out_dir.empty()) {
      bench::write_eta_csv(std::cout, rows);
    } else {
      std::ofstream f(out_dir / ("eta_sweep_" + spec.system.name + "_" + o.method + "_e" +
                                 energy_tag(e) + ".csv"));
      bench::write_eta_csv(f, rows);
    }
  }
  return 0;
}

int cmd_cost(const CommonOpts& o, double target, const std::vector<double>& etas) {
  auto spec = build_spec(o);
  const auto energies = energies_or_default(o, spec);
  const auto out_dir = ensure_out(o);
  for (double e : energies) {
    const auto rows = bench::cost_to_accuracy(spec, e, target, etas);
    if (out_dir.empty()) {
      bench::write_cost_csv(std::cout, rows, spec.emit_timing);
    } else {
      std::ofstream f(out_dir / ("cost_" + spec.system.name + "_" + o.method + "_e" +
                                 energy_tag(e) + ".csv"));
      bench::write_cost_csv(f, rows, spec.emit_timing);
    }
  }
  return 0;
}

int cmd_diagnose(const CommonOpts& o) {
  auto spec = build_spec(o);
  const auto energies = energies_or_default(o, spec);
  int rc = 0;
  for (double e : energies) rc = std::max(rc, bench::diagnose(spec, e, o.n, std::cout));
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brillouin-zone density-of-states methods: PTR, IAI, LT, BCD"};
  app.require_subcommand(1);
  app.set_config("--config", "", "study configuration file (TOML-style sections per subcommand)");

  CommonOpts o;
  std::vector<double> budgets{100, 1000, 10000};
  std::vector<double> etas{0.1, 0.05, 0.02, 0.01};
  double target = 1e-5;

  auto* dos = app.add_subcommand("dos", "DOS at given energies");
  add_common(dos, o);
  auto* conv = app.add_subcommand("converge", "convergence table over a schedule");
  add_common(conv, o);
  auto* sweep = app.add_subcommand("eta-sweep", "best smearing eta per evaluation budget");
  add_common(sweep, o);
  sweep->add_option("--budgets", budgets, "evaluation budgets")->delimiter(',');
  sweep->add_option("--etas", etas, "eta grid")->delimiter(',');
  auto* cost = app.add_subcommand("cost", "cost to reach a target accuracy vs eta");
  add_common(cost, o);
  cost->add_option("--target", target, "absolute error target");
  cost->add_option("--etas", etas, "eta grid")->delimiter(',');
  auto* diag = app.add_subcommand("diagnose", "BCD spectral push-down diagnostic");
  add_common(diag, o, /*with_method=*/false);

  auto* plot = app.add_subcommand("plot", "render CSV series as a standalone SVG");
  std::vector<std::string> plot_in;
  bench::PlotSpec plot_spec;
  std::string plot_out = "plot.svg";
  bool linear_x = false, linear_y = false;
  plot->add_option("--in", plot_in, "input CSV files")->required()->delimiter(',');
  plot->add_option("--x", plot_spec.x_column, "x column name");
  plot->add_option("--y", plot_spec.y_column, "y column name");
  plot->add_flag("--linear-x", linear_x, "linear x axis (default log)");
  plot->add_flag("--linear-y", linear_y, "linear y axis (default log)");
  plot->add_option("--title", plot_spec.title, "plot title");
  plot->add_option("--out-file", plot_out, "output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (dos->parsed()) return cmd_dos(o);
    if (conv->parsed()) return cmd_converge(o);
    if (sweep->parsed()) return cmd_eta_sweep(o, budgets, etas);
    if (cost->parsed()) return cmd_cost(o, target, etas);
    if (diag->parsed()) return cmd_diagnose(o);
    if (plot->parsed()) {
      plot_spec.log_x = !linear_x;
      plot_spec.log_y = !linear_y;
      bench::emit_plot(plot_in, plot_spec, plot_out);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const ReferenceMissing& e) {
    std::cerr << "reference error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error";
    if (e.line > 0) std::cerr << " (line " << e.line << ")";
    std::cerr << ": " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
