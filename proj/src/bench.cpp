#include "bzdos/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace bzdos::bench {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double file_reference(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ReferenceMissing("cannot open reference file '" + path + "'");
  double v = 0.0;
  if (!(in >> v)) throw ReferenceMissing("reference file '" + path + "' holds no value");
  return v;
}

}  // namespace

Method method_from_string(const std::string& name) {
  if (name == "ptr") return Method::ptr;
  if (name == "iai") return Method::iai;
  if (name == "lt") return Method::lt;
  if (name == "bcd") return Method::bcd;
  throw ConfigError("unknown method '" + name + "' (expected ptr|iai|lt|bcd)");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::ptr: return "ptr";
    case Method::iai: return "iai";
    case Method::lt: return "lt";
    case Method::bcd: return "bcd";
  }
  return "?";
}

void StudySpec::validate() const {
  if (!system.model) throw ConfigError("study has no system");
  if (schedule.empty()) throw ConfigError("schedule must be nonempty");
  for (std::size_t i = 0; i + 1 < schedule.size(); ++i)
    if (!(schedule[i] < schedule[i + 1])) throw ConfigError("schedule must be strictly increasing");
  for (double s : schedule)
    if (!(s > 0) || !std::isfinite(s)) throw ConfigError("schedule entries must be positive");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (schedule_is_tol && method != Method::iai)
    throw ConfigError("tolerance schedules apply to the iai method only");
}

DosEstimate run_method(const StudySpec& spec, double energy, double n_or_tol,
                       std::optional<double> eta_override) {
  const Model& model = *spec.system.model;
  switch (spec.method) {
    case Method::ptr: {
      SmearingParams p = spec.smearing;
      if (eta_override) p.eta = *eta_override;
      return ptr_dos(model, energy, p, static_cast<int>(std::lround(n_or_tol)), spec.threads);
    }
    case Method::iai: {
      SmearingParams p = spec.smearing;
      if (eta_override) p.eta = *eta_override;
      AdaptiveConfig cfg = spec.adaptive;
      cfg.abs_tol = n_or_tol;
      return iai_dos(model, energy, p, cfg);
    }
    case Method::lt:
      return lt_dos(model, energy, static_cast<int>(std::lround(n_or_tol)), spec.threads);
    case Method::bcd:
      return bcd::bcd_dos(model, energy, spec.bcd, static_cast<int>(std::lround(n_or_tol)),
                          spec.threads, eta_override.value_or(0.0));
  }
  throw ConfigError("unhandled method");
}

double reference_value(const StudySpec& spec, double energy) {
  if (spec.reference == "analytic") {
    if (!spec.system.has_exact_dos())
      throw ReferenceMissing("system '" + spec.system.name + "' has no analytic reference");
    return spec.system.exact_dos(energy);
  }
  return file_reference(spec.reference);
}

std::vector<ConvergenceRow> run_convergence(const StudySpec& spec, double energy) {
  spec.validate();
  const double ref = reference_value(spec, energy);
  std::vector<ConvergenceRow> rows;
  rows.reserve(spec.schedule.size());
  for (double s : spec.schedule) {
    const DosEstimate est = run_method(spec, energy, s);
    ConvergenceRow row;
    row.n_or_tol = s;
    row.n_evals = est.n_evals;
    row.wall_time_s = est.wall_time_s;
    row.value = est.value;
    row.abs_error = std::abs(est.value - ref);
    row.rel_error = ref != 0.0 ? row.abs_error / std::abs(ref) : row.abs_error;
    rows.push_back(row);
  }
  return rows;
}

std::vector<EtaRow> optimal_eta_sweep(const StudySpec& spec, double energy,
                                      const std::vector<double>& budgets,
                                      const std::vector<double>& etas) {
  spec.validate();
  if (spec.method != Method::ptr && spec.method != Method::iai)
    throw ConfigError("eta sweep applies to smearing methods (ptr, iai)");
  if (budgets.empty() || etas.empty()) throw ConfigError("eta sweep needs budgets and etas");
  for (std::size_t i = 0; i + 1 < budgets.size(); ++i)
    if (!(budgets[i] < budgets[i + 1])) throw ConfigError("budgets must be strictly increasing");
  const double ref = reference_value(spec, energy);
  const int d = spec.system.model->dim();

  std::vector<EtaRow> rows;
  for (double budget : budgets) {
    std::size_t best_idx = rows.size();
    double best_err = 0.0;
    bool have_best = false;
    for (double eta : etas) {
      EtaRow row;
      row.budget = budget;
      row.eta = eta;
      DosEstimate est;
      if (spec.method == Method::ptr) {
        const int n = std::max(1, static_cast<int>(std::floor(std::pow(budget, 1.0 / d) + 0.5)));
        row.n_or_tol = n;
        est = run_method(spec, energy, n, eta);
      } else {
        // Tighten the tolerance while the evaluation budget holds.
        double tol = 1e-2, used_tol = tol;
        est = run_method(spec, energy, tol, eta);
        while (tol > 1e-13) {
          const DosEstimate trial = run_method(spec, energy, tol / 4.0, eta);
          if (trial.n_evals > budget) break;
          tol /= 4.0;
          used_tol = tol;
          est = trial;
        }
        row.n_or_tol = used_tol;
      }
      row.n_evals = est.n_evals;
      row.value = est.value;
      row.abs_error = std::abs(est.value - ref);
      if (!have_best || row.abs_error < best_err) {
        best_err = row.abs_error;
        best_idx = rows.size();
        have_best = true;
      }
      rows.push_back(row);
    }
    rows[best_idx].best = true;
  }
  return rows;
}

std::vector<CostRow> cost_to_accuracy(const StudySpec& spec, double energy, double target,
                                      const std::vector<double>& etas) {
  spec.validate();
  if (!(target > 0)) throw ConfigError("target error must be positive");
  if (etas.empty()) throw ConfigError("cost study needs an eta grid");

  std::vector<CostRow> rows;
  for (double eta : etas) {
    // Converged smeared reference at this eta.
    AdaptiveConfig ref_cfg;
    ref_cfg.abs_tol = std::min(1e-11, target * 1e-3);
    ref_cfg.max_subdivisions = 20000;
    const double ref =
        iai_dos(*spec.system.model, energy, SmearingParams{eta}, ref_cfg).value;

    CostRow row;
    row.eta = eta;
    std::vector<double> order = spec.schedule;
    if (spec.schedule_is_tol) std::reverse(order.begin(), order.end());  // loosest first
    for (double s : order) {
      const DosEstimate est = run_method(spec, energy, s, eta);
      if (std::abs(est.value - ref) <= target) {
        row.n_or_tol = s;
        row.n_evals = est.n_evals;
        row.wall_time_s = est.wall_time_s;
        row.value = est.value;
        row.reached = true;
        break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

int diagnose(const StudySpec& spec, double energy, int n, std::ostream& out) {
  const auto report = bcd::bcd_diagnose(*spec.system.model, energy, spec.bcd, n, spec.threads);
  out << "system " << spec.system.name << " at E = " << energy << " eV, N = " << n << "\n";
  out << "inspected " << report.inspected << " band points within delta_e/2 = "
      << 0.5 * spec.bcd.delta_e << " eV\n";
  out << "worst Im(eps) = " << fmt(report.worst_im) << " eV (tol " << spec.bcd.diag_tol << ")\n";
  if (!report.failed) {
    out << "OK: deformed spectrum pushed down everywhere near E\n";
    return 0;
  }
  out << "FAILED: " << report.entries.size() << " eigenvalue(s) moved upward\n";
  const std::size_t shown = std::min<std::size_t>(report.entries.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& e = report.entries[i];
    out << "  k = (";
    for (int j = 0; j < e.k.size(); ++j) out << (j ? "," : "") << e.k[j];
    out << ") band " << e.band << " eps = " << e.eps_real << " Im = " << fmt(e.im_shift) << "\n";
  }
  if (report.entries.size() > shown)
    out << "  ... " << (report.entries.size() - shown) << " more\n";
  return 2;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows,
                           bool emit_timing) {
  out << "n,nevals,wall_time_s,value,abs_error,rel_error\n";
  for (const auto& r : rows)
    out << fmt(r.n_or_tol) << ',' << r.n_evals << ',' << fmt(emit_timing ? r.wall_time_s : 0.0)
        << ',' << fmt(r.value) << ',' << fmt(r.abs_error) << ',' << fmt(r.rel_error) << '\n';
}

void write_eta_csv(std::ostream& out, const std::vector<EtaRow>& rows) {
  out << "budget,eta,n,nevals,value,abs_error,best\n";
  for (const auto& r : rows)
    out << fmt(r.budget) << ',' << fmt(r.eta) << ',' << fmt(r.n_or_tol) << ',' << r.n_evals << ','
        << fmt(r.value) << ',' << fmt(r.abs_error) << ',' << (r.best ? 1 : 0) << '\n';
}

void write_cost_csv(std::ostream& out, const std::vector<CostRow>& rows, bool emit_timing) {
  out << "eta,n,nevals,wall_time_s,value,reached\n";
  for (const auto& r : rows)
    out << fmt(r.eta) << ',' << fmt(r.n_or_tol) << ',' << r.n_evals << ','
        << fmt(emit_timing ? r.wall_time_s : 0.0) << ',' << fmt(r.value) << ','
        << (r.reached ? 1 : 0) << '\n';
}

// ---------------------------------------------------------------------------
// SVG output

namespace {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

Series load_series(const std::string& path, const PlotSpec& plot) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open CSV '" + path + "'", 0);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV '" + path + "'", 1);
  const auto header = split_csv_line(line);
  long xi = -1, yi = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == plot.x_column) xi = static_cast<long>(i);
    if (header[i] == plot.y_column) yi = static_cast<long>(i);
  }
  if (xi < 0 || yi < 0)
    throw ParseError("CSV '" + path + "' lacks columns " + plot.x_column + "/" + plot.y_column, 1);

  Series s;
  const auto slash = path.find_last_of('/');
  const std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  s.label = stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv"
                ? stem.substr(0, stem.size() - 4)
                : stem;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (static_cast<long>(cells.size()) <= std::max(xi, yi))
      throw ParseError("short CSV row in '" + path + "'", lineno);
    try {
      const double x = std::stod(cells[xi]);
      const double y = std::stod(cells[yi]);
      if ((plot.log_x && x <= 0) || (plot.log_y && y <= 0)) continue;
      s.points.emplace_back(x, y);
    } catch (...) {
      throw ParseError("malformed CSV cell in '" + path + "'", lineno);
    }
  }
  return s;
}

std::string svg_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void emit_plot(const std::vector<std::string>& csv_paths, const PlotSpec& plot,
               const std::string& out_path) {
  std::vector<Series> series;
  series.reserve(csv_paths.size());
  for (const auto& p : csv_paths) series.push_back(load_series(p, plot));

  const double width = 640, height = 480;
  const double ml = 70, mr = 20, mt = 30, mb = 50;

  double xmin = 1, xmax = 10, ymin = 1, ymax = 10;
  bool any = false;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      const double tx = plot.log_x ? std::log10(x) : x;
      const double ty = plot.log_y ? std::log10(y) : y;
      if (!any) {
        xmin = xmax = tx;
        ymin = ymax = ty;
        any = true;
      } else {
        xmin = std::min(xmin, tx);
        xmax = std::max(xmax, tx);
        ymin = std::min(ymin, ty);
        ymax = std::max(ymax, ty);
      }
    }
  if (!any) {
    xmin = ymin = 0;
    xmax = ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;

  const auto px = [&](double tx) { return ml + (tx - xmin) / (xmax - xmin) * (width - ml - mr); };
  const auto py = [&](double ty) {
    return height - mb - (ty - ymin) / (ymax - ymin) * (height - mt - mb);
  };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

  std::ofstream out(out_path);
  if (!out) throw Error("cannot open '" + out_path + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!plot.title.empty())
    out << "<text x=\"" << svg_num(width / 2) << "\" y=\"18\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << plot.title << "</text>\n";
  // frame
  out << "<rect x=\"" << svg_num(ml) << "\" y=\"" << svg_num(mt) << "\" width=\""
      << svg_num(width - ml - mr) << "\" height=\"" << svg_num(height - mt - mb)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // decade (or linear) ticks
  const auto ticks = [](double lo, double hi) {
    std::vector<double> t;
    for (double v = std::ceil(lo); v <= std::floor(hi) + 1e-12; v += 1.0) t.push_back(v);
    if (t.size() > 12) {
      std::vector<double> thin;
      const std::size_t step = (t.size() + 11) / 12;
      for (std::size_t i = 0; i < t.size(); i += step) thin.push_back(t[i]);
      t = thin;
    }
    return t;
  };
  for (double t : ticks(xmin, xmax)) {
    out << "<line x1=\"" << svg_num(px(t)) << "\" y1=\"" << svg_num(height - mb) << "\" x2=\""
        << svg_num(px(t)) << "\" y2=\"" << svg_num(height - mb + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << svg_num(px(t)) << "\" y=\"" << svg_num(height - mb + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << (plot.log_x ? "1e" + svg_num(t) : svg_num(t)) << "</text>\n";
  }
  for (double t : ticks(ymin, ymax)) {
    out << "<line x1=\"" << svg_num(ml - 5) << "\" y1=\"" << svg_num(py(t)) << "\" x2=\""
        << svg_num(ml) << "\" y2=\"" << svg_num(py(t)) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << svg_num(ml - 8) << "\" y=\"" << svg_num(py(t) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << (plot.log_y ? "1e" + svg_num(t) : svg_num(t)) << "</text>\n";
  }
  out << "<text x=\"" << svg_num((ml + width - mr) / 2) << "\" y=\"" << svg_num(height - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << plot.x_column
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << svg_num((mt + height - mb) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 16 " << svg_num((mt + height - mb) / 2) << ")\">" << plot.y_column
      << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = palette[si % (sizeof palette / sizeof *palette)];
    const auto& s = series[si];
    if (!s.points.empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points)
        out << svg_num(px(plot.log_x ? std::log10(x) : x)) << ','
            << svg_num(py(plot.log_y ? std::log10(y) : y)) << ' ';
      out << "\"/>\n";
      for (const auto& [x, y] : s.points)
        out << "<circle cx=\"" << svg_num(px(plot.log_x ? std::log10(x) : x)) << "\" cy=\""
            << svg_num(py(plot.log_y ? std::log10(y) : y)) << "\" r=\"2.5\" fill=\"" << color
            << "\"/>\n";
    }
    out << "<rect x=\"" << svg_num(width - mr - 150) << "\" y=\"" << svg_num(mt + 8 + 16.0 * si)
        << "\" width=\"12\" height=\"3\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << svg_num(width - mr - 132) << "\" y=\"" << svg_num(mt + 14 + 16.0 * si)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace bzdos::bench
