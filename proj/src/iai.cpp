#include "bzdos/iai.hpp"

#include <chrono>

namespace bzdos {

namespace {

// Integrate dimensions [0, level] with the remaining coordinates fixed in k.
// Dimension `level` is the running integration variable; level 0 evaluates the
// smeared band sum directly.
AdaptiveResult integrate_level(const Model& model, double energy, double eta,
                               const AdaptiveConfig& cfg, int level, VectorXd& k,
                               bool& converged) {
  const double lo = model.domain_lo()[level], hi = model.domain_hi()[level];
  AdaptiveConfig level_cfg = cfg;
  std::function<double(double)> f;
  if (level == 0) {
    f = [&](double x) {
      k[0] = x;
      const VectorXd eps = model.bands(k);
      double acc = 0.0;
      for (int b = 0; b < eps.size(); ++b) acc += lorentzian(eps[b] - energy, eta);
      return acc;
    };
  } else {
    // Halve the absolute tolerance per nesting level (scaled by the width of
    // the inner domain) so the stacked levels stay within the outer budget.
    AdaptiveConfig inner_cfg = cfg;
    inner_cfg.abs_tol = cfg.abs_tol / (2.0 * (hi - lo));
    f = [&, inner_cfg](double x) {
      k[level] = x;
      auto r = integrate_level(model, energy, eta, inner_cfg, level - 1, k, converged);
      if (!r.converged) converged = false;
      return r.value;
    };
  }
  auto res = adaptive_1d(f, lo, hi, level_cfg);
  if (!res.converged) converged = false;
  return res;
}

}  // namespace

DosEstimate iai_dos(const Model& model, double energy, const SmearingParams& p,
                    const AdaptiveConfig& cfg) {
  p.validate();
  cfg.validate();
  if (model.dim() > 3) throw DomainError("iai_dos: dimension above 3");

  const long evals0 = model.eval_count();
  const auto t0 = std::chrono::steady_clock::now();

  VectorXd k = VectorXd::Zero(model.dim());
  bool converged = true;
  const auto res = integrate_level(model, energy, p.eta, cfg, model.dim() - 1, k, converged);

  DosEstimate est;
  est.value = res.value;  // unit-cube BZ: integral equals the zone average
  est.n_evals = model.eval_count() - evals0;
  est.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  est.method = "iai";
  est.params = {{"eta", p.eta}, {"abs_tol", cfg.abs_tol}, {"rel_tol", cfg.rel_tol}};
  est.converged = converged && res.converged;
  return est;
}

}  // namespace bzdos
