#include "bzdos/bcd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "bzdos/reduce.hpp"

namespace bzdos::bcd {

namespace {

double chi(double x) { return std::exp(-x * x); }

std::vector<VectorXd> grid_points(const Model& model, int n) {
  if (n < 2) throw DomainError("bcd: N must be >= 2");
  const int d = model.dim();
  const VectorXd lo = model.domain_lo(), hi = model.domain_hi();
  const int per_axis = model.periodic() ? n : n + 1;
  long total = 1;
  for (int j = 0; j < d; ++j) total *= per_axis;
  std::vector<VectorXd> pts;
  pts.reserve(total);
  std::vector<int> idx(d, 0);
  for (long p = 0; p < total; ++p) {
    VectorXd k(d);
    for (int j = 0; j < d; ++j) k[j] = lo[j] + (hi[j] - lo[j]) * idx[j] / n;
    pts.push_back(std::move(k));
    for (int j = d - 1; j >= 0; --j) {
      if (++idx[j] < per_axis) break;
      idx[j] = 0;
    }
  }
  return pts;
}

std::vector<double> grid_weights(const Model& model, int n, std::size_t total) {
  const int d = model.dim();
  if (model.periodic()) return std::vector<double>(total, 1.0 / static_cast<double>(total));
  const VectorXd lo = model.domain_lo(), hi = model.domain_hi();
  std::vector<double> w;
  w.reserve(total);
  std::vector<int> idx(d, 0);
  for (std::size_t p = 0; p < total; ++p) {
    double wp = 1.0;
    for (int j = 0; j < d; ++j)
      wp *= ((idx[j] == 0 || idx[j] == n) ? 0.5 : 1.0) * (hi[j] - lo[j]) / n;
    w.push_back(wp);
    for (int j = d - 1; j >= 0; --j) {
      if (++idx[j] < n + 1) break;
      idx[j] = 0;
    }
  }
  return w;
}

}  // namespace

double divided_difference_gaussian(double x, double y) {
  if (y < x) std::swap(x, y);  // fixed order makes dd(x,y) == dd(y,x) bitwise
  const double diff = x - y;
  if (diff == 0.0) return -2.0 * x * chi(x);
  return chi(y) * std::expm1(-diff * (x + y)) / diff;
}

VectorXd deformation(const Model& model, const VectorXd& k, double energy, const BcdParams& p) {
  return deform_point(model, k, energy, p).h;
}

MatrixXd deformation_jacobian(const Model& model, const VectorXd& k, double energy,
                              const BcdParams& p) {
  return deform_point(model, k, energy, p).jac;
}

DeformedPoint deform_point(const Model& model, const VectorXd& k, double energy,
                           const BcdParams& p) {
  p.validate();
  const int d = model.dim();
  const EigenData sys = model.eigensystem(k);
  const int m = static_cast<int>(sys.eps.size());

  VectorXd x(m), w(m);
  for (int n = 0; n < m; ++n) {
    x[n] = (sys.eps[n] - energy) / p.delta_e;
    w[n] = chi(x[n]);
  }

  const std::vector<MatrixXcd> grads = model.gradient_elements(k, sys);

  DeformedPoint out;
  out.h = VectorXd::Zero(d);
  for (int j = 0; j < d; ++j) {
    Complex acc = 0.0;
    for (int n = 0; n < m; ++n) acc += w[n] * grads[j](n, n);
    // <n|dH|n> is real by Hermiticity; anything beyond roundoff is a bug.
    if (std::abs(acc.imag()) > 1e-10 * (1.0 + std::abs(acc.real())))
      throw Error("deformation: non-real gradient trace");
    out.h[j] = -p.alpha * acc.real();
  }

  // dh_i/dk_j = -alpha [ sum_n w_n <n|d2H/dk_i dk_j|n>
  //                      + (1/dE) sum_{n,m} ddchi(x_n, x_m) <n|dH_j|m><m|dH_i|n> ].
  const MatrixXd hess = model.weighted_hessian_trace(k, sys, w);
  out.jac = MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Complex cross = 0.0;
      for (int a = 0; a < m; ++a) {
        cross += divided_difference_gaussian(x[a], x[a]) * grads[j](a, a) * grads[i](a, a);
        for (int b = a + 1; b < m; ++b)
          cross += divided_difference_gaussian(x[a], x[b]) *
                   (grads[j](a, b) * grads[i](b, a) + grads[j](b, a) * grads[i](a, b));
      }
      out.jac(i, j) = -p.alpha * (hess(i, j) + cross.real() / p.delta_e);
      out.jac(j, i) = out.jac(i, j);
    }

  MatrixXcd one_plus = iu * out.jac.cast<Complex>();
  one_plus.diagonal().array() += 1.0;
  out.det_factor = linalg::complex_det(one_plus);
  return out;
}

DosEstimate bcd_dos(const Model& model, double energy, const BcdParams& p, int n, int threads,
                    double eta) {
  p.validate();
  const auto pts = grid_points(model, n);
  const auto weights = grid_weights(model, n, pts.size());
  const long evals0 = model.eval_count();
  const auto t0 = std::chrono::steady_clock::now();
  const Complex z(energy, eta);

  std::vector<Complex> contrib(pts.size());
  std::vector<std::string> errors(pts.size());
  parallel_for(pts.size(), threads, [&](std::size_t i) {
    try {
      const DeformedPoint dp = deform_point(model, pts[i], energy, p);
      contrib[i] = weights[i] * dp.det_factor * model.resolvent_trace(pts[i], dp.h, z);
    } catch (const SingularShift&) {
      std::ostringstream msg;
      msg << "bcd_dos: deformed resolvent singular at k = " << pts[i].transpose()
          << " (h vanishes on the Fermi surface; BCD failure point)";
      errors[i] = msg.str();
    }
  });
  for (const auto& e : errors)
    if (!e.empty()) throw SingularShift(e);

  DosEstimate est;
  est.value = -pairwise_sum(contrib).imag() / pi;
  est.n_evals = model.eval_count() - evals0;
  est.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  est.method = "bcd";
  est.params = {{"alpha", p.alpha},
                {"delta_e", p.delta_e},
                {"n", static_cast<double>(n)},
                {"eta", eta}};
  return est;
}

FailureReport bcd_diagnose(const Model& model, double energy, const BcdParams& p, int n,
                           int threads) {
  p.validate();
  const auto pts = grid_points(model, n);
  const long evals0 = model.eval_count();

  struct PointFindings {
    std::vector<FailureEntry> inspected;
  };
  std::vector<PointFindings> findings(pts.size());

  parallel_for(pts.size(), threads, [&](std::size_t i) {
    const VectorXd& k = pts[i];
    const VectorXd eps = model.bands(k);
    const int m = static_cast<int>(eps.size());
    std::vector<int> in_window;
    for (int b = 0; b < m; ++b)
      if (std::abs(eps[b] - energy) < 0.5 * p.delta_e) in_window.push_back(b);
    if (in_window.empty()) return;

    const VectorXd h = deformation(model, k, energy, p);
    const VectorXcd lambda = model.deformed_spectrum(k, h);

    // Pair deformed eigenvalues to the real ones greedily by |Re(lambda)-eps|,
    // nearest-to-E bands first.
    std::sort(in_window.begin(), in_window.end(), [&](int a, int b) {
      return std::abs(eps[a] - energy) < std::abs(eps[b] - energy);
    });
    std::vector<bool> used(lambda.size(), false);
    for (int b : in_window) {
      int best = -1;
      double best_dist = 0.0;
      for (int l = 0; l < lambda.size(); ++l) {
        if (used[l]) continue;
        const double dist = std::abs(lambda[l].real() - eps[b]);
        if (best < 0 || dist < best_dist) {
          best = l;
          best_dist = dist;
        }
      }
      used[best] = true;
      findings[i].inspected.push_back({k, b, eps[b], lambda[best].imag()});
    }
  });

  FailureReport report;
  bool any = false;
  for (auto& f : findings)
    for (auto& e : f.inspected) {
      ++report.inspected;
      if (!any || e.im_shift > report.worst_im) report.worst_im = e.im_shift;
      any = true;
      if (e.im_shift > p.diag_tol) report.entries.push_back(std::move(e));
    }
  report.failed = any && report.worst_im > p.diag_tol;
  report.n_evals = model.eval_count() - evals0;
  return report;
}

}  // namespace bzdos::bcd
