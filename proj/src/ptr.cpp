#include "bzdos/ptr.hpp"

#include <chrono>

#include "bzdos/reduce.hpp"

namespace bzdos {

namespace {

struct Quadrature {
  std::vector<VectorXd> points;
  std::vector<double> weights;  // sum to the domain measure (1 for periodic BZ)
};

Quadrature quadrature(const Model& model, int n) {
  if (n < 1) throw DomainError("ptr: N must be >= 1");
  const int d = model.dim();
  const VectorXd lo = model.domain_lo(), hi = model.domain_hi();
  Quadrature q;
  if (model.periodic()) {
    long total = 1;
    for (int j = 0; j < d; ++j) total *= n;
    q.points.reserve(total);
    q.weights.assign(total, 1.0 / static_cast<double>(total));
    std::vector<int> idx(d, 0);
    for (long p = 0; p < total; ++p) {
      VectorXd k(d);
      for (int j = 0; j < d; ++j) k[j] = lo[j] + (hi[j] - lo[j]) * idx[j] / n;
      q.points.push_back(std::move(k));
      for (int j = d - 1; j >= 0; --j) {
        if (++idx[j] < n) break;
        idx[j] = 0;
      }
    }
  } else {
    // Plain trapezoid on the closed box.
    long total = 1;
    for (int j = 0; j < d; ++j) total *= (n + 1);
    q.points.reserve(total);
    q.weights.reserve(total);
    std::vector<int> idx(d, 0);
    for (long p = 0; p < total; ++p) {
      VectorXd k(d);
      double w = 1.0;
      for (int j = 0; j < d; ++j) {
        k[j] = lo[j] + (hi[j] - lo[j]) * idx[j] / n;
        w *= ((idx[j] == 0 || idx[j] == n) ? 0.5 : 1.0) * (hi[j] - lo[j]) / n;
      }
      q.points.push_back(std::move(k));
      q.weights.push_back(w);
      for (int j = d - 1; j >= 0; --j) {
        if (++idx[j] < n + 1) break;
        idx[j] = 0;
      }
    }
  }
  return q;
}

}  // namespace

std::vector<VectorXd> ptr_grid(const Model& model, int n) { return quadrature(model, n).points; }

DosEstimate ptr_dos(const Model& model, double energy, const SmearingParams& p, int n,
                    int threads) {
  p.validate();
  const auto q = quadrature(model, n);
  const long evals0 = model.eval_count();
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<double> contrib(q.points.size());
  parallel_for(q.points.size(), threads, [&](std::size_t i) {
    const VectorXd eps = model.bands(q.points[i]);
    double acc = 0.0;
    for (int b = 0; b < eps.size(); ++b) acc += lorentzian(eps[b] - energy, p.eta);
    contrib[i] = q.weights[i] * acc;
  });
  const double value = pairwise_sum(contrib);

  DosEstimate est;
  est.value = value;
  est.n_evals = model.eval_count() - evals0;
  est.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  est.method = "ptr";
  est.params = {{"eta", p.eta}, {"n", static_cast<double>(n)}};
  return est;
}

DosEstimate ptr_dos_resolvent(const Model& model, double energy, const SmearingParams& p, int n,
                              int threads) {
  p.validate();
  const auto q = quadrature(model, n);
  const long evals0 = model.eval_count();
  const auto t0 = std::chrono::steady_clock::now();
  const Complex z(energy, p.eta);
  const VectorXd no_shift;

  std::vector<Complex> contrib(q.points.size());
  parallel_for(q.points.size(), threads, [&](std::size_t i) {
    contrib[i] = q.weights[i] * model.resolvent_trace(q.points[i], no_shift, z);
  });
  const double value = -pairwise_sum(contrib).imag() / pi;

  DosEstimate est;
  est.value = value;
  est.n_evals = model.eval_count() - evals0;
  est.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  est.method = "ptr-resolvent";
  est.params = {{"eta", p.eta}, {"n", static_cast<double>(n)}};
  return est;
}

}  // namespace bzdos
