#ifndef BZDOS_ADAPTIVE_HPP
#define BZDOS_ADAPTIVE_HPP

#include <functional>

#include "bzdos/types.hpp"

// Globally adaptive Gauss-Kronrod (7,15) quadrature with a worst-first
// interval queue; building block of the iterated adaptive integration.

namespace bzdos {

struct AdaptiveConfig {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_subdivisions = 4000;

  void validate() const {
    if (!(abs_tol > 0) && !(rel_tol > 0))
      throw DomainError("AdaptiveConfig: need a positive tolerance");
    if (max_subdivisions < 1) throw DomainError("AdaptiveConfig: max_subdivisions >= 1");
  }
};

struct AdaptiveResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long n_evals = 0;       // integrand evaluations (15 per panel)
  bool converged = true;  // false: subdivision budget exhausted, best estimate returned
};

AdaptiveResult adaptive_1d(const std::function<double(double)>& f, double a, double b,
                           const AdaptiveConfig& cfg);

}  // namespace bzdos

#endif
