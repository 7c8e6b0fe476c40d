#ifndef BZDOS_BCD_HPP
#define BZDOS_BCD_HPP

#include <vector>

#include "bzdos/model.hpp"
#include "bzdos/types.hpp"

// Brillouin complex deformation. The Brillouin zone is deformed as
// k -> k + i h(k) with the gradient-weighted, Gaussian-windowed field
//   h_j(k) = -alpha sum_n <n| dH/dk_j |n> chi((eps_n - E)/dE),
// which pushes resolvent poles near E off the integration manifold. The
// resolvent-trace integral then converges exponentially under the plain
// periodic trapezoidal rule, and a cheap spectral diagnostic flags the
// symmetry-protected crossings where the deformation pushes a pole the wrong
// way (the method's failure mode).

namespace bzdos::bcd {

struct BcdParams {
  double alpha = 0.01;    // deformation amplitude, eV^-1 (fractional coordinates)
  double delta_e = 0.1;   // Gaussian energy window, eV
  double diag_tol = 1e-6; // diagnostic tolerance on Im(eps), eV

  void validate() const {
    if (!(alpha > 0) || !std::isfinite(alpha)) throw DomainError("BcdParams: alpha must be > 0");
    if (!(delta_e > 0) || !std::isfinite(delta_e))
      throw DomainError("BcdParams: delta_e must be > 0");
    if (diag_tol < 0) throw DomainError("BcdParams: diag_tol must be >= 0");
  }
};

struct DeformedPoint {
  VectorXd h;          // imaginary shift (fractional, dimensionless)
  MatrixXd jac;        // dh_i/dk_j, symmetric
  Complex det_factor;  // det(1 + i jac)
};

struct FailureEntry {
  VectorXd k;
  int band = 0;
  double eps_real = 0.0;
  double im_shift = 0.0;
};

struct FailureReport {
  std::vector<FailureEntry> entries;  // deformed eigenvalues that moved upward
  double worst_im = 0.0;              // max Im over every inspected eigenvalue
  bool failed = false;                // worst_im > diag_tol
  long inspected = 0;
  long n_evals = 0;                   // spectral solves spent on the diagnosis
};

// chi(x) = exp(-x^2) and the numerically robust divided difference
// (chi(x)-chi(y))/(x-y), confluent limit chi'(x) = -2 x exp(-x^2).
double divided_difference_gaussian(double x, double y);

VectorXd deformation(const Model& model, const VectorXd& k, double energy, const BcdParams& p);
MatrixXd deformation_jacobian(const Model& model, const VectorXd& k, double energy,
                              const BcdParams& p);
DeformedPoint deform_point(const Model& model, const VectorXd& k, double energy,
                           const BcdParams& p);

// Deformed resolvent-trace integral on the N^d grid. `eta > 0` evaluates the
// Lorentzian-smeared DOS through the same deformed contour (z = E + i eta).
DosEstimate bcd_dos(const Model& model, double energy, const BcdParams& p, int n, int threads = 1,
                    double eta = 0.0);

// Spectral push-down check: every band within delta_e/2 of E must acquire a
// non-positive imaginary part at k + i h(k).
FailureReport bcd_diagnose(const Model& model, double energy, const BcdParams& p, int n,
                           int threads = 1);

}  // namespace bzdos::bcd

#endif
