#ifndef BZDOS_PTR_HPP
#define BZDOS_PTR_HPP

#include <vector>

#include "bzdos/model.hpp"
#include "bzdos/types.hpp"

// Lorentzian-smeared DOS on the uniform Monkhorst-Pack grid (periodic
// trapezoidal rule), the baseline smearing method.

namespace bzdos {

struct SmearingParams {
  double eta = 0.1;  // Lorentzian width, eV

  void validate() const {
    if (!(eta > 0) || !std::isfinite(eta)) throw DomainError("SmearingParams: eta must be > 0");
  }
};

inline double lorentzian(double x, double eta) {
  return eta / (pi * (x * x + eta * eta));
}

// The N^d fractional grid {n/N - 1/2}. For truncated (non-periodic) domains
// the same construction is applied to the box, closed at both ends.
std::vector<VectorXd> ptr_grid(const Model& model, int n);

DosEstimate ptr_dos(const Model& model, double energy, const SmearingParams& p, int n,
                    int threads = 1);

// Same quantity through the Green-function identity
//   D_eta(E) = -(1/pi) Im (1/N^d) sum_k Tr (E + i eta - H_k)^-1.
DosEstimate ptr_dos_resolvent(const Model& model, double energy, const SmearingParams& p, int n,
                              int threads = 1);

}  // namespace bzdos

#endif
