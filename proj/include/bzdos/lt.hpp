#ifndef BZDOS_LT_HPP
#define BZDOS_LT_HPP

#include <memory>
#include <span>
#include <vector>

#include "bzdos/model.hpp"
#include "bzdos/types.hpp"

// Linear tetrahedron method: the cube grid is split into d! simplices per cell
// (segments, triangles, tetrahedra) along a fixed Kuhn diagonal, and the DOS
// of the piecewise-linear band interpolant is accumulated in closed form.

namespace bzdos {

// Exact DOS at `energy` of the linear interpolant on one simplex, times its
// volume. Corner energies must be sorted ascending (d+1 of them).
double simplex_dos(std::span<const double> corners, double energy, double volume);

// Eigenvalue grid reused across energies; building it dominates the cost of a
// DOS table, so references and convergence studies hold one of these.
class LtGrid {
 public:
  LtGrid(const Model& model, int n, int threads = 1);

  double dos(double energy, int threads = 1) const;
  long n_evals() const { return n_evals_; }

 private:
  int dim_;
  int n_;
  int stride_;
  bool wrap_;
  int bands_;
  double cell_volume_;
  long n_evals_;
  std::vector<double> eps_;  // [point * bands + band], row-major

  template <int D>
  double accumulate(double energy, int threads) const;
  const double* at(long point) const { return eps_.data() + point * bands_; }
  template <int D>
  friend struct LtAccumulate;
};

DosEstimate lt_dos(const Model& model, double energy, int n, int threads = 1);

// Evaluate many energies against one eigenvalue grid.
std::vector<double> lt_dos_many(const Model& model, std::span<const double> energies, int n,
                                int threads = 1);

}  // namespace bzdos

#endif
