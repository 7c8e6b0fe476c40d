#ifndef BZDOS_REF_MODELS_HPP
#define BZDOS_REF_MODELS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bzdos/model.hpp"

// The benchmark systems: monatomic chain, two-band graphene, free electron
// gas in 1/2/3D, and the two-block failure toy model, each with reference DOS
// data and the energies the studies probe.

namespace bzdos::ref {

struct BenchmarkEnergy {
  std::string label;  // easy / medium / hard
  double energy = 0.0;
};

struct ReferenceSystem {
  std::string name;
  std::shared_ptr<Model> model;
  std::function<double(double)> exact_dos;  // empty when only a converged run exists
  std::vector<double> van_hove_energies;
  std::vector<BenchmarkEnergy> benchmark_energies;

  bool has_exact_dos() const { return static_cast<bool>(exact_dos); }
};

// Complete elliptic integral of the first kind, parameter convention
// (m = modulus squared), by arithmetic-geometric mean iteration.
double elliptic_K(double m);

// 1D chain H_k = 2 t cos(2 pi k); exact DOS 1/(pi sqrt((2t)^2 - E^2)).
ReferenceSystem make_chain(double t);

// Two-band graphene in reduced coordinates, hopping t. The reference DOS is a
// converged linear-tetrahedron run (resolution `reference_n`, lazily built and
// memoized per energy); the closed elliptic-integral forms are available for
// comparison through graphene_closed_form_dos.
ReferenceSystem make_graphene(double t, int reference_n = 3000);

enum class GrapheneDosForm {
  paper,       // F(x) = (1+x)^2 - (x^2-1)/4
  literature,  // F(x) = (1+x)^2 - (x^2-1)^2/4
};
double graphene_closed_form_dos(double energy, double t, GrapheneDosForm form);

// Free electron gas: bands |k+G|^2 for all integer G with |G|_inf <= g_max.
// Closed-form DOS below the first crossing energy 1/4; a fine LT run backs
// energies beyond it.
ReferenceSystem make_free_gas(int dim, int g_max = 1);

// Two independent linear bands (gamma k, -delta k) on the truncated interval
// [-window, window]; DOS reported unnormalized (sum of 1/|slope|).
ReferenceSystem make_two_block_toy(double gamma, double delta, double window);

// Registry used by the CLI: chain | graphene | gas1d | gas2d | gas3d | toy.
ReferenceSystem make_by_name(const std::string& name);
std::vector<std::string> known_systems();

}  // namespace bzdos::ref

#endif
