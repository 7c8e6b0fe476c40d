#ifndef BZDOS_IAI_HPP
#define BZDOS_IAI_HPP

#include "bzdos/adaptive.hpp"
#include "bzdos/model.hpp"
#include "bzdos/ptr.hpp"

// Iterated adaptive integration: the smeared DOS integrand is integrated
// adaptively in the innermost dimension, and each outer dimension integrates
// the inner result adaptively in turn. Efficient at small smearing because
// panels concentrate near the (smeared) Fermi surface.

namespace bzdos {

DosEstimate iai_dos(const Model& model, double energy, const SmearingParams& p,
                    const AdaptiveConfig& cfg);

}  // namespace bzdos

#endif
