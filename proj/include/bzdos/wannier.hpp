#ifndef BZDOS_WANNIER_HPP
#define BZDOS_WANNIER_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "bzdos/model.hpp"

// Wannier90 `seedname_hr.dat` (v1 dialect) reader/writer.

namespace bzdos::wannier {

struct HrEntry {
  int r[3] = {0, 0, 0};
  int m = 1, n = 1;  // 1-based orbital indices
  double re = 0.0, im = 0.0;
};

struct HrFile {
  std::string header_comment;
  int num_wann = 0;
  int nrpts = 0;
  std::vector<int> degeneracies;  // one per R point
  std::vector<HrEntry> entries;   // nrpts * num_wann^2 records, file order
};

// Parse the v1 format: comment line, num_wann, nrpts, degeneracies (15 per
// line), then one record per line (5 integers, 2 reals; Fortran D exponents
// accepted). Throws ParseError (with line number) or CountMismatch.
HrFile parse_hr(std::istream& in);
HrFile parse_hr_file(const std::string& path);

void write_hr(std::ostream& out, const HrFile& hr);
void write_hr_file(const std::string& path, const HrFile& hr);

// H_R[m,n] = (re + i im) / degeneracy(R), diagonal shifted by -fermi_shift at
// R = 0. Hermiticity closure is verified to 1e-8 eV; strict mode rejects
// violations (HermiticityViolation names the worst offender).
TightBindingModel to_model(const HrFile& hr, double fermi_shift = 0.0, bool strict = false);

// Serialize a model into the hr representation (unit degeneracies).
HrFile from_model(const TightBindingModel& model, const std::string& comment);

}  // namespace bzdos::wannier

#endif
