#ifndef BZDOS_TYPES_HPP
#define BZDOS_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>

namespace bzdos {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr Complex iu{0.0, 1.0};

// Error taxonomy shared across modules.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotHermitian : Error {
  using Error::Error;
};
struct NoConvergence : Error {
  using Error::Error;
};
struct SingularShift : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct ParseError : Error {
  long line = -1;
  ParseError(const std::string& msg, long line_) : Error(msg), line(line_) {}
};
struct CountMismatch : Error {
  using Error::Error;
};
struct HermiticityViolation : Error {
  using Error::Error;
};
struct ReferenceMissing : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

// A point of the Brillouin zone in fractional coordinates, optionally with an
// imaginary shift (k -> k + i*h). The shift cap guards hand-entered points;
// method-generated deformations are validated by their own diagnostics instead.
struct KPoint {
  VectorXd k;
  VectorXd h;  // empty means no shift

  KPoint() = default;
  explicit KPoint(VectorXd k_) : k(std::move(k_)) {}
  KPoint(VectorXd k_, VectorXd h_) : k(std::move(k_)), h(std::move(h_)) {}

  bool has_shift() const { return h.size() == k.size() && h.size() > 0; }

  void validate(double shift_cap = 0.25) const {
    if (!k.allFinite()) throw DomainError("KPoint: non-finite coordinates");
    if (h.size() > 0) {
      if (h.size() != k.size()) throw DomainError("KPoint: shift dimension mismatch");
      if (!h.allFinite()) throw DomainError("KPoint: non-finite shift");
      if (h.cwiseAbs().maxCoeff() > shift_cap)
        throw DomainError("KPoint: imaginary shift exceeds cap");
    }
  }
};

// Result record every DOS method returns.
struct DosEstimate {
  double value = 0.0;
  long n_evals = 0;       // Hamiltonian (model) evaluations
  double wall_time_s = 0.0;
  std::string method;
  std::map<std::string, double> params;  // params echo + method metadata
  bool converged = true;  // false when an adaptive budget was exhausted
};

}  // namespace bzdos

#endif
