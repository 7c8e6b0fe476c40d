#ifndef BZDOS_LINALG_HPP
#define BZDOS_LINALG_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "bzdos/types.hpp"

// Small dense complex linear algebra used by every method. The systems here
// are tiny (M <= 8 for all benchmark Hamiltonians, hard cap 256), so dense
// O(M^3) routines with tight constants are the right tool; Eigen provides the
// factorizations behind the contracts below.

namespace bzdos::linalg {

struct HermitianEigen {
  VectorXd eigenvalues;   // ascending
  MatrixXcd eigenvectors; // column n pairs with eigenvalue n
};

inline double max_abs(const MatrixXcd& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

// Eigendecomposition of a Hermitian matrix. Rejects matrices that are not
// Hermitian to 1e-10 * |A|_max.
inline HermitianEigen hermitian_eig(const MatrixXcd& a) {
  const auto n = a.rows();
  if (n == 0 || n != a.cols()) throw DomainError("hermitian_eig: square matrix required");
  if (n > 256) throw DomainError("hermitian_eig: dimension above 256");
  const double scale = max_abs(a);
  if (max_abs(a - a.adjoint()) > 1e-10 * std::max(scale, 1e-300))
    throw NotHermitian("hermitian_eig: input not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success)
    throw NoConvergence("hermitian_eig: iteration failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Eigenvalues only, Hermitian input.
inline VectorXd hermitian_eigvals(const MatrixXcd& a) {
  if (a.rows() == 1) return VectorXd::Constant(1, a(0, 0).real());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NoConvergence("hermitian_eigvals: iteration failed to converge");
  return solver.eigenvalues();
}

// Eigenvalues of a general complex matrix (unordered multiset), via complex
// Schur reduction (Hessenberg + shifted QR with deflation).
inline VectorXcd general_eigvals(const MatrixXcd& a) {
  const auto n = a.rows();
  if (n == 0 || n != a.cols()) throw DomainError("general_eigvals: square matrix required");
  if (n > 256) throw DomainError("general_eigvals: dimension above 256");
  if (n == 1) return VectorXcd::Constant(1, a(0, 0));
  Eigen::ComplexSchur<MatrixXcd> schur(a, /*computeU=*/false);
  if (schur.info() != Eigen::Success)
    throw NoConvergence("general_eigvals: QR iteration failed to converge");
  return schur.matrixT().diagonal();
}

// Tr((z I - A)^-1) by one LU factorization and n column solves.
inline Complex resolvent_trace(const MatrixXcd& a, Complex z) {
  const auto n = a.rows();
  if (n != a.cols()) throw DomainError("resolvent_trace: square matrix required");
  if (n == 1) {
    const Complex d = z - a(0, 0);
    if (std::abs(d) < 1e-300) throw SingularShift("resolvent_trace: singular shift");
    return 1.0 / d;
  }
  MatrixXcd shifted = -a;
  shifted.diagonal().array() += z;
  Eigen::PartialPivLU<MatrixXcd> lu(shifted);
  const auto& u = lu.matrixLU();
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(u(i, i)) < 1e-300)
      throw SingularShift("resolvent_trace: zero pivot, z in the spectrum");
  return lu.solve(MatrixXcd::Identity(n, n)).trace();
}

// Determinant via LU with partial pivoting; singular input yields 0.
inline Complex complex_det(const MatrixXcd& a) {
  if (a.rows() != a.cols()) throw DomainError("complex_det: square matrix required");
  if (a.rows() == 0) return 1.0;
  if (a.rows() == 1) return a(0, 0);
  if (a.rows() == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return Eigen::PartialPivLU<MatrixXcd>(a).determinant();
}

}  // namespace bzdos::linalg

#endif
