#ifndef BZDOS_MODEL_HPP
#define BZDOS_MODEL_HPP

#include <atomic>
#include <functional>
#include <memory>
#include <vector>

#include "bzdos/linalg.hpp"
#include "bzdos/types.hpp"

namespace bzdos {

struct EigenData {
  VectorXd eps;     // ascending band energies at real k
  MatrixXcd vecs;   // unitary eigenvectors; identity for band models
};

// One interface for both Hamiltonian families. All integrators and the BCD
// are written against it:
//   - band energies / eigen-data at real k,
//   - deformed spectrum and resolvent trace at complex k = k + i h,
//   - gradient matrix elements in the eigenbasis,
//   - chi-weighted Hessian traces.
// Evaluations at a wavevector are counted (one count per distinct k visited),
// which is the budget unit of the benchmark harness.
class Model {
 public:
  Model() = default;
  Model(const Model&) noexcept {}  // a copy starts with a fresh evaluation counter
  Model& operator=(const Model&) noexcept { return *this; }
  virtual ~Model() = default;

  virtual int dim() const = 0;
  virtual int num_bands() const = 0;

  virtual VectorXd bands(const VectorXd& k) const = 0;
  virtual EigenData eigensystem(const VectorXd& k) const = 0;

  // Spectrum of H at k + i h (unordered). Band models evaluate the closed-form
  // complex extension; matrix models diagonalize the non-Hermitian Bloch matrix.
  virtual VectorXcd deformed_spectrum(const VectorXd& k, const VectorXd& h) const = 0;

  // Tr((z - H_{k+ih})^-1); h may be zero.
  virtual Complex resolvent_trace(const VectorXd& k, const VectorXd& h, Complex z) const = 0;

  // A_j = V^dag (dH/dk_j) V in the eigenbasis of `sys` (diagonal matrices of
  // band gradients for band models).
  virtual std::vector<MatrixXcd> gradient_elements(const VectorXd& k, const EigenData& sys) const = 0;

  // T_ij = sum_n w_n <n| d2H/dk_i dk_j |n>  (w: per-band weights).
  virtual MatrixXd weighted_hessian_trace(const VectorXd& k, const EigenData& sys,
                                          const VectorXd& w) const = 0;

  // Integration domain. Periodic models live on [-1/2,1/2)^d with measure 1
  // (Brillouin-zone average); truncated models integrate plain dk over a box.
  virtual bool periodic() const { return true; }
  virtual VectorXd domain_lo() const { return VectorXd::Constant(dim(), -0.5); }
  virtual VectorXd domain_hi() const { return VectorXd::Constant(dim(), 0.5); }
  double domain_volume() const { return (domain_hi() - domain_lo()).prod(); }

  long eval_count() const { return evals_.load(std::memory_order_relaxed); }
  void reset_eval_count() const { evals_.store(0, std::memory_order_relaxed); }

 protected:
  void count_eval() const { evals_.fetch_add(1, std::memory_order_relaxed); }

 private:
  mutable std::atomic<long> evals_{0};
};

// ---------------------------------------------------------------------------
// Finite-range Fourier sum H_k = sum_R e^{2 pi i k.R} H_R / weight_R over
// integer lattice vectors R, evaluable at complex wavevectors (the sum is a
// trigonometric polynomial, entire in k). Hermiticity closure H_{-R} = H_R^dag
// is completed (or, in strict mode, enforced) at construction.
class TightBindingModel : public Model {
 public:
  struct Term {
    Eigen::Vector3i r = Eigen::Vector3i::Zero();  // first `dim` entries used
    MatrixXcd block;
    double weight = 1.0;
  };

  TightBindingModel(int dim, int norb, std::vector<Term> terms, bool strict = false,
                    double hermiticity_tol = 1e-8);

  int dim() const override { return dim_; }
  int num_bands() const override { return norb_; }

  MatrixXcd bloch(const VectorXcd& z) const;          // H at complex wavevector
  MatrixXcd bloch_gradient(const VectorXcd& z, int j) const;
  MatrixXcd bloch_hessian(const VectorXcd& z, int i, int j) const;

  VectorXd bands(const VectorXd& k) const override;
  EigenData eigensystem(const VectorXd& k) const override;
  VectorXcd deformed_spectrum(const VectorXd& k, const VectorXd& h) const override;
  Complex resolvent_trace(const VectorXd& k, const VectorXd& h, Complex z) const override;
  std::vector<MatrixXcd> gradient_elements(const VectorXd& k, const EigenData& sys) const override;
  MatrixXd weighted_hessian_trace(const VectorXd& k, const EigenData& sys,
                                  const VectorXd& w) const override;

  const std::vector<Term>& terms() const { return terms_; }

 private:
  VectorXcd complex_k(const VectorXd& k, const VectorXd& h) const;

  int dim_;
  int norb_;
  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Explicit band functions with closed-form complex extension, gradient and
// Hessian. Bands are independent; the "matrix" is diagonal.
class AnalyticBandModel : public Model {
 public:
  struct Band {
    std::function<Complex(const VectorXcd&)> value;   // entire extension
    std::function<VectorXd(const VectorXd&)> gradient;
    std::function<MatrixXd(const VectorXd&)> hessian;
  };

  AnalyticBandModel(int dim, std::vector<Band> bands) : dim_(dim), bands_(std::move(bands)) {}
  AnalyticBandModel(int dim, std::vector<Band> bands, VectorXd lo, VectorXd hi)
      : dim_(dim), bands_(std::move(bands)), lo_(std::move(lo)), hi_(std::move(hi)) {}

  int dim() const override { return dim_; }
  int num_bands() const override { return static_cast<int>(bands_.size()); }

  bool periodic() const override { return lo_.size() == 0; }
  VectorXd domain_lo() const override { return periodic() ? Model::domain_lo() : lo_; }
  VectorXd domain_hi() const override { return periodic() ? Model::domain_hi() : hi_; }

  VectorXd bands(const VectorXd& k) const override;
  EigenData eigensystem(const VectorXd& k) const override;
  VectorXcd deformed_spectrum(const VectorXd& k, const VectorXd& h) const override;
  Complex resolvent_trace(const VectorXd& k, const VectorXd& h, Complex z) const override;
  std::vector<MatrixXcd> gradient_elements(const VectorXd& k, const EigenData& sys) const override;
  MatrixXd weighted_hessian_trace(const VectorXd& k, const EigenData& sys,
                                  const VectorXd& w) const override;

 private:
  int dim_;
  std::vector<Band> bands_;
  VectorXd lo_, hi_;  // empty: periodic unit cube
};

}  // namespace bzdos

#endif
