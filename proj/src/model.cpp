#include "bzdos/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace bzdos {

namespace {

std::array<int, 3> key_of(const Eigen::Vector3i& r) { return {r[0], r[1], r[2]}; }

}  // namespace

TightBindingModel::TightBindingModel(int dim, int norb, std::vector<Term> terms, bool strict,
                                     double hermiticity_tol)
    : dim_(dim), norb_(norb) {
  if (dim < 1 || dim > 3) throw DomainError("TightBindingModel: dim must be 1, 2 or 3");
  if (norb < 1) throw DomainError("TightBindingModel: need at least one orbital");

  // Merge duplicate R vectors, then complete or verify Hermiticity closure.
  std::map<std::array<int, 3>, Term> by_r;
  for (auto& t : terms) {
    if (t.block.rows() != norb || t.block.cols() != norb)
      throw DomainError("TightBindingModel: block size mismatch");
    if (!t.block.allFinite()) throw DomainError("TightBindingModel: non-finite block");
    if (t.weight <= 0) throw DomainError("TightBindingModel: nonpositive degeneracy weight");
    for (int j = dim; j < 3; ++j)
      if (t.r[j] != 0) throw DomainError("TightBindingModel: R component beyond dim");
    auto [it, fresh] = by_r.emplace(key_of(t.r), t);
    if (!fresh) it->second.block += t.block;
  }
  for (auto& [key, t] : by_r) {
    const Eigen::Vector3i mr = -t.r;
    auto partner = by_r.find(key_of(mr));
    if (partner == by_r.end()) {
      if (strict)
        throw HermiticityViolation("TightBindingModel: missing conjugate term for an R vector");
      Term conj;
      conj.r = mr;
      conj.block = t.block.adjoint();
      conj.weight = t.weight;
      by_r.emplace(key_of(mr), std::move(conj));
    }
  }
  double worst = 0.0;
  std::array<int, 3> worst_r{};
  for (const auto& [key, t] : by_r) {
    const Term& p = by_r.at(key_of(Eigen::Vector3i(-t.r)));
    const double dev = linalg::max_abs(t.block / t.weight - (p.block / p.weight).adjoint());
    if (dev > worst) {
      worst = dev;
      worst_r = key;
    }
  }
  if (worst > hermiticity_tol) {
    std::ostringstream msg;
    msg << "TightBindingModel: H_{-R} != H_R^dag, worst deviation " << worst << " eV at R = ("
        << worst_r[0] << "," << worst_r[1] << "," << worst_r[2] << ")";
    if (strict) throw HermiticityViolation(msg.str());
    // Non-strict mode symmetrizes instead of rejecting.
    for (auto& [key, t] : by_r) {
      const Term p = by_r.at(key_of(Eigen::Vector3i(-t.r)));
      t.block = 0.5 * (t.block + t.weight * (p.block / p.weight).adjoint());
    }
  }
  terms_.reserve(by_r.size());
  for (auto& [key, t] : by_r) terms_.push_back(std::move(t));
}

VectorXcd TightBindingModel::complex_k(const VectorXd& k, const VectorXd& h) const {
  VectorXcd z = k.cast<Complex>();
  if (h.size() > 0) z += iu * h.cast<Complex>();
  return z;
}

MatrixXcd TightBindingModel::bloch(const VectorXcd& z) const {
  MatrixXcd hk = MatrixXcd::Zero(norb_, norb_);
  for (const auto& t : terms_) {
    Complex phase_arg = 0.0;
    for (int j = 0; j < dim_; ++j) phase_arg += z[j] * static_cast<double>(t.r[j]);
    hk += (std::exp(2.0 * pi * iu * phase_arg) / t.weight) * t.block;
  }
  return hk;
}

MatrixXcd TightBindingModel::bloch_gradient(const VectorXcd& z, int j) const {
  MatrixXcd g = MatrixXcd::Zero(norb_, norb_);
  for (const auto& t : terms_) {
    if (t.r[j] == 0) continue;
    Complex phase_arg = 0.0;
    for (int a = 0; a < dim_; ++a) phase_arg += z[a] * static_cast<double>(t.r[a]);
    g += (2.0 * pi * iu * static_cast<double>(t.r[j]) * std::exp(2.0 * pi * iu * phase_arg) /
          t.weight) *
         t.block;
  }
  return g;
}

MatrixXcd TightBindingModel::bloch_hessian(const VectorXcd& z, int i, int j) const {
  MatrixXcd hess = MatrixXcd::Zero(norb_, norb_);
  for (const auto& t : terms_) {
    if (t.r[i] == 0 || t.r[j] == 0) continue;
    Complex phase_arg = 0.0;
    for (int a = 0; a < dim_; ++a) phase_arg += z[a] * static_cast<double>(t.r[a]);
    const Complex f = (2.0 * pi * iu * static_cast<double>(t.r[i])) *
                      (2.0 * pi * iu * static_cast<double>(t.r[j]));
    hess += (f * std::exp(2.0 * pi * iu * phase_arg) / t.weight) * t.block;
  }
  return hess;
}

VectorXd TightBindingModel::bands(const VectorXd& k) const {
  count_eval();
  return linalg::hermitian_eigvals(bloch(complex_k(k, VectorXd())));
}

EigenData TightBindingModel::eigensystem(const VectorXd& k) const {
  count_eval();
  auto e = linalg::hermitian_eig(bloch(complex_k(k, VectorXd())));
  return {std::move(e.eigenvalues), std::move(e.eigenvectors)};
}

VectorXcd TightBindingModel::deformed_spectrum(const VectorXd& k, const VectorXd& h) const {
  count_eval();
  return linalg::general_eigvals(bloch(complex_k(k, h)));
}

Complex TightBindingModel::resolvent_trace(const VectorXd& k, const VectorXd& h, Complex z) const {
  count_eval();
  return linalg::resolvent_trace(bloch(complex_k(k, h)), z);
}

std::vector<MatrixXcd> TightBindingModel::gradient_elements(const VectorXd& k,
                                                            const EigenData& sys) const {
  const VectorXcd z = complex_k(k, VectorXd());
  std::vector<MatrixXcd> out;
  out.reserve(dim_);
  for (int j = 0; j < dim_; ++j)
    out.push_back(sys.vecs.adjoint() * bloch_gradient(z, j) * sys.vecs);
  return out;
}

MatrixXd TightBindingModel::weighted_hessian_trace(const VectorXd& k, const EigenData& sys,
                                                   const VectorXd& w) const {
  const VectorXcd z = complex_k(k, VectorXd());
  MatrixXd t = MatrixXd::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) {
      const MatrixXcd hij = sys.vecs.adjoint() * bloch_hessian(z, i, j) * sys.vecs;
      Complex acc = 0.0;
      for (int n = 0; n < norb_; ++n) acc += w[n] * hij(n, n);
      t(i, j) = acc.real();
      t(j, i) = t(i, j);
    }
  return t;
}

// ---------------------------------------------------------------------------

VectorXd AnalyticBandModel::bands(const VectorXd& k) const {
  count_eval();
  VectorXd out(num_bands());
  const VectorXcd z = k.cast<Complex>();
  for (int n = 0; n < num_bands(); ++n) out[n] = bands_[n].value(z).real();
  std::sort(out.data(), out.data() + out.size());
  return out;
}

EigenData AnalyticBandModel::eigensystem(const VectorXd& k) const {
  count_eval();
  // Keep the model's own band order here (not sorted): gradient_elements and
  // weighted_hessian_trace must pair entries with the same band index.
  VectorXd eps(num_bands());
  const VectorXcd z = k.cast<Complex>();
  for (int n = 0; n < num_bands(); ++n) eps[n] = bands_[n].value(z).real();
  return {std::move(eps), MatrixXcd()};
}

VectorXcd AnalyticBandModel::deformed_spectrum(const VectorXd& k, const VectorXd& h) const {
  count_eval();
  VectorXcd z = k.cast<Complex>();
  if (h.size() > 0) z += iu * h.cast<Complex>();
  VectorXcd out(num_bands());
  for (int n = 0; n < num_bands(); ++n) out[n] = bands_[n].value(z);
  return out;
}

Complex AnalyticBandModel::resolvent_trace(const VectorXd& k, const VectorXd& h, Complex z) const {
  const VectorXcd spectrum = deformed_spectrum(k, h);
  Complex acc = 0.0;
  for (int n = 0; n < num_bands(); ++n) {
    const Complex d = z - spectrum[n];
    if (std::abs(d) < 1e-300) throw SingularShift("resolvent_trace: band hits the shift exactly");
    acc += 1.0 / d;
  }
  return acc;
}

std::vector<MatrixXcd> AnalyticBandModel::gradient_elements(const VectorXd& k,
                                                            const EigenData&) const {
  const int m = num_bands();
  std::vector<MatrixXcd> out(dim_, MatrixXcd::Zero(m, m));
  for (int n = 0; n < m; ++n) {
    const VectorXd g = bands_[n].gradient(k);
    for (int j = 0; j < dim_; ++j) out[j](n, n) = g[j];
  }
  return out;
}

MatrixXd AnalyticBandModel::weighted_hessian_trace(const VectorXd& k, const EigenData&,
                                                   const VectorXd& w) const {
  MatrixXd t = MatrixXd::Zero(dim_, dim_);
  for (int n = 0; n < num_bands(); ++n) t += w[n] * bands_[n].hessian(k);
  return t;
}

}  // namespace bzdos
