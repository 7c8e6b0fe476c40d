#include <doctest.h>

#include "bzdos/linalg.hpp"
#include "helpers.hpp"

using namespace bzdos;
using testing::Rng;

namespace {

// Cofactor expansion, the independent determinant oracle for small matrices.
Complex det_cofactor(const MatrixXcd& a) {
  const auto n = a.rows();
  if (n == 1) return a(0, 0);
  Complex acc = 0.0;
  double sign = 1.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    MatrixXcd minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    }
    acc += sign * a(0, j) * det_cofactor(minor);
    sign = -sign;
  }
  return acc;
}

Complex eval_poly(const std::vector<double>& coeffs, Complex x) {
  Complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

TEST_CASE("hermitian_eig identity and Pauli") {
  const auto id = linalg::hermitian_eig(MatrixXcd::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(id.eigenvalues[i] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(linalg::max_abs(id.eigenvectors.adjoint() * id.eigenvectors -
                        MatrixXcd::Identity(3, 3)) < 1e-12);

  MatrixXcd pauli1(2, 2);
  pauli1 << 0, 1, 1, 0;
  const auto p = linalg::hermitian_eig(pauli1);
  CHECK(p.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(p.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eig residual and unitarity on seeded random matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 8;
    const MatrixXcd a = testing::random_hermitian(rng, n);
    const auto e = linalg::hermitian_eig(a);
    const MatrixXcd av = a * e.eigenvectors;
    const MatrixXcd vl = e.eigenvectors * e.eigenvalues.asDiagonal();
    CHECK(linalg::max_abs(av - vl) < 1e-12 * linalg::max_abs(a));
    CHECK(linalg::max_abs(e.eigenvectors.adjoint() * e.eigenvectors - MatrixXcd::Identity(n, n)) <
          1e-12);
    for (int i = 0; i + 1 < n; ++i) CHECK(e.eigenvalues[i] <= e.eigenvalues[i + 1]);
    // trace preservation
    CHECK(std::abs(e.eigenvalues.sum() - a.trace().real()) <= 1e-12 * linalg::max_abs(a) * n);
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  MatrixXcd a(2, 2);
  a << 1.0, Complex(0, 1), Complex(0, 1), 1.0;  // symmetric, not Hermitian
  CHECK_THROWS_AS(linalg::hermitian_eig(a), NotHermitian);
}

TEST_CASE("resolvent_trace diagonal and singular cases") {
  MatrixXcd a = MatrixXcd::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  const Complex tr = linalg::resolvent_trace(a, 3.0);
  CHECK(std::abs(tr - Complex(1.5, 0.0)) < 1e-14);

  const MatrixXcd one = MatrixXcd::Identity(1, 1);
  CHECK_THROWS_AS(linalg::resolvent_trace(one, Complex(1.0, 0.0)), SingularShift);
}

TEST_CASE("resolvent_trace matches the eigenvalue sum") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(2, 12);
    const MatrixXcd a = testing::random_complex(rng, n);
    const Complex z(2.0, 0.3);
    const VectorXcd lambda = linalg::general_eigvals(a);
    Complex expected = 0.0;
    for (int i = 0; i < n; ++i) expected += 1.0 / (z - lambda[i]);
    const Complex got = linalg::resolvent_trace(a, z);
    CHECK(std::abs(got - expected) <= 1e-10 * std::abs(expected));
  }
}

TEST_CASE("general_eigvals diagonal, nilpotent and companion cases") {
  MatrixXcd d = MatrixXcd::Zero(2, 2);
  d(0, 0) = Complex(1, 2);
  d(1, 1) = 3.0;
  auto ev = linalg::general_eigvals(d);
  std::sort(ev.data(), ev.data() + 2,
            [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(ev[0] - Complex(1, 2)) < 1e-12);
  CHECK(std::abs(ev[1] - Complex(3, 0)) < 1e-12);

  MatrixXcd nil = MatrixXcd::Zero(2, 2);
  nil(0, 1) = 1.0;
  for (auto v : linalg::general_eigvals(nil)) CHECK(std::abs(v) < 1e-12);

  // companion matrix of p(x) = x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
  const std::vector<double> p{-6.0, 11.0, -6.0, 1.0};
  MatrixXcd comp = MatrixXcd::Zero(3, 3);
  comp(0, 2) = 6.0;
  comp(1, 2) = -11.0;
  comp(2, 2) = 6.0;
  comp(1, 0) = comp(2, 1) = 1.0;
  auto roots = linalg::general_eigvals(comp);
  std::sort(roots.data(), roots.data() + 3,
            [](Complex a, Complex b) { return a.real() < b.real(); });
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(roots[i] - Complex(i + 1.0, 0.0)) < 1e-10);
    CHECK(std::abs(eval_poly(p, roots[i])) < 1e-9);  // direct polynomial oracle
  }
}

TEST_CASE("general_eigvals agrees with hermitian_eig on Hermitian input") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.uniform_int(2, 8);
    const MatrixXcd a = testing::random_hermitian(rng, n);
    VectorXcd g = linalg::general_eigvals(a);
    std::sort(g.data(), g.data() + n,
              [](Complex x, Complex y) { return x.real() < y.real(); });
    const VectorXd h = linalg::hermitian_eig(a).eigenvalues;
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(g[i].real() - h[i]) < 1e-10);
      CHECK(std::abs(g[i].imag()) < 1e-10);
    }
  }
}

TEST_CASE("complex_det identities and cofactor oracle") {
  CHECK(std::abs(linalg::complex_det(MatrixXcd::Identity(5, 5)) - 1.0) < 1e-14);

  MatrixXcd d = MatrixXcd::Zero(2, 2);
  d(0, 0) = Complex(0, 2);
  d(1, 1) = 3.0;
  CHECK(std::abs(linalg::complex_det(d) - Complex(0, 6)) < 1e-14);

  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const MatrixXcd a = testing::random_complex(rng, 3);
    const Complex expected = det_cofactor(a);
    CHECK(std::abs(linalg::complex_det(a) - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("complex_det is multiplicative") {
  Rng rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const MatrixXcd a = testing::random_complex(rng, 4);
    const MatrixXcd b = testing::random_complex(rng, 4);
    const Complex lhs = linalg::complex_det(a * b);
    const Complex rhs = linalg::complex_det(a) * linalg::complex_det(b);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
  }
}
