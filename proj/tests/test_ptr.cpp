#include <doctest.h>

#include "bzdos/iai.hpp"
#include "bzdos/ptr.hpp"
#include "bzdos/ref_models.hpp"
#include "helpers.hpp"

using namespace bzdos;
using testing::Rng;

namespace {

std::shared_ptr<TightBindingModel> flat_band(double e0) {
  std::vector<TightBindingModel::Term> terms(1);
  terms[0].block = MatrixXcd::Constant(1, 1, e0);
  return std::make_shared<TightBindingModel>(1, 1, std::move(terms));
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("ptr_grid enumerations") {
  auto chain = ref::make_chain(1.0);
  const auto g1 = ptr_grid(*chain.model, 2);
  REQUIRE(g1.size() == 2);
  CHECK(g1[0][0] == -0.5);
  CHECK(g1[1][0] == 0.0);

  auto g2sys = ref::make_free_gas(2);
  const auto g2 = ptr_grid(*g2sys.model, 1);
  REQUIRE(g2.size() == 1);
  CHECK(g2[0][0] == -0.5);
  CHECK(g2[0][1] == -0.5);

  auto g3sys = ref::make_free_gas(3);
  const auto g3 = ptr_grid(*g3sys.model, 4);
  REQUIRE(g3.size() == 64);
  for (std::size_t i = 0; i < g3.size(); ++i)
    for (std::size_t j = i + 1; j < g3.size(); ++j) CHECK((g3[i] - g3[j]).norm() > 1e-12);
}

TEST_CASE("flat band gives the kernel height for any N") {
  auto m = flat_band(0.7);
  for (int n : {1, 3, 8}) {
    const auto est = ptr_dos(*m, 0.7, {0.05}, n);
    CHECK(est.value == doctest::Approx(1.0 / (pi * 0.05)).epsilon(1e-13));
    const auto res = ptr_dos_resolvent(*m, 0.7, {0.05}, n);
    CHECK(res.value == doctest::Approx(1.0 / (pi * 0.05)).epsilon(1e-13));
  }
}

TEST_CASE("large-eta tail decays like M/(pi eta)") {
  auto chain = ref::make_chain(1.0);
  for (double eta : {1e3, 1e4}) {
    const auto est = ptr_dos(*chain.model, 0.0, {eta}, 16);
    CHECK(est.value == doctest::Approx(1.0 / (pi * eta)).epsilon(1e-4));
  }
}

TEST_CASE("ptr matches adaptive integration at moderate smearing") {
  auto chain = ref::make_chain(1.0);
  AdaptiveConfig cfg;
  cfg.abs_tol = 1e-10;
  const auto iai = iai_dos(*chain.model, 0.0, {0.05}, cfg);
  const auto ptr = ptr_dos(*chain.model, 0.0, {0.05}, 1024);
  CHECK(std::abs(ptr.value - iai.value) < 1e-8);
}

TEST_CASE("resolvent identity: ptr_dos == ptr_dos_resolvent") {
  auto chain = ref::make_chain(1.0);
  const auto a = ptr_dos(*chain.model, 0.0, {0.1}, 64);
  const auto b = ptr_dos_resolvent(*chain.model, 0.0, {0.1}, 64);
  CHECK(std::abs(a.value - b.value) < 1e-12);

  // diag(1,2) at a single k point, E = 1, eta = 1: (1/pi)(1 + 1/2)
  std::vector<TightBindingModel::Term> terms(1);
  terms[0].block = MatrixXcd::Zero(2, 2);
  terms[0].block(0, 0) = 1.0;
  terms[0].block(1, 1) = 2.0;
  TightBindingModel diag(1, 2, std::move(terms));
  const auto est = ptr_dos_resolvent(diag, 1.0, {1.0}, 1);
  CHECK(est.value == doctest::Approx(1.5 / pi).epsilon(1e-14));
}

TEST_CASE("resolvent identity over seeded models") {
  Rng rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = rng.uniform_int(1, 2);
    auto m = testing::random_tb_model(rng, dim, rng.uniform_int(1, 4));
    const double energy = rng.uniform(-2.0, 2.0);
    const double eta = rng.uniform(0.05, 0.5);
    const int n = rng.uniform_int(2, 8);
    const auto a = ptr_dos(*m, energy, {eta}, n);
    const auto b = ptr_dos_resolvent(*m, energy, {eta}, n);
    CHECK(std::abs(a.value - b.value) <= 1e-12 * std::max(1.0, std::abs(a.value)));
  }
}

TEST_CASE("exponential convergence in N, rate grows with eta") {
  auto chain = ref::make_chain(1.0);
  std::vector<double> rates;
  for (double eta : {0.05, 0.1, 0.2}) {
    AdaptiveConfig cfg;
    cfg.abs_tol = 1e-13;
    const double ref = iai_dos(*chain.model, 0.0, {eta}, cfg).value;
    std::vector<double> ns, log_err;
    for (int n : {128, 192, 256, 320}) {
      const double err = std::abs(ptr_dos(*chain.model, 0.0, {eta}, n).value - ref);
      if (err > 1e-15) {
        ns.push_back(n);
        log_err.push_back(std::log(err));
      }
    }
    REQUIRE(ns.size() >= 3);
    const double slope = fit_slope(ns, log_err);
    CHECK(slope < 0.0);
    rates.push_back(-slope);
  }
  CHECK(rates[0] < rates[1]);
  CHECK(rates[1] < rates[2]);
}

TEST_CASE("smearing bias is O(eta^2) at a smooth energy") {
  auto chain = ref::make_chain(1.0);
  const double exact = chain.exact_dos(0.0);
  std::vector<double> log_eta, log_bias;
  for (double eta : {0.4, 0.2, 0.1, 0.05}) {
    const int n = static_cast<int>(std::ceil(60.0 / eta / 64.0)) * 64;
    const double bias = std::abs(ptr_dos(*chain.model, 0.0, {eta}, n).value - exact);
    log_eta.push_back(std::log(eta));
    log_bias.push_back(std::log(bias));
  }
  const double slope = fit_slope(log_eta, log_bias);
  CHECK(slope == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("positivity and thread invariance") {
  Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = testing::random_tb_model(rng, 2, 2);
    const double energy = rng.uniform(-2.0, 2.0);
    const auto v1 = ptr_dos(*m, energy, {0.1}, 9, 1);
    CHECK(v1.value >= 0.0);
    const auto v2 = ptr_dos(*m, energy, {0.1}, 9, 2);
    CHECK(v1.value == v2.value);  // deterministic reduction, bitwise
  }
}

TEST_CASE("invalid smearing is rejected") {
  auto chain = ref::make_chain(1.0);
  CHECK_THROWS_AS(ptr_dos(*chain.model, 0.0, {0.0}, 8), DomainError);
  CHECK_THROWS_AS(ptr_dos(*chain.model, 0.0, {0.1}, 0), DomainError);
}
