#ifndef BZDOS_TEST_HELPERS_HPP
#define BZDOS_TEST_HELPERS_HPP

#include <cstdint>
#include <memory>

#include "bzdos/model.hpp"

namespace bzdos::testing {

// Deterministic generator (splitmix64) so seeded expectations hold on any
// platform or standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Complex complex_unit() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

 private:
  std::uint64_t state_;
};

inline MatrixXcd random_complex(Rng& rng, int n) {
  MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.complex_unit();
  return a;
}

inline MatrixXcd random_hermitian(Rng& rng, int n) {
  const MatrixXcd a = random_complex(rng, n);
  return 0.5 * (a + a.adjoint());
}

// Small random tight-binding model with a handful of hopping terms.
inline std::shared_ptr<TightBindingModel> random_tb_model(Rng& rng, int dim, int norb,
                                                          int range = 1) {
  std::vector<TightBindingModel::Term> terms;
  TightBindingModel::Term onsite;
  onsite.block = random_hermitian(rng, norb);
  terms.push_back(onsite);
  const int n_hop = rng.uniform_int(1, 3);
  for (int h = 0; h < n_hop; ++h) {
    TightBindingModel::Term t;
    bool nonzero = false;
    for (int j = 0; j < dim; ++j) {
      t.r[j] = rng.uniform_int(-range, range);
      nonzero = nonzero || t.r[j] != 0;
    }
    if (!nonzero) t.r[0] = 1;
    t.block = 0.5 * random_complex(rng, norb);
    terms.push_back(t);  // conjugate term completed at construction
  }
  return std::make_shared<TightBindingModel>(dim, norb, std::move(terms));
}

}  // namespace bzdos::testing

#endif
