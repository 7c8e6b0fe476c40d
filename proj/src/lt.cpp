#include "bzdos/lt.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <numeric>

#include "bzdos/reduce.hpp"

namespace bzdos {

namespace {

double segment_dos(double e0, double e1, double energy, double volume) {
  if (!(e0 < energy && energy < e1)) return 0.0;
  return volume / (e1 - e0);
}

double triangle_dos(const double* e, double energy, double volume) {
  if (energy <= e[0] || energy >= e[2]) return 0.0;
  if (energy < e[1]) return volume * 2.0 * (energy - e[0]) / ((e[1] - e[0]) * (e[2] - e[0]));
  return volume * 2.0 * (e[2] - energy) / ((e[2] - e[0]) * (e[2] - e[1]));
}

double tetra_dos(const double* e, double energy, double volume) {
  if (energy <= e[0] || energy >= e[3]) return 0.0;
  const double e10 = e[1] - e[0], e20 = e[2] - e[0], e30 = e[3] - e[0];
  const double e21 = e[2] - e[1], e31 = e[3] - e[1], e32 = e[3] - e[2];
  if (energy < e[1]) {
    const double d = energy - e[0];
    return volume * 3.0 * d * d / (e10 * e20 * e30);
  }
  if (energy < e[2]) {
    // Middle regime of the Lehmann-Taut form; the half-open branch selection
    // keeps every denominator strictly positive.
    const double d = energy - e[1];
    return volume * (3.0 * e10 + 6.0 * d - 3.0 * (e20 + e31) * d * d / (e21 * e31)) / (e20 * e30);
  }
  const double d = e[3] - energy;
  return volume * 3.0 * d * d / (e30 * e31 * e32);
}

// Vertex offsets of the d! Kuhn simplices of the unit cell: simplex p walks
// from the cell origin along axis permutation perm[p].
template <int D>
std::vector<std::array<int, D + 1>> kuhn_vertex_masks() {
  std::array<int, D> perm;
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::array<int, D + 1>> masks;
  do {
    std::array<int, D + 1> verts{};
    verts[0] = 0;
    for (int m = 0; m < D; ++m) verts[m + 1] = verts[m] | (1 << perm[m]);
    masks.push_back(verts);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return masks;
}

}  // namespace

double simplex_dos(std::span<const double> corners, double energy, double volume) {
  switch (corners.size()) {
    case 2:
      return segment_dos(corners[0], corners[1], energy, volume);
    case 3:
      return triangle_dos(corners.data(), energy, volume);
    case 4:
      return tetra_dos(corners.data(), energy, volume);
    default:
      throw DomainError("simplex_dos: need d+1 corner energies, d in {1,2,3}");
  }
}

LtGrid::LtGrid(const Model& model, int n, int threads) {
  if (n < 2) throw DomainError("lt: N must be >= 2");
  dim_ = model.dim();
  n_ = n;
  wrap_ = model.periodic();
  stride_ = wrap_ ? n : n + 1;
  bands_ = model.num_bands();
  const long evals0 = model.eval_count();
  long total = 1;
  for (int j = 0; j < dim_; ++j) total *= stride_;
  eps_.resize(total * bands_);
  const VectorXd lo = model.domain_lo(), hi = model.domain_hi();
  double cells = 1.0;
  for (int j = 0; j < dim_; ++j) cells *= n;
  cell_volume_ = model.domain_volume() / cells;
  parallel_for(total, threads, [&](std::size_t p) {
    VectorXd k(dim_);
    long rest = static_cast<long>(p);
    for (int j = dim_ - 1; j >= 0; --j) {
      k[j] = lo[j] + (hi[j] - lo[j]) * (rest % stride_) / n_;
      rest /= stride_;
    }
    const VectorXd eps = model.bands(k);
    std::copy(eps.data(), eps.data() + bands_, eps_.begin() + p * bands_);
  });
  n_evals_ = model.eval_count() - evals0;
}

template <int D>
double LtGrid::accumulate(double energy, int threads) const {
  static const auto masks = kuhn_vertex_masks<D>();
  const double simplex_volume = cell_volume_ / static_cast<double>(masks.size());
  long cells = 1;
  for (int j = 0; j < D; ++j) cells *= n_;
  const long per_slab = cells / n_;

  // One partial per first-axis slab keeps the reduction deterministic.
  std::vector<double> partial(n_, 0.0);
  parallel_for(n_, threads, [&](std::size_t slab) {
    double acc = 0.0;
    std::array<double, D + 1> corners;
    std::array<int, D> cell;
    for (long c = 0; c < per_slab; ++c) {
      long rest = c;
      for (int j = D - 1; j >= 1; --j) {
        cell[j] = static_cast<int>(rest % n_);
        rest /= n_;
      }
      cell[0] = static_cast<int>(slab);
      for (const auto& verts : masks) {
        for (int b = 0; b < bands_; ++b) {
          for (int v = 0; v <= D; ++v) {
            long idx = 0;
            for (int j = 0; j < D; ++j) {
              int cj = cell[j] + ((verts[v] >> j) & 1);
              if (wrap_ && cj == n_) cj = 0;
              idx = idx * stride_ + cj;
            }
            corners[v] = at(idx)[b];
          }
          std::sort(corners.begin(), corners.end());
          if constexpr (D == 1)
            acc += segment_dos(corners[0], corners[1], energy, simplex_volume);
          else if constexpr (D == 2)
            acc += triangle_dos(corners.data(), energy, simplex_volume);
          else
            acc += tetra_dos(corners.data(), energy, simplex_volume);
        }
      }
    }
    partial[slab] = acc;
  });
  return pairwise_sum(partial);
}

double LtGrid::dos(double energy, int threads) const {
  if (dim_ == 1) return accumulate<1>(energy, threads);
  if (dim_ == 2) return accumulate<2>(energy, threads);
  return accumulate<3>(energy, threads);
}

std::vector<double> lt_dos_many(const Model& model, std::span<const double> energies, int n,
                                int threads) {
  const LtGrid grid(model, n, threads);
  std::vector<double> out;
  out.reserve(energies.size());
  for (double energy : energies) out.push_back(grid.dos(energy, threads));
  return out;
}

DosEstimate lt_dos(const Model& model, double energy, int n, int threads) {
  const auto t0 = std::chrono::steady_clock::now();
  const LtGrid grid(model, n, threads);
  DosEstimate est;
  est.value = grid.dos(energy, threads);
  est.n_evals = grid.n_evals();
  est.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  est.method = "lt";
  est.params = {{"n", static_cast<double>(n)}};
  return est;
}

}  // namespace bzdos
