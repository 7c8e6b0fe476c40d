#include "bzdos/ref_models.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "bzdos/lt.hpp"

namespace bzdos::ref {

double elliptic_K(double m) {
  if (!(m >= 0.0) || m >= 1.0) throw DomainError("elliptic_K: parameter m must be in [0, 1)");
  double a = 1.0, b = std::sqrt(1.0 - m);
  while (std::abs(a - b) > 1e-16 * a) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return pi / (2.0 * a);
}

ReferenceSystem make_chain(double t) {
  if (!(t > 0)) throw DomainError("make_chain: t must be > 0");
  std::vector<TightBindingModel::Term> terms(2);
  terms[0].r = {1, 0, 0};
  terms[0].block = MatrixXcd::Constant(1, 1, t);
  terms[1].r = {-1, 0, 0};
  terms[1].block = MatrixXcd::Constant(1, 1, t);

  ReferenceSystem sys;
  sys.name = "chain";
  sys.model = std::make_shared<TightBindingModel>(1, 1, std::move(terms));
  sys.exact_dos = [t](double e) {
    const double half_bw = 2.0 * t;
    if (std::abs(e) >= half_bw) return 0.0;
    return 1.0 / (pi * std::sqrt(half_bw * half_bw - e * e));
  };
  sys.van_hove_energies = {-2.0 * t, 2.0 * t};
  sys.benchmark_energies = {{"easy", 0.0}, {"medium", 1.9 * t}, {"hard", 1.99 * t}};
  return sys;
}

namespace {

std::shared_ptr<TightBindingModel> graphene_model(double t) {
  // Off-diagonal -t (1 + e^{2 pi i k1} + e^{2 pi i k2}) in reduced coordinates.
  std::vector<TightBindingModel::Term> terms;
  for (auto r : {Eigen::Vector3i{0, 0, 0}, Eigen::Vector3i{1, 0, 0}, Eigen::Vector3i{0, 1, 0}}) {
    TightBindingModel::Term term;
    term.r = r;
    term.block = MatrixXcd::Zero(2, 2);
    term.block(0, 1) = -t;
    terms.push_back(std::move(term));
  }
  return std::make_shared<TightBindingModel>(2, 2, std::move(terms));
}

// Converged-LT reference DOS. The eigenvalue grid is built lazily on first
// use and reused for every energy after that.
struct LtReference {
  std::shared_ptr<Model> model;
  int n;
  std::unique_ptr<LtGrid> grid;
  std::map<double, double> cache;
  std::mutex mutex;

  double operator()(double e) {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    if (!grid) grid = std::make_unique<LtGrid>(*model, n, 2);
    const double v = grid->dos(e, 2);
    cache.emplace(e, v);
    return v;
  }
};

}  // namespace

double graphene_closed_form_dos(double energy, double t, GrapheneDosForm form) {
  const double x = std::abs(energy) / t;
  if (x <= 0.0 || x >= 3.0) return 0.0;
  const auto f_of = [form](double u) {
    const double s = u * u - 1.0;
    return (1.0 + u) * (1.0 + u) - (form == GrapheneDosForm::paper ? s : s * s) / 4.0;
  };
  const double f = f_of(x);
  const double pref = 2.0 * x / (t * pi * pi);
  if (x < 1.0) return pref / std::sqrt(f) * elliptic_K(4.0 * x / f);
  return pref / std::sqrt(4.0 * x) * elliptic_K(f / (4.0 * x));
}

ReferenceSystem make_graphene(double t, int reference_n) {
  if (!(t > 0)) throw DomainError("make_graphene: t must be > 0");
  ReferenceSystem sys;
  sys.name = "graphene";
  sys.model = graphene_model(t);
  auto ref = std::make_shared<LtReference>();
  ref->model = sys.model;
  ref->n = reference_n;
  sys.exact_dos = [ref](double e) { return (*ref)(e); };
  sys.van_hove_energies = {-3.0 * t, -t, 0.0, t, 3.0 * t};
  sys.benchmark_energies = {{"easy", 2.0 * t}, {"medium", 0.1 * t}, {"hard", 0.99 * t}};
  return sys;
}

namespace {

void gas_bands_rec(int dim, int g_max, Eigen::Vector3i g, int axis,
                   std::vector<Eigen::Vector3i>& out) {
  if (axis == dim) {
    out.push_back(g);
    return;
  }
  for (int v = -g_max; v <= g_max; ++v) {
    g[axis] = v;
    gas_bands_rec(dim, g_max, g, axis + 1, out);
  }
}

}  // namespace

ReferenceSystem make_free_gas(int dim, int g_max) {
  if (dim < 1 || dim > 3) throw DomainError("make_free_gas: dim must be 1, 2 or 3");
  if (g_max < 1) throw DomainError("make_free_gas: g_max must be >= 1");

  std::vector<Eigen::Vector3i> gs;
  gas_bands_rec(dim, g_max, Eigen::Vector3i::Zero(), 0, gs);

  std::vector<AnalyticBandModel::Band> bands;
  bands.reserve(gs.size());
  for (const auto& gi : gs) {
    VectorXd g(dim);
    for (int j = 0; j < dim; ++j) g[j] = gi[j];
    AnalyticBandModel::Band band;
    band.value = [g, dim](const VectorXcd& z) {
      Complex acc = 0.0;
      for (int j = 0; j < dim; ++j) {
        const Complex c = z[j] + g[j];
        acc += c * c;
      }
      return acc;
    };
    band.gradient = [g](const VectorXd& k) { return VectorXd(2.0 * (k + g)); };
    band.hessian = [dim](const VectorXd&) { return MatrixXd(2.0 * MatrixXd::Identity(dim, dim)); };
    bands.push_back(std::move(band));
  }

  ReferenceSystem sys;
  sys.name = "gas" + std::to_string(dim) + "d";
  sys.model = std::make_shared<AnalyticBandModel>(dim, std::move(bands));

  auto fallback = std::make_shared<LtReference>();
  fallback->model = sys.model;
  fallback->n = (dim == 1) ? 100000 : (dim == 2 ? 1500 : 120);
  sys.exact_dos = [dim, fallback](double e) {
    if (e <= 0.0) return 0.0;
    if (e < 0.25) {  // single isotropic sheet inside the zone
      if (dim == 1) return 1.0 / std::sqrt(e);
      if (dim == 2) return pi;
      return 2.0 * pi * std::sqrt(e);
    }
    return (*fallback)(e);
  };
  sys.van_hove_energies = {0.0};
  sys.benchmark_energies = {{"easy", 0.1}, {"medium", 0.2}, {"hard", 0.26}};
  return sys;
}

ReferenceSystem make_two_block_toy(double gamma, double delta, double window) {
  if (!(gamma > 0) || !(delta > 0)) throw DomainError("make_two_block_toy: slopes must be > 0");
  if (gamma == delta) throw DomainError("make_two_block_toy: gamma == delta is excluded");
  if (!(window > 0)) throw DomainError("make_two_block_toy: window must be > 0");

  std::vector<AnalyticBandModel::Band> bands(2);
  bands[0].value = [gamma](const VectorXcd& z) { return gamma * z[0]; };
  bands[0].gradient = [gamma](const VectorXd&) { return VectorXd::Constant(1, gamma); };
  bands[0].hessian = [](const VectorXd&) { return MatrixXd::Zero(1, 1); };
  bands[1].value = [delta](const VectorXcd& z) { return -delta * z[0]; };
  bands[1].gradient = [delta](const VectorXd&) { return VectorXd::Constant(1, -delta); };
  bands[1].hessian = [](const VectorXd&) { return MatrixXd::Zero(1, 1); };

  ReferenceSystem sys;
  sys.name = "toy";
  sys.model = std::make_shared<AnalyticBandModel>(1, std::move(bands),
                                                  VectorXd::Constant(1, -window),
                                                  VectorXd::Constant(1, window));
  sys.exact_dos = [gamma, delta, window](double e) {
    double acc = 0.0;
    if (std::abs(e) <= gamma * window) acc += 1.0 / gamma;
    if (std::abs(e) <= delta * window) acc += 1.0 / delta;
    return acc;  // unnormalized: sum of 1/|slope| over crossings in the window
  };
  sys.benchmark_energies = {{"easy", 0.0}};
  return sys;
}

ReferenceSystem make_by_name(const std::string& name) {
  if (name == "chain") return make_chain(1.0);
  if (name == "graphene") return make_graphene(1.0);
  if (name == "gas1d") return make_free_gas(1);
  if (name == "gas2d") return make_free_gas(2);
  if (name == "gas3d") return make_free_gas(3);
  if (name == "toy") return make_two_block_toy(1.0, 2.0, 3.0);
  throw ConfigError("unknown system '" + name + "'");
}

std::vector<std::string> known_systems() {
  return {"chain", "graphene", "gas1d", "gas2d", "gas3d", "toy"};
}

}  // namespace bzdos::ref
