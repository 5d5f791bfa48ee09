#include "bcwp/cli/builders.hpp"

#include "bcwp/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace bcwp::cli {

namespace {

using geometry::Axis;
using geometry::Coordinates;
using geometry::ScalarField;
using geometry::SmallMatrix;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Node counts for `count` axes from a list whose last entry repeats.
std::vector<int> expand_points(const Json& config, const std::string& path, int count) {
  const std::vector<int> given = get_integer_list(config, path);
  if (static_cast<int>(given.size()) > count)
    throw ConfigError(path + ": " + std::to_string(given.size()) + " entries for " + std::to_string(count) + " axes");
  std::vector<int> out(given);
  out.resize(static_cast<std::size_t>(count), given.back());
  return out;
}

// offset + sum_j a_j sin(k_j . x + phi_j) with integer wave vectors k_j != 0 and sum |a_j| <= amplitude.
std::function<double(const Coordinates&)> random_trig(int dim, int modes, double offset, double amplitude,
                                                      int max_wave, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> wave(-max_wave, max_wave);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<int>> waves;
  std::vector<double> phases, amps;
  for (int j = 0; j < modes; ++j) {
    std::vector<int> k(static_cast<std::size_t>(dim));
    bool nonzero = false;
    for (auto& kk : k) {
      kk = wave(rng);
      nonzero = nonzero || kk != 0;
    }
    if (!nonzero) k[0] = 1;
    waves.push_back(k);
    phases.push_back(kTwoPi * unit(rng));
    amps.push_back(amplitude / modes * (0.5 + 0.5 * unit(rng)));
  }
  return [=](const Coordinates& x) {
    double v = offset;
    for (std::size_t j = 0; j < waves.size(); ++j) {
      double arg = phases[j];
      for (std::size_t a = 0; a < x.size(); ++a) arg += waves[j][a] * x[a];
      v += amps[j] * std::sin(arg);
    }
    return v;
  };
}

metrics::BaseManifold finish(geometry::MetricField metric, geometry::TensorField2 ricci, const Json& config) {
  const geometry::Scheme scheme = geometry::parse_scheme(get_string(config, "base.scheme"));
  if (get_string(config, "base.curvature") == "brute-force") return metrics::BaseManifold::brute_force(metric, scheme);
  return metrics::BaseManifold::with_ricci(std::move(metric), std::move(ricci), scheme);
}

metrics::BaseManifold torus_base(const Json& config, std::optional<int> level) {
  const int m = static_cast<int>(get_integer(config, "base.dim"));
  std::vector<int> n = expand_points(config, "base.points", m);
  if (level) n[0] = *level;
  const double length = get_number(config, "base.length");
  if (!(length > 0.0)) throw ConfigError("base.length: must be positive");
  std::vector<Axis> axes;
  for (int a = 0; a < m; ++a) axes.push_back(Axis::periodic(n[static_cast<std::size_t>(a)], length));
  const auto grid = geometry::make_grid(axes);
  auto metric = geometry::MetricField::constant_diagonal(grid, std::vector<double>(static_cast<std::size_t>(m), 1.0));
  return finish(std::move(metric), geometry::TensorField2(grid, m), config);
}

// S^d(r) in nested colatitudes theta_1..theta_{d-1} and a longitude, then flat circles.
metrics::BaseManifold sphere_base(const Json& config, std::optional<int> level) {
  const int d = static_cast<int>(get_integer(config, "base.sphere_dim"));
  const int c = static_cast<int>(get_integer(config, "base.circles"));
  const int m = d + c;
  const double r = get_number(config, "base.radius");
  const double length = get_number(config, "base.length");
  if (!(r > 0.0)) throw ConfigError("base.radius: must be positive");
  std::vector<int> n = expand_points(config, "base.points", m);
  if (level) n[0] = *level - 1;
  std::vector<Axis> axes;
  for (int a = 0; a + 1 < d; ++a) axes.push_back(Axis::colatitude(n[static_cast<std::size_t>(a)]));
  axes.push_back(Axis::periodic(n[static_cast<std::size_t>(d - 1)], kTwoPi));
  for (int a = d; a < m; ++a) axes.push_back(Axis::periodic(n[static_cast<std::size_t>(a)], length));
  const auto grid = geometry::make_grid(axes);
  auto g_of = [d, m, r](const Coordinates& x) {
    SmallMatrix g = SmallMatrix::Zero(m, m);
    double factor = r * r;
    for (int a = 0; a < d; ++a) {
      g(a, a) = factor;
      if (a + 1 < d) factor *= std::pow(std::sin(x[static_cast<std::size_t>(a)]), 2);
    }
    for (int a = d; a < m; ++a) g(a, a) = 1.0;
    return g;
  };
  auto metric = geometry::MetricField::from_function(grid, m, g_of);
  // Ric = (d-1)/r^2 g on the sphere block, 0 on the circles
  geometry::TensorField2 ricci(grid, m);
  for (int a = 0; a < d; ++a) {
    const auto& gaa = metric.component(a, a);
    auto& ra = ricci.component(a, a);
    for (std::size_t p = 0; p < gaa.size(); ++p) ra[p] = (d - 1) / (r * r) * gaa[p];
  }
  return finish(std::move(metric), std::move(ricci), config);
}

}  // namespace

metrics::BaseManifold build_base(const Json& config, std::optional<int> first_axis_level) {
  metrics::BaseManifold base = get_string(config, "base.kind") == "sphere" ? sphere_base(config, first_axis_level)
                                                                           : torus_base(config, first_axis_level);
  const std::string kind = get_string(config, "base.S_B.kind");
  if (kind == "constant") {
    base.scalar = ScalarField(base.grid_ptr(), get_number(config, "base.S_B.value"));
  } else if (kind == "trig") {
    base.scalar = ScalarField::from_function(
        base.grid_ptr(), random_trig(base.dim(), static_cast<int>(get_integer(config, "base.S_B.modes")),
                                     get_number(config, "base.S_B.offset"), get_number(config, "base.S_B.amplitude"),
                                     static_cast<int>(get_integer(config, "base.S_B.max_wave")),
                                     static_cast<std::uint64_t>(get_integer(config, "seed"))));
  }
  return base;
}

geometry::FiberModel build_fiber(const Json& config) {
  const std::string kind = get_string(config, "fiber.kind");
  const int k = static_cast<int>(get_integer(config, "fiber.k"));
  if (kind == "sphere") {
    if (!(get_number(config, "fiber.radius") > 0.0)) throw ConfigError("fiber.radius: must be positive");
    return geometry::FiberModel::sphere(k, get_number(config, "fiber.radius"));
  }
  if (kind == "einstein") return geometry::FiberModel::einstein(k, get_number(config, "fiber.nu"));
  return geometry::FiberModel::flat(k);
}

std::vector<int> fiber_points(const Json& config, std::optional<int> first_axis_level) {
  const geometry::FiberModel fiber = build_fiber(config);
  std::vector<int> n = expand_points(config, "fiber.points", fiber.k());
  if (first_axis_level) {
    const bool colatitude = fiber.k() >= 2 && (fiber.kind() == geometry::FiberKind::sphere ||
                                               (fiber.kind() == geometry::FiberKind::einstein &&
                                                fiber.ricci_constant() > 0.0));
    n[0] = colatitude ? *first_axis_level - 1 : *first_axis_level;
  }
  return n;
}

ScalarField build_psi(const Json& config, const metrics::BaseManifold& base) {
  const double offset = get_number(config, "psi.offset");
  const double amplitude = get_number(config, "psi.amplitude");
  ScalarField psi;
  if (get_string(config, "psi.kind") == "random") {
    psi = ScalarField::from_function(
        base.grid_ptr(), random_trig(base.dim(), static_cast<int>(get_integer(config, "psi.modes")), offset, amplitude,
                                     static_cast<int>(get_integer(config, "psi.max_wave")),
                                     static_cast<std::uint64_t>(get_integer(config, "seed"))));
  } else {
    const int axis = static_cast<int>(get_integer(config, "psi.axis"));
    if (axis >= base.dim()) throw ConfigError("psi.axis: base has " + std::to_string(base.dim()) + " axes");
    const double wave = static_cast<double>(get_integer(config, "psi.wave"));
    psi = ScalarField::from_function(base.grid_ptr(), [=](const Coordinates& x) {
      return offset + amplitude * std::sin(wave * x[static_cast<std::size_t>(axis)]);
    });
  }
  try {
    psi.require_positive("psi");
  } catch (const NonPositiveFieldError& e) {
    throw ConfigError(e.what());
  }
  return psi;
}

exponents::Rational config_rational(const Json& config, const std::string& path) {
  return exponents::parse_rational(get_string(config, path));
}

int config_fiber_sign(const Json& config, const std::string& path) {
  return exponents::parse_fiber_sign(get_string(config, path));
}

elliptic::PdeProblem build_problem(const Json& config, const metrics::BaseManifold& base, double lambda) {
  if (get_bool(config, "pde.enabled")) {
    if (get_number(config, "pde.S_F") > 0.0) throw ConfigError("pde.S_F: must be <= 0");
    return elliptic::PdeProblem::on_base(base, get_number(config, "pde.beta"), get_number(config, "pde.S_F"),
                                         get_number(config, "pde.p"), get_number(config, "pde.q"), lambda);
  }
  return elliptic::pbsc_problem(base, build_fiber(config), config_rational(config, "mu"), lambda);
}

elliptic::SolveOptions build_solve_options(const Json& config) {
  elliptic::SolveOptions o;
  o.residual_tolerance = get_number(config, "solver.residual_tolerance");
  o.eigen.tolerance = get_number(config, "solver.eigen_tolerance");
  o.eigen.max_iterations = static_cast<int>(get_integer(config, "solver.eigen_max_iterations"));
  o.kappa.tolerance = get_number(config, "solver.kappa_tolerance");
  o.kappa.max_iterations = static_cast<int>(get_integer(config, "solver.kappa_max_iterations"));
  o.kappa.seed = static_cast<std::uint64_t>(get_integer(config, "seed"));
  o.monotone.tolerance = get_number(config, "solver.monotone_tolerance");
  o.monotone.max_iterations = static_cast<int>(get_integer(config, "solver.monotone_max_iterations"));
  o.allow_newton = get_bool(config, "solver.newton");
  return o;
}

elliptic::SweepOptions build_sweep_options(const Json& config) {
  elliptic::SweepOptions o;
  o.solve = build_solve_options(config);
  o.bisections = static_cast<int>(get_integer(config, "sweep.bisections"));
  o.bracket_tolerance = get_number(config, "sweep.tolerance");
  return o;
}

std::vector<double> sweep_grid(const Json& config) {
  const double from = get_number(config, "sweep.from"), to = get_number(config, "sweep.to");
  const double step = get_number(config, "sweep.step");
  std::vector<double> out;
  if (to < from) return out;
  if (!(step > 0.0)) throw ConfigError("sweep.step: must be positive");
  const long count = static_cast<long>(std::floor((to - from) / step + 0.5));
  // integer multiples of the step avoid drift from repeated addition
  for (long i = 0; i <= count; ++i) out.push_back(from + static_cast<double>(i) * step);
  return out;
}

}  // namespace bcwp::cli
