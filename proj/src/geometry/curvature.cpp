#include "bcwp/geometry/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace bcwp::geometry {

namespace {

bool is_constant(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

}  // namespace

ChristoffelField christoffel(const MetricField& metric, Scheme scheme) {
  const GridPtr& grid = metric.grid_ptr();
  const Differentiator diff(grid, scheme);
  const int dim = metric.dim();
  const std::size_t n = grid->size();
  const auto du = static_cast<std::size_t>(dim);

  // dg[(k*dim + i)*dim + j] = d_k g_ij; empty when the component is constant.
  std::vector<std::vector<double>> dg(du * du * du);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const auto& g = metric.component(i, j);
      if (is_constant(g)) continue;
      for (int k = 0; k < dim; ++k) {
        auto d = diff.first(g, k);
        dg[(static_cast<std::size_t>(k) * du + static_cast<std::size_t>(j)) * du + static_cast<std::size_t>(i)] = d;
        dg[(static_cast<std::size_t>(k) * du + static_cast<std::size_t>(i)) * du + static_cast<std::size_t>(j)] = std::move(d);
      }
    }
  auto dg_at = [&](int k, int i, int j) -> const std::vector<double>& {
    return dg[(static_cast<std::size_t>(k) * du + static_cast<std::size_t>(i)) * du + static_cast<std::size_t>(j)];
  };

  ChristoffelField gamma(grid, dim);
  std::vector<double> first_kind(n);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      for (int m = 0; m < dim; ++m) {
        // [ij, m] = (d_i g_jm + d_j g_im - d_m g_ij)/2
        const auto& a = dg_at(i, j, m);
        const auto& b = dg_at(j, i, m);
        const auto& c = dg_at(m, i, j);
        if (a.empty() && b.empty() && c.empty()) continue;
        for (std::size_t p = 0; p < n; ++p)
          first_kind[p] = 0.5 * ((a.empty() ? 0.0 : a[p]) + (b.empty() ? 0.0 : b[p]) - (c.empty() ? 0.0 : c[p]));
        for (int l = 0; l < dim; ++l) {
          const auto& ginv = metric.inverse_component(l, m);
          auto& out = gamma.component(l, i, j);
          for (std::size_t p = 0; p < n; ++p) out[p] += ginv[p] * first_kind[p];
        }
      }
  for (int l = 0; l < dim; ++l)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < i; ++j) gamma.component(l, i, j) = gamma.component(l, j, i);
  return gamma;
}

TensorField2 ricci(const Calculus& calc) {
  const MetricField& metric = calc.metric();
  const Differentiator& diff = calc.differentiator();
  const ChristoffelField& gamma = calc.christoffel();
  const int dim = metric.dim();
  const std::size_t n = metric.grid().size();

  std::vector<double> log_density(n);
  for (std::size_t p = 0; p < n; ++p) log_density[p] = std::log(metric.volume_density()[p]);
  const bool flat_density = is_constant(log_density);

  // contracted[m] = G^l_lm
  std::vector<std::vector<double>> contracted(static_cast<std::size_t>(dim), std::vector<double>(n, 0.0));
  for (int m = 0; m < dim; ++m)
    for (int l = 0; l < dim; ++l) {
      const auto& g = gamma.component(l, l, m);
      auto& out = contracted[static_cast<std::size_t>(m)];
      for (std::size_t p = 0; p < n; ++p) out[p] += g[p];
    }

  TensorField2 ric(metric.grid_ptr(), dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      std::vector<double> r(n, 0.0);
      for (int l = 0; l < dim; ++l) {
        const auto& g = gamma.component(l, i, j);
        if (is_constant(g)) continue;
        const auto d = diff.first(g, l);
        for (std::size_t p = 0; p < n; ++p) r[p] += d[p];
      }
      if (!flat_density) {
        const auto dd = diff.mixed(log_density, i, j);
        for (std::size_t p = 0; p < n; ++p) r[p] -= dd[p];
      }
      for (int m = 0; m < dim; ++m) {
        const auto& c = contracted[static_cast<std::size_t>(m)];
        const auto& g = gamma.component(m, i, j);
        for (std::size_t p = 0; p < n; ++p) r[p] += c[p] * g[p];
      }
      for (int l = 0; l < dim; ++l)
        for (int m = 0; m < dim; ++m) {
          const auto& a = gamma.component(l, j, m);
          const auto& b = gamma.component(m, i, l);
          for (std::size_t p = 0; p < n; ++p) r[p] -= a[p] * b[p];
        }
      ric.component(i, j) = r;
      if (i != j) ric.component(j, i) = std::move(r);
    }
  return ric;
}

TensorField2 ricci(const MetricField& metric, Scheme scheme) { return ricci(Calculus(metric, scheme)); }

ScalarField scalar_curvature(const Calculus& calc) { return calc.trace(ricci(calc)); }

ScalarField scalar_curvature(const MetricField& metric, Scheme scheme) {
  return scalar_curvature(Calculus(metric, scheme));
}

}  // namespace bcwp::geometry
