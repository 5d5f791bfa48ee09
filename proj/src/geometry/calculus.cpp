#include "bcwp/geometry/calculus.hpp"

#include "bcwp/errors.hpp"

namespace bcwp::geometry {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SparseMatrix assemble_stiffness(const MetricField& metric, const Differentiator& diff) {
  const GridManifold& grid = metric.grid();
  const int dim = metric.dim();
  const std::size_t n = grid.size();
  const double volume = grid.cell_volume();
  const auto& density = metric.volume_density();
  const auto N = static_cast<Eigen::Index>(n);

  Triplets t;
  t.reserve(n * static_cast<std::size_t>(4 * dim));
  for (int a = 0; a < dim; ++a) {
    const Axis& ax = grid.axis(a);
    const double h = ax.spacing();
    const auto& ginv = metric.inverse_component(a, a);
    const std::size_t s = grid.stride(a);
    for (std::size_t p = 0; p < n; ++p) {
      const int j = grid.index_along(p, a);
      std::size_t q = 0;
      if (j + 1 < ax.n) {
        q = p + s;
      } else if (ax.wraps()) {
        q = p - static_cast<std::size_t>(ax.n - 1) * s;
      } else {
        continue;  // no face beyond the last node of a closed axis
      }
      const double face = 0.5 * (density[p] * ginv[p] + density[q] * ginv[q]);
      const double c = volume * face / (h * h);
      const auto ip = static_cast<Eigen::Index>(p);
      const auto iq = static_cast<Eigen::Index>(q);
      t.emplace_back(ip, ip, c);
      t.emplace_back(iq, iq, c);
      t.emplace_back(ip, iq, -c);
      t.emplace_back(iq, ip, -c);
    }
  }
  SparseMatrix k(N, N);
  k.setFromTriplets(t.begin(), t.end());

  if (!metric.diagonal()) {
    std::vector<SparseMatrix> d;
    for (int a = 0; a < dim; ++a) d.push_back(diff.first_matrix(a));
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        if (a == b) continue;
        const auto& ginv = metric.inverse_component(a, b);
        Eigen::VectorXd coef(N);
        for (std::size_t p = 0; p < n; ++p) coef[static_cast<Eigen::Index>(p)] = volume * density[p] * ginv[p];
        const SparseMatrix weighted = coef.asDiagonal() * d[static_cast<std::size_t>(b)];
        const SparseMatrix contribution = SparseMatrix(d[static_cast<std::size_t>(a)].transpose()) * weighted;
        k += contribution;
      }
    // Exact symmetry: the (a,b) and (b,a) contributions are transposes of each other up to rounding.
    const SparseMatrix kt = k.transpose();
    k = 0.5 * (k + kt);
  }
  k.makeCompressed();
  return k;
}

}  // namespace

Calculus::Calculus(MetricField metric, Scheme scheme)
    : metric_(std::move(metric)), diff_(metric_.grid_ptr(), scheme), gamma_(geometry::christoffel(metric_, scheme)) {
  const double volume = grid().cell_volume();
  weights_.resize(grid().size());
  for (std::size_t p = 0; p < weights_.size(); ++p) weights_[p] = volume * metric_.volume_density()[p];
  if (scheme == Scheme::central2) stiffness_ = assemble_stiffness(metric_, diff_);
}

std::vector<std::vector<double>> Calculus::partials(const ScalarField& f) const {
  require_same_grid(f.grid(), grid(), "Calculus::partials");
  std::vector<std::vector<double>> d;
  d.reserve(static_cast<std::size_t>(grid().dim()));
  for (int a = 0; a < grid().dim(); ++a) d.push_back(diff_.first(f.values(), a));
  return d;
}

ScalarField Calculus::laplace_beltrami(const ScalarField& f) const {
  require_same_grid(f.grid(), grid(), "laplace_beltrami");
  const std::size_t n = grid().size();
  std::vector<double> out(n, 0.0);
  if (scheme() == Scheme::central2) {
    const Eigen::Map<const Eigen::VectorXd> x(f.values().data(), static_cast<Eigen::Index>(n));
    const Eigen::VectorXd kx = stiffness_ * x;
    for (std::size_t p = 0; p < n; ++p) out[p] = -kx[static_cast<Eigen::Index>(p)] / weights_[p];
    return ScalarField(grid_ptr(), std::move(out));
  }
  const int dim = grid().dim();
  const auto& density = metric_.volume_density();
  const auto d = partials(f);
  for (int a = 0; a < dim; ++a) {
    std::vector<double> flux(n, 0.0);
    for (int b = 0; b < dim; ++b) {
      const auto& ginv = metric_.inverse_component(a, b);
      const auto& db = d[static_cast<std::size_t>(b)];
      for (std::size_t p = 0; p < n; ++p) flux[p] += density[p] * ginv[p] * db[p];
    }
    const auto div = diff_.first(flux, a);
    for (std::size_t p = 0; p < n; ++p) out[p] += div[p];
  }
  for (std::size_t p = 0; p < n; ++p) out[p] /= density[p];
  return ScalarField(grid_ptr(), std::move(out));
}

TensorField2 Calculus::hessian(const ScalarField& f) const {
  require_same_grid(f.grid(), grid(), "hessian");
  const int dim = grid().dim();
  const std::size_t n = grid().size();
  const auto d = partials(f);
  TensorField2 h(grid_ptr(), dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      std::vector<double> v = (i == j) ? diff_.second(f.values(), i) : diff_.first(d[static_cast<std::size_t>(j)], i);
      for (int l = 0; l < dim; ++l) {
        const auto& g = gamma_.component(l, i, j);
        const auto& dl = d[static_cast<std::size_t>(l)];
        for (std::size_t p = 0; p < n; ++p) v[p] -= g[p] * dl[p];
      }
      h.component(i, j) = v;
      if (i != j) h.component(j, i) = std::move(v);
    }
  return h;
}

ScalarField Calculus::gradient_sq(const ScalarField& f) const { return metric_inner(f, f); }

ScalarField Calculus::metric_inner(const ScalarField& f, const ScalarField& c) const {
  require_same_grid(f.grid(), grid(), "metric_inner");
  require_same_grid(c.grid(), grid(), "metric_inner");
  const int dim = grid().dim();
  const std::size_t n = grid().size();
  const auto df = partials(f);
  const auto dc = (&f == &c) ? df : partials(c);
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const auto& ginv = metric_.inverse_component(i, j);
      const auto& a = df[static_cast<std::size_t>(i)];
      const auto& b = dc[static_cast<std::size_t>(j)];
      for (std::size_t p = 0; p < n; ++p) out[p] += ginv[p] * a[p] * b[p];
    }
  return ScalarField(grid_ptr(), std::move(out));
}

TensorField2 Calculus::symmetric_product(const ScalarField& f, const ScalarField& c) const {
  const int dim = grid().dim();
  const std::size_t n = grid().size();
  const auto df = partials(f);
  const auto dc = partials(c);
  TensorField2 t(grid_ptr(), dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      auto& out = t.component(i, j);
      const auto& fi = df[static_cast<std::size_t>(i)];
      const auto& fj = df[static_cast<std::size_t>(j)];
      const auto& ci = dc[static_cast<std::size_t>(i)];
      const auto& cj = dc[static_cast<std::size_t>(j)];
      for (std::size_t p = 0; p < n; ++p) out[p] = 0.5 * (fi[p] * cj[p] + ci[p] * fj[p]);
    }
  return t;
}

ScalarField Calculus::trace(const TensorField2& t) const {
  require_same_grid(t.grid(), grid(), "trace");
  const int dim = grid().dim();
  const std::size_t n = grid().size();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const auto& ginv = metric_.inverse_component(i, j);
      const auto& c = t.component(i, j);
      for (std::size_t p = 0; p < n; ++p) out[p] += ginv[p] * c[p];
    }
  return ScalarField(grid_ptr(), std::move(out));
}

TensorField2 Calculus::metric_tensor() const {
  const int dim = grid().dim();
  TensorField2 t(grid_ptr(), dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) t.component(i, j) = metric_.component(i, j);
  return t;
}

double Calculus::integrate(const ScalarField& f) const {
  require_same_grid(f.grid(), grid(), "integrate");
  double s = 0.0;
  for (std::size_t p = 0; p < weights_.size(); ++p) s += weights_[p] * f[p];
  return s;
}

double Calculus::dirichlet_form(const ScalarField& f, const ScalarField& w) const {
  if (scheme() == Scheme::central2) {
    const auto n = static_cast<Eigen::Index>(grid().size());
    const Eigen::Map<const Eigen::VectorXd> x(f.values().data(), n);
    const Eigen::Map<const Eigen::VectorXd> y(w.values().data(), n);
    return x.dot(stiffness_ * y);
  }
  return integrate(metric_inner(f, w));
}

const SparseMatrix& Calculus::stiffness() const {
  if (scheme() != Scheme::central2) throw Error("stiffness: only assembled for the central2 scheme");
  return stiffness_;
}

ScalarField laplace_beltrami(const MetricField& metric, const ScalarField& f, Scheme scheme) {
  return Calculus(metric, scheme).laplace_beltrami(f);
}
TensorField2 hessian(const MetricField& metric, const ScalarField& f, Scheme scheme) {
  return Calculus(metric, scheme).hessian(f);
}
ScalarField gradient_sq(const MetricField& metric, const ScalarField& f, Scheme scheme) {
  return Calculus(metric, scheme).gradient_sq(f);
}
ScalarField metric_inner(const MetricField& metric, const ScalarField& f, const ScalarField& c, Scheme scheme) {
  return Calculus(metric, scheme).metric_inner(f, c);
}

}  // namespace bcwp::geometry
