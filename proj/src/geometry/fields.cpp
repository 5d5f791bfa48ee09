#include "bcwp/geometry/fields.hpp"

#include "bcwp/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bcwp::geometry {

Coordinates coordinates_of(const GridManifold& grid, std::size_t p) {
  Coordinates x(static_cast<std::size_t>(grid.dim()));
  for (int a = 0; a < grid.dim(); ++a) x[static_cast<std::size_t>(a)] = grid.coordinate(p, a);
  return x;
}

// ---------------------------------------------------------------- ScalarField

ScalarField::ScalarField(GridPtr grid, double value) : grid_(std::move(grid)) {
  values_.assign(grid_->size(), value);
}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size())
    throw DimensionError("ScalarField: " + std::to_string(values_.size()) + " values for " +
                         std::to_string(grid_->size()) + " grid points");
}

ScalarField ScalarField::from_function(GridPtr grid, const std::function<double(const Coordinates&)>& f) {
  std::vector<double> v(grid->size());
  for (std::size_t p = 0; p < v.size(); ++p) v[p] = f(coordinates_of(*grid, p));
  return ScalarField(std::move(grid), std::move(v));
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void ScalarField::require_positive(const std::string& name) const {
  for (std::size_t p = 0; p < values_.size(); ++p)
    if (!(values_[p] > 0.0) || !std::isfinite(values_[p])) throw NonPositiveFieldError(name, p, values_[p]);
}

ScalarField ScalarField::map(const std::function<double(double)>& f) const {
  ScalarField out(grid_, 0.0);
  for (std::size_t p = 0; p < values_.size(); ++p) out.values_[p] = f(values_[p]);
  return out;
}

ScalarField ScalarField::pow(double exponent) const {
  if (exponent != std::floor(exponent)) require_positive("pow base");
  return map([exponent](double v) { return std::pow(v, exponent); });
}

namespace {
void check_same(const ScalarField& a, const ScalarField& b) {
  if (a.size() != b.size() || !(a.grid() == b.grid())) throw DimensionError("ScalarField arithmetic: grid mismatch");
}
}  // namespace

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  check_same(*this, o);
  for (std::size_t p = 0; p < values_.size(); ++p) values_[p] += o.values_[p];
  return *this;
}
ScalarField& ScalarField::operator-=(const ScalarField& o) {
  check_same(*this, o);
  for (std::size_t p = 0; p < values_.size(); ++p) values_[p] -= o.values_[p];
  return *this;
}
ScalarField& ScalarField::operator*=(const ScalarField& o) {
  check_same(*this, o);
  for (std::size_t p = 0; p < values_.size(); ++p) values_[p] *= o.values_[p];
  return *this;
}
ScalarField& ScalarField::operator/=(const ScalarField& o) {
  check_same(*this, o);
  for (std::size_t p = 0; p < values_.size(); ++p) values_[p] /= o.values_[p];
  return *this;
}
ScalarField& ScalarField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}
ScalarField& ScalarField::operator+=(double s) {
  for (double& v : values_) v += s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
ScalarField operator/(ScalarField a, const ScalarField& b) { return a /= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator+(ScalarField a, double s) { return a += s; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }

// ---------------------------------------------------------------- TensorField2

TensorField2::TensorField2(GridPtr grid, int dim) : grid_(std::move(grid)), dim_(dim) {
  comps_.assign(static_cast<std::size_t>(dim * dim), std::vector<double>(grid_->size(), 0.0));
}

SmallMatrix TensorField2::at(std::size_t p) const {
  SmallMatrix m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = component(i, j)[p];
  return m;
}

double TensorField2::max_asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      const auto& a = component(i, j);
      const auto& b = component(j, i);
      for (std::size_t p = 0; p < a.size(); ++p) worst = std::max(worst, std::abs(a[p] - b[p]));
    }
  return worst;
}

double TensorField2::max_abs() const {
  double worst = 0.0;
  for (const auto& c : comps_)
    for (double v : c) worst = std::max(worst, std::abs(v));
  return worst;
}

void TensorField2::symmetrize() {
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      auto& a = component(i, j);
      auto& b = component(j, i);
      for (std::size_t p = 0; p < a.size(); ++p) {
        const double mean = 0.5 * (a[p] + b[p]);
        a[p] = mean;
        b[p] = mean;
      }
    }
}

TensorField2& TensorField2::operator+=(const TensorField2& o) {
  if (o.dim_ != dim_ || !(o.grid() == grid())) throw DimensionError("TensorField2 arithmetic: shape mismatch");
  for (std::size_t c = 0; c < comps_.size(); ++c)
    for (std::size_t p = 0; p < comps_[c].size(); ++p) comps_[c][p] += o.comps_[c][p];
  return *this;
}

TensorField2& TensorField2::operator-=(const TensorField2& o) {
  if (o.dim_ != dim_ || !(o.grid() == grid())) throw DimensionError("TensorField2 arithmetic: shape mismatch");
  for (std::size_t c = 0; c < comps_.size(); ++c)
    for (std::size_t p = 0; p < comps_[c].size(); ++p) comps_[c][p] -= o.comps_[c][p];
  return *this;
}

TensorField2& TensorField2::scale(const ScalarField& s) {
  if (!(s.grid() == grid())) throw DimensionError("TensorField2::scale: grid mismatch");
  for (auto& c : comps_)
    for (std::size_t p = 0; p < c.size(); ++p) c[p] *= s[p];
  return *this;
}

TensorField2& TensorField2::scale(double s) {
  for (auto& c : comps_)
    for (double& v : c) v *= s;
  return *this;
}

TensorField2 operator-(TensorField2 a, const TensorField2& b) { return a -= b; }
TensorField2 operator+(TensorField2 a, const TensorField2& b) { return a += b; }

// ---------------------------------------------------------------- MetricField

MetricField::MetricField(GridPtr grid, int dim, std::vector<std::vector<double>> components)
    : grid_(std::move(grid)), dim_(dim), g_(std::move(components)) {
  if (dim_ < 1 || dim_ > 8) throw DimensionError("MetricField: dimension must be in [1, 8]");
  if (dim_ != grid_->dim()) throw DimensionError("MetricField: metric dimension differs from grid dimension");
  if (g_.size() != static_cast<std::size_t>(dim_ * dim_))
    throw DimensionError("MetricField: expected dim*dim component arrays");
  for (const auto& c : g_)
    if (c.size() != grid_->size()) throw DimensionError("MetricField: component array of wrong length");
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) g_[static_cast<std::size_t>(j * dim_ + i)] = g_[static_cast<std::size_t>(i * dim_ + j)];
  finalize();
}

MetricField MetricField::from_function(GridPtr grid, int dim,
                                       const std::function<SmallMatrix(const Coordinates&)>& f) {
  std::vector<std::vector<double>> comps(static_cast<std::size_t>(dim * dim), std::vector<double>(grid->size()));
  for (std::size_t p = 0; p < grid->size(); ++p) {
    const SmallMatrix m = f(coordinates_of(*grid, p));
    if (m.rows() != dim || m.cols() != dim) throw DimensionError("MetricField::from_function: wrong matrix size");
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) comps[static_cast<std::size_t>(i * dim + j)][p] = m(i, j);
  }
  return MetricField(std::move(grid), dim, std::move(comps));
}

MetricField MetricField::constant_diagonal(GridPtr grid, const std::vector<double>& diagonal) {
  const int dim = static_cast<int>(diagonal.size());
  std::vector<std::vector<double>> comps(static_cast<std::size_t>(dim * dim), std::vector<double>(grid->size(), 0.0));
  for (int i = 0; i < dim; ++i) std::fill(comps[static_cast<std::size_t>(i * dim + i)].begin(),
                                          comps[static_cast<std::size_t>(i * dim + i)].end(), diagonal[static_cast<std::size_t>(i)]);
  return MetricField(std::move(grid), dim, std::move(comps));
}

SmallMatrix MetricField::at(std::size_t p) const {
  SmallMatrix m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = component(i, j)[p];
  return m;
}

bool MetricField::riemannian() const {
  return std::all_of(signature_.begin(), signature_.end(), [](int s) { return s > 0; });
}

bool MetricField::diagonal() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      if (i == j) continue;
      for (double v : component(i, j))
        if (v != 0.0) return false;
    }
  return true;
}

void MetricField::finalize() {
  const std::size_t n = grid_->size();
  ginv_.assign(static_cast<std::size_t>(dim_ * dim_), std::vector<double>(n));
  density_.assign(n, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    const SmallMatrix m = at(p);
    const double scale = m.cwiseAbs().maxCoeff();
    Eigen::PartialPivLU<SmallMatrix> lu(m);
    const double det = lu.determinant();
    if (!std::isfinite(det) || !(scale > 0.0) || std::abs(det) <= 1e-12 * std::pow(scale, dim_))
      throw SingularMetricError("metric is singular", p);
    const SmallMatrix inv = lu.inverse();
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j) {
        const double v = 0.5 * (inv(i, j) + inv(j, i));
        ginv_[static_cast<std::size_t>(i * dim_ + j)][p] = v;
        ginv_[static_cast<std::size_t>(j * dim_ + i)][p] = v;
      }
    density_[p] = std::sqrt(std::abs(det));

    std::vector<int> sig(static_cast<std::size_t>(dim_));
    bool is_diagonal = true;
    for (int i = 0; i < dim_ && is_diagonal; ++i)
      for (int j = 0; j < dim_; ++j)
        if (i != j && m(i, j) != 0.0) {
          is_diagonal = false;
          break;
        }
    if (is_diagonal) {
      for (int i = 0; i < dim_; ++i) sig[static_cast<std::size_t>(i)] = m(i, i) > 0.0 ? 1 : -1;
    } else {
      Eigen::SelfAdjointEigenSolver<SmallMatrix> es(m, Eigen::EigenvaluesOnly);
      for (int i = 0; i < dim_; ++i) sig[static_cast<std::size_t>(i)] = es.eigenvalues()(i) > 0.0 ? 1 : -1;
    }
    std::sort(sig.begin(), sig.end());
    if (p == 0)
      signature_ = sig;
    else if (sig != signature_)
      throw SingularMetricError("metric signature changes across the grid", p);
  }
}

// ---------------------------------------------------------------- ChristoffelField

ChristoffelField::ChristoffelField(GridPtr grid, int dim) : grid_(std::move(grid)), dim_(dim) {
  comps_.assign(static_cast<std::size_t>(dim * dim * dim), std::vector<double>(grid_->size(), 0.0));
}

ScalarField lift_to_product(const ScalarField& base_field, const GridPtr& product) {
  const GridManifold& base = base_field.grid();
  if (product->dim() < base.dim()) throw DimensionError("lift_to_product: product has fewer axes than base");
  for (int a = 0; a < base.dim(); ++a)
    if (!(product->axis(a) == base.axis(a))) throw DimensionError("lift_to_product: product does not start with base axes");
  std::vector<double> v(product->size());
  const std::size_t nb = base.size();
  for (std::size_t p = 0; p < v.size(); ++p) v[p] = base_field[p % nb];
  return ScalarField(product, std::move(v));
}

}  // namespace bcwp::geometry
