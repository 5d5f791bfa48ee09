#include "bcwp/geometry/differences.hpp"

#include "bcwp/errors.hpp"

#include <cmath>
#include <numbers>

namespace bcwp::geometry {

std::string to_string(Scheme s) { return s == Scheme::central2 ? "central2" : "spectral"; }

Scheme parse_scheme(const std::string& text) {
  if (text == "central2") return Scheme::central2;
  if (text == "spectral") return Scheme::spectral;
  throw ConfigError("scheme: expected central2 or spectral, got '" + text + "'");
}

Eigen::MatrixXd spectral_first_matrix(int n, double length) {
  const double h = 2.0 * std::numbers::pi / n;
  const double scale = 2.0 * std::numbers::pi / length;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int k = i - j;
      const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
      const double x = 0.5 * k * h;
      const double v = (n % 2 == 0) ? 0.5 * sgn / std::tan(x) : 0.5 * sgn / std::sin(x);
      d(i, j) = scale * v;
      d(j, i) = -scale * v;  // exact skew-symmetry
    }
  return d;
}

Eigen::MatrixXd spectral_second_matrix(int n, double length) {
  const double h = 2.0 * std::numbers::pi / n;
  const double scale = std::pow(2.0 * std::numbers::pi / length, 2);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  const double diag = (n % 2 == 0) ? -std::numbers::pi * std::numbers::pi / (3.0 * h * h) - 1.0 / 6.0
                                   : -std::numbers::pi * std::numbers::pi / (3.0 * h * h) + 1.0 / 12.0;
  for (int i = 0; i < n; ++i) {
    d(i, i) = scale * diag;
    for (int j = i + 1; j < n; ++j) {
      const int k = i - j;
      const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
      const double x = 0.5 * k * h;
      const double s = std::sin(x);
      const double v = (n % 2 == 0) ? -sgn / (2.0 * s * s) : -0.5 * sgn * std::cos(x) / (s * s);
      d(i, j) = scale * v;
      d(j, i) = scale * v;
    }
  }
  return d;
}

Differentiator::Differentiator(GridPtr grid, Scheme scheme) : grid_(std::move(grid)), scheme_(scheme) {
  if (scheme_ == Scheme::spectral) {
    for (int a = 0; a < grid_->dim(); ++a) {
      const Axis& ax = grid_->axis(a);
      if (!ax.wraps())
        throw DimensionError("spectral differentiation needs periodic axes; axis " + std::to_string(a) + " is " +
                             geometry::to_string(ax.kind));
      d1_.push_back(spectral_first_matrix(ax.n, ax.hi - ax.lo));
      d2_.push_back(spectral_second_matrix(ax.n, ax.hi - ax.lo));
    }
  }
}

template <class Kernel>
void Differentiator::along_lines(const std::vector<double>& f, int axis, std::vector<double>& out,
                                 Kernel kernel) const {
  const std::size_t n = static_cast<std::size_t>(grid_->axis(axis).n);
  const std::size_t s = grid_->stride(axis);
  const std::size_t block = n * s;
  std::vector<double> in_line(n), out_line(n);
  for (std::size_t outer = 0; outer < grid_->size(); outer += block)
    for (std::size_t inner = 0; inner < s; ++inner) {
      const std::size_t base = outer + inner;
      for (std::size_t j = 0; j < n; ++j) in_line[j] = f[base + j * s];
      kernel(in_line.data(), out_line.data());
      for (std::size_t j = 0; j < n; ++j) out[base + j * s] = out_line[j];
    }
}

void Differentiator::first_line(const double* f, double* out, int axis) const {
  const Axis& ax = grid_->axis(axis);
  const int n = ax.n;
  if (scheme_ == Scheme::spectral) {
    const Eigen::Map<const Eigen::VectorXd> in(f, n);
    Eigen::Map<Eigen::VectorXd>(out, n).noalias() = d1_[static_cast<std::size_t>(axis)] * in;
    return;
  }
  const double h = ax.spacing();
  const double c = 0.5 / h;
  if (ax.wraps()) {
    for (int j = 0; j < n; ++j) out[j] = c * (f[(j + 1) % n] - f[(j + n - 1) % n]);
    return;
  }
  out[0] = c * (-3.0 * f[0] + 4.0 * f[1] - f[2]);
  for (int j = 1; j < n - 1; ++j) out[j] = c * (f[j + 1] - f[j - 1]);
  out[n - 1] = c * (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]);
}

void Differentiator::second_line(const double* f, double* out, int axis) const {
  const Axis& ax = grid_->axis(axis);
  const int n = ax.n;
  if (scheme_ == Scheme::spectral) {
    const Eigen::Map<const Eigen::VectorXd> in(f, n);
    Eigen::Map<Eigen::VectorXd>(out, n).noalias() = d2_[static_cast<std::size_t>(axis)] * in;
    return;
  }
  const double h = ax.spacing();
  const double c = 1.0 / (h * h);
  if (ax.wraps()) {
    for (int j = 0; j < n; ++j) out[j] = c * (f[(j + 1) % n] - 2.0 * f[j] + f[(j + n - 1) % n]);
    return;
  }
  out[0] = c * (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]);
  for (int j = 1; j < n - 1; ++j) out[j] = c * (f[j + 1] - 2.0 * f[j] + f[j - 1]);
  out[n - 1] = c * (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]);
}

std::vector<double> Differentiator::first(const std::vector<double>& f, int axis) const {
  std::vector<double> out(f.size());
  along_lines(f, axis, out, [&](const double* in, double* o) { first_line(in, o, axis); });
  return out;
}

std::vector<double> Differentiator::second(const std::vector<double>& f, int axis) const {
  std::vector<double> out(f.size());
  along_lines(f, axis, out, [&](const double* in, double* o) { second_line(in, o, axis); });
  return out;
}

std::vector<double> Differentiator::mixed(const std::vector<double>& f, int a, int b) const {
  if (a == b) return second(f, a);
  return first(first(f, b), a);
}

SparseMatrix Differentiator::first_matrix(int axis) const {
  if (scheme_ != Scheme::central2) throw Error("first_matrix: only available for the central2 scheme");
  const Axis& ax = grid_->axis(axis);
  const int n = ax.n;
  const std::size_t s = grid_->stride(axis);
  const double c = 0.5 / ax.spacing();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(grid_->size() * 3);
  for (std::size_t p = 0; p < grid_->size(); ++p) {
    const int j = grid_->index_along(p, axis);
    const auto row = static_cast<Eigen::Index>(p);
    auto at = [&](int jj) { return row + static_cast<Eigen::Index>(jj - j) * static_cast<Eigen::Index>(s); };
    if (ax.wraps()) {
      const int jp = (j + 1) % n;
      const int jm = (j + n - 1) % n;
      t.emplace_back(row, at(jp), c);
      t.emplace_back(row, at(jm), -c);
    } else if (j == 0) {
      t.emplace_back(row, at(0), -3.0 * c);
      t.emplace_back(row, at(1), 4.0 * c);
      t.emplace_back(row, at(2), -c);
    } else if (j == n - 1) {
      t.emplace_back(row, at(n - 1), 3.0 * c);
      t.emplace_back(row, at(n - 2), -4.0 * c);
      t.emplace_back(row, at(n - 3), c);
    } else {
      t.emplace_back(row, at(j + 1), c);
      t.emplace_back(row, at(j - 1), -c);
    }
  }
  const auto N = static_cast<Eigen::Index>(grid_->size());
  SparseMatrix d(N, N);
  d.setFromTriplets(t.begin(), t.end());
  return d;
}

}  // namespace bcwp::geometry
