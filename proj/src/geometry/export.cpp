#include "bcwp/geometry/export.hpp"

#include "bcwp/errors.hpp"

#include <cstdio>

namespace bcwp::geometry {

namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_header_prefix(std::ostream& out, int dim) {
  for (int a = 0; a < dim; ++a) out << 'i' << a << ',';
  for (int a = 0; a < dim; ++a) out << 'x' << a << ',';
}

void write_point_prefix(std::ostream& out, const GridManifold& grid, std::size_t p) {
  for (int a = 0; a < grid.dim(); ++a) out << grid.index_along(p, a) << ',';
  for (int a = 0; a < grid.dim(); ++a) out << number(grid.coordinate(p, a)) << ',';
}

}  // namespace

void write_fields_csv(std::ostream& out, const std::vector<std::pair<std::string, const ScalarField*>>& fields) {
  if (fields.empty()) throw DimensionError("write_fields_csv: no fields");
  const GridManifold& grid = fields.front().second->grid();
  for (const auto& [name, f] : fields) require_same_grid(f->grid(), grid, "write_fields_csv");
  write_header_prefix(out, grid.dim());
  for (std::size_t c = 0; c < fields.size(); ++c) out << fields[c].first << (c + 1 < fields.size() ? "," : "\n");
  for (std::size_t p = 0; p < grid.size(); ++p) {
    write_point_prefix(out, grid, p);
    for (std::size_t c = 0; c < fields.size(); ++c)
      out << number((*fields[c].second)[p]) << (c + 1 < fields.size() ? "," : "\n");
  }
}

void write_tensor_csv(std::ostream& out, const std::string& name, const TensorField2& t) {
  const GridManifold& grid = t.grid();
  const int dim = t.dim();
  write_header_prefix(out, grid.dim());
  bool first = true;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      out << (first ? "" : ",") << name << '_' << i << j;
      first = false;
    }
  out << '\n';
  for (std::size_t p = 0; p < grid.size(); ++p) {
    write_point_prefix(out, grid, p);
    first = true;
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        out << (first ? "" : ",") << number(t(i, j, p));
        first = false;
      }
    out << '\n';
  }
}

}  // namespace bcwp::geometry
