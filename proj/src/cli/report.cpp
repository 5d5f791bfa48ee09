#include "bcwp/cli/report.hpp"

#include "bcwp/errors.hpp"

#include <cmath>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bcwp::cli {

namespace {

Json exact(const exponents::Rational& x) {
  return Json{{"exact", exponents::to_string(x)}, {"value", exponents::to_double(x)}};
}

Json exact(const std::optional<exponents::Rational>& x) { return x ? exact(*x) : Json(nullptr); }

Json exact(const std::optional<exponents::QuadraticSurd>& x) {
  return x ? Json{{"exact", x->to_string()}, {"value", x->to_double()}} : Json(nullptr);
}

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

void flatten(const Json& node, const std::string& prefix, std::ostringstream& os) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, os);
  } else if (node.is_number_float()) {
    os << prefix << " = " << format_number(node.get<double>()) << "\n";
  } else if (node.is_string()) {
    os << prefix << " = " << node.get<std::string>() << "\n";
  } else if (!node.is_array()) {
    os << prefix << " = " << node.dump() << "\n";
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

std::string CsvSeries::to_csv() const {
  std::ostringstream os;
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i]);
    os << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

CsvSeries field_series(const std::string& name,
                       const std::vector<std::pair<std::string, const geometry::ScalarField*>>& fields) {
  CsvSeries s;
  s.name = name;
  if (fields.empty()) return s;
  const geometry::GridManifold& grid = fields.front().second->grid();
  for (int a = 0; a < grid.dim(); ++a) s.header.push_back("x" + std::to_string(a));
  for (const auto& f : fields) {
    geometry::require_same_grid(f.second->grid(), grid, "field_series: " + f.first);
    s.header.push_back(f.first);
  }
  for (std::size_t p = 0; p < grid.size(); ++p) {
    std::vector<std::string> row;
    for (int a = 0; a < grid.dim(); ++a) row.push_back(format_number(grid.coordinate(p, a)));
    for (const auto& f : fields) row.push_back(format_number((*f.second)[p]));
    s.rows.push_back(std::move(row));
  }
  return s;
}

Json to_json(const exponents::RegimeReport& r) {
  Json j;
  j["m"] = r.m;
  j["k"] = r.k;
  j["mu"] = exact(r.mu);
  j["fiber_sign"] = r.fiber_sign;
  j["regime"] = exponents::to_string(r.regime);
  j["alpha"] = exact(r.alpha);
  j["beta"] = exact(r.beta);
  j["p"] = exact(r.p);
  j["q"] = exact(r.q);
  j["eta"] = exact(r.quad.eta);
  j["varpi"] = exact(r.quad.varpi);
  j["varrho"] = exact(r.quad.varrho);
  j["in_D"] = r.domain.in_D;
  j["varrho_discriminant"] = exact(r.domain.discriminant);
  j["mu_minus"] = exact(r.domain.mu_minus);
  j["mu_plus"] = exact(r.domain.mu_plus);
  j["mu_sc"] = exact(r.special.mu_sc);
  j["mu_pY"] = exact(r.special.mu_pY);
  j["p_Y"] = exact(r.special.p_Y);
  j["mu_bar"] = exact(r.special.mu_bar);
  j["mu_bar_minus"] = exact(r.special.mu_bar_minus);
  j["mu_bar_plus"] = exact(r.special.mu_bar_plus);
  j["singular_mu"] = r.singular_mu;
  j["applicable_result"] = r.applicable_result;
  j["strategy"] = r.strategy;
  return j;
}

Json to_json(const elliptic::SolveOutcome& o) {
  Json j;
  j["status"] = elliptic::to_string(o.status);
  j["route"] = o.route;
  j["message"] = o.message;
  j["residual_inf"] = o.residual_inf;
  j["iterations"] = o.iterations;
  j["lambda1"] = o.eigen.lambda1;
  j["eigen_residual"] = o.eigen.residual;
  j["eigen_iterations"] = o.eigen.iterations;
  j["kappa"] = optional_number(o.kappa);
  if (o.status == elliptic::SolveStatus::converged) {
    j["u_min"] = o.u.min();
    j["u_max"] = o.u.max();
  }
  if (o.certificate) {
    const auto& c = *o.certificate;
    Json cj{{"kind", elliptic::to_string(c.kind)}, {"construction", c.construction}};
    if (c.has_order_interval()) {
      cj["nu"] = c.nu;
      cj["sub_max"] = c.sub.max();
      cj["super_min"] = c.super.min();
      if (c.kind == elliptic::CertificateKind::bracket) {
        cj["a0"] = c.a0;
        cj["a1"] = c.a1;
      } else {
        cj["epsilon"] = c.epsilon;
        cj["M"] = c.M;
      }
    }
    j["certificate"] = cj;
  }
  if (o.nonexistence)
    j["nonexistence"] = Json{{"kind", o.nonexistence->kind},
                             {"statement", o.nonexistence->statement},
                             {"lhs", o.nonexistence->lhs},
                             {"rhs", o.nonexistence->rhs}};
  if (o.monotone)
    j["monotone"] = Json{{"converged", o.monotone->converged},
                         {"gap", o.monotone->gap},
                         {"iterations_lower", o.monotone->iterations_lower},
                         {"iterations_upper", o.monotone->iterations_upper},
                         {"residual_lower", o.monotone->residual_lower},
                         {"residual_upper", o.monotone->residual_upper},
                         {"monotonicity_violation", o.monotone->monotonicity_violation}};
  return j;
}

Json to_json(const elliptic::SweepReport& r) {
  Json j;
  j["lambda1"] = r.lambda1;
  j["lambda_bar"] = optional_number(r.lambda_bar);
  j["down_set"] = r.down_set;
  j["last_success"] = optional_number(r.last_success);
  j["first_failure"] = optional_number(r.first_failure);
  j["estimate"] = optional_number(r.estimate);
  j["points"] = r.points.size();
  return j;
}

std::vector<CsvSeries> emit_plot_data(const RunReport& report) { return report.series; }

std::string key_value_summary(const Json& document) {
  std::ostringstream os;
  for (const auto& [key, value] : document.items())
    if (key != "config") flatten(value, key, os);
  return os.str();
}

std::vector<std::string> write_outputs(const RunReport& report, const std::string& dir, const std::string& prefix) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
  const fs::path base(dir);
  auto emit = [&](const std::string& file, const std::string& text) {
    write_file(base / file, text);
    written.push_back((base / file).string());
  };
  emit(prefix + "_report.json", report.document.dump(2) + "\n");
  emit(prefix + "_summary.txt", key_value_summary(report.document));
  for (const auto& s : emit_plot_data(report)) emit(prefix + "_" + s.name + ".csv", s.to_csv());
  return written;
}

}  // namespace bcwp::cli
