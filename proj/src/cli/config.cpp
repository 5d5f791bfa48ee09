#include "bcwp/cli/config.hpp"

#include "bcwp/errors.hpp"
#include "bcwp/exponents/rational.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace bcwp::cli {

namespace {

SchemaField leaf(std::string path, FieldType type, Json def, std::string doc, std::optional<double> minimum = {},
                 std::vector<std::string> choices = {}) {
  return SchemaField{std::move(path), type, std::move(def), std::move(choices), minimum, std::move(doc)};
}

std::vector<SchemaField> build_schema() {
  using T = FieldType;
  const double two_pi = 2.0 * std::numbers::pi;
  return {
      leaf("command", T::choice, nullptr, "experiment to run", {},
           {"verify", "classify", "regime-series", "eigen", "kappa", "solve-sc", "sweep", "schwarzschild"}),
      leaf("seed", T::integer, 1, "seed of every randomized field", 0.0),
      leaf("report_timing", T::boolean, false, "add wall-clock seconds to the report (breaks byte-identical reruns)"),
      leaf("output.dir", T::string, "", "directory for report and CSV files; empty writes nothing"),
      leaf("output.prefix", T::string, "bcwp", "file name prefix"),

      leaf("base.kind", T::choice, "torus", "torus: flat T^dim; sphere: round S^sphere_dim(radius) x T^circles", {},
           {"torus", "sphere"}),
      leaf("base.dim", T::integer, 3, "dimension of the flat torus", 1.0),
      leaf("base.sphere_dim", T::integer, 2, "dimension of the round sphere factor", 2.0),
      leaf("base.circles", T::integer, 1, "number of circle factors next to the sphere", 0.0),
      leaf("base.points", T::integer_list, Json::array({16, 4, 4}),
           "nodes per base axis; the last entry repeats; sphere colatitudes get n nodes at spacing pi/(n+1)", 3.0),
      leaf("base.length", T::number, two_pi, "period of every flat circle", 0.0),
      leaf("base.radius", T::number, 1.0, "radius of the sphere factor", 0.0),
      leaf("base.scheme", T::choice, "spectral",
           "differentiation scheme of the base curvature operators; the elliptic solver always uses central2", {},
           {"central2", "spectral"}),
      leaf("base.curvature", T::choice, "analytic", "base Ricci tensor: closed form or brute force on the grid", {},
           {"analytic", "brute-force"}),
      leaf("base.S_B.kind", T::choice, "geometric",
           "geometric: S_B is the base scalar curvature; constant/trig: prescribed potential replacing it", {},
           {"geometric", "constant", "trig"}),
      leaf("base.S_B.value", T::number, 1.0, "constant potential"),
      leaf("base.S_B.offset", T::number, 1.0, "trig potential: mean value"),
      leaf("base.S_B.amplitude", T::number, 0.5, "trig potential: bound on the oscillating part", 0.0),
      leaf("base.S_B.modes", T::integer, 3, "trig potential: number of random sine modes", 1.0),
      leaf("base.S_B.max_wave", T::integer, 2, "trig potential: largest integer wave component", 1.0),

      leaf("fiber.kind", T::choice, "flat", "flat T^k, round S^k(radius) or Einstein with Ric_F = nu g_F", {},
           {"flat", "sphere", "einstein"}),
      leaf("fiber.k", T::integer, 1, "fiber dimension", 1.0),
      leaf("fiber.radius", T::number, 1.0, "radius of a round fiber", 0.0),
      leaf("fiber.nu", T::number, 0.0, "Einstein constant of an einstein fiber"),
      leaf("fiber.points", T::integer_list, Json::array({4}), "nodes per fiber axis; the last entry repeats", 3.0),

      leaf("mu", T::rational, "-1/4", "exponent of c = psi^mu, exact (\"-1/4\", \"0.5\")"),

      leaf("psi.kind", T::choice, "wave", "wave: offset + amplitude sin(wave x_axis); random: seeded trig sum", {},
           {"wave", "random"}),
      leaf("psi.offset", T::number, 2.0, "mean of psi"),
      leaf("psi.amplitude", T::number, 0.1, "amplitude of the oscillating part"),
      leaf("psi.axis", T::integer, 0, "base axis psi varies along (wave)", 0.0),
      leaf("psi.wave", T::integer, 1, "integer wave number (wave)", 0.0),
      leaf("psi.modes", T::integer, 3, "number of modes (random)", 1.0),
      leaf("psi.max_wave", T::integer, 2, "largest wave component (random)", 1.0),

      leaf("verify.ladder", T::integer_list, Json::array({16, 32, 64}),
           "refinement levels n; level n puts n nodes (torus) or n-1 colatitudes (spacing pi/n) on the refined axis",
           3.0),
      leaf("verify.refine", T::choice, "base", "refined axis: first base axis or first fiber axis", {},
           {"base", "fiber"}),
      leaf("verify.analytic_tolerance", T::number, 1e-9, "bound on |reduced - closed form| / max(|S|, 1)", 0.0),
      leaf("verify.trivial_tolerance", T::number, 1e-9,
           "brute-force errors below this at every level mark the order column n/a", 0.0),
      leaf("verify.order_min", T::number, 1.8, "smallest accepted observed order"),
      leaf("verify.order_max", T::number, 2.2, "largest accepted observed order"),

      leaf("pde.enabled", T::boolean, false,
           "solve the equation given by beta, S_F, p, q directly instead of the one derived from (m, k, mu)"),
      leaf("pde.beta", T::number, 1.0, "diffusion coefficient", 0.0),
      leaf("pde.S_F", T::number, 0.0, "constant S_F <= 0 of the -S_F u^q term"),
      leaf("pde.p", T::number, 2.0, "exponent of the lambda term"),
      leaf("pde.q", T::number, 1.0, "exponent of the S_F term"),

      leaf("solver.lambda", T::number, 1.0, "target constant scalar curvature"),
      leaf("solver.residual_tolerance", T::number, 1e-6, "accepted sup-norm residual of a solution", 0.0),
      leaf("solver.eigen_tolerance", T::number, 1e-11, "relative residual of the principal eigenpair", 0.0),
      leaf("solver.eigen_max_iterations", T::integer, 20000, "inverse-power budget", 1.0),
      leaf("solver.kappa_tolerance", T::number, 1e-9, "gradient tolerance of the Sobolev-quotient descent", 0.0),
      leaf("solver.kappa_max_iterations", T::integer, 50000, "descent budget", 1.0),
      leaf("solver.monotone_tolerance", T::number, 1e-10, "sup-norm step tolerance of the monotone iteration", 0.0),
      leaf("solver.monotone_max_iterations", T::integer, 100000, "monotone iteration budget per side", 1.0),
      leaf("solver.newton", T::boolean, true, "allow the empirical Newton fallback"),

      leaf("sweep.from", T::number, 0.0, "first lambda of the sweep grid"),
      leaf("sweep.to", T::number, 0.2, "last lambda of the sweep grid; below from gives an empty sweep"),
      leaf("sweep.step", T::number, 0.01, "grid spacing", 0.0),
      leaf("sweep.bisections", T::integer, 20, "bisection steps between last success and first failure", 0.0),
      leaf("sweep.tolerance", T::number, 1e-10, "bracket width at which bisection stops", 0.0),

      leaf("classify.m", T::integer, 7, "base dimension", 2.0),
      leaf("classify.k", T::integer, 4, "fiber dimension", 1.0),
      leaf("classify.mu", T::rational, "1/2", "exact mu"),
      leaf("classify.fiber_sign", T::choice, "negative", "sign of S_F", {},
           {"negative", "zero", "positive", "-", "0", "+"}),

      leaf("series.m", T::integer, 7, "base dimension", 2.0),
      leaf("series.k", T::integer, 4, "fiber dimension", 1.0),
      leaf("series.mu_from", T::rational, "-1", "first mu"),
      leaf("series.mu_to", T::rational, "1", "last mu"),
      leaf("series.points", T::integer, 201, "number of equally spaced exact mu values", 2.0),
      leaf("series.fiber_sign", T::choice, "negative", "sign of S_F for the regime labels", {},
           {"negative", "zero", "positive", "-", "0", "+"}),

      leaf("schwarzschild.s_lo", T::number, 0.25, "smallest s = r^2", 0.0),
      leaf("schwarzschild.s_hi", T::number, 4.0, "largest s", 0.0),
      leaf("schwarzschild.n_s", T::integer, 16, "nodes along s", 3.0),
      leaf("schwarzschild.n_y", T::integer, 8, "nodes along y = t/2", 3.0),
      leaf("schwarzschild.y_period", T::number, 1.0, "period of y", 0.0),
      leaf("schwarzschild.time_sign", T::integer, 1, "sign of the dt^2 term, 1 or -1"),
      leaf("schwarzschild.mass", T::number, 0.0, "u(r)^2 = 1 - 2 mass / r; 0 gives u = 1", 0.0),
      leaf("schwarzschild.tolerance", T::number, 1e-10, "accepted metric mismatch", 0.0),
  };
}

std::string node_text(const YAML::Node& node) {
  std::ostringstream os;
  os << node;
  return os.str();
}

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

void check_minimum(const SchemaField& f, double v) {
  if (f.minimum && v < *f.minimum) {
    std::ostringstream os;
    os << "value " << v << " below the minimum " << *f.minimum;
    fail(f.path, os.str());
  }
}

Json scalar_value(const SchemaField& f, const YAML::Node& node, FieldType type) {
  if (!node.IsScalar()) fail(f.path, "expected a scalar, got '" + node_text(node) + "'");
  const std::string text = node.Scalar();
  try {
    switch (type) {
      case FieldType::integer: {
        const long v = node.as<long>();
        check_minimum(f, static_cast<double>(v));
        return v;
      }
      case FieldType::number: {
        const double v = node.as<double>();
        if (!std::isfinite(v)) fail(f.path, "value is not finite");
        check_minimum(f, v);
        return v;
      }
      case FieldType::boolean: return node.as<bool>();
      case FieldType::string: return text;
      case FieldType::choice:
        if (std::find(f.choices.begin(), f.choices.end(), text) == f.choices.end()) {
          std::string options;
          for (const auto& c : f.choices) options += (options.empty() ? "" : ", ") + c;
          fail(f.path, "'" + text + "' is not one of " + options);
        }
        return text;
      case FieldType::rational: return exponents::to_string(exponents::parse_rational(text));
      default: break;
    }
  } catch (const YAML::BadConversion&) {
    fail(f.path, "expected " + to_string(type) + ", got '" + text + "'");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.rfind(f.path + ":", 0) == 0) throw;
    fail(f.path, what);
  }
  fail(f.path, "unsupported type");
}

Json typed_value(const SchemaField& f, const YAML::Node& node) {
  if (node.IsNull()) fail(f.path, "missing value");
  if (f.type == FieldType::integer_list || f.type == FieldType::number_list) {
    const FieldType element = f.type == FieldType::integer_list ? FieldType::integer : FieldType::number;
    Json out = Json::array();
    if (node.IsScalar()) {
      out.push_back(scalar_value(f, node, element));
    } else if (node.IsSequence()) {
      for (const auto& item : node) out.push_back(scalar_value(f, item, element));
    } else {
      fail(f.path, "expected a list");
    }
    if (out.empty()) fail(f.path, "empty list");
    return out;
  }
  return scalar_value(f, node, f.type);
}

const SchemaField* find_leaf(const std::string& path) {
  for (const auto& f : config_schema())
    if (f.path == path) return &f;
  return nullptr;
}

bool is_group(const std::string& path) {
  for (const auto& f : config_schema())
    if (f.path.size() > path.size() && f.path.compare(0, path.size(), path) == 0 && f.path[path.size()] == '.')
      return true;
  return false;
}

void collect(const YAML::Node& node, const std::string& prefix, std::map<std::string, YAML::Node>& out) {
  for (const auto& kv : node) {
    if (!kv.first.IsScalar()) fail(prefix.empty() ? "<root>" : prefix, "keys must be scalars");
    const std::string path = prefix.empty() ? kv.first.Scalar() : prefix + "." + kv.first.Scalar();
    if (find_leaf(path)) {
      out[path] = kv.second;
    } else if (is_group(path)) {
      if (!kv.second.IsMap()) fail(path, "expected a mapping");
      collect(kv.second, path, out);
    } else {
      throw ConfigError("unknown key '" + path + "'");
    }
  }
}

void set_path(Json& root, const std::string& path, Json value) {
  Json* at = &root;
  std::size_t start = 0;
  for (;;) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (dot == std::string::npos) {
      (*at)[key] = std::move(value);
      return;
    }
    at = &(*at)[key];
    start = dot + 1;
  }
}

}  // namespace

std::string to_string(FieldType type) {
  switch (type) {
    case FieldType::integer: return "integer";
    case FieldType::number: return "number";
    case FieldType::boolean: return "boolean";
    case FieldType::string: return "string";
    case FieldType::choice: return "choice";
    case FieldType::rational: return "rational";
    case FieldType::integer_list: return "integer list";
    case FieldType::number_list: return "number list";
  }
  return "unknown";
}

const std::vector<SchemaField>& config_schema() {
  static const std::vector<SchemaField> schema = build_schema();
  return schema;
}

Json resolve_config(const std::string& yaml_text, const std::vector<std::string>& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed YAML: ") + e.what());
  }
  std::map<std::string, YAML::Node> given;
  if (root.IsMap()) {
    collect(root, "", given);
  } else if (!root.IsNull()) {
    throw ConfigError("<root>: expected a mapping of keys");
  }
  for (const auto& o : overrides) {
    const std::size_t eq = o.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + o + "' is not of the form key=value");
    const std::string path = o.substr(0, eq);
    if (!find_leaf(path)) throw ConfigError("unknown key '" + path + "'");
    try {
      given[path] = YAML::Load(o.substr(eq + 1));
    } catch (const YAML::Exception& e) {
      fail(path, std::string("malformed override value: ") + e.what());
    }
  }

  Json out = Json::object();
  for (const auto& f : config_schema()) {
    const auto it = given.find(f.path);
    set_path(out, f.path, it == given.end() ? f.default_value : typed_value(f, it->second));
  }
  return out;
}

Json load_config_file(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return resolve_config(text.str(), overrides);
}

const Json& at_path(const Json& config, const std::string& path) {
  const Json* at = &config;
  std::size_t start = 0;
  for (;;) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!at->is_object() || !at->contains(key)) throw ConfigError(path + ": missing");
    at = &(*at)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (at->is_null()) throw ConfigError(path + ": required but not set");
  return *at;
}

double get_number(const Json& config, const std::string& path) { return at_path(config, path).get<double>(); }
long get_integer(const Json& config, const std::string& path) { return at_path(config, path).get<long>(); }
bool get_bool(const Json& config, const std::string& path) { return at_path(config, path).get<bool>(); }
std::string get_string(const Json& config, const std::string& path) {
  return at_path(config, path).get<std::string>();
}
std::vector<int> get_integer_list(const Json& config, const std::string& path) {
  return at_path(config, path).get<std::vector<int>>();
}

std::string schema_reference() {
  std::ostringstream os;
  for (const auto& f : config_schema()) {
    os << f.path << " (" << to_string(f.type);
    if (!f.choices.empty()) {
      os << ":";
      for (const auto& c : f.choices) os << " " << c;
    }
    os << ") default " << (f.default_value.is_null() ? std::string("required") : f.default_value.dump());
    if (f.minimum) os << ", min " << *f.minimum;
    os << "\n    " << f.doc << "\n";
  }
  return os.str();
}

}  // namespace bcwp::cli
