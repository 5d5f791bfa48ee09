// bcwp: one binary, one subcommand per experiment. Configuration comes from a YAML file; --set
// overrides single keys. The resolved config, results and status go to stdout as JSON; with
// output.dir set (or --out) the report, a key = value summary and the CSV series are written there.

#include "bcwp/cli/commands.hpp"
#include "bcwp/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using bcwp::cli::Json;

struct Common {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir;
  bool timing = false;
  bool quiet = false;
};

void add_common(CLI::App* sub, Common& c, bool config_required = false) {
  auto* opt = sub->add_option("-c,--config", c.config_path, "YAML config file");
  if (config_required) opt->required();
  sub->add_option("-s,--set", c.sets, "override one key, e.g. --set solver.lambda=0.5")->take_all();
  sub->add_option("-o,--out", c.out_dir, "output directory (sets output.dir)");
  sub->add_flag("--timing", c.timing, "record wall-clock seconds (sets report_timing)");
  sub->add_flag("-q,--quiet", c.quiet, "do not print the report to stdout");
}

std::string read_text(const std::string& path) {
  if (path.empty()) return "";
  std::ifstream in(path);
  if (!in) throw bcwp::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int execute(const std::string& command, const Common& c, std::vector<std::string> extra_sets) {
  std::vector<std::string> sets = std::move(extra_sets);
  sets.insert(sets.end(), c.sets.begin(), c.sets.end());
  if (!c.out_dir.empty()) sets.push_back("output.dir=" + c.out_dir);
  if (c.timing) sets.push_back("report_timing=true");
  Json config = bcwp::cli::resolve_config(read_text(c.config_path), sets);
  if (!command.empty()) {
    if (!config["command"].is_null() && config["command"] != command)
      throw bcwp::ConfigError("command: config is for '" + config["command"].get<std::string>() + "', not '" +
                              command + "'");
    config["command"] = command;
  }
  const bcwp::cli::RunReport report = bcwp::cli::run_experiment(config);
  if (!c.quiet) std::cout << report.document.dump(2) << "\n";
  const std::string dir = bcwp::cli::get_string(config, "output.dir");
  if (!dir.empty()) {
    for (const auto& path : bcwp::cli::write_outputs(report, dir, bcwp::cli::get_string(config, "output.prefix")))
      std::cerr << "wrote " << path << "\n";
  }
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature and constant scalar curvature experiments on base conformal warped products"};
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {"verify", "reduced form vs closed form vs brute-force scalar curvature over a refinement ladder"},
      {"regime-series", "p, q, varrho over an exact mu grid, with the zero crossings of q"},
      {"eigen", "principal eigenpair of -beta Lap + S_B"},
      {"kappa", "Sobolev-quotient infimum kappa_p and its minimizer"},
      {"solve-sc", "positive solution of the reduced equation and the resulting psi"},
      {"sweep", "solvability over a lambda grid with bisection at the first failure"},
      {"schwarzschild", "nested (psi_1,-1)/(psi_2,-1/2) construction against the direct metric"},
  };

  std::vector<Common> commons(std::size(entries) + 2);
  std::string chosen;
  std::vector<std::string> extra;
  std::size_t slot = 0;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, commons[slot]);
    sub->callback([&chosen, name = std::string(e.name)] { chosen = name; });
    ++slot;
  }

  Common& classify_common = commons[slot++];
  std::vector<std::string> classify_args;
  CLI::App* classify = app.add_subcommand("classify", "regime label of (m, k, mu, sign of S_F)");
  add_common(classify, classify_common);
  classify->add_option("args", classify_args, "m k mu [fiber sign]")->expected(0, 4);
  classify->callback([&] { chosen = "classify"; });

  Common& run_common = commons[slot++];
  CLI::App* run = app.add_subcommand("run", "run the command named in the config file");
  add_common(run, run_common, true);
  run->callback([&] { chosen = "run"; });

  CLI::App* schema = app.add_subcommand("schema", "list every config key with type, default and meaning");
  schema->callback([&] { chosen = "schema"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : bcwp::cli::kErrorExit;
  }

  try {
    if (chosen == "schema") {
      std::cout << bcwp::cli::schema_reference();
      return 0;
    }
    if (chosen == "run") return execute("", run_common, {});
    if (chosen == "classify") {
      if (classify_args.size() == 1 || classify_args.size() == 2)
        throw bcwp::ConfigError("classify: positional form is m k mu [fiber sign]");
      const char* keys[] = {"classify.m", "classify.k", "classify.mu", "classify.fiber_sign"};
      for (std::size_t i = 0; i < classify_args.size(); ++i) extra.push_back(std::string(keys[i]) + "=" + classify_args[i]);
      return execute("classify", classify_common, extra);
    }
    for (std::size_t i = 0; i < std::size(entries); ++i)
      if (chosen == entries[i].name) return execute(chosen, commons[i], {});
  } catch (const bcwp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bcwp::cli::kErrorExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bcwp::cli::kErrorExit;
  }
  return bcwp::cli::kErrorExit;
}
