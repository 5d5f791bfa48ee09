#pragma once

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bcwp::cli {

using Json = nlohmann::ordered_json;

enum class FieldType { integer, number, boolean, string, choice, rational, integer_list, number_list };
std::string to_string(FieldType type);

/// One leaf of the configuration tree, addressed by its dotted path ("solver.lambda").
struct SchemaField {
  std::string path;
  FieldType type = FieldType::number;
  Json default_value;  ///< null: no default, the key must be given
  std::vector<std::string> choices;
  std::optional<double> minimum;  ///< inclusive; applies to every element of a list
  std::string doc;
};

/// Every accepted key in declaration order. The resolved config lists them in this order.
const std::vector<SchemaField>& config_schema();

/// Parses YAML text, applies "key=value" overrides (values parsed as YAML), rejects unknown keys and
/// ill-typed values with a ConfigError naming the key path, and fills every default. The result
/// holds a value for every schema key except required ones left unset (null).
Json resolve_config(const std::string& yaml_text, const std::vector<std::string>& overrides = {});
Json load_config_file(const std::string& path, const std::vector<std::string>& overrides = {});

/// Value at a dotted path of a resolved config; ConfigError if absent or null.
const Json& at_path(const Json& config, const std::string& path);
double get_number(const Json& config, const std::string& path);
long get_integer(const Json& config, const std::string& path);
bool get_bool(const Json& config, const std::string& path);
std::string get_string(const Json& config, const std::string& path);
std::vector<int> get_integer_list(const Json& config, const std::string& path);

/// Annotated listing of every key with type, default and description.
std::string schema_reference();

}  // namespace bcwp::cli
