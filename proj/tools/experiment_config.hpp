#pragma once
// Experiment configuration: a subcommand plus string-valued options with
// every default materialized. Serialized as "subcommand <name>" followed by
// one "key value" line per option, sorted by key.
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hyperorbit::cli {

struct OptionSpec {
  std::string key;
  std::string default_value;
  std::string help;
};

const std::vector<std::string>& subcommands();
/// Options of a subcommand; throws hyperorbit::Error(Parse) for unknown names.
const std::vector<OptionSpec>& options_for(const std::string& subcommand);

struct ExperimentConfig {
  std::string subcommand;
  std::map<std::string, std::string> values;

  std::string to_text() const;
  static ExperimentConfig parse(const std::string& text);
  /// Adds defaults for missing keys; rejects keys the subcommand does not know.
  ExperimentConfig materialized() const;
  /// Hex digest of to_text().
  std::string hash() const;

  const std::string& get(const std::string& key) const;
  std::int64_t get_count(const std::string& key) const;  // accepts 12345, 10^6, 1e6
  double get_real(const std::string& key) const;
  bool get_flag(const std::string& key) const;
  bool is_auto(const std::string& key) const { return get(key) == "auto"; }

  bool operator==(const ExperimentConfig&) const = default;
};

/// "10000", "10^4", "1e4" -> 10000.
std::int64_t parse_count(const std::string& text);

}  // namespace hyperorbit::cli
