#include "experiment_config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "hyperorbit/errors.hpp"

namespace hyperorbit::cli {

namespace {

using Table = std::map<std::string, std::vector<OptionSpec>>;

std::vector<OptionSpec> orbit_options() {
  return {
      {"operator", "rolewicz2", "operator: rolewicz<c>, counterexample-c0, or a weight spec"},
      {"space", "lp 2 unilateral", "sequence space for weight-spec operators"},
      {"x", "constructed", "orbit start: constructed, 0, e<i>, dense<l>, file:path"},
      {"depth", "4", "construction depth when x is constructed"},
      {"family", "auto", "family for the construction"},
      {"tail-margin", "2048", "indices past the horizon included in certificate sums"},
      {"horizon", "10000", "last orbit index"},
      {"targets", "auto", "semicolon-separated <vector>/<radius> balls"},
      {"windows", "10,100,1000", "density window lengths"},
      {"overflow-bound", "1e300", "largest orbit entry before truncation"},
  };
}

const Table& table() {
  static const Table t = [] {
    Table t;
    t["densities"] = {
        {"set", "evens", "set name"},
        {"horizon", "auto", "last index (auto: generator horizon or 100000)"},
        {"windows", "auto", "window lengths (auto: generator grid or 10,100,1000)"},
        {"burn-in", "auto", "smallest prefix length (auto: generator value or horizon/10)"},
        {"exhaustive", "false", "scan every window start"},
    };
    t["make-set"] = {
        {"set", "evens", "set name"},
        {"horizon", "1000", "list members up to this index"},
    };
    t["check-family"] = {
        {"family", "dyadic:4", "family spec"},
        {"kmax", "auto", "number of sets checked (auto: all)"},
        {"horizon", "100000", "last index checked"},
    };
    t["verify-counterexample"] = {
        {"kmax", "6", "Fact 1: largest k"},
        {"lmax", "100", "Fact 1: largest l"},
        {"blocks-kmax", "3", "block family: number of sets"},
        {"reps", "3", "block family: passes through 1..blocks-kmax"},
    };
    t["dj-scan"] = {
        {"j", "1,2,3,4", "comma-separated thresholds j"},
        {"horizon", "1000000", "last index"},
    };
    t["construct"] = {
        {"operator", "rolewicz2", "operator"},
        {"space", "lp 2 unilateral", "sequence space for weight-spec operators"},
        {"depth", "4", "number of targets"},
        {"horizon", "10000", "certificate and orbit-check horizon"},
        {"family", "auto", "family spec (auto: dyadic blocks sized for the targets)"},
        {"tail-margin", "2048", "indices past the horizon included in certificate sums"},
        {"truncation", "auto", "last index kept in x (auto: horizon + tail-margin)"},
    };
    t["orbit"] = orbit_options();
    t["classify"] = orbit_options();
    t["classify"].push_back({"theta", "1/100", "density threshold"});
    t["return-set"] = {
        {"operator", "rolewicz2", "operator"},
        {"space", "lp 2 unilateral", "sequence space for weight-spec operators"},
        {"u", "dense1/0.5", "ball U as <vector>/<radius>"},
        {"v", "dense2/0.5", "ball V as <vector>/<radius>"},
        {"horizon", "10000", "last n"},
        {"probe-grid", "8", "fixed probes in U"},
        {"max-gap", "none", "largest gap accepted for the syndetic verdict"},
    };
    t["correlate"] = {
        {"set", "multiples:3", "set name"},
        {"epsilon", "1/2", "epsilon in (0, 1)"},
        {"kmax", "30", "largest shift k"},
        {"horizon", "3000", "horizon for the default windows"},
        {"windows", "auto", "m:s pairs, comma-separated (auto: Banach window of length 1000)"},
    };
    t["beta"] = {
        {"set", "evens", "set name"},
        {"alpha", "ones", "ones, harmonic, or inverse-weights:<weights>:<p>"},
        {"horizon", "10000", "sums truncated at this index"},
    };
    t["eqbeta"] = {
        {"weights", "bilateral-constant:2", "bilateral weight spec"},
        {"p", "2", "exponent p >= 1"},
        {"set", "explicit:0,10,20", "set name"},
        {"n", "all", "comma-separated n in the set, or all"},
        {"horizon", "10000", "sums truncated at this index"},
    };
    t["series-tests"] = {
        {"weights", "constant:2", "weight spec"},
        {"p", "2", "exponent p"},
        {"horizon", "10000", "last n"},
        {"threshold", "0", "mixing test threshold for log2 |w_1...w_n|"},
    };
    return t;
  }();
  return t;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"densities", "make-set",  "check-family", "verify-counterexample",
                                              "dj-scan",   "construct", "orbit",        "classify",
                                              "return-set", "correlate", "beta",        "eqbeta",
                                              "series-tests"};
  return names;
}

const std::vector<OptionSpec>& options_for(const std::string& subcommand) {
  const auto it = table().find(subcommand);
  if (it == table().end()) throw Error(ErrorKind::Parse, "unknown subcommand '" + subcommand + "'");
  return it->second;
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream out;
  out << "subcommand " << subcommand << '\n';
  for (const auto& [k, v] : values) out << k << ' ' << v << '\n';
  return out.str();
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto sp = line.find(' ');
    const std::string key = line.substr(0, sp);
    const std::string value = sp == std::string::npos ? "" : trim(line.substr(sp + 1));
    if (key == "subcommand") {
      c.subcommand = value;
    } else if (!c.values.emplace(key, value).second) {
      throw Error(ErrorKind::Parse, "duplicate config key '" + key + "'");
    }
  }
  if (c.subcommand.empty()) throw Error(ErrorKind::Parse, "config has no subcommand line");
  return c;
}

ExperimentConfig ExperimentConfig::materialized() const {
  const auto& specs = options_for(subcommand);
  ExperimentConfig out{subcommand, {}};
  for (const auto& [k, v] : values) {
    if (std::none_of(specs.begin(), specs.end(), [&](const OptionSpec& s) { return s.key == k; }))
      throw Error(ErrorKind::Parse, "subcommand " + subcommand + " has no option '" + k + "'");
    out.values[k] = v;
  }
  for (const auto& s : specs) out.values.emplace(s.key, s.default_value);
  return out;
}

std::string ExperimentConfig::hash() const {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << std::hash<std::string>{}(to_text());
  return out.str();
}

const std::string& ExperimentConfig::get(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw Error(ErrorKind::Parse, "missing option '" + key + "'");
  return it->second;
}

std::int64_t parse_count(const std::string& text) {
  const std::string t = trim(text);
  auto fail = [&]() -> std::int64_t { throw Error(ErrorKind::Parse, "bad count '" + text + "'"); };
  if (t.empty()) return fail();
  if (const auto caret = t.find('^'); caret != std::string::npos) {
    const auto base = parse_count(t.substr(0, caret)), exp = parse_count(t.substr(caret + 1));
    std::int64_t v = 1;
    for (std::int64_t i = 0; i < exp; ++i) {
      if (v > std::numeric_limits<std::int64_t>::max() / std::max<std::int64_t>(base, 1)) return fail();
      v *= base;
    }
    return v;
  }
  if (t.find_first_of("eE.") != std::string::npos) {
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(t, &used);
    } catch (const std::logic_error&) {
      return fail();
    }
    if (used != t.size() || d != std::floor(d) || std::abs(d) > 9e18) return fail();
    return static_cast<std::int64_t>(d);
  }
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::logic_error&) {
    return fail();
  }
  if (used != t.size()) return fail();
  return v;
}

std::int64_t ExperimentConfig::get_count(const std::string& key) const {
  try {
    return parse_count(get(key));
  } catch (const Error&) {
    throw Error(ErrorKind::Parse, "option '" + key + "' needs an integer, got '" + get(key) + "'");
  }
}

double ExperimentConfig::get_real(const std::string& key) const {
  const std::string& v = get(key);
  try {
    if (const auto slash = v.find('/'); slash != std::string::npos)
      return std::stod(v.substr(0, slash)) / std::stod(v.substr(slash + 1));
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorKind::Parse, "option '" + key + "' needs a number, got '" + v + "'");
}

bool ExperimentConfig::get_flag(const std::string& key) const {
  const std::string& v = get(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error(ErrorKind::Parse, "option '" + key + "' needs true or false, got '" + v + "'");
}

}  // namespace hyperorbit::cli
