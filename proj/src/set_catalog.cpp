#include "hyperorbit/set_catalog.hpp"

#include <fstream>
#include <sstream>

#include "hyperorbit/counterexample_c0.hpp"
#include "hyperorbit/errors.hpp"
#include "hyperorbit/hc_constructor.hpp"

namespace hyperorbit {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

[[noreturn]] void bad(const std::string& what, const std::string& spec) {
  throw Error(ErrorKind::Parse, "bad " + what + " '" + spec + "'");
}

std::int64_t to_i64(const std::string& s, const std::string& spec) {
  try {
    std::size_t used = 0;
    const auto v = std::stoll(s, &used);
    if (used != s.size()) bad("integer in", spec);
    return v;
  } catch (const std::logic_error&) {
    bad("integer in", spec);
  }
}

double to_f64(const std::string& s, const std::string& spec) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) bad("number in", spec);
    return v;
  } catch (const std::logic_error&) {
    bad("number in", spec);
  }
}

BigInt to_big(const std::string& s, const std::string& spec) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) bad("non-negative integer in", spec);
  return BigInt(s);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// "head:rest" -> {head, rest}; rest empty when there is no colon.
std::pair<std::string, std::string> head_rest(const std::string& spec) {
  const auto c = spec.find(':');
  if (c == std::string::npos) return {spec, ""};
  return {spec.substr(0, c), spec.substr(c + 1)};
}

}  // namespace

NamedSet parse_set(const std::string& name) {
  const auto [head, rest] = head_rest(name);
  NamedSet out{name, IndexSet::empty(), std::nullopt};
  if (name == "evens") {
    out.set = IndexSet::periodic(2, {0});
  } else if (name == "odds") {
    out.set = IndexSet::periodic(2, {1});
  } else if (name == "all") {
    out.set = IndexSet::all();
  } else if (name == "empty") {
  } else if (name == "squares") {
    out.set = IndexSet::squares();
  } else if (name == "factorial-blocks") {
    out.set = IndexSet::factorial_blocks();
  } else if (name == "s-set") {
    out.set = s_set();
  } else if (head == "multiples") {
    out.set = IndexSet::periodic(to_i64(rest, name), {0});
  } else if (head == "periodic") {
    const auto parts = split(rest, ':');
    if (parts.size() < 2 || parts.size() > 3) bad("periodic set", name);
    std::vector<std::int64_t> residues;
    for (const auto& r : split(parts[1], ',')) residues.push_back(to_i64(r, name));
    out.set = IndexSet::periodic(to_i64(parts[0], name), residues, parts.size() == 3 ? to_big(parts[2], name) : BigInt(0));
  } else if (head == "powers") {
    out.set = IndexSet::powers(to_i64(rest, name));
  } else if (head == "explicit") {
    std::vector<BigInt> members;
    if (!rest.empty())
      for (const auto& m : split(rest, ',')) members.push_back(to_big(m, name));
    out.set = IndexSet::explicit_list(std::move(members));
  } else if (head == "intervals") {
    std::vector<std::pair<BigInt, BigInt>> ivs;
    for (const auto& iv : split(rest, ',')) {
      const auto ends = split(iv, '-');
      if (ends.size() != 2) bad("interval", name);
      ivs.emplace_back(to_big(ends[0], name), to_big(ends[1], name));
    }
    out.set = IndexSet::intervals(std::move(ivs));
  } else if (head == "e-set") {
    out.set = e_set(static_cast<int>(to_i64(rest, name)));
  } else if (head == "d-set") {
    out.set = d_set(static_cast<int>(to_i64(rest, name)));
  } else if (head == "prescribed") {
    const auto r = split(rest, ',');
    if (r.size() != 4) bad("prescribed densities", name);
    auto p = make_prescribed_density_set(parse_ratio(r[0]), parse_ratio(r[1]), parse_ratio(r[2]), parse_ratio(r[3]));
    out.set = p.set;
    out.prescribed = std::move(p);
  } else if (head == "file") {
    out.set = parse_set_text(read_file(rest));
  } else {
    bad("set name", name);
  }
  return out;
}

IndexSet parse_set_text(const std::string& text) {
  std::istringstream in(text);
  std::string line, kind, name;
  std::vector<std::string> body;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (kind.empty()) {
      if (line.rfind("kind ", 0) != 0) bad("set text header", line);
      kind = line.substr(5);
    } else if (name.empty() && line.rfind("name ", 0) == 0) {
      name = line.substr(5);
    } else {
      body.push_back(line);
    }
  }
  auto field = [&](const std::string& key) -> std::string {
    for (const auto& b : body)
      if (b.rfind(key + ' ', 0) == 0) return b.substr(key.size() + 1);
    bad("set text, missing '" + key + "' in", kind + " " + name);
  };

  if (kind == "explicit-list") {
    std::vector<BigInt> members;
    for (const auto& b : body) members.push_back(to_big(b, b));
    return IndexSet::explicit_list(std::move(members));
  }
  if (kind == "periodic") {
    std::vector<std::int64_t> residues;
    std::istringstream r(field("residues"));
    for (std::int64_t v; r >> v;) residues.push_back(v);
    return IndexSet::periodic(to_i64(field("period"), "period"), residues, to_big(field("start"), "start"));
  }
  if (kind == "interval-union") {
    std::vector<std::pair<BigInt, BigInt>> ivs;
    for (const auto& b : body) {
      std::istringstream r(b);
      std::string lo, hi;
      if (!(r >> lo >> hi)) bad("interval line", b);
      ivs.emplace_back(to_big(lo, b), to_big(hi, b));
    }
    return IndexSet::intervals(std::move(ivs));
  }
  if (name == "factorial-blocks") return IndexSet::factorial_blocks();
  if (name == "squares") return IndexSet::squares();
  if (name == "s-set") return s_set();
  if (name == "e-set") return e_set(static_cast<int>(to_i64(field("j"), "j")));
  if (name == "d-set") return d_set(static_cast<int>(to_i64(field("j"), "j")));
  if (name == "powers")
    return IndexSet::powers(to_i64(field("base"), "base"), to_big(field("scale"), "scale"),
                            static_cast<unsigned>(to_i64(field("min-exponent"), "min-exponent")));
  if (name == "prescribed") {
    std::istringstream r(field("densities"));
    std::string a, b, c, d;
    if (!(r >> a >> b >> c >> d)) bad("densities line", field("densities"));
    return make_prescribed_density_set(parse_ratio(a), parse_ratio(b), parse_ratio(c), parse_ratio(d)).set;
  }
  bad("set text", kind + " " + name);
}

WeightPtr parse_weights(const std::string& spec) {
  const auto [head, rest] = head_rest(spec);
  if (head == "constant") return constant_weights(to_f64(rest, spec));
  if (head == "ratio-power") return ratio_power_weights(to_f64(rest, spec));
  if (head == "bilateral-constant") return bilateral_constant_weights(to_f64(rest, spec));
  if (spec == "counterexample-c0") return counterexample_weights();
  if (head == "table" || head == "table-file") {
    std::vector<double> values;
    if (head == "table") {
      for (const auto& v : split(rest, ',')) values.push_back(to_f64(v, spec));
    } else {
      std::istringstream in(read_file(rest));
      for (std::string v; in >> v;) values.push_back(to_f64(v, spec));
    }
    return table_weights(std::move(values));
  }
  bad("weight spec", spec);
}

ShiftOperator parse_operator(const std::string& spec, const SpaceSpec& space) {
  if (spec.rfind("rolewicz", 0) == 0) {
    const std::string c = spec.substr(8);
    if (c.empty()) bad("operator", spec);
    return ShiftOperator(constant_weights(to_f64(c, spec)), SpaceSpec::lp(2.0));
  }
  if (spec == "counterexample-c0") return ShiftOperator(counterexample_weights(), SpaceSpec::c0());
  return ShiftOperator(parse_weights(spec), space);
}

SetFamily parse_family(const std::string& spec) {
  const auto [head, rest] = head_rest(spec);
  const auto parts = split(rest, ':');
  if (head == "dyadic" || head == "prime-power") {
    if (parts.empty() || parts.size() > 2) bad("family", spec);
    const int levels = static_cast<int>(to_i64(parts[0], spec));
    const std::int64_t base = parts.size() == 2 ? to_i64(parts[1], spec) : default_family_base(levels, 1);
    return head == "dyadic" ? dyadic_block_family(levels, base) : prime_power_family(levels, base);
  }
  if (head == "c0-blocks") {
    if (parts.size() != 2) bad("family", spec);
    return build_block_family(static_cast<int>(to_i64(parts[0], spec)), static_cast<int>(to_i64(parts[1], spec)))
        .as_set_family();
  }
  bad("family", spec);
}

}  // namespace hyperorbit
