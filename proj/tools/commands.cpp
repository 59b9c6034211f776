#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hyperorbit/counterexample_c0.hpp"
#include "hyperorbit/errors.hpp"
#include "hyperorbit/hc_constructor.hpp"
#include "hyperorbit/recurrence_analysis.hpp"
#include "hyperorbit/set_catalog.hpp"

namespace hyperorbit::cli {

namespace {

namespace fs = std::filesystem;

class Outputs {
 public:
  Outputs(fs::path dir, RunResult& result) : dir_(std::move(dir)), result_(result) {}
  void write(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + (dir_ / name).string());
    out << content;
    result_.files.push_back(name);
  }

 private:
  fs::path dir_;
  RunResult& result_;
};

void fail(RunResult& r, const std::string& check) {
  if (r.code == kOk) {
    r.code = kVerificationFailure;
    r.status = "verification-failure " + check;
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string dec(const Ratio& r) { return format_double(to_double(r)); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::int64_t> count_list(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& v : split(s, ',')) out.push_back(parse_count(v));
  if (out.empty()) throw Error(ErrorKind::Parse, "empty list '" + s + "'");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

ShiftOperator make_operator(const ExperimentConfig& c) {
  return parse_operator(c.get("operator"), SpaceSpec::parse(c.get("space")));
}

// 0, e<i>, dense<l>, file:path
SparseVec parse_vector(const std::string& spec, const SpaceSpec& space, const DenseSequence& Y) {
  if (spec == "0") return SparseVec(space);
  if (spec.rfind("e", 0) == 0 && spec.size() > 1) return SparseVec::basis(space, parse_count(spec.substr(1)));
  if (spec.rfind("dense", 0) == 0) return Y.item(parse_count(spec.substr(5)));
  if (spec.rfind("file:", 0) == 0) {
    SparseVec v = SparseVec::parse(read_file(spec.substr(5)));
    if (!(v.space() == space)) throw Error(ErrorKind::SpaceMismatch, spec + " is not in " + space.to_text());
    return v;
  }
  throw Error(ErrorKind::Parse, "bad vector '" + spec + "'");
}

Ball parse_ball(const std::string& spec, const SpaceSpec& space, const DenseSequence& Y) {
  const auto slash = spec.rfind('/');
  if (slash == std::string::npos) throw Error(ErrorKind::Parse, "ball '" + spec + "' needs <vector>/<radius>");
  double radius = 0;
  try {
    radius = std::stod(spec.substr(slash + 1));
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Parse, "bad radius in '" + spec + "'");
  }
  return {parse_vector(spec.substr(0, slash), space, Y), radius};
}

struct Construction {
  ConstructionPlan plan;
  HCVector vector;
};

Construction construct(const ExperimentConfig& c, const ShiftOperator& T, std::int64_t truncation) {
  const int depth = static_cast<int>(c.get_count("depth"));
  const std::int64_t horizon = c.get_count("horizon");
  DenseSequence Y(T.space);
  SetFamily family;
  if (c.is_auto("family")) {
    std::int64_t width = 1;
    for (int l = 1; l <= depth; ++l) {
      const auto y = Y.item(l);
      if (!y.empty()) width = std::max(width, y.max_index() + 1);
    }
    family = dyadic_block_family(depth + 4, default_family_base(depth + 4, width));
  } else {
    family = parse_family(c.get("family"));
  }
  PlanOptions options;
  options.tail_margin = c.get_count("tail-margin");
  auto plan = select_subsequence(T, family, Y, depth, horizon, options);
  auto v = assemble_vector(plan, T, truncation);
  return {std::move(plan), std::move(v)};
}

std::string x_csv(const LogSparseVec& x) {
  std::ostringstream out;
  out << "index,sign,log2_abs\n";
  for (const auto& e : x.entries()) out << e.index << ',' << e.sign << ',' << format_double(e.log2_abs) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------

void run_densities(const ExperimentConfig& c, Outputs& out, RunResult&, std::ostream& log) {
  const NamedSet named = parse_set(c.get("set"));
  const auto& p = named.prescribed;
  const std::int64_t horizon = c.is_auto("horizon") ? (p ? p->horizon : 100000) : c.get_count("horizon");
  const auto grid = c.is_auto("windows") ? (p ? p->window_grid : std::vector<std::int64_t>{10, 100, 1000})
                                         : count_list(c.get("windows"));
  DensityOptions options;
  options.burn_in = c.is_auto("burn-in") ? (p ? p->burn_in : -1) : c.get_count("burn-in");
  options.exhaustive = c.get_flag("exhaustive");
  const DensityReport d = estimate_densities(named.set, horizon, grid, options);

  std::ostringstream csv;
  csv << "set,horizon,window,lower_banach,lower_density,upper_density,upper_banach,chain_holds\n"
      << csv_field(named.name) << ',' << horizon << ',' << d.window << ',' << dec(d.lower_banach) << ','
      << dec(d.lower_density) << ',' << dec(d.upper_density) << ',' << dec(d.upper_banach) << ','
      << (d.chain_holds() ? 1 : 0) << '\n';
  out.write("densities.csv", csv.str());

  std::ostringstream exact;
  exact << "quantity,value,position\n"
        << "lower_banach," << to_string(d.lower_banach) << ',' << d.lower_banach_position << '\n'
        << "lower_density," << to_string(d.lower_density) << ',' << d.lower_density_length << '\n'
        << "upper_density," << to_string(d.upper_density) << ',' << d.upper_density_length << '\n'
        << "upper_banach," << to_string(d.upper_banach) << ',' << d.upper_banach_position << '\n';
  out.write("densities-exact.csv", exact.str());

  std::ostringstream w;
  w << "s,lower,upper,lower_position,upper_position,positions_scanned\n";
  for (const auto& e : d.per_window)
    w << e.s << ',' << dec(e.lower) << ',' << dec(e.upper) << ',' << e.lower_position << ',' << e.upper_position << ','
      << e.positions_scanned << '\n';
  out.write("windows.csv", w.str());
  log << "densities of " << named.name << " on [0, " << horizon << "]: " << dec(d.lower_banach) << " <= "
      << dec(d.lower_density) << " <= " << dec(d.upper_density) << " <= " << dec(d.upper_banach) << '\n';
}

void run_make_set(const ExperimentConfig& c, Outputs& out, RunResult&, std::ostream& log) {
  const NamedSet named = parse_set(c.get("set"));
  const std::int64_t horizon = c.get_count("horizon");
  out.write("set.txt", named.set.to_text());
  std::ostringstream csv;
  csv << "n\n";
  const auto members = named.set.members(0, horizon);
  for (auto n : members) csv << n << '\n';
  out.write("members.csv", csv.str());
  log << named.name << ": " << members.size() << " members in [0, " << horizon << "]\n";
}

void run_check_family(const ExperimentConfig& c, Outputs& out, RunResult& r, std::ostream& log) {
  const std::string spec = c.get("family");
  std::ostringstream txt;
  if (spec.rfind("c0-blocks", 0) == 0) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw Error(ErrorKind::Parse, "family '" + spec + "' needs c0-blocks:kmax:reps");
    const BlockFamily f = build_block_family(static_cast<int>(parse_count(parts[1])), static_cast<int>(parse_count(parts[2])));
    const auto sym = check_gap_family_symbolic(f);
    txt << "family " << f.label << "\ncheck symbolic\npairs " << sym.pairs_checked << "\nstatus "
        << (sym.ok ? "ok" : "violation " + sym.violation) << '\n';
    if (!sym.ok) fail(r, "gap-property");
  } else {
    const SetFamily f = parse_family(spec);
    const int k_max = c.is_auto("kmax") ? f.size() : static_cast<int>(c.get_count("kmax"));
    const std::int64_t horizon = c.get_count("horizon");
    const GapCheck g = check_gap_family(f, k_max, horizon);
    txt << "family " << f.label << "\ncheck enumerated\nk-max " << k_max << "\nhorizon " << horizon << "\nelements "
        << g.elements << "\nstatus ";
    if (g.ok) {
      txt << "ok\n";
    } else {
      const auto& v = *g.violation;
      txt << "violation " << v.first << " (A_" << v.first_level << ") " << v.second << " (A_" << v.second_level
          << ")\n";
      fail(r, "gap-property");
    }
  }
  out.write("family-check.txt", txt.str());
  log << txt.str();
}

void run_verify_counterexample(const ExperimentConfig& c, Outputs& out, RunResult& r, std::ostream& log) {
  const int k_max = static_cast<int>(c.get_count("kmax"));
  const std::int64_t l_max = c.get_count("lmax");
  const Fact1Report fact = verify_fact1(k_max, l_max);
  std::ostringstream f;
  f << "k_max,l_max,cases,in_s,violations\n"
    << k_max << ',' << l_max << ',' << fact.cases << ',' << fact.in_s << ',' << fact.violations.size() << '\n';
  out.write("fact1.csv", f.str());
  std::ostringstream fv;
  fv << "k,l,m,sign,in_s,max_witness_j\n";
  for (const auto& v : fact.violations)
    fv << v.k << ',' << v.l << ',' << v.m << ',' << (v.plus ? '+' : '-') << ',' << v.in_s << ',' << v.max_witness_j
       << '\n';
  out.write("fact1-violations.csv", fv.str());
  if (!fact.ok) fail(r, "fact1");
  log << "Fact 1 (k <= " << k_max << ", l <= " << l_max << "): " << fact.cases << " cases, "
      << fact.violations.size() << " violations\n";

  const BlockFamily family =
      build_block_family(static_cast<int>(c.get_count("blocks-kmax")), static_cast<int>(c.get_count("reps")));
  std::ostringstream b;
  b << "j,k,j0,l0,min,step\n";
  for (const auto& blk : family.blocks)
    b << blk.j << ',' << blk.k << ',' << blk.j0.to_string() << ',' << blk.l0 << ',' << blk.min().to_string() << ','
      << blk.step() << '\n';
  out.write("blocks.csv", b.str());

  std::ostringstream cc;
  cc << "j,condition,ok,detail\n";
  int failed = 0;
  for (const auto& chk : verify_block_conditions(family)) {
    cc << chk.j << ',' << chk.condition << ',' << (chk.ok ? 1 : 0) << ',' << csv_field(chk.detail) << '\n';
    failed += !chk.ok;
  }
  out.write("block-conditions.csv", cc.str());
  if (failed) fail(r, "block-conditions");
  const auto sym = check_gap_family_symbolic(family);
  if (!sym.ok) fail(r, "gap-property");
  log << "block family " << family.label << ": " << failed << " failed conditions, gap property "
      << (sym.ok ? "ok" : sym.violation) << '\n';

  std::ostringstream bb;
  bb << "k,l0,s,count,shifted_count,ratio,shifted_ratio,bound,ok\n";
  for (int k = 1; k <= family.k_max; ++k) {
    const auto chk = banach_lower_bound_check(family, k);
    bb << k << ',' << chk.l0 << ',' << chk.s << ',' << chk.count << ',' << chk.shifted_count << ','
       << to_string(chk.ratio) << ',' << to_string(chk.shifted_ratio) << ',' << to_string(chk.bound) << ','
       << (chk.ok ? 1 : 0) << '\n';
    if (!chk.ok) fail(r, "banach-bound");
  }
  out.write("banach-bounds.csv", bb.str());
}

void run_dj_scan(const ExperimentConfig& c, Outputs& out, RunResult& r, std::ostream& log) {
  std::vector<int> js;
  for (auto j : count_list(c.get("j"))) js.push_back(static_cast<int>(j));
  const auto scans = dj_density_scan(js, c.get_count("horizon"));
  std::ostringstream rows, summary;
  rows << "j,N,count,ratio,decay_bound\n";
  summary << "j,bound_respected,e_checked,e_violations\n";
  for (const auto& s : scans) {
    for (const auto& row : s.rows)
      rows << s.j << ',' << row.n << ',' << row.count << ',' << dec(row.ratio) << ',' << format_double(row.decay_bound)
           << '\n';
    summary << s.j << ',' << (s.bound_respected ? 1 : 0) << ',' << s.e_checked << ',' << s.e_violations.size() << '\n';
    if (!s.bound_respected) fail(r, "dj-bound");
    if (!s.e_violations.empty()) fail(r, "dj-in-ej");
  }
  out.write("dj-scan.csv", rows.str());
  out.write("dj-summary.csv", summary.str());
  log << summary.str();
}

void run_construct(const ExperimentConfig& c, Outputs& out, RunResult& r, std::ostream& log) {
  const ShiftOperator T = make_operator(c);
  const std::int64_t horizon = c.get_count("horizon");
  const std::int64_t truncation =
      c.is_auto("truncation") ? horizon + c.get_count("tail-margin") : c.get_count("truncation");
  const Construction built = construct(c, T, truncation);
  out.write("plan.txt", built.plan.to_text());
  out.write("x.csv", x_csv(built.vector.x));
  const OrbitBoundReport bounds = verify_orbit_bounds(built.vector, T, horizon);
  out.write("orbit-bounds.csv", bounds.to_csv());
  if (!bounds.ok) fail(r, "orbit-bound");
  log << "selected";
  for (int k : built.plan.selected) log << ' ' << k;
  log << "; orbit bounds " << (bounds.ok ? "hold" : "violated") << " up to " << horizon
      << (bounds.truncation_verified ? "" : " (truncation term unverified)") << '\n';
}

std::vector<HittingReport> orbit_reports(const ExperimentConfig& c, Outputs& out, RunResult& r, std::ostream& log) {
  const ShiftOperator T = make_operator(c);
  const std::int64_t horizon = c.get_count("horizon");
  const int depth = static_cast<int>(c.get_count("depth"));
  DenseSequence Y(T.space);
  LogSparseVec x(T.space);
  if (c.get("x") == "constructed") {
    x = construct(c, T, horizon + c.get_count("tail-margin")).vector.x;
  } else {
    x = LogSparseVec::from(parse_vector(c.get("x"), T.space, Y));
  }
  std::vector<Ball> targets;
  if (c.is_auto("targets")) {
    for (int l = 1; l <= depth; ++l) targets.push_back({Y.item(l), std::ldexp(1.0, -l)});
  } else {
    for (const auto& t : split(c.get("targets"), ';')) targets.push_back(parse_ball(t, T.space, Y));
  }
  HittingOptions options;
  options.window_grid = count_list(c.get("windows"));
  options.overflow_bound = c.get_real("overflow-bound");
  auto reports = hitting_times(T, x, targets, horizon, options);

  std::ostringstream tg;
  tg << "target_id,radius,center\n";
  for (std::size_t t = 0; t < targets.size(); ++t) {
    std::string center;
    for (const auto& [i, v] : targets[t].center.entries()) center += (center.empty() ? "" : " ") + std::to_string(i) + ":" + format_double(v);
    tg << t + 1 << ',' << format_double(targets[t].radius) << ',' << csv_field(center) << '\n';
  }
  out.write("targets.csv", tg.str());
  out.write("hitting-times.csv", hitting_times_csv(reports));
  out.write("hitting-densities.csv", density_table_csv(reports));
  if (!reports.empty() && reports.front().truncated) {
    log << "warning: " << reports.front().warning << '\n';
    r.code = kOverflow;
    r.status = "overflow-truncation";
  }
  for (std::size_t t = 0; t < reports.size(); ++t)
    log << "target " << t + 1 << ": " << reports[t].times.size() << " hits in [0, " << reports[t].horizon << "]\n";
  return reports;
}

void run_orbit(const ExperimentConfig& c, Outputs& out, RunResult& r, std::ostream& log) { orbit_reports(c, out, r, log); }

void run_classify(const ExperimentConfig& c, Outputs& out, RunResult& r, std::ostream& log) {
  const auto reports = orbit_reports(c, out, r, log);
  const Classification cl = classify(reports, parse_ratio(c.get("theta")));
  std::ostringstream csv;
  csv << "target_id,frequent,u_frequent,reiterative,label\n";
  for (std::size_t t = 0; t < cl.targets.size(); ++t) {
    const auto& e = cl.targets[t];
    csv << t + 1 << ',' << e.frequent << ',' << e.u_frequent << ',' << e.reiterative << ',' << e.label << '\n';
  }
  out.write("classification.csv", csv.str());
  out.write("classification.txt", cl.label() + "\n");
  log << cl.label() << '\n';
}

void run_return_set(const ExperimentConfig& c, Outputs& out, RunResult&, std::ostream& log) {
  const ShiftOperator T = make_operator(c);
  DenseSequence Y(T.space);
  const Ball U = parse_ball(c.get("u"), T.space, Y), V = parse_ball(c.get("v"), T.space, Y);
  std::optional<std::int64_t> max_gap;
  if (c.get("max-gap") != "none") max_gap = c.get_count("max-gap");
  const auto rep = return_set(T, U, V, c.get_count("horizon"), c.get_count("probe-grid"), max_gap);
  std::ostringstream csv;
  csv << "n\n";
  for (auto n : rep.times) csv << n << '\n';
  out.write("return-set.csv", csv.str());
  std::ostringstream txt;
  txt << rep.label() << "\nprobes " << rep.probes << "\nsteered " << rep.steered << "\n"
      << rep.evidence.label() << '\n';
  out.write("return-set.txt", txt.str());
  log << rep.label() << '\n';
}

void run_correlate(const ExperimentConfig& c, Outputs& out, RunResult&, std::ostream& log) {
  const NamedSet named = parse_set(c.get("set"));
  const std::int64_t horizon = c.get_count("horizon");
  std::vector<std::pair<std::int64_t, std::int64_t>> windows;
  if (c.is_auto("windows")) {
    const std::int64_t s = std::min<std::int64_t>(1000, horizon + 1);
    const auto d = estimate_densities(named.set, horizon, {s});
    windows = banach_windows(d);
  } else {
    for (const auto& w : split(c.get("windows"), ',')) {
      const auto colon = w.find(':');
      if (colon == std::string::npos) throw Error(ErrorKind::Parse, "window '" + w + "' needs m:s");
      windows.emplace_back(parse_count(w.substr(0, colon)), parse_count(w.substr(colon + 1)));
    }
  }
  const auto rep = correlation_scan(named.set, parse_ratio(c.get("epsilon")), c.get_count("kmax"), windows);
  out.write("correlation.csv", rep.to_csv());
  std::ostringstream txt;
  txt << "delta " << to_string(rep.delta) << "\nepsilon " << to_string(rep.epsilon) << "\nwindows";
  for (auto [m, s] : rep.windows) txt << ' ' << m << ':' << s;
  txt << "\nF " << rep.F.size() << " of " << rep.eta.size() << "\nF-syndetic " << rep.F_evidence.label()
      << "\nantichain";
  for (auto a : rep.antichain) txt << ' ' << a;
  txt << "\nantichain-size " << rep.antichain.size() << "\nantichain-bound " << to_string(rep.antichain_bound) << " ("
      << dec(rep.antichain_bound) << ")\n";
  out.write("correlation.txt", txt.str());
  log << txt.str();
}

AlphaProfile parse_alpha(const std::string& spec) {
  if (spec == "ones") return AlphaProfile::ones();
  if (spec == "harmonic") return AlphaProfile::harmonic();
  if (spec.rfind("inverse-weights:", 0) == 0) {
    const std::string rest = spec.substr(16);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos) throw Error(ErrorKind::Parse, "alpha '" + spec + "' needs inverse-weights:<w>:<p>");
    return AlphaProfile::inverse_weight_products(parse_weights(rest.substr(0, colon)), std::stod(rest.substr(colon + 1)));
  }
  throw Error(ErrorKind::Parse, "bad alpha '" + spec + "'");
}

void run_beta(const ExperimentConfig& c, Outputs& out, RunResult&, std::ostream& log) {
  const NamedSet named = parse_set(c.get("set"));
  const auto rep = beta_sequence(named.set, parse_alpha(c.get("alpha")), c.get_count("horizon"));
  out.write("beta.csv", rep.to_csv());
  std::ostringstream g;
  g << "prefix,max_beta,argmax\n";
  for (const auto& row : rep.growth) g << row.prefix << ',' << format_double(row.max_beta) << ',' << row.argmax << '\n';
  out.write("beta-growth.csv", g.str());
  log << "alpha partial sum " << format_double(rep.alpha_partial_sum) << "; growth "
      << (rep.growth_detected ? "detected" : "not detected") << " along " << rep.growth.size() << " prefixes\n";
}

void run_eqbeta(const ExperimentConfig& c, Outputs& out, RunResult&, std::ostream& log) {
  const WeightPtr w = parse_weights(c.get("weights"));
  const double p = c.get_real("p");
  const NamedSet named = parse_set(c.get("set"));
  const std::int64_t horizon = c.get_count("horizon");
  const auto ns = c.get("n") == "all" ? named.set.members(0, horizon) : count_list(c.get("n"));
  std::ostringstream csv;
  csv << "n,left,left_terms,right,right_terms,both_at_most_1\n";
  std::int64_t within = 0;
  for (auto n : ns) {
    const auto s = eqbeta_sums(*w, p, named.set, n, horizon);
    const bool ok = s.left <= 1.0 && s.right <= 1.0;
    within += ok;
    csv << n << ',' << format_double(s.left) << ',' << s.left_terms << ',' << format_double(s.right) << ','
        << s.right_terms << ',' << ok << '\n';
  }
  out.write("eqbeta.csv", csv.str());
  log << within << " of " << ns.size() << " sampled n have both sums <= 1\n";
}

void run_series_tests(const ExperimentConfig& c, Outputs& out, RunResult&, std::ostream& log) {
  const WeightPtr w = parse_weights(c.get("weights"));
  const std::int64_t horizon = c.get_count("horizon");
  const auto series = frequent_hc_series_test(*w, c.get_real("p"), horizon);
  const auto mixing = mixing_test(*w, horizon, c.get_real("threshold"));
  std::ostringstream csv;
  csv << "test,value,verdict\n"
      << "series," << format_double(series.partial_sum) << ',' << (series.converging ? "converging" : "diverging") << '\n'
      << "mixing," << format_double(mixing.segment_minima.empty() ? 0.0 : mixing.segment_minima.back()) << ','
      << (mixing.tends_to_infinity ? "mixing" : "not-mixing") << '\n';
  out.write("series-tests.csv", csv.str());
  std::ostringstream seg;
  seg << "segment,min_log2_product\n";
  for (std::size_t i = 0; i < mixing.segment_minima.size(); ++i)
    seg << i << ',' << format_double(mixing.segment_minima[i]) << '\n';
  out.write("mixing-segments.csv", seg.str());
  log << series.label() << '\n' << mixing.label() << '\n';
}

}  // namespace

RunResult run(const ExperimentConfig& config, const fs::path& out_dir, std::ostream& log) {
  using Runner = void (*)(const ExperimentConfig&, Outputs&, RunResult&, std::ostream&);
  static const std::map<std::string, Runner> runners{
      {"densities", run_densities},
      {"make-set", run_make_set},
      {"check-family", run_check_family},
      {"verify-counterexample", run_verify_counterexample},
      {"dj-scan", run_dj_scan},
      {"construct", run_construct},
      {"orbit", run_orbit},
      {"classify", run_classify},
      {"return-set", run_return_set},
      {"correlate", run_correlate},
      {"beta", run_beta},
      {"eqbeta", run_eqbeta},
      {"series-tests", run_series_tests},
  };
  const auto it = runners.find(config.subcommand);
  if (it == runners.end()) throw Error(ErrorKind::Parse, "unknown subcommand '" + config.subcommand + "'");
  fs::create_directories(out_dir);
  RunResult result;
  Outputs out(out_dir, result);
  out.write("config.txt", config.to_text());
  it->second(config, out, result, log);
  return result;
}

}  // namespace hyperorbit::cli
