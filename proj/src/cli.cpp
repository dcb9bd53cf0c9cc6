#include "widthcalc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "widthcalc/closedform.hpp"
#include "widthcalc/exponent.hpp"
#include "widthcalc/oracle.hpp"

namespace widthcalc::cli {

using nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join_list(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += ",";
    out += parts[k];
  }
  return out;
}

ordered_json num(const Rational& v) {
  return {{"exact", v.str()}, {"decimal", v.decimal(12)}};
}

ordered_json num(const PowerProduct& v) {
  ordered_json j{{"exact", v.str()}, {"decimal", v.decimal(12)}};
  if (auto r = v.as_rational()) j["rational"] = r->str();
  return j;
}

std::string show(const Rational& v) { return v.str() + " (" + v.decimal(12) + ")"; }
std::string show(const PowerProduct& v) { return v.str() + " (" + v.decimal(12) + ")"; }

std::string rationals(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += v[k].str();
  }
  return out;
}

ordered_json rational_array(const std::vector<Rational>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(num(x));
  return a;
}

ordered_json spec_json(const ProblemSpec& spec) {
  ordered_json j;
  j["d"] = spec.d();
  j["p"] = rational_array(spec.p);
  j["r"] = rational_array(spec.r);
  j["q"] = num(spec.q);
  return j;
}

ordered_json regime_json(const RegimeReport& rep) {
  ordered_json j;
  j["theorem_case"] = rep.theorem_case;
  j["bounded"] = rep.bounded;
  j["compact"] = rep.compact;
  j["dop_usl_holds"] = rep.dop_usl_holds;
  ordered_json th = ordered_json::object();
  for (const auto& [k, v] : rep.thetas) th[k] = num(v);
  j["thetas"] = th;
  j["exponent"] = rep.exponent ? num(*rep.exponent) : ordered_json(nullptr);
  j["tie"] = rep.tie;
  j["note"] = rep.note;
  return j;
}

void print_regime(std::ostream& out, const RegimeReport& rep) {
  out << "regime: " << rep.theorem_case << "\n";
  out << "bounded: " << (rep.bounded ? "yes" : "no") << "  compact: " << (rep.compact ? "yes" : "no")
      << "  regularity: " << (rep.dop_usl_holds ? "holds" : "fails") << "\n";
  for (const auto& [k, v] : rep.thetas) out << "  " << k << " = " << show(v) << "\n";
  if (rep.exponent) out << "closed form: " << show(*rep.exponent) << "\n";
  if (!rep.note.empty()) out << "note: " << rep.note << "\n";
}

ProblemSpec read_spec(std::optional<std::size_t> d, const std::vector<std::string>& p,
                      const std::vector<std::string>& r, const std::string& q) {
  if (p.empty() || r.empty() || q.empty()) throw CLI::ValidationError("--p, --r and --q are required");
  const auto pv = parse_rational_list(join_list(p));
  const auto rv = parse_rational_list(join_list(r));
  if (d && (*d != pv.size() || *d != rv.size())) {
    throw DomainError("--d " + std::to_string(*d) + " does not match the lengths of --p and --r");
  }
  return ProblemSpec(pv, rv, Rational::parse(q));
}

struct SpecOptions {
  std::optional<std::size_t> d;
  std::vector<std::string> p;
  std::vector<std::string> r;
  std::string q;

  void attach(CLI::App* sub) {
    sub->add_option("--d", d, "dimension");
    sub->add_option("--p", p, "p_1,...,p_d (exact rationals)")->delimiter(',');
    sub->add_option("--r", r, "r_1,...,r_d (exact rationals)")->delimiter(',');
    sub->add_option("--q", q, "target exponent q");
  }
  ProblemSpec spec() const { return read_spec(d, p, r, q); }
};

// ---- exponent ----

struct ExponentOutcome {
  ordered_json json;
  std::string text;
  int code = kExitOk;
};

ExponentOutcome exponent_query(const ProblemSpec& spec) {
  ExponentOutcome o;
  std::ostringstream out;
  std::vector<std::string> warnings;
  const RegimeReport rep = classify_regime(spec);
  const ExponentResult res = minimize(spec);

  std::string label;
  if (rep.exponent) label = rep.theorem_case;
  else if (rep.theorem_case == "T3-noncompact" || rep.theorem_case == "not-compact") label = rep.theorem_case;
  else if (res.unique) label = "T2";
  else label = "uncovered";

  bool failure = false;
  std::optional<bool> agrees;
  if (rep.exponent) {
    agrees = *rep.exponent == res.theta;
    if (!*agrees) {
      failure = true;
      warnings.push_back("closed form " + rep.exponent->str() + " disagrees with the minimum " + res.theta.str());
    }
  }
  if (rep.tie) warnings.push_back("closed-form candidates tie; the exponent comes from the minimization alone");
  if (!res.unique) warnings.push_back("minimum point is not unique; the order estimate is not established");
  if (!rep.bounded && res.theta.sign() > 0) {
    warnings.push_back("embedding criterion value is negative while the minimum is positive");
  }
  if (rep.theorem_case == "T3-noncompact" && res.theta.sign() > 0) {
    warnings.push_back("non-compactness criterion holds while the minimum is positive");
  }

  ordered_json grid = nullptr;
  const std::uint64_t G = grid_resolution(spec.d());
  const FeasibleSet feas = FeasibleSet::for_spec(spec);
  const std::uint64_t points = grid_point_count(spec.d(), feas, G);
  std::string grid_line;
  if (points <= kGridPointGuard) {
    const GridCheck gc = grid_check(spec, res.theta, G);
    grid = {{"G", gc.report.G},
            {"points", gc.report.points},
            {"best_value", num(gc.report.best_value)},
            {"gap_bound", num(gc.report.gap_bound)},
            {"bracketed", gc.bracketed}};
    grid_line = "grid: G=" + std::to_string(gc.report.G) + " bracket [" +
                (gc.report.best_value - gc.report.gap_bound).str() + ", " + gc.report.best_value.str() + "] " +
                (gc.bracketed ? "contains theta" : "MISSES theta");
    if (!gc.bracketed) failure = true;
  } else {
    grid_line = "grid: skipped (" + std::to_string(points) + " points exceed the guard)";
    warnings.push_back("grid oracle skipped: point count over the guard");
  }

  if (failure) o.code = kExitVerificationFailure;
  else if (label == "T3-noncompact" || label == "not-compact" || res.theta.sign() <= 0) o.code = kExitNotCompact;
  else if (!res.unique) o.code = kExitUncovered;

  out << "spec: " << spec.describe() << "\n";
  out << "theta: " << show(res.theta) << "\n";
  out << "argmin: alpha=(" << rationals(res.argmin.alpha) << ") s=" << res.argmin.s.str() << "\n";
  out << "unique: " << (res.unique ? "yes" : "no") << "\n";
  out << "active:";
  for (const auto& t : res.active_pieces) out << " " << t.str();
  out << "\n";
  out << "compactness: " << compactness_name(res.compact) << "\n";
  out << "regime: " << label << "\n";
  if (rep.exponent) {
    out << "closed form: " << rep.exponent->str() << " (" << rep.theorem_case << ") "
        << (*agrees ? "agrees" : "DISAGREES") << "\n";
  }
  out << grid_line << "\n";
  for (const auto& w : warnings) out << "warning: " << w << "\n";

  ordered_json j;
  j["command"] = "exponent";
  j["input"] = spec_json(spec);
  j["theta"] = num(res.theta);
  j["argmin"] = {{"alpha", rational_array(res.argmin.alpha)}, {"s", num(res.argmin.s)}};
  j["unique"] = res.unique;
  ordered_json active = ordered_json::array();
  for (const auto& t : res.active_pieces) active.push_back(t.str());
  j["active_pieces"] = active;
  j["compactness"] = compactness_name(res.compact);
  j["regime_label"] = label;
  j["regime"] = regime_json(rep);
  j["closed_form_agrees"] = agrees ? ordered_json(*agrees) : ordered_json(nullptr);
  j["grid"] = grid;
  j["warnings"] = warnings;
  j["exit_code"] = o.code;
  o.json = std::move(j);
  o.text = out.str();
  return o;
}

int regime_code(const RegimeReport& rep) {
  if (rep.theorem_case == "T3-noncompact" || rep.theorem_case == "not-compact") return kExitNotCompact;
  if (!rep.exponent) return kExitUncovered;
  return kExitOk;
}

// ---- finite ----

ordered_json certificate_json(const LowerBoundCertificate& c) {
  ordered_json j;
  j["kind"] = certificate_kind_name(c.kind);
  j["lemma"] = c.lemma;
  j["case"] = c.lemma_case;
  j["alpha_star"] = c.alpha_star + 1;
  j["beta_star"] = c.beta_star ? ordered_json(*c.beta_star + 1) : ordered_json(nullptr);
  j["k"] = c.k;
  j["l"] = c.l ? num(*c.l) : ordered_json(nullptr);
  j["scale"] = num(c.scale);
  j["factor"] = num(c.factor);
  ordered_json ineq = ordered_json::array();
  for (const auto& i : c.checked) {
    ineq.push_back({{"gamma", i.gamma + 1}, {"lhs", num(i.lhs)}, {"rhs", num(i.rhs)}, {"holds", i.holds}});
  }
  j["inequalities"] = ineq;
  j["lower_bound"] = num(c.lower_bound);
  j["symbolic_bound"] = num(c.symbolic_bound);
  j["verified"] = c.verified();
  return j;
}

}  // namespace

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) throw DomainError("empty entry in list '" + std::string(text) + "'");
    out.push_back(Rational::parse(part));
  }
  return out;
}

PowerProduct parse_power_product(std::string_view text) {
  PowerProduct out;
  for (const auto& factor : split(text, '*')) {
    if (factor.empty()) throw DomainError("empty factor in '" + std::string(text) + "'");
    const std::size_t caret = factor.find('^');
    if (caret == std::string::npos) {
      out = out * PowerProduct::from_rational(Rational::parse(factor));
      continue;
    }
    std::string e = trim(std::string_view(factor).substr(caret + 1));
    if (e.size() >= 2 && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
    out = out * PowerProduct::power(Rational::parse(trim(std::string_view(factor).substr(0, caret))),
                                    Rational::parse(e));
  }
  return out;
}

std::vector<BallSpec> parse_balls(std::string_view text) {
  std::vector<BallSpec> out;
  for (const auto& part : split(text, ',')) {
    const std::size_t colon = part.find(':');
    if (colon == std::string::npos) throw DomainError("ball '" + part + "' must have the form p:nu");
    out.push_back({LebesgueExponent::parse(std::string_view(part).substr(0, colon)),
                   parse_power_product(std::string_view(part).substr(colon + 1))});
  }
  return out;
}

std::uint64_t grid_resolution(std::size_t d) {
  const char* env = std::getenv("WIDTHCALC_GRID");
  if (env == nullptr || *env == '\0') return default_grid(d);
  const std::string s = env;
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9) {
    throw DomainError("WIDTHCALC_GRID must be a positive integer, got '" + s + "'");
  }
  const std::uint64_t G = std::stoull(s);
  if (G < 2) throw DomainError("WIDTHCALC_GRID must be at least 2");
  return G;
}

Rational sweep_value(const SweepPlan& plan, std::uint64_t k) {
  if (plan.steps <= 1) return plan.from;
  return plan.from + (plan.to - plan.from) * Rational(static_cast<std::int64_t>(k)) /
                         Rational(static_cast<std::int64_t>(plan.steps - 1));
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string sweep_row(const SweepPlan& plan, std::uint64_t k) {
  const Rational v = sweep_value(plan, k);
  std::string row = plan.varying + "," + v.str() + ",";
  try {
    std::vector<Rational> p = plan.base.p;
    std::vector<Rational> r = plan.base.r;
    Rational q = plan.base.q;
    if (plan.varying == "q") {
      q = v;
    } else {
      const std::size_t j = std::stoul(plan.varying.substr(1)) - 1;
      (plan.varying[0] == 'p' ? p : r).at(j) = v;
    }
    const ProblemSpec spec(p, r, q);
    const RegimeReport rep = classify_regime(spec);
    const ExponentResult res = minimize(spec);
    std::string label;
    if (rep.exponent) label = rep.theorem_case;
    else if (rep.theorem_case == "T3-noncompact" || rep.theorem_case == "not-compact") label = rep.theorem_case;
    else label = res.unique ? "T2" : "uncovered";
    std::string status = "ok";
    if (rep.exponent && *rep.exponent != res.theta) status = "closed-form-mismatch";
    row += res.theta.numerator().get_str() + "," + res.theta.denominator().get_str() + "," + res.theta.decimal(12) +
           "," + label + "," + (res.unique ? "true" : "false") + "," + compactness_name(res.compact) + "," + status;
  } catch (const std::exception& e) {
    row += ",,,,,," + csv_field(std::string("error: ") + e.what());
  }
  return row;
}

void validate_plan(const SweepPlan& plan) {
  if (plan.steps < 1) throw DomainError("steps must be at least 1");
  if (!(plan.from < plan.to)) throw DomainError("sweep requires from < to");
  if (plan.varying == "q") return;
  if (plan.varying.size() >= 2 && (plan.varying[0] == 'p' || plan.varying[0] == 'r')) {
    const std::string idx = plan.varying.substr(1);
    if (idx.find_first_not_of("0123456789") == std::string::npos && idx.size() <= 2) {
      const std::size_t j = std::stoul(idx);
      if (j >= 1 && j <= plan.base.d()) return;
    }
  }
  throw DomainError("--vary must be q, p<j> or r<j> with 1 <= j <= d, got '" + plan.varying + "'");
}

}  // namespace

std::string run_sweep_csv(const SweepPlan& plan) {
  validate_plan(plan);
  std::vector<std::future<std::string>> rows;
  for (std::uint64_t k = 0; k < plan.steps; ++k) {
    rows.push_back(std::async(std::launch::async, [&plan, k] { return sweep_row(plan, k); }));
  }
  std::string out = std::string(kSweepHeader) + "\n";
  for (auto& f : rows) out += f.get() + "\n";
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  // --config may follow the subcommand; CLI11 reads it at the top level.
  std::vector<std::string> args;
  std::vector<std::string> rest;
  for (std::size_t k = 0; k < raw_args.size(); ++k) {
    if (raw_args[k] == "--config" && k + 1 < raw_args.size()) {
      args.push_back(raw_args[k]);
      args.push_back(raw_args[++k]);
    } else if (raw_args[k].rfind("--config=", 0) == 0) {
      args.push_back(raw_args[k]);
    } else {
      rest.push_back(raw_args[k]);
    }
  }
  args.insert(args.end(), rest.begin(), rest.end());

  CLI::App app{"Order exponents of Kolmogorov widths of anisotropic Sobolev classes", "widthcalc"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file; keys are flag names, in a [subcommand] section");
  std::string format = "text";
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* exp_cmd = app.add_subcommand("exponent", "minimise the exponent functional and cross-check");
  SpecOptions exp_opts;
  exp_opts.attach(exp_cmd);
  exp_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* reg_cmd = app.add_subcommand("regime", "closed-form regime classification");
  SpecOptions reg_opts;
  reg_opts.attach(reg_cmd);
  reg_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* fin_cmd = app.add_subcommand("finite", "width order of an intersection of finite-dimensional balls");
  std::uint64_t N = 0, n = 0;
  std::string fq;
  std::vector<std::string> balls;
  fin_cmd->add_option("--N", N, "ambient dimension")->required();
  fin_cmd->add_option("--n", n, "width index")->required();
  fin_cmd->add_option("--q", fq, "target exponent")->required();
  fin_cmd->add_option("--balls", balls, "p:nu,p:nu,...")->delimiter(',')->required();
  fin_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* sweep_cmd = app.add_subcommand("sweep", "CSV sweep of one parameter");
  SpecOptions sweep_opts;
  sweep_opts.attach(sweep_cmd);
  std::string vary, from, to, out_path;
  std::uint64_t steps = 1;
  sweep_cmd->add_option("--vary", vary, "q, p<j> or r<j>")->required();
  sweep_cmd->add_option("--from", from)->required();
  sweep_cmd->add_option("--to", to)->required();
  sweep_cmd->add_option("--steps", steps)->required();
  sweep_cmd->add_option("--out", out_path, "CSV path (stdout when omitted)");

  auto* ver_cmd = app.add_subcommand("verify", "cross-validate closed forms against the oracles");
  std::uint64_t samples = 500, seed = 42, grid_per_dim = 64;
  bool inject_fault = false, no_grid = false;
  std::string report_path;
  ver_cmd->add_option("--samples", samples, "samples per stratum");
  ver_cmd->add_option("--seed", seed);
  ver_cmd->add_option("--grid-per-dim", grid_per_dim, "grid resolution G = value * d")->check(CLI::Range(1, 4096));
  ver_cmd->add_flag("--no-grid", no_grid, "skip the grid oracle");
  ver_cmd->add_flag("--inject-fault", inject_fault, "negative control: corrupt the objective");
  ver_cmd->add_option("--report", report_path, "also write the report to this path");
  ver_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  const bool json = format == "json";

  try {
    if (*exp_cmd) {
      const auto o = exponent_query(exp_opts.spec());
      out << (json ? o.json.dump(2) + "\n" : o.text);
      return o.code;
    }
    if (*reg_cmd) {
      const ProblemSpec spec = reg_opts.spec();
      const RegimeReport rep = classify_regime(spec);
      const int code = regime_code(rep);
      if (json) {
        ordered_json j{{"command", "regime"}, {"input", spec_json(spec)}, {"regime", regime_json(rep)},
                       {"exit_code", code}};
        out << j.dump(2) << "\n";
      } else {
        out << "spec: " << spec.describe() << "\n";
        print_regime(out, rep);
      }
      return code;
    }
    if (*fin_cmd) {
      IntersectionSpec spec;
      spec.N = N;
      spec.n = n;
      spec.q = Rational::parse(fq);
      spec.balls = parse_balls(join_list(balls));
      if (spec.q < Rational(1)) throw DomainError("q must be at least 1");

      ordered_json j;
      j["command"] = "finite";
      ordered_json in{{"N", N}, {"n", n}, {"q", num(spec.q)}};
      ordered_json bj = ordered_json::array();
      for (const auto& b : spec.balls) bj.push_back({{"p", b.p.str()}, {"nu", num(b.nu)}});
      in["balls"] = bj;
      j["input"] = in;
      std::ostringstream txt;
      txt << "N=" << N << " n=" << n << " q=" << spec.q.str() << "\n";

      std::optional<WidthOrder> order;
      if (spec.balls.size() == 1) {
        // one ball: the single-ball theorems, exact when q <= p
        WidthOrder w = single_ball_order(spec.balls[0].p, LebesgueExponent::finite(spec.q), n, N);
        w.value = spec.balls[0].nu * w.value;
        for (auto& t : w.terms) t.value = spec.balls[0].nu * t.value;
        order = std::move(w);
      } else {
        order = intersection_order(spec);
      }
      j["value"] = num(order->value);
      j["branch"] = order->branch;
      j["exact"] = order->exact;
      ordered_json terms = ordered_json::array();
      for (const auto& t : order->terms) terms.push_back({{"label", t.label}, {"value", num(t.value)}});
      j["terms"] = terms;
      txt << "value: " << show(order->value) << (order->exact ? " exact" : " (order)") << "\n";
      txt << "branch: " << order->branch << "\n";
      for (const auto& t : order->terms) txt << "  " << t.label << " = " << show(t.value) << "\n";

      ordered_json cls = nullptr;
      std::vector<std::string> warnings;
      try {
        const BranchClassification bc = classify_branch(spec);
        cls = {{"label", bc.label()}, {"matching_cases", bc.matching_cases}};
        cls["certificate"] = bc.certificate ? certificate_json(*bc.certificate) : ordered_json(nullptr);
        txt << "classification: " << bc.label();
        if (bc.matching_cases.size() > 1) {
          txt << " (cases";
          for (int c : bc.matching_cases) txt << " " << c;
          txt << " match)";
        }
        txt << "\n";
        if (bc.certificate) {
          const auto& c = *bc.certificate;
          txt << "certificate: " << certificate_kind_name(c.kind) << " k=" << c.k << " factor=" << c.factor.str()
              << " " << (c.verified() ? "verified" : "NOT VERIFIED") << "\n";
          txt << "  lower bound: " << show(c.lower_bound) << "\n";
          txt << "  symbolic bound: " << show(c.symbolic_bound) << "\n";
        }
      } catch (const std::exception& e) {
        warnings.push_back(std::string("not classified: ") + e.what());
      }
      j["classification"] = cls;
      j["warnings"] = warnings;
      for (const auto& w : warnings) txt << "warning: " << w << "\n";
      out << (json ? j.dump(2) + "\n" : txt.str());
      return kExitOk;
    }
    if (*sweep_cmd) {
      SweepPlan plan{vary, Rational::parse(from), Rational::parse(to), steps, sweep_opts.spec()};
      const std::string csv = run_sweep_csv(plan);
      if (out_path.empty()) {
        out << csv;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw DomainError("cannot write " + out_path);
        f << csv;
      }
      return kExitOk;
    }
    if (*ver_cmd) {
      CrossValidationOptions opts;
      opts.grid = !no_grid;
      opts.grid_per_dim = grid_per_dim;
      opts.inject_fault = inject_fault;
      const VerifyReport rep = run_verification(samples, seed, opts);
      const std::string body = json ? rep.json() : rep.text();
      out << body;
      if (!report_path.empty()) {
        std::ofstream f(report_path, std::ios::binary);
        if (!f) throw DomainError("cannot write " + report_path);
        f << body;
      }
      return rep.ok() ? kExitOk : kExitVerificationFailure;
    }
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitUsage;
}

}  // namespace widthcalc::cli
