#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mzl/bounds.hpp"
#include "mzl/domains.hpp"
#include "mzl/error.hpp"
#include "mzl/hypergeometric.hpp"
#include "mzl/pfaffian.hpp"
#include "mzl/qseries.hpp"
#include "mzl/verify.hpp"
#include "mzl/weierstrass.hpp"

namespace mzl::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const std::string t = trim(text);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw UsageError("invalid value for " + key + ": '" + text + "'");
  return v;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> m{
      {"series_tol", [](RunConfig& c, const std::string& v) { c.series_tol = parse_number<double>("series_tol", v); }},
      {"residual_tol",
       [](RunConfig& c, const std::string& v) { c.residual_tol = parse_number<double>("residual_tol", v); }},
      {"winding_tol", [](RunConfig& c, const std::string& v) { c.winding_tol = parse_number<double>("winding_tol", v); }},
      {"zero_rel_tol",
       [](RunConfig& c, const std::string& v) { c.zero_rel_tol = parse_number<double>("zero_rel_tol", v); }},
      {"target_radius",
       [](RunConfig& c, const std::string& v) { c.target_radius = parse_number<double>("target_radius", v); }},
      {"trials", [](RunConfig& c, const std::string& v) { c.trials = parse_number<int>("trials", v); }},
      {"seed", [](RunConfig& c, const std::string& v) { c.seed = parse_number<std::uint64_t>("seed", v); }},
      {"j_max_degree",
       [](RunConfig& c, const std::string& v) { c.j_max_degree = parse_number<int>("j_max_degree", v); }},
      {"wp_max_degree",
       [](RunConfig& c, const std::string& v) { c.wp_max_degree = parse_number<int>("wp_max_degree", v); }},
  };
  return m;
}

std::string shortest(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

// "re", "re,im" or "re im".
cplx parse_point(const std::string& token) {
  std::string t = token;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::string re, im;
  in >> re >> im;
  std::string extra;
  if (re.empty() || (in >> extra)) throw UsageError("invalid point: '" + token + "'");
  return {parse_number<double>("point", re), im.empty() ? 0.0 : parse_number<double>("point", im)};
}

std::vector<std::string> read_point_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

BivariatePolynomial read_poly(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open polynomial file: " + path);
  try {
    return nlohmann::json::parse(in).get<BivariatePolynomial>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("invalid polynomial file " + path + ": " + e.what());
  } catch (const Error& e) {
    throw UsageError("invalid polynomial file " + path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

WindingOptions winding_options(const RunConfig& cfg) {
  WindingOptions w;
  w.integer_tol = cfg.winding_tol;
  w.zero_rel_tol = cfg.zero_rel_tol;
  return w;
}

struct Row {
  std::string input;
  cplx value;
  double error_bound;
};

}  // namespace

void load_config(std::istream& in, RunConfig& cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const auto it = setters().find(key);
    if (it == setters().end()) throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    it->second(cfg, line.substr(eq + 1));
  }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  load_config(in, cfg);
}

void apply_env(RunConfig& cfg, const EnvLookup& env) {
  for (const auto& [key, set] : setters()) {
    std::string name = "MZL_" + key;
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (const char* v = env(name.c_str())) set(cfg, v);
  }
}

void validate(const RunConfig& cfg) {
  if (!(cfg.series_tol > 0 && cfg.residual_tol > 0 && cfg.winding_tol > 0 && cfg.zero_rel_tol > 0 &&
        cfg.target_radius > 0))
    throw UsageError("tolerances must be positive");
  if (cfg.winding_tol >= 0.5) throw UsageError("winding_tol must be below 0.5");
  if (cfg.trials < 0) throw UsageError("trials must be non-negative");
  if (cfg.j_max_degree < 1 || cfg.wp_max_degree < 1) throw UsageError("max degrees must be at least 1");
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  CLI::App app{"Zero counts of P(z, j(z)) and P(z, wp(z)) with bound checks", "mzl"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  std::string config_path;
  app.add_flag("--json", json, "Machine-readable JSON output");
  app.add_option("--config", config_path, "key = value file with tolerances and trial settings");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a special function (CSV: input,re,im,error_bound)");
  std::string eval_fn;
  std::vector<std::string> eval_x;
  std::string eval_points;
  double eval_tau = 1.0, hyp_a = 1.0 / 6.0, hyp_b = 5.0 / 6.0, hyp_c = 1.0;
  eval->add_option("function", eval_fn)->required()->check(CLI::IsMember({"j", "jinv", "wp", "wpprime", "2f1"}));
  eval->add_option("--x", eval_x, "Point: re or re,im (repeatable)");
  eval->add_option("--points", eval_points, "File with one point per line, '-' for stdin");
  eval->add_option("--tau", eval_tau, "Lattice <1, i tau> for wp");
  eval->add_option("--a", hyp_a);
  eval->add_option("--b", hyp_b);
  eval->add_option("--c", hyp_c);

  // count-zeros
  auto* count = app.add_subcommand("count-zeros", "Count zeros in the fundamental domain");
  std::string count_domain, poly_path, report_path;
  double tau = 1.0;
  std::optional<double> Y, delta;
  count->add_option("domain", count_domain)->required()->check(CLI::IsMember({"j", "wp"}));
  count->add_option("--poly", poly_path, "Polynomial JSON {deg_x, deg_y, coeffs}")->required();
  count->add_option("--tau", tau);
  auto* y_opt = count->add_option("--Y", Y, "Initial truncation height (j)");
  count->add_option("--delta", delta, "Notch radius (wp)")->excludes(y_opt);
  count->add_option("--report", report_path, "Write the JSON report here");

  // bound
  auto* bound = app.add_subcommand("bound", "Bound formulas as exact integers");
  std::string bound_kind;
  std::optional<int> bd, br, balpha, bbeta;
  bound->add_option("kind", bound_kind)->required()->check(CLI::IsMember({"t1", "t2", "prop", "bezout", "khov"}));
  bound->add_option("--d", bd);
  bound->add_option("--r", br);
  bound->add_option("--alpha", balpha);
  bound->add_option("--beta", bbeta);

  // verify
  auto* verify = app.add_subcommand("verify", "Randomized count-versus-bound suite");
  std::string verify_what;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::string verify_report;
  verify->add_option("suite", verify_what)->required()->check(CLI::IsMember({"all"}));
  verify->add_option("--trials", trials, "Trials per domain");
  verify->add_option("--seed", seed);
  verify->add_option("--report", verify_report);

  // verify-chain
  auto* vchain = app.add_subcommand("verify-chain", "Residual of a Pfaffian chain against its members");
  std::string chain_name = "hyp";
  int chain_samples = 200;
  double ca = 0.3, cb = 0.7, cc = 1.4;
  vchain->add_option("--chain", chain_name)->check(CLI::IsMember({"hyp", "ratio"}));
  vchain->add_option("--samples", chain_samples)->check(CLI::Range(1, 1000000));
  vchain->add_option("--a", ca);
  vchain->add_option("--b", cb);
  vchain->add_option("--c", cc);

  // trace
  auto* trace = app.add_subcommand("trace", "CSV of the phase trace of P(z, f(z)) along the contour");
  std::string trace_domain, trace_poly, trace_out;
  double trace_tau = 1.0;
  std::optional<double> trace_Y, trace_delta;
  trace->add_option("domain", trace_domain)->required()->check(CLI::IsMember({"j", "wp"}));
  trace->add_option("--poly", trace_poly)->required();
  trace->add_option("--tau", trace_tau);
  trace->add_option("--Y", trace_Y);
  trace->add_option("--delta", trace_delta);
  trace->add_option("--out", trace_out);

  auto* selftest = app.add_subcommand("selftest", "Identity and invariant suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) load_config_file(config_path, cfg);
    apply_env(cfg, env);
    if (trials) cfg.trials = *trials;
    if (seed) cfg.seed = *seed;
    validate(cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (eval->parsed()) {
      std::vector<std::string> tokens = eval_x;
      if (!eval_points.empty()) {
        std::vector<std::string> lines;
        if (eval_points == "-") {
          lines = read_point_lines(std::cin);
        } else {
          std::ifstream in(eval_points);
          if (!in) throw UsageError("cannot open points file: " + eval_points);
          lines = read_point_lines(in);
        }
        tokens.insert(tokens.end(), lines.begin(), lines.end());
      }
      if (tokens.empty()) throw UsageError("eval: give --x or --points");
      std::vector<Row> rows;
      std::optional<LatticeParams> lattice;
      if (eval_fn == "wp" || eval_fn == "wpprime") lattice = wp_invariants(eval_tau);
      for (const auto& tok : tokens) {
        const cplx z = parse_point(tok);
        if (eval_fn == "j") {
          const auto v = klein_j_value(z, {.series_tol = std::min(cfg.series_tol, 1e-16)});
          rows.push_back({tok, v.value, v.error_bound});
        } else if (eval_fn == "jinv") {
          if (z.imag() != 0.0) throw UsageError("jinv takes a real argument");
          const auto v = j_inverse_value(z.real(), {.rel_tol = cfg.series_tol});
          rows.push_back({tok, v.value, v.error_bound});
        } else if (eval_fn == "wp" || eval_fn == "wpprime") {
          const auto v = wp_evaluate(z, *lattice);
          const double eb = 64.0 * std::numeric_limits<double>::epsilon() * v.scale;
          rows.push_back({tok, eval_fn == "wp" ? v.value : v.derivative, eb});
        } else {
          const auto v = hyp2f1_series(hyp_a, hyp_b, hyp_c, z, {1e-3, cfg.series_tol});
          rows.push_back({tok, v.value, v.tail_bound});
        }
      }
      if (json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows)
          arr.push_back({{"input", r.input},
                         {"re", shortest(r.value.real())},
                         {"im", shortest(r.value.imag())},
                         {"error_bound", shortest(r.error_bound)}});
        out << nlohmann::json{{"schema", "mzl/1"}, {"function", eval_fn}, {"values", arr}}.dump(2) << "\n";
      } else {
        out << "input,re,im,error_bound\n";
        for (const auto& r : rows)
          out << csv_field(r.input) << "," << shortest(r.value.real()) << "," << shortest(r.value.imag()) << ","
              << shortest(r.error_bound) << "\n";
      }
      return 0;
    }

    if (count->parsed()) {
      const BivariatePolynomial p = read_poly(poly_path);
      ZeroCountReport rep;
      if (count_domain == "j") {
        if (delta) throw UsageError("--delta applies to wp");
        JCountOptions o;
        o.winding = winding_options(cfg);
        o.localize_opts.target_radius = cfg.target_radius;
        JDomainSpec s;
        if (Y) s.Y = *Y;
        rep = count_zeros_j(p, s, o);
      } else {
        if (Y) throw UsageError("--Y applies to j");
        WpCountOptions o;
        o.winding = winding_options(cfg);
        o.localize_opts.target_radius = cfg.target_radius;
        WpDomainSpec s;
        s.tau = tau;
        if (delta) s.delta = *delta;
        rep = count_zeros_wp(p, s, o);
      }
      const nlohmann::json j = rep;
      if (!report_path.empty()) write_file(report_path, j.dump(2) + "\n");
      if (json) {
        out << j.dump(2) << "\n";
      } else {
        out << "domain          " << rep.domain << "\n"
            << "count           " << rep.count << "\n"
            << "bound           " << to_string(rep.bound) << "\n";
        if (rep.domain == "wp") out << "proof bound     " << to_string(rep.proof_bound) << "\n";
        out << "within bound    " << (rep.within_bound ? "yes" : "no") << "\n"
            << "localized       " << rep.localized_multiplicity << (rep.cross_validated ? " (matches)" : " (MISMATCH)")
            << "\n";
        for (const auto& z : rep.zeros)
          out << "  zero " << shortest(z.center.real()) << " " << shortest(z.center.imag()) << "  m=" << z.multiplicity
              << (z.resolved ? "" : "  cluster") << "\n";
        for (const auto& n : rep.notes) out << "note: " << n << "\n";
      }
      return rep.within_bound && rep.cross_validated ? 0 : 1;
    }

    if (bound->parsed()) {
      BigInt value, proof;
      if (bound_kind == "khov") {
        if (!br || !balpha || !bbeta) throw UsageError("khov needs --r, --alpha and --beta");
        value = khovanskii_zero_bound(*br, *balpha, *bbeta);
      } else {
        if (!bd) throw UsageError(bound_kind + " needs --d");
        if (*bd < 1) throw UsageError("--d must be at least 1");
        if (bound_kind == "t1") value = theorem1_bound(*bd);
        if (bound_kind == "t2") value = theorem2_bound(*bd), proof = theorem2_proof_bound(*bd);
        if (bound_kind == "prop") value = proposition_bound(*bd);
        if (bound_kind == "bezout") value = bezout_step_bound(*bd);
      }
      if (json) {
        nlohmann::json j{{"schema", "mzl/1"}, {"kind", bound_kind}, {"value", to_string(value)}};
        if (bd) j["d"] = *bd;
        if (bound_kind == "t2") j["proof_value"] = to_string(proof);
        out << j.dump(2) << "\n";
      } else {
        out << to_string(value) << "\n";
      }
      return 0;
    }

    if (verify->parsed()) {
      VerifySuite s;
      s.j_trials = s.wp_trials = cfg.trials;
      s.seed = cfg.seed;
      s.j_max_degree = cfg.j_max_degree;
      s.wp_max_degree = cfg.wp_max_degree;
      const nlohmann::json rep = verify_bounds_report(s);
      const std::string text = rep.dump(2) + "\n";
      if (!verify_report.empty()) write_file(verify_report, text);
      const bool ok = rep["all_pass"].get<bool>();
      if (json) {
        out << text;
      } else {
        out << "trials     " << rep["trials"].size() << "\n"
            << "failures   " << rep["failures"].size() << "\n"
            << "ledger     " << (rep["ledger"]["imaginary_axis"].get<bool>() && rep["ledger"]["contour"].get<bool>()
                                     ? "holds"
                                     : "FAILS")
            << " for d = 1.." << rep["ledger"]["max_d"].get<int>() << "\n"
            << (ok ? "all pass" : "FAILED") << "\n";
      }
      return ok ? 0 : 1;
    }

    if (vchain->parsed()) {
      const PfaffianChain chain = chain_name == "ratio" ? build_ratio_chain() : build_hypergeometric_chain(ca, cb, cc);
      const ChainResidual r = chain_residual(chain, chain_samples);
      const bool ok = r.max_residual < cfg.residual_tol;
      if (json) {
        out << nlohmann::json{{"schema", "mzl/1"},
                              {"chain", chain.name()},
                              {"order", chain.order()},
                              {"alpha", chain.alpha()},
                              {"max_residual", shortest(r.max_residual)},
                              {"worst_member", r.worst_member},
                              {"worst_x", shortest(r.worst_x)},
                              {"tolerance", shortest(cfg.residual_tol)},
                              {"pass", ok}}
                   .dump(2)
            << "\n";
      } else {
        out << chain.name() << " chain: order " << chain.order() << ", degree " << chain.alpha() << "\n"
            << "max residual " << shortest(r.max_residual) << " (member " << r.worst_member << " at x = "
            << shortest(r.worst_x) << ")\n"
            << (ok ? "pass" : "FAIL") << "\n";
      }
      return ok ? 0 : 1;
    }

    if (trace->parsed()) {
      const BivariatePolynomial p = read_poly(trace_poly);
      Contour contour;
      AnalyticFn inner;
      if (trace_domain == "j") {
        contour = build_j_contour({trace_Y.value_or(2.0)});
        inner = klein_j_function();
      } else {
        contour = build_wp_contour({trace_tau, 0.0, trace_delta.value_or(0.05)});
        inner = wp_function(wp_invariants(trace_tau));
      }
      std::vector<TraceSample> samples;
      const WindingResult w = winding_number(make_composite(p, inner), contour, winding_options(cfg), &samples);
      std::ostringstream csv;
      csv << "t,z_re,z_im,f_re,f_im,arg\n";
      for (const auto& s : samples)
        csv << shortest(s.t) << "," << shortest(s.z.real()) << "," << shortest(s.z.imag()) << ","
            << shortest(s.f.real()) << "," << shortest(s.f.imag()) << "," << shortest(s.arg_unwrapped) << "\n";
      if (!trace_out.empty()) {
        write_file(trace_out, csv.str());
        out << "winding " << w.winding << ", " << samples.size() << " samples written to " << trace_out << "\n";
      } else {
        out << csv.str();
      }
      return 0;
    }

    if (selftest->parsed()) {
      const nlohmann::json rep = run_selftest(cfg);
      out << rep.dump(2) << "\n";
      return rep["all_pass"].get<bool>() ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << nlohmann::json{{"schema", "mzl/1"}, {"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace mzl::cli
