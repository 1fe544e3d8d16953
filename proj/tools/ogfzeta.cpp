#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ogf/asym.hpp"
#include "ogf/format.hpp"
#include "ogf/mellin.hpp"
#include "ogf/series.hpp"
#include "ogf/special.hpp"
#include "svg.hpp"

using json = nlohmann::ordered_json;
using namespace ogf;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kThetaMinDeg = 5.0;  // sector guard: |arg t| <= 90 - 5 degrees

struct RunConfig {
  int precision_bits = 128;
  std::string tolerance = "1e-20";
  std::uint64_t memory_cap = 200'000'000;
  std::string output_dir;
  Rational alpha = Rational(2, 3);
  Rational beta = Rational(1, 3);
  Rational b = Rational(203, 10000);
  Rational w = Rational(16);
  bool unsafe_tall_contour = false;
  int threads = 0;
};

void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value,
                       int line_no) {
  auto bad = [&](const std::string& why) {
    throw DomainError("config line " + std::to_string(line_no) + ": " + why);
  };
  try {
    if (key == "precision_bits") cfg.precision_bits = std::stoi(value);
    else if (key == "tolerance") cfg.tolerance = value;
    else if (key == "memory_cap") cfg.memory_cap = std::stoull(value);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "alpha") cfg.alpha = rational_from_decimal(value);
    else if (key == "beta") cfg.beta = rational_from_decimal(value);
    else if (key == "b") cfg.b = rational_from_decimal(value);
    else if (key == "w") cfg.w = rational_from_decimal(value);
    else if (key == "unsafe_tall_contour") cfg.unsafe_tall_contour = value == "true" || value == "1";
    else if (key == "threads") cfg.threads = std::stoi(value);
    else bad("unknown key '" + key + "'");
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    bad("cannot parse value '" + value + "' for key '" + key + "'");
  }
}

RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t\r");
      auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string body = trim(line);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos)
      throw DomainError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    apply_config_line(cfg, trim(body.substr(0, eq)), trim(body.substr(eq + 1)), line_no);
  }
  return cfg;
}

json config_echo(const RunConfig& cfg) {
  json j;
  j["precision_bits"] = cfg.precision_bits;
  j["tolerance"] = cfg.tolerance;
  j["memory_cap"] = cfg.memory_cap;
  j["output_dir"] = cfg.output_dir;
  j["alpha"] = to_string(cfg.alpha);
  j["beta"] = to_string(cfg.beta);
  j["b"] = to_string(cfg.b);
  j["w"] = to_string(cfg.w);
  j["unsafe_tall_contour"] = cfg.unsafe_tall_contour;
  j["threads"] = cfg.threads;
  return j;
}

// Log-spaced inclusive grid "A:B:steps" evaluated in mpfr so output bytes
// do not depend on libm.
std::vector<Real> parse_log_grid(const std::string& text, mpfr_prec_t wp) {
  auto c1 = text.find(':');
  auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw DomainError("grid must look like A:B:steps, got '" + text + "'");
  Real a = Real::from_string(text.substr(0, c1), wp);
  Real b = Real::from_string(text.substr(c1 + 1, c2 - c1 - 1), wp);
  long n = 0;
  try {
    n = std::stol(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw DomainError("grid step count must be an integer");
  }
  if (n < 1) throw DomainError("grid needs at least one point");
  if (a.sign() <= 0 || b.sign() <= 0) throw DomainError("grid endpoints must be positive");
  std::vector<Real> grid;
  if (n == 1) {
    grid.push_back(a);
    return grid;
  }
  Real la = log(a), lb = log(b);
  for (long j = 0; j < n; ++j) grid.push_back(exp(la + (lb - la) * j / (n - 1)));
  return grid;
}

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  int prec = 0;          // overrides config when > 0
  std::string tol;       // overrides config when nonempty
  int threads = -1;      // overrides config when >= 0
  bool timings = false;
};

struct Env {
  RunConfig cfg;
  PrecisionContext pc;
  Real tol;
  SeriesOptions series_opts;
  bool timings = false;
  std::string out_path;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
        .count();
  }
};

Env make_env(const CommonArgs& c) {
  Env env;
  env.cfg = load_config(c.config_path);
  if (c.prec > 0) env.cfg.precision_bits = c.prec;
  if (!c.tol.empty()) env.cfg.tolerance = c.tol;
  if (c.threads >= 0) env.cfg.threads = c.threads;
  env.pc = make_precision(env.cfg.precision_bits);
  env.tol = Real::from_string(env.cfg.tolerance, env.pc.work());
  if (env.tol.sign() <= 0) throw DomainError("tolerance must be positive");
  env.series_opts.memory_cap = env.cfg.memory_cap;
  env.series_opts.threads = env.cfg.threads;
  env.timings = c.timings;
  env.out_path = c.out_path;
  if (!env.out_path.empty() && !env.cfg.output_dir.empty() && env.out_path.front() != '/')
    env.out_path = env.cfg.output_dir + "/" + env.out_path;
  return env;
}

void write_output(const Env& env, const std::string& bytes) {
  if (env.out_path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(env.out_path, std::ios::binary);
  if (!out) throw DomainError("cannot open output file '" + env.out_path + "'");
  out << bytes;
}

json report_bundle(const Env& env, const std::string& command) {
  json j;
  j["command"] = command;
  j["artifact_version"] = kVersion;
  j["config"] = config_echo(env.cfg);
  return j;
}

void finish_json(Env& env, json& j) {
  if (env.timings) j["timings"] = {{"wall_ms", env.elapsed_ms()}};
  write_output(env, j.dump(2) + "\n");
}

std::string fmt(const Env& env, const Real& x) { return format_real(x, env.pc.bits); }

ComplexHP make_t(const Env& env, const std::string& t_abs, const std::string& arg_deg) {
  mpfr_prec_t wp = env.pc.work() + 8;
  Real r = Real::from_string(t_abs, wp);
  if (r.sign() <= 0) throw DomainError("--t-abs must be positive");
  Rational deg = rational_from_decimal(arg_deg);
  double deg_d = mpq_get_d(deg.get_mpq_t());
  if (std::abs(deg_d) > 90.0 - kThetaMinDeg)
    throw DomainError("--t-arg-deg must satisfy |arg t| <= 85 degrees (sector guard)");
  if (deg == 0) return ComplexHP::of_real(r);
  Real ang = to_real(deg, wp) * const_pi(wp) / 180;
  Real si(wp), co(wp);
  sin_cos(si, co, ang);
  return ComplexHP(r * co, r * si);
}

EvalPoint make_point(const Env& env, const std::string& t_abs, const std::string& arg_deg) {
  ComplexHP t = make_t(env, t_abs, arg_deg);
  double theta = (90.0 - std::abs(mpq_get_d(rational_from_decimal(arg_deg).get_mpq_t()))) *
                 std::acos(-1.0) / 180.0;
  return EvalPoint(t, theta);
}

json series_value_json(const Env& env, ArithFn fn, const ComplexHP& t, const SeriesValue& v) {
  json j;
  j["fn"] = to_string(fn);
  j["t_re"] = fmt(env, t.re);
  j["t_im"] = fmt(env, t.im);
  j["value_re"] = fmt(env, v.value.re);
  j["value_im"] = fmt(env, v.value.im);
  j["tail_bound"] = fmt(env, v.tail_bound);
  j["terms_used"] = v.terms_used;
  j["precision_bits"] = env.pc.bits;
  return j;
}

// ---------------------------------------------------------------- commands

int cmd_sieve(Env& env, const std::string& fn_name, std::int64_t limit, bool prefix) {
  if (limit < 1) throw DomainError("--limit must be >= 1");
  ArithFn fn = arith_fn_from_string(fn_name);
  SieveOptions so;
  so.memory_cap = env.cfg.memory_cap;
  so.prefix_sums = prefix;
  SieveTable t = sieve(fn, static_cast<std::uint64_t>(limit), so);
  std::ostringstream csv;
  export_csv(t, csv, env.pc);
  write_output(env, csv.str());
  return 0;
}

int cmd_eval(Env& env, const std::string& fn_name, const std::string& t_abs,
             const std::string& arg_deg) {
  ArithFn fn = arith_fn_from_string(fn_name);
  EvalPoint point = make_point(env, t_abs, arg_deg);
  SeriesValue v = eval_exp_series(fn, point, env.pc, env.tol, env.series_opts);
  json j = report_bundle(env, "eval");
  j["result"] = series_value_json(env, fn, point.t, v);
  j["result"]["wall_notes"] = v.wall_notes;
  j["error_budgets"] = {{"tail_bound", fmt(env, v.tail_bound)},
                        {"target_abs_err", env.cfg.tolerance}};
  finish_json(env, j);
  return 0;
}

int cmd_mellin(Env& env, const std::string& fn_name, const std::string& t_abs,
               const std::string& arg_deg, const std::string& contour, const std::string& kappa_s,
               const std::string& t_height, const std::string& nu_s, bool unsafe_tall) {
  ArithFn fn = arith_fn_from_string(fn_name);
  EvalPoint point = make_point(env, t_abs, arg_deg);
  mpfr_prec_t wp = env.pc.work() + 8;
  Real kappa = kappa_s == "auto" ? default_kappa(cabs(point.t), env.pc)
                                 : Real::from_string(kappa_s, wp);
  if (kappa.to_double() <= 1.0) throw DomainError("--kappa must exceed 1");

  json j = report_bundle(env, "mellin");
  j["fn"] = fn_name;
  j["t"] = {{"abs", t_abs}, {"arg_deg", arg_deg}, {"re", fmt(env, point.t.re)},
            {"im", fmt(env, point.t.im)}};
  j["contour"] = contour;
  j["kappa"] = fmt(env, kappa);

  if (contour == "line") {
    SeriesValue v = inverse_mellin_line(fn, point, kappa, env.pc, env.tol);
    j["T"] = nullptr;
    j["value"] = {{"re", fmt(env, v.value.re)}, {"im", fmt(env, v.value.im)}};
    j["quad_error_budget"] = fmt(env, v.tail_bound);
    j["notes"] = v.wall_notes;
  } else if (contour == "deformed") {
    ContourSpec spec(kappa.rounded(wp), Real::from_string(t_height, wp));
    spec.region.alpha = env.cfg.alpha;
    spec.region.beta = env.cfg.beta;
    spec.region.b = env.cfg.b;
    spec.region.w = env.cfg.w;
    spec.nu = std::stod(nu_s);
    spec.unsafe_tall = unsafe_tall || env.cfg.unsafe_tall_contour;
    DeformedResult r = inverse_mellin_deformed(fn, point, spec, env.pc, env.tol);
    j["T"] = t_height;
    j["value"] = {{"re", fmt(env, r.total.value.re)}, {"im", fmt(env, r.total.value.im)}};
    j["segments"] = {
        {"vert", {{"re", fmt(env, r.seg_vert.re)}, {"im", fmt(env, r.seg_vert.im)}}},
        {"hor", {{"re", fmt(env, r.seg_hor.re)}, {"im", fmt(env, r.seg_hor.im)}}},
        {"arc", {{"re", fmt(env, r.seg_arc.re)}, {"im", fmt(env, r.seg_arc.im)}}}};
    j["majorants"] = {
        {"vert", fmt(env, bound_segment(Segment::Vert, fn, point, spec, env.pc))},
        {"hor", fmt(env, bound_segment(Segment::Hor, fn, point, spec, env.pc))},
        {"arc", fmt(env, bound_segment(Segment::Arc, fn, point, spec, env.pc))}};
    j["quad_error_budget"] = fmt(env, r.total.tail_bound);
    j["notes"] = r.total.wall_notes;
  } else {
    throw DomainError("--contour must be 'line' or 'deformed'");
  }
  finish_json(env, j);
  return 0;
}

int cmd_compare(Env& env, const std::string& fn_name, const std::string& grid_s,
                const std::string& main_term, const std::string& svg_path) {
  ArithFn fn = arith_fn_from_string(fn_name);
  mpfr_prec_t wp = env.pc.work() + 8;
  std::vector<Real> grid = parse_log_grid(grid_s, wp);
  MainTermSource source =
      main_term == "residue" ? MainTermSource::ResidueDerived : MainTermSource::PaperLiteral;
  if (main_term != "residue" && main_term != "paper")
    throw DomainError("--main-term must be 'paper' or 'residue'");

  // Shared sieve across the grid, sized for the smallest t.
  SeriesOptions opts = env.series_opts;
  double min_t = HUGE_VAL;
  for (const auto& t : grid) min_t = std::min(min_t, t.to_double());
  std::uint64_t n_req = series_truncation_length(fn, min_t, env.tol.to_double_down() / 2);
  if (n_req > opts.memory_cap) throw MemoryCapError(n_req, opts.memory_cap);
  {
    SieveOptions so;
    so.memory_cap = opts.memory_cap;
    // small margin: each grid point re-derives t = -log(e^{-t}) whose last
    // bits can land on either side of the solver's cutoff
    opts.table = std::make_shared<SieveTable>(
        sieve(fn, std::min<std::uint64_t>(n_req + 64, opts.memory_cap), so));
  }

  EnvelopeParams ep;
  ep.alpha = env.cfg.alpha;
  ep.beta = env.cfg.beta;
  ep.b = env.cfg.b;

  std::ostringstream csv;
  csv << "t,direct_re,direct_im,main_re,main_im,residual_abs,envelope_E,"
         "ratio_residual_over_envelope\n";
  ogfcli::PlotSeries ps_resid{"residual_abs", {}, {}};
  ogfcli::PlotSeries ps_env{"envelope_E", {}, {}};
  for (const auto& t : grid) {
    ComplexHP z = cexp(ComplexHP::of_real(-t.rounded(wp)));
    SeriesValue direct = eval_power_series(fn, z, env.pc, env.tol, opts);
    ComplexHP main = corollary_main_term(fn, z, source, env.pc);
    Real resid = cabs(direct.value - main);
    std::string env_e = "nan", ratio = "nan";
    double env_d = std::nan("");
    try {
      Real e = error_envelope_E(t, ep, env.pc);
      env_e = fmt(env, e);
      ratio = fmt(env, resid / e);
      env_d = e.to_double();
    } catch (const DomainError&) {
      // t outside the triple-log domain; reported as nan
    }
    csv << fmt(env, t.rounded(env.pc.bits)) << ',' << fmt(env, direct.value.re) << ','
        << fmt(env, direct.value.im) << ',' << fmt(env, main.re) << ',' << fmt(env, main.im)
        << ',' << fmt(env, resid) << ',' << env_e << ',' << ratio << '\n';
    ps_resid.x.push_back(t.to_double());
    ps_resid.y.push_back(resid.to_double());
    ps_env.x.push_back(t.to_double());
    ps_env.y.push_back(env_d);
  }
  write_output(env, csv.str());
  if (!svg_path.empty()) {
    std::string path = svg_path;
    if (!env.cfg.output_dir.empty() && path.front() != '/')
      path = env.cfg.output_dir + "/" + path;
    std::ofstream svg(path, std::ios::binary);
    if (!svg) throw DomainError("cannot open SVG output '" + path + "'");
    svg << ogfcli::svg_loglog({ps_resid, ps_env}, "t", "magnitude");
  }
  return 0;
}

int cmd_bounds(Env& env, const std::string& t_abs, const std::string& alpha_s,
               const std::string& beta_s, const std::string& b_s, const std::string& nu_s,
               const std::string& c_s) {
  mpfr_prec_t wp = env.pc.work() + 8;
  Real t = Real::from_string(t_abs, wp);
  if (t.sign() <= 0) throw DomainError("--t-abs must be positive");

  Rational alpha = alpha_s.empty() ? env.cfg.alpha : rational_from_decimal(alpha_s);
  Rational beta = beta_s.empty() ? env.cfg.beta : rational_from_decimal(beta_s);
  Rational b;
  std::string b_echo;
  if (b_s == "ford") {
    // 0.05507 x 4.45^{-2/3}, frozen to 45 decimal digits
    Real v = Real::from_string("0.05507", 256) /
             pow(Real::from_string("4.45", 256), Real::of_si(2, 256) / 3);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.45Rf", v.raw());
    b = rational_from_decimal(buf);
    mpfr_free_str(buf);
    b_echo = to_string(b);
  } else if (!b_s.empty()) {
    b = rational_from_decimal(b_s);
  } else {
    b = env.cfg.b;
  }

  EnvelopeParams ep;
  ep.alpha = alpha;
  ep.beta = beta;
  ep.b = b;
  Real c = Real::from_string(c_s, wp);

  Real T = choose_T(t, to_real(alpha, wp), env.pc);
  bool clamped = T.to_double() > 14.0;
  Real T_used = clamped ? Real::of_si(14, wp) : T.rounded(wp);

  Real kappa = default_kappa(t, env.pc);
  ContourSpec spec(kappa.rounded(wp), T_used);
  spec.region.alpha = alpha;
  spec.region.beta = beta;
  spec.region.b = b;
  spec.region.w = env.cfg.w;
  spec.nu = std::stod(nu_s);
  EvalPoint point(ComplexHP::of_real(t), std::acos(-1.0) / 4);

  json j = report_bundle(env, "bounds");
  j["t_abs"] = t_abs;
  j["alpha"] = to_string(alpha);
  j["beta"] = to_string(beta);
  j["b"] = to_string(b);
  if (!b_echo.empty()) j["b_decimal"] = format_real(to_real(b, 256), 64);
  j["nu"] = nu_s;
  j["c"] = c_s;
  j["choose_T"] = fmt(env, T);
  j["T_used"] = fmt(env, T_used);
  j["T_clamped"] = clamped;
  j["kappa"] = fmt(env, kappa);
  j["majorants"] = {
      {"vert", fmt(env, bound_segment(Segment::Vert, ArithFn::Mobius, point, spec, env.pc))},
      {"hor", fmt(env, bound_segment(Segment::Hor, ArithFn::Mobius, point, spec, env.pc))},
      {"arc", fmt(env, bound_segment(Segment::Arc, ArithFn::Mobius, point, spec, env.pc))}};
  j["error_envelope_E"] = fmt(env, error_envelope_E(t, ep, env.pc));
  j["abelian_mu_envelope"] = fmt(env, abelian_mu_envelope(t, c, env.pc));
  j["walfisz_envelope_at_inv_t"] = fmt(env, walfisz_envelope(1 / t, c, env.pc));
  finish_json(env, j);
  return 0;
}

int cmd_probe(Env& env, const std::string& kind, const std::string& grid_s,
              const std::string& eta_s, std::int64_t limit) {
  mpfr_prec_t wp = env.pc.work() + 8;
  std::vector<Real> grid = parse_log_grid(grid_s, wp);
  std::ostringstream csv;
  if (kind == "fake-asym") {
    auto rows = fake_asymptotics_probe(grid, env.pc, env.series_opts);
    csv << "t,F,F_plus_2,(F+2)*sqrt(t)\n";
    for (const auto& r : rows)
      csv << fmt(env, r.t) << ',' << fmt(env, r.F) << ',' << fmt(env, r.F_plus_2) << ','
          << fmt(env, r.scaled) << '\n';
  } else if (kind == "rh-window") {
    if (eta_s.empty()) throw DomainError("probe rh-window requires --eta");
    if (limit < 10) throw DomainError("--limit must be >= 10");
    // grid entries are z values in (0,1)
    auto res = rh_window_probe(Real::from_string(eta_s, wp), grid, env.pc,
                               static_cast<std::uint64_t>(limit), env.series_opts);
    csv << "side,x,ratio\n";
    for (const auto& r : res.series_side)
      csv << "series," << fmt(env, r.x) << ',' << fmt(env, r.ratio) << '\n';
    for (const auto& r : res.mertens_side)
      csv << "mertens," << fmt(env, r.x) << ',' << fmt(env, r.ratio) << '\n';
  } else if (kind == "delange") {
    auto rows = delange_probe(grid, env.pc, env.series_opts);
    csv << "z,F,F*sqrt(1-z)\n";
    for (const auto& r : rows)
      csv << fmt(env, r.z) << ',' << fmt(env, r.F) << ',' << fmt(env, r.scaled) << '\n';
  } else if (kind == "prime-abelian") {
    auto rows = prime_abelian_probe(grid, env.pc, env.series_opts);
    csv << "z,series,abelian,ratio\n";
    for (const auto& r : rows)
      csv << fmt(env, r.z) << ',' << fmt(env, r.series) << ',' << fmt(env, r.abelian) << ','
          << fmt(env, r.ratio) << '\n';
  } else {
    throw DomainError("unknown probe kind '" + kind + "'");
  }
  write_output(env, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-precision evaluation of arithmetic-function generating functions near z=1"};
  app.require_subcommand(1);

  CommonArgs common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "config file (key = value lines)");
    sub->add_option("--out", common.out_path, "output file (default: stdout)");
    sub->add_option("--prec", common.prec, "working precision in bits (>= 53)");
    sub->add_option("--tol", common.tol, "target absolute error");
    sub->add_option("--threads", common.threads, "worker threads (0 = auto)");
    sub->add_flag("--timings", common.timings, "embed wall-clock timings in JSON output");
  };

  // sieve
  std::string fn_name, t_abs, arg_deg = "0";
  std::int64_t limit = 0;
  bool prefix = false;
  auto* sieve_cmd = app.add_subcommand("sieve", "exact arithmetic-function table as CSV");
  sieve_cmd->add_option("--fn", fn_name, "function name")->required();
  sieve_cmd->add_option("--limit", limit, "table length N")->required();
  sieve_cmd->add_flag("--prefix-sums", prefix, "include prefix sums column");
  add_common(sieve_cmd);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "direct series evaluation F(t) as JSON");
  eval_cmd->add_option("--fn", fn_name, "function name")->required();
  eval_cmd->add_option("--t-abs", t_abs, "|t| > 0")->required();
  eval_cmd->add_option("--t-arg-deg", arg_deg, "arg t in degrees (|.| <= 85)");
  add_common(eval_cmd);

  // mellin
  std::string contour = "line", kappa_s = "auto", t_height = "10", nu_s = "2";
  bool unsafe_tall = false;
  auto* mellin_cmd = app.add_subcommand("mellin", "inverse-Mellin contour evaluation as JSON");
  mellin_cmd->add_option("--fn", fn_name, "function name")->required();
  mellin_cmd->add_option("--t-abs", t_abs, "|t| > 0")->required();
  mellin_cmd->add_option("--t-arg-deg", arg_deg, "arg t in degrees");
  mellin_cmd->add_option("--contour", contour, "line | deformed");
  mellin_cmd->add_option("--kappa", kappa_s, "vertical line abscissa > 1, or 'auto'");
  mellin_cmd->add_option("--T", t_height, "contour corner height (deformed)");
  mellin_cmd->add_option("--nu", nu_s, "growth exponent for majorants");
  mellin_cmd->add_flag("--unsafe-tall-contour", unsafe_tall, "allow T > 14");
  add_common(mellin_cmd);

  // compare
  std::string grid_s, main_term = "paper", svg_path;
  auto* compare_cmd =
      app.add_subcommand("compare", "direct sum vs main term vs envelope as CSV (+SVG)");
  compare_cmd->add_option("--fn", fn_name, "function name")->required();
  compare_cmd->add_option("--t-grid", grid_s, "log grid A:B:steps")->required();
  compare_cmd->add_option("--main-term", main_term, "paper | residue");
  compare_cmd->add_option("--svg", svg_path, "write a log-log SVG chart here");
  add_common(compare_cmd);

  // bounds
  std::string alpha_s, beta_s, b_s, c_s = "1";
  auto* bounds_cmd = app.add_subcommand("bounds", "segment majorants and envelopes as JSON");
  bounds_cmd->add_option("--t-abs", t_abs, "|t| > 0")->required();
  bounds_cmd->add_option("--alpha", alpha_s, "region exponent alpha");
  bounds_cmd->add_option("--beta", beta_s, "region exponent beta");
  bounds_cmd->add_option("--b", b_s, "region constant b, or 'ford'");
  bounds_cmd->add_option("--nu", nu_s, "growth exponent");
  bounds_cmd->add_option("--c", c_s, "constant for the Walfisz/Abelian envelopes");
  add_common(bounds_cmd);

  // probe
  std::string kind, eta_s;
  std::int64_t mlimit = 1'000'000;
  auto* probe_cmd = app.add_subcommand("probe", "phenomenon probes as CSV");
  probe_cmd->add_option("--kind", kind, "fake-asym | rh-window | delange | prime-abelian")
      ->required();
  probe_cmd->add_option("--grid", grid_s, "log grid A:B:steps")->required();
  probe_cmd->add_option("--eta", eta_s, "exponent in [1/2, 1) for rh-window");
  probe_cmd->add_option("--limit", mlimit, "Mertens-side sieve limit for rh-window");
  add_common(probe_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Env env = make_env(common);
    if (sieve_cmd->parsed()) return cmd_sieve(env, fn_name, limit, prefix);
    if (eval_cmd->parsed()) return cmd_eval(env, fn_name, t_abs, arg_deg);
    if (mellin_cmd->parsed())
      return cmd_mellin(env, fn_name, t_abs, arg_deg, contour, kappa_s, t_height, nu_s,
                        unsafe_tall);
    if (compare_cmd->parsed()) return cmd_compare(env, fn_name, grid_s, main_term, svg_path);
    if (bounds_cmd->parsed()) return cmd_bounds(env, t_abs, alpha_s, beta_s, b_s, nu_s, c_s);
    if (probe_cmd->parsed()) return cmd_probe(env, kind, grid_s, eta_s, mlimit);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const MemoryCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
