// dyson: command-line driver for the solver, reductions, recursions, radius
// estimates, ODE fields and Hopf checks. Every run writes manifest.json next
// to its artifacts.
//
// Exit codes: 0 success, 2 bad input or usage, 3 computation error,
// 4 a verification step failed.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dyson/config.hpp"
#include "dyson/dse.hpp"
#include "dyson/error.hpp"
#include "dyson/hopf.hpp"
#include "dyson/io.hpp"
#include "dyson/radius.hpp"
#include "dyson/recursions.hpp"
#include "dyson/reduce.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using dyson::Rational;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kInput = 2;
constexpr int kCompute = 3;
constexpr int kVerify = 4;

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string input;
  std::string out = "out";
  std::optional<int> truncation;
  std::optional<double> tolerance;
  std::string grid;
  std::string xrange;
  std::string yrange;
  std::string format;
};

std::pair<double, double> parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw dyson::ConfigError(std::string(flag) + ": expected a:b");
  try {
    std::size_t used = 0;
    const double a = std::stod(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("trailing");
    const std::string rest = text.substr(colon + 1);
    const double b = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing");
    if (!(a < b)) throw dyson::ConfigError(std::string(flag) + ": expected a < b");
    return {a, b};
  } catch (const std::logic_error&) {
    throw dyson::ConfigError(std::string(flag) + ": expected two numbers a:b, got '" + text + "'");
  }
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  int w = 0, h = 0;
  try {
    if (x == std::string::npos) throw std::invalid_argument("no x");
    std::size_t used = 0;
    w = std::stoi(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument("trailing");
    const std::string rest = text.substr(x + 1);
    h = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing");
  } catch (const std::logic_error&) {
    throw dyson::ConfigError("--grid: expected WxH, got '" + text + "'");
  }
  if (w < 2 || h < 2 || w > 2000 || h > 2000) throw dyson::ConfigError("--grid: each side must be in 2..2000");
  return {w, h};
}

bool wants(const Options& o, const std::string& fmt) { return o.format.empty() || o.format == fmt; }

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  if (o.format.empty()) return;
  for (const char* a : allowed)
    if (o.format == a) return;
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw dyson::ConfigError("--format: '" + o.format + "' is not available for " + o.command + " (use " + list + ")");
}

std::string gamma_json(const dyson::GammaTable& g) {
  json doc;
  doc["truncation"] = g.truncation();
  doc["residues"] = json::array();
  for (std::size_t r = 0; r < g.size(); ++r) {
    json res;
    res["name"] = g.residues()[r];
    res["gamma"] = json::array();
    for (int k = 1; k <= g.truncation(); ++k)
      for (int j = k; j <= g.truncation(); ++j)
        res["gamma"].push_back({{"k", k}, {"j", j}, {"value", dyson::to_string(g.gamma(r, k, j))}});
    doc["residues"].push_back(res);
  }
  return doc.dump(2) + "\n";
}

std::string reduction_json(const dyson::ReductionResult& red) {
  json doc;
  doc["truncation"] = red.truncation;
  doc["residues"] = json::array();
  for (const auto& res : red.residues) {
    json r;
    r["name"] = res.name;
    r["r"] = json::array();
    for (int k = 1; k <= red.truncation; ++k) r["r"].push_back(dyson::to_string(res.r[static_cast<std::size_t>(k)]));
    r["r_ki"] = json::array();
    for (int k = 2; k <= red.truncation; ++k)
      for (int i = 1; i < k; ++i)
        r["r_ki"].push_back({{"k", k}, {"i", i}, {"value", dyson::to_string(res.r_ki[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)])}});
    doc["residues"].push_back(r);
  }
  return doc.dump(2) + "\n";
}

/// Primitive series from the config: given directly, else through the reduction.
dyson::PrimitiveSeries primitives_of(const dyson::Config& cfg) {
  if (cfg.primitives) return *cfg.primitives;
  if (!cfg.theory) throw dyson::ConfigError("$: this command needs \"p_series\" or \"mellin\" data");
  return dyson::p_from_reduction(dyson::reduce_system(*cfg.theory));
}

const dyson::TheorySpec& theory_of(const dyson::Config& cfg) {
  if (!cfg.theory) throw dyson::ConfigError("$.mellin: this command needs Mellin transform data");
  return *cfg.theory;
}

dyson::OdeSettings ode_of(const dyson::Config& cfg, const Options& o) {
  if (!cfg.ode) throw dyson::ConfigError("$.ode: this command needs an \"ode\" section");
  dyson::OdeSettings s = *cfg.ode;
  if (!o.xrange.empty()) std::tie(s.spec.x_min, s.spec.x_max) = parse_range(o.xrange, "--xrange");
  if (!o.yrange.empty()) std::tie(s.spec.g_min, s.spec.g_max) = parse_range(o.yrange, "--yrange");
  return s;
}

void run_solve(const dyson::Config& cfg, const Options& o, dyson::io::Manifest& m) {
  require_format(o, {"csv", "json"});
  const auto table = dyson::solve_system(theory_of(cfg));
  if (wants(o, "csv")) dyson::io::emit(m, o.out, "gamma.csv", dyson::gamma_csv(table));
  if (wants(o, "json")) dyson::io::emit(m, o.out, "gamma.json", gamma_json(table));
}

void run_reduce(const dyson::Config& cfg, const Options& o, dyson::io::Manifest& m) {
  require_format(o, {"csv", "json"});
  const auto& spec = theory_of(cfg);
  const auto red = dyson::reduce_system(spec);
  if (wants(o, "csv")) dyson::io::emit(m, o.out, "reduction.csv", dyson::reduction_csv(red));
  if (wants(o, "json")) dyson::io::emit(m, o.out, "reduction.json", reduction_json(red));
  const bool ok = dyson::verify_reduction(spec, red);
  m.settings.emplace_back("reduction_verified", ok ? "true" : "false");
  if (!ok) throw VerificationFailure("reduced spec does not reproduce the anomalous dimensions");
}

void run_gamma(const dyson::Config& cfg, const Options& o, dyson::io::Manifest& m) {
  require_format(o, {"csv", "json"});
  const auto p = primitives_of(cfg);
  const auto g1 = dyson::second_recursion_system(p, cfg.s);
  const auto table = dyson::first_recursion(g1, cfg.s, p.truncation, p.residues);
  if (wants(o, "csv")) dyson::io::emit(m, o.out, "gamma.csv", dyson::gamma_csv(table));
  if (wants(o, "json")) dyson::io::emit(m, o.out, "gamma.json", gamma_json(table));
  m.settings.emplace_back("p_provenance", p.provenance == dyson::Provenance::direct ? "direct" : "reduction");
  // The recursions describe the rg operator; d_rho tables are not expected to match.
  if (cfg.theory && cfg.theory->convention == dyson::OperatorConvention::rg) {
    const bool ok = table == dyson::solve_system(*cfg.theory);
    m.settings.emplace_back("matches_solver", ok ? "true" : "false");
    if (!ok) throw VerificationFailure("recursions disagree with the direct solve");
  }
}

void run_radius(const dyson::Config& cfg, const Options& o, dyson::io::Manifest& m) {
  require_format(o, {"json", "csv"});
  const auto report = dyson::radius_report(primitives_of(cfg), cfg.s);
  if (wants(o, "json")) dyson::io::emit(m, o.out, "radius.json", dyson::radius_report_json(report));
  if (wants(o, "csv")) dyson::io::emit(m, o.out, "borel.csv", dyson::borel_csv(report));
  if (o.tolerance) {
    for (const auto& r : report.residues)
      if (r.deviation && *r.deviation > *o.tolerance)
        throw VerificationFailure("residue " + r.name + ": estimate deviates from theory by " +
                                  std::to_string(*r.deviation));
  }
}

void run_field(const dyson::Config& cfg, const Options& o, dyson::io::Manifest& m) {
  require_format(o, {"svg", "dat"});
  namespace ode = dyson::ode;
  const auto settings = ode_of(cfg, o);
  const auto& spec = settings.spec;
  const auto [w, h] = o.grid.empty() ? std::pair{30, 30} : parse_grid(o.grid);
  m.settings.emplace_back("grid", std::to_string(w) + "x" + std::to_string(h));

  if (spec.mode == ode::OdeSpec::Mode::system) {
    const ode::Grid grid{w, h, spec.g_min, spec.g_max, spec.g_min, spec.g_max};
    const auto slice = ode::emit_system_slice(spec, grid, settings.slice_x);
    std::ostringstream title;
    title << "(g1, g2) slice at x = " << settings.slice_x;
    if (wants(o, "dat")) dyson::io::emit(m, o.out, "field.dat", ode::field_dat(slice));
    if (wants(o, "svg")) dyson::io::emit(m, o.out, "field.svg", ode::field_svg(slice, grid, title.str()));
    return;
  }

  const ode::Grid grid{w, h, spec.x_min, spec.x_max, spec.g_min, spec.g_max};
  const auto field = ode::emit_field(spec, grid);

  std::vector<double> nx, ng;
  for (int i = 0; i <= 200; ++i) {
    const double x = spec.x_min + (spec.x_max - spec.x_min) * i / 200.0;
    try {
      const double y = ode::nullcline(spec, x);
      if (y >= spec.g_min && y <= spec.g_max) {
        nx.push_back(x);
        ng.push_back(y);
      }
    } catch (const dyson::DomainError&) {
    }
  }

  // A fan of trajectories from the left edge, inside the window.
  std::vector<ode::Trajectory> overlays;
  const double x_start = std::max(spec.x_min, 0.0) + 0.05 * (spec.x_max - spec.x_min);
  for (int i = 1; i <= 6; ++i) {
    const double g0 = spec.g_min + (spec.g_max - spec.g_min) * i / 7.0;
    if (std::abs(g0) < 1e-12 || x_start <= 0.0) continue;
    overlays.push_back(ode::integrate(spec, x_start, g0, spec.x_max));
  }

  std::ostringstream title;
  title << "s = " << spec.s[0] << ", m = " << spec.m;
  if (wants(o, "dat")) dyson::io::emit(m, o.out, "field.dat", ode::field_dat(field));
  if (wants(o, "svg")) dyson::io::emit(m, o.out, "field.svg", ode::field_svg(field, grid, title.str(), overlays, nx, ng));
}

void run_separatrix(const dyson::Config& cfg, const Options& o, dyson::io::Manifest& m) {
  require_format(o, {"json", "csv"});
  namespace ode = dyson::ode;
  const auto settings = ode_of(cfg, o);
  const double tol = o.tolerance.value_or(1e-10);
  const auto res = settings.bracket
                       ? ode::separatrix_search(settings.spec, settings.x0, settings.x_probe, settings.bracket->first,
                                                settings.bracket->second, tol)
                       : ode::separatrix_search(settings.spec, settings.x0, settings.x_probe, tol);
  const auto series = ode::asymptotic_series(settings.spec, 5);

  json doc;
  doc["x0"] = settings.x0;
  doc["x_probe"] = settings.x_probe;
  doc["g0"] = res.g0;
  doc["bracket"] = {res.lo, res.hi};
  doc["bisections"] = res.bisections;
  doc["seed"] = res.seed;
  doc["series_4_terms"] = ode::eval_series({series.begin(), series.begin() + 4}, settings.x0);
  doc["truncation_bound"] = 10.0 * std::pow(settings.x0, 5) * std::abs(series[4]);
  if (wants(o, "json")) dyson::io::emit(m, o.out, "separatrix.json", doc.dump(2) + "\n");

  auto wide = settings.spec;
  wide.g_min = 0.0;
  wide.g_max = std::max(wide.g_max, 1e6);
  if (wants(o, "csv"))
    dyson::io::emit(m, o.out, "trajectory.csv",
                    ode::trajectory_csv(ode::integrate(wide, settings.x0, res.g0, settings.x_probe)));
}

void run_hopf(const dyson::Config& cfg, const Options& o, dyson::io::Manifest& m) {
  require_format(o, {"json"});
  const dyson::HopfSettings hs = cfg.hopf.value_or(dyson::HopfSettings{});
  const auto forests = dyson::hopf::enumerate_forests(hs.max_nodes, hs.decorations);
  const auto report = dyson::hopf::check_axioms_parallel(forests);

  json doc;
  doc["max_nodes"] = hs.max_nodes;
  doc["decorations"] = hs.decorations;
  doc["forests"] = report.forests;
  doc["failures"] = {{"coassociativity", report.coassociativity_failures},
                     {"counit", report.counit_failures},
                     {"antipode", report.antipode_failures},
                     {"involution", report.involution_failures},
                     {"cocycle", report.cocycle_failures},
                     {"grading", report.grading_failures}};
  bool breaking_ok = true;
  doc["breaking_apart"] = json::array();
  for (int s : hs.s)
    for (int k = 0; k <= hs.max_k; ++k) {
      const bool ok = dyson::hopf::check_breaking_apart(s, k);
      breaking_ok = breaking_ok && ok;
      doc["breaking_apart"].push_back({{"s", s}, {"k", k}, {"ok", ok}});
    }
  doc["ok"] = report.ok() && breaking_ok;
  dyson::io::emit(m, o.out, "hopf.json", doc.dump(2) + "\n");
  if (!report.ok() || !breaking_ok) throw VerificationFailure("Hopf algebra checks failed");
}

int dispatch(const Options& o, dyson::io::Manifest& m) {
  std::string text = "{}";
  if (!o.input.empty()) {
    try {
      text = dyson::io::read_file(o.input);
    } catch (const std::exception& e) {
      throw dyson::ConfigError(std::string("--input: ") + e.what());
    }
    m.input = o.input;
    m.input_hash = dyson::io::fnv1a64(text);
  } else if (o.command != "hopf-check") {
    throw dyson::ConfigError("--input is required for " + o.command);
  }
  const dyson::Config cfg = o.input.empty() ? dyson::Config{} : dyson::validate_config(text, o.truncation);

  std::ostringstream used;
  used << text << "|truncation=" << cfg.truncation << "|tolerance=" << (o.tolerance ? *o.tolerance : -1.0)
       << "|grid=" << o.grid << "|x=" << o.xrange << "|y=" << o.yrange << "|format=" << o.format;
  m.spec_hash = dyson::io::fnv1a64(used.str());
  if (cfg.truncation) m.settings.emplace_back("truncation", std::to_string(cfg.truncation));
  if (o.tolerance) m.settings.emplace_back("tolerance", std::to_string(*o.tolerance));
  if (!o.format.empty()) m.settings.emplace_back("format", o.format);
  if (cfg.theory) m.settings.emplace_back("convention", dyson::to_string(cfg.theory->convention));

  fs::create_directories(o.out);
  if (o.command == "solve") run_solve(cfg, o, m);
  else if (o.command == "reduce") run_reduce(cfg, o, m);
  else if (o.command == "gamma") run_gamma(cfg, o, m);
  else if (o.command == "radius") run_radius(cfg, o, m);
  else if (o.command == "field") run_field(cfg, o, m);
  else if (o.command == "separatrix") run_separatrix(cfg, o, m);
  else if (o.command == "hopf-check") run_hopf(cfg, o, m);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyson-Schwinger equations: solver, reductions, recursions, radii and ODE fields"};
  app.set_version_flag("--version", DYSON_VERSION);
  app.require_subcommand(1);

  Options o;
  const std::vector<std::pair<const char*, const char*>> commands{
      {"solve", "Solve the analytic equation order by order; writes gamma.csv/json"},
      {"reduce", "Reduce Mellin data to geometric form; writes reduction.csv/json"},
      {"gamma", "Anomalous dimensions from the two recursions; writes gamma.csv/json"},
      {"radius", "Borel coefficients and radius estimates; writes radius.json, borel.csv"},
      {"field", "Slope field of the ODE; writes field.svg, field.dat"},
      {"separatrix", "Bisection for the separatrix initial value; writes separatrix.json, trajectory.csv"},
      {"hopf-check", "Exhaustive Hopf algebra checks; writes hopf.json"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input,-i", o.input, "JSON configuration");
    sub->add_option("--out,-o", o.out, "Output directory")->capture_default_str();
    sub->add_option("--truncation,-N", o.truncation, "Override the loop truncation")->check(CLI::Range(1, 400));
    sub->add_option("--tolerance", o.tolerance, "Bisection tolerance (separatrix) or allowed deviation (radius)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--grid", o.grid, "Field grid WxH");
    sub->add_option("--xrange", o.xrange, "Field window in x, a:b");
    sub->add_option("--yrange", o.yrange, "Field window in g, a:b");
    sub->add_option("--format", o.format, "Restrict output to one format")
        ->check(CLI::IsMember({"csv", "json", "svg", "dat"}));
    sub->callback([&o, sub] { o.command = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInput;
  }

  if (const int threads = dyson::io::threads_from_env(); threads > 0) omp_set_num_threads(threads);

  dyson::io::Manifest m;
  m.command = o.command;
  m.threads = omp_get_max_threads();
  const auto start = std::chrono::steady_clock::now();
  int rc = kOk;
  try {
    rc = dispatch(o, m);
    m.status = "ok";
  } catch (const dyson::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = kInput;
    m.status = "input error";
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    rc = kVerify;
    m.status = "verification failed";
  } catch (const dyson::ComputationError& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    rc = kCompute;
    m.status = "computation error";
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    rc = kCompute;
    m.status = "computation error";
  }
  m.exit_code = rc;
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::error_code ec;
  fs::create_directories(o.out, ec);
  if (!ec) {
    try {
      dyson::io::write_file(fs::path(o.out) / "manifest.json", m.to_json());
    } catch (const std::exception& e) {
      std::cerr << "warning: manifest not written: " << e.what() << "\n";
    }
  }
  if (rc == kOk) {
    for (const auto& a : m.artifacts) std::cout << (fs::path(o.out) / a.name).string() << "\n";
  }
  return rc;
}
