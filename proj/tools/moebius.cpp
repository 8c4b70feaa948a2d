#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "moebius/analysis.hpp"
#include "moebius/energy.hpp"
#include "moebius/error.hpp"
#include "moebius/flow.hpp"
#include "moebius/generators.hpp"
#include "moebius/io.hpp"
#include "moebius/kernels.hpp"
#include "moebius/parallel.hpp"
#include "moebius/variation.hpp"
#include "moebius/verify.hpp"

using namespace moebius;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kAssertion = 1, kValidation = 2, kNumerical = 3 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain:
    case ErrorKind::InvalidInput:
    case ErrorKind::NotUnit:
    case ErrorKind::InsufficientSamples:
    case ErrorKind::HypothesisViolated:
      return kValidation;
    case ErrorKind::DegenerateCurve:
    case ErrorKind::NotArcLength:
    case ErrorKind::CalibrationUnstable:
    case ErrorKind::SelfIntersectionImminent:
      return kNumerical;
  }
  return kNumerical;
}

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

struct Global {
  std::size_t threads = 0;
  std::string kernels = "auto";
  std::string report = "-";
};

json result_json(const verify::CheckResult& r) {
  return json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}};
}

std::pair<double, double> parse_pair(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidInput(std::string(what) + " expects two comma-separated numbers");
  auto number = [&](const std::string& s) {
    if (s == "inf" || s == "infinity") return analysis::kInfinity;
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw InvalidInput(std::string(what) + ": cannot parse '" + s + "'");
    }
  };
  return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

json number_or_string(double v) { return std::isfinite(v) ? json(v) : json(v > 0 ? "inf" : "-inf"); }

// --------------------------------------------------------------------------

struct MakeCurveArgs {
  std::string kind = "circle";
  std::size_t n = 256, dim = 2;
  double radius = 1.0, a = 1.0, b = 0.5, big_r = 2.0, small_r = 1.0, amplitude = 0.05;
  int p = 2, q = 3, mode = 3;
  bool arclength = false;
  std::string out = "-";
};

int run_make_curve(const MakeCurveArgs& args, const Global& g) {
  Stopwatch sw;
  ClosedCurve c = [&] {
    if (args.kind == "circle") return gen::circle(args.n, args.radius, args.dim);
    if (args.kind == "ellipse") return gen::ellipse(args.n, args.a, args.b);
    if (args.kind == "torus-knot") return gen::torus_knot(args.n, args.p, args.q, args.big_r, args.small_r);
    if (args.kind == "perturbed-circle") return gen::perturbed_circle(args.n, args.mode, args.amplitude, args.dim);
    if (args.kind == "lemniscate") return gen::lemniscate(args.n);
    throw InvalidInput("unknown curve kind '" + args.kind + "'");
  }();
  if (args.arclength) c = reparametrize_arclength(c);
  io::write_curve(args.out, c);
  if (g.report != "-" && !g.report.empty()) {
    io::Report rep;
    rep.config_echo = {{"command", "make-curve"}, {"kind", args.kind}, {"n", args.n},     {"dim", c.dim()},
                       {"p", args.p},             {"q", args.q},       {"arclength", args.arclength},
                       {"out", args.out}};
    rep.results = {{"samples", c.size()}, {"dim", c.dim()}, {"length", length(c)}};
    rep.timings = {{"total", sw.lap()}};
    io::write_text(g.report, rep.to_json().dump(2));
  }
  return kOk;
}

struct EnergyArgs {
  std::string input;
  double alpha = 2.0, p = 1.0, eps = 0.0;
  bool extrapolate = false;
  std::string scheme = "diagonal";
  std::size_t n_u = 0, n_w = 0;
};

int run_energy(const EnergyArgs& args, const Global& g) {
  Stopwatch sw;
  io::Report rep;
  rep.config_echo = {{"command", "energy"}, {"input", args.input}, {"alpha", args.alpha}, {"p", args.p},
                     {"eps", args.eps},     {"extrapolate", args.extrapolate}, {"scheme", args.scheme},
                     {"n_u", args.n_u},     {"n_w", args.n_w}, {"threads", threads()}, {"kernels", g.kernels}};
  const ClosedCurve c = io::read_curve(args.input);
  rep.timings["read"] = sw.lap();
  QuadratureScheme s;
  s.n_u = args.n_u;
  s.n_w = args.n_w;
  if (args.scheme == "diagonal") {
    if (args.eps != 0.0) throw InvalidInput("--scheme diagonal takes no --eps");
  } else if (args.scheme == "cutoff") {
    if (!(args.eps > 0.0)) throw InvalidInput("--scheme cutoff needs --eps > 0");
    s.eps = args.eps;
    s.extrapolate = args.extrapolate;
  } else {
    throw InvalidInput("unknown scheme '" + args.scheme + "'");
  }
  json diagnostics;
  double value = 0.0;
  std::string method;
  if (args.alpha == 2.0 && args.p == 1.0) {
    const EnergyReport r = moebius_energy_report(c, s);
    value = r.value;
    method = r.method;
    diagnostics = {{"reparametrized", r.reparametrized},
                   {"arclength_defect", r.arclength_defect},
                   {"bilipschitz", r.bilipschitz}};
    s = r.scheme;
  } else {
    value = ohara_energy(c, args.alpha, args.p, s);
    method = s.eps > 0.0 ? "cutoff" : "diagonal-limit";
  }
  rep.timings["energy"] = sw.lap();
  diagnostics["length"] = length(c);
  diagnostics["injectivity_margin"] = injectivity_margin(c);
  rep.results = {{"value", value},
                 {"scheme",
                  {{"method", method}, {"n_u", s.n_u}, {"n_w", s.n_w}, {"eps", s.eps}, {"extrapolate", s.extrapolate}}},
                 {"diagnostics", diagnostics}};
  io::write_text(g.report, rep.to_json().dump(2));
  return kOk;
}

struct VariationArgs {
  std::string input, field;
  std::string mode = "delta";
  std::size_t basis = 0;
  std::uint64_t seed = 1;
  int k_max = 4;
};

TestField random_field(std::size_t n, std::size_t dim, int k_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> a(dim * (k_max + 1)), b(dim * (k_max + 1));
  for (auto& x : a) x = nd(rng);
  for (auto& x : b) x = nd(rng);
  return TestField::from(PeriodicField::sample(dim, n, [&](double u, std::size_t d) {
    double v = a[d * (k_max + 1)];
    for (int k = 1; k <= k_max; ++k) {
      const double x = 2.0 * std::numbers::pi * k * u;
      v += (a[d * (k_max + 1) + k] * std::cos(x) + b[d * (k_max + 1) + k] * std::sin(x)) / (1.0 + k * k);
    }
    return v;
  }));
}

int run_variation(const VariationArgs& args, const Global& g) {
  Stopwatch sw;
  io::Report rep;
  rep.config_echo = {{"command", "variation"}, {"input", args.input}, {"field", args.field}, {"mode", args.mode},
                     {"basis", args.basis},    {"seed", args.seed},   {"kmax", args.k_max}, {"threads", threads()},
                     {"kernels", g.kernels}};
  const ClosedCurve c = io::read_curve(args.input);
  const TestField h = args.field.empty() ? random_field(c.size(), c.dim(), args.k_max, args.seed)
                                         : TestField::from(io::field_from_json(io::read_json(args.field)));
  if (h.field.dim() != c.dim() || h.field.size() != c.size()) {
    throw InvalidInput("test field shape does not match the curve");
  }
  rep.timings["read"] = sw.lap();
  const bool arclength = is_arclength(c);
  json results{{"arclength", arclength}};
  if (args.mode == "delta") {
    results["delta"] = arclength ? first_variation(c, h) : first_variation_general(c, h);
    results["formula"] = arclength ? "arclength" : "general";
  } else if (args.mode == "q") {
    results["q_value"] = q_limit(c, h);
  } else if (args.mode == "t1") {
    results["t1_value"] = t1_form(c, h);
  } else if (args.mode == "t2") {
    results["t2_value"] = t2_form(c, h);
  } else if (args.mode == "residual") {
    const auto basis = args.basis > 0 ? trig_basis(c.size(), c.dim(), args.basis) : std::vector<TestField>{};
    const ELReport r = el_residual(c, h, basis);
    results["q_value"] = r.q_value;
    results["t1_value"] = r.t1_value;
    results["t2_value"] = r.t2_value;
    results["residual"] = r.residual;
    results["mode_residuals"] = r.mode_residuals;
  } else {
    throw InvalidInput("unknown variation mode '" + args.mode + "'");
  }
  rep.timings["variation"] = sw.lap();
  rep.results = results;
  io::write_text(g.report, rep.to_json().dump(2));
  return kOk;
}

struct FlowArgs {
  std::string input, trace, svg, final_curve, snapshot_dir = ".";
  std::size_t steps = 200, snapshot_every = 0;
  double step0 = 1.0, tol = 1e-4, precondition = 1.5;
};

int run_flow(const FlowArgs& args, const Global& g) {
  Stopwatch sw;
  io::Report rep;
  rep.config_echo = {{"command", "flow"},     {"input", args.input},
                     {"steps", args.steps},   {"step0", args.step0},
                     {"tol", args.tol},       {"precondition", args.precondition},
                     {"out", args.trace},     {"snapshot_every", args.snapshot_every},
                     {"svg", args.svg},       {"threads", threads()},
                     {"kernels", g.kernels}};
  const ClosedCurve c0 = io::read_curve(args.input);
  FlowOptions o;
  o.max_steps = args.steps;
  o.step0 = args.step0;
  o.grad_tol = args.tol;
  o.precondition = args.precondition;
  o.validate();

  if (args.snapshot_every > 0) std::filesystem::create_directories(args.snapshot_dir);
  auto snapshot = [&](const FlowState& st) {
    if (args.snapshot_every == 0 || st.step_count % args.snapshot_every != 0) return;
    const auto name = "step_" + std::to_string(st.step_count) + ".json";
    io::write_curve((std::filesystem::path(args.snapshot_dir) / name).string(), st.curve);
  };
  const FlowState state = minimize(c0, o, snapshot);
  rep.timings["flow"] = sw.lap();

  if (!args.trace.empty()) {
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < state.energy_trace.size(); ++k) {
      const double margin = k == 0 ? state.initial_margin : state.margin_trace[k - 1];
      rows.push_back({static_cast<double>(k), state.energy_trace[k], margin});
    }
    io::write_csv(args.trace, {"step", "energy", "relative_margin"}, rows);
  }
  if (!args.final_curve.empty()) io::write_curve(args.final_curve, state.curve);
  if (!args.svg.empty()) {
    io::write_text(args.svg + "_curve.svg", io::svg_curve(state.curve));
    io::write_text(args.svg + "_trace.svg", io::svg_trace(state.energy_trace));
  }
  rep.timings["output"] = sw.lap();
  rep.results = {{"status", to_string(state.status)},
                 {"steps", state.step_count},
                 {"energy", state.energy},
                 {"initial_energy", state.energy_trace.front()},
                 {"grad_norm", state.grad_norm},
                 {"relative_margin", state.margin},
                 {"initial_relative_margin", state.initial_margin},
                 {"el_residuals", state.el_residuals}};
  io::write_text(g.report, rep.to_json().dump(2));
  return state.status == FlowStatus::SelfIntersection ? kNumerical : kOk;
}

struct AnalyzeArgs {
  std::string input, lorentz, window, csv;
  std::optional<double> gamma;
  bool morrey = false, appendix = false;
  std::uint64_t seed = 20140611;
  std::size_t trials = 100000;
};

int run_analyze(const AnalyzeArgs& args, const Global& g) {
  Stopwatch sw;
  io::Report rep;
  rep.config_echo = {{"command", "analyze"}, {"input", args.input},    {"lorentz", args.lorentz},
                     {"window", args.window}, {"morrey", args.morrey}, {"appendix_checks", args.appendix},
                     {"seed", args.seed},     {"trials", args.trials}, {"csv", args.csv},
                     {"threads", threads()},  {"kernels", g.kernels}};
  if (args.gamma) rep.config_echo["gamma"] = *args.gamma;
  const bool needs_curve = !args.lorentz.empty() || args.gamma || args.morrey;
  if (!needs_curve && !args.appendix) throw InvalidInput("analyze: choose --lorentz, --gamma, --morrey or --appendix-checks");
  json results = json::object();
  std::vector<std::vector<double>> csv_rows;
  if (needs_curve) {
    if (args.input.empty()) throw InvalidInput("analyze: --input is required for curve diagnostics");
    const ClosedCurve c = normalized_arclength(io::read_curve(args.input));
    const PeriodicField half = analysis::half_derivative_magnitude(c);
    if (!args.lorentz.empty()) {
      const auto [p, q] = parse_pair(args.lorentz, "--lorentz");
      analysis::Window w;
      if (!args.window.empty()) {
        const auto [lo, hi] = parse_pair(args.window, "--window");
        if (!(hi > lo) || hi - lo > 1.0) throw InvalidInput("--window needs lo < hi with hi − lo ≤ 1");
        w = {lo, hi};
      }
      results["lorentz"] = {{"field", "|D^{1/2} gamma'|"},
                            {"p", number_or_string(p)},
                            {"q", number_or_string(q)},
                            {"window", {w.lo, w.hi}},
                            {"value", analysis::lorentz_norm(half, {p, q, w})}};
    }
    if (args.gamma) {
      const PeriodicField gp = fourier::derivative(c.samples());
      results["gamma"] = {{"u", *args.gamma}, {"value", analysis::gamma_term(gp, *args.gamma)}};
    }
    if (args.morrey) {
      std::vector<double> centers;
      for (int i = 0; i < 8; ++i) centers.push_back(i / 8.0);
      const std::vector<double> radii{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
      const auto prof = analysis::morrey_decay_profile(half, centers, radii);
      json samples = json::array();
      for (const auto& s : prof.samples) {
        samples.push_back({{"center", s.center}, {"radius", s.radius}, {"value", s.value}});
        csv_rows.push_back({s.center, s.radius, s.value});
      }
      results["morrey"] = {{"samples", samples},
                           {"degenerate", prof.degenerate},
                           {"sigma", prof.degenerate ? json("degenerate") : json(prof.sigma)}};
    }
  }
  rep.timings["curve_diagnostics"] = sw.lap();
  if (args.appendix) {
    const auto probe = analysis::multiplier_estimate_probe(0.5, 0.25, args.trials, args.seed);
    const double theta = 1.0, c = 1.0;
    const std::size_t m = analysis::iteration_minimal_m(theta, c);
    const double eps = 0.125 * std::exp2(-theta * static_cast<double>(m));
    const auto seq = analysis::iteration_sequence(std::vector<double>(m, 1.0), 120, theta, eps, m, c);
    const auto it = analysis::iteration_lemma_check(seq, theta, eps, m, c);
    results["appendix"] = {
        {"multiplier", {{"alpha", 0.5}, {"delta", 0.25}, {"trials", probe.trials}, {"max_ratio", probe.max_ratio}}},
        {"iteration",
         {{"theta", theta}, {"C", c}, {"m", m}, {"eps", eps}, {"holds", it.holds}, {"c_tilde", it.c_tilde},
          {"bound", it.bound}}}};
  }
  rep.timings["appendix"] = sw.lap();
  if (!args.csv.empty()) io::write_csv(args.csv, {"center", "radius", "value"}, csv_rows);
  rep.results = results;
  io::write_text(g.report, rep.to_json().dump(2));
  return kOk;
}

struct VerifyArgs {
  std::string input;
  std::uint64_t seed = 1;
  std::vector<int> criteria;
  bool skip_acceptance = false;
};

int run_verify(const VerifyArgs& args, const Global& g) {
  Stopwatch sw;
  io::Report rep;
  rep.config_echo = {{"command", "verify"}, {"input", args.input},   {"seed", args.seed},
                     {"criteria", args.criteria}, {"skip_acceptance", args.skip_acceptance},
                     {"threads", threads()}, {"kernels", g.kernels}};
  bool all = true;
  json curve = json::array();
  if (!args.input.empty()) {
    for (const auto& r : verify::curve_suite(io::read_curve(args.input), args.seed)) {
      curve.push_back(result_json(r));
      all = all && r.pass;
    }
  }
  rep.timings["curve_suite"] = sw.lap();
  json acceptance = json::array();
  if (!args.skip_acceptance) {
    for (const auto& r : verify::acceptance(args.seed, args.criteria)) {
      acceptance.push_back(result_json(r));
      all = all && r.pass;
    }
  }
  rep.timings["acceptance"] = sw.lap();
  rep.results = {{"pass", all}, {"curve_suite", curve}, {"acceptance", acceptance}};
  io::write_text(g.report, rep.to_json().dump(2));
  return all ? kOk : kAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Möbius energy toolkit: curves, energies, variations, flows and regularity diagnostics"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--threads", g.threads, "Worker threads (falls back to MOEBIUS_THREADS)");
  app.add_option("--kernels", g.kernels, "Pair kernels: auto or scalar")->check(CLI::IsMember({"auto", "scalar"}));
  app.add_option("--report", g.report, "JSON report path ('-' for stdout)");

  MakeCurveArgs mk;
  auto* make = app.add_subcommand("make-curve", "Generate a curve JSON file");
  make->add_option("--kind", mk.kind, "circle, ellipse, torus-knot, perturbed-circle or lemniscate");
  make->add_option("--n", mk.n, "Number of samples (power of two, at least 16)");
  make->add_option("--dim", mk.dim, "Ambient dimension for circles");
  make->add_option("--radius", mk.radius);
  make->add_option("--a", mk.a, "Ellipse semi-axis");
  make->add_option("--b", mk.b, "Ellipse semi-axis");
  make->add_option("--p", mk.p, "Torus-knot winding p");
  make->add_option("--q", mk.q, "Torus-knot winding q");
  make->add_option("--R", mk.big_r, "Torus major radius");
  make->add_option("--r", mk.small_r, "Torus minor radius");
  make->add_option("--mode", mk.mode, "Perturbation mode");
  make->add_option("--amplitude", mk.amplitude, "Perturbation amplitude");
  make->add_flag("--arclength", mk.arclength, "Reparametrize by arclength");
  make->add_option("--out", mk.out, "Output path ('-' for stdout)");

  EnergyArgs en;
  auto* energy = app.add_subcommand("energy", "Evaluate the Möbius or O'Hara energy");
  energy->add_option("--input", en.input)->required();
  energy->add_option("--alpha", en.alpha);
  energy->add_option("--p", en.p);
  energy->add_option("--eps", en.eps, "Singular cutoff (cutoff scheme)");
  energy->add_flag("--extrapolate", en.extrapolate, "Richardson extrapolation in eps");
  energy->add_option("--scheme", en.scheme, "diagonal or cutoff");
  energy->add_option("--nu", en.n_u, "Parameter grid size");
  energy->add_option("--nw", en.n_w, "w grid size");

  VariationArgs va;
  auto* variation = app.add_subcommand("variation", "First variation and its decomposition");
  variation->add_option("--input", va.input)->required();
  variation->add_option("--field", va.field, "Test-field JSON (same layout as curves)");
  variation->add_option("--mode", va.mode)->check(CLI::IsMember({"delta", "q", "t1", "t2", "residual"}));
  variation->add_option("--basis", va.basis, "Trig basis size per axis for the residual sweep");
  variation->add_option("--seed", va.seed, "Seed of the random test field");
  variation->add_option("--kmax", va.k_max, "Bandwidth of the random test field");

  FlowArgs fl;
  auto* flow = app.add_subcommand("flow", "Sobolev gradient descent");
  flow->add_option("--input", fl.input)->required();
  flow->add_option("--steps", fl.steps);
  flow->add_option("--step0", fl.step0);
  flow->add_option("--tol", fl.tol);
  flow->add_option("--precondition", fl.precondition, "Preconditioner exponent (0 for L2 descent)");
  flow->add_option("--out", fl.trace, "Energy trace CSV");
  flow->add_option("--snapshot-every", fl.snapshot_every, "Write the curve every k steps");
  flow->add_option("--snapshot-dir", fl.snapshot_dir);
  flow->add_option("--final", fl.final_curve, "Final curve JSON");
  flow->add_option("--svg", fl.svg, "Prefix for curve and trace SVG plots");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Regularity diagnostics");
  analyze->add_option("--input", an.input);
  analyze->add_option("--lorentz", an.lorentz, "p,q for the Lorentz norm of |D^{1/2} gamma'|");
  analyze->add_option("--window", an.window, "a,b parameter window");
  analyze->add_option("--gamma", an.gamma, "Evaluate the critical term at u");
  analyze->add_flag("--morrey", an.morrey, "Morrey decay profile");
  analyze->add_flag("--appendix-checks", an.appendix, "Iteration lemma and multiplier estimate");
  analyze->add_option("--seed", an.seed);
  analyze->add_option("--trials", an.trials);
  analyze->add_option("--csv", an.csv, "Morrey samples CSV");

  VerifyArgs ve;
  auto* ver = app.add_subcommand("verify", "Identity and acceptance suite");
  ver->add_option("--input", ve.input, "Curve for the per-curve identity suite");
  ver->add_option("--seed", ve.seed);
  ver->add_option("--criteria", ve.criteria, "Acceptance criteria to run (default all)")->delimiter(',');
  ver->add_flag("--skip-acceptance", ve.skip_acceptance);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    set_threads(g.threads > 0 ? g.threads : threads_from_env(hw));
    kernels::set_mode(g.kernels == "scalar" ? kernels::Mode::Scalar : kernels::Mode::Auto);
    if (*make) return run_make_curve(mk, g);
    if (*energy) return run_energy(en, g);
    if (*variation) return run_variation(va, g);
    if (*flow) return run_flow(fl, g);
    if (*analyze) return run_analyze(an, g);
    if (*ver) return run_verify(ve, g);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kValidation;
}
