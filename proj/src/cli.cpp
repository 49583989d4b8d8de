#include "cscforge/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace cscforge::cli {

namespace {

constexpr double kCurvatureTol = 1e-3;
constexpr double kAngleTol = 0.01;
constexpr double kNegationTol = 1e-10;
constexpr double kReductionTol = 1e-9;
constexpr double kBImagTol = 1e-12;

struct RawFlags {
  std::string config, form, standard, K, p0, phi0, grid, h, out, density_scale;
};

struct Problem {
  MeromorphicOneForm omega;
  std::optional<StandardFormCase> standard;
};

std::string json_scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s;
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (k) s += ",";
      s += j[k].is_string() ? j[k].get<std::string>() : j[k].dump();
    }
    return s;
  }
  return j.dump();
}

JobConfig resolve(const RawFlags& raw) {
  JobConfig cfg;
  RawFlags merged = raw;
  if (!raw.config.empty()) {
    const Json j = load_json_argument(raw.config);
    if (!j.is_object()) throw ParseError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      std::string* slot = nullptr;
      if (key == "form") slot = &merged.form;
      else if (key == "standard") slot = &merged.standard;
      else if (key == "K") slot = &merged.K;
      else if (key == "p0") slot = &merged.p0;
      else if (key == "phi0") slot = &merged.phi0;
      else if (key == "grid") slot = &merged.grid;
      else if (key == "h") slot = &merged.h;
      else if (key == "out") slot = &merged.out;
      else throw ParseError("unknown config key '" + key + "'");
      if (!slot->empty()) continue;  // flag wins
      *slot = (key == "form" && value.is_object()) ? value.dump() : json_scalar_text(value);
    }
  }
  if (!merged.form.empty()) cfg.form = merged.form;
  if (!merged.standard.empty()) cfg.standard = merged.standard;
  if (cfg.form && cfg.standard) throw ParseError("give either --form or --standard, not both");
  if (!merged.K.empty()) {
    const double k = parse_real(merged.K);
    if (k != -1 && k != 0 && k != 1) throw ParseError("--K must be -1, 0 or 1");
    cfg.K = static_cast<int>(k);
  }
  if (!merged.p0.empty()) cfg.p0 = parse_complex(merged.p0);
  if (!merged.phi0.empty()) cfg.phi0 = parse_real(merged.phi0);
  if (!merged.grid.empty()) cfg.grid = parse_grid(merged.grid);
  if (!merged.h.empty()) {
    cfg.h = parse_real(merged.h);
    if (!(cfg.h > 0)) throw ParseError("--h must be positive");
  }
  if (!merged.out.empty()) cfg.out = merged.out;
  if (!merged.density_scale.empty()) {
    cfg.density_scale = parse_real(merged.density_scale);
    if (!(cfg.density_scale > 0)) throw ParseError("--density-scale must be positive");
  }
  return cfg;
}

Problem load_problem(const JobConfig& cfg) {
  if (cfg.standard) {
    const StandardFormCase c = parse_standard_case(*cfg.standard);
    return {standard_form(c), c};
  }
  if (!cfg.form) throw ParseError("a form is required: --form or --standard");
  return {form_from_json(load_json_argument(*cfg.form)), std::nullopt};
}

PhiField make_phi(const MeromorphicOneForm& omega, const JobConfig& cfg) {
  return solve_phi_closed(omega, cfg.p0.value_or(default_base_point(omega)), cfg.phi0.value_or(2.0));
}

MetricField make_metric(const MeromorphicOneForm& omega, const JobConfig& cfg, int default_k) {
  MetricField field(make_phi(omega, cfg), cfg.K.value_or(default_k));
  if (cfg.density_scale != 1.0) field = field.with_density_scale(cfg.density_scale);
  return field;
}

GridSpec default_grid(const MeromorphicOneForm& omega) {
  double r = 1.0;
  for (const auto& p : omega.poles()) r = std::max(r, std::abs(p.location));
  for (const auto& z : omega.zeros()) r = std::max(r, std::abs(z.center));
  return GridSpec{Complex{}, 1.5 * r, 21};
}

// Deterministic sample points in the square of half-width `half`.
std::vector<Complex> sample_points(const MeromorphicOneForm& omega, double half, std::size_t count,
                                   std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<Complex> pts;
  while (pts.size() < count) {
    const Complex z(half * (2 * unit() - 1), half * (2 * unit() - 1));
    if (omega.distance_to_poles(z) > 1e-3) pts.push_back(z);
  }
  return pts;
}

class Output {
 public:
  Output(const JobConfig& cfg, std::ostream& fallback) : stream_(&fallback) {
    if (cfg.out) {
      file_.open(*cfg.out, std::ios::binary);
      if (!file_) throw ParseError("cannot write '" + *cfg.out + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void emit_json(const JobConfig& cfg, std::ostream& out, const Json& j) {
  Output o(cfg, out);
  o.stream() << j.dump(2) << "\n";
}

Json critical_point_json(const CriticalPoint& cp) {
  Json j;
  j["point"] = to_json(cp.where);
  j["kind"] = cp.kind == CriticalKind::Zero ? "zero" : "pole";
  if (cp.kind == CriticalKind::Zero)
    j["order"] = cp.order;
  else
    j["residue"] = cp.residue;
  j["predicted_angle"] = cp.predicted_angle;
  j["conical"] = cp.conical;
  j["smooth"] = cp.smooth;
  j["degenerate"] = cp.degenerate;
  return j;
}

// ---- subcommands ----------------------------------------------------------

int cmd_inspect(const JobConfig& cfg, std::ostream& out) {
  const Problem pr = load_problem(cfg);
  const MeromorphicOneForm& omega = pr.omega;
  Json j;
  j["form"] = form_to_json(omega);
  Json residues = Json::array();
  for (const auto& p : omega.poles()) residues.push_back({{"point", to_json(p.location)}, {"residue", to_json(p.residue)}});
  const InfinityResidue inf = omega.residue_at_infinity();
  residues.push_back({{"point", "inf"}, {"residue", to_json(inf.residue)}});
  j["residues"] = residues;
  j["order_at_infinity"] = omega.order_at_infinity();
  Json zeros = Json::array();
  for (const auto& z : omega.zeros()) zeros.push_back({{"point", to_json(z.center)}, {"order", z.multiplicity}});
  j["zeros"] = zeros;
  j["divisor"] = to_json(divisor_of_form(omega));
  j["hypotheses"] = to_json(omega.hypotheses());
  emit_json(cfg, out, j);
  return omega.hypotheses().passes() ? kOk : kHypothesis;
}

int cmd_phi(const JobConfig& cfg, std::ostream& out) {
  const Problem pr = load_problem(cfg);
  const PhiField phi = make_phi(pr.omega, cfg);
  if (cfg.grid) {
    const std::vector<Complex> pts = cfg.grid->points();
    std::vector<double> values(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { values[i] = phi.value(pts[i]); });
    Output o(cfg, out);
    o.stream() << "x,y,phi\n";
    for (std::size_t i = 0; i < pts.size(); ++i)
      o.stream() << format_real(pts[i].real()) << "," << format_real(pts[i].imag()) << "," << format_real(values[i])
                 << "\n";
    return kOk;
  }
  Json j;
  j["p0"] = to_json(phi.base_point());
  j["phi0"] = phi.initial_value();
  j["offset"] = phi.offset();
  Json limits = Json::array();
  for (std::size_t i = 0; i < pr.omega.poles().size(); ++i)
    limits.push_back({{"point", to_json(pr.omega.poles()[i].location)}, {"limit", phi_limit_at_pole(phi, i)}});
  if (pr.omega.order_at_infinity() == -1)
    limits.push_back({{"point", "inf"}, {"limit", phi_limit_at_pole(phi, SpherePoint::infinity())}});
  j["pole_limits"] = limits;
  emit_json(cfg, out, j);
  return kOk;
}

int cmd_metric(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.K) throw ParseError("metric needs --K");
  if (!cfg.grid) throw ParseError("metric needs --grid");
  const Problem pr = load_problem(cfg);
  const MetricField field = make_metric(pr.omega, cfg, *cfg.K);
  if (field.curvature() == -1) {
    const std::vector<Complex> locus = hyperbolic_degeneracy_locus(field.phi(), *cfg.grid);
    if (!locus.empty()) {
      Json j;
      j["error"] = std::string(to_string(ErrorCode::DegenerateHyperbolicPoint));
      j["message"] = "grid crosses the curve Phi = 2";
      j["locus"] = Json::array();
      for (const Complex& z : locus) j["locus"].push_back(to_json(z));
      err << j.dump(2) << "\n";
      return kGeometry;
    }
  }
  CurvatureOptions opts;
  opts.policy = ExclusionPolicy::Reject;
  const CurvatureReport rep = gauss_curvature_fd(field, *cfg.grid, cfg.h, opts);
  {
    Output o(cfg, out);
    o.stream() << "x,y,rho,phi,K_est\n";
    for (const auto& s : rep.samples)
      o.stream() << format_real(s.z.real()) << "," << format_real(s.z.imag()) << "," << format_real(s.rho) << ","
                 << format_real(s.phi) << "," << format_real(s.k_est) << "\n";
  }
  err << "max_curvature_residual=" << format_real(rep.max_residual) << " points=" << rep.evaluated
      << " unresolved=" << rep.unresolved << "\n";
  return kOk;
}

Json angle_reports(const MetricField& field, bool& all_ok) {
  const PredictedDivisor pred = predicted_divisor(field);
  Json points = Json::array();
  all_ok = true;
  for (const auto& cp : pred.points) {
    Json j = critical_point_json(cp);
    if (cp.degenerate) {
      j["fit"] = nullptr;
      points.push_back(j);
      continue;
    }
    const ConeAngleReport rep = estimate_cone_angle(field, cp.where);
    j["fit"] = to_json(rep);
    bool ok = false;
    if (cp.conical)
      ok = rep.conical && std::abs(rep.fitted_angle - cp.predicted_angle) <= kAngleTol * cp.predicted_angle;
    else
      ok = !rep.conical;
    j["matches_prediction"] = ok;
    all_ok = all_ok && ok;
    points.push_back(j);
  }
  Json j;
  j["K"] = field.curvature();
  j["divisor"] = to_json(pred.divisor);
  j["points"] = points;
  return j;
}

int cmd_angles(const JobConfig& cfg, std::ostream& out) {
  const Problem pr = load_problem(cfg);
  const MetricField field = make_metric(pr.omega, cfg, 1);
  bool ok = true;
  emit_json(cfg, out, angle_reports(field, ok));
  return kOk;
}

int cmd_gauss_bonnet(const JobConfig& cfg, std::ostream& out) {
  const Problem pr = load_problem(cfg);
  const MetricField field = make_metric(pr.omega, cfg, 1);
  const GaussBonnetReport rep = gauss_bonnet_check(field);
  emit_json(cfg, out, to_json(rep));
  return rep.passed() ? kOk : kVerification;
}

struct Classification {
  StandardFormCase data;
  double a0_standard = 0.0;
  FootballReduction reduction;
};

Classification classify_form(const MeromorphicOneForm& omega, const JobConfig& cfg) {
  const StandardFormCase data = normalize_form(omega);
  const PhiField phi = make_phi(omega, cfg);
  StandardFormCase unit = data;
  unit.p = Complex(1.0, 0.0);
  const MeromorphicOneForm reference = standard_form(unit);
  const Complex w0 = default_base_point(reference);
  const double a0 = potential_f(omega, data.p * w0) + phi.offset() - potential_f(reference, w0);
  return {data, a0, reduce_to_football(unit, a0)};
}

Json classification_json(const Classification& c) {
  Json j;
  j["case"] = to_json(c.data);
  j["offset_standard"] = c.a0_standard;
  Json f = to_json(c.reduction);
  f["p_total"] = to_json(c.data.p * c.reduction.p);
  j["football"] = f;
  return j;
}

int cmd_classify(const JobConfig& cfg, std::ostream& out) {
  const Problem pr = load_problem(cfg);
  emit_json(cfg, out, classification_json(classify_form(pr.omega, cfg)));
  return kOk;
}

int cmd_verify(const JobConfig& cfg, std::ostream& out) {
  const Problem pr = load_problem(cfg);
  const MeromorphicOneForm& omega = pr.omega;
  const MetricField field = make_metric(omega, cfg, 1);
  const GridSpec grid = cfg.grid.value_or(default_grid(omega));
  Json checks = Json::array();
  bool all_ok = true;

  {
    const CurvatureReport rep = gauss_curvature_fd(field, grid, cfg.h);
    const bool ok = rep.max_residual < kCurvatureTol;
    checks.push_back({{"check", "curvature"},
                      {"max_residual", rep.max_residual},
                      {"tolerance", kCurvatureTol},
                      {"evaluated", rep.evaluated},
                      {"excluded", rep.excluded},
                      {"unresolved", rep.unresolved},
                      {"passed", ok}});
    all_ok = all_ok && ok;
  }
  {
    bool ok = true;
    Json a = angle_reports(field, ok);
    checks.push_back({{"check", "cone_angles"}, {"points", a["points"]}, {"tolerance", kAngleTol}, {"passed", ok}});
    all_ok = all_ok && ok;
  }
  if (field.curvature() == 1) {
    const GaussBonnetReport rep = gauss_bonnet_check(field);
    Json j = to_json(rep);
    j["check"] = "gauss_bonnet";
    checks.push_back(j);
    all_ok = all_ok && rep.passed();

    const MetricField negated(solve_phi_closed(omega.negated(), field.phi().base_point(),
                                               4.0 - field.phi().initial_value()),
                              1);
    double worst = 0.0;
    for (const Complex& z : sample_points(omega, grid.half_width, 100, 7)) {
      const double rho = field.density(z);
      worst = std::max(worst, std::abs(rho - negated.density(z)) / std::max(1.0, rho));
    }
    const bool ok = worst < kNegationTol;
    checks.push_back({{"check", "negation"}, {"max_relative_difference", worst}, {"tolerance", kNegationTol},
                      {"passed", ok}});
    all_ok = all_ok && ok;
  } else {
    checks.push_back({{"check", "gauss_bonnet"}, {"skipped", "K != 1 metrics carry non-conical singularities"}});
  }
  try {
    const Classification c = classify_form(omega, cfg);
    StandardFormCase unit = c.data;
    unit.p = Complex(1.0, 0.0);
    const StandardFormCase again = normalize_form(standard_form(c.data));
    const bool round_trip = again.kind == c.data.kind && again.alpha == c.data.alpha &&
                            std::abs(again.residue_lambda - c.data.residue_lambda) <= 1e-12 &&
                            std::abs(again.a - c.data.a) <= 1e-9 * std::max(1.0, std::abs(c.data.a)) &&
                            std::abs(again.p - c.data.p) <= 1e-9 * std::abs(c.data.p);
    std::vector<Complex> ws;
    for (int k = 0; k < 100; ++k) ws.push_back(std::polar(0.05 + 0.03 * k, 2.399963229728653 * k));
    const double disc = reduction_discrepancy(unit, c.a0_standard, ws);
    const bool ok = round_trip && disc < kReductionTol && std::abs(c.reduction.b_imag) < kBImagTol;
    Json j = classification_json(c);
    j["check"] = "classification";
    j["round_trip"] = round_trip;
    j["reduction_discrepancy"] = disc;
    j["passed"] = ok;
    checks.push_back(j);
    all_ok = all_ok && ok;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PatternMismatch && e.code() != ErrorCode::ResidueMismatch) throw;
    checks.push_back({{"check", "classification"}, {"skipped", "form is not a standard pattern"}});
  }

  Json j;
  j["K"] = field.curvature();
  j["grid"] = {{"center", to_json(grid.center)}, {"half_width", grid.half_width}, {"n", grid.n}, {"h", cfg.h}};
  j["checks"] = checks;
  j["passed"] = all_ok;
  emit_json(cfg, out, j);
  return all_ok ? kOk : kVerification;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  std::vector<double> v;
  std::istringstream is(text);
  std::string part;
  while (std::getline(is, part, ',')) v.push_back(parse_real(part));
  if (v.size() != 4) throw ParseError("--grid expects cx,cy,half,n");
  if (!(v[2] > 0) || v[3] != std::floor(v[3]) || v[3] < 1 || v[3] > 4096)
    throw ParseError("--grid needs half > 0 and an integer n in [1, 4096]");
  return GridSpec{Complex(v[0], v[1]), v[2], static_cast<int>(v[3])};
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::EvalAtPole:
    case ErrorCode::PathTooCloseToPole:
    case ErrorCode::StepUnderflow:
    case ErrorCode::DegenerateHyperbolicPoint:
    case ErrorCode::GridTouchesSingularity:
    case ErrorCode::AnnulusContainsSingularity:
      return kGeometry;
    case ErrorCode::InvalidArgument:
      return kParse;
    default:
      return kHypothesis;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constant-curvature conical metrics on the Riemann sphere", "csc-forge"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  RawFlags raw;
  const std::vector<std::pair<std::string, std::string>> names = {
      {"inspect", "Divisor, residues and hypotheses of a form"},
      {"phi", "Solve for Phi (summary, or CSV x,y,phi on --grid)"},
      {"metric", "CSV grid x,y,rho,phi,K_est of the metric"},
      {"angles", "Predicted and fitted cone angles"},
      {"gauss-bonnet", "Total area against 2 pi (2 + deg D)"},
      {"classify", "Standard form and football reduction"},
      {"verify", "Run every applicable check"},
  };
  for (const auto& [name, help] : names) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", raw.config, "JSON config file; flags take precedence");
    sub->add_option("--form", raw.form, "Form as inline JSON or a path");
    sub->add_option("--standard", raw.standard, "Standard form, e.g. unit_residues:alpha=3");
    sub->add_option("--K", raw.K, "Curvature -1, 0 or 1");
    sub->add_option("--p0", raw.p0, "Base point re,im");
    sub->add_option("--phi0", raw.phi0, "Phi at the base point, in (0, 4)");
    sub->add_option("--grid", raw.grid, "cx,cy,half,n");
    sub->add_option("--h", raw.h, "Finite-difference step");
    sub->add_option("--out", raw.out, "Output path");
    sub->add_option("--density-scale", raw.density_scale)->group("");
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kParse;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    const JobConfig cfg = resolve(raw);
    if (cmd == "inspect") return cmd_inspect(cfg, out);
    if (cmd == "phi") return cmd_phi(cfg, out);
    if (cmd == "metric") return cmd_metric(cfg, out, err);
    if (cmd == "angles") return cmd_angles(cfg, out);
    if (cmd == "gauss-bonnet") return cmd_gauss_bonnet(cfg, out);
    if (cmd == "classify") return cmd_classify(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace cscforge::cli
