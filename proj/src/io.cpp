#include "cscforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cscforge {

namespace {

Complex complex_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(std::string(what) + " must be a [re, im] pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

MeromorphicOneForm form_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("form must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "poles" && key != "exact_part") throw ParseError("unknown form field '" + key + "'");
  std::vector<Pole> poles;
  if (j.contains("poles")) {
    if (!j["poles"].is_array()) throw ParseError("poles must be an array");
    for (const auto& p : j["poles"]) {
      if (!p.is_object() || !p.contains("a") || !p.contains("lambda"))
        throw ParseError("each pole needs fields a and lambda");
      poles.push_back({complex_from_json(p["a"], "a"), complex_from_json(p["lambda"], "lambda")});
    }
  }
  std::vector<Complex> h;
  if (j.contains("exact_part")) {
    if (!j["exact_part"].is_array()) throw ParseError("exact_part must be an array");
    for (const auto& c : j["exact_part"]) h.push_back(complex_from_json(c, "exact_part coefficient"));
  }
  return build_third_kind(std::move(poles), ComplexPolynomial(std::move(h)));
}

Json form_to_json(const MeromorphicOneForm& omega) {
  Json j;
  j["poles"] = Json::array();
  for (const auto& p : omega.poles()) j["poles"].push_back({{"a", to_json(p.location)}, {"lambda", to_json(p.residue)}});
  j["exact_part"] = Json::array();
  for (const auto& c : omega.exact_part().coefficients()) j["exact_part"].push_back(to_json(c));
  return j;
}

Json load_json_argument(const std::string& text) {
  std::string body = text;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') {
    std::ifstream in(text);
    if (!in) throw ParseError("cannot read '" + text + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ParseError("not a number: '" + text + "'");
  return v;
}

Complex parse_complex(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return {parse_real(parts[0]), 0.0};
  if (parts.size() != 2) throw ParseError("expected re,im but got '" + text + "'");
  return {parse_real(parts[0]), parse_real(parts[1])};
}

std::string to_string(StandardCase kind) {
  switch (kind) {
    case StandardCase::Simple: return "simple";
    case StandardCase::UnitResidues: return "unit_residues";
    case StandardCase::PlusMinus: return "plus_minus";
  }
  return "unknown";
}

StandardFormCase parse_standard_case(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw ParseError("empty standard-form description");
  StandardFormCase c;
  if (parts[0] == "simple")
    c.kind = StandardCase::Simple;
  else if (parts[0] == "unit_residues")
    c.kind = StandardCase::UnitResidues;
  else if (parts[0] == "plus_minus")
    c.kind = StandardCase::PlusMinus;
  else
    throw ParseError("unknown standard case '" + parts[0] + "'");

  bool have_lambda = false, have_alpha = false, have_a = false;
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const auto eq = parts[k].find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in '" + parts[k] + "'");
    const std::string key = parts[k].substr(0, eq);
    const std::string value = parts[k].substr(eq + 1);
    if (key == "lambda") {
      c.residue_lambda = parse_real(value);
      have_lambda = true;
    } else if (key == "alpha") {
      const double a = parse_real(value);
      if (a != std::floor(a) || a < 1 || a > 64) throw ParseError("alpha must be a positive integer");
      c.alpha = static_cast<int>(a);
      have_alpha = true;
    } else if (key == "a") {
      c.a = parse_complex(value);
      have_a = true;
    } else if (key == "p") {
      c.p = parse_complex(value);
    } else {
      throw ParseError("unknown standard-form parameter '" + key + "'");
    }
  }
  if (c.kind == StandardCase::Simple && !have_lambda) throw ParseError("simple needs lambda=");
  if (c.kind != StandardCase::Simple && !have_alpha) throw ParseError(parts[0] + " needs alpha=");
  if (c.kind == StandardCase::PlusMinus && !have_a) throw ParseError("plus_minus needs a=");
  return c;
}

Json to_json(Complex z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }

Json to_json(const SpherePoint& p) {
  if (p.is_infinity()) return "inf";
  return to_json(p.value());
}

Json to_json(const ExactnessReport& r) {
  Json j;
  j["third_kind"] = r.is_third_kind;
  j["residues_real_nonzero"] = r.residues_all_real_nonzero;
  j["real_part_exact"] = r.real_part_exact;
  j["has_poles"] = r.has_poles;
  j["exact"] = r.passes();
  j["diagnostics"] = r.diagnostics;
  return j;
}

Json to_json(const Divisor& d) {
  Json j;
  j["points"] = Json::array();
  for (const auto& p : d.points()) j["points"].push_back({{"point", to_json(p.where)}, {"weight", p.weight}});
  j["degree"] = d.degree();
  return j;
}

Json to_json(const ConeAngleReport& r) {
  Json j;
  j["point"] = to_json(r.point);
  j["predicted_angle"] = r.predicted_angle;
  j["fitted_angle"] = r.fitted_angle;
  j["slope"] = r.slope;
  j["regression_r2"] = r.regression_r2;
  j["conical"] = r.conical;
  j["fit_radii"] = r.fit_radii;
  return j;
}

Json to_json(const GaussBonnetReport& r) {
  Json j;
  j["chi"] = r.chi;
  j["deg_d"] = r.deg_d;
  j["K"] = r.K;
  j["total_area"] = r.total_area;
  j["area_error_estimate"] = r.area_error_estimate;
  j["expected"] = r.expected;
  j["residual"] = r.residual;
  j["passed"] = r.passed();
  return j;
}

Json to_json(const StandardFormCase& c) {
  Json j;
  j["case"] = to_string(c.kind);
  if (c.kind == StandardCase::Simple) {
    j["residue_lambda"] = c.residue_lambda;
  } else {
    j["alpha"] = c.alpha;
  }
  if (c.kind == StandardCase::PlusMinus) j["a"] = to_json(c.a);
  j["p"] = to_json(c.p);
  return j;
}

Json to_json(const FootballReduction& r) {
  Json j;
  j["p"] = to_json(r.p);
  j["variant"] = r.metric.variant() == FootballVariant::Generic ? "generic" : "integer";
  j["alpha"] = r.metric.alpha();
  if (r.metric.variant() == FootballVariant::Integer) j["b"] = r.metric.b();
  j["scale_lambda"] = r.scale_lambda;
  j["b_imag"] = r.b_imag;
  return j;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace cscforge
