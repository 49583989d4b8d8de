#pragma once

#include "cscforge/singularity_analysis.hpp"
#include "cscforge/sphere_classification.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace cscforge {

/// Malformed input text (bad JSON, missing fields, unparseable numbers).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

/// {"poles":[{"a":[re,im],"lambda":[re,im]}],"exact_part":[[re,im],...]}
/// exact_part lists the coefficients of H in ascending order and may be
/// omitted.  Throws ParseError on schema violations; pole data errors
/// (duplicates, zero residues) surface as Error.
MeromorphicOneForm form_from_json(const Json& j);
Json form_to_json(const MeromorphicOneForm& omega);

/// Inline JSON if the text starts with '{', otherwise a path to a JSON file.
Json load_json_argument(const std::string& text);

/// "simple:lambda=2.5", "unit_residues:alpha=3", "plus_minus:alpha=2:a=2,0",
/// each optionally followed by ":p=re,im".
StandardFormCase parse_standard_case(const std::string& text);
std::string to_string(StandardCase kind);

/// "re,im" (or a bare real number).
Complex parse_complex(const std::string& text);
double parse_real(const std::string& text);

Json to_json(Complex z);
Json to_json(const SpherePoint& p);
Json to_json(const ExactnessReport& r);
Json to_json(const Divisor& d);
Json to_json(const ConeAngleReport& r);
Json to_json(const GaussBonnetReport& r);
Json to_json(const StandardFormCase& c);
Json to_json(const FootballReduction& r);

/// Real number with 17 significant digits.
std::string format_real(double x);

}  // namespace cscforge
