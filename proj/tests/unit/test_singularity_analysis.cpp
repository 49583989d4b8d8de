#include "cscforge/singularity_analysis.hpp"

#include <doctest.h>

#include "../support/error_code.hpp"
#include "../support/test_forms.hpp"

#include <numbers>

using namespace cscforge;
using namespace cscforge::testing;

namespace {

constexpr double kPi = std::numbers::pi;

const CriticalPoint& at(const PredictedDivisor& d, const SpherePoint& p) {
  for (const auto& c : d.points)
    if (c.where.is_infinity() == p.is_infinity() && chart_distance(c.where, p) < 1e-9) return c;
  FAIL("point not predicted");
  return d.points.front();
}

std::vector<double> log_radii(double top, double bottom, int n) {
  std::vector<double> r;
  for (int k = 0; k < n; ++k) r.push_back(top * std::pow(bottom / top, k / (n - 1.0)));
  return r;
}

}  // namespace

TEST_CASE("predicted_divisor examples") {
  SUBCASE("2.5/z, K=1") {
    const auto d = predicted_divisor(build_third_kind({{0.0, 2.5}}), 1);
    CHECK(*d.divisor.weight_at(SpherePoint(0.0)) == doctest::Approx(1.5));
    CHECK(*d.divisor.weight_at(SpherePoint::infinity()) == doctest::Approx(1.5));
    CHECK(d.non_conical.empty());
  }
  SUBCASE("2z/(z^2+1), K=1") {
    const auto d = predicted_divisor(build_third_kind({{Complex(0, 1), 1.0}, {Complex(0, -1), 1.0}}), 1);
    CHECK(d.divisor.size() == 2);
    CHECK(*d.divisor.weight_at(SpherePoint(0.0)) == doctest::Approx(1.0));
    CHECK(*d.divisor.weight_at(SpherePoint::infinity()) == doctest::Approx(1.0));
    CHECK(at(d, SpherePoint(Complex(0, 1))).smooth);
    CHECK(at(d, SpherePoint(0.0)).predicted_angle == doctest::Approx(4 * kPi));
  }
  SUBCASE("-3/z, K=0") {
    const auto d = predicted_divisor(build_third_kind({{0.0, -3.0}}), 0);
    REQUIRE(d.non_conical.size() == 1);
    CHECK(std::abs(d.non_conical[0].value()) < 1e-12);
    CHECK_FALSE(at(d, SpherePoint(0.0)).conical);
    CHECK(*d.divisor.weight_at(SpherePoint::infinity()) == doctest::Approx(2.0));
  }
  SUBCASE("hypotheses") {
    CHECK(code_of([] { predicted_divisor(build_third_kind({{0.0, Complex(0, 1)}}), 1); }) ==
          ErrorCode::HypothesesFailed);
  }
}

TEST_CASE("cone angle fit on model profiles") {
  const auto radii = log_radii(1e-3, 1e-5, 8);
  const auto cone = fit_cone_angle([](Complex z) { return 2 * (1.7 - 1) * std::log(std::abs(z)) + 0.3; }, radii);
  CHECK(cone.fitted_angle == doctest::Approx(2 * kPi * 1.7).epsilon(1e-12));
  CHECK(cone.regression_r2 > 0.999999);
  CHECK(cone.conical);
  const auto flat = fit_cone_angle([](Complex) { return 0.0; }, radii);
  CHECK(flat.fitted_angle == doctest::Approx(2 * kPi));
  CHECK(flat.conical);
  // A profile curved in ln r is not a power law.
  const auto curved = fit_cone_angle([](Complex z) { return std::pow(std::log(std::abs(z)), 2); }, radii);
  CHECK(curved.regression_r2 < 0.999);
  CHECK_FALSE(curved.conical);
}

TEST_CASE("cone angle examples") {
  SUBCASE("football alpha = 0.5 at 0") {
    const MetricField field(phi_from_offset(build_third_kind({{0.0, 0.5}}), 0.0), 1);
    const auto r = estimate_cone_angle(field, SpherePoint(0.0), log_radii(1e-2, 1e-5, 8));
    CHECK(r.fitted_angle == doctest::Approx(kPi).epsilon(0.01));
    CHECK(r.conical);
  }
  SUBCASE("2z/(z^2+1) at 0 and infinity") {
    const MetricField field(phi_from_offset(build_third_kind({{Complex(0, 1), 1.0}, {Complex(0, -1), 1.0}}), 0.0),
                            1);
    CHECK(estimate_cone_angle(field, SpherePoint(0.0)).fitted_angle == doctest::Approx(4 * kPi).epsilon(0.01));
    CHECK(estimate_cone_angle(field, SpherePoint::infinity()).fitted_angle ==
          doctest::Approx(4 * kPi).epsilon(0.01));
    CHECK(estimate_cone_angle(field, SpherePoint(Complex(0, 1))).fitted_angle ==
          doctest::Approx(2 * kPi).epsilon(0.01));
  }
  SUBCASE("-3/z, K=0 at 0 diverges and has no positive angle") {
    const MetricField field(phi_from_offset(build_third_kind({{0.0, -3.0}}), 0.0), 0);
    const auto r = estimate_cone_angle(field, SpherePoint(0.0));
    CHECK_FALSE(r.conical);
    CHECK(r.fitted_angle <= 0.0);
    REQUIRE(r.fit_radii.front() < r.fit_radii.back());
    CHECK(r.profile.front() > r.profile.back());
  }
  SUBCASE("annulus reaching another critical point") {
    const MetricField field(phi_from_offset(build_third_kind({{Complex(0, 1), 1.0}, {Complex(0, -1), 1.0}}), 0.0),
                            1);
    const std::vector<double> radii{1.5, 0.5};
    CHECK(code_of([&] { estimate_cone_angle(field, SpherePoint(0.0), radii); }) ==
          ErrorCode::AnnulusContainsSingularity);
  }
}

TEST_CASE("default radii") {
  const auto omega = build_third_kind({{0.0, 1.0}, {Complex(1e-3, 0), 1.0}});
  const auto r = default_radii(omega, SpherePoint(0.0));
  REQUIRE(r.size() == 8);
  CHECK(r.back() <= 0.25e-3 + 1e-18);
  CHECK(r.back() / r.front() == doctest::Approx(100.0));
  const auto lone = default_radii(build_third_kind({{0.0, 1.0}}), SpherePoint(0.0));
  CHECK(lone.front() == doctest::Approx(1e-5));
  CHECK(lone.back() == doctest::Approx(1e-3));
}

TEST_CASE("K = 1 cone angles on the test forms") {
  for (const auto& f : acceptance_forms()) {
    INFO(f.name);
    const MetricField field(solve_phi_closed(f.omega), 1);
    for (const auto& c : predicted_divisor(field).points) {
      const auto r = estimate_cone_angle(field, c.where);
      CHECK(std::abs(r.fitted_angle - c.predicted_angle) < 0.01 * c.predicted_angle);
    }
  }
}

TEST_CASE("sphere area and Gauss-Bonnet") {
  auto football = [](double alpha) { return MetricField(phi_from_offset(build_third_kind({{0.0, alpha}}), 0.3), 1); };
  SUBCASE("round sphere") {
    const auto gb = gauss_bonnet_check(football(1.0));
    CHECK(gb.total_area == doctest::Approx(4 * kPi).epsilon(1e-6));
    CHECK(gb.deg_d == 0.0);
    CHECK(gb.passed());
  }
  for (double alpha : {0.5, 2.0}) {
    const auto gb = gauss_bonnet_check(football(alpha));
    INFO(alpha);
    CHECK(gb.total_area == doctest::Approx(4 * kPi * alpha).epsilon(1e-6));
    CHECK(gb.expected == doctest::Approx(2 * kPi * (2 + 2 * (alpha - 1))));
  }
  SUBCASE("analytic area of the round sphere density with an extra cut-out point") {
    const std::vector<Complex> pts{Complex(0.4, -0.2)};
    const auto a = sphere_area([](Complex z) { return std::log(4.0) - 2 * std::log1p(std::norm(z)); }, pts);
    CHECK(a.area == doctest::Approx(4 * kPi).epsilon(1e-8));
  }
  SUBCASE("K != 1") {
    const MetricField flat(phi_from_offset(build_third_kind({{0.0, 2.0}}), 0.0), 0);
    CHECK(code_of([&] { gauss_bonnet_check(flat); }) == ErrorCode::NonConicalSingularityPresent);
  }
}
