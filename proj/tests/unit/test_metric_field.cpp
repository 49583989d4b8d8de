#include "cscforge/metric_field.hpp"

#include <doctest.h>

#include "../support/error_code.hpp"
#include "../support/test_forms.hpp"

#include <numbers>

using namespace cscforge;
using namespace cscforge::testing;

TEST_CASE("metric_density examples") {
  const auto inv = build_third_kind({{0.0, 1.0}});
  const MetricField sphere(phi_from_offset(inv, 0.0), 1);
  for (double t : {0.0, 0.7, 2.9}) CHECK(metric_density(sphere, std::polar(1.0, t)) == doctest::Approx(1.0).epsilon(1e-14));

  // K = 1 collapses to Phi (4 - Phi) / 4 |eta|^2.
  const auto omega = random_form(23);
  const PhiField phi = solve_phi_closed(omega);
  const MetricField k1(phi, 1);
  for (Complex z : {Complex(0.3, 2.2), Complex(-2.4, -1.1)}) {
    const double v = phi.value(z);
    CHECK(k1.density(z) == doctest::Approx(v * (4 - v) / 4 * std::norm(omega.eta_at(z))).epsilon(1e-12));
  }

  // K = 0 at Phi = 2 with |eta| = 1 gives 4.
  const MetricField flat(phi_from_offset(inv, 0.0), 0);
  CHECK(flat.density(1.0) == doctest::Approx(4.0).epsilon(1e-14));

  const MetricField hyperbolic(phi_from_offset(inv, 0.0), -1);
  CHECK(code_of([&] { hyperbolic.density(Complex(0.6, 0.8)); }) == ErrorCode::DegenerateHyperbolicPoint);
  CHECK(hyperbolic.density(2.0) > 0.0);
  CHECK(code_of([&] { sphere.density(0.0); }) == ErrorCode::EvalAtPole);
  CHECK_THROWS_AS(MetricField(phi_from_offset(inv, 0.0), 2), Error);
}

TEST_CASE("density vanishes at zeros of omega") {
  const auto omega = build_third_kind({{Complex(0, 1), 1.0}, {Complex(0, -1), 1.0}});
  for (int K : {-1, 0, 1}) {
    const MetricField field(phi_from_offset(omega, 0.7), K);
    CHECK(field.density(0.0) == 0.0);
    CHECK(field.log_density(0.0) == -std::numeric_limits<double>::infinity());
    CHECK(field.density(Complex(1e-3, 0)) > 0.0);
  }
}

TEST_CASE("curvature_on_grid on model densities") {
  const GridSpec grid{0.0, 0.5, 21};
  SUBCASE("round sphere") {
    const auto r = curvature_on_grid([](Complex z) { return std::log(4.0) - 2 * std::log1p(std::norm(z)); }, 1.0, grid,
                                     1e-3, {}, {});
    CHECK(r.evaluated == 441);
    CHECK(r.max_residual < 1e-4);
  }
  SUBCASE("flat plane") {
    const auto r = curvature_on_grid([](Complex) { return 0.0; }, 0.0, grid, 1e-3, {}, {});
    CHECK(r.max_residual == 0.0);
  }
  SUBCASE("mismatched exponent list") {
    const std::vector<Complex> pts{0.0};
    CHECK(code_of([&] { curvature_on_grid([](Complex) { return 0.0; }, 0.0, grid, 1e-3, pts, {}); }) ==
          ErrorCode::InvalidArgument);
  }
}

TEST_CASE("pipeline curvature on the annulus 0.3 < |z| < 0.8") {
  const auto omega = build_third_kind({{Complex(0, 1), 1.0}, {Complex(0, -1), 1.0}});
  const MetricField field(phi_from_offset(omega, 0.0), 1);
  const GridSpec grid{0.0, 0.8, 33};
  auto annulus_max = [&](double h, bool resolved_only) {
    const auto report = gauss_curvature_fd(field, grid, h);
    double worst = 0.0;
    std::size_t used = 0;
    for (const auto& s : report.samples) {
      const double r = std::abs(s.z);
      if (r <= 0.3 || r >= 0.8 || s.excluded || (resolved_only && s.unresolved)) continue;
      worst = std::max(worst, s.residual);
      ++used;
    }
    CHECK(used > 200);
    return worst;
  };
  CHECK(annulus_max(1e-3, true) < 1e-4);
  // Next to the zero at 0 the stencil truncation 2 h^2 / r^4 / (2 rho) is
  // about 4e-4 at r = 0.3 for h = 1e-3.
  CHECK(annulus_max(1e-3, false) < 1e-3);
  CHECK(annulus_max(4e-4, false) < 1e-4);
}

TEST_CASE("curvature holds for every K on the test forms") {
  for (const auto& f : acceptance_forms()) {
    for (int K : {-1, 0, 1}) {
      INFO(f.name << " K=" << K);
      const MetricField field(solve_phi_closed(f.omega), K);
      const auto report = gauss_curvature_fd(field, covering_grid(f.omega, 25), 1e-3);
      CHECK(report.evaluated > 0);
      CHECK(report.max_residual < 1e-3);
    }
  }
}

TEST_CASE("exclusion policies") {
  const auto omega = build_third_kind({{0.0, 2.0}});
  const MetricField field(phi_from_offset(omega, 0.0), 1);
  const GridSpec grid{0.0, 1.0, 11};  // contains the pole at 0
  const auto skip = gauss_curvature_fd(field, grid, 1e-3);
  CHECK(skip.excluded >= 1);
  CHECK(skip.samples[60].excluded);
  CurvatureOptions reject;
  reject.policy = ExclusionPolicy::Reject;
  CHECK(code_of([&] { gauss_curvature_fd(field, grid, 1e-3, reject); }) == ErrorCode::GridTouchesSingularity);
}

TEST_CASE("A0 shift moves the Phi = 2 locus but keeps K") {
  const auto omega = random_form(11);
  for (double a0 : {-1.5, 0.0, 1.5}) {
    const MetricField field(phi_from_offset(omega, a0), 1);
    CHECK(gauss_curvature_fd(field, covering_grid(omega, 21), 1e-3).max_residual < 1e-3);
  }
}

TEST_CASE("hyperbolic degeneracy locus") {
  const auto inv = build_third_kind({{0.0, 1.0}});
  const auto locus = hyperbolic_degeneracy_locus(phi_from_offset(inv, 0.0), GridSpec{0.0, 2.0, 21});
  REQUIRE(!locus.empty());
  for (Complex z : locus) CHECK(std::abs(std::abs(z) - 1.0) < 1e-9);
  CHECK(hyperbolic_degeneracy_locus(phi_from_offset(inv, 0.0), GridSpec{Complex(5, 5), 1.0, 11}).empty());
}

TEST_CASE("negation invariance") {
  const auto inv = build_third_kind({{0.0, 1.0}});
  CHECK(negation_invariance_check(inv, 1.0, 2.0) < 1e-12);
  CHECK(negation_invariance_check(inv, Complex(0.5, 0.5), 1.0) < 1e-12);
  const auto two = build_third_kind({{Complex(0, 1), 1.0}, {Complex(0, -1), 1.0}});
  std::mt19937_64 gen(3);
  std::vector<Complex> samples;
  for (int k = 0; k < 100; ++k) samples.emplace_back(6 * unit_uniform(gen) - 3, 6 * unit_uniform(gen) - 3);
  CHECK(negation_invariance_check(two, 2.0, 1.5, samples) < 1e-10);
  for (const auto& f : acceptance_forms()) {
    INFO(f.name);
    CHECK(negation_invariance_check(f.omega, default_base_point(f.omega), 1.3, samples) < 1e-10);
  }
}

TEST_CASE("density scale hook") {
  const auto omega = build_third_kind({{0.0, 1.0}});
  const MetricField field(phi_from_offset(omega, 0.0), 1);
  CHECK(field.with_density_scale(1.01).density(2.0) == doctest::Approx(1.01 * field.density(2.0)).epsilon(1e-14));
}
