#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sepflow/analytic.hpp"
#include "sepflow/fields.hpp"

using namespace sepflow;

namespace {

Real worst_residual(const VelocityField& v, const AnnulusGrid& g, const WallSpec& wall) {
  Real worst = 0.0;
  for (int j = 0; j < g.ntheta; j += 2)
    worst = std::max(worst, std::abs(boundary_identity_terms(v, g, j, wall).residual));
  return worst;
}

}  // namespace

TEST_CASE("rest state has zero wall-identity residual") {
  AnnulusGrid g(sphere(1.0), {1.0}, 2.0, 16, 16);
  const VelocityField v = VelocityField::zero(g);
  CHECK(boundary_identity_residual(v, g, 0) == 0.0);
}

TEST_CASE("no-slip identity residual refines at second order") {
  for (const auto& m : {sphere(1.0), hyperbolic(1.0), euclidean()}) {
    const AnalyticField f = manufactured_noslip(m, 1.0, 2.0, 2024, 2);
    Real prev = -1.0;
    for (int n : {32, 64, 128}) {
      AnnulusGrid g(m, {1.0}, 2.0, n, n);
      const Real worst = worst_residual(f.sample(g), g, {});
      if (prev > 0.0) {
        const Real order = std::log2(prev / worst);
        CHECK(order > 1.8);
      }
      prev = worst;
    }
    CHECK(prev < 1e-3);  // finest-level magnitude for a unit-speed field
  }
}

TEST_CASE("axisymmetric no-slip profile: eta vanishes, residual refines") {
  const ManifoldSpec m = hyperbolic(1.0);
  AnalyticField f(m);
  f.add_utheta({RadialProfile::poly({0, 0, 1.0, -0.6, 0.2}, 1.0), AngularProfile::constant(1.0),
                TimeProfile::steady()});
  Real prev = -1.0;
  for (int n : {32, 64, 128}) {
    AnnulusGrid g(m, {1.0}, 2.0, n, 16);
    const auto terms = boundary_identity_terms(f.sample(g), g, 3);
    CHECK(terms.coeffs.eta == 0.0);
    if (prev > 0.0) CHECK(prev / std::abs(terms.residual) > 3.4);
    prev = std::abs(terms.residual);
  }
}

TEST_CASE("raw and simplified integrands both match the exact rate") {
  // On a fine grid both sides approximate the same analytic right-hand side.
  const ManifoldSpec m = euclidean();
  const AnalyticField f = manufactured_noslip(m, 1.0, 2.0, 99, 2);
  AnnulusGrid g(m, {1.0}, 2.0, 128, 128);
  const auto terms = boundary_identity_terms(f.sample(g), g, 5);
  const BoundaryCoefficients exact = exact_wall_coefficients(f, g, 5);
  const Real expect = rhs_plain(exact);
  CHECK(terms.simplified == doctest::Approx(expect).epsilon(5e-4).scale(1.0));
  CHECK(terms.raw == doctest::Approx(expect).epsilon(5e-3).scale(1.0));
}

TEST_CASE("identity preconditions are enforced and distinct") {
  AnnulusGrid g(euclidean(), {1.0}, 2.0, 16, 16);

  // wall values violating no-slip
  VelocityField bad_wall = VelocityField::zero(g);
  bad_wall.utheta.row(0).setConstant(0.5);
  CHECK_THROWS_AS(boundary_identity_residual(bad_wall, g, 0), PreconditionError);

  // grossly non-solenoidal interior
  VelocityField bad_div = VelocityField::zero(g);
  for (int i = 1; i < g.nr; ++i) bad_div.ur.row(i).setConstant(g.r[i] - 1.0);
  CHECK_THROWS_AS(boundary_identity_residual(bad_div, g, 0), PreconditionError);

  // wrong shape is a different error type
  AnnulusGrid small(euclidean(), {1.0}, 2.0, 8, 8);
  VelocityField tiny = VelocityField::zero(small);
  CHECK_THROWS_AS(boundary_identity_residual(tiny, g, 0), ShapeError);

  // non-finite data
  VelocityField nan_field = VelocityField::zero(g);
  nan_field.ur(3, 3) = std::nan("");
  CHECK_THROWS_AS(boundary_identity_residual(nan_field, g, 0), PreconditionError);
}

TEST_CASE("inflow/coriolis identity residual refines at second order") {
  const ManifoldSpec m = sphere(1.0);
  const Real delta = M_PI / 3.0, R = 0.9 * M_PI;
  const Real lambda0 = 0.7, beta = 2.0;
  const AnalyticField f = manufactured_inflow(m, delta, R, lambda0, 55, 2);
  Real prev = -1.0;
  for (int n : {32, 64, 128}) {
    AnnulusGrid g(m, {delta}, R, n, n);
    const VelocityField v = f.sample(g);
    Real worst = 0.0;
    for (int j = 0; j < g.ntheta; j += 2)
      worst = std::max(worst, std::abs(coriolis_identity_residual(v, g, j, lambda0, beta)));
    if (prev > 0.0) {
      const Real order = std::log2(prev / worst);
      CHECK(order > 1.8);
    }
    prev = worst;
  }
}

TEST_CASE("inflow identity reduces to the corollary right-hand side exactly in form") {
  // with lambda0 = beta = 0 the inflow wall spec reproduces the no-slip terms
  const AnalyticField f = manufactured_noslip(euclidean(), 1.0, 2.0, 7, 2);
  AnnulusGrid g(euclidean(), {1.0}, 2.0, 32, 32);
  const VelocityField v = f.sample(g);
  const auto a = boundary_identity_terms(v, g, 4, {});
  const auto b = boundary_identity_terms(v, g, 4, {WallSpec::Kind::inflow, 0.0, 0.0});
  CHECK(a.raw == b.raw);
  CHECK(a.simplified == b.simplified);
}

TEST_CASE("substitution gap refines alongside the residual") {
  const AnalyticField f = manufactured_noslip(sphere(1.0), 1.0, 2.0, 13, 2);
  Real prev = -1.0;
  for (int n : {32, 64, 128}) {
    AnnulusGrid g(sphere(1.0), {1.0}, 2.0, n, n);
    const auto terms = boundary_identity_terms(f.sample(g), g, 1);
    if (prev > 0.0) CHECK(prev / std::abs(terms.deltae3_gap) > 3.2);
    prev = std::abs(terms.deltae3_gap);
  }
}
