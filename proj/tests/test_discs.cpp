#include <cmath>

#include "doctest.h"
#include "lincvx/discs.hpp"
#include "oracles.hpp"

using namespace lincvx;
using doctest::Approx;

TEST_CASE("disc validation and parametrization") {
  CHECK_THROWS_AS(Disc(CPoint{0.0, 0.0}, CDirection(CPoint{1.0, 0.0}), 0.0), Error);
  const Disc d(CPoint{0.0, 0.0}, CDirection(CPoint{0.0, 2.0}), 0.5);
  CHECK(d.at(Complex(0.0, 1.0))[1] == Complex(0.0, 1.0));
}

TEST_CASE("discriminant sign") {
  CHECK(chord_discriminant(1.0, 0.05) == Approx(4 * 0.0025 + 0.2 - 1.0));
  CHECK(chord_discriminant(1.0, 0.05) < 0.0);
  CHECK(chord_discriminant(1.0, 0.5) > 0.0);
}

TEST_CASE("counterexample discs lie in the model domain") {
  for (double c : {1.0, 2.0, 5.0}) {
    for (double delta : {0.1 / c, 0.02 / c, 1e-3 / c}) {
      REQUIRE(chord_discriminant(c, delta) < 0.0);
      const ChordMargin m = chord_inequality_margin(c, delta);
      CHECK(m.valid);
      const CounterexampleDiscs d = construct_counterexample_discs(c, delta);
      CHECK(d.mu == Approx(std::sqrt(2 * c * delta)));
      // rho_c on the boundary circle, evaluated directly, stays negative off zeta = 1
      for (int k = 1; k < 256; ++k) {
        const Complex zeta = std::polar(1.0, 2 * M_PI * k / 256);
        const CPoint p1 = d.d1.at(zeta);
        const CPoint p2 = d.d2.at(zeta);
        CHECK(oracle::rho_c(c, p1[0], p1[1]) < 0.0);
        CHECK(oracle::rho_c(c, p2[0], p2[1]) < 0.0);
        // D2(zeta) and D1(-zeta) differ only in the sign of w
        CHECK(oracle::rho_c(c, p2[0], p2[1]) == Approx(oracle::rho_c(c, d.d1.at(-zeta)[0], d.d1.at(-zeta)[1])));
      }
      // the chord from D1(1) to D2(-1) has the boundary point 0 as midpoint
      const CPoint mid = 0.5 * (d.d1.at(1.0) + d.d2.at(-1.0));
      CHECK(std::abs(mid[0]) + std::abs(mid[1]) < 1e-15);
      CHECK(oracle::rho_c(c, d.d1.at(1.0)[0], d.d1.at(1.0)[1]) == Approx(-delta / c / 2));
    }
  }
  const ChordMargin bad = chord_inequality_margin(1.0, 0.5);
  CHECK_FALSE(bad.valid);
}

TEST_CASE("chord profile agrees with the half quadratic") {
  for (const ChordProfilePoint& p : chord_profile(1.5, 0.03, 200)) {
    CHECK(p.rho_over_delta == Approx(p.half_quadratic).epsilon(1e-10));
    CHECK(p.x == Approx(std::cos(p.theta)));
  }
}

TEST_CASE("hull of the counterexample discs leaves the model domain") {
  const CounterexampleDiscs d = construct_counterexample_discs(1.0, 0.05);
  const CriterionReport r = disc_pair_hull_check(DomainSpec::model_e(), d.d1, d.d2);
  CHECK(r.verdict == Verdict::fail);
  REQUIRE(r.witness.has_value());
  CHECK(DomainSpec::model_e().rho(r.witness->point) >= -1e-9);
}

TEST_CASE("hull check passes on the ball and is symmetric in the discs") {
  const DomainSpec b = DomainSpec::ball();
  const Disc d1(CPoint{0.0, 0.0}, CDirection(CPoint{1.0, 0.0}), 0.9);
  const Disc d2(CPoint{0.0, 0.0}, CDirection(CPoint{0.0, 1.0}), 0.9);
  const CriterionReport r = disc_pair_hull_check(b, d1, d2);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.worst_margin == Approx(1.0 - 0.81).epsilon(1e-9));
  const CriterionReport s = disc_pair_hull_check(b, d2, d1);
  CHECK(s.worst_margin == Approx(r.worst_margin).epsilon(1e-12));
  // a disc that leaves D is a precondition failure, not a violation
  const Disc big(CPoint{0.0, 0.0}, CDirection(CPoint{1.0, 0.0}), 1.5);
  CHECK(disc_pair_hull_check(b, big, d2).verdict == Verdict::inconclusive);
}

TEST_CASE("tangential chord witness in the model domain") {
  const DomainSpec e = DomainSpec::model_e();
  const BoundaryPoint p = make_boundary_point(e, CPoint{0.0, 0.0});
  const auto w = tangential_chord_search(e, p, {0.1});
  REQUIRE(w.has_value());
  CHECK(w->interior_margin > 0.0);
  CHECK(w->tangent_residual < 1e-12);
  CHECK(chord_exit_margin(e, p, {0.1}) < 0.0);
  // the ball is strictly convex: every tangent segment leaves it
  const DomainSpec b = DomainSpec::ball();
  const BoundaryPoint q = make_boundary_point(b, CPoint{1.0, 0.0});
  CHECK_FALSE(tangential_chord_search(b, q, default_chord_lengths(1.0)).has_value());
  CHECK(chord_exit_margin(b, q, default_chord_lengths(1.0)) > 0.0);
}

TEST_CASE("triangle midpoint margin") {
  const DomainSpec b = DomainSpec::ball();
  const auto m = triangle_midpoint_margin(b, CPoint{0.95, 0.05}, CPoint{0.97, 0.0}, CPoint{0.95, -0.05});
  REQUIRE(m.has_value());
  CHECK(*m == Approx(1.0 - 0.95 * 0.95).epsilon(1e-12));
  // sides through the deep interior are not admissible
  CHECK_FALSE(triangle_midpoint_margin(b, CPoint{0.95, 0.0}, CPoint{0.0, 0.95}, CPoint{-0.95, 0.0}).has_value());
  CHECK(midpoint_triangle_check(b, {.trials = 200}).verdict == Verdict::pass);
}
