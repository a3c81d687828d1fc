#include <cmath>

#include "doctest.h"
#include "lincvx/curvature.hpp"
#include "lincvx/random.hpp"
#include "oracles.hpp"

using namespace lincvx;
using doctest::Approx;

namespace {

// b22 and a22 from three 1-D second differences of rho / |grad rho| along
// w = s, w = i s and w = e^{i pi/4} s in the tangent line p + w v:
//   f''(0) = 2 (b22 + Re(a22 e^{2 i phi})).
struct OracleSlice {
  double b22;
  Complex a22;
};

OracleSlice oracle_slice(const DomainSpec& d, const CPoint& p, const CPoint& v, double norm) {
  auto second = [&](Complex e) {
    auto f = [&](double s) { return d.rho(p + (e * s) * v) / norm; };
    return oracle::second_difference(f, 0.0, 1e-4);
  };
  const double s0 = second(1.0) / 2;
  const double s90 = second(Complex(0.0, 1.0)) / 2;
  const double s45 = second(std::polar(1.0, M_PI / 4)) / 2;
  const double b22 = 0.5 * (s0 + s90);
  return {b22, Complex(s0 - b22, b22 - s45)};
}

}  // namespace

TEST_CASE("slice coefficient examples") {
  const DomainSpec b = DomainSpec::ball();
  const SliceCoefficients s = slice_second_order(b, make_boundary_point(b, CPoint{1.0, 0.0}), CDirection(CPoint{0.0, 1.0}));
  CHECK(std::abs(s.a22) < 1e-8);
  CHECK(s.b22 == Approx(0.5).epsilon(1e-8));
  CHECK(s.defect == s.b22 - std::abs(s.a22));

  const DomainSpec e = DomainSpec::model_e();
  const SliceCoefficients m = slice_second_order(e, make_boundary_point(e, CPoint{0.0, 0.0}), CDirection(CPoint{0.0, 1.0}));
  CHECK(m.a22.real() == Approx(-1.0).epsilon(1e-8));
  CHECK(std::abs(m.a22.imag()) < 1e-8);
  CHECK(std::abs(m.b22) < 1e-8);
  CHECK(tangential_defect(e, make_boundary_point(e, CPoint{0.0, 0.0})) == Approx(-1.0).epsilon(1e-3));

  CHECK_THROWS_AS(slice_second_order(b, make_boundary_point(b, CPoint{1.0, 0.0}), CDirection(CPoint{1.0, 0.0})), Error);
  const DomainSpec pb = DomainSpec::perturbed_ball(1.0, 2.0, 1.0);
  const BoundaryPoint q = boundary_sample(pb, 1, 3)[0];
  CHECK_THROWS_AS(slice_second_order(pb, q, complex_tangent_basis(pb, q)[0], 0.5), Error);
}

TEST_CASE("slice coefficients are invariant under phase rotation") {
  const DomainSpec d = DomainSpec::perturbed_ball(1.0, 0.5, 1.0);
  for (const BoundaryPoint& p : boundary_sample(d, 20, 3)) {
    const CDirection v = complex_tangent_basis(d, p)[0];
    const SliceCoefficients s0 = slice_second_order(d, p, v);
    const SliceCoefficients s1 = slice_second_order(d, p, CDirection(std::polar(1.0, 0.7) * v.vector()));
    CHECK(std::abs(std::abs(s0.a22) - std::abs(s1.a22)) < 1e-8);
    CHECK(std::abs(s0.b22 - s1.b22) < 1e-8);
  }
}

TEST_CASE("slice coefficients agree with independent second differences") {
  for (const DomainSpec& d : {DomainSpec::ellipsoid({1.0, 0.7, 0.5, 1.2}), DomainSpec::perturbed_ball(1.0, 2.0, 1.0)}) {
    for (const BoundaryPoint& p : boundary_sample(d, 30, 5)) {
      const CDirection v = complex_tangent_basis(d, p)[0];
      const SliceCoefficients s = slice_second_order(d, p, v);
      const OracleSlice o = oracle_slice(d, p.point, v.vector(), s.normalization);
      CHECK(s.b22 == Approx(o.b22).epsilon(1e-5).scale(1.0));
      CHECK(std::abs(s.a22 - o.a22) < 1e-5);
    }
  }
}

TEST_CASE("defect sign on linearly convex domains") {
  for (const DomainSpec& d : {DomainSpec::ball(), DomainSpec::ellipsoid({1.0, 0.7, 0.5, 1.2})}) {
    double worst = INFINITY;
    for (const BoundaryPoint& p : boundary_sample(d, 200, 9)) worst = std::min(worst, tangential_defect(d, p));
    CHECK(worst >= -1e-6);
  }
  for (const BoundaryPoint& p : boundary_sample(DomainSpec::ball(), 20, 1)) {
    CHECK(tangential_defect(DomainSpec::ball(), p) == Approx(0.5).epsilon(1e-7));
  }
  for (double R : {0.5, 2.0, 10.0}) {
    const DomainSpec b = DomainSpec::ball(R);
    const double defect = tangential_defect(b, make_boundary_point(b, CPoint{R, 0.0}));
    CHECK(defect > 0.0);
    CHECK(defect == Approx(0.5 / R).epsilon(1e-6));
  }
}

TEST_CASE("normalization frame on the model domain") {
  for (double c : {1.0, 3.0}) {
    const DomainSpec e = DomainSpec::model_e(c, 0.5);
    const BoundaryPoint p = make_boundary_point(e, CPoint{0.0, 0.0});
    const NormalizationFrame f = lemma_normalization(e, p);
    CHECK(f.ell == Approx(1.0).epsilon(1e-6));
    CHECK(f.c >= 1.0);
    CHECK(std::abs(f.a22_rotated.imag()) < 1e-10);
    CHECK(f.a22_rotated.real() <= 0.0);
    CHECK(frame_containment_excess(e, f) <= 1e-8);
    CHECK(frame_containment_excess(e, f, false) <= 1e-8);
    // p maps to the origin, the gradient to the first axis
    CHECK(f.to_frame(p.point).norm() < 1e-15);
    const CPoint g = f.to_frame(p.point + 1e-3 * p.unit_normal) / 1e-3;
    CHECK(g[0].real() == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(g[0].imag()) + std::abs(g[1]) < 1e-12);
  }
  CHECK_THROWS_AS(lemma_normalization(DomainSpec::ball(), make_boundary_point(DomainSpec::ball(), CPoint{1.0, 0.0})),
                  Error);
}

TEST_CASE("frame round trip and containment on a perturbed ball") {
  const DomainSpec d = DomainSpec::perturbed_ball(1.0, 2.0, 1.0);
  BoundaryPoint worst = boundary_sample(d, 1, 0)[0];
  double defect = INFINITY;
  for (const BoundaryPoint& p : boundary_sample(d, 300, 2)) {
    const double v = tangential_defect(d, p);
    if (v < defect) defect = v, worst = p;
  }
  REQUIRE(defect < 0.0);
  const NormalizationFrame f = lemma_normalization(d, worst);
  CHECK(frame_containment_excess(d, f) <= 1e-8);
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const CPoint x = random_in_box(rng, CPoint(2), 0.3);
    CHECK((f.to_frame(f.to_original(x)) - x).norm() < 1e-13);
  }
  // the counterexample discs mapped back stay inside D
  const CounterexampleDiscs cd = construct_counterexample_discs(f.c, 0.05 / f.c);
  CHECK(max_rho_on_disc(d, f.to_original(cd.d1)) < 0.0);
  CHECK(max_rho_on_disc(d, f.to_original(cd.d2)) < 0.0);
}

TEST_CASE("squared distance examples") {
  const SquaredDistanceField ball(DomainSpec::ball());
  const NearestPoint a = h_eval(ball, CPoint{0.5, 0.0});
  CHECK(a.h == Approx(0.25).epsilon(1e-10));
  CHECK((a.nearest - CPoint{1.0, 0.0}).norm() < 1e-6);
  CHECK(a.unique);
  const NearestPoint c = h_eval(ball, CPoint{0.0, 0.0});
  CHECK(c.h == Approx(1.0).epsilon(1e-10));
  CHECK_FALSE(c.unique);
  CHECK_THROWS_AS(h_holomorphic_gradient(ball, CPoint{0.0, 0.0}), Error);

  const SquaredDistanceField e(DomainSpec::model_e());
  CHECK(h_eval(e, CPoint{-1e-3, 0.0}).h == Approx(1e-6).epsilon(1e-2));

  const CPoint g = h_holomorphic_gradient(ball, CPoint{0.5, 0.0});
  CHECK(g[0].real() == Approx(-0.5).epsilon(1e-8));
  CHECK(std::abs(g[0].imag()) + std::abs(g[1]) < 1e-8);
  CHECK(h_holomorphic_gradient(ball, CPoint{1.0, 0.0}).norm() < 1e-8);
  CHECK(h_eval(ball, CPoint{Complex(0.0, 0.6), 0.8}).h < 1e-20);
}

TEST_CASE("h matches the radial formula and its finite-difference gradient on the ball") {
  const SquaredDistanceField ball(DomainSpec::ball());
  Rng rng(13);
  double worst_h = 0.0, worst_g = 0.0;
  for (int i = 0; i < 100; ++i) {
    const CPoint z = random_unit(rng, 2) * uniform(rng, 0.2, 0.95);
    worst_h = std::max(worst_h, std::abs(ball.h(z) - oracle::sq(1.0 - z.norm())));
    const CPoint hg = h_holomorphic_gradient(ball, z);
    // real gradient 2(z - pi(z)) packs as 2 conj(h'_z)
    const double eps = 1e-5;
    for (std::size_t j = 0; j < 2; ++j) {
      for (Complex unit : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        CPoint dz(2);
        dz[j] = eps * unit;
        const double fd = (ball.h(z + dz) - ball.h(z - dz)) / (2 * eps);
        const double exact = 2.0 * (unit.real() * hg[j].real() - unit.imag() * hg[j].imag());
        worst_g = std::max(worst_g, std::abs(fd - exact));
      }
    }
  }
  CHECK(worst_h < 1e-10);
  CHECK(worst_g < 1e-5);
}

TEST_CASE("hor16 and hor22 margins") {
  const SquaredDistanceField ball(DomainSpec::ball());
  const CPoint z{0.5, 0.0}, w{0.0, 0.5};
  CHECK(hor16_margin(ball, z, w) == Approx(0.75).epsilon(1e-8));
  CHECK(std::abs(hor16_margin(ball, z, z)) < 1e-12);
  CHECK(hor22_margin(ball, z, w) == Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(hor22_margin(ball, z, z)) < 1e-12);
  CHECK_THROWS_AS(hor16_margin(ball, CPoint{1.0, 0.0}, w), Error);

  Rng rng(17);
  double worst16 = INFINITY, worst22 = INFINITY;
  for (int i = 0; i < 300; ++i) {
    const CPoint x = random_unit(rng, 2) * uniform(rng, 0.8, 0.99);
    const CPoint y = random_unit(rng, 2) * uniform(rng, 0.8, 0.99);
    worst16 = std::min(worst16, hor16_margin(ball, x, y));
    worst22 = std::min(worst22, hor22_margin(ball, x, y));
  }
  CHECK(worst16 >= -1e-9);
  CHECK(worst22 >= -1e-9);
}

TEST_CASE("hor17 probe on the ball") {
  const SquaredDistanceField ball(DomainSpec::ball());
  const std::vector<double> v = hor17_probe(ball, CPoint{0.5, 0.0}, {0.1, 0.05, 0.025});
  REQUIRE(v.size() == 3);
  for (double x : v) CHECK(x <= 1e-3);
  CHECK(v[1] < v[0]);
  CHECK(v[2] < v[1]);
}

TEST_CASE("hor26 margins on the ball") {
  const SquaredDistanceField ball(DomainSpec::ball());
  CHECK(std::abs(hor26_margin(ball, CPoint{0.5, 0.0}, CPoint{1.0, 0.0})) < 1e-5);
  CHECK(hor26_margin(ball, CPoint{0.5, 0.0}, CPoint{0.0, 1.0}) == Approx(4.0).epsilon(1e-4).scale(1.0));
  CHECK(hor26_margin(ball, CPoint{0.5, 0.0}, CPoint{0.0, 0.0}) == 0.0);
  // radial equality at 20 radii
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double r = 0.2 + 0.035 * k;
    const CPoint u{Complex(0.6, 0.0), Complex(0.0, 0.8)};
    worst = std::max(worst, std::abs(hor26_margin(ball, r * u, u)));
  }
  CHECK(worst < 1e-5);
}
