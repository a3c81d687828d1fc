#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lincvx/directional.hpp"
#include "lincvx/domains.hpp"
#include "lincvx/report.hpp"

namespace lincvx {

// Closed affine complex disc {center + lambda * direction : |lambda| <= radius}.
struct Disc {
  CPoint center;
  CDirection direction;
  double radius;

  Disc(CPoint c, CDirection d, double r);

  // center + zeta * radius * direction, |zeta| <= 1.
  CPoint at(Complex zeta) const { return center + (zeta * radius) * direction.vector(); }
};

// Largest rho over the closed disc, sampled on `phases` boundary phases and
// on interior rings at 3/4, 1/2, 1/4 of the radius plus the center.
double max_rho_on_disc(const DomainSpec& domain, const Disc& disc, int phases = 64);

struct HullGrid {
  int t_steps = 33;
  int phases1 = 64;
  int phases2 = 64;
  bool dense = false;  // also sample |lambda_i| in {1/3, 2/3}
  unsigned workers = 1;
};

// Samples the convex hull of two discs with common center,
//   center + t lambda1 r1 X1 + (1 - t) lambda2 r2 X2,
// and fails if any sample has rho >= -tol. The witness is the sample with
// the largest rho, ties broken by lowest grid index. If a disc itself is not
// inside D the verdict is inconclusive (precondition violated).
CriterionReport disc_pair_hull_check(const DomainSpec& domain, const Disc& d1, const Disc& d2,
                                     const HullGrid& grid = {}, double tol = 1e-9);

struct CounterexampleDiscs {
  Disc d1;
  Disc d2;
  double mu;
};

double chord_discriminant(double c, double delta);

// Discs D1 = {(-delta(1 - zeta), delta zeta / mu)} and
// D2 = {(-delta(1 + zeta), delta zeta / mu)}, mu = sqrt(2 c delta), inside
// the model domain rho_c < 0 whenever the discriminant is negative.
CounterexampleDiscs construct_counterexample_discs(double c, double delta);

struct ChordMargin {
  double disc_margin;     // max over theta of rho_c / delta on the boundary of D1
  double discriminant;    // 4 c^2 delta^2 + 4 delta - 1/c
  double quadratic_max;   // max over [-1, 1] of -1 + 4c delta + 2(1 - 2c delta)x - (1 + 1/c)x^2
  bool valid;             // all three negative
};

ChordMargin chord_inequality_margin(double c, double delta, int samples = 1024);

struct ChordProfilePoint {
  double theta;
  double rho_over_delta;  // rho_c(D1(e^{i theta})) / delta
  double x;               // cos theta
  double half_quadratic;  // quadratic(x) / 2, equal to rho_over_delta
};

std::vector<ChordProfilePoint> chord_profile(double c, double delta, int samples);

struct ChordWitness {
  CPoint boundary_point;
  CPoint endpoint_a;
  CPoint endpoint_b;
  double interior_margin;   // min of -rho over the sampled segment points (midpoint excluded)
  double half_length;
  double phase;
  double tangent_residual;  // |sum_j (d rho/d z_j) v_j| / |d rho|
};

inline std::vector<double> default_chord_lengths(double scale) {
  return {0.2 * scale, 0.1 * scale, 0.05 * scale, 0.02 * scale};
}

// Looks for a segment [a, b] in T^C(p) with midpoint p and [a, b] \ {p}
// inside D. Tries every half-length (outer loop) and phase phi in [0, pi)
// (inner loop), sampling `samples_per_side` points on each half.
std::optional<ChordWitness> tangential_chord_search(const DomainSpec& domain, const BoundaryPoint& p,
                                                    const std::vector<double>& lengths, int phases = 32,
                                                    int samples_per_side = 64);

// Smallest, over the same segments, of the largest rho on the segment
// (midpoint excluded). Negative iff tangential_chord_search finds a witness.
double chord_exit_margin(const DomainSpec& domain, const BoundaryPoint& p, const std::vector<double>& lengths,
                         int phases = 32, int samples_per_side = 64);

// -rho at the midpoint of [a, b] if the sides [a, d] and [d, b] lie in the
// shell part D cap U (64 points per side), nullopt otherwise.
std::optional<double> triangle_midpoint_margin(const DomainSpec& domain, const CPoint& a, const CPoint& d,
                                               const CPoint& b, int points_per_side = 64);

// Real convexity via the midpoint-of-triangle property on D cap U. Inconclusive
// when no admissible triangle is found in the sampling budget.
CriterionReport midpoint_triangle_check(const DomainSpec& domain, const CheckOptions& opts);

}  // namespace lincvx
