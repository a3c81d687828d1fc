#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lincvx/domains.hpp"
#include "lincvx/report.hpp"

namespace lincvx {

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();
inline constexpr int kThetaGrid = 128;

// d_D(z, X) together with the phase theta of the nearest exit z + d e^{i theta} X.
struct GaugeSample {
  CPoint base;
  CPoint direction;
  double distance = kInfiniteDistance;  // +inf when the complex line never leaves D
  double gauge = 0.0;                   // 1 / distance, 0 when distance is infinite
  double phase = 0.0;

  bool finite() const { return std::isfinite(distance); }
};

// Smallest t > 0 with z + t e^{i theta} X on the boundary; +inf if the ray
// stays inside the bounding radius.
double ray_exit_distance(const DomainSpec& domain, const CPoint& z, const CDirection& X, double theta);

// d_D(z, X): minimum over theta of ray_exit_distance on a 128-point grid,
// refined by golden-section search in the cells around the 3 smallest values.
GaugeSample directional_distance(const DomainSpec& domain, const CPoint& z, const CDirection& X);

// 1 / d_D(z, X), the Minkowski function of D_z - z.
double minkowski_gauge(const DomainSpec& domain, const CPoint& z, const CPoint& X);

struct CheckOptions {
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  unsigned workers = 1;
};

// Worst of gauge(X) + gauge(Y) - gauge(X + Y) over random pairs (and the
// explicit pairs, evaluated after the random ones). Fails below -tol.
CriterionReport gauge_subadditivity_check(const DomainSpec& domain, const CPoint& z, const CheckOptions& opts,
                                          std::span<const std::pair<CPoint, CPoint>> explicit_pairs = {});

// Convexity of the indicatrix D_z. For w1, w2 with gauges g1, g2 the sublevel
// set {gauge < max(g1, g2)} is a dilate of D_z, so the margin
// max(g1, g2) - gauge(midpoint - z) must be nonnegative. Random pairs are
// drawn with gauges uniform in (0, 1), i.e. inside D_z.
CriterionReport indicatrix_midpoint_check(const DomainSpec& domain, const CPoint& z, const CheckOptions& opts,
                                          std::span<const std::pair<CPoint, CPoint>> explicit_points = {});

}  // namespace lincvx
