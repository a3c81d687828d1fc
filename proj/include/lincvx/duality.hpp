#pragma once

#include <cstdint>
#include <vector>

#include "lincvx/cpoint.hpp"
#include "lincvx/report.hpp"

namespace lincvx {

struct CenteredDisc {
  CDirection direction;
  double radius;
};

// K = union of the closed discs {center + lambda r X : |lambda| <= 1} in C^2.
class CenteredDiscSystem {
 public:
  CenteredDiscSystem(CPoint center, std::vector<CenteredDisc> discs);

  // center 0, directions e1 and e2, radii 1
  static CenteredDiscSystem canonical();

  const CPoint& center() const { return center_; }
  const std::vector<CenteredDisc>& discs() const { return discs_; }

  // Image under z -> L z + b, L given by rows.
  CenteredDiscSystem transformed(const std::array<std::array<Complex, 2>, 2>& L, const CPoint& b) const;

 private:
  CPoint center_;
  std::vector<CenteredDisc> discs_;
};

// max_k r_k |a . X_k| with the bilinear pairing a . X = a1 X1 + a2 X2. The
// polar set K* is {a : polar_gauge(a) < 1}; a pairs with z - center.
double polar_gauge(const CenteredDiscSystem& system, const CPoint& a);

struct DoublePolar {
  bool inside;
  double sup_value;  // +inf when z - center leaves the span of the directions
};

// sup{|a . (z - center)| : polar_gauge(a) <= 1}; inside iff sup_value <= 1.
DoublePolar double_polar_membership(const CenteredDiscSystem& system, const CPoint& z);

// Is z - center = t r1 l1 X1 + (1 - t) r2 l2 X2 for some t in [0, 1], |l_i| <= 1?
// Systems of one disc test membership in that disc.
bool convex_hull_membership(const CenteredDiscSystem& system, const CPoint& z);

struct HullSampling {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  double band = 1e-6;
  unsigned workers = 1;
};

// Agreement of convex_hull_membership and double_polar_membership on points
// of the box center + [-1.2 e, 1.2 e]^4, e the largest r_k |X_k|. Points with
// |sup_value - 1| < band are skipped. Margins are +-|sup_value - 1|.
CriterionReport hulls_coincide_check(const CenteredDiscSystem& system, const HullSampling& opts = {});

}  // namespace lincvx
