#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "lincvx/discs.hpp"
#include "lincvx/domains.hpp"

namespace lincvx {

// Second-order coefficients of the normalized defining function
// rho~ = rho / |grad rho(p)| on the complex tangent line p + w v:
//   rho~(p + w v) - rho~(p) = b22 |w|^2 + Re(a22 w^2) + o(|w|^2).
struct SliceCoefficients {
  Complex a22;
  double b22 = 0.0;
  double defect = 0.0;         // b22 - |a22|
  double normalization = 0.0;  // |grad rho(p)|
};

// Fourier extraction at 8 phases and radii {step, step/2}, Richardson
// extrapolated. step defaults to 1e-3 * scale.
SliceCoefficients slice_second_order(const DomainSpec& domain, const BoundaryPoint& p, const CDirection& w_dir,
                                     double step = 0.0);

// b22 - |a22| along the complex tangent line at p (n = 2). Negative values
// certify a failure of linear convexity at p.
double tangential_defect(const DomainSpec& domain, const BoundaryPoint& p);
SliceCoefficients tangential_slice(const DomainSpec& domain, const BoundaryPoint& p);

// Affine unitary-plus-scaling chart (z, w) -> p + z N + (w / w_scale) v in
// which the domain contains E = {rho_c < 0} cap B(0, r).
struct NormalizationFrame {
  CPoint origin;    // p
  CPoint normal;    // unit complex normal N (real gradient direction)
  CPoint tangent;   // unit complex tangent v, phase-rotated so a22 is real and <= 0
  double w_scale = 1.0;  // sqrt(ell / 3)
  double gradient_norm = 1.0;
  double ell = 0.0;
  double c = 1.0;
  double r = 0.0;
  double c_fit = 0.0;  // raw fitted second-order bound before max(1, .) + 0.1
  Complex a22_rotated;
  double b22 = 0.0;

  CPoint to_original(const CPoint& zw) const;
  CPoint to_frame(const CPoint& x) const;
  // rho(to_original(zw)) / |grad rho(p)|
  double pushed_rho(const DomainSpec& domain, const CPoint& zw) const;
  Disc to_original(const Disc& d) const;
};

struct NormalizationOptions {
  double initial_radius = 0.0;  // 0: 0.25 * scale
  int max_halvings = 8;
  double safety = 0.1;
};

NormalizationFrame lemma_normalization(const DomainSpec& domain, const BoundaryPoint& p,
                                       const NormalizationOptions& opts = {});

// Largest rho~_F - rho_c over a 32^3 Hopf-angle grid at four radii of B(0, r),
// offset from the fitting grid. <= 1e-8 means the containment holds there.
double frame_containment_excess(const DomainSpec& domain, const NormalizationFrame& frame, bool offset_grid = true);

struct NearestPoint {
  double h = 0.0;      // squared distance to the boundary
  CPoint nearest;      // pi(z)
  bool unique = true;
};

// h(z) = inf_{w in boundary} |z - w|^2 by multi-start projected descent from
// 64 boundary samples. Results are memoized per point (thread safe).
class SquaredDistanceField {
 public:
  explicit SquaredDistanceField(DomainSpec domain, std::size_t starts = 64, std::uint64_t seed = 0x5eed);

  const DomainSpec& domain() const { return domain_; }
  NearestPoint eval(const CPoint& z) const;
  double h(const CPoint& z) const { return eval(z).h; }

 private:
  NearestPoint compute(const CPoint& z) const;

  DomainSpec domain_;
  std::vector<CPoint> seeds_;
  mutable std::mutex mutex_;
  mutable std::map<std::vector<double>, NearestPoint> cache_;
};

NearestPoint h_eval(const SquaredDistanceField& field, const CPoint& z);

// dh/dz_j = conj(z_j - pi_j(z)); requires a unique nearest point.
CPoint h_holomorphic_gradient(const SquaredDistanceField& field, const CPoint& z);

// RHS - LHS of h(w) <= h(z) + 2 Re<w - z, h'_z> + |<w - z, h'_z>|^2 / h(z),
// <u, v> = sum u_j v_j.
double hor16_margin(const SquaredDistanceField& field, const CPoint& z, const CPoint& w);

// For each radius r: max over `samples` w with |w| = r (closed under w -> -w) of
//   (h(z + w) - h(z) - 2 Re<w, h'_z> - |<w, h'_z>|^2 / h(z)) / |w|^2.
std::vector<double> hor17_probe(const SquaredDistanceField& field, const CPoint& z, const std::vector<double>& radii,
                                int samples = 256, std::uint64_t seed = 17);

// RHS - LHS of g(y) <= g(x) + <y - x, g'(x)> + |y - x|^2 |g'(x)|^2 / (4 g(x)), g = h.
double hor22_margin(const SquaredDistanceField& field, const CPoint& x, const CPoint& y);

// |v|^2 |g'|^2 / (2 g) - <g'' v, v>, second derivative by Richardson-extrapolated
// central differences with steps step and step/2 (step defaults to 1e-3 * scale).
double hor26_margin(const SquaredDistanceField& field, const CPoint& z, const CPoint& v, double step = 0.0);

}  // namespace lincvx
