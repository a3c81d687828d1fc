#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lincvx/cpoint.hpp"
#include "lincvx/expression.hpp"

namespace lincvx {

enum class Family { ball, ellipsoid, modelE, perturbed_ball, custom };

const char* to_string(Family f);
Family family_from_string(const std::string& s);

// A bounded domain {rho < 0} in C^n given by a defining function.
//
// Builtin families (parameters in brackets, defaults in parentheses):
//   ball           |z|^2 - R^2                                        [R (1), n (2)]
//   ellipsoid      sum_j (x_j/a_j)^2 + (y_j/b_j)^2 - 1                 [a1 b1 ... (1), n (2)]
//   modelE         max(Re z - (Re w)^2 + c|z|^2 + c(Im w)^2, |.|^2 - r^2)  [c (1), r (0.5)]
//   perturbed_ball |z|^2 - R^2 + k((Re z_n)^2 - (Im z_n)^2) + q (Im z_n)^4  [R (1), k (0.5), q (1)]
//   custom         a parsed Expression
//
// The shell U = {|rho| < shell_width * scale} is the boundary neighborhood
// used by the shell-restricted checks. All tolerances are multiplied by
// scale() = bounding_radius.
class DomainSpec {
 public:
  static DomainSpec ball(double radius = 1.0, std::size_t n = 2);
  static DomainSpec ellipsoid(const std::vector<double>& semi_axes);
  static DomainSpec model_e(double c = 1.0, double r = 0.5);
  static DomainSpec perturbed_ball(double radius = 1.0, double k = 0.5, double q = 1.0);
  static DomainSpec custom(const std::string& expression, const std::map<std::string, double>& params,
                           double bounding_radius, const CPoint& anchor);

  // Generic constructor used by the spec-file loader. Missing geometry
  // (bounding radius, anchor) falls back to family defaults.
  static DomainSpec make(Family family, const std::map<std::string, double>& params,
                         std::optional<double> bounding_radius, std::optional<double> shell_width,
                         std::optional<CPoint> anchor, const std::string& expression = {});

  Family family() const { return family_; }
  const std::map<std::string, double>& params() const { return params_; }
  double param(const std::string& key) const;
  double bounding_radius() const { return bounding_radius_; }
  double shell_width() const { return shell_width_; }
  double scale() const { return bounding_radius_; }
  const CPoint& anchor() const { return anchor_; }
  std::size_t dim() const { return anchor_.dim(); }
  const std::string& expression_text() const;

  DomainSpec with_shell_width(double w) const;

  // Raw defining function; no dimension check. Prefer rho_eval.
  double rho(const CPoint& z) const;

  // Closed-form real gradient for builtins (packed as d/dx_j + i d/dy_j);
  // nullopt for custom domains.
  std::optional<CPoint> closed_form_gradient(const CPoint& z) const;

  // modelE only: residuals of the two boundary pieces (rho_c, clipping sphere).
  std::pair<double, double> model_pieces(const CPoint& z) const;

 private:
  DomainSpec() = default;
  void validate() const;

  Family family_ = Family::ball;
  std::map<std::string, double> params_;
  double bounding_radius_ = 1.0;
  double shell_width_ = 0.2;
  CPoint anchor_;
  std::shared_ptr<const Expression> expression_;
  // Cached parameters for the hot path.
  double p0_ = 0.0, p1_ = 0.0, p2_ = 0.0;
  std::array<double, 2 * kMaxDim> inv_axes_sq_{};
};

// Pure model function rho_c(z, w) = Re z - (Re w)^2 + c|z|^2 + c(Im w)^2.
double model_rho_c(double c, const CPoint& zw);

struct BoundaryPoint {
  CPoint point;
  CPoint unit_normal;  // real unit normal, packed
  double residual = 0.0;
};

enum class Membership { inside, boundary, outside };
const char* to_string(Membership m);

double rho_eval(const DomainSpec& domain, const CPoint& z);

// Closed form for builtins; central differences with step 1e-5 * scale for
// custom domains.
CPoint rho_gradient(const DomainSpec& domain, const CPoint& z);
CPoint finite_difference_gradient(const DomainSpec& domain, const CPoint& z, double step);

// Holomorphic gradient (d rho / d z_j) = (d/dx_j - i d/dy_j) rho / 2.
CPoint holomorphic_gradient(const DomainSpec& domain, const CPoint& z);

Membership membership(const DomainSpec& domain, const CPoint& z, double tol);

inline constexpr double kMinGradientNorm = 1e-6;
inline constexpr double kBoundaryTolerance = 1e-10;
inline constexpr int kBisectionIterations = 60;  // cap on refinement steps

// First boundary crossing along origin + t * dir, t in (0, t_max], found by
// marching `steps` uniform steps and refining the first sign change by false position.
// nullopt when rho stays negative up to t_max. Requires rho(origin) < 0.
std::optional<double> first_exit(const DomainSpec& domain, const CPoint& origin, const CPoint& dir, double t_max,
                                 int steps = 64);

// n boundary points from random rays out of the anchor (deterministic in seed).
std::vector<BoundaryPoint> boundary_sample(const DomainSpec& domain, std::size_t n, std::uint64_t seed);

// Builds a BoundaryPoint at p (which should already lie on the boundary).
BoundaryPoint make_boundary_point(const DomainSpec& domain, const CPoint& p);

// Newton projection onto {rho = 0} along the gradient.
BoundaryPoint project_to_boundary(const DomainSpec& domain, const CPoint& z);

// Orthonormal basis (Hermitian) of T^C(p): vectors v with sum_j (d rho/d z_j) v_j = 0.
std::vector<CDirection> complex_tangent_basis(const DomainSpec& domain, const BoundaryPoint& p);

}  // namespace lincvx
