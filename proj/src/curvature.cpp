#include "lincvx/curvature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "lincvx/random.hpp"

namespace lincvx {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr int kSlicePhases = 8;
constexpr double kTangentResidual = 1e-8;
constexpr double kExtrapolationDisagreement = 1e-3;
constexpr double kContainmentSlack = 1e-8;
constexpr int kHopfGrid = 32;

std::pair<double, Complex> slice_modes(const DomainSpec& domain, const CPoint& p, const CPoint& v, double rho0,
                                       double gn, double eps) {
  double c0 = 0.0;
  Complex c2 = 0.0;
  for (int k = 0; k < kSlicePhases; ++k) {
    const double theta = kTwoPi * k / kSlicePhases;
    const double val = (domain.rho(p + std::polar(eps, theta) * v) - rho0) / (gn * eps * eps);
    c0 += val / kSlicePhases;
    c2 += val * std::polar(1.0, -2.0 * theta) / static_cast<double>(kSlicePhases);
  }
  return {c0, c2};
}

CPoint hopf_point(double radius, double eta, double xi1, double xi2) {
  return CPoint{std::polar(radius * std::cos(eta), xi1), std::polar(radius * std::sin(eta), xi2)};
}

// Visits a kHopfGrid^3 grid of (eta, xi1, xi2) at four radius fractions of r.
template <class Fn>
void for_each_ball_sample(double r, bool offset, Fn&& fn) {
  const std::array<double, 4> fit_radii{0.25, 0.5, 0.75, 1.0};
  const std::array<double, 4> offset_radii{0.125, 0.375, 0.625, 0.875};
  for (double fr : offset ? offset_radii : fit_radii) {
    for (int i = 0; i < kHopfGrid; ++i) {
      const double eta = offset ? (i + 0.5) * (M_PI / 2.0) / kHopfGrid : i * (M_PI / 2.0) / (kHopfGrid - 1);
      for (int j = 0; j < kHopfGrid; ++j) {
        const double xi1 = kTwoPi * (j + (offset ? 0.5 : 0.0)) / kHopfGrid;
        for (int k = 0; k < kHopfGrid; ++k) {
          const double xi2 = kTwoPi * (k + (offset ? 0.5 : 0.0)) / kHopfGrid;
          fn(hopf_point(fr * r, eta, xi1, xi2));
        }
      }
    }
  }
}

}  // namespace

SliceCoefficients slice_second_order(const DomainSpec& domain, const BoundaryPoint& p, const CDirection& w_dir,
                                     double step) {
  if (!(step > 0.0)) step = 1e-3 * domain.scale();
  const CPoint G = rho_gradient(domain, p.point);
  const double gn = G.norm();
  if (!(gn > kMinGradientNorm)) throw Error(ErrorCode::degenerate_boundary, "gradient vanishes at " + to_string(p.point));
  const CPoint v = w_dir.normalized().vector();
  v.check_same(p.point);
  const double residual = std::abs(bilinear(conj(G), v)) / gn;
  if (residual > kTangentResidual) {
    throw Error(ErrorCode::not_tangent, "orthogonality residual " + std::to_string(residual));
  }

  const double rho0 = domain.rho(p.point);
  const auto [c0_full, c2_full] = slice_modes(domain, p.point, v, rho0, gn, step);
  const auto [c0_half, c2_half] = slice_modes(domain, p.point, v, rho0, gn, 0.5 * step);
  const double disagreement = std::abs(c0_full - c0_half) + 2.0 * std::abs(c2_full - c2_half);
  if (disagreement > kExtrapolationDisagreement) {
    throw Error(ErrorCode::step_too_large, "coefficient change " + std::to_string(disagreement) + " between step and step/2");
  }

  SliceCoefficients s;
  s.b22 = (4.0 * c0_half - c0_full) / 3.0;
  s.a22 = 2.0 * (4.0 * c2_half - c2_full) / 3.0;
  s.defect = s.b22 - std::abs(s.a22);
  s.normalization = gn;
  return s;
}

SliceCoefficients tangential_slice(const DomainSpec& domain, const BoundaryPoint& p) {
  if (domain.dim() != 2) throw Error(ErrorCode::wrong_dimension, "tangential defect is defined for n = 2");
  const std::vector<CDirection> basis = complex_tangent_basis(domain, p);
  return slice_second_order(domain, p, basis.front());
}

double tangential_defect(const DomainSpec& domain, const BoundaryPoint& p) {
  return tangential_slice(domain, p).defect;
}

CPoint NormalizationFrame::to_original(const CPoint& zw) const {
  return origin + zw[0] * normal + (zw[1] / w_scale) * tangent;
}

CPoint NormalizationFrame::to_frame(const CPoint& x) const {
  const CPoint d = x - origin;
  return CPoint{herm(d, normal), w_scale * herm(d, tangent)};
}

double NormalizationFrame::pushed_rho(const DomainSpec& domain, const CPoint& zw) const {
  return domain.rho(to_original(zw)) / gradient_norm;
}

Disc NormalizationFrame::to_original(const Disc& d) const {
  const CPoint& X = d.direction.vector();
  const CPoint image_dir = X[0] * normal + (X[1] / w_scale) * tangent;
  return Disc(to_original(d.center), CDirection(image_dir), d.radius);
}

double frame_containment_excess(const DomainSpec& domain, const NormalizationFrame& frame, bool offset_grid) {
  double worst = -std::numeric_limits<double>::infinity();
  for_each_ball_sample(frame.r, offset_grid, [&](const CPoint& zw) {
    worst = std::max(worst, frame.pushed_rho(domain, zw) - model_rho_c(frame.c, zw));
  });
  return worst;
}

NormalizationFrame lemma_normalization(const DomainSpec& domain, const BoundaryPoint& p,
                                       const NormalizationOptions& opts) {
  const SliceCoefficients sc = tangential_slice(domain, p);
  if (!(sc.defect < 0.0)) {
    throw Error(ErrorCode::nothing_to_normalize, "tangential defect " + std::to_string(sc.defect) + " is not negative");
  }
  const CDirection v = complex_tangent_basis(domain, p).front();
  const double phi = (M_PI - std::arg(sc.a22)) / 2.0;

  NormalizationFrame f;
  f.origin = p.point;
  const CPoint G = rho_gradient(domain, p.point);
  f.gradient_norm = G.norm();
  f.normal = G / f.gradient_norm;
  f.tangent = std::polar(1.0, phi) * v.vector();
  f.a22_rotated = sc.a22 * std::polar(1.0, 2.0 * phi);
  f.b22 = sc.b22;
  f.ell = -sc.defect;
  f.w_scale = std::sqrt(f.ell / 3.0);

  double r = opts.initial_radius > 0.0 ? opts.initial_radius : 0.25 * domain.scale();
  for (int attempt = 0; attempt <= opts.max_halvings; ++attempt, r *= 0.5) {
    f.r = r;
    // Smallest c with rho~_F - Re z + (Re w)^2 <= c (|z|^2 + (Im w)^2) on the grid.
    double c_fit = -std::numeric_limits<double>::infinity();
    bool axis_violation = false;
    for_each_ball_sample(r, false, [&](const CPoint& zw) {
      const double num = f.pushed_rho(domain, zw) - zw[0].real() + zw[1].real() * zw[1].real();
      const double den = std::norm(zw[0]) + zw[1].imag() * zw[1].imag();
      const double size = zw.norm_sq();
      if (den <= 1e-10 * size) {
        if (num > 1e-10 * size) axis_violation = true;
        return;
      }
      c_fit = std::max(c_fit, num / den);
    });
    if (axis_violation || !(c_fit < 1e8)) continue;
    f.c_fit = c_fit;
    f.c = std::max(1.0, c_fit) + opts.safety;
    if (frame_containment_excess(domain, f, true) <= kContainmentSlack &&
        frame_containment_excess(domain, f, false) <= kContainmentSlack) {
      return f;
    }
  }
  throw Error(ErrorCode::containment_failed,
              "no radius in the halving ladder gives rho~ <= rho_c at " + to_string(p.point));
}

// ---------------------------------------------------------------------------
// Squared distance to the boundary.

namespace {

constexpr int kDescentIterations = 400;

std::optional<CPoint> newton_project(const DomainSpec& domain, CPoint w) {
  const double tol = 1e-15 * domain.scale();
  for (int it = 0; it < 30; ++it) {
    const double r = domain.rho(w);
    if (std::abs(r) <= tol) return w;
    const CPoint g = rho_gradient(domain, w);
    const double gsq = g.norm_sq();
    if (!(gsq > kMinGradientNorm * kMinGradientNorm)) return std::nullopt;
    w -= (r / gsq) * g;
  }
  return std::abs(domain.rho(w)) <= 1e-12 * domain.scale() ? std::optional<CPoint>(w) : std::nullopt;
}

struct Descent {
  double h;
  CPoint w;
  bool converged;
};

// Projected steepest descent of |z - w|^2 over the boundary. The step
// length comes from a parabola through h(0), h'(0) and h(alpha).
Descent descend(const DomainSpec& domain, const CPoint& z, CPoint w) {
  const double tol = 1e-10 * domain.scale();
  double alpha = 1.0;
  double h = (z - w).norm_sq();
  for (int it = 0; it < kDescentIterations; ++it) {
    const CPoint g = rho_gradient(domain, w);
    const double gn = g.norm();
    if (!(gn > kMinGradientNorm)) break;
    const CPoint nhat = g / gn;
    const CPoint d = z - w;
    const CPoint tang = d - real_dot(d, nhat) * nhat;
    const double tsq = tang.norm_sq();
    if (std::sqrt(tsq) <= tol) return {h, w, true};
    bool moved = false;
    for (; alpha > 1e-8 && !moved; alpha *= 0.5) {
      const auto c1 = newton_project(domain, w + alpha * tang);
      if (!c1) continue;
      CPoint best = *c1;
      double best_h = (z - *c1).norm_sq();
      double best_alpha = alpha;
      const double curvature = (best_h - h + 2.0 * tsq * alpha) / (alpha * alpha);
      if (curvature > 0.0) {
        const double a_star = std::clamp(tsq / curvature, 0.1 * alpha, 10.0 * alpha);
        if (const auto c2 = newton_project(domain, w + a_star * tang)) {
          const double h2 = (z - *c2).norm_sq();
          if (h2 < best_h) {
            best = *c2;
            best_h = h2;
            best_alpha = a_star;
          }
        }
      }
      if (best_h < h) {
        w = best;
        h = best_h;
        moved = true;
        alpha = 2.0 * best_alpha;  // halved by the loop increment
      }
    }
    // h stalls at rounding level once the tangential residual is ~sqrt(eps).
    if (!moved) return {h, w, std::sqrt(tsq) <= 1e-7 * domain.scale()};
  }
  return {h, w, false};
}

}  // namespace

SquaredDistanceField::SquaredDistanceField(DomainSpec domain, std::size_t starts, std::uint64_t seed)
    : domain_(std::move(domain)) {
  for (const BoundaryPoint& bp : boundary_sample(domain_, starts, seed)) seeds_.push_back(bp.point);
}

NearestPoint SquaredDistanceField::eval(const CPoint& z) const {
  if (z.dim() != domain_.dim()) throw Error(ErrorCode::wrong_dimension, "h_eval point dimension mismatch");
  std::vector<double> key = z.reals();
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  NearestPoint result = compute(z);
  std::lock_guard lock(mutex_);
  if (cache_.size() > 200000) cache_.clear();
  cache_.emplace(std::move(key), result);
  return result;
}

NearestPoint SquaredDistanceField::compute(const CPoint& z) const {
  std::vector<Descent> minima;
  minima.reserve(seeds_.size());
  std::optional<Descent> best_any;
  for (const CPoint& s : seeds_) {
    Descent d = descend(domain_, z, s);
    if (!best_any || d.h < best_any->h) best_any = d;
    if (d.converged) minima.push_back(std::move(d));
  }
  NearestPoint out;
  if (minima.empty()) {
    out.h = best_any->h;
    out.nearest = best_any->w;
    out.unique = false;
    return out;
  }
  const auto best = std::min_element(minima.begin(), minima.end(), [](const Descent& a, const Descent& b) { return a.h < b.h; });
  out.h = best->h;
  out.nearest = best->w;
  const double scale = domain_.scale();
  for (const Descent& m : minima) {
    if (std::abs(m.h - best->h) <= 1e-8 * scale * scale && distance(m.w, best->w) > 1e-3 * scale) {
      out.unique = false;
      break;
    }
  }
  return out;
}

NearestPoint h_eval(const SquaredDistanceField& field, const CPoint& z) { return field.eval(z); }

namespace {

NearestPoint differentiable_point(const SquaredDistanceField& field, const CPoint& z) {
  NearestPoint e = field.eval(z);
  if (!e.unique) throw Error(ErrorCode::non_unique_nearest, "h is not differentiable at " + to_string(z));
  return e;
}

NearestPoint positive_point(const SquaredDistanceField& field, const CPoint& z) {
  NearestPoint e = differentiable_point(field, z);
  const double scale = field.domain().scale();
  if (!(e.h > 1e-24 * scale * scale)) throw Error(ErrorCode::on_boundary, "h vanishes at " + to_string(z));
  return e;
}

}  // namespace

CPoint h_holomorphic_gradient(const SquaredDistanceField& field, const CPoint& z) {
  const NearestPoint e = differentiable_point(field, z);
  return conj(z - e.nearest);
}

double hor16_margin(const SquaredDistanceField& field, const CPoint& z, const CPoint& w) {
  const NearestPoint ez = positive_point(field, z);
  const CPoint hp = conj(z - ez.nearest);
  const Complex pair = bilinear(w - z, hp);
  const double rhs = ez.h + 2.0 * pair.real() + std::norm(pair) / ez.h;
  return rhs - field.h(w);
}

std::vector<double> hor17_probe(const SquaredDistanceField& field, const CPoint& z, const std::vector<double>& radii,
                                int samples, std::uint64_t seed) {
  const NearestPoint ez = positive_point(field, z);
  const CPoint hp = conj(z - ez.nearest);
  Rng rng(mix_seed(seed, 0));
  std::vector<CPoint> dirs;
  const int half = std::max(1, samples / 2);
  for (int k = 0; k < half; ++k) {
    const CPoint u = random_unit(rng, z.dim());
    dirs.push_back(u);
    dirs.push_back(-u);
  }
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const CPoint& u : dirs) {
      const CPoint w = r * u;
      const Complex pair = bilinear(w, hp);
      const double bracket = field.h(z + w) - ez.h - 2.0 * pair.real() - std::norm(pair) / ez.h;
      worst = std::max(worst, bracket / (r * r));
    }
    out.push_back(worst);
  }
  return out;
}

double hor22_margin(const SquaredDistanceField& field, const CPoint& x, const CPoint& y) {
  const NearestPoint ex = positive_point(field, x);
  const CPoint gp = 2.0 * (x - ex.nearest);
  const CPoint d = y - x;
  const double rhs = ex.h + real_dot(d, gp) + 0.25 * d.norm_sq() * gp.norm_sq() / ex.h;
  return rhs - field.h(y);
}

double hor26_margin(const SquaredDistanceField& field, const CPoint& z, const CPoint& v, double step) {
  const double vn = v.norm();
  if (vn == 0.0) return 0.0;
  const DomainSpec& domain = field.domain();
  if (!(step > 0.0)) step = 1e-3 * domain.scale();
  const NearestPoint ez = positive_point(field, z);

  auto g = [&](const CPoint& x) {
    if (!(domain.rho(x) < 0.0)) throw Error(ErrorCode::on_boundary, "second-difference stencil leaves the domain");
    const double h = field.h(x);
    if (!(h > 0.0)) throw Error(ErrorCode::on_boundary, "g vanishes within the stencil");
    return h;
  };
  auto second_difference = [&](double t) {
    return (g(z + t * v) - 2.0 * ez.h + g(z - t * v)) / (t * t);
  };
  const double t = step / vn;
  const double d_full = second_difference(t);
  const double d_half = second_difference(0.5 * t);
  const double hessian_vv = (4.0 * d_half - d_full) / 3.0;
  const double gp_sq = 4.0 * (z - ez.nearest).norm_sq();
  return 0.5 * v.norm_sq() * gp_sq / ez.h - hessian_vv;
}

}  // namespace lincvx
