#include "lincvx/domains.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "lincvx/random.hpp"

namespace lincvx {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::wrong_dimension: return "wrong dimension";
    case ErrorCode::unknown_family: return "unknown family";
    case ErrorCode::spec_parse: return "spec parse error";
    case ErrorCode::degenerate_boundary: return "degenerate boundary";
    case ErrorCode::sampling_failed: return "sampling failed";
    case ErrorCode::not_interior: return "point not interior";
    case ErrorCode::invalid_direction: return "invalid direction";
    case ErrorCode::center_mismatch: return "center mismatch";
    case ErrorCode::delta_too_large: return "delta too large";
    case ErrorCode::not_tangent: return "direction not tangent";
    case ErrorCode::step_too_large: return "step too large";
    case ErrorCode::nothing_to_normalize: return "nothing to normalize";
    case ErrorCode::containment_failed: return "containment check failed";
    case ErrorCode::non_unique_nearest: return "non-unique nearest point";
    case ErrorCode::on_boundary: return "point on boundary";
    case ErrorCode::empty_system: return "empty disc system";
    case ErrorCode::degenerate_directions: return "degenerate directions";
    case ErrorCode::io: return "I/O error";
  }
  return "error";
}

std::string to_string(const CPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t j = 0; j < p.dim(); ++j) {
    if (j) os << ", ";
    os << p[j].real() << (p[j].imag() < 0 ? " - " : " + ") << std::abs(p[j].imag()) << 'i';
  }
  os << ')';
  return os.str();
}

const char* to_string(Family f) {
  switch (f) {
    case Family::ball: return "ball";
    case Family::ellipsoid: return "ellipsoid";
    case Family::modelE: return "modelE";
    case Family::perturbed_ball: return "perturbed_ball";
    case Family::custom: return "custom";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  if (s == "ball") return Family::ball;
  if (s == "ellipsoid") return Family::ellipsoid;
  if (s == "modelE") return Family::modelE;
  if (s == "perturbed_ball") return Family::perturbed_ball;
  if (s == "custom") return Family::custom;
  throw Error(ErrorCode::unknown_family, "'" + s + "'");
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::inside: return "inside";
    case Membership::boundary: return "boundary";
    case Membership::outside: return "outside";
  }
  return "?";
}

namespace {

double get_or(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::size_t dimension_param(const std::map<std::string, double>& params, const std::optional<CPoint>& anchor) {
  if (anchor) return anchor->dim();
  const double n = get_or(params, "n", 2.0);
  if (n != std::floor(n) || n < 1 || n > static_cast<double>(kMaxDim)) {
    throw Error(ErrorCode::wrong_dimension, "parameter n must be an integer in [1, 4]");
  }
  return static_cast<std::size_t>(n);
}

void reject_unknown_params(const std::map<std::string, double>& params, const std::set<std::string>& allowed,
                           Family f) {
  for (const auto& [key, value] : params) {
    if (!allowed.contains(key)) {
      throw Error(ErrorCode::spec_parse, std::string("unknown parameter '") + key + "' for family " + to_string(f));
    }
    if (!std::isfinite(value)) throw Error(ErrorCode::spec_parse, "parameter '" + key + "' is not finite");
  }
}

}  // namespace

DomainSpec DomainSpec::make(Family family, const std::map<std::string, double>& params,
                            std::optional<double> bounding_radius, std::optional<double> shell_width,
                            std::optional<CPoint> anchor, const std::string& expression) {
  DomainSpec d;
  d.family_ = family;
  d.params_ = params;
  if (family != Family::custom && !expression.empty()) {
    throw Error(ErrorCode::spec_parse, "'expression' is only valid for the custom family");
  }

  switch (family) {
    case Family::ball: {
      reject_unknown_params(params, {"R", "n"}, family);
      const double R = get_or(params, "R", 1.0);
      if (!(R > 0)) throw Error(ErrorCode::invalid_argument, "ball radius must be positive");
      const std::size_t n = dimension_param(params, anchor);
      d.p0_ = R * R;
      d.bounding_radius_ = bounding_radius.value_or(R);
      d.anchor_ = anchor.value_or(CPoint(n));
      break;
    }
    case Family::ellipsoid: {
      std::set<std::string> allowed{"n"};
      for (std::size_t j = 1; j <= kMaxDim; ++j) {
        allowed.insert("a" + std::to_string(j));
        allowed.insert("b" + std::to_string(j));
      }
      reject_unknown_params(params, allowed, family);
      const std::size_t n = dimension_param(params, anchor);
      double max_axis = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double a = get_or(params, "a" + std::to_string(j + 1), 1.0);
        const double b = get_or(params, "b" + std::to_string(j + 1), 1.0);
        if (!(a > 0) || !(b > 0)) throw Error(ErrorCode::invalid_argument, "ellipsoid semi-axes must be positive");
        d.inv_axes_sq_[2 * j] = 1.0 / (a * a);
        d.inv_axes_sq_[2 * j + 1] = 1.0 / (b * b);
        max_axis = std::max({max_axis, a, b});
      }
      d.bounding_radius_ = bounding_radius.value_or(max_axis);
      d.anchor_ = anchor.value_or(CPoint(n));
      break;
    }
    case Family::modelE: {
      reject_unknown_params(params, {"c", "r"}, family);
      const double c = get_or(params, "c", 1.0);
      const double r = get_or(params, "r", 0.5);
      if (!(c > 0) || !(r > 0)) throw Error(ErrorCode::invalid_argument, "modelE needs c > 0 and r > 0");
      d.p0_ = c;
      d.p1_ = r * r;
      d.bounding_radius_ = bounding_radius.value_or(r);
      const double a = std::min(r / 2.0, 1.0 / (2.0 * c));
      d.anchor_ = anchor.value_or(CPoint{Complex(-a, 0.0), Complex(0.0, 0.0)});
      if (d.anchor_.dim() != 2) throw Error(ErrorCode::wrong_dimension, "modelE lives in C^2");
      break;
    }
    case Family::perturbed_ball: {
      reject_unknown_params(params, {"R", "k", "q", "n"}, family);
      const double R = get_or(params, "R", 1.0);
      const double k = get_or(params, "k", 0.5);
      const double q = get_or(params, "q", 1.0);
      if (!(R > 0) || !(k > -1.0) || !(q >= 0.0) || (k >= 1.0 && !(q > 0.0))) {
        throw Error(ErrorCode::invalid_argument, "perturbed_ball needs R > 0, k > -1, q >= 0, and q > 0 if k >= 1");
      }
      const std::size_t n = dimension_param(params, anchor);
      d.p0_ = R * R;
      d.p1_ = k;
      d.p2_ = q;
      double bound = 0.0;
      if (k < 1.0) {
        bound = R / std::sqrt(std::min({1.0, 1.0 - k, 1.0 + k}));
      } else {
        const double y_sq = ((k - 1.0) + std::sqrt((k - 1.0) * (k - 1.0) + 4.0 * q * R * R)) / (2.0 * q);
        bound = std::sqrt(R * R + (k - 1.0) * (k - 1.0) / (4.0 * q) + y_sq);
      }
      d.bounding_radius_ = bounding_radius.value_or(1.01 * bound);
      d.anchor_ = anchor.value_or(CPoint(n));
      break;
    }
    case Family::custom: {
      if (expression.empty()) throw Error(ErrorCode::spec_parse, "custom family requires 'expression'");
      if (!bounding_radius) throw Error(ErrorCode::spec_parse, "custom family requires 'bounding_radius'");
      if (!anchor) throw Error(ErrorCode::spec_parse, "custom family requires 'anchor'");
      d.expression_ = std::make_shared<const Expression>(Expression::parse(expression, params));
      if (d.expression_->min_dimension() > anchor->dim()) {
        throw Error(ErrorCode::wrong_dimension, "expression uses coordinates beyond the anchor dimension");
      }
      d.bounding_radius_ = *bounding_radius;
      d.anchor_ = *anchor;
      break;
    }
  }
  if (shell_width) d.shell_width_ = *shell_width;
  d.validate();
  return d;
}

void DomainSpec::validate() const {
  if (!(bounding_radius_ > 0) || !std::isfinite(bounding_radius_)) {
    throw Error(ErrorCode::invalid_argument, "bounding_radius must be positive");
  }
  if (!(shell_width_ > 0) || !std::isfinite(shell_width_)) {
    throw Error(ErrorCode::invalid_argument, "shell_width must be positive");
  }
  if (!anchor_.is_finite()) throw Error(ErrorCode::invalid_argument, "anchor must be finite");
  if (!(rho(anchor_) < 0.0)) {
    throw Error(ErrorCode::not_interior, "anchor " + to_string(anchor_) + " is not inside the domain");
  }
}

DomainSpec DomainSpec::ball(double radius, std::size_t n) {
  return make(Family::ball, {{"R", radius}, {"n", static_cast<double>(n)}}, std::nullopt, std::nullopt,
              std::nullopt);
}

DomainSpec DomainSpec::ellipsoid(const std::vector<double>& semi_axes) {
  if (semi_axes.empty() || semi_axes.size() % 2 != 0 || semi_axes.size() > 2 * kMaxDim) {
    throw Error(ErrorCode::wrong_dimension, "ellipsoid needs 2n semi-axes, n <= 4");
  }
  std::map<std::string, double> params{{"n", static_cast<double>(semi_axes.size() / 2)}};
  for (std::size_t j = 0; j < semi_axes.size() / 2; ++j) {
    params["a" + std::to_string(j + 1)] = semi_axes[2 * j];
    params["b" + std::to_string(j + 1)] = semi_axes[2 * j + 1];
  }
  return make(Family::ellipsoid, params, std::nullopt, std::nullopt, std::nullopt);
}

DomainSpec DomainSpec::model_e(double c, double r) {
  return make(Family::modelE, {{"c", c}, {"r", r}}, std::nullopt, std::nullopt, std::nullopt);
}

DomainSpec DomainSpec::perturbed_ball(double radius, double k, double q) {
  return make(Family::perturbed_ball, {{"R", radius}, {"k", k}, {"q", q}}, std::nullopt, std::nullopt,
              std::nullopt);
}

DomainSpec DomainSpec::custom(const std::string& expression, const std::map<std::string, double>& params,
                              double bounding_radius, const CPoint& anchor) {
  return make(Family::custom, params, bounding_radius, std::nullopt, anchor, expression);
}

double DomainSpec::param(const std::string& key) const {
  auto it = params_.find(key);
  if (it != params_.end()) return it->second;
  switch (family_) {
    case Family::ball: return key == "R" ? 1.0 : key == "n" ? static_cast<double>(dim()) : NAN;
    case Family::modelE: return key == "c" ? p0_ : key == "r" ? std::sqrt(p1_) : NAN;
    case Family::perturbed_ball: return key == "R" ? std::sqrt(p0_) : key == "k" ? p1_ : key == "q" ? p2_ : NAN;
    default: break;
  }
  throw Error(ErrorCode::invalid_argument, "no parameter '" + key + "'");
}

const std::string& DomainSpec::expression_text() const {
  static const std::string empty;
  return expression_ ? expression_->text() : empty;
}

DomainSpec DomainSpec::with_shell_width(double w) const {
  DomainSpec d = *this;
  d.shell_width_ = w;
  d.validate();
  return d;
}

double model_rho_c(double c, const CPoint& zw) {
  const Complex z = zw[0];
  const Complex w = zw[1];
  return z.real() - w.real() * w.real() + c * (z.real() * z.real() + z.imag() * z.imag()) + c * w.imag() * w.imag();
}

double DomainSpec::rho(const CPoint& z) const {
  switch (family_) {
    case Family::ball: return z.norm_sq() - p0_;
    case Family::ellipsoid: {
      double s = -1.0;
      for (std::size_t j = 0; j < z.dim(); ++j) {
        s += z[j].real() * z[j].real() * inv_axes_sq_[2 * j] + z[j].imag() * z[j].imag() * inv_axes_sq_[2 * j + 1];
      }
      return s;
    }
    case Family::modelE: {
      const auto [rc, sphere] = model_pieces(z);
      return std::max(rc, sphere);
    }
    case Family::perturbed_ball: {
      const Complex last = z[z.dim() - 1];
      const double x = last.real(), y = last.imag();
      return z.norm_sq() - p0_ + p1_ * (x * x - y * y) + p2_ * (y * y) * (y * y);
    }
    case Family::custom: {
      std::array<double, 2 * kMaxDim> reals{};
      for (std::size_t j = 0; j < z.dim(); ++j) {
        reals[2 * j] = z[j].real();
        reals[2 * j + 1] = z[j].imag();
      }
      return expression_->evaluate(std::span<const double>(reals.data(), 2 * z.dim()));
    }
  }
  return NAN;
}

std::pair<double, double> DomainSpec::model_pieces(const CPoint& z) const {
  if (family_ != Family::modelE) throw Error(ErrorCode::invalid_argument, "model_pieces needs a modelE domain");
  return {model_rho_c(p0_, z), z.norm_sq() - p1_};
}

std::optional<CPoint> DomainSpec::closed_form_gradient(const CPoint& z) const {
  switch (family_) {
    case Family::ball: return 2.0 * z;
    case Family::ellipsoid: {
      CPoint g(z.dim());
      for (std::size_t j = 0; j < z.dim(); ++j) {
        g[j] = {2.0 * z[j].real() * inv_axes_sq_[2 * j], 2.0 * z[j].imag() * inv_axes_sq_[2 * j + 1]};
      }
      return g;
    }
    case Family::modelE: {
      const auto [rc, sphere] = model_pieces(z);
      if (sphere > rc) return 2.0 * z;
      const double c = p0_;
      return CPoint{Complex(1.0 + 2.0 * c * z[0].real(), 2.0 * c * z[0].imag()),
                    Complex(-2.0 * z[1].real(), 2.0 * c * z[1].imag())};
    }
    case Family::perturbed_ball: {
      CPoint g = 2.0 * z;
      const std::size_t j = z.dim() - 1;
      const double x = z[j].real(), y = z[j].imag();
      g[j] += Complex(2.0 * p1_ * x, -2.0 * p1_ * y + 4.0 * p2_ * y * y * y);
      return g;
    }
    case Family::custom: return std::nullopt;
  }
  return std::nullopt;
}

double rho_eval(const DomainSpec& domain, const CPoint& z) {
  if (z.dim() != domain.dim()) {
    throw Error(ErrorCode::wrong_dimension, "point has dimension " + std::to_string(z.dim()) + ", domain has " +
                                                std::to_string(domain.dim()));
  }
  return domain.rho(z);
}

CPoint finite_difference_gradient(const DomainSpec& domain, const CPoint& z, double step) {
  CPoint g(z.dim());
  for (std::size_t k = 0; k < z.real_dim(); ++k) {
    CPoint plus = z, minus = z;
    plus.set_real(k, z.real_at(k) + step);
    minus.set_real(k, z.real_at(k) - step);
    g.set_real(k, (domain.rho(plus) - domain.rho(minus)) / (2.0 * step));
  }
  return g;
}

CPoint rho_gradient(const DomainSpec& domain, const CPoint& z) {
  if (z.dim() != domain.dim()) throw Error(ErrorCode::wrong_dimension, "gradient point dimension mismatch");
  if (auto g = domain.closed_form_gradient(z)) return *g;
  return finite_difference_gradient(domain, z, 1e-5 * domain.scale());
}

CPoint holomorphic_gradient(const DomainSpec& domain, const CPoint& z) { return 0.5 * conj(rho_gradient(domain, z)); }

Membership membership(const DomainSpec& domain, const CPoint& z, double tol) {
  const double r = rho_eval(domain, z);
  if (r < -tol) return Membership::inside;
  if (std::abs(r) <= tol) return Membership::boundary;
  return Membership::outside;
}

std::optional<double> first_exit(const DomainSpec& domain, const CPoint& origin, const CPoint& dir, double t_max,
                                 int steps) {
  if (!(domain.rho(origin) < 0.0)) {
    throw Error(ErrorCode::not_interior, "ray origin " + to_string(origin) + " is not inside the domain");
  }
  origin.check_same(dir);
  const std::size_t n = origin.dim();
  CPoint p = origin;
  auto rho_at = [&](double t) {
    for (std::size_t j = 0; j < n; ++j) p[j] = origin[j] + t * dir[j];
    return domain.rho(p);
  };

  double lo = 0.0, f_lo = domain.rho(origin);
  for (int i = 1; i <= steps; ++i) {
    const double t = t_max * static_cast<double>(i) / steps;
    const double f_t = rho_at(t);
    if (f_t < 0.0) {
      lo = t;
      f_lo = f_t;
      continue;
    }
    // Illinois false position on [lo, hi]; NaN counts as outside.
    double hi = t, f_hi = f_t;
    int side = 0;
    for (int it = 0; it < kBisectionIterations && hi - lo > 1e-15 * t; ++it) {
      double mid = 0.5 * (lo + hi);
      if (std::isfinite(f_hi) && f_hi > f_lo) {
        const double x = hi - f_hi * (hi - lo) / (f_hi - f_lo);
        if (x > lo && x < hi) mid = x;
      }
      const double f_mid = rho_at(mid);
      if (f_mid < 0.0) {
        lo = mid;
        f_lo = f_mid;
        if (side == -1) f_hi *= 0.5;
        side = -1;
      } else {
        hi = mid;
        f_hi = f_mid;
        if (side == 1) f_lo *= 0.5;
        side = 1;
      }
    }
    return 0.5 * (lo + hi);
  }
  return std::nullopt;
}

BoundaryPoint make_boundary_point(const DomainSpec& domain, const CPoint& p) {
  const CPoint g = rho_gradient(domain, p);
  const double gn = g.norm();
  if (!(gn > kMinGradientNorm)) {
    throw Error(ErrorCode::degenerate_boundary, "gradient norm " + std::to_string(gn) + " at " + to_string(p));
  }
  return {p, g / gn, std::abs(rho_eval(domain, p))};
}

BoundaryPoint project_to_boundary(const DomainSpec& domain, const CPoint& z) {
  CPoint p = z;
  for (int it = 0; it < 100; ++it) {
    const double r = rho_eval(domain, p);
    if (std::abs(r) <= 1e-15 * domain.scale()) break;
    const CPoint g = rho_gradient(domain, p);
    const double gsq = g.norm_sq();
    if (!(gsq > kMinGradientNorm * kMinGradientNorm)) {
      throw Error(ErrorCode::degenerate_boundary, "projection hit a critical point of rho");
    }
    p -= (r / gsq) * g;
  }
  return make_boundary_point(domain, p);
}

std::vector<BoundaryPoint> boundary_sample(const DomainSpec& domain, std::size_t n, std::uint64_t seed) {
  std::vector<BoundaryPoint> out;
  out.reserve(n);
  Rng rng(mix_seed(seed, 0));
  const CPoint& anchor = domain.anchor();
  const double t_max = 1.01 * (domain.bounding_radius() + anchor.norm());
  const double corner_tol = 1e-6 * domain.scale();
  const std::size_t max_attempts = 100 * n + 1000;
  for (std::size_t attempt = 0; out.size() < n; ++attempt) {
    if (attempt >= max_attempts) {
      throw Error(ErrorCode::sampling_failed, "too many rejected boundary samples");
    }
    const CPoint u = random_unit(rng, domain.dim());
    const auto t = first_exit(domain, anchor, u, t_max);
    if (!t) throw Error(ErrorCode::sampling_failed, "ray from the anchor does not exit the bounding radius");
    const CPoint p = anchor + *t * u;
    if (domain.family() == Family::modelE) {
      const auto [rc, sphere] = domain.model_pieces(p);
      if (std::abs(rc) <= corner_tol && std::abs(sphere) <= corner_tol) continue;
    }
    const CPoint g = rho_gradient(domain, p);
    const double gn = g.norm();
    if (!(gn > kMinGradientNorm)) continue;
    out.push_back({p, g / gn, std::abs(domain.rho(p))});
  }
  return out;
}

std::vector<CDirection> complex_tangent_basis(const DomainSpec& domain, const BoundaryPoint& p) {
  const CPoint g = holomorphic_gradient(domain, p.point);
  const double gn = g.norm();
  if (!(2.0 * gn > kMinGradientNorm)) {
    throw Error(ErrorCode::degenerate_boundary, "gradient vanishes at " + to_string(p.point));
  }
  const std::size_t n = g.dim();
  std::vector<CDirection> basis;
  if (n == 1) return basis;
  if (n == 2) {
    basis.emplace_back(CPoint{-g[1], g[0]} / gn);
    return basis;
  }
  // Gram-Schmidt against conj(g), whose Hermitian complement is T^C.
  std::vector<CPoint> ortho{conj(g) / gn};
  for (std::size_t k = 0; k < n && ortho.size() < n; ++k) {
    CPoint e = CPoint::unit(n, k);
    for (const CPoint& q : ortho) e -= herm(e, q) * q;
    const double en = e.norm();
    if (en > 0.1) ortho.push_back(e / en);
  }
  for (std::size_t i = 1; i < ortho.size(); ++i) basis.emplace_back(ortho[i]);
  return basis;
}

}  // namespace lincvx
