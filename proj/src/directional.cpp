#include "lincvx/directional.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "lincvx/parallel.hpp"
#include "lincvx/random.hpp"

namespace lincvx {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr int kRefinedCells = 3;
constexpr int kGoldenIterations = 40;

void require_interior(const DomainSpec& domain, const CPoint& z) {
  if (z.dim() != domain.dim()) throw Error(ErrorCode::wrong_dimension, "base point dimension mismatch");
  if (!(domain.rho(z) < 0.0)) throw Error(ErrorCode::not_interior, "base point " + to_string(z) + " is not inside");
}

// Caller guarantees z is interior.
double exit_distance_unchecked(const DomainSpec& domain, const CPoint& z, const CPoint& X, double x_norm,
                               double theta) {
  const CPoint dir = std::polar(1.0, theta) * X;
  const double t_max = 1.01 * (domain.bounding_radius() + z.norm()) / x_norm;
  const auto t = first_exit(domain, z, dir, t_max);
  return t ? *t : kInfiniteDistance;
}

std::pair<double, double> golden_minimize(const auto& f, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < kGoldenIterations; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

GaugeSample distance_unchecked(const DomainSpec& domain, const CPoint& z, const CPoint& X) {
  GaugeSample s{z, X};
  const double x_norm = X.norm();
  auto f = [&](double theta) { return exit_distance_unchecked(domain, z, X, x_norm, theta); };

  std::array<double, kThetaGrid> grid{};
  for (int k = 0; k < kThetaGrid; ++k) grid[k] = f(kTwoPi * k / kThetaGrid);

  std::array<int, kThetaGrid> order{};
  for (int k = 0; k < kThetaGrid; ++k) order[k] = k;
  std::partial_sort(order.begin(), order.begin() + kRefinedCells, order.end(),
                    [&](int a, int b) { return grid[a] < grid[b] || (grid[a] == grid[b] && a < b); });

  double best = grid[order[0]];
  double best_theta = kTwoPi * order[0] / kThetaGrid;
  if (!std::isfinite(best)) return s;

  for (int i = 0; i < kRefinedCells; ++i) {
    const int k = order[i];
    if (!std::isfinite(grid[k])) break;
    const double center = kTwoPi * k / kThetaGrid;
    const double half = kTwoPi / kThetaGrid;
    const auto [theta, value] = golden_minimize(f, center - half, center + half);
    if (value < best) {
      best = value;
      best_theta = theta;
    }
  }
  s.distance = best;
  s.gauge = 1.0 / best;
  s.phase = std::remainder(best_theta, kTwoPi);
  if (s.phase < 0) s.phase += kTwoPi;
  return s;
}

double gauge_unchecked(const DomainSpec& domain, const CPoint& z, const CPoint& X) {
  if (X.norm() == 0.0) return 0.0;
  return distance_unchecked(domain, z, X).gauge;
}

std::string describe_pair(const char* a_name, const CPoint& a, const char* b_name, const CPoint& b) {
  return std::string(a_name) + "=" + to_string(a) + " " + b_name + "=" + to_string(b);
}

}  // namespace

double ray_exit_distance(const DomainSpec& domain, const CPoint& z, const CDirection& X, double theta) {
  require_interior(domain, z);
  X.vector().check_same(z);
  return exit_distance_unchecked(domain, z, X.vector(), X.norm(), theta);
}

GaugeSample directional_distance(const DomainSpec& domain, const CPoint& z, const CDirection& X) {
  require_interior(domain, z);
  X.vector().check_same(z);
  return distance_unchecked(domain, z, X.vector());
}

double minkowski_gauge(const DomainSpec& domain, const CPoint& z, const CPoint& X) {
  return directional_distance(domain, z, CDirection(X)).gauge;
}

CriterionReport gauge_subadditivity_check(const DomainSpec& domain, const CPoint& z, const CheckOptions& opts,
                                          std::span<const std::pair<CPoint, CPoint>> explicit_pairs) {
  Stopwatch clock;
  require_interior(domain, z);
  for (const auto& [X, Y] : explicit_pairs) {
    X.check_same(z);
    Y.check_same(z);
  }
  const std::size_t n = domain.dim();

  auto sample = [&](std::size_t i) -> std::optional<Sample> {
    CPoint X, Y;
    if (i < opts.trials) {
      Rng rng = trial_rng(opts.seed, i);
      X = uniform01(rng) * random_unit(rng, n);
      Y = uniform01(rng) * random_unit(rng, n);
    } else {
      std::tie(X, Y) = explicit_pairs[i - opts.trials];
    }
    const CPoint sum = X + Y;
    const double gx = gauge_unchecked(domain, z, X);
    const double gy = gauge_unchecked(domain, z, Y);
    Sample s;
    s.witness = z;
    double gsum = 0.0;
    if (sum.norm() > 0.0) {
      const GaugeSample gs = distance_unchecked(domain, z, sum);
      gsum = gs.gauge;
      if (gs.finite()) s.witness = z + gs.distance * (std::polar(1.0, gs.phase) * sum);
    }
    s.margin = gx + gy - gsum;
    std::ostringstream os;
    os.precision(17);
    os << describe_pair("X", X, "Y", Y) << " gauge(X)=" << gx << " gauge(Y)=" << gy << " gauge(X+Y)=" << gsum;
    s.context = os.str();
    return s;
  };

  WorstOf w = worst_over(opts.trials + explicit_pairs.size(), opts.workers, sample);
  CriterionReport r;
  r.name = "gauge_subadditivity";
  r.samples_used = w.evaluated;
  r.sample_margins = std::move(w.margins);
  if (w.worst) {
    r.worst_margin = w.worst->margin;
    r.verdict = w.worst->margin < -opts.tol ? Verdict::fail : Verdict::pass;
    r.witness = Witness{w.worst->witness, w.worst->context};
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

CriterionReport indicatrix_midpoint_check(const DomainSpec& domain, const CPoint& z, const CheckOptions& opts,
                                          std::span<const std::pair<CPoint, CPoint>> explicit_points) {
  Stopwatch clock;
  require_interior(domain, z);
  const std::size_t n = domain.dim();

  auto sample = [&](std::size_t i) -> std::optional<Sample> {
    CPoint w1, w2;
    double g1 = 0.0, g2 = 0.0;
    if (i < opts.trials) {
      Rng rng = trial_rng(opts.seed, i);
      const CPoint u1 = random_unit(rng, n);
      const CPoint u2 = random_unit(rng, n);
      g1 = uniform01(rng);
      g2 = uniform01(rng);
      const double gu1 = gauge_unchecked(domain, z, u1);
      const double gu2 = gauge_unchecked(domain, z, u2);
      // Unbounded directions put no constraint on D_z.
      if (gu1 == 0.0 || gu2 == 0.0) return std::nullopt;
      w1 = z + (g1 / gu1) * u1;
      w2 = z + (g2 / gu2) * u2;
    } else {
      std::tie(w1, w2) = explicit_points[i - opts.trials];
      w1.check_same(z);
      w2.check_same(z);
      g1 = gauge_unchecked(domain, z, w1 - z);
      g2 = gauge_unchecked(domain, z, w2 - z);
    }
    const CPoint mid = 0.5 * (w1 + w2);
    const double gm = gauge_unchecked(domain, z, mid - z);
    Sample s;
    s.margin = std::max(g1, g2) - gm;
    s.witness = mid;
    std::ostringstream os;
    os.precision(17);
    os << describe_pair("w1", w1, "w2", w2) << " gauge(w1-z)=" << g1 << " gauge(w2-z)=" << g2
       << " gauge(mid-z)=" << gm;
    s.context = os.str();
    return s;
  };

  WorstOf w = worst_over(opts.trials + explicit_points.size(), opts.workers, sample);
  CriterionReport r;
  r.name = "indicatrix_midpoint";
  r.samples_used = w.evaluated;
  r.sample_margins = std::move(w.margins);
  if (w.worst) {
    r.worst_margin = w.worst->margin;
    r.verdict = w.worst->margin < -opts.tol ? Verdict::fail : Verdict::pass;
    r.witness = Witness{w.worst->witness, w.worst->context};
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

}  // namespace lincvx
