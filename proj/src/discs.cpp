#include "lincvx/discs.hpp"

#include <cmath>
#include <sstream>

#include "lincvx/parallel.hpp"
#include "lincvx/random.hpp"

namespace lincvx {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

struct DiscMax {
  double rho;
  CPoint where;
};

DiscMax disc_max(const DomainSpec& domain, const Disc& disc, int phases) {
  DiscMax best{domain.rho(disc.center), disc.center};
  for (double ring : {1.0, 0.75, 0.5, 0.25}) {
    for (int k = 0; k < phases; ++k) {
      const CPoint p = disc.at(std::polar(ring, kTwoPi * k / phases));
      const double r = domain.rho(p);
      if (r > best.rho) best = {r, p};
    }
  }
  return best;
}

CPoint model_disc_point(double c, double delta, Complex zeta, bool second) {
  const double mu = std::sqrt(2.0 * c * delta);
  const Complex z = second ? -delta * (1.0 + zeta) : -delta * (1.0 - zeta);
  return CPoint{z, delta * zeta / mu};
}

}  // namespace

Disc::Disc(CPoint c, CDirection d, double r) : center(std::move(c)), direction(std::move(d)), radius(r) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::invalid_argument, "disc radius must be positive");
  center.check_same(direction.vector());
}

double max_rho_on_disc(const DomainSpec& domain, const Disc& disc, int phases) {
  return disc_max(domain, disc, phases).rho;
}

CriterionReport disc_pair_hull_check(const DomainSpec& domain, const Disc& d1, const Disc& d2, const HullGrid& grid,
                                     double tol) {
  Stopwatch clock;
  if (d1.center.dim() != domain.dim() || d2.center.dim() != domain.dim()) {
    throw Error(ErrorCode::wrong_dimension, "disc dimension does not match the domain");
  }
  if (distance(d1.center, d2.center) > 1e-12) {
    throw Error(ErrorCode::center_mismatch, to_string(d1.center) + " vs " + to_string(d2.center));
  }
  if (grid.t_steps < 2 || grid.phases1 < 1 || grid.phases2 < 1) {
    throw Error(ErrorCode::invalid_argument, "hull grid needs t_steps >= 2 and positive phase counts");
  }

  CriterionReport r;
  r.name = "disc_pair_hull";
  int disc_index = 1;
  for (const Disc* d : {&d1, &d2}) {
    const DiscMax m = disc_max(domain, *d, 64);
    if (m.rho >= -tol) {
      r.verdict = Verdict::inconclusive;
      r.worst_margin = -m.rho;
      std::ostringstream os;
      os.precision(17);
      os << "precondition violated: disc " << disc_index << " is not strictly inside D (rho = " << m.rho << ")";
      r.witness = Witness{m.where, os.str()};
      r.elapsed_ms = clock.elapsed_ms();
      return r;
    }
    ++disc_index;
  }

  // Symmetric in (d1, d2): weights i/(T-1) and (T-1-i)/(T-1) and the sum
  // u + v are bitwise invariant under the swap.
  const CPoint center = 0.5 * (d1.center + d2.center);
  const std::vector<double> rings = grid.dense ? std::vector<double>{1.0, 2.0 / 3.0, 1.0 / 3.0} : std::vector<double>{1.0};
  const int T = grid.t_steps;
  const std::size_t K = rings.size();

  auto slab = [&](std::size_t i) -> std::optional<Sample> {
    const double t = static_cast<double>(i) / (T - 1);
    const double s = static_cast<double>(T - 1 - static_cast<int>(i)) / (T - 1);
    Sample best;
    bool have = false;
    int best_a = 0, best_b = 0;
    double best_ring1 = 1.0, best_ring2 = 1.0;
    for (std::size_t k1 = 0; k1 < K; ++k1) {
      for (int a = 0; a < grid.phases1; ++a) {
        const Complex l1 = std::polar(rings[k1], kTwoPi * a / grid.phases1);
        const CPoint u = (t * l1 * d1.radius) * d1.direction.vector();
        for (std::size_t k2 = 0; k2 < K; ++k2) {
          for (int b = 0; b < grid.phases2; ++b) {
            const Complex l2 = std::polar(rings[k2], kTwoPi * b / grid.phases2);
            const CPoint v = (s * l2 * d2.radius) * d2.direction.vector();
            const CPoint z = center + (u + v);
            const double margin = -domain.rho(z);
            if (!have || margin < best.margin) {
              best.margin = margin;
              best.witness = z;
              best_a = a;
              best_b = b;
              best_ring1 = rings[k1];
              best_ring2 = rings[k2];
              have = true;
            }
          }
        }
      }
    }
    std::ostringstream os;
    os.precision(17);
    os << "t=" << t << " |lambda1|=" << best_ring1 << " theta1=" << kTwoPi * best_a / grid.phases1
       << " |lambda2|=" << best_ring2 << " theta2=" << kTwoPi * best_b / grid.phases2;
    best.context = os.str();
    return best;
  };

  WorstOf w = worst_over(static_cast<std::size_t>(T), grid.workers, slab);
  r.samples_used = static_cast<std::size_t>(T) * K * K * grid.phases1 * grid.phases2;
  r.worst_margin = w.worst->margin;
  r.witness = Witness{w.worst->witness, w.worst->context};
  r.verdict = w.worst->margin <= tol ? Verdict::fail : Verdict::pass;
  r.sample_margins = std::move(w.margins);
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

double chord_discriminant(double c, double delta) { return 4.0 * c * c * delta * delta + 4.0 * delta - 1.0 / c; }

CounterexampleDiscs construct_counterexample_discs(double c, double delta) {
  if (!(c >= 1.0) || !(delta > 0.0)) throw Error(ErrorCode::invalid_argument, "need c >= 1 and delta > 0");
  const double disc = chord_discriminant(c, delta);
  if (!(disc < 0.0)) {
    throw Error(ErrorCode::delta_too_large, "discriminant 4c^2 delta^2 + 4 delta - 1/c = " + std::to_string(disc) +
                                                " is not negative");
  }
  const double mu = std::sqrt(2.0 * c * delta);
  const CPoint center{Complex(-delta, 0.0), Complex(0.0, 0.0)};
  Disc d1(center, CDirection(CPoint{Complex(delta, 0.0), Complex(delta / mu, 0.0)}), 1.0);
  Disc d2(center, CDirection(CPoint{Complex(-delta, 0.0), Complex(delta / mu, 0.0)}), 1.0);
  return {std::move(d1), std::move(d2), mu};
}

std::vector<ChordProfilePoint> chord_profile(double c, double delta, int samples) {
  if (!(c >= 1.0) || !(delta > 0.0) || samples < 1) {
    throw Error(ErrorCode::invalid_argument, "need c >= 1, delta > 0 and samples >= 1");
  }
  std::vector<ChordProfilePoint> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double theta = kTwoPi * k / samples;
    const double x = std::cos(theta);
    const double rho = model_rho_c(c, model_disc_point(c, delta, std::polar(1.0, theta), false));
    const double q = -1.0 + 4.0 * c * delta + 2.0 * (1.0 - 2.0 * c * delta) * x - (1.0 + 1.0 / c) * x * x;
    out.push_back({theta, rho / delta, x, 0.5 * q});
  }
  return out;
}

ChordMargin chord_inequality_margin(double c, double delta, int samples) {
  ChordMargin m{};
  m.disc_margin = -std::numeric_limits<double>::infinity();
  for (const ChordProfilePoint& p : chord_profile(c, delta, samples)) m.disc_margin = std::max(m.disc_margin, p.rho_over_delta);
  m.discriminant = chord_discriminant(c, delta);

  const double a = -(1.0 + 1.0 / c);
  const double b = 2.0 * (1.0 - 2.0 * c * delta);
  const double c0 = -1.0 + 4.0 * c * delta;
  auto q = [&](double x) { return c0 + b * x + a * x * x; };
  const double vertex = std::clamp(-b / (2.0 * a), -1.0, 1.0);
  m.quadratic_max = std::max({q(-1.0), q(1.0), q(vertex)});
  m.valid = m.discriminant < 0.0 && m.disc_margin < 0.0 && m.quadratic_max < 0.0;
  return m;
}

std::optional<ChordWitness> tangential_chord_search(const DomainSpec& domain, const BoundaryPoint& p,
                                                    const std::vector<double>& lengths, int phases,
                                                    int samples_per_side) {
  if (phases < 1 || samples_per_side < 1) throw Error(ErrorCode::invalid_argument, "phases and samples must be positive");
  const CPoint g = holomorphic_gradient(domain, p.point);
  const std::vector<CDirection> basis = complex_tangent_basis(domain, p);
  const double limit = domain.bounding_radius() * (1.0 + 1e-12);

  for (double s : lengths) {
    if (!(s > 0.0)) continue;
    for (const CDirection& v : basis) {
      const double residual = std::abs(bilinear(g, v.vector())) / g.norm();
      for (int k = 0; k < phases; ++k) {
        const double phi = M_PI * k / phases;
        const CPoint dir = std::polar(1.0, phi) * v.vector();
        const CPoint a = p.point - s * dir;
        const CPoint b = p.point + s * dir;
        if (a.norm() > limit || b.norm() > limit) continue;
        double margin = std::numeric_limits<double>::infinity();
        for (int j = 1; j <= samples_per_side && margin > 0.0; ++j) {
          const double t = s * j / samples_per_side;
          margin = std::min({margin, -domain.rho(p.point + t * dir), -domain.rho(p.point - t * dir)});
        }
        if (margin > 0.0) return ChordWitness{p.point, a, b, margin, s, phi, residual};
      }
    }
  }
  return std::nullopt;
}

double chord_exit_margin(const DomainSpec& domain, const BoundaryPoint& p, const std::vector<double>& lengths,
                         int phases, int samples_per_side) {
  if (phases < 1 || samples_per_side < 1) throw Error(ErrorCode::invalid_argument, "phases and samples must be positive");
  const std::vector<CDirection> basis = complex_tangent_basis(domain, p);
  double best = std::numeric_limits<double>::infinity();
  for (double s : lengths) {
    if (!(s > 0.0)) continue;
    for (const CDirection& v : basis) {
      for (int k = 0; k < phases; ++k) {
        const CPoint dir = std::polar(1.0, M_PI * k / phases) * v.vector();
        double worst = -std::numeric_limits<double>::infinity();
        for (int j = 1; j <= samples_per_side; ++j) {
          const double t = s * j / samples_per_side;
          worst = std::max({worst, domain.rho(p.point + t * dir), domain.rho(p.point - t * dir)});
        }
        best = std::min(best, worst);
      }
    }
  }
  return best;
}

std::optional<double> triangle_midpoint_margin(const DomainSpec& domain, const CPoint& a, const CPoint& d,
                                               const CPoint& b, int points_per_side) {
  const double shell = domain.shell_width() * domain.scale();
  auto in_shell = [&](const CPoint& x) {
    const double r = domain.rho(x);
    return r < 0.0 && r > -shell;
  };
  const int m = std::max(points_per_side, 2);
  for (int k = 0; k < m; ++k) {
    const double t = static_cast<double>(k) / (m - 1);
    if (!in_shell((1.0 - t) * a + t * d) || !in_shell((1.0 - t) * d + t * b)) return std::nullopt;
  }
  return -domain.rho(0.5 * (a + b));
}

CriterionReport midpoint_triangle_check(const DomainSpec& domain, const CheckOptions& opts) {
  Stopwatch clock;
  const std::size_t n = domain.dim();
  const double shell = domain.shell_width() * domain.scale();
  const double max_side = 2.0 * shell;
  constexpr int kAttempts = 400;
  constexpr int kApexDraws = 10000;
  const CPoint origin(n);

  auto sample = [&](std::size_t i) -> std::optional<Sample> {
    Rng rng = trial_rng(opts.seed, i);
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      std::optional<CPoint> apex;
      for (int draw = 0; draw < kApexDraws && !apex; ++draw) {
        CPoint d = random_in_box(rng, origin, domain.bounding_radius());
        const double r = domain.rho(d);
        if (r < 0.0 && r > -shell) apex = d;
      }
      if (!apex) return std::nullopt;
      const CPoint a = *apex + uniform(rng, 0.0, max_side) * random_unit(rng, n);
      const CPoint b = *apex + uniform(rng, 0.0, max_side) * random_unit(rng, n);
      const auto margin = triangle_midpoint_margin(domain, a, *apex, b);
      if (!margin) continue;
      Sample s;
      s.margin = *margin;
      s.witness = 0.5 * (a + b);
      s.context = "a=" + to_string(a) + " d=" + to_string(*apex) + " b=" + to_string(b);
      return s;
    }
    return std::nullopt;
  };

  WorstOf w = worst_over(opts.trials, opts.workers, sample);
  CriterionReport r;
  r.name = "midpoint_triangle";
  r.samples_used = w.evaluated;
  r.sample_margins = std::move(w.margins);
  if (!w.worst) {
    r.verdict = Verdict::inconclusive;
    r.elapsed_ms = clock.elapsed_ms();
    return r;
  }
  r.worst_margin = w.worst->margin;
  r.witness = Witness{w.worst->witness, w.worst->context};
  r.verdict = w.worst->margin < -opts.tol ? Verdict::fail : Verdict::pass;
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

}  // namespace lincvx
