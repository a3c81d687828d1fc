#include "lincvx/duality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "lincvx/parallel.hpp"
#include "lincvx/random.hpp"

namespace lincvx {

namespace {

constexpr double kMaxCondition = 1e8;
constexpr double kMarginCap = 1e9;
constexpr int kTorusGrid = 64;
constexpr int kRefineRounds = 3;

Complex det2(const CPoint& a, const CPoint& b) { return a[0] * b[1] - a[1] * b[0]; }

// Singular-value condition number of the 2x2 matrix with columns a, b.
double condition(const CPoint& a, const CPoint& b) {
  const double fro = a.norm_sq() + b.norm_sq();
  const double d = std::abs(det2(a, b));
  if (d == 0.0) return std::numeric_limits<double>::infinity();
  // s_max^2 + s_min^2 = fro, s_max s_min = d
  const double disc = std::sqrt(std::max(0.0, fro * fro - 4.0 * d * d));
  const double smax_sq = 0.5 * (fro + disc);
  return smax_sq / d;
}

// Coordinates of u in the basis (a, b).
std::array<Complex, 2> solve2(const CPoint& a, const CPoint& b, const CPoint& u) {
  const Complex d = det2(a, b);
  return {(u[0] * b[1] - u[1] * b[0]) / d, (a[0] * u[1] - a[1] * u[0]) / d};
}

struct Basis {
  std::size_t i = 0;
  std::size_t j = 0;
  bool independent = false;
};

Basis best_pair(const std::vector<CenteredDisc>& discs) {
  Basis best;
  double best_cond = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < discs.size(); ++i) {
    for (std::size_t j = i + 1; j < discs.size(); ++j) {
      const double c = condition(discs[i].direction.vector(), discs[j].direction.vector());
      if (c < best_cond) {
        best_cond = c;
        best = {i, j, c <= kMaxCondition};
      }
    }
  }
  return best;
}

// Rank-one system: every X_k is beta_k X. Returns mu with u = mu X, or nullopt.
std::optional<Complex> line_coordinate(const CPoint& X, const CPoint& u) {
  const Complex mu = herm(u, X) / X.norm_sq();
  const double residual = (u - mu * X).norm();
  if (residual > 1e-12 * std::max(1.0, u.norm())) return std::nullopt;
  return mu;
}

// Largest modulus m = max_k r_k |beta_k| of the concentric discs on the line C X.
double line_extent(const std::vector<CenteredDisc>& discs, const CPoint& X) {
  double m = 0.0;
  for (const CenteredDisc& d : discs) m = std::max(m, d.radius * std::abs(herm(d.direction.vector(), X)) / X.norm_sq());
  return m;
}

const CenteredDisc& longest(const std::vector<CenteredDisc>& discs) {
  return *std::max_element(discs.begin(), discs.end(), [](const CenteredDisc& a, const CenteredDisc& b) {
    return a.radius * a.direction.norm() < b.radius * b.direction.norm();
  });
}

}  // namespace

CenteredDiscSystem::CenteredDiscSystem(CPoint center, std::vector<CenteredDisc> discs)
    : center_(std::move(center)), discs_(std::move(discs)) {
  if (discs_.empty()) throw Error(ErrorCode::empty_system, "disc system has no discs");
  if (center_.dim() != 2) throw Error(ErrorCode::wrong_dimension, "disc systems live in C^2");
  for (const CenteredDisc& d : discs_) {
    if (d.direction.dim() != 2) throw Error(ErrorCode::wrong_dimension, "disc direction must be in C^2");
    if (!(d.radius > 0.0) || !std::isfinite(d.radius)) throw Error(ErrorCode::invalid_argument, "disc radius must be positive");
  }
}

CenteredDiscSystem CenteredDiscSystem::canonical() {
  return CenteredDiscSystem(CPoint{0.0, 0.0}, {{CDirection(CPoint{1.0, 0.0}), 1.0}, {CDirection(CPoint{0.0, 1.0}), 1.0}});
}

CenteredDiscSystem CenteredDiscSystem::transformed(const std::array<std::array<Complex, 2>, 2>& L, const CPoint& b) const {
  auto apply = [&](const CPoint& v) {
    return CPoint{L[0][0] * v[0] + L[0][1] * v[1], L[1][0] * v[0] + L[1][1] * v[1]};
  };
  std::vector<CenteredDisc> out;
  out.reserve(discs_.size());
  for (const CenteredDisc& d : discs_) out.push_back({CDirection(apply(d.direction.vector())), d.radius});
  return CenteredDiscSystem(apply(center_) + b, std::move(out));
}

double polar_gauge(const CenteredDiscSystem& system, const CPoint& a) {
  if (a.dim() != 2) throw Error(ErrorCode::wrong_dimension, "hyperplane coefficients must be in C^2");
  double g = 0.0;
  for (const CenteredDisc& d : system.discs()) g = std::max(g, d.radius * std::abs(bilinear(a, d.direction.vector())));
  return g;
}

DoublePolar double_polar_membership(const CenteredDiscSystem& system, const CPoint& z) {
  const CPoint u = z - system.center();
  const auto& discs = system.discs();
  if (u.norm() == 0.0) return {true, 0.0};

  const Basis basis = best_pair(discs);
  if (!basis.independent) {
    const CPoint& X = longest(discs).direction.vector();
    const auto mu = line_coordinate(X, u);
    if (!mu) return {false, std::numeric_limits<double>::infinity()};
    const double sup = std::abs(*mu) / line_extent(discs, X);
    return {sup <= 1.0, sup};
  }

  const CPoint& X1 = discs[basis.i].direction.vector();
  const CPoint& X2 = discs[basis.j].direction.vector();
  const auto gamma = solve2(X1, X2, u);
  if (discs.size() == 2) {
    const double sup = std::abs(gamma[0]) / discs[basis.i].radius + std::abs(gamma[1]) / discs[basis.j].radius;
    return {sup <= 1.0, sup};
  }

  // With s = (a . X1, a . X2) free, a . X_k = alpha_k s1 + beta_k s2. By
  // phase invariance s = (cos th, e^{i psi} sin th) up to a positive scale.
  std::vector<std::array<Complex, 2>> coeff;
  coeff.reserve(discs.size());
  for (const CenteredDisc& d : discs) coeff.push_back(solve2(X1, X2, d.direction.vector()));
  auto ratio = [&](double th, double psi) {
    const Complex s1 = std::cos(th);
    const Complex s2 = std::polar(std::sin(th), psi);
    double denom = 0.0;
    for (std::size_t k = 0; k < discs.size(); ++k) {
      denom = std::max(denom, discs[k].radius * std::abs(coeff[k][0] * s1 + coeff[k][1] * s2));
    }
    return std::abs(gamma[0] * s1 + gamma[1] * s2) / denom;
  };
  const double th_max = M_PI / 2.0;
  double best = -1.0, best_th = 0.0, best_psi = 0.0;
  for (int i = 0; i < kTorusGrid; ++i) {
    const double th = th_max * i / (kTorusGrid - 1);
    for (int j = 0; j < kTorusGrid; ++j) {
      const double psi = 2.0 * M_PI * j / kTorusGrid;
      const double v = ratio(th, psi);
      if (v > best) {
        best = v;
        best_th = th;
        best_psi = psi;
      }
    }
  }
  double h_th = th_max / (kTorusGrid - 1);
  double h_psi = 2.0 * M_PI / kTorusGrid;
  for (int round = 0; round < kRefineRounds; ++round) {
    const double c_th = best_th, c_psi = best_psi;
    for (int i = -8; i <= 8; ++i) {
      const double th = std::clamp(c_th + h_th * i / 8.0, 0.0, th_max);
      for (int j = -8; j <= 8; ++j) {
        const double psi = c_psi + h_psi * j / 8.0;
        const double v = ratio(th, psi);
        if (v > best) {
          best = v;
          best_th = th;
          best_psi = psi;
        }
      }
    }
    h_th /= 8.0;
    h_psi /= 8.0;
  }
  return {best <= 1.0, best};
}

bool convex_hull_membership(const CenteredDiscSystem& system, const CPoint& z) {
  const auto& discs = system.discs();
  if (discs.size() > 2) throw Error(ErrorCode::invalid_argument, "convex hull membership takes one or two discs");
  const CPoint u = z - system.center();
  if (u.dim() != 2) throw Error(ErrorCode::wrong_dimension, "query point must be in C^2");
  constexpr double slack = 1e-12;

  const bool independent = discs.size() == 2 &&
                           condition(discs[0].direction.vector(), discs[1].direction.vector()) <= kMaxCondition;
  if (!independent) {
    // Concentric discs on one complex line: the hull is the largest of them.
    const CPoint& X = longest(discs).direction.vector();
    const auto mu = line_coordinate(X, u);
    return mu && std::abs(*mu) <= line_extent(discs, X) * (1.0 + slack);
  }

  const auto gamma = solve2(discs[0].direction.vector(), discs[1].direction.vector(), u);
  const double m1 = std::abs(gamma[0]) / discs[0].radius;
  const double m2 = std::abs(gamma[1]) / discs[1].radius;
  auto feasible = [&](double t) { return m1 <= t * (1.0 + slack) + slack && m2 <= (1.0 - t) * (1.0 + slack) + slack; };
  constexpr int kScan = 1025;
  for (int i = 0; i < kScan; ++i) {
    if (feasible(static_cast<double>(i) / (kScan - 1))) return true;
  }
  // The smallest admissible t for the first disc is exactly m1.
  return m1 <= 1.0 && feasible(m1);
}

CriterionReport hulls_coincide_check(const CenteredDiscSystem& system, const HullSampling& opts) {
  Stopwatch clock;
  if (system.discs().size() > 2) throw Error(ErrorCode::invalid_argument, "hull coincidence takes one or two discs");
  double extent = 0.0;
  for (const CenteredDisc& d : system.discs()) extent = std::max(extent, d.radius * d.direction.norm());
  const double half = 1.2 * extent;

  const WorstOf w = worst_over(opts.samples, opts.workers, [&](std::size_t i) -> std::optional<Sample> {
    Rng rng = trial_rng(opts.seed, i);
    const CPoint z = random_in_box(rng, system.center(), half);
    const DoublePolar dp = double_polar_membership(system, z);
    const double gap = std::min(std::abs(dp.sup_value - 1.0), kMarginCap);
    if (gap < opts.band) return std::nullopt;
    const bool hull = convex_hull_membership(system, z);
    const bool agree = hull == dp.inside;
    return Sample{agree ? gap : -gap, z,
                  std::string("convex hull ") + (hull ? "contains" : "excludes") + " point, double polar sup " +
                      std::to_string(dp.sup_value)};
  });

  CriterionReport r;
  r.name = "hulls_coincide";
  r.samples_used = w.evaluated;
  r.sample_margins = w.margins;
  if (!w.worst) {
    r.verdict = Verdict::inconclusive;
  } else {
    r.worst_margin = w.worst->margin;
    r.verdict = w.worst->margin < 0.0 ? Verdict::fail : Verdict::pass;
    r.witness = Witness{w.worst->witness, w.worst->context};
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

}  // namespace lincvx
