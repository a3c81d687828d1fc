#include "lincvx/suite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lincvx/directional.hpp"
#include "lincvx/duality.hpp"
#include "lincvx/parallel.hpp"
#include "lincvx/random.hpp"

namespace lincvx {

const std::vector<std::string>& known_criteria() {
  static const std::vector<std::string> names{"gauge", "hull",   "defect", "chord",      "hor16",
                                              "hor22", "hor26",  "bipolar", "indicatrix", "triangle"};
  return names;
}

void SuiteConfig::validate() const {
  if (criteria.empty()) throw Error(ErrorCode::invalid_argument, "criteria list is empty");
  for (const std::string& c : criteria) {
    if (std::find(known_criteria().begin(), known_criteria().end(), c) == known_criteria().end()) {
      throw Error(ErrorCode::invalid_argument, "unknown criterion '" + c + "'");
    }
  }
  if (samples == 0) throw Error(ErrorCode::invalid_argument, "samples must be positive");
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tol must be positive");
  if (workers == 0) throw Error(ErrorCode::invalid_argument, "workers must be positive");
}

// Output paths and timing flags are left out so that reruns writing to
// different files produce the same document.
Json SuiteConfig::to_json() const {
  Json j;
  j["spec"] = spec_path;
  j["criteria"] = criteria;
  j["samples"] = samples;
  j["seed"] = seed;
  j["tol"] = tol;
  j["workers"] = workers;
  return j;
}

double defect_band(const DomainSpec& domain) { return 1e-6 / domain.scale(); }

int exit_code_for(const std::vector<CriterionReport>& reports) {
  bool inconclusive = false;
  for (const CriterionReport& r : reports) {
    if (r.failed()) return 1;
    if (r.verdict == Verdict::inconclusive) inconclusive = true;
  }
  return inconclusive ? 3 : 0;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// Criteria that only make sense in C^2 report inconclusive elsewhere.
CriterionReport not_applicable(const std::string& name) {
  CriterionReport r;
  r.name = name;
  r.verdict = Verdict::inconclusive;
  return r;
}

// Fails below -tol, or at or below +tol when nonstrict_fail is set.
CriterionReport finish(const std::string& name, WorstOf w, double tol, bool nonstrict_fail = false) {
  CriterionReport r;
  r.name = name;
  r.samples_used = w.evaluated;
  r.sample_margins = std::move(w.margins);
  if (!w.worst) {
    r.verdict = Verdict::inconclusive;
    return r;
  }
  r.worst_margin = w.worst->margin;
  r.witness = Witness{w.worst->witness, w.worst->context};
  const bool failed = nonstrict_fail ? w.worst->margin <= tol : w.worst->margin < -tol;
  r.verdict = failed ? Verdict::fail : Verdict::pass;
  return r;
}

std::optional<CPoint> random_interior(const DomainSpec& domain, Rng& rng) {
  const CPoint origin(domain.dim());
  for (int draw = 0; draw < 10000; ++draw) {
    CPoint z = random_in_box(rng, origin, domain.bounding_radius());
    if (domain.rho(z) < 0.0) return z;
  }
  return std::nullopt;
}

// Two random discs through a random interior point, each with 0.9 of its
// directional boundary distance.
std::optional<std::pair<Disc, Disc>> random_centered_pair(const DomainSpec& domain, Rng& rng) {
  const auto c = random_interior(domain, rng);
  if (!c) return std::nullopt;
  const CDirection X1(random_unit(rng, domain.dim()));
  const CDirection X2(random_unit(rng, domain.dim()));
  const GaugeSample g1 = directional_distance(domain, *c, X1);
  const GaugeSample g2 = directional_distance(domain, *c, X2);
  if (!g1.finite() || !g2.finite()) return std::nullopt;
  return std::make_pair(Disc(*c, X1, 0.9 * g1.distance), Disc(*c, X2, 0.9 * g2.distance));
}

std::optional<double> defect_at(const DomainSpec& domain, const BoundaryPoint& p, SliceCoefficients* out) {
  try {
    const SliceCoefficients s = tangential_slice(domain, p);
    if (out) *out = s;
    return s.defect;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string slice_context(const SliceCoefficients& s) {
  return "b22=" + fmt(s.b22) + " |a22|=" + fmt(std::abs(s.a22)) + " defect=" + fmt(s.defect);
}

// Pattern search on the ray direction u from the anchor, starting at p.
DefectPoint refine_defect(const DomainSpec& domain, DefectPoint best) {
  const CPoint& anchor = domain.anchor();
  const double t_max = 1.01 * (domain.bounding_radius() + anchor.norm());
  CPoint u = best.point.point - anchor;
  u = u / u.norm();
  int evals = 0;
  for (double step = 0.05; step > 1e-7 && evals < 4000; step *= 0.5) {
    bool improved = true;
    while (improved && evals < 4000) {
      improved = false;
      for (std::size_t k = 0; k < u.real_dim() && !improved; ++k) {
        for (double sgn : {1.0, -1.0}) {
          CPoint cand = u;
          cand.set_real(k, cand.real_at(k) + sgn * step);
          cand = cand / cand.norm();
          ++evals;
          std::optional<double> t;
          try {
            t = first_exit(domain, anchor, cand, t_max);
          } catch (const Error&) {
          }
          if (!t) continue;
          const CPoint p = anchor + *t * cand;
          if (domain.family() == Family::modelE) {
            const auto [rc, sphere] = domain.model_pieces(p);
            const double corner = 1e-6 * domain.scale();
            if (std::abs(rc) <= corner && std::abs(sphere) <= corner) continue;
          }
          BoundaryPoint bp;
          try {
            bp = make_boundary_point(domain, p);
          } catch (const Error&) {
            continue;
          }
          SliceCoefficients s;
          const auto d = defect_at(domain, bp, &s);
          if (d && *d < best.slice.defect) {
            best = {bp, s};
            u = cand;
            improved = true;
            break;
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

DefectScan defect_scan(const DomainSpec& domain, std::size_t samples, std::uint64_t seed, unsigned workers) {
  Stopwatch clock;
  DefectScan out;
  if (domain.dim() != 2) {
    out.report = not_applicable("tangential_defect");
    return out;
  }
  const std::vector<BoundaryPoint> points = boundary_sample(domain, samples, seed);
  std::vector<std::optional<SliceCoefficients>> slices(points.size());
  WorstOf w = worst_over(points.size(), workers, [&](std::size_t i) -> std::optional<Sample> {
    SliceCoefficients s;
    const auto d = defect_at(domain, points[i], &s);
    if (!d) return std::nullopt;
    slices[i] = s;
    return Sample{*d, points[i].point, slice_context(s)};
  });

  CriterionReport& r = out.report;
  r.name = "tangential_defect";
  r.samples_used = w.evaluated;
  r.sample_margins = std::move(w.margins);
  if (!w.worst) {
    r.verdict = Verdict::inconclusive;
    r.elapsed_ms = clock.elapsed_ms();
    return out;
  }
  const DefectPoint best = refine_defect(domain, {points[w.worst_index], *slices[w.worst_index]});
  out.worst = best;
  r.worst_margin = best.slice.defect;
  r.witness = Witness{best.point.point, slice_context(best.slice)};
  const double band = defect_band(domain);
  if (best.slice.defect < -band) {
    r.verdict = Verdict::fail;
  } else if (best.slice.defect <= band) {
    r.verdict = Verdict::inconclusive;
  } else {
    r.verdict = Verdict::pass;
  }
  r.elapsed_ms = clock.elapsed_ms();
  return out;
}

const char* to_string(PipelineStatus s) {
  switch (s) {
    case PipelineStatus::violation_certified: return "violation_certified";
    case PipelineStatus::no_violation: return "no_violation";
    case PipelineStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<CriterionReport> PipelineResult::reports() const {
  std::vector<CriterionReport> out{scan.report};
  if (hull) out.push_back(*hull);
  return out;
}

Json PipelineResult::chain_json() const {
  Json j;
  j["status"] = to_string(status);
  j["message"] = message;
  if (scan.worst) {
    const SliceCoefficients& s = scan.worst->slice;
    j["defect"] = Json{{"point", to_json(scan.worst->point.point)},
                       {"b22", s.b22},
                       {"a22", Json::array({s.a22.real(), s.a22.imag()})},
                       {"defect", s.defect}};
  } else {
    j["defect"] = nullptr;
  }
  if (frame) {
    j["frame"] = Json{{"origin", to_json(frame->origin)},     {"normal", to_json(frame->normal)},
                      {"tangent", to_json(frame->tangent)},   {"w_scale", frame->w_scale},
                      {"ell", frame->ell},                    {"c_fit", frame->c_fit},
                      {"c", frame->c},                        {"r", frame->r}};
  } else {
    j["frame"] = nullptr;
  }
  if (disc1 && disc2) {
    j["delta"] = delta;
    j["discriminant"] = discriminant;
    j["discs"] = Json::array({to_json(*disc1), to_json(*disc2)});
  } else {
    j["discs"] = nullptr;
  }
  if (hull && hull->witness) {
    Json w{{"point", to_json(hull->witness->point)}, {"rho", rho_at_witness}};
    if (frame) w["frame_point"] = to_json(frame->to_frame(hull->witness->point));
    j["hull_witness"] = w;
  } else {
    j["hull_witness"] = nullptr;
  }
  return j;
}

PipelineResult counterexample_pipeline(const DomainSpec& domain, std::size_t samples, std::uint64_t seed,
                                       unsigned workers, double tol) {
  PipelineResult res;
  res.scan = defect_scan(domain, samples, seed, workers);
  if (domain.dim() != 2) {
    res.message = "the defect chain requires n = 2";
    return res;
  }
  if (!res.scan.worst) {
    res.message = "no boundary sample admitted a defect evaluation";
    return res;
  }
  const double band = defect_band(domain);
  const double defect = res.scan.worst->slice.defect;
  if (defect > band) {
    res.status = PipelineStatus::no_violation;
    res.message = "no violation found at this sampling depth";
    return res;
  }
  if (defect >= -band) {
    res.message = "worst defect " + fmt(defect) + " lies inside the band +-" + fmt(band);
    return res;
  }

  try {
    res.frame = lemma_normalization(domain, res.scan.worst->point);
  } catch (const Error& e) {
    res.message = std::string("normalization failed: ") + e.what();
    return res;
  }
  const NormalizationFrame& f = *res.frame;
  constexpr int kDeltaHalvings = 40;
  double delta = 0.1 / f.c;
  for (int k = 0; k < kDeltaHalvings && !res.disc1; ++k, delta *= 0.5) {
    if (!(chord_discriminant(f.c, delta) < 0.0)) continue;
    const CounterexampleDiscs discs = construct_counterexample_discs(f.c, delta);
    Disc d1 = f.to_original(discs.d1);
    Disc d2 = f.to_original(discs.d2);
    if (max_rho_on_disc(domain, d1) < -tol && max_rho_on_disc(domain, d2) < -tol) {
      res.delta = delta;
      res.discriminant = chord_discriminant(f.c, delta);
      res.disc1 = std::move(d1);
      res.disc2 = std::move(d2);
    }
  }
  if (!res.disc1) {
    res.message = "no delta in the halving ladder gives discs inside the domain";
    return res;
  }

  HullGrid grid;
  grid.workers = workers;
  res.hull = disc_pair_hull_check(domain, *res.disc1, *res.disc2, grid, tol);
  if (res.hull->witness) res.rho_at_witness = domain.rho(res.hull->witness->point);
  if (res.hull->failed()) {
    res.status = PipelineStatus::violation_certified;
    res.message = "convex hull of two discs in the domain reaches rho = " + fmt(res.rho_at_witness);
  } else {
    res.message = "hull check did not fail";
  }
  return res;
}

std::vector<CriterionReport> run_suite(const DomainSpec& domain, const SuiteConfig& config) {
  config.validate();
  const auto& names = known_criteria();
  auto seed_of = [&](const std::string& name) {
    return config.seed + static_cast<std::uint64_t>(std::find(names.begin(), names.end(), name) - names.begin());
  };
  auto wants = [&](const std::string& name) {
    return std::find(config.criteria.begin(), config.criteria.end(), name) != config.criteria.end();
  };
  const std::size_t n = domain.dim();
  const double tol = config.tol;

  std::optional<PipelineResult> pipeline;
  auto get_pipeline = [&]() -> const PipelineResult& {
    if (!pipeline) pipeline = counterexample_pipeline(domain, config.samples, seed_of("defect"), config.workers, tol);
    return *pipeline;
  };
  std::optional<SquaredDistanceField> field;
  auto get_field = [&]() -> const SquaredDistanceField& {
    if (!field) field.emplace(domain);
    return *field;
  };

  std::vector<CriterionReport> reports;
  for (const std::string& name : names) {
    if (!wants(name)) continue;
    Stopwatch clock;
    const std::uint64_t seed = seed_of(name);
    CheckOptions opts{config.samples, seed, tol, config.workers};
    CriterionReport r;
    try {
      if (name == "gauge") {
        r = gauge_subadditivity_check(domain, domain.anchor(), opts);
      } else if (name == "indicatrix") {
        r = indicatrix_midpoint_check(domain, domain.anchor(), opts);
      } else if (name == "triangle") {
        r = midpoint_triangle_check(domain, opts);
      } else if (name == "defect") {
        r = n == 2 ? get_pipeline().scan.report : not_applicable("tangential_defect");
      } else if (name == "hull") {
        HullGrid coarse{9, 16, 16, false, 1};
        WorstOf w = worst_over(config.samples, config.workers, [&](std::size_t i) -> std::optional<Sample> {
          Rng rng = trial_rng(seed, i);
          const auto pair = random_centered_pair(domain, rng);
          if (!pair) return std::nullopt;
          const CriterionReport pr = disc_pair_hull_check(domain, pair->first, pair->second, coarse, tol);
          if (pr.verdict == Verdict::inconclusive || !pr.witness) return std::nullopt;
          return Sample{pr.worst_margin, pr.witness->point, "random pair: " + pr.witness->context};
        });
        // The counterexample discs of a negative-defect point join as the last sample.
        if (n == 2) {
          const PipelineResult& p = get_pipeline();
          if (p.hull && p.hull->witness && (!w.worst || p.hull->worst_margin < w.worst->margin)) {
            w.worst = Sample{p.hull->worst_margin, p.hull->witness->point, "counterexample discs: " + p.hull->witness->context};
            w.worst_index = w.margins.size();
            ++w.evaluated;
          }
          if (p.hull) w.margins.push_back(p.hull->worst_margin);
        }
        r = finish("disc_pair_hull", std::move(w), tol, true);
      } else if (name == "chord") {
        if (n != 2) {
          r = not_applicable("tangential_chord");
        } else {
          const std::vector<BoundaryPoint> points = boundary_sample(domain, config.samples, seed);
          const std::vector<double> lengths = default_chord_lengths(domain.scale());
          WorstOf w = worst_over(points.size(), config.workers, [&](std::size_t i) -> std::optional<Sample> {
            try {
              const double m = chord_exit_margin(domain, points[i], lengths);
              if (!std::isfinite(m)) return std::nullopt;
              return Sample{m, points[i].point, "largest rho on the best tangential segment " + fmt(m)};
            } catch (const Error&) {
              return std::nullopt;
            }
          });
          r = finish("tangential_chord", std::move(w), tol);
        }
      } else if (name == "hor16" || name == "hor22") {
        const SquaredDistanceField& f = get_field();
        const bool h16 = name == "hor16";
        WorstOf w = worst_over(config.samples, config.workers, [&](std::size_t i) -> std::optional<Sample> {
          Rng rng = trial_rng(seed, i);
          const auto z = random_interior(domain, rng);
          const auto y = random_interior(domain, rng);
          if (!z || !y) return std::nullopt;
          try {
            const double m = h16 ? hor16_margin(f, *z, *y) : hor22_margin(f, *z, *y);
            return Sample{m, *y, "base " + to_string(*z)};
          } catch (const Error&) {
            return std::nullopt;
          }
        });
        r = finish(name, std::move(w), tol);
      } else if (name == "hor26") {
        const SquaredDistanceField& f = get_field();
        WorstOf w = worst_over(config.samples, config.workers, [&](std::size_t i) -> std::optional<Sample> {
          Rng rng = trial_rng(seed, i);
          const auto z = random_interior(domain, rng);
          if (!z) return std::nullopt;
          const CPoint v = random_unit(rng, n);
          try {
            return Sample{hor26_margin(f, *z, v), *z, "direction " + to_string(v)};
          } catch (const Error&) {
            return std::nullopt;
          }
        });
        r = finish(name, std::move(w), tol);
      } else if (name == "bipolar") {
        if (n != 2) {
          r = not_applicable("bipolar_hull");
        } else {
          constexpr std::size_t kSystems = 10;
          const std::size_t per_system = std::max<std::size_t>(1, config.samples / kSystems);
          WorstOf w = worst_over(kSystems, 1, [&](std::size_t i) -> std::optional<Sample> {
            Rng rng = trial_rng(seed, i);
            const auto pair = random_centered_pair(domain, rng);
            if (!pair) return std::nullopt;
            const CenteredDiscSystem sys(pair->first.center, {{pair->first.direction, pair->first.radius},
                                                              {pair->second.direction, pair->second.radius}});
            const CriterionReport cr = hulls_coincide_check(sys, {per_system, mix_seed(seed, i), 1e-6, config.workers});
            if (!cr.witness) return std::nullopt;
            return Sample{cr.worst_margin, cr.witness->point, cr.witness->context};
          });
          r = finish("bipolar_hull", std::move(w), 0.0);
        }
      }
    } catch (const Error&) {
      // Numerical degeneracy inside a criterion leaves it undecided.
      r = not_applicable(name);
    }
    r.elapsed_ms = config.timings ? clock.elapsed_ms() : 0.0;
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace lincvx
