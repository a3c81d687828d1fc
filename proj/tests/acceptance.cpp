// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lincvx/cli.hpp"
#include "lincvx/random.hpp"
#include "lincvx/suite.hpp"

using namespace lincvx;

namespace {

// Collects failed conditions of one criterion.
struct Checks {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string spec(const std::string& name) { return std::string(LINCVX_SPEC_DIR) + "/" + name; }

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "lincvx");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void require_report(Checks& c, const CriterionReport& r, double floor) {
  c.expect(r.passed(), r.name + " verdict " + to_string(r.verdict));
  c.expect(r.worst_margin >= floor, r.name + " worst margin " + fmt(r.worst_margin));
}

void ball_certification(Checks& c) {
  Stopwatch clock;
  const DomainSpec ball = DomainSpec::ball();
  SuiteConfig cfg;
  cfg.samples = 10000;
  cfg.seed = 1;
  cfg.criteria = {"gauge", "indicatrix", "hor16", "hor22", "hor26"};
  for (const CriterionReport& r : run_suite(ball, cfg)) require_report(c, r, -1e-9);
  cfg.samples = 1000;
  cfg.criteria = {"hull"};
  for (const CriterionReport& r : run_suite(ball, cfg)) require_report(c, r, -1e-9);

  double worst = 0.0;
  for (const BoundaryPoint& p : boundary_sample(ball, 200, 1)) {
    worst = std::max(worst, std::abs(tangential_defect(ball, p) - 0.5));
  }
  c.expect(worst <= 1e-4, "defect deviation " + fmt(worst));
  const double seconds = clock.elapsed_ms() / 1000.0;
  c.expect(seconds < 60.0, "runtime " + fmt(seconds) + " s");
}

void model_violation(Checks& c) {
  const DomainSpec e = DomainSpec::model_e(1.0, 0.5);
  const BoundaryPoint p = make_boundary_point(e, CPoint{0.0, 0.0});
  const double defect = tangential_defect(e, p);
  c.expect(std::abs(defect + 1.0) <= 1e-3, "defect " + fmt(defect));

  const auto chord = tangential_chord_search(e, p, default_chord_lengths(e.scale()));
  c.expect(chord && chord->interior_margin > 0.0, "no tangential chord witness");

  const CounterexampleDiscs d = construct_counterexample_discs(1.0, 0.05);
  const CriterionReport hull = disc_pair_hull_check(e, d.d1, d.d2);
  c.expect(hull.failed(), "hull verdict " + std::string(to_string(hull.verdict)));
  c.expect(hull.witness && model_rho_c(1.0, hull.witness->point) >= -1e-12, "hull witness rho_c");

  const double delta = 0.05, mu = std::sqrt(2.0 * delta);
  const std::pair<CPoint, CPoint> pair{CPoint{delta, delta / mu}, CPoint{delta, -delta / mu}};
  const CriterionReport g = gauge_subadditivity_check(e, CPoint{-0.05, 0.0}, {.trials = 0}, std::span(&pair, 1));
  c.expect(g.failed() && g.worst_margin < -1e-3, "directed pair margin " + fmt(g.worst_margin));
}

void discriminant_fixed_points(Checks& c) {
  const double c1 = 1.0, d1 = 0.05;
  const ChordMargin m = chord_inequality_margin(c1, d1);
  c.expect(m.discriminant == 4 * c1 * c1 * d1 * d1 + 4 * d1 - 1 / c1, "discriminant formula");
  c.expect(std::abs(m.discriminant + 0.79) < 1e-15, "discriminant " + fmt(m.discriminant));
  const ChordMargin big = chord_inequality_margin(1.0, 0.5);
  c.expect(big.discriminant == 2.0, "discriminant at 0.5 " + fmt(big.discriminant));
  const CounterexampleDiscs d = construct_counterexample_discs(c1, d1);
  const double end = model_rho_c(c1, d.d1.at(1.0));
  c.expect(std::abs(end + 0.025) <= 1e-12, "rho_c at zeta=1 " + fmt(end));
  c.expect(m.disc_margin < 0.0, "disc margin " + fmt(m.disc_margin));
}

void bipolar_identity(Checks& c) {
  const CenteredDiscSystem k = CenteredDiscSystem::canonical();
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    Rng rng = trial_rng(4, i);
    const CPoint z = random_in_box(rng, CPoint(2), 1.2);
    worst = std::max(worst, std::abs(double_polar_membership(k, z).sup_value - (std::abs(z[0]) + std::abs(z[1]))));
  }
  c.expect(worst < 1e-9, "sup deviation " + fmt(worst));

  const HullSampling opts{.samples = 10000, .seed = 1, .band = 1e-6};
  const CriterionReport base = hulls_coincide_check(k, opts);
  c.expect(base.passed(), "canonical system " + std::string(to_string(base.verdict)));
  for (int m = 0; m < 10; ++m) {
    Rng rng = trial_rng(44, m);
    std::array<std::array<Complex, 2>, 2> L;
    do {
      for (auto& row : L) {
        for (Complex& x : row) x = Complex(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
      }
    } while (std::abs(L[0][0] * L[1][1] - L[0][1] * L[1][0]) < 0.1);
    const CenteredDiscSystem t = k.transformed(L, random_in_box(rng, CPoint(2), 1.0));
    const CriterionReport r = hulls_coincide_check(t, {.samples = 10000, .seed = static_cast<std::uint64_t>(m)});
    c.expect(r.passed(), "transformed system " + std::to_string(m) + " margin " + fmt(r.worst_margin));
  }
}

void distance_sharpness(Checks& c) {
  const SquaredDistanceField ball(DomainSpec::ball());
  const CPoint z{0.5, 0.0};
  const double radial = hor26_margin(ball, z, CPoint{1.0, 0.0});
  const double tangential = hor26_margin(ball, z, CPoint{0.0, 1.0});
  c.expect(std::abs(radial) <= 1e-5, "radial " + fmt(radial));
  c.expect(std::abs(tangential - 4.0) <= 1e-3, "tangential " + fmt(tangential));
  const std::vector<double> probe = hor17_probe(ball, z, {0.1, 0.05, 0.025});
  for (std::size_t i = 0; i < probe.size(); ++i) {
    c.expect(probe[i] <= 1e-3, "hor17 value " + fmt(probe[i]));
    if (i > 0) c.expect(probe[i] <= probe[i - 1], "hor17 not nonincreasing");
  }
}

void end_to_end(Checks& c) {
  const auto dir = std::filesystem::temp_directory_path() / "lincvx_acceptance";
  std::filesystem::create_directories(dir);
  const auto a = dir / "modelE_a.json", b = dir / "modelE_b.json", ball = dir / "ball.json";
  const int code_a = run({"pipeline", spec("modelE.json"), "--seed", "1", "--json", a.string()});
  const int code_b = run({"pipeline", spec("modelE.json"), "--seed", "1", "--json", b.string()});
  const int code_ball = run({"pipeline", spec("ball.json"), "--seed", "1", "--json", ball.string()});
  c.expect(code_a == kExitFail && code_b == kExitFail, "modelE exit " + std::to_string(code_a));
  c.expect(code_ball == kExitPass, "ball exit " + std::to_string(code_ball));
  const std::string text = slurp(a);
  c.expect(!text.empty() && text == slurp(b), "rerun JSON differs");
  if (!text.empty()) {
    const Json chain = Json::parse(text)["pipeline"];
    c.expect(chain["status"] == "violation_certified", "status");
    c.expect(chain["defect"].is_object() && chain["defect"]["defect"].get<double>() < 0.0, "defect link");
    c.expect(chain["frame"].is_object(), "frame link");
    c.expect(chain["discs"].is_array() && chain["discs"].size() == 2, "discs link");
    c.expect(chain["hull_witness"].is_object(), "hull witness link");
  }
  const std::string ball_text = slurp(ball);
  c.expect(!ball_text.empty() && Json::parse(ball_text)["pipeline"]["status"] == "no_violation", "ball status");
  std::filesystem::remove_all(dir);
}

void real_convexity(Checks& c) {
  const CriterionReport ball = midpoint_triangle_check(DomainSpec::ball(), {.trials = 1000});
  c.expect(ball.passed(), "ball " + std::string(to_string(ball.verdict)) + " margin " + fmt(ball.worst_margin));
  const DomainSpec crescent = domain_from_json(read_json_file(spec("crescent.json")));
  const CriterionReport bad = midpoint_triangle_check(crescent, {.trials = 1000});
  c.expect(bad.failed() && bad.witness.has_value(), "crescent " + std::string(to_string(bad.verdict)));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Checks&)>>> criteria = {
      {"ball certification", ball_certification},
      {"model-domain violation", model_violation},
      {"discriminant fixed points", discriminant_fixed_points},
      {"bipolar identity", bipolar_identity},
      {"squared-distance sharpness", distance_sharpness},
      {"end-to-end pipeline", end_to_end},
      {"real-convexity analogue", real_convexity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checks c;
    Stopwatch clock;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("%s %zu %s (%.1f s)", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), clock.elapsed_ms() / 1000);
    for (const std::string& f : c.failures) std::printf(" | %s", f.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
