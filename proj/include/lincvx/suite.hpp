#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lincvx/curvature.hpp"
#include "lincvx/discs.hpp"
#include "lincvx/domains.hpp"
#include "lincvx/io.hpp"
#include "lincvx/report.hpp"

namespace lincvx {

// Criterion names in canonical order. A criterion's seed is seed + its index
// in this list.
const std::vector<std::string>& known_criteria();

struct SuiteConfig {
  std::string spec_path;
  std::vector<std::string> criteria = known_criteria();
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string json_path;
  std::string csv_path;
  unsigned workers = 1;
  bool timings = false;  // keep elapsed_ms; otherwise written as 0

  void validate() const;
  Json to_json() const;
};

// Defect threshold band 1e-6 / scale: below -band is a violation, inside
// the band the sign cannot be trusted.
double defect_band(const DomainSpec& domain);

struct DefectPoint {
  BoundaryPoint point;
  SliceCoefficients slice;
};

// Tangential defect at `samples` boundary points; the worst one is then
// refined by pattern search over the ray direction from the anchor.
struct DefectScan {
  CriterionReport report;  // name "tangential_defect"
  std::optional<DefectPoint> worst;
};

DefectScan defect_scan(const DomainSpec& domain, std::size_t samples, std::uint64_t seed, unsigned workers = 1);

std::vector<CriterionReport> run_suite(const DomainSpec& domain, const SuiteConfig& config);

enum class PipelineStatus { violation_certified, no_violation, inconclusive };
const char* to_string(PipelineStatus s);

struct PipelineResult {
  PipelineStatus status = PipelineStatus::inconclusive;
  std::string message;
  DefectScan scan;
  std::optional<NormalizationFrame> frame;
  double delta = 0.0;
  double discriminant = 0.0;
  std::optional<Disc> disc1;  // original coordinates
  std::optional<Disc> disc2;
  std::optional<CriterionReport> hull;
  double rho_at_witness = 0.0;

  std::vector<CriterionReport> reports() const;
  Json chain_json() const;
};

// Negative defect -> normalization frame -> counterexample discs (delta
// halved from 0.1 / c until the discriminant is negative and the discs lie
// in D with rho < -tol) -> failing hull check.
PipelineResult counterexample_pipeline(const DomainSpec& domain, std::size_t samples, std::uint64_t seed,
                                       unsigned workers = 1, double tol = 1e-9);

// 0 all pass, 1 any fail, 3 any inconclusive and none failing.
int exit_code_for(const std::vector<CriterionReport>& reports);

}  // namespace lincvx
