#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lincvx/cpoint.hpp"

namespace lincvx {

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct Witness {
  CPoint point;
  std::string context;

  friend bool operator==(const Witness&, const Witness&) = default;
};

// Outcome of one criterion run. worst_margin is signed: negative values
// are violations, positive values are slack.
struct CriterionReport {
  std::string name;
  Verdict verdict = Verdict::inconclusive;
  double worst_margin = 0.0;
  std::optional<Witness> witness;
  std::size_t samples_used = 0;
  double elapsed_ms = 0.0;
  // Per-sample margins in sample order, for CSV export. Not serialized to JSON.
  std::vector<double> sample_margins;

  bool passed() const { return verdict == Verdict::pass; }
  bool failed() const { return verdict == Verdict::fail; }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace lincvx
