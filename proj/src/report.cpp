#include "lincvx/report.hpp"

#include "lincvx/error.hpp"

namespace lincvx {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "inconclusive") return Verdict::inconclusive;
  throw Error(ErrorCode::spec_parse, "unknown verdict '" + s + "'");
}

}  // namespace lincvx
