#include "lincvx/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace lincvx {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::spec_parse, what); }

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) parse_error(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) parse_error("unknown key '" + key + "' in " + where);
  }
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) parse_error(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_error(what + " must be finite");
  return v;
}

// JSON has no infinities; they are written as strings.
Json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number_or_string(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  parse_error("expected a number");
}

}  // namespace

Json to_json(const CPoint& p) {
  Json out = Json::array();
  for (std::size_t j = 0; j < p.dim(); ++j) out.push_back(Json::array({p[j].real(), p[j].imag()}));
  return out;
}

CPoint point_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || j.size() > kMaxDim) parse_error("a point is an array of 1 to 4 [re, im] pairs");
  CPoint p(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    const Json& c = j[k];
    if (c.is_number()) {
      p[k] = number(c, "coordinate");
    } else if (c.is_array() && c.size() == 2) {
      p[k] = Complex(number(c[0], "real part"), number(c[1], "imaginary part"));
    } else {
      parse_error("a complex coordinate is [re, im] or a real number");
    }
  }
  return p;
}

Json to_json(const Disc& d) {
  Json out;
  out["center"] = to_json(d.center);
  out["direction"] = to_json(d.direction.vector());
  out["radius"] = d.radius;
  return out;
}

Disc disc_from_json(const Json& j) {
  reject_unknown_keys(j, {"center", "direction", "radius"}, "disc");
  if (!j.contains("center") || !j.contains("direction") || !j.contains("radius")) {
    parse_error("a disc needs center, direction and radius");
  }
  return Disc(point_from_json(j["center"]), CDirection(point_from_json(j["direction"])), number(j["radius"], "radius"));
}

DomainSpec domain_from_json(const Json& j) {
  reject_unknown_keys(j, {"family", "params", "bounding_radius", "shell_width", "anchor", "expression"}, "domain spec");
  if (!j.contains("family") || !j["family"].is_string()) parse_error("domain spec needs a string 'family'");
  const Family family = family_from_string(j["family"].get<std::string>());
  std::map<std::string, double> params;
  if (j.contains("params")) {
    if (!j["params"].is_object()) parse_error("'params' must be an object");
    for (const auto& [key, value] : j["params"].items()) params[key] = number(value, "parameter '" + key + "'");
  }
  std::optional<double> bounding_radius, shell_width;
  std::optional<CPoint> anchor;
  std::string expression;
  if (j.contains("bounding_radius")) bounding_radius = number(j["bounding_radius"], "bounding_radius");
  if (j.contains("shell_width")) shell_width = number(j["shell_width"], "shell_width");
  if (j.contains("anchor")) anchor = point_from_json(j["anchor"]);
  if (j.contains("expression")) {
    if (!j["expression"].is_string()) parse_error("'expression' must be a string");
    expression = j["expression"].get<std::string>();
  }
  return DomainSpec::make(family, params, bounding_radius, shell_width, anchor, expression);
}

Json to_json(const DomainSpec& d) {
  Json out;
  out["family"] = to_string(d.family());
  Json params = Json::object();
  for (const auto& [key, value] : d.params()) params[key] = value;
  out["params"] = params;
  out["bounding_radius"] = d.bounding_radius();
  out["shell_width"] = d.shell_width();
  out["anchor"] = to_json(d.anchor());
  if (d.family() == Family::custom) out["expression"] = d.expression_text();
  return out;
}

CenteredDiscSystem system_from_json(const Json& j) {
  reject_unknown_keys(j, {"center", "discs"}, "disc system");
  if (!j.contains("discs") || !j["discs"].is_array()) parse_error("disc system needs a 'discs' array");
  std::vector<CenteredDisc> discs;
  for (const Json& d : j["discs"]) {
    reject_unknown_keys(d, {"direction", "radius"}, "system disc");
    if (!d.contains("direction")) parse_error("system disc needs a direction");
    discs.push_back({CDirection(point_from_json(d["direction"])), d.contains("radius") ? number(d["radius"], "radius") : 1.0});
  }
  const CPoint center = j.contains("center") ? point_from_json(j["center"]) : CPoint(2);
  return CenteredDiscSystem(center, std::move(discs));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_error("'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::io, "write to '" + path + "' failed");
}

CPoint parse_point_list(const std::string& text) {
  std::vector<double> reals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      reals.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) parse_error("bad coordinate '" + item + "'");
    } catch (const std::logic_error&) {
      parse_error("bad coordinate '" + item + "'");
    }
  }
  if (reals.empty() || reals.size() % 2 != 0 || reals.size() > 2 * kMaxDim) {
    parse_error("a point is 2n comma-separated reals x1,y1,...");
  }
  return CPoint::from_reals(reals);
}

Json to_json(const CriterionReport& r) {
  Json out;
  out["name"] = r.name;
  out["verdict"] = to_string(r.verdict);
  out["worst_margin"] = finite_or_string(r.worst_margin);
  if (r.witness) {
    out["witness"] = Json{{"point", to_json(r.witness->point)}, {"context", r.witness->context}};
  } else {
    out["witness"] = nullptr;
  }
  out["samples_used"] = r.samples_used;
  out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

CriterionReport report_from_json(const Json& j) {
  reject_unknown_keys(j, {"name", "verdict", "worst_margin", "witness", "samples_used", "elapsed_ms"}, "report");
  CriterionReport r;
  try {
    r.name = j.at("name").get<std::string>();
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.worst_margin = number_or_string(j.at("worst_margin"));
    const Json& w = j.at("witness");
    if (!w.is_null()) r.witness = Witness{point_from_json(w.at("point")), w.at("context").get<std::string>()};
    r.samples_used = j.at("samples_used").get<std::size_t>();
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("malformed report: ") + e.what());
  }
  return r;
}

Json report_document(const Json& config, const std::vector<CriterionReport>& reports) {
  Json doc;
  doc["tool_version"] = kToolVersion;
  doc["config"] = config;
  doc["reports"] = Json::array();
  for (const CriterionReport& r : reports) doc["reports"].push_back(to_json(r));
  return doc;
}

std::vector<CriterionReport> reports_from_document(const Json& doc) {
  if (!doc.is_object() || !doc.contains("reports") || !doc["reports"].is_array()) parse_error("document has no 'reports' array");
  std::vector<CriterionReport> out;
  for (const Json& r : doc["reports"]) out.push_back(report_from_json(r));
  return out;
}

std::string reports_csv(const std::vector<CriterionReport>& reports) {
  std::ostringstream out;
  out.precision(17);
  out << "criterion,sample,margin\n";
  for (const CriterionReport& r : reports) {
    for (std::size_t i = 0; i < r.sample_margins.size(); ++i) {
      if (std::isnan(r.sample_margins[i])) continue;
      out << r.name << ',' << i << ',' << r.sample_margins[i] << '\n';
    }
  }
  return out.str();
}

}  // namespace lincvx
