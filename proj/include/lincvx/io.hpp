#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "lincvx/discs.hpp"
#include "lincvx/domains.hpp"
#include "lincvx/duality.hpp"
#include "lincvx/report.hpp"

namespace lincvx {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// Complex numbers are [re, im] pairs; points are arrays of them.
Json to_json(const CPoint& p);
CPoint point_from_json(const Json& j);
Json to_json(const Disc& d);
Disc disc_from_json(const Json& j);

// {"family", "params", "bounding_radius", "shell_width", "anchor", "expression"};
// only "family" is required (custom also needs the last three). Unknown keys
// are rejected with ErrorCode::spec_parse.
DomainSpec domain_from_json(const Json& j);
Json to_json(const DomainSpec& d);

// {"center": point, "discs": [{"direction": point, "radius": r}, ...]}
CenteredDiscSystem system_from_json(const Json& j);

// Reads and parses a file. Missing or unreadable files raise ErrorCode::io,
// malformed content ErrorCode::spec_parse.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// "x1,y1,x2,y2" -> CPoint
CPoint parse_point_list(const std::string& text);

Json to_json(const CriterionReport& r);
CriterionReport report_from_json(const Json& j);

// {"tool_version", "config", "reports": [...]}
Json report_document(const Json& config, const std::vector<CriterionReport>& reports);
std::vector<CriterionReport> reports_from_document(const Json& doc);

// criterion,sample,margin rows; skipped samples are omitted.
std::string reports_csv(const std::vector<CriterionReport>& reports);

}  // namespace lincvx
