#include "lincvx/cli.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "lincvx/suite.hpp"

namespace lincvx {

namespace {

int exit_for_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::io: return kExitIo;
    case ErrorCode::spec_parse:
    case ErrorCode::unknown_family:
    case ErrorCode::invalid_argument:
    case ErrorCode::wrong_dimension:
    case ErrorCode::invalid_direction:
    case ErrorCode::empty_system:
    case ErrorCode::not_interior: return kExitUsage;
    default: return kExitInconclusive;
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "all") {
      out = known_criteria();
      continue;
    }
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_summary(std::ostream& out, const std::vector<CriterionReport>& reports) {
  for (const CriterionReport& r : reports) {
    out << std::left << std::setw(20) << r.name << std::setw(14) << to_string(r.verdict) << "worst_margin="
        << std::setprecision(6) << r.worst_margin << " samples=" << r.samples_used << '\n';
  }
}

// Input files that cannot be read count as bad specs (exit 2); exit 4 is
// reserved for output failures.
Json read_input(const std::string& path) {
  try {
    return read_json_file(path);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::io) throw;
    throw Error(ErrorCode::spec_parse, e.what());
  }
}

// Writes the document to `path`, or to `out` when path is empty.
void emit(const Json& doc, const std::string& path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical linear-convexity checks for domains in C^n"};
  app.require_subcommand(1);

  SuiteConfig cfg;
  std::string criteria_text = "all";
  auto* check = app.add_subcommand("check", "run criterion suites on a domain spec");
  check->add_option("spec", cfg.spec_path, "domain spec JSON")->required();
  check->add_option("--criteria", criteria_text, "comma-separated criteria or 'all'");
  check->add_option("--samples", cfg.samples, "samples per criterion")->check(CLI::PositiveNumber);
  check->add_option("--seed", cfg.seed, "base seed");
  check->add_option("--tol", cfg.tol, "margin tolerance")->check(CLI::PositiveNumber);
  check->add_option("--json", cfg.json_path, "JSON report path (stdout if absent)");
  check->add_option("--csv", cfg.csv_path, "per-sample margins CSV");
  check->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  check->add_flag("--timings", cfg.timings, "record elapsed_ms");

  std::string defect_spec, defect_point;
  auto* defect = app.add_subcommand("defect", "tangential defect at a boundary point");
  defect->add_option("spec", defect_spec, "domain spec JSON")->required();
  defect->add_option("--point", defect_point, "x1,y1,x2,y2 (projected onto the boundary)")->required();

  double disc_c = 1.0, disc_delta = 0.05;
  int disc_samples = 1024;
  std::string disc_csv;
  auto* discs = app.add_subcommand("discs", "counterexample discs in the model domain");
  discs->add_option("--c", disc_c, "model constant c >= 1")->required();
  discs->add_option("--delta", disc_delta, "disc parameter delta > 0")->required();
  discs->add_option("--samples", disc_samples, "theta samples on the disc boundary")->check(CLI::PositiveNumber);
  discs->add_option("--csv", disc_csv, "rho_c / delta and the theta-quadratic along the boundary");

  std::string system_path, query;
  auto* hull = app.add_subcommand("hull", "convex hull and double polar membership for a disc system");
  hull->add_option("--system", system_path, "disc system JSON")->required();
  hull->add_option("--query", query, "x1,y1,x2,y2")->required();

  std::string pipe_spec, pipe_json;
  std::size_t pipe_samples = 2000;
  std::uint64_t pipe_seed = 1;
  unsigned pipe_workers = 1;
  double pipe_tol = 1e-9;
  bool pipe_timings = false;
  auto* pipeline = app.add_subcommand("pipeline", "search for a defect and build a counterexample");
  pipeline->add_option("spec", pipe_spec, "domain spec JSON")->required();
  pipeline->add_option("--samples", pipe_samples, "boundary samples")->check(CLI::PositiveNumber);
  pipeline->add_option("--seed", pipe_seed, "seed");
  pipeline->add_option("--tol", pipe_tol, "containment tolerance")->check(CLI::PositiveNumber);
  pipeline->add_option("--json", pipe_json, "JSON report path (stdout if absent)");
  pipeline->add_option("--workers", pipe_workers, "worker threads")->check(CLI::PositiveNumber);
  pipeline->add_flag("--timings", pipe_timings, "record elapsed_ms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (*check) {
      cfg.criteria = split_list(criteria_text);
      cfg.validate();
      const DomainSpec domain = domain_from_json(read_input(cfg.spec_path));
      const std::vector<CriterionReport> reports = run_suite(domain, cfg);
      Json config = cfg.to_json();
      config["domain"] = to_json(domain);
      emit(report_document(config, reports), cfg.json_path, out);
      if (!cfg.csv_path.empty()) write_text_file(cfg.csv_path, reports_csv(reports));
      if (!cfg.json_path.empty()) print_summary(out, reports);
      return exit_code_for(reports);
    }

    if (*defect) {
      const DomainSpec domain = domain_from_json(read_input(defect_spec));
      const BoundaryPoint p = project_to_boundary(domain, parse_point_list(defect_point));
      const SliceCoefficients s = tangential_slice(domain, p);
      const double band = defect_band(domain);
      Json doc;
      doc["tool_version"] = kToolVersion;
      doc["point"] = to_json(p.point);
      doc["b22"] = s.b22;
      doc["a22"] = Json::array({s.a22.real(), s.a22.imag()});
      doc["defect"] = s.defect;
      doc["band"] = band;
      out << doc.dump(2) << '\n';
      if (s.defect < -band) return kExitFail;
      return s.defect <= band ? kExitInconclusive : kExitPass;
    }

    if (*discs) {
      const ChordMargin m = chord_inequality_margin(disc_c, disc_delta, disc_samples);
      Json doc;
      doc["tool_version"] = kToolVersion;
      doc["c"] = disc_c;
      doc["delta"] = disc_delta;
      doc["discriminant"] = m.discriminant;
      doc["disc_margin"] = m.disc_margin;
      doc["quadratic_max"] = m.quadratic_max;
      doc["valid"] = m.valid;
      if (m.discriminant < 0.0) {
        const CounterexampleDiscs d = construct_counterexample_discs(disc_c, disc_delta);
        doc["mu"] = d.mu;
        doc["discs"] = Json::array({to_json(d.d1), to_json(d.d2)});
      }
      out << doc.dump(2) << '\n';
      if (!disc_csv.empty()) {
        std::ostringstream csv;
        csv.precision(17);
        csv << "theta,x,rho_over_delta,half_quadratic\n";
        for (const ChordProfilePoint& p : chord_profile(disc_c, disc_delta, disc_samples)) {
          csv << p.theta << ',' << p.x << ',' << p.rho_over_delta << ',' << p.half_quadratic << '\n';
        }
        write_text_file(disc_csv, csv.str());
      }
      return m.valid ? kExitPass : kExitFail;
    }

    if (*hull) {
      const CenteredDiscSystem system = system_from_json(read_input(system_path));
      const CPoint z = parse_point_list(query);
      const DoublePolar dp = double_polar_membership(system, z);
      const bool in_hull = system.discs().size() <= 2 ? convex_hull_membership(system, z) : dp.inside;
      Json doc;
      doc["tool_version"] = kToolVersion;
      doc["query"] = to_json(z);
      doc["sup_value"] = std::isfinite(dp.sup_value) ? Json(dp.sup_value) : Json("inf");
      doc["double_polar_inside"] = dp.inside;
      doc["convex_hull_inside"] = in_hull;
      out << doc.dump(2) << '\n';
      return in_hull == dp.inside ? kExitPass : kExitFail;
    }

    if (*pipeline) {
      const DomainSpec domain = domain_from_json(read_input(pipe_spec));
      const PipelineResult res = counterexample_pipeline(domain, pipe_samples, pipe_seed, pipe_workers, pipe_tol);
      std::vector<CriterionReport> reports = res.reports();
      if (!pipe_timings) {
        for (CriterionReport& r : reports) r.elapsed_ms = 0.0;
      }
      Json config;
      config["spec"] = pipe_spec;
      config["domain"] = to_json(domain);
      config["samples"] = pipe_samples;
      config["seed"] = pipe_seed;
      config["tol"] = pipe_tol;
      config["workers"] = pipe_workers;
      Json doc = report_document(config, reports);
      doc["pipeline"] = res.chain_json();
      emit(doc, pipe_json, out);
      if (!pipe_json.empty()) {
        print_summary(out, reports);
        out << to_string(res.status) << ": " << res.message << '\n';
      }
      switch (res.status) {
        case PipelineStatus::violation_certified: return kExitFail;
        case PipelineStatus::no_violation: return kExitPass;
        case PipelineStatus::inconclusive: return kExitInconclusive;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for_error(e);
  }
  return kExitUsage;
}

}  // namespace lincvx
