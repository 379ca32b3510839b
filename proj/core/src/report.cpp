#include "tclab/report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tclab {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), p);
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

ordered_json zero_line_json(const ZeroLine& line) {
  ordered_json j;
  j["found"] = line.found;
  if (line.found) {
    j["angle"] = line.angle;
    j["slope_ds_dt"] = line.slope_ds_dt;
    j["slope_dt_ds"] = line.slope_dt_ds;
  }
  return j;
}

}  // namespace

void write_report_csv(const std::string& path, const VerificationReport& report) {
  // Wall-clock runtimes stay on stdout and in the in-memory report; the
  // written files must be byte-identical across reruns of one config + seed.
  std::ostringstream out;
  out << "check,status,measured,tolerance,note\n";
  for (const auto& c : report.checks) {
    out << c.name << "," << c.status << "," << format_double(c.measured) << ","
        << format_double(c.tolerance) << "," << c.note << "\n";
  }
  write_file(path, out.str());
}

void write_report_json(const std::string& path, const VerificationReport& report,
                       std::uint64_t seed) {
  ordered_json j;
  j["seed"] = seed;
  j["all_pass"] = report.all_pass();
  j["checks"] = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = c.status;
    cj["measured"] = c.measured;
    cj["tolerance"] = c.tolerance;
    if (!c.note.empty()) cj["note"] = c.note;
    j["checks"].push_back(cj);
  }
  write_file(path, j.dump(2) + "\n");
}

void write_exponent_csv(const std::string& path, const std::vector<ExponentCsvRow>& rows) {
  std::ostringstream out;
  out << "label,point_id,s,t,T,estimate,closed_form,abs_error\n";
  for (const auto& r : rows) {
    out << r.label << "," << r.point_id << "," << format_double(r.s) << "," << format_double(r.t)
        << "," << format_double(r.T) << "," << format_double(r.estimate) << ","
        << format_double(r.closed_form) << "," << format_double(r.abs_error) << "\n";
  }
  write_file(path, out.str());
}

void write_verdicts_json(const std::string& path, const TimeChangedAction& tca,
                         const std::vector<ExponentField>& fields, const RankOneVerdict& rank_one,
                         const HomogeneityVerdict& homogeneity, std::uint64_t seed) {
  ordered_json j;
  j["seed"] = seed;
  j["delta"] = tca.delta();
  j["coupling"] = tca.cocycle.coupling == Coupling::first_factor_only ? "first_factor_only"
                                                                      : "both";
  if (!fields.empty()) {
    j["horizon"] = fields.front().horizon;
    j["grid_directions"] = fields.front().grid.size();
  }

  j["rank_one"] = rank_one.no_rank_one_factors;
  j["rank_one_threshold"] = rank_one.threshold;
  ordered_json failures = ordered_json::array();
  for (const auto& f : rank_one.failures) {
    failures.push_back({{"label", label_name(f.label)},
                        {"direction", {f.direction.x, f.direction.y}},
                        {"max_abs_estimate", std::abs(f.estimate)}});
  }
  j["rank_one_failures"] = failures;
  ordered_json witnesses = ordered_json::array();
  for (const auto& w : rank_one.witnesses) {
    witnesses.push_back({{"label", label_name(w.label)},
                         {"direction", {w.direction.x, w.direction.y}},
                         {"point", w.point_id},
                         {"estimate", w.estimate}});
  }
  j["rank_one_witnesses"] = witnesses;

  j["homogeneous"] = !homogeneity.not_homogeneous;
  ordered_json lines;
  for (const auto& l : homogeneity.lines) {
    ordered_json lj;
    lj["at_x"] = zero_line_json(l.at_x);
    lj["at_y"] = zero_line_json(l.at_y);
    lj["angle_between"] = l.angle_between;
    lj["distinct"] = l.distinct;
    lines[label_name(l.label)] = lj;
  }
  j["zero_lines"] = lines;
  write_file(path, j.dump(2) + "\n");
}

void write_dispersion_json(const std::string& path, const std::vector<DispersionReport>& reports,
                           const std::pair<double, double>& livsic1,
                           const std::pair<double, double>& livsic2, std::uint64_t seed) {
  ordered_json j;
  j["seed"] = seed;
  j["lines"] = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json lj;
    lj["direction"] = {r.direction.x, r.direction.y};
    lj["horizon"] = r.horizon;
    lj["checkpoints"] = r.checkpoints;
    lj["aggregate_dispersion"] = r.aggregate_dispersion;
    lj["aggregate_at"] = r.aggregate_at;
    lj["verdict"] = r.verdict;
    lj["observables"] = ordered_json::array();
    for (const auto& od : r.observables) {
      ordered_json oj;
      oj["name"] = od.observable;
      oj["dispersion"] = od.dispersion;
      oj["dispersion_at"] = od.dispersion_at;
      oj["space_average"] = od.space_average;
      oj["per_start_averages"] = od.per_start_averages;
      lj["observables"].push_back(oj);
    }
    j["lines"].push_back(lj);
  }
  // Periodic integrals of the bumps over their marked orbits; unequal values
  // are the periodic-data obstruction to the cocycle being a coboundary.
  j["livsic_periodic_integrals"] = {
      {"factor1", {{"plus", livsic1.first}, {"minus", livsic1.second}}},
      {"factor2", {{"plus", livsic2.first}, {"minus", livsic2.second}}}};
  write_file(path, j.dump(2) + "\n");
}

void write_line_csv(const std::string& path, const DispersionReport& report) {
  std::ostringstream out;
  out << "line_dx,line_dy,observable,start_id,T,average\n";
  // Per-start averages are recorded at the final horizon.
  for (const auto& od : report.observables) {
    for (std::size_t s = 0; s < od.per_start_averages.size(); ++s) {
      out << format_double(report.direction.x) << "," << format_double(report.direction.y) << ","
          << od.observable << "," << s << "," << format_double(report.horizon) << ","
          << format_double(od.per_start_averages[s]) << "\n";
    }
  }
  write_file(path, out.str());
}

int write_summary(const std::string& out_dir, const std::string& summary_path,
                  std::string* rendered_table) {
  namespace fs = std::filesystem;
  ordered_json summary;
  std::ostringstream table;
  bool found_any = false;
  bool any_fail = false;

  const fs::path dir(out_dir);
  if (fs::exists(dir / "report.json")) {
    found_any = true;
    std::ifstream in(dir / "report.json");
    ordered_json r = ordered_json::parse(in);
    summary["verify"] = r;
    table << "verify: " << (r["all_pass"].get<bool>() ? "pass" : "FAIL") << "\n";
    for (const auto& c : r["checks"]) {
      table << "  " << c["name"].get<std::string>() << ": " << c["status"].get<std::string>()
            << " (measured " << c["measured"].dump() << ", tolerance " << c["tolerance"].dump()
            << ")\n";
      if (c["status"].get<std::string>() == "fail") any_fail = true;
    }
  }
  if (fs::exists(dir / "verdicts.json")) {
    found_any = true;
    std::ifstream in(dir / "verdicts.json");
    ordered_json v = ordered_json::parse(in);
    summary["exponents"] = v;
    table << "exponents: rank_one = " << v["rank_one"].dump()
          << ", homogeneous = " << v["homogeneous"].dump() << "\n";
  }
  if (fs::exists(dir / "dispersion.json")) {
    found_any = true;
    std::ifstream in(dir / "dispersion.json");
    ordered_json d = ordered_json::parse(in);
    summary["ergodic"] = d;
    for (const auto& l : d["lines"]) {
      table << "ergodic line (" << l["direction"][0].dump() << ", " << l["direction"][1].dump()
            << "): " << l["verdict"].get<std::string>() << ", dispersion "
            << l["aggregate_dispersion"].dump() << "\n";
    }
  }
  if (!found_any) return 2;
  write_file(summary_path, summary.dump(2) + "\n");
  if (rendered_table) *rendered_table = table.str();
  return any_fail ? 1 : 0;
}

}  // namespace tclab
