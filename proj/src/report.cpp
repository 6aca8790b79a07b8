#include "twoprim/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace twoprim {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

template <typename T>
std::string opt_str(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string{};
}

}  // namespace

std::string format_margin(double margin) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", margin);
  return buf;
}

std::string format_ms(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

ReportRow scan_row(const PrimePowerCtx& ctx, const CriterionVerdict& verdict) {
  ReportRow row;
  row.q = ctx.q;
  row.p = ctx.p;
  row.k = ctx.k;
  row.command = "scan";
  row.stage_or_verdict = std::string(stage_name(verdict.stage));
  row.margin_or_witness = format_margin(verdict.margin);
  return row;
}

std::string format_witness(const QuadExtField& fld, const Witness& w) {
  std::string out = "gamma=" + fld.to_string(w.gamma) + ";key=" + fld.to_string(w.key) +
                    ";theta=" + fld.to_string(w.theta);
  return out;
}

ReportRow verify_row(const QuadExtField& fld, const PropertyReport& report, std::string command,
                     bool with_timing) {
  ReportRow row;
  row.q = fld.q();
  row.p = fld.p();
  row.k = fld.ctx().k;
  row.command = std::move(command);
  row.stage_or_verdict = report.holds ? "holds" : "fails";
  row.margin_or_witness = report.witness ? format_witness(fld, *report.witness)
                                         : "classes=" + std::to_string(report.classes_covered);
  if (with_timing) row.elapsed_ms = report.elapsed.count();
  return row;
}

std::string to_csv(const std::vector<ReportRow>& rows, const Summary& summary) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << opt_str(r.q) << ',' << opt_str(r.p) << ',' << opt_str(r.k) << ','
        << csv_field(r.command) << ',' << csv_field(r.stage_or_verdict) << ','
        << csv_field(r.margin_or_witness) << ',' << (r.elapsed_ms ? format_ms(*r.elapsed_ms) : "")
        << '\n';
  }
  for (const auto& [key, value] : summary) out << "# " << key << '=' << value << '\n';
  return out.str();
}

std::string to_json(const std::vector<ReportRow>& rows, const Summary& summary) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["q"] = r.q ? ordered_json(*r.q) : ordered_json(nullptr);
    j["p"] = r.p ? ordered_json(*r.p) : ordered_json(nullptr);
    j["k"] = r.k ? ordered_json(*r.k) : ordered_json(nullptr);
    j["command"] = r.command;
    j["stage_or_verdict"] = r.stage_or_verdict;
    j["margin_or_witness"] = r.margin_or_witness;
    j["elapsed_ms"] = r.elapsed_ms ? ordered_json(std::stod(format_ms(*r.elapsed_ms))) : ordered_json(nullptr);
    doc["rows"].push_back(std::move(j));
  }
  ordered_json s = ordered_json::object();
  for (const auto& [key, value] : summary) s[key] = value;
  doc["summary"] = std::move(s);
  return doc.dump(2) + "\n";
}

}  // namespace twoprim
