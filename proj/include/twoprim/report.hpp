#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twoprim/criteria.hpp"
#include "twoprim/verify.hpp"

namespace twoprim {

/// One output row: q,p,k,command,stage_or_verdict,margin_or_witness,elapsed_ms.
/// q, p and k are empty for rows that are not about a single field.
struct ReportRow {
  std::optional<u64> q;
  std::optional<u64> p;
  std::optional<unsigned> k;
  std::string command;
  std::string stage_or_verdict;
  std::string margin_or_witness;
  std::optional<double> elapsed_ms;
};

/// Ordered key/value summary appended to a report.
using Summary = std::vector<std::pair<std::string, std::string>>;

inline constexpr const char* kCsvHeader =
    "q,p,k,command,stage_or_verdict,margin_or_witness,elapsed_ms";

std::string format_margin(double margin);
std::string format_ms(double ms);

ReportRow scan_row(const PrimePowerCtx& ctx, const CriterionVerdict& verdict);
/// `command` distinguishes e.g. verify-line-fast from verify-line-literal.
ReportRow verify_row(const QuadExtField& fld, const PropertyReport& report, std::string command,
                     bool with_timing);
std::string format_witness(const QuadExtField& fld, const Witness& witness);

/// CSV: header, one line per row, then `# key=value` summary lines.
std::string to_csv(const std::vector<ReportRow>& rows, const Summary& summary);
/// JSON object {"rows": [...], "summary": {...}}; rows mirror the CSV columns.
std::string to_json(const std::vector<ReportRow>& rows, const Summary& summary);

}  // namespace twoprim
