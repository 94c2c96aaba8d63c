#pragma once

// Tabular output shared by the pipelines and the command-line front end.
// CSV floats carry 12 significant digits; JSON keeps full precision.

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "stomps/entanglement.hpp"
#include "stomps/integrals.hpp"

namespace stomps {

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct ReportTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  bool operator==(const ReportTable&) const = default;
};

enum class Format { Csv, Json };

std::string to_string(Format format);
Format format_from_string(const std::string& name);

std::string to_csv(const ReportTable& table);
nlohmann::json to_json(const ReportTable& table);
ReportTable report_from_json(const nlohmann::json& j);

/// Throws PreconditionError without touching the filesystem when the table has
/// no rows; IoError when the path cannot be written.
void emit_report(const ReportTable& table, Format format, const std::filesystem::path& path);
ReportTable read_report_json(const std::filesystem::path& path);

// Column layouts:
//   integrals: n, snapped_d, value, reference, rel_error, raw_inner, norm_a, norm_b, spacing
//   scans:     n, total_qubits, threshold, chi_max, delta_chi_max, chi_xy, chi_yz, zeta, length, ordering
ReportTable integral_table(const std::vector<IntegralResult>& results);
ReportTable scan_table(const std::vector<ScanRecord>& records);

}  // namespace stomps
