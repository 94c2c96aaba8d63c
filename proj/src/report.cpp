#include "stomps/report.hpp"

#include <sstream>

#include <fmt/format.h>

#include "io_util.hpp"
#include "stomps/errors.hpp"

namespace stomps {

namespace {

std::string csv_field(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t v) const { return fmt::format("{}", v); }
    std::string operator()(double v) const { return fmt::format("{:.12g}", v); }
    std::string operator()(const std::string& v) const {
      if (v.find_first_of(",\"\n") == std::string::npos) return v;
      std::string q = "\"";
      for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return q + "\"";
    }
  };
  return std::visit(Visitor{}, c);
}

Cell opt(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }
Cell opt(const std::optional<int>& v) { return v ? Cell(std::int64_t{*v}) : Cell(std::monostate{}); }
Cell integer(long long v) { return Cell(static_cast<std::int64_t>(v)); }

}  // namespace

std::string to_string(Format format) { return format == Format::Csv ? "csv" : "json"; }

Format format_from_string(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw DomainError(fmt::format("unknown output format '{}' (expected csv or json)", name));
}

std::string to_csv(const ReportTable& table) {
  std::ostringstream os;
  for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_field(row[c]);
    os << '\n';
  }
  return os.str();
}

nlohmann::json to_json(const ReportTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto& key = table.columns[c];
      std::visit(
          [&](const auto& v) {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::monostate>)
              obj[key] = nullptr;
            else
              obj[key] = v;
          },
          row[c]);
    }
    rows.push_back(std::move(obj));
  }
  return {{"columns", table.columns}, {"rows", std::move(rows)}};
}

ReportTable report_from_json(const nlohmann::json& j) {
  ReportTable t;
  try {
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& obj : j.at("rows")) {
      std::vector<Cell> row;
      for (const auto& key : t.columns) {
        const auto& v = obj.at(key);
        if (v.is_null())
          row.emplace_back(std::monostate{});
        else if (v.is_number_integer())
          row.emplace_back(v.get<std::int64_t>());
        else if (v.is_number())
          row.emplace_back(v.get<double>());
        else
          row.emplace_back(v.get<std::string>());
      }
      t.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(fmt::format("malformed report JSON: {}", e.what()));
  }
  return t;
}

void emit_report(const ReportTable& table, Format format, const std::filesystem::path& path) {
  if (table.rows.empty()) throw PreconditionError("refusing to write an empty report");
  for (const auto& row : table.rows)
    if (row.size() != table.columns.size()) throw PreconditionError("report row does not match the column count");
  auto os = detail::open_out(path);
  if (format == Format::Csv)
    os << to_csv(table);
  else
    os << to_json(table).dump(2) << '\n';
  if (!os) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

ReportTable read_report_json(const std::filesystem::path& path) {
  auto is = detail::open_in(path);
  try {
    return report_from_json(nlohmann::json::parse(is));
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(fmt::format("'{}': {}", path.string(), e.what()));
  }
}

ReportTable integral_table(const std::vector<IntegralResult>& results) {
  ReportTable t;
  t.columns = {"n", "snapped_d", "value", "reference", "rel_error", "raw_inner", "norm_a", "norm_b", "spacing"};
  for (const auto& r : results)
    t.rows.push_back({integer(r.n_qubits), r.snapped_distance, r.physical_value, opt(r.reference),
                      opt(r.relative_error), r.raw_inner, r.norm_a, r.norm_b, r.spacing});
  return t;
}

ReportTable scan_table(const std::vector<ScanRecord>& records) {
  ReportTable t;
  t.columns = {"n",      "total_qubits", "threshold", "chi_max", "delta_chi_max",
               "chi_xy", "chi_yz",       "zeta",      "length",  "ordering"};
  for (const auto& r : records)
    t.rows.push_back({integer(r.n_per_coord), integer(r.total_qubits), r.threshold, integer(r.chi_max),
                      opt(r.delta_chi_max), opt(r.chi_xy), opt(r.chi_yz), r.zeta, r.length,
                      to_string(r.ordering)});
  return t;
}

}  // namespace stomps
