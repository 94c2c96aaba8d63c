#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stomps/errors.hpp"
#include "stomps/report.hpp"

using namespace stomps;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("CSV formatting") {
  ReportTable t{{"a", "b", "c", "d"},
                {{std::int64_t{3}, 0.1 + 0.2, std::string("x,y"), std::monostate{}},
                 {std::int64_t{-1}, 1e-12, std::string("say \"hi\""), 2.5}}};
  CHECK(to_csv(t) == "a,b,c,d\n3,0.3,\"x,y\",\n-1,1e-12,\"say \"\"hi\"\"\",2.5\n");
}

TEST_CASE("JSON keeps full precision and round trips") {
  ReportTable t{{"n", "value", "label", "missing"},
                {{std::int64_t{4}, 0.1 + 0.2, std::string("grouped"), std::monostate{}}}};
  const auto j = to_json(t);
  CHECK(j.at("rows")[0].at("value").get<double>() == 0.1 + 0.2);
  CHECK(j.at("rows")[0].at("missing").is_null());
  CHECK(report_from_json(j) == t);
  CHECK_THROWS_AS(report_from_json(nlohmann::json{{"rows", 1}}), IoError);
}

TEST_CASE("emit_report writes files and refuses bad tables") {
  const auto dir = std::filesystem::temp_directory_path() / "stomps_report_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  ReportTable t{{"x"}, {{1.5}}};
  emit_report(t, Format::Csv, dir / "t.csv");
  CHECK(slurp(dir / "t.csv") == "x\n1.5\n");
  emit_report(t, Format::Json, dir / "t.json");
  CHECK(read_report_json(dir / "t.json") == t);

  CHECK_THROWS_AS(emit_report(ReportTable{{"x"}, {}}, Format::Csv, dir / "empty.csv"), PreconditionError);
  CHECK_FALSE(std::filesystem::exists(dir / "empty.csv"));
  CHECK_THROWS_AS(emit_report(ReportTable{{"x", "y"}, {{1.0}}}, Format::Csv, dir / "ragged.csv"), PreconditionError);
  CHECK_THROWS_AS(emit_report(t, Format::Csv, dir / "no" / "such" / "dir.csv"), IoError);
  {
    std::ofstream os(dir / "bad.json");
    os << "{not json";
  }
  CHECK_THROWS_AS(read_report_json(dir / "bad.json"), IoError);
  std::filesystem::remove_all(dir);
  CHECK(format_from_string("json") == Format::Json);
  CHECK_THROWS_AS(format_from_string("xml"), DomainError);
}

TEST_CASE("integral and scan tables") {
  IntegralResult r;
  r.n_qubits = 5;
  r.physical_value = 0.5;
  r.set_reference(0.4);
  const auto t = integral_table({r});
  REQUIRE(t.rows.size() == 1);
  CHECK(t.columns.size() == t.rows[0].size());
  CHECK(std::get<std::int64_t>(t.rows[0][0]) == 5);
  CHECK(std::get<double>(t.rows[0][4]) == Catch::Approx(0.25));

  ScanRecord s;
  s.n_per_coord = 4;
  s.total_qubits = 12;
  s.runtime = 3.0;
  const auto st = scan_table({s});
  CHECK(st.columns.size() == st.rows[0].size());
  CHECK(std::holds_alternative<std::monostate>(st.rows[0][4]));
  CHECK(std::find(st.columns.begin(), st.columns.end(), "runtime") == st.columns.end());
}
