#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "rfree/omega.hpp"
#include "rfree/scan_io.hpp"

using namespace rfree;

TEST_CASE("scan CSV round-trips exactly") {
  const auto records = error_scan(1, 3, 10, 300, 7, {1e-30, 2, 10'000});
  std::vector<ScanRow> rows;
  for (const auto& rec : records) rows.push_back(to_row(rec, 30));

  std::stringstream buffer;
  write_scan_csv(buffer, records, 30);
  std::string first;
  std::getline(buffer, first);
  CHECK(first == kScanCsvHeader);
  buffer.seekg(0);

  const std::vector<ScanRow> parsed = read_scan_csv(buffer);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(parsed[i] == rows[i]);
    REQUIRE(parsed[i].count == records[i].count);
  }
}

TEST_CASE("to_row renders full integers and fixed decimals") {
  const CountRecord rec = count_record({2, 1, 10}, 1e-30);
  const ScanRow row = to_row(rec, 30);
  CHECK(row.x == 10);
  CHECK(row.count == 14);
  CHECK(row.main_term.rfind("12.158542037080532573265535585", 0) == 0);
  CHECK(row.main_term.find('e') == std::string::npos);
  CHECK(row.density.rfind("0.66666666666666666666666666666", 0) == 0);

  const CountRecord no_scale = count_record({1, 2, 1}, 1e-30);
  CHECK(to_row(no_scale, 30).normalized_error.empty());
}

TEST_CASE("empty normalized_error survives the round trip") {
  const CountRecord rec = count_record({1, 2, 1}, 1e-20);
  std::stringstream buffer;
  write_scan_csv(buffer, std::span<const CountRecord>(&rec, 1), 20);
  const auto rows = read_scan_csv(buffer);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].normalized_error.empty());
  CHECK(rows[0] == to_row(rec, 20));
}

TEST_CASE("read_scan_csv rejects malformed input") {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_scan_csv(in);
  };
  const std::string header = std::string(kScanCsvHeader) + "\n";
  CHECK(parse(header).empty());
  CHECK_THROWS_AS(parse(""), InvalidArgument);
  CHECK_THROWS_AS(parse("x,V\n1,2\n"), InvalidArgument);
  CHECK_THROWS_AS(parse(header + "10,14,12.1,1.8,0.5\n"), InvalidArgument);
  CHECK_THROWS_AS(parse(header + "10,14,12.1,1.8,0.5,0.6,7\n"), InvalidArgument);
  CHECK_THROWS_AS(parse(header + "ten,14,12.1,1.8,0.5,0.6\n"), InvalidArgument);
  CHECK_THROWS_AS(parse(header + "10,1x4,12.1,1.8,0.5,0.6\n"), InvalidArgument);
  CHECK_THROWS_AS(parse(header + "10,14,abc,1.8,0.5,0.6\n"), InvalidArgument);
  CHECK_NOTHROW(parse(header + "10,14,12.1,-1.8,,0.6\n"));
}

TEST_CASE("scan_json mirrors the CSV with string values") {
  const auto records = error_scan(2, 2, 10, 12, 1, {1e-20, 1, 100});
  std::vector<ScanRow> rows;
  for (const auto& rec : records) rows.push_back(to_row(rec, 20));
  const auto doc = nlohmann::json::parse(scan_json(rows));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 3);
  CHECK(doc[0]["x"] == "10");
  CHECK(doc[0]["V"] == rows[0].count.get_str());
  CHECK(doc[2]["main_term"] == rows[2].main_term);
  CHECK(doc[1]["normalized_error"].is_string());
}
