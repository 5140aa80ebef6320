#include "rfree/scan_io.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

namespace rfree {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void check_decimal(const std::string& text, std::size_t line_no, bool allow_empty) {
  if (text.empty() && allow_empty) return;
  mpfr_t probe;
  mpfr_init2(probe, 64);
  char* end = nullptr;
  mpfr_strtofr(probe, text.c_str(), &end, 10, MPFR_RNDN);
  const bool ok = !text.empty() && end != nullptr && *end == '\0';
  mpfr_clear(probe);
  if (!ok) throw InvalidArgument("scan csv line " + std::to_string(line_no) + ": bad number '" + text + "'");
}

}  // namespace

ScanRow to_row(const CountRecord& rec, int digits) {
  ScanRow row;
  row.x = rec.params.x;
  row.count = rec.count;
  row.main_term = rec.main_term.mid().to_fixed(digits);
  row.error = rec.error.mid().to_fixed(digits);
  if (rec.normalized_error) row.normalized_error = rec.normalized_error->mid().to_fixed(digits);
  row.density = rec.density.mid().to_fixed(digits);
  return row;
}

void write_scan_csv(std::ostream& out, std::span<const ScanRow> rows) {
  out << kScanCsvHeader << '\n';
  for (const auto& row : rows) {
    out << row.x << ',' << row.count.get_str() << ',' << row.main_term << ',' << row.error << ','
        << row.normalized_error << ',' << row.density << '\n';
  }
}

void write_scan_csv(std::ostream& out, std::span<const CountRecord> records, int digits) {
  std::vector<ScanRow> rows;
  rows.reserve(records.size());
  for (const auto& rec : records) rows.push_back(to_row(rec, digits));
  write_scan_csv(out, rows);
}

std::vector<ScanRow> read_scan_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("scan csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kScanCsvHeader) throw InvalidArgument("scan csv: unexpected header '" + line + "'");

  std::vector<ScanRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 6) {
      throw InvalidArgument("scan csv line " + std::to_string(line_no) + ": expected 6 fields, got " +
                            std::to_string(f.size()));
    }
    ScanRow row;
    const auto [ptr, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), row.x);
    if (ec != std::errc{} || ptr != f[0].data() + f[0].size()) {
      throw InvalidArgument("scan csv line " + std::to_string(line_no) + ": bad x '" + f[0] + "'");
    }
    if (row.count.set_str(f[1], 10) != 0) {
      throw InvalidArgument("scan csv line " + std::to_string(line_no) + ": bad V '" + f[1] + "'");
    }
    check_decimal(f[2], line_no, false);
    check_decimal(f[3], line_no, false);
    check_decimal(f[4], line_no, true);
    check_decimal(f[5], line_no, false);
    row.main_term = f[2];
    row.error = f[3];
    row.normalized_error = f[4];
    row.density = f[5];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string scan_json(std::span<const ScanRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj;
    obj["x"] = std::to_string(row.x);
    obj["V"] = row.count.get_str();
    obj["main_term"] = row.main_term;
    obj["error"] = row.error;
    obj["normalized_error"] = row.normalized_error.empty() ? nlohmann::json() : nlohmann::json(row.normalized_error);
    obj["density"] = row.density;
    arr.push_back(std::move(obj));
  }
  return arr.dump(2);
}

}  // namespace rfree
