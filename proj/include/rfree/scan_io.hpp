#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rfree/lattice.hpp"

namespace rfree {

inline constexpr const char* kScanCsvHeader = "x,V,main_term,error,normalized_error,density";

/// One scan row as text: integers in full decimal, enclosure midpoints in fixed notation.
struct ScanRow {
  std::uint64_t x = 0;
  BigInt count;
  std::string main_term;
  std::string error;
  std::string normalized_error;  // empty when the record has none
  std::string density;

  bool operator==(const ScanRow&) const = default;
};

ScanRow to_row(const CountRecord& rec, int digits);

void write_scan_csv(std::ostream& out, std::span<const ScanRow> rows);
void write_scan_csv(std::ostream& out, std::span<const CountRecord> records, int digits);

/// Throws InvalidArgument on a missing or different header, a wrong field count, or a bad number.
std::vector<ScanRow> read_scan_csv(std::istream& in);

/// JSON array mirroring the CSV columns; every value is a string so no consumer rounds them.
std::string scan_json(std::span<const ScanRow> rows);

}  // namespace rfree
