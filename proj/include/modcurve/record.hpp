#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "modcurve/families.hpp"
#include "modcurve/formulas.hpp"

namespace modcurve {

/// Flat serialization of a spec plus its invariants. CSV schema (exact):
///   family,level,m,psl2_index,nu2,nu3,cusps,genus,method
/// with m = 0 for one-parameter families, LF newlines, no quoting.
struct InvariantRecord {
  std::string family;
  std::int64_t level = 1;
  std::int64_t m = 0;
  std::int64_t psl2_index = 1;
  std::int64_t nu2 = 0;
  std::int64_t nu3 = 0;
  std::int64_t cusps = 0;
  std::int64_t genus = 0;
  std::string method = "formula";

  friend bool operator==(const InvariantRecord&, const InvariantRecord&) = default;
};

InvariantRecord make_record(const SubgroupSpec& spec, const InvariantSet& inv);

std::string csv_header();
std::string csv_row(const InvariantRecord& record);
std::string records_to_csv(const std::vector<InvariantRecord>& records);
std::string records_to_json(const std::vector<InvariantRecord>& records);

std::vector<InvariantRecord> records_from_csv(std::string_view text);
std::vector<InvariantRecord> records_from_json(std::string_view text);

/// One parsed line of a reference CSV: either a record or an error message.
struct ParsedReferenceRow {
  int line_number = 0;
  bool ok = false;
  InvariantRecord record;
  std::string error;
};

/// Lenient row parser for `compare`: accepts the 9-column schema or 8 columns
/// without the trailing method. Skips the header line if present.
std::vector<ParsedReferenceRow> parse_reference_csv(std::string_view text);

}  // namespace modcurve
