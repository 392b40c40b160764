#include "modcurve/record.hpp"

#include <charconv>
#include <stdexcept>

#include <json.hpp>

namespace modcurve {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

bool parse_int(std::string_view field, std::int64_t& out) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !field.empty();
}

}  // namespace

InvariantRecord make_record(const SubgroupSpec& spec, const InvariantSet& inv) {
  InvariantRecord rec;
  rec.family = std::string(family_tag(spec.family));
  rec.level = spec.level;
  rec.m = spec.m;
  rec.psl2_index = inv.psl2_index;
  rec.nu2 = inv.nu2;
  rec.nu3 = inv.nu3;
  rec.cusps = inv.cusps;
  rec.genus = inv.genus;
  rec.method = std::string(method_tag(inv.method));
  return rec;
}

std::string csv_header() { return "family,level,m,psl2_index,nu2,nu3,cusps,genus,method"; }

std::string csv_row(const InvariantRecord& r) {
  return r.family + "," + std::to_string(r.level) + "," + std::to_string(r.m) + "," +
         std::to_string(r.psl2_index) + "," + std::to_string(r.nu2) + "," +
         std::to_string(r.nu3) + "," + std::to_string(r.cusps) + "," + std::to_string(r.genus) +
         "," + r.method;
}

std::string records_to_csv(const std::vector<InvariantRecord>& records) {
  std::string out = csv_header() + "\n";
  for (const InvariantRecord& r : records) out += csv_row(r) + "\n";
  return out;
}

std::string records_to_json(const std::vector<InvariantRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const InvariantRecord& r : records)
    arr.push_back(nlohmann::json{{"family", r.family},
                                 {"level", r.level},
                                 {"m", r.m},
                                 {"psl2_index", r.psl2_index},
                                 {"nu2", r.nu2},
                                 {"nu3", r.nu3},
                                 {"cusps", r.cusps},
                                 {"genus", r.genus},
                                 {"method", r.method}});
  return arr.dump(2) + "\n";
}

std::vector<InvariantRecord> records_from_csv(std::string_view text) {
  std::vector<InvariantRecord> out;
  for (const ParsedReferenceRow& row : parse_reference_csv(text)) {
    if (!row.ok)
      throw std::invalid_argument("csv line " + std::to_string(row.line_number) + ": " + row.error);
    out.push_back(row.record);
  }
  return out;
}

std::vector<InvariantRecord> records_from_json(std::string_view text) {
  nlohmann::json arr = nlohmann::json::parse(text);
  std::vector<InvariantRecord> out;
  for (const nlohmann::json& item : arr) {
    InvariantRecord r;
    r.family = item.at("family").get<std::string>();
    r.level = item.at("level").get<std::int64_t>();
    r.m = item.at("m").get<std::int64_t>();
    r.psl2_index = item.at("psl2_index").get<std::int64_t>();
    r.nu2 = item.at("nu2").get<std::int64_t>();
    r.nu3 = item.at("nu3").get<std::int64_t>();
    r.cusps = item.at("cusps").get<std::int64_t>();
    r.genus = item.at("genus").get<std::int64_t>();
    r.method = item.at("method").get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ParsedReferenceRow> parse_reference_csv(std::string_view text) {
  std::vector<ParsedReferenceRow> rows;
  int line_number = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line == csv_header()) continue;
    ParsedReferenceRow row;
    row.line_number = line_number;
    std::vector<std::string_view> fields = split(line, ',');
    if (fields.size() != 8 && fields.size() != 9) {
      row.error = "expected 8 or 9 comma-separated fields, got " + std::to_string(fields.size());
      rows.push_back(std::move(row));
      continue;
    }
    InvariantRecord rec;
    rec.family = std::string(fields[0]);
    bool numbers_ok = parse_int(fields[1], rec.level) && parse_int(fields[2], rec.m) &&
                      parse_int(fields[3], rec.psl2_index) && parse_int(fields[4], rec.nu2) &&
                      parse_int(fields[5], rec.nu3) && parse_int(fields[6], rec.cusps) &&
                      parse_int(fields[7], rec.genus);
    if (!numbers_ok) {
      row.error = "non-integer field";
      rows.push_back(std::move(row));
      continue;
    }
    rec.method = fields.size() == 9 ? std::string(fields[8]) : "";
    row.ok = true;
    row.record = std::move(rec);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace modcurve
