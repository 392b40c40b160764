// Command-line front end: compute genus-formula invariants of modular-curve
// families, emit tables, cross-check formulas against the brute-force engine,
// and diff against external reference data.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modcurve/families.hpp"
#include "modcurve/formulas.hpp"
#include "modcurve/matgrp.hpp"
#include "modcurve/record.hpp"
#include "modcurve/verify.hpp"

namespace {

using modcurve::EngineLimits;
using modcurve::Family;
using modcurve::InvariantRecord;
using modcurve::InvariantSet;
using modcurve::SubgroupSpec;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitDisagreement = 3;

std::vector<Family> parse_family_list(const std::string& arg) {
  std::vector<Family> out;
  if (arg.empty()) return out;
  if (arg == "all") {
    out.assign(std::begin(modcurve::kAllFamilies), std::end(modcurve::kAllFamilies));
    return out;
  }
  std::stringstream ss(arg);
  std::string tag;
  while (std::getline(ss, tag, ',')) {
    if (tag.empty()) continue;
    auto family = modcurve::parse_family_tag(tag);
    if (!family) throw CLI::ValidationError("--families", "unknown family tag '" + tag + "'");
    out.push_back(*family);
  }
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  file << content;
}

std::string record_line(const InvariantRecord& r) {
  return "family=" + r.family + " level=" + std::to_string(r.level) + " m=" +
         std::to_string(r.m) + " method=" + r.method +
         " psl2_index=" + std::to_string(r.psl2_index) + " nu2=" + std::to_string(r.nu2) +
         " nu3=" + std::to_string(r.nu3) + " cusps=" + std::to_string(r.cusps) +
         " genus=" + std::to_string(r.genus);
}

int cmd_invariants(const SubgroupSpec& spec, const std::string& method,
                   const EngineLimits& limits) {
  if (method == "formula" || method == "both") {
    InvariantSet inv = modcurve::invariants_formula(spec);
    std::cout << record_line(modcurve::make_record(spec, inv)) << "\n";
    if (method == "formula") return kExitOk;
  }
  if (method == "bruteforce") {
    InvariantSet inv = modcurve::invariants_bruteforce(spec, limits);
    std::cout << record_line(modcurve::make_record(spec, inv)) << "\n";
    return kExitOk;
  }
  if (method == "both") {
    InvariantSet formula = modcurve::invariants_formula(spec);
    InvariantSet brute = modcurve::invariants_bruteforce(spec, limits);
    std::cout << record_line(modcurve::make_record(spec, brute)) << "\n";
    if (formula.same_values(brute)) {
      std::cout << "MATCH\n";
      return kExitOk;
    }
    std::cout << "MISMATCH\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int cmd_table(const std::vector<Family>& families, std::int64_t min_level, std::int64_t max_level,
              const std::string& format, const std::string& out_path) {
  std::vector<InvariantRecord> records;
  for (Family family : families)
    for (const SubgroupSpec& spec : modcurve::admissible_specs(family, min_level, max_level))
      records.push_back(modcurve::make_record(spec, modcurve::invariants_formula(spec)));
  write_output(out_path,
               format == "json" ? modcurve::records_to_json(records)
                                : modcurve::records_to_csv(records));
  return kExitOk;
}

int cmd_verify(const std::vector<Family>& families, std::int64_t max_level,
               const std::string& json_path, const EngineLimits& limits) {
  modcurve::VerificationReport report = modcurve::sweep(families, max_level, limits);
  for (const modcurve::CheckEntry& e : report.entries) {
    if (!e.error.empty()) {
      std::cout << "error     " << modcurve::describe(e.spec) << ": " << e.error << "\n";
      continue;
    }
    if (e.match) {
      std::cout << "ok        " << modcurve::describe(e.spec) << "  (i=" << e.formula.psl2_index
                << " nu2=" << e.formula.nu2 << " nu3=" << e.formula.nu3
                << " cusps=" << e.formula.cusps << " genus=" << e.formula.genus << ")  "
                << e.wall_ms << " ms\n";
    } else {
      std::cout << "MISMATCH  " << modcurve::describe(e.spec) << "  formula=("
                << e.formula.psl2_index << "," << e.formula.nu2 << "," << e.formula.nu3 << ","
                << e.formula.cusps << "," << e.formula.genus << ") bruteforce=("
                << e.bruteforce.psl2_index << "," << e.bruteforce.nu2 << "," << e.bruteforce.nu3
                << "," << e.bruteforce.cusps << "," << e.bruteforce.genus << ")\n";
    }
  }
  std::cout << "checked " << report.entries.size() << " curves: " << report.matches()
            << " match, " << report.mismatches() << " mismatch\n";
  if (!json_path.empty()) write_output(json_path, modcurve::report_to_json(report) + "\n");
  return report.all_match() ? kExitOk : kExitMismatch;
}

int cmd_compare(const std::string& reference_path) {
  std::ifstream file(reference_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot read reference file: " << reference_path << "\n";
    return kExitUsage;
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  std::int64_t agreements = 0, disagreements = 0, skipped = 0;
  for (const modcurve::ParsedReferenceRow& row : modcurve::parse_reference_csv(buffer.str())) {
    if (!row.ok) {
      std::cerr << "warning: line " << row.line_number << ": " << row.error << "\n";
      ++skipped;
      continue;
    }
    auto family = modcurve::parse_family_tag(row.record.family);
    if (!family) {
      std::cerr << "warning: line " << row.line_number << ": unknown family tag '"
                << row.record.family << "', skipped\n";
      ++skipped;
      continue;
    }
    SubgroupSpec spec{*family, row.record.level, row.record.m, {}};
    if (!modcurve::family_takes_m(*family)) spec.m = 0;
    InvariantSet inv;
    try {
      inv = modcurve::invariants_formula(spec);
    } catch (const std::exception& e) {
      std::cerr << "warning: line " << row.line_number << ": " << e.what() << ", skipped\n";
      ++skipped;
      continue;
    }
    bool agree = inv.psl2_index == row.record.psl2_index && inv.nu2 == row.record.nu2 &&
                 inv.nu3 == row.record.nu3 && inv.cusps == row.record.cusps &&
                 inv.genus == row.record.genus;
    if (agree) {
      std::cout << "agree     " << modcurve::describe(spec) << "\n";
      ++agreements;
    } else {
      std::cout << "disagree  " << modcurve::describe(spec) << "  reference=("
                << row.record.psl2_index << "," << row.record.nu2 << "," << row.record.nu3 << ","
                << row.record.cusps << "," << row.record.genus << ") computed=("
                << inv.psl2_index << "," << inv.nu2 << "," << inv.nu3 << "," << inv.cusps << ","
                << inv.genus << ")\n";
      ++disagreements;
    }
  }
  std::cout << agreements << " agree, " << disagreements << " disagree, " << skipped
            << " skipped\n";
  return disagreements == 0 ? kExitOk : kExitDisagreement;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genus-formula invariants of modular-curve families"};
  app.require_subcommand(1);

  EngineLimits limits;
  app.add_option("--max-sl2-elements", limits.max_sl2_elements,
                 "Cap on |SL2(Z/NZ)| for brute-force enumeration")
      ->envname("MODCURVE_MAX_SL2")
      ->check(CLI::PositiveNumber);

  // invariants
  auto* inv_cmd = app.add_subcommand("invariants", "Invariants of a single curve");
  std::string inv_family;
  std::int64_t inv_level = 0;
  std::int64_t inv_m = 0;
  std::string inv_method = "formula";
  inv_cmd->add_option("--family", inv_family, "Family tag (x0, x1, ..., ns+, s4)")->required();
  inv_cmd->add_option("--level", inv_level, "Level N (prime p for s4)")->required();
  inv_cmd->add_option("--m", inv_m, "Parameter M (arith1/arithpm1 only)");
  inv_cmd->add_option("--method", inv_method, "formula, bruteforce, or both")
      ->check(CLI::IsMember({"formula", "bruteforce", "both"}));

  // table
  auto* table_cmd = app.add_subcommand("table", "Emit a table of invariants");
  std::string table_families = "all";
  std::int64_t table_min = 1, table_max = 0;
  std::string table_format = "csv";
  std::string table_out;
  table_cmd->add_option("--families", table_families, "Comma-separated family tags, or 'all'");
  table_cmd->add_option("--min-level", table_min, "Smallest level (modulus)");
  table_cmd->add_option("--max-level", table_max, "Largest level (modulus)")->required();
  table_cmd->add_option("--format", table_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  table_cmd->add_option("--out", table_out, "Output path (stdout when omitted)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check formulas against brute force");
  std::string verify_families = "all";
  std::int64_t verify_max = 0;
  std::string verify_json;
  verify_cmd->add_option("--families", verify_families, "Comma-separated family tags, or 'all'");
  verify_cmd->add_option("--max-level", verify_max, "Largest level (modulus)")->required();
  verify_cmd->add_option("--json", verify_json, "Also write the report as JSON to this path");

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "Diff a reference CSV against the formulas");
  std::string compare_path;
  compare_cmd->add_option("reference", compare_path, "Reference CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*inv_cmd) {
      auto family = modcurve::parse_family_tag(inv_family);
      if (!family) {
        std::cerr << "error: unknown family tag '" << inv_family << "'\n";
        return kExitUsage;
      }
      SubgroupSpec spec{*family, inv_level, 0, {}};
      if (modcurve::family_takes_m(*family)) {
        if (inv_m < 1) {
          std::cerr << "error: " << inv_family << " requires --m >= 1\n";
          return kExitUsage;
        }
        spec.m = inv_m;
      } else if (inv_m != 0) {
        std::cerr << "error: --m applies only to arith1/arithpm1\n";
        return kExitUsage;
      }
      modcurve::validate_spec(spec);
      return cmd_invariants(spec, inv_method, limits);
    }
    if (*table_cmd) {
      if (table_max < table_min || table_max < 1) {
        std::cerr << "error: require 1 <= min-level <= max-level\n";
        return kExitUsage;
      }
      return cmd_table(parse_family_list(table_families), table_min, table_max, table_format,
                       table_out);
    }
    if (*verify_cmd) {
      if (verify_max < 1) {
        std::cerr << "error: --max-level must be >= 1\n";
        return kExitUsage;
      }
      return cmd_verify(parse_family_list(verify_families), verify_max, verify_json, limits);
    }
    if (*compare_cmd) return cmd_compare(compare_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const modcurve::EngineCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitOk;
}
