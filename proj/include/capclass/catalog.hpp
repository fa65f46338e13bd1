#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capclass/classifier.hpp"

namespace capclass {

/// Flattened classification: every class, sorted by (size, key).
struct Catalog {
  int dim = 0;
  std::vector<ClassNode> entries;

  friend bool operator==(const Catalog &, const Catalog &) = default;
};

Catalog make_catalog(int d, const std::vector<LevelSet> &levels);

/// Regroups entries into levels (non-empty levels only).
std::vector<LevelSet> catalog_levels(const Catalog &catalog);

/// Header `capclass v1 d=<d>`, then one `cap ...` line per class.
std::string serialize(const Catalog &catalog);
std::string serialize(int d, const std::vector<LevelSet> &levels);

/// Throws ParseError naming the offending line.
Catalog parse_catalog(std::string_view text);

struct Table1Row {
  int size = 0;
  int complete = 0;
  int incomplete = 0;

  friend bool operator==(const Table1Row &, const Table1Row &) = default;
};

/// Counts per size from d+2 upward; all-zero rows are omitted.
std::vector<Table1Row> table1(const Catalog &catalog);

std::string format_table1(const std::vector<Table1Row> &rows);

struct Fixture {
  std::string name;
  /// Raw list; validity is checked at verification time.
  CapSet points;
  std::optional<std::uint64_t> stabilizer_order;
  std::optional<bool> complete;
};

/// `fixture <name> points=<list> stab=<int|?> complete=<0|1|?>` lines;
/// blank lines and `#` comments are skipped.
std::vector<Fixture> parse_fixtures(std::string_view text);

enum class FixtureStatus {
  Match,
  /// Printed order does not divide |GL(d+1,2)|, so it cannot be a subgroup order.
  PresumedTypo,
  Investigate,
  NotInCatalog,
  Rejected,
};

const char *to_string(FixtureStatus status);

struct FixtureResult {
  std::string name;
  FixtureStatus status = FixtureStatus::Match;
  std::optional<CapSet> key;
  std::optional<std::uint64_t> expected_stab;
  std::optional<std::uint64_t> computed_stab;
  std::optional<bool> expected_complete;
  std::optional<bool> computed_complete;
  std::string detail;
};

struct FixtureReport {
  std::vector<FixtureResult> results;

  /// True unless some fixture needs investigation, is missing, or was rejected.
  bool ok() const;
  std::size_t count(FixtureStatus status) const;
};

FixtureReport verify_fixtures(const Catalog &catalog, const std::vector<Fixture> &fixtures);

/// One line per fixture, then a discrepancy list and a summary line.
std::string format_report(const FixtureReport &report);

} // namespace capclass
