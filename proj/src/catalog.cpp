#include "capclass/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace capclass {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string &what) {
  throw CapError(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos)
      nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t start = line.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos)
      break;
    std::size_t end = line.find_first_of(" \t", start);
    if (end == std::string_view::npos)
      end = line.size();
    words.push_back(line.substr(start, end - start));
    pos = end;
  }
  return words;
}

template <typename Int> Int parse_int(std::string_view s, std::size_t line, const char *field) {
  Int value{};
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size())
    parse_fail(line, std::string("bad ") + field + " '" + std::string(s) + "'");
  return value;
}

// Reads `name=value` words in the given order.
std::vector<std::string_view> fields(const std::vector<std::string_view> &words, std::size_t first,
                                     std::initializer_list<const char *> names, std::size_t line) {
  if (words.size() != first + names.size())
    parse_fail(line, "expected " + std::to_string(first + names.size()) + " fields, got " +
                         std::to_string(words.size()));
  std::vector<std::string_view> values;
  std::size_t i = first;
  for (const char *name : names) {
    std::string_view w = words[i++];
    std::string_view prefix = name;
    if (w.size() <= prefix.size() || w.substr(0, prefix.size()) != prefix || w[prefix.size()] != '=')
      parse_fail(line, std::string("expected ") + name + "=...");
    values.push_back(w.substr(prefix.size() + 1));
  }
  return values;
}

CapSet parse_list(std::string_view s, std::size_t line) {
  try {
    return parse_points(s);
  } catch (const CapError &e) {
    parse_fail(line, e.what());
  }
}

bool parse_flag(std::string_view s, std::size_t line) {
  if (s == "0")
    return false;
  if (s == "1")
    return true;
  parse_fail(line, "flag must be 0 or 1");
}

std::string format_optional(const std::optional<std::uint64_t> &v) {
  return v ? std::to_string(*v) : "?";
}

std::string format_optional(const std::optional<bool> &v) { return v ? (*v ? "1" : "0") : "?"; }

} // namespace

Catalog make_catalog(int d, const std::vector<LevelSet> &levels) {
  Catalog c;
  c.dim = d;
  for (const LevelSet &level : levels)
    c.entries.insert(c.entries.end(), level.nodes.begin(), level.nodes.end());
  std::stable_sort(c.entries.begin(), c.entries.end(), [](const ClassNode &a, const ClassNode &b) {
    if (a.size != b.size)
      return a.size < b.size;
    return key_less(a.key, b.key);
  });
  return c;
}

std::vector<LevelSet> catalog_levels(const Catalog &catalog) {
  std::vector<LevelSet> levels;
  for (const ClassNode &node : catalog.entries) {
    if (levels.empty() || levels.back().size != node.size)
      levels.push_back(LevelSet{node.size, {}});
    levels.back().nodes.push_back(node);
  }
  return levels;
}

std::string serialize(const Catalog &catalog) {
  std::string out = "capclass v1 d=" + std::to_string(catalog.dim) + "\n";
  for (const ClassNode &n : catalog.entries) {
    out += "cap size=" + std::to_string(n.size);
    out += " key=" + format_points(n.key);
    out += " stab=" + std::to_string(n.stabilizer_order);
    out += n.complete ? " complete=1" : " complete=0";
    out += " parent=" + (n.parent_key ? format_points(*n.parent_key) : std::string("-"));
    out += " ext=" + (n.extension_point ? std::to_string(n.extension_point->index) : std::string("-"));
    out += '\n';
  }
  return out;
}

std::string serialize(int d, const std::vector<LevelSet> &levels) {
  return serialize(make_catalog(d, levels));
}

Catalog parse_catalog(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty())
    parse_fail(1, "missing header");
  auto header = split_words(lines[0]);
  if (header.size() != 3 || header[0] != "capclass" || header[1] != "v1" ||
      header[2].substr(0, 2) != "d=")
    parse_fail(1, "expected header 'capclass v1 d=<d>'");
  Catalog c;
  c.dim = parse_int<int>(header[2].substr(2), 1, "dimension");
  if (c.dim < kMinDim || c.dim > kMaxDim)
    parse_fail(1, "dimension out of range");
  SpaceParams space(c.dim);

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line = i + 1;
    auto words = split_words(lines[i]);
    if (words.empty())
      continue;
    if (words[0] != "cap")
      parse_fail(line, "expected 'cap'");
    auto v = fields(words, 1, {"size", "key", "stab", "complete", "parent", "ext"}, line);
    ClassNode n;
    n.size = parse_int<int>(v[0], line, "size");
    n.key = parse_list(v[1], line);
    n.stabilizer_order = parse_int<std::uint64_t>(v[2], line, "stab");
    n.complete = parse_flag(v[3], line);
    if (v[4] != "-")
      n.parent_key = parse_list(v[4], line);
    if (v[5] != "-")
      n.extension_point = Point{parse_int<unsigned>(v[5], line, "ext")};
    if (n.key.size() != n.size)
      parse_fail(line, "size does not match key");
    if (!n.key.empty() && n.key.max_index() > space.n_points())
      parse_fail(line, "key point outside the space");
    if (!c.entries.empty()) {
      const ClassNode &prev = c.entries.back();
      if (prev.size > n.size || (prev.size == n.size && !key_less(prev.key, n.key)))
        parse_fail(line, "entries not sorted by (size, key)");
    }
    c.entries.push_back(std::move(n));
  }
  return c;
}

std::vector<Table1Row> table1(const Catalog &catalog) {
  std::map<int, Table1Row> rows;
  for (const ClassNode &n : catalog.entries) {
    if (n.size < catalog.dim + 2)
      continue;
    Table1Row &r = rows[n.size];
    r.size = n.size;
    ++(n.complete ? r.complete : r.incomplete);
  }
  std::vector<Table1Row> out;
  for (const auto &[size, row] : rows)
    out.push_back(row);
  return out;
}

std::string format_table1(const std::vector<Table1Row> &rows) {
  std::ostringstream os;
  os << "size complete incomplete\n";
  for (const Table1Row &r : rows)
    os << r.size << ' ' << r.complete << ' ' << r.incomplete << '\n';
  return os.str();
}

std::vector<Fixture> parse_fixtures(std::string_view text) {
  std::vector<Fixture> out;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line = i + 1;
    auto words = split_words(lines[i]);
    if (words.empty() || words[0].front() == '#')
      continue;
    if (words[0] != "fixture" || words.size() < 2)
      parse_fail(line, "expected 'fixture <name> ...'");
    auto v = fields(words, 2, {"points", "stab", "complete"}, line);
    Fixture f;
    f.name = std::string(words[1]);
    // Points are kept raw so that a collinear list is reported, not refused.
    try {
      f.points = parse_points(v[0]);
    } catch (const CapError &e) {
      parse_fail(line, e.what());
    }
    if (v[1] != "?")
      f.stabilizer_order = parse_int<std::uint64_t>(v[1], line, "stab");
    if (v[2] != "?")
      f.complete = parse_flag(v[2], line);
    out.push_back(std::move(f));
  }
  return out;
}

const char *to_string(FixtureStatus status) {
  switch (status) {
  case FixtureStatus::Match: return "match";
  case FixtureStatus::PresumedTypo: return "mismatch (expected value non-divisor, presumed typo)";
  case FixtureStatus::Investigate: return "mismatch (investigate)";
  case FixtureStatus::NotInCatalog: return "not in catalog";
  case FixtureStatus::Rejected: return "rejected";
  }
  return "unknown";
}

bool FixtureReport::ok() const {
  return count(FixtureStatus::Investigate) == 0 && count(FixtureStatus::NotInCatalog) == 0 &&
         count(FixtureStatus::Rejected) == 0;
}

std::size_t FixtureReport::count(FixtureStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [&](const FixtureResult &r) { return r.status == status; }));
}

FixtureReport verify_fixtures(const Catalog &catalog, const std::vector<Fixture> &fixtures) {
  SpaceParams space(catalog.dim);
  const std::uint64_t group_order = gl_order(catalog.dim);
  std::map<CapSet, const ClassNode *, KeyLess> by_key;
  for (const ClassNode &n : catalog.entries)
    by_key.emplace(n.key, &n);

  FixtureReport report;
  for (const Fixture &f : fixtures) {
    FixtureResult r;
    r.name = f.name;
    r.expected_stab = f.stabilizer_order;
    r.expected_complete = f.complete;
    try {
      r.key = canonical_form(space, f.points).key;
    } catch (const CapError &e) {
      r.status = FixtureStatus::Rejected;
      r.detail = std::string(to_string(e.kind())) + ": " + e.what();
      report.results.push_back(std::move(r));
      continue;
    }
    auto it = by_key.find(*r.key);
    if (it == by_key.end()) {
      r.status = FixtureStatus::NotInCatalog;
      r.detail = "key " + format_points(*r.key) + " has no catalog entry";
      report.results.push_back(std::move(r));
      continue;
    }
    const ClassNode &node = *it->second;
    r.computed_stab = node.stabilizer_order;
    r.computed_complete = node.complete;

    std::vector<std::string> problems;
    bool typo_only = true;
    if (f.stabilizer_order && *f.stabilizer_order != node.stabilizer_order) {
      bool divides = *f.stabilizer_order != 0 && group_order % *f.stabilizer_order == 0;
      problems.push_back("stab expected=" + std::to_string(*f.stabilizer_order) +
                         " computed=" + std::to_string(node.stabilizer_order) +
                         (divides ? "" : " (does not divide " + std::to_string(group_order) + ")"));
      typo_only = typo_only && !divides;
    }
    if (f.complete && *f.complete != node.complete) {
      problems.push_back(std::string("complete expected=") + (*f.complete ? "1" : "0") +
                         " computed=" + (node.complete ? "1" : "0"));
      typo_only = false;
    }
    if (!problems.empty()) {
      r.status = typo_only ? FixtureStatus::PresumedTypo : FixtureStatus::Investigate;
      for (const std::string &p : problems)
        r.detail += (r.detail.empty() ? "" : "; ") + p;
    }
    report.results.push_back(std::move(r));
  }
  return report;
}

std::string format_report(const FixtureReport &report) {
  std::ostringstream os;
  for (const FixtureResult &r : report.results) {
    os << r.name << ' ' << (r.status == FixtureStatus::Match ? "PASS" : "FAIL");
    if (r.key)
      os << " key=" << format_points(*r.key);
    os << " stab=" << format_optional(r.computed_stab) << " complete=" << format_optional(r.computed_complete)
       << " status=" << to_string(r.status) << '\n';
  }
  os << "discrepancies:\n";
  for (const FixtureResult &r : report.results)
    if (r.status != FixtureStatus::Match)
      os << "  " << r.name << ": " << to_string(r.status) << ": " << r.detail
         << " (expected stab=" << format_optional(r.expected_stab)
         << " complete=" << format_optional(r.expected_complete) << ")\n";
  os << "summary: " << report.results.size() << " fixtures, " << report.count(FixtureStatus::Match) << " match, "
     << report.count(FixtureStatus::PresumedTypo) << " presumed typo, " << report.count(FixtureStatus::Investigate)
     << " investigate, " << report.count(FixtureStatus::NotInCatalog) << " not in catalog, "
     << report.count(FixtureStatus::Rejected) << " rejected\n";
  return os.str();
}

} // namespace capclass
