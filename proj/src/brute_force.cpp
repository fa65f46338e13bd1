#include "capclass/brute_force.hpp"

#include <algorithm>
#include <map>

namespace capclass::oracle {

namespace {

void require_small(int d) {
  if (d < kMinDim || d > kMaxOracleDim)
    throw CapError(ErrorKind::DimensionOutOfRange,
                   "oracle supports d in [2, " + std::to_string(kMaxOracleDim) + "], got " + std::to_string(d));
}

unsigned n_points(int d) { return (1u << (d + 1)) - 1; }

// Matrix with the given columns applied to vector v.
unsigned multiply(const std::vector<unsigned> &columns, unsigned v) {
  unsigned out = 0;
  for (std::size_t i = 0; i < columns.size(); ++i)
    if ((v >> i) & 1)
      out ^= columns[i];
  return out;
}

// Columns are independent iff all 2^n combinations are distinct.
bool invertible(const std::vector<unsigned> &columns) {
  const unsigned n = static_cast<unsigned>(columns.size());
  std::vector<bool> hit(1u << n, false);
  for (unsigned v = 0; v < (1u << n); ++v) {
    unsigned image = multiply(columns, v);
    if (hit[image])
      return false;
    hit[image] = true;
  }
  return true;
}

std::uint32_t apply(const std::vector<std::uint8_t> &perm, std::uint32_t set) {
  std::uint32_t out = 0;
  for (unsigned p = 1; p < perm.size(); ++p)
    if ((set >> p) & 1)
      out |= std::uint32_t{1} << perm[p];
  return out;
}

bool cap(std::uint32_t set, unsigned points) {
  for (unsigned p = 1; p <= points; ++p)
    for (unsigned q = p + 1; q <= points; ++q)
      if (((set >> p) & 1) && ((set >> q) & 1) && ((set >> (p ^ q)) & 1))
        return false;
  return true;
}

// The members span iff their XOR closure reaches every point.
bool spanning(std::uint32_t set, unsigned points) {
  std::vector<bool> reach(points + 1, false);
  reach[0] = true;
  for (unsigned p = 1; p <= points; ++p) {
    if (((set >> p) & 1) == 0)
      continue;
    auto before = reach;
    for (unsigned v = 0; v <= points; ++v)
      if (before[v])
        reach[v ^ p] = true;
  }
  return std::all_of(reach.begin(), reach.end(), [](bool b) { return b; });
}

bool complete(std::uint32_t set, unsigned points) {
  for (unsigned p = 1; p <= points; ++p)
    if (((set >> p) & 1) == 0 && cap(set | (std::uint32_t{1} << p), points))
      return false;
  return true;
}

std::uint32_t small_mask(const CapSet &s, int d) {
  require_in_space(SpaceParams(d), s);
  return static_cast<std::uint32_t>(s.mask());
}

} // namespace

std::vector<std::vector<std::uint8_t>> group_permutations(int d) {
  require_small(d);
  const unsigned n = static_cast<unsigned>(d + 1);
  const unsigned points = n_points(d);
  std::vector<std::vector<std::uint8_t>> perms;
  std::vector<unsigned> columns(n, 1);
  // Odometer over all column tuples with nonzero entries.
  while (true) {
    if (invertible(columns)) {
      std::vector<std::uint8_t> perm(points + 1, 0);
      for (unsigned p = 1; p <= points; ++p)
        perm[p] = static_cast<std::uint8_t>(multiply(columns, p));
      perms.push_back(std::move(perm));
    }
    std::size_t i = 0;
    while (i < n && columns[i] == points)
      columns[i++] = 1;
    if (i == n)
      break;
    ++columns[i];
  }
  return perms;
}

std::vector<OracleClass> classify(int d) {
  const unsigned points = n_points(d);
  const auto group = group_permutations(d);
  const std::uint32_t subsets = std::uint32_t{1} << points;
  std::vector<bool> seen(subsets, false);
  std::vector<OracleClass> out;
  // Subsets over point bits 1..points are the even masks below 2^(points+1).
  for (std::uint32_t sub = 1; sub < subsets; ++sub) {
    std::uint32_t set = sub << 1;
    if (seen[sub] || !cap(set, points) || !spanning(set, points))
      continue;
    std::uint64_t orbit = 0;
    std::uint32_t smallest = set;
    for (const auto &g : group) {
      std::uint32_t image = apply(g, set);
      if (!seen[image >> 1]) {
        seen[image >> 1] = true;
        ++orbit;
        smallest = std::min(smallest, image);
      }
    }
    OracleClass c;
    c.representative = CapSet::from_mask(smallest);
    c.size = static_cast<int>(c.representative.size());
    c.complete = complete(set, points);
    c.orbit_size = orbit;
    c.stabilizer_order = group.size() / orbit;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const OracleClass &a, const OracleClass &b) {
    if (a.size != b.size)
      return a.size < b.size;
    return a.representative.mask() < b.representative.mask();
  });
  return out;
}

bool equivalent(int d, const CapSet &a, const CapSet &b) {
  std::uint32_t ma = small_mask(a, d), mb = small_mask(b, d);
  for (const auto &g : group_permutations(d))
    if (apply(g, ma) == mb)
      return true;
  return false;
}

std::uint64_t stabilizer_order(int d, const CapSet &s) {
  std::uint32_t m = small_mask(s, d);
  std::uint64_t count = 0;
  for (const auto &g : group_permutations(d))
    count += apply(g, m) == m;
  return count;
}

std::vector<std::string> compare(const std::vector<OracleClass> &oracle, const std::vector<LevelSet> &engine) {
  using Triple = std::pair<int, bool>;
  std::map<Triple, int> oracle_counts, engine_counts;
  std::map<int, std::vector<std::uint64_t>> oracle_stabs, engine_stabs;
  for (const OracleClass &c : oracle) {
    ++oracle_counts[{c.size, c.complete}];
    oracle_stabs[c.size].push_back(c.stabilizer_order);
  }
  for (const LevelSet &level : engine)
    for (const ClassNode &n : level.nodes) {
      ++engine_counts[{n.size, n.complete}];
      engine_stabs[n.size].push_back(n.stabilizer_order);
    }

  std::vector<std::string> diffs;
  auto keys = [](const auto &a, const auto &b) {
    std::vector<typename std::decay_t<decltype(a)>::key_type> out;
    for (const auto &kv : a)
      out.push_back(kv.first);
    for (const auto &kv : b)
      out.push_back(kv.first);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  for (const Triple &t : keys(oracle_counts, engine_counts)) {
    int o = oracle_counts.count(t) ? oracle_counts[t] : 0;
    int e = engine_counts.count(t) ? engine_counts[t] : 0;
    if (o != e)
      diffs.push_back("size " + std::to_string(t.first) + (t.second ? " complete" : " incomplete") +
                      ": oracle " + std::to_string(o) + " classes, engine " + std::to_string(e));
  }
  for (int size : keys(oracle_stabs, engine_stabs)) {
    auto o = oracle_stabs[size], e = engine_stabs[size];
    std::sort(o.begin(), o.end());
    std::sort(e.begin(), e.end());
    if (o != e)
      diffs.push_back("size " + std::to_string(size) + ": stabilizer multisets differ");
  }
  return diffs;
}

} // namespace capclass::oracle
