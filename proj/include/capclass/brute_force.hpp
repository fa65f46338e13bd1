#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "capclass/classifier.hpp"
#include "capclass/geometry.hpp"

// Exhaustive reference implementation for tiny spaces. It shares only the
// point encoding with the engine: the group is enumerated matrix by matrix,
// classes are whole orbits, and stabilizers come from orbit lengths.
namespace capclass::oracle {

/// Largest dimension the oracle accepts (2^15 subsets, 20160 maps).
inline constexpr int kMaxOracleDim = 3;

/// GL(d+1,2) as point permutations: perm[p] is the image of point p.
std::vector<std::vector<std::uint8_t>> group_permutations(int d);

struct OracleClass {
  int size = 0;
  /// Orbit member with the smallest mask.
  CapSet representative;
  bool complete = false;
  std::uint64_t orbit_size = 0;
  std::uint64_t stabilizer_order = 0;
};

/// Every spanning cap, bucketed into orbits. Ordered by (size, representative mask).
std::vector<OracleClass> classify(int d);

bool equivalent(int d, const CapSet &a, const CapSet &b);
std::uint64_t stabilizer_order(int d, const CapSet &s);

/// Differences in (size, complete, count) and per-size stabilizer multisets;
/// empty when the two agree.
std::vector<std::string> compare(const std::vector<OracleClass> &oracle, const std::vector<LevelSet> &engine);

} // namespace capclass::oracle
