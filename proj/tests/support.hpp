#pragma once

#include <random>
#include <vector>

#include "capclass/geometry.hpp"
#include "capclass/linear_map.hpp"

namespace capclass::testing {

inline CapSet basis(int d) {
  CapSet s;
  for (int i = 0; i <= d; ++i)
    s.insert(Point{1u << i});
  return s;
}

/// Uniform over GL(d+1,2) by rejection.
inline LinearMap random_map(const SpaceParams &space, std::mt19937_64 &rng) {
  std::uniform_int_distribution<unsigned> pick(1, space.n_points());
  while (true) {
    std::vector<Point> cols;
    for (int i = 0; i < space.coords(); ++i)
      cols.push_back(Point{pick(rng)});
    try {
      return LinearMap::from_columns(cols);
    } catch (const CapError &) {
    }
  }
}

/// Random cap containing the unit points, grown by random candidates up to
/// `size` (or until complete), then moved by a random map.
inline CapSet random_spanning_cap(const SpaceParams &space, int size, std::mt19937_64 &rng) {
  CapSet s = basis(space.dim());
  while (s.size() < size) {
    auto cand = candidate_set(space, s).points();
    if (cand.empty())
      break;
    std::uniform_int_distribution<std::size_t> pick(0, cand.size() - 1);
    s.insert(cand[pick(rng)]);
  }
  return random_map(space, rng).apply(s);
}

} // namespace capclass::testing
