#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "capclass/error.hpp"

namespace capclass {

// One bit per point index; bit 0 (the zero vector) is never set.
using Mask = unsigned __int128;

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 6;

inline int popcount(Mask m) {
  return __builtin_popcountll(static_cast<std::uint64_t>(m)) +
         __builtin_popcountll(static_cast<std::uint64_t>(m >> 64));
}

inline int lowest_bit(Mask m) {
  auto lo = static_cast<std::uint64_t>(m);
  if (lo != 0)
    return __builtin_ctzll(lo);
  return 64 + __builtin_ctzll(static_cast<std::uint64_t>(m >> 64));
}

// Bits [0, width) set; width may be 128.
inline Mask low_bits(int width) {
  return width >= 128 ? ~Mask{0} : (Mask{1} << width) - 1;
}

/// Projective dimension d of PG(d,2). Points are the nonzero vectors of
/// GF(2)^(d+1), so there are 2^(d+1) - 1 of them.
class SpaceParams {
public:
  explicit SpaceParams(int dim);

  int dim() const noexcept { return dim_; }
  int coords() const noexcept { return dim_ + 1; }
  unsigned n_points() const noexcept { return (1u << (dim_ + 1)) - 1; }

  friend bool operator==(const SpaceParams &, const SpaceParams &) = default;

private:
  int dim_;
};

/// A point of PG(d,2). Coordinate x1 is the least-significant bit of the
/// index, so the unit points are 1, 2, 4, ...
struct Point {
  unsigned index = 0;

  friend auto operator<=>(const Point &, const Point &) = default;
};

class CapSet {
public:
  CapSet() = default;
  CapSet(std::initializer_list<unsigned> indices);

  static CapSet from_mask(Mask mask);
  static CapSet from_points(std::span<const Point> points);

  Mask mask() const noexcept { return mask_; }
  int size() const noexcept { return popcount(mask_); }
  bool empty() const noexcept { return mask_ == 0; }

  bool contains(Point p) const noexcept {
    return p.index < 128 && ((mask_ >> p.index) & 1) != 0;
  }
  void insert(Point p);
  void erase(Point p) noexcept;

  CapSet with(Point p) const {
    CapSet out = *this;
    out.insert(p);
    return out;
  }

  /// Ascending.
  std::vector<Point> points() const;
  Point min_point() const;
  unsigned max_index() const noexcept;

  friend CapSet operator|(CapSet a, CapSet b) { return from_mask(a.mask_ | b.mask_); }
  friend CapSet operator&(CapSet a, CapSet b) { return from_mask(a.mask_ & b.mask_); }
  friend CapSet operator-(CapSet a, CapSet b) { return from_mask(a.mask_ & ~b.mask_); }
  friend bool operator==(const CapSet &, const CapSet &) = default;

private:
  Mask mask_ = 0;
};

/// Total order used for canonical keys: compare the ascending point lists
/// lexicographically. Equivalently, at the lowest index where the masks
/// differ, the set containing that point is smaller.
inline bool key_less(const CapSet &a, const CapSet &b) {
  Mask diff = a.mask() ^ b.mask();
  if (diff == 0)
    return false;
  return ((a.mask() >> lowest_bit(diff)) & 1) != 0;
}

struct KeyLess {
  bool operator()(const CapSet &a, const CapSet &b) const { return key_less(a, b); }
};

Point point_from_coords(const SpaceParams &space, std::span<const int> coords);
std::vector<int> coords_of(const SpaceParams &space, Point p);

Point third_point(Point p, Point q);

CapSet all_points(const SpaceParams &space);
/// Throws InvalidPoint when `s` holds an index beyond the space.
void require_in_space(const SpaceParams &space, const CapSet &s);

bool is_cap(const CapSet &s);
CapSet candidate_set(const SpaceParams &space, const CapSet &s);
bool is_complete(const SpaceParams &space, const CapSet &s);

/// GF(2) rank of the member vectors.
int rank(const CapSet &s);
bool spans(const SpaceParams &space, const CapSet &s);
bool has_frame(const SpaceParams &space, const CapSet &s);

/// `1,2,4,8` style: decimal, comma separated, strictly increasing.
std::string format_points(const CapSet &s);
CapSet parse_points(std::string_view text);

} // namespace capclass
