#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "capclass/geometry.hpp"

namespace capclass {

/// Invertible matrix over GF(2) acting on PG(d,2). Row i holds the
/// coefficients of output coordinate i, packed LSB-first like points.
/// Over GF(2) there are no nontrivial scalars, so GL(d+1,2) is the full
/// projective group.
class LinearMap {
public:
  static constexpr int kMaxSize = kMaxDim + 1;

  /// Throws SingularTuple if the rows are dependent.
  LinearMap(int size, std::span<const std::uint8_t> rows);

  static LinearMap identity(int size);
  /// Matrix whose column j is `columns[j]`.
  static LinearMap from_columns(std::span<const Point> columns);

  int size() const noexcept { return size_; }
  std::span<const std::uint8_t> rows() const noexcept { return {rows_.data(), static_cast<std::size_t>(size_)}; }

  Point apply(Point p) const noexcept {
    unsigned out = 0;
    for (int i = 0; i < size_; ++i)
      out |= static_cast<unsigned>(__builtin_parity(rows_[i] & p.index)) << i;
    return Point{out};
  }
  CapSet apply(const CapSet &s) const;

  /// Composition: (a * b).apply(p) == a.apply(b.apply(p)).
  friend LinearMap operator*(const LinearMap &a, const LinearMap &b);
  LinearMap inverse() const;

  friend bool operator==(const LinearMap &, const LinearMap &) = default;

private:
  LinearMap() = default;

  int size_ = 0;
  std::array<std::uint8_t, kMaxSize> rows_{};
};

inline Point apply(const LinearMap &m, Point p) { return m.apply(p); }
inline CapSet apply_set(const LinearMap &m, const CapSet &s) { return m.apply(s); }

/// The map sending t[i] to the unit point e_i. Throws SingularTuple when
/// the tuple is dependent.
LinearMap map_from_preimages(std::span<const Point> tuple);

/// |GL(d+1, 2)|.
std::uint64_t gl_order(int d);

} // namespace capclass
