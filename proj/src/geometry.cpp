#include "capclass/geometry.hpp"

#include <charconv>

namespace capclass {

const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::ZeroVector: return "ZeroVector";
  case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  case ErrorKind::DimensionOutOfRange: return "DimensionOutOfRange";
  case ErrorKind::InvalidPoint: return "InvalidPoint";
  case ErrorKind::DegenerateLine: return "DegenerateLine";
  case ErrorKind::NotACap: return "NotACap";
  case ErrorKind::NotSpanning: return "NotSpanning";
  case ErrorKind::SingularTuple: return "SingularTuple";
  case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

SpaceParams::SpaceParams(int dim) : dim_(dim) {
  if (dim < kMinDim || dim > kMaxDim)
    throw CapError(ErrorKind::DimensionOutOfRange,
                   "dimension " + std::to_string(dim) + " outside [2, 6]");
}

CapSet::CapSet(std::initializer_list<unsigned> indices) {
  for (unsigned i : indices)
    insert(Point{i});
}

CapSet CapSet::from_mask(Mask mask) {
  if ((mask & 1) != 0)
    throw CapError(ErrorKind::ZeroVector, "bit 0 set in point mask");
  CapSet s;
  s.mask_ = mask;
  return s;
}

CapSet CapSet::from_points(std::span<const Point> points) {
  CapSet s;
  for (Point p : points)
    s.insert(p);
  return s;
}

void CapSet::insert(Point p) {
  if (p.index == 0)
    throw CapError(ErrorKind::ZeroVector, "the zero vector is not a point");
  if (p.index >= 128)
    throw CapError(ErrorKind::InvalidPoint, "point index " + std::to_string(p.index) + " too large");
  mask_ |= Mask{1} << p.index;
}

void CapSet::erase(Point p) noexcept {
  if (p.index < 128)
    mask_ &= ~(Mask{1} << p.index);
}

std::vector<Point> CapSet::points() const {
  std::vector<Point> out;
  out.reserve(size());
  for (Mask m = mask_; m != 0; m &= m - 1)
    out.push_back(Point{static_cast<unsigned>(lowest_bit(m))});
  return out;
}

Point CapSet::min_point() const {
  if (mask_ == 0)
    throw CapError(ErrorKind::InvalidPoint, "min_point of an empty set");
  return Point{static_cast<unsigned>(lowest_bit(mask_))};
}

unsigned CapSet::max_index() const noexcept {
  auto hi = static_cast<std::uint64_t>(mask_ >> 64);
  if (hi != 0)
    return 127u - static_cast<unsigned>(__builtin_clzll(hi));
  auto lo = static_cast<std::uint64_t>(mask_);
  return lo == 0 ? 0u : 63u - static_cast<unsigned>(__builtin_clzll(lo));
}

Point point_from_coords(const SpaceParams &space, std::span<const int> coords) {
  if (static_cast<int>(coords.size()) != space.coords())
    throw CapError(ErrorKind::DimensionMismatch,
                   "expected " + std::to_string(space.coords()) + " coordinates, got " +
                       std::to_string(coords.size()));
  unsigned index = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] != 0 && coords[i] != 1)
      throw CapError(ErrorKind::InvalidPoint, "coordinates must be 0 or 1");
    index |= static_cast<unsigned>(coords[i]) << i;
  }
  if (index == 0)
    throw CapError(ErrorKind::ZeroVector, "all-zero coordinate vector");
  return Point{index};
}

std::vector<int> coords_of(const SpaceParams &space, Point p) {
  std::vector<int> out(space.coords());
  for (int i = 0; i < space.coords(); ++i)
    out[i] = static_cast<int>((p.index >> i) & 1);
  return out;
}

Point third_point(Point p, Point q) {
  if (p == q)
    throw CapError(ErrorKind::DegenerateLine, "a line needs two distinct points");
  return Point{p.index ^ q.index};
}

CapSet all_points(const SpaceParams &space) {
  return CapSet::from_mask(low_bits(static_cast<int>(space.n_points()) + 1) & ~Mask{1});
}

void require_in_space(const SpaceParams &space, const CapSet &s) {
  if (!s.empty() && s.max_index() > space.n_points())
    throw CapError(ErrorKind::InvalidPoint,
                   "point " + std::to_string(s.max_index()) + " not in PG(" +
                       std::to_string(space.dim()) + ",2)");
}

namespace {

// Union of p XOR q over distinct members.
Mask secant_points(const CapSet &s) {
  auto pts = s.points();
  Mask sums = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      sums |= Mask{1} << (pts[i].index ^ pts[j].index);
  return sums;
}

void require_cap(const CapSet &s) {
  if (!is_cap(s))
    throw CapError(ErrorKind::NotACap, "three of the points " + format_points(s) + " are collinear");
}

} // namespace

bool is_cap(const CapSet &s) { return (secant_points(s) & s.mask()) == 0; }

CapSet candidate_set(const SpaceParams &space, const CapSet &s) {
  require_in_space(space, s);
  require_cap(s);
  return CapSet::from_mask(all_points(space).mask() & ~s.mask() & ~secant_points(s));
}

bool is_complete(const SpaceParams &space, const CapSet &s) {
  return candidate_set(space, s).empty();
}

int rank(const CapSet &s) {
  // Echelon basis keyed by leading bit.
  unsigned basis[8] = {};
  int r = 0;
  for (Point p : s.points()) {
    unsigned v = p.index;
    for (int bit = 7; bit >= 0 && v != 0; --bit) {
      if (((v >> bit) & 1) == 0)
        continue;
      if (basis[bit] == 0) {
        basis[bit] = v;
        ++r;
        v = 0;
      } else {
        v ^= basis[bit];
      }
    }
  }
  return r;
}

bool spans(const SpaceParams &space, const CapSet &s) {
  require_in_space(space, s);
  return rank(s) == space.coords();
}

namespace {

// Chooses independent members in increasing order; a frame is a basis B of
// members together with the member XOR(B).
bool frame_search(const std::vector<Point> &pts, const CapSet &s, std::size_t start, int remaining,
                  Mask span, unsigned sum) {
  if (remaining == 0)
    return s.contains(Point{sum});
  for (std::size_t i = start; i + remaining <= pts.size(); ++i) {
    unsigned x = pts[i].index;
    if (((span >> x) & 1) != 0)
      continue;
    Mask next = span | (Mask{1} << x);
    for (Mask m = span; m != 0; m &= m - 1)
      next |= Mask{1} << (static_cast<unsigned>(lowest_bit(m)) ^ x);
    if (frame_search(pts, s, i + 1, remaining - 1, next, sum ^ x))
      return true;
  }
  return false;
}

} // namespace

bool has_frame(const SpaceParams &space, const CapSet &s) {
  require_in_space(space, s);
  require_cap(s);
  if (s.size() < space.coords() + 1)
    return false;
  auto pts = s.points();
  return frame_search(pts, s, 0, space.coords(), 0, 0);
}

std::string format_points(const CapSet &s) {
  std::string out;
  for (Point p : s.points()) {
    if (!out.empty())
      out += ',';
    out += std::to_string(p.index);
  }
  return out;
}

CapSet parse_points(std::string_view text) {
  CapSet s;
  if (text.empty())
    return s;
  unsigned previous = 0;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    unsigned value = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || end != item.data() + item.size() || item.empty())
      throw CapError(ErrorKind::ParseError, "bad point index '" + std::string(item) + "'");
    if (value <= previous)
      throw CapError(ErrorKind::ParseError, "point list must be strictly increasing and nonzero");
    s.insert(Point{value});
    previous = value;
    if (comma == std::string_view::npos)
      break;
    pos = comma + 1;
  }
  return s;
}

} // namespace capclass
