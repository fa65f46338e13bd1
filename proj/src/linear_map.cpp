#include "capclass/linear_map.hpp"

#include <string>

namespace capclass {

namespace {

// Gauss-Jordan on [rows | identity]; returns false when singular.
bool invert_rows(int n, const std::uint8_t *rows, std::uint8_t *out) {
  std::array<std::uint8_t, LinearMap::kMaxSize> a{};
  std::array<std::uint8_t, LinearMap::kMaxSize> inv{};
  for (int i = 0; i < n; ++i) {
    a[i] = rows[i];
    inv[i] = static_cast<std::uint8_t>(1u << i);
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if ((a[r] >> col) & 1) {
        pivot = r;
        break;
      }
    if (pivot < 0)
      return false;
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    for (int r = 0; r < n; ++r)
      if (r != col && ((a[r] >> col) & 1)) {
        a[r] ^= a[col];
        inv[r] ^= inv[col];
      }
  }
  for (int i = 0; i < n; ++i)
    out[i] = inv[i];
  return true;
}

void check_size(int size) {
  if (size < 1 || size > LinearMap::kMaxSize)
    throw CapError(ErrorKind::DimensionOutOfRange, "matrix size " + std::to_string(size));
}

} // namespace

LinearMap::LinearMap(int size, std::span<const std::uint8_t> rows) : size_(size) {
  check_size(size);
  if (static_cast<int>(rows.size()) != size)
    throw CapError(ErrorKind::DimensionMismatch, "row count does not match matrix size");
  for (int i = 0; i < size; ++i) {
    if ((rows[i] >> size) != 0)
      throw CapError(ErrorKind::DimensionMismatch, "row wider than matrix size");
    rows_[i] = rows[i];
  }
  std::array<std::uint8_t, kMaxSize> scratch{};
  if (!invert_rows(size_, rows_.data(), scratch.data()))
    throw CapError(ErrorKind::SingularTuple, "matrix is singular over GF(2)");
}

LinearMap LinearMap::identity(int size) {
  check_size(size);
  LinearMap m;
  m.size_ = size;
  for (int i = 0; i < size; ++i)
    m.rows_[i] = static_cast<std::uint8_t>(1u << i);
  return m;
}

LinearMap LinearMap::from_columns(std::span<const Point> columns) {
  int n = static_cast<int>(columns.size());
  check_size(n);
  std::array<std::uint8_t, kMaxSize> rows{};
  for (int j = 0; j < n; ++j) {
    if (columns[j].index == 0 || (columns[j].index >> n) != 0)
      throw CapError(ErrorKind::InvalidPoint, "column " + std::to_string(j) + " is not a point of the space");
    for (int i = 0; i < n; ++i)
      rows[i] |= static_cast<std::uint8_t>(((columns[j].index >> i) & 1) << j);
  }
  return LinearMap(n, std::span<const std::uint8_t>(rows.data(), n));
}

CapSet LinearMap::apply(const CapSet &s) const {
  // Column form: image of p is the XOR of the columns selected by p's bits.
  std::array<unsigned, kMaxSize> cols{};
  for (int j = 0; j < size_; ++j)
    cols[j] = apply(Point{1u << j}).index;
  Mask out = 0;
  for (Mask m = s.mask(); m != 0; m &= m - 1) {
    unsigned p = static_cast<unsigned>(lowest_bit(m));
    unsigned img = 0;
    for (unsigned bits = p; bits != 0; bits &= bits - 1)
      img ^= cols[__builtin_ctz(bits)];
    out |= Mask{1} << img;
  }
  return CapSet::from_mask(out);
}

LinearMap operator*(const LinearMap &a, const LinearMap &b) {
  if (a.size_ != b.size_)
    throw CapError(ErrorKind::DimensionMismatch, "composing maps of different sizes");
  LinearMap out;
  out.size_ = a.size_;
  for (int i = 0; i < a.size_; ++i) {
    std::uint8_t row = 0;
    for (int k = 0; k < a.size_; ++k)
      if ((a.rows_[i] >> k) & 1)
        row ^= b.rows_[k];
    out.rows_[i] = row;
  }
  return out;
}

LinearMap LinearMap::inverse() const {
  LinearMap out;
  out.size_ = size_;
  invert_rows(size_, rows_.data(), out.rows_.data());
  return out;
}

LinearMap map_from_preimages(std::span<const Point> tuple) {
  LinearMap columns = [&] {
    try {
      return LinearMap::from_columns(tuple);
    } catch (const CapError &e) {
      if (e.kind() == ErrorKind::SingularTuple)
        throw CapError(ErrorKind::SingularTuple, "tuple points are linearly dependent");
      throw;
    }
  }();
  return columns.inverse();
}

std::uint64_t gl_order(int d) {
  if (d < 0 || d > kMaxDim)
    throw CapError(ErrorKind::DimensionOutOfRange, "gl_order dimension " + std::to_string(d));
  const std::uint64_t q = std::uint64_t{1} << (d + 1);
  std::uint64_t order = 1;
  for (int i = 0; i <= d; ++i)
    order *= q - (std::uint64_t{1} << i);
  return order;
}

} // namespace capclass
