#pragma once

#include <cstdint>
#include <vector>

#include "capclass/geometry.hpp"
#include "capclass/linear_map.hpp"

namespace capclass {

/// Canonical image of a spanning cap.
///
/// For every ordered basis t = (t_1, ..., t_{d+1}) drawn from the cap, the
/// map sending t_i to the unit point e_i carries the cap to an image that
/// contains all unit points. The key is the smallest such image under
/// `key_less`. Two spanning caps are projectively equivalent exactly when
/// their keys coincide, since an equivalence N induces the bijection
/// t -> N t between their bases with identical images.
struct CanonicalForm {
  CapSet key;
  /// Maps the input onto `key`.
  LinearMap witness;
};

struct StabilizerInfo {
  std::uint64_t order = 1;
  /// Generators of the setwise stabilizer of the key, in key coordinates.
  std::vector<LinearMap> generators;
};

struct CanonicalRecord {
  CapSet key;
  std::uint64_t stabilizer_order = 1;
  LinearMap witness;
  /// Generators of the stabilizer of `key` (not of the input).
  std::vector<LinearMap> generators;
};

/// Key and witness only. Throws NotACap or NotSpanning.
CanonicalForm canonical_form(const SpaceParams &space, const CapSet &s);

/// Stabilizer of a set that is already a canonical key. The identity basis
/// is then a minimizing basis, and the stabilizer order is the number of
/// minimizing bases; it is computed as a product of orbit lengths along the
/// unit basis rather than by enumerating them.
StabilizerInfo key_stabilizer(const SpaceParams &space, const CapSet &key);

CanonicalRecord canonical(const SpaceParams &space, const CapSet &s);

bool equivalent(const SpaceParams &space, const CapSet &a, const CapSet &b);

std::uint64_t stabilizer_order(const SpaceParams &space, const CapSet &s);

} // namespace capclass
