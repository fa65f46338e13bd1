#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "capclass/canonical.hpp"
#include "capclass/geometry.hpp"

namespace capclass {

/// Candidates of `base` grouped by the class of base + candidate.
struct CandidateClass {
  Point representative; // smallest member
  CapSet members;
  CapSet child_key;
};

struct CandidateClasses {
  CapSet base;
  /// Ascending by child_key.
  std::vector<CandidateClass> classes;
};

struct ClassNode {
  int size = 0;
  CapSet key;
  std::uint64_t stabilizer_order = 1;
  bool complete = false;
  std::optional<CapSet> parent_key;
  std::optional<Point> extension_point;

  friend bool operator==(const ClassNode &, const ClassNode &) = default;
};

struct LevelSet {
  int size = 0;
  /// Strictly ascending by key.
  std::vector<ClassNode> nodes;

  friend bool operator==(const LevelSet &, const LevelSet &) = default;
};

struct ClassifyOptions {
  int threads = 1;
  /// Skip candidates whose extension is provably first produced by an
  /// earlier node of the same level. Output is identical either way.
  bool ordering_prune = false;
  /// Stop after this cap size; 0 means run to completion.
  int max_size = 0;
};

/// The unit points {1, 2, 4, ..., 2^d}.
CapSet root(int d);

CandidateClasses partition_candidates(const SpaceParams &space, const CapSet &base);

/// Level-by-level isomorph-free generation of all spanning caps, starting
/// at the basis (size d+1). Each level is expanded in full and deduplicated
/// by canonical key; the recorded parent and extension point are the first
/// ones met in (parent order, class order).
std::vector<LevelSet> classify(int d, const ClassifyOptions &options = {});

/// A complete class of maximal size (the first in key order).
const ClassNode &largest_complete(const std::vector<LevelSet> &levels);
ClassNode largest_complete(int d, const ClassifyOptions &options = {});

} // namespace capclass
