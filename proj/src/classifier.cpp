#include "capclass/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

namespace capclass {

namespace {

template <typename Fn> void parallel_for(std::size_t count, int threads, Fn &&fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++)
        fn(i);
    });
}

// Orbit representative (smallest member) for every candidate under the
// group generated by `gens`.
std::map<unsigned, Mask> candidate_orbits(const CapSet &candidates, const std::vector<LinearMap> &gens) {
  std::map<unsigned, Mask> orbits;
  Mask remaining = candidates.mask();
  while (remaining != 0) {
    unsigned start = static_cast<unsigned>(lowest_bit(remaining));
    Mask orbit = Mask{1} << start;
    Mask frontier = orbit;
    while (frontier != 0) {
      Mask next = 0;
      for (Mask f = frontier; f != 0; f &= f - 1) {
        Point p{static_cast<unsigned>(lowest_bit(f))};
        for (const LinearMap &g : gens)
          next |= Mask{1} << g.apply(p).index;
      }
      frontier = next & ~orbit;
      orbit |= next;
    }
    orbits.emplace(start, orbit);
    remaining &= ~orbit;
  }
  return orbits;
}

struct Expansion {
  std::vector<CandidateClass> classes;
  /// Child key per candidate point; absent for pruned candidates.
  std::map<unsigned, CapSet> child_key_of;
};

// `skip(point)` marks candidates whose extension need not be examined; a
// whole orbit is skipped when any member is, since all members give the
// same child class.
template <typename Skip>
Expansion expand(const SpaceParams &space, const CapSet &base, const std::vector<LinearMap> &gens, Skip &&skip) {
  Expansion out;
  CapSet candidates = candidate_set(space, base);
  std::map<CapSet, CandidateClass, KeyLess> by_key;
  for (const auto &[rep, orbit] : candidate_orbits(candidates, gens)) {
    bool skipped = false;
    for (Mask m = orbit; m != 0 && !skipped; m &= m - 1)
      skipped = skip(Point{static_cast<unsigned>(lowest_bit(m))});
    if (skipped)
      continue;
    CapSet child = canonical_form(space, base.with(Point{rep})).key;
    auto [it, inserted] = by_key.try_emplace(child, CandidateClass{Point{rep}, CapSet{}, child});
    it->second.members = it->second.members | CapSet::from_mask(orbit);
    if (!inserted && rep < it->second.representative.index)
      it->second.representative = Point{rep};
    for (Mask m = orbit; m != 0; m &= m - 1)
      out.child_key_of.emplace(static_cast<unsigned>(lowest_bit(m)), child);
  }
  for (auto &[key, cls] : by_key)
    out.classes.push_back(cls);
  return out;
}

struct WorkNode {
  ClassNode node;
  std::vector<LinearMap> generators;
  /// Index of the recorded parent in the previous level.
  std::size_t parent_index = 0;
};

void fill_stabilizer(const SpaceParams &space, WorkNode &w) {
  StabilizerInfo info = key_stabilizer(space, w.node.key);
  w.node.stabilizer_order = info.order;
  w.generators = std::move(info.generators);
  w.node.complete = candidate_set(space, w.node.key).empty();
}

} // namespace

CapSet root(int d) {
  SpaceParams space(d);
  CapSet basis;
  for (int i = 0; i < space.coords(); ++i)
    basis.insert(Point{1u << i});
  return basis;
}

CandidateClasses partition_candidates(const SpaceParams &space, const CapSet &base) {
  CanonicalRecord rec = canonical(space, base);
  // Stabilizer of base = witness^-1 * Stab(key) * witness.
  LinearMap back = rec.witness.inverse();
  std::vector<LinearMap> gens;
  for (const LinearMap &g : rec.generators)
    gens.push_back(back * g * rec.witness);
  Expansion e = expand(space, base, gens, [](Point) { return false; });
  return CandidateClasses{base, std::move(e.classes)};
}

std::vector<LevelSet> classify(int d, const ClassifyOptions &options) {
  SpaceParams space(d);
  std::vector<LevelSet> levels;

  std::vector<WorkNode> current(1);
  current[0].node.size = space.coords();
  current[0].node.key = root(d);
  fill_stabilizer(space, current[0]);
  std::vector<Expansion> parent_expansions;

  while (!current.empty()) {
    LevelSet level;
    level.size = current.front().node.size;
    for (const WorkNode &w : current)
      level.nodes.push_back(w.node);
    levels.push_back(std::move(level));
    if (options.max_size != 0 && levels.back().size >= options.max_size)
      break;

    std::vector<Expansion> expansions(current.size());
    const bool has_parents = !parent_expansions.empty();
    parallel_for(current.size(), options.threads, [&](std::size_t i) {
      const WorkNode &w = current[i];
      // A candidate q of the parent whose class there is keyed below this
      // node's key is handled by an earlier node of this level: parent + q
      // is that node, and it reaches the same child.
      auto skip = [&](Point q) {
        if (!options.ordering_prune || !has_parents)
          return false;
        const auto &map = parent_expansions[w.parent_index].child_key_of;
        auto it = map.find(q.index);
        return it != map.end() && key_less(it->second, w.node.key);
      };
      expansions[i] = expand(space, w.node.key, w.generators, skip);
    });

    std::vector<WorkNode> next;
    std::map<CapSet, std::size_t, KeyLess> seen;
    for (std::size_t i = 0; i < current.size(); ++i)
      for (const CandidateClass &cls : expansions[i].classes) {
        if (!seen.emplace(cls.child_key, next.size()).second)
          continue;
        WorkNode w;
        w.node.size = current[i].node.size + 1;
        w.node.key = cls.child_key;
        w.node.parent_key = current[i].node.key;
        w.node.extension_point = cls.representative;
        w.parent_index = i;
        next.push_back(std::move(w));
      }
    parallel_for(next.size(), options.threads, [&](std::size_t i) { fill_stabilizer(space, next[i]); });
    std::sort(next.begin(), next.end(),
              [](const WorkNode &a, const WorkNode &b) { return key_less(a.node.key, b.node.key); });

    current = std::move(next);
    parent_expansions = std::move(expansions);
  }
  return levels;
}

const ClassNode &largest_complete(const std::vector<LevelSet> &levels) {
  for (auto it = levels.rbegin(); it != levels.rend(); ++it)
    for (const ClassNode &n : it->nodes)
      if (n.complete)
        return n;
  throw CapError(ErrorKind::InvalidPoint, "no complete class in the classification");
}

ClassNode largest_complete(int d, const ClassifyOptions &options) {
  return largest_complete(classify(d, options));
}

} // namespace capclass
