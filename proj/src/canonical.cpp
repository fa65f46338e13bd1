#include "capclass/canonical.hpp"

#include <array>
#include <string>

namespace capclass {

namespace {

constexpr int kMaxPoints = 128;
using Perm = std::array<std::uint8_t, kMaxPoints>;

// -1 if a < b, 0 if equal, 1 if a > b in key order, looking only at the
// bits below `width`.
int compare_low(Mask a, Mask b, int width) {
  Mask diff = (a ^ b) & low_bits(width);
  if (diff == 0)
    return 0;
  return ((a >> lowest_bit(diff)) & 1) != 0 ? -1 : 1;
}

bool block_less(std::uint64_t a, std::uint64_t b) {
  std::uint64_t diff = a ^ b;
  return diff != 0 && ((a >> __builtin_ctzll(diff)) & 1) != 0;
}

// A partial ordered basis (t_0, ..., t_{j-1}) drawn from `set`. coord_to_point
// lists span(t) by coordinate vector relative to t; the image of the set under
// the normalizing map, restricted to coordinates below 2^j, is fixed by the
// prefix. Extending by x determines the next block of 2^j image bits.
class BasisPrefix {
public:
  BasisPrefix(int n, Mask set) : n_(n), set_(set) {
    coord_to_point_[0] = 0;
    span_[0] = 0;
  }

  int n() const { return n_; }
  Mask set() const { return set_; }

  std::uint64_t block(int depth, unsigned x) const {
    const int width = 1 << depth;
    std::uint64_t b = 0;
    for (int c = 0; c < width; ++c)
      b |= static_cast<std::uint64_t>((set_ >> (coord_to_point_[c] ^ x)) & 1) << c;
    return b;
  }

  void descend(int depth, unsigned x) {
    const int width = 1 << depth;
    path_[depth] = static_cast<std::uint8_t>(x);
    Mask span = span_[depth];
    for (int c = 0; c < width; ++c) {
      unsigned p = coord_to_point_[c] ^ x;
      coord_to_point_[width + c] = static_cast<std::uint8_t>(p);
      span |= Mask{1} << p;
    }
    span_[depth + 1] = span;
  }

  // Prefix of unit points e_0..e_{depth-1}.
  void reset_to_units(int depth) {
    for (int c = 0; c < (1 << depth); ++c)
      coord_to_point_[c] = static_cast<std::uint8_t>(c);
    for (int i = 0; i < depth; ++i)
      path_[i] = static_cast<std::uint8_t>(1u << i);
    span_[depth] = low_bits(1 << depth) & ~Mask{1};
  }

  Mask candidates(int depth) const { return set_ & ~span_[depth]; }
  unsigned path(int i) const { return path_[i]; }
  unsigned point_at(unsigned coord) const { return coord_to_point_[coord]; }

private:
  int n_;
  Mask set_;
  std::array<std::uint8_t, kMaxPoints> coord_to_point_{};
  std::array<std::uint8_t, LinearMap::kMaxSize> path_{};
  std::array<Mask, LinearMap::kMaxSize + 1> span_{};
};

class OrbitPartition {
public:
  explicit OrbitPartition(int n_points) : n_points_(n_points) { reset(); }

  void reset() {
    for (int p = 0; p < n_points_; ++p)
      parent_[p] = static_cast<std::uint8_t>(p);
  }

  unsigned find(unsigned p) {
    while (parent_[p] != p) {
      parent_[p] = parent_[parent_[p]];
      p = parent_[p];
    }
    return p;
  }

  void join(const Perm &g) {
    for (int p = 1; p < n_points_; ++p) {
      unsigned a = find(static_cast<unsigned>(p));
      unsigned b = find(g[p]);
      if (a != b)
        parent_[a > b ? a : b] = static_cast<std::uint8_t>(a > b ? b : a);
    }
  }

private:
  int n_points_;
  std::array<std::uint8_t, kMaxPoints> parent_{};
};

// Depth-first search for the minimal image over all ordered bases.
//
// Pruning:
//  * at each node only children whose new block is minimal among siblings
//    can lead to the node's minimum, so the rest are dropped;
//  * a node whose restriction already exceeds the best leaf is dropped;
//  * a leaf equal to the best leaf yields an automorphism g mapping the best
//    basis to the current one; the subtree where the two paths diverge is the
//    g-image of an explored subtree, so the search unwinds to that level;
//  * siblings in one orbit of the discovered automorphisms that fix the
//    current prefix pointwise are explored once.
class MinimalImageSearch {
public:
  MinimalImageSearch(int n, Mask set) : prefix_(n, set), n_(n), full_(1 << n) {}

  void run() { explore(0, 0); }

  Mask best_image() const { return best_image_; }
  std::vector<Point> best_basis() const {
    std::vector<Point> out;
    for (int i = 0; i < n_; ++i)
      out.push_back(Point{best_path_[i]});
    return out;
  }

private:
  static constexpr int kNoJump = 1 << 20;

  int explore(int depth, Mask image) {
    if (depth == n_)
      return leaf(image);

    const int width = 1 << depth;
    std::array<std::uint8_t, kMaxPoints> kids;
    int n_kids = 0;
    std::uint64_t min_block = 0;
    for (Mask c = prefix_.candidates(depth); c != 0; c &= c - 1) {
      unsigned x = static_cast<unsigned>(lowest_bit(c));
      std::uint64_t b = prefix_.block(depth, x);
      if (n_kids == 0 || block_less(b, min_block)) {
        min_block = b;
        n_kids = 0;
        kids[n_kids++] = static_cast<std::uint8_t>(x);
      } else if (b == min_block) {
        kids[n_kids++] = static_cast<std::uint8_t>(x);
      }
    }

    const Mask child_image = image | (static_cast<Mask>(min_block) << width);
    std::array<std::uint8_t, kMaxPoints> explored;
    int n_explored = 0;
    OrbitPartition orbits(full_);
    std::size_t orbit_gens = 0;

    for (int k = 0; k < n_kids; ++k) {
      if (have_best_ && compare_low(child_image, best_image_, 2 * width) > 0)
        return kNoJump;
      unsigned x = kids[k];
      if (n_explored > 0 && gens_.size() > 0) {
        if (orbit_gens != gens_.size()) {
          orbits.reset();
          for (const Perm &g : gens_)
            if (fixes_prefix(g, depth))
              orbits.join(g);
          orbit_gens = gens_.size();
        }
        bool seen = false;
        for (int e = 0; e < n_explored && !seen; ++e)
          seen = orbits.find(x) == orbits.find(explored[e]);
        if (seen)
          continue;
      }
      prefix_.descend(depth, x);
      int jump = explore(depth + 1, child_image);
      explored[n_explored++] = static_cast<std::uint8_t>(x);
      if (jump < depth)
        return jump;
    }
    return kNoJump;
  }

  bool fixes_prefix(const Perm &g, int depth) const {
    for (int i = 0; i < depth; ++i)
      if (g[prefix_.path(i)] != prefix_.path(i))
        return false;
    return true;
  }

  void record_best(Mask image) {
    have_best_ = true;
    best_image_ = image;
    for (int i = 0; i < n_; ++i)
      best_path_[i] = static_cast<std::uint8_t>(prefix_.path(i));
    for (int c = 0; c < full_; ++c)
      best_coord_[prefix_.point_at(static_cast<unsigned>(c))] = static_cast<std::uint8_t>(c);
  }

  int leaf(Mask image) {
    if (!have_best_ || compare_low(image, best_image_, 128) < 0) {
      record_best(image);
      return kNoJump;
    }
    // Pruning guarantees the leaf is not worse, so it equals the best.
    Perm g{};
    for (int p = 0; p < full_; ++p)
      g[p] = static_cast<std::uint8_t>(prefix_.point_at(best_coord_[p]));
    gens_.push_back(g);
    int diverge = 0;
    while (diverge < n_ && prefix_.path(diverge) == best_path_[diverge])
      ++diverge;
    return diverge;
  }

  BasisPrefix prefix_;
  int n_;
  int full_;
  bool have_best_ = false;
  Mask best_image_ = 0;
  std::array<std::uint8_t, LinearMap::kMaxSize> best_path_{};
  std::array<std::uint8_t, kMaxPoints> best_coord_{};
  std::vector<Perm> gens_;
};

// Finds some basis extending the current prefix whose image is exactly the
// target set, i.e. every block agrees with the target's.
class ExactImageSearch {
public:
  ExactImageSearch(int n, Mask target) : prefix_(n, target), n_(n) {
    for (int j = 0; j < n; ++j)
      target_block_[j] = static_cast<std::uint64_t>((target >> (1 << j)) & low_bits(1 << j));
  }

  BasisPrefix &prefix() { return prefix_; }
  std::uint64_t target_block(int depth) const { return target_block_[depth]; }

  bool complete_from(int depth) {
    if (depth == n_)
      return true;
    for (Mask c = prefix_.candidates(depth); c != 0; c &= c - 1) {
      unsigned x = static_cast<unsigned>(lowest_bit(c));
      if (prefix_.block(depth, x) != target_block_[depth])
        continue;
      prefix_.descend(depth, x);
      if (complete_from(depth + 1))
        return true;
    }
    return false;
  }

private:
  BasisPrefix prefix_;
  int n_;
  std::array<std::uint64_t, LinearMap::kMaxSize> target_block_{};
};

void require_spanning_cap(const SpaceParams &space, const CapSet &s) {
  require_in_space(space, s);
  if (!is_cap(s))
    throw CapError(ErrorKind::NotACap, "input " + format_points(s) + " is not a cap");
  if (!spans(space, s))
    throw CapError(ErrorKind::NotSpanning,
                   "input " + format_points(s) + " has rank " + std::to_string(rank(s)) + " < " +
                       std::to_string(space.coords()));
}

LinearMap perm_to_map(const Perm &g, int n) {
  std::array<Point, LinearMap::kMaxSize> cols{};
  for (int i = 0; i < n; ++i)
    cols[i] = Point{g[1u << i]};
  return LinearMap::from_columns(std::span<const Point>(cols.data(), n));
}

} // namespace

CanonicalForm canonical_form(const SpaceParams &space, const CapSet &s) {
  require_spanning_cap(space, s);
  MinimalImageSearch search(space.coords(), s.mask());
  search.run();
  auto basis = search.best_basis();
  return CanonicalForm{CapSet::from_mask(search.best_image()), map_from_preimages(basis)};
}

StabilizerInfo key_stabilizer(const SpaceParams &space, const CapSet &key) {
  require_spanning_cap(space, key);
  const int n = space.coords();
  const int full = 1 << n;
  for (int i = 0; i < n; ++i)
    if (!key.contains(Point{1u << i}))
      throw CapError(ErrorKind::InvalidPoint, "stabilizer input must contain the unit points");

  // Pointwise stabilizers H_i of (e_0..e_{i-1}) form a chain; |H_i| is the
  // orbit length of e_i under H_i times |H_{i+1}|. Going from the deepest
  // level up, the generators found so far generate H_{i+1}, and each point
  // not yet in the orbit is decided by an exact-image search.
  ExactImageSearch search(n, key.mask());
  std::vector<Perm> gens;
  std::uint64_t order = 1;
  for (int i = n - 1; i >= 0; --i) {
    const unsigned unit = 1u << i;
    auto fixes_units = [&](const Perm &g) {
      for (int m = 0; m < i; ++m)
        if (g[1u << m] != (1u << m))
          return false;
      return true;
    };
    auto orbit_of_unit = [&] {
      Mask orbit = Mask{1} << unit;
      Mask frontier = orbit;
      while (frontier != 0) {
        Mask next = 0;
        for (Mask f = frontier; f != 0; f &= f - 1) {
          unsigned p = static_cast<unsigned>(lowest_bit(f));
          for (const Perm &g : gens)
            if (fixes_units(g))
              next |= Mask{1} << g[p];
        }
        frontier = next & ~orbit;
        orbit |= next;
      }
      return orbit;
    };

    search.prefix().reset_to_units(i);
    Mask orbit = orbit_of_unit();
    for (Mask c = search.prefix().candidates(i); c != 0; c &= c - 1) {
      unsigned x = static_cast<unsigned>(lowest_bit(c));
      if (((orbit >> x) & 1) != 0)
        continue;
      search.prefix().reset_to_units(i);
      if (search.prefix().block(i, x) != search.target_block(i))
        continue;
      search.prefix().descend(i, x);
      if (!search.complete_from(i + 1))
        continue;
      Perm g{};
      for (int p = 0; p < full; ++p)
        g[p] = static_cast<std::uint8_t>(search.prefix().point_at(static_cast<unsigned>(p)));
      gens.push_back(g);
      orbit = orbit_of_unit();
    }
    order *= static_cast<std::uint64_t>(popcount(orbit));
  }

  StabilizerInfo info;
  info.order = order;
  for (const Perm &g : gens)
    info.generators.push_back(perm_to_map(g, n));
  return info;
}

CanonicalRecord canonical(const SpaceParams &space, const CapSet &s) {
  CanonicalForm form = canonical_form(space, s);
  StabilizerInfo stab = key_stabilizer(space, form.key);
  return CanonicalRecord{form.key, stab.order, form.witness, std::move(stab.generators)};
}

bool equivalent(const SpaceParams &space, const CapSet &a, const CapSet &b) {
  return canonical_form(space, a).key == canonical_form(space, b).key;
}

std::uint64_t stabilizer_order(const SpaceParams &space, const CapSet &s) {
  // The stabilizer of s is conjugate to that of its key.
  return key_stabilizer(space, canonical_form(space, s).key).order;
}

} // namespace capclass
