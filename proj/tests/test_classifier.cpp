#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "capclass/brute_force.hpp"
#include "capclass/classifier.hpp"
#include "support.hpp"

using namespace capclass;

namespace {

const std::vector<LevelSet> &levels5() {
  static const std::vector<LevelSet> levels = classify(5);
  return levels;
}

const LevelSet &level(const std::vector<LevelSet> &levels, int size) {
  for (const LevelSet &l : levels)
    if (l.size == size)
      return l;
  FAIL("missing level ", size);
  return levels.front();
}

} // namespace

TEST_CASE("root") {
  CHECK(root(5) == CapSet{1, 2, 4, 8, 16, 32});
  CHECK(root(3) == CapSet{1, 2, 4, 8});
  CHECK_THROWS_AS(root(1), CapError);
  CHECK_THROWS_AS(classify(1), CapError);
}

TEST_CASE("candidate classes of the basis") {
  SpaceParams space(5);
  CandidateClasses cc = partition_candidates(space, root(5));
  REQUIRE(cc.classes.size() == 4);
  std::multiset<int> sizes;
  CapSet all;
  for (const CandidateClass &c : cc.classes) {
    sizes.insert(c.members.size());
    // One coordinate weight per class.
    std::set<int> weights;
    for (Point p : c.members.points())
      weights.insert(__builtin_popcount(p.index));
    CHECK(weights.size() == 1);
    CHECK((all & c.members).empty());
    all = all | c.members;
  }
  CHECK(sizes == std::multiset<int>{1, 6, 15, 20});
  CHECK(all == candidate_set(space, root(5)));
}

TEST_CASE("candidate classes match child keys") {
  SpaceParams space(5);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    CapSet base = testing::random_spanning_cap(space, 7 + trial % 15, rng);
    CandidateClasses cc = partition_candidates(space, base);
    CapSet all;
    for (std::size_t i = 0; i < cc.classes.size(); ++i) {
      const CandidateClass &c = cc.classes[i];
      CHECK(c.members.contains(c.representative));
      CHECK(c.representative == c.members.min_point());
      if (i > 0)
        CHECK(key_less(cc.classes[i - 1].child_key, c.child_key));
      for (Point p : c.members.points())
        CHECK(canonical_form(space, base.with(p)).key == c.child_key);
      all = all | c.members;
    }
    CHECK(all == candidate_set(space, base));
  }
}

TEST_CASE("complete base has no candidate classes") {
  SpaceParams space(5);
  CapSet affine;
  for (unsigned p = 32; p <= 63; ++p)
    affine.insert(Point{p});
  CHECK(partition_candidates(space, affine).classes.empty());
}

TEST_CASE("d=3 agrees with the brute-force oracle") {
  auto engine = classify(3);
  auto oracle_classes = oracle::classify(3);
  CHECK(oracle::compare(oracle_classes, engine).empty());

  auto count5 = std::count_if(oracle_classes.begin(), oracle_classes.end(),
                              [](const oracle::OracleClass &c) { return c.size == 5; });
  CHECK(partition_candidates(SpaceParams(3), root(3)).classes.size() == static_cast<std::size_t>(count5));

  const ClassNode &top = largest_complete(engine);
  CHECK(top.size == 8);
  CHECK(top.stabilizer_order == 8 * gl_order(2));
}

TEST_CASE("d=2 agrees with the brute-force oracle") {
  CHECK(oracle::compare(oracle::classify(2), classify(2)).empty());
}

TEST_CASE("d=5 table of counts") {
  const std::map<int, std::pair<int, int>> expected = {
      {7, {0, 4}},   {8, {0, 7}},   {9, {0, 12}},  {10, {0, 24}}, {11, {0, 34}}, {12, {0, 43}}, {13, {1, 46}},
      {14, {0, 49}}, {15, {0, 44}}, {16, {0, 48}}, {17, {5, 35}}, {18, {1, 32}}, {19, {0, 25}}, {20, {1, 23}},
      {21, {0, 16}}, {22, {0, 15}}, {23, {0, 9}},  {24, {0, 8}},  {25, {0, 5}},  {26, {0, 4}},  {27, {0, 2}},
      {28, {0, 2}},  {29, {0, 1}},  {30, {0, 1}},  {31, {0, 1}},  {32, {1, 0}}};
  std::map<int, std::pair<int, int>> got;
  for (const LevelSet &l : levels5())
    for (const ClassNode &n : l.nodes)
      if (n.size >= 7)
        ++(n.complete ? got[n.size].first : got[n.size].second);
  CHECK(got == expected);
  CHECK(level(levels5(), 8).nodes.size() == 7);
}

TEST_CASE("d=5 structural invariants") {
  SpaceParams space(5);
  const auto &levels = levels5();
  CHECK(levels.front().size == 6);
  CHECK(levels.front().nodes.size() == 1);
  CHECK(levels.front().nodes[0].stabilizer_order == 720);
  std::map<CapSet, const ClassNode *, KeyLess> previous;
  for (const LevelSet &l : levels) {
    for (std::size_t i = 0; i < l.nodes.size(); ++i) {
      const ClassNode &n = l.nodes[i];
      CHECK(n.size == l.size);
      CHECK(n.key.size() == n.size);
      if (i > 0)
        CHECK(key_less(l.nodes[i - 1].key, n.key));
      CHECK(n.complete == candidate_set(space, n.key).empty());
      CHECK(gl_order(5) % n.stabilizer_order == 0);
      if (n.parent_key) {
        REQUIRE(previous.count(*n.parent_key) == 1);
        REQUIRE(n.extension_point);
        CHECK(canonical_form(space, n.parent_key->with(*n.extension_point)).key == n.key);
      }
    }
    // Every incomplete node of the previous level has a child here.
    for (const auto &[key, node] : previous) {
      if (node->complete)
        continue;
      CapSet cand = candidate_set(space, key);
      CapSet child = canonical_form(space, key.with(cand.min_point())).key;
      CHECK(std::binary_search(l.nodes.begin(), l.nodes.end(), ClassNode{0, child, 0, false, {}, {}},
                               [](const ClassNode &a, const ClassNode &b) { return key_less(a.key, b.key); }));
    }
    previous.clear();
    for (const ClassNode &n : l.nodes)
      previous.emplace(n.key, &n);
  }
  CHECK(levels.back().size == 32);
  for (const auto &[key, node] : previous)
    CHECK(node->complete);
}

TEST_CASE("d=5 complete classes and frames") {
  SpaceParams space(5);
  std::multiset<int> complete_sizes;
  for (const LevelSet &l : levels5())
    for (const ClassNode &n : l.nodes)
      if (n.complete) {
        complete_sizes.insert(n.size);
        CHECK(has_frame(space, n.key) == (n.size != 32));
      }
  CHECK(complete_sizes == std::multiset<int>{13, 17, 17, 17, 17, 17, 18, 20, 32});
  ClassNode top = largest_complete(levels5());
  CHECK(top.size == 32);
  CHECK(top.stabilizer_order == 319979520ull);
  CHECK(top.stabilizer_order == 32 * gl_order(4));
  CHECK(level(levels5(), 31).nodes.at(0).stabilizer_order == 9999360);
}

TEST_CASE("ordering prune and thread count leave the output unchanged") {
  ClassifyOptions pruned;
  pruned.ordering_prune = true;
  CHECK(classify(5, pruned) == levels5());
  ClassifyOptions threaded;
  threaded.threads = 3;
  threaded.ordering_prune = true;
  CHECK(classify(5, threaded) == levels5());
  ClassifyOptions partial;
  partial.max_size = 9;
  auto head = classify(5, partial);
  REQUIRE(head.size() == 4);
  CHECK(head.back() == level(levels5(), 9));
}
