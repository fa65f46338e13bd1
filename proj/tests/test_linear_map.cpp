#include <doctest.h>

#include <array>

#include "support.hpp"

using namespace capclass;

namespace {

LinearMap from_rows(std::initializer_list<std::uint8_t> rows) {
  std::vector<std::uint8_t> r(rows);
  return LinearMap(static_cast<int>(r.size()), r);
}

std::vector<Point> tuple(std::initializer_list<unsigned> idx) {
  std::vector<Point> out;
  for (unsigned i : idx)
    out.push_back(Point{i});
  return out;
}

} // namespace

TEST_CASE("apply to points") {
  LinearMap id = LinearMap::identity(6);
  CHECK(id.apply(Point{27}).index == 27);
  LinearMap swap12 = from_rows({2, 1, 4, 8, 16, 32});
  CHECK(swap12.apply(Point{1}).index == 2);
  LinearMap shear = from_rows({3, 2, 4, 8, 16, 32});
  CHECK(shear.apply(Point{2}).index == 3);
  CHECK_THROWS_AS(from_rows({1, 1, 4, 8, 16, 32}), CapError);
}

TEST_CASE("apply to sets") {
  LinearMap id = LinearMap::identity(6);
  CapSet cap2{1, 2, 4, 8, 16, 32, 49};
  CHECK(apply_set(id, cap2) == cap2);
  LinearMap swap12 = from_rows({2, 1, 4, 8, 16, 32});
  CHECK(apply_set(swap12, CapSet{}) == CapSet{});
  CHECK(apply_set(swap12, testing::basis(5)) == testing::basis(5));
}

TEST_CASE("map from preimages") {
  CHECK(map_from_preimages(tuple({1, 2, 4, 8, 16, 32})) == LinearMap::identity(6));
  CHECK(map_from_preimages(tuple({2, 1, 4, 8, 16, 32})) == from_rows({2, 1, 4, 8, 16, 32}));
  CHECK_THROWS_AS(map_from_preimages(tuple({1, 2, 3, 8, 16, 32})), CapError);
  try {
    map_from_preimages(tuple({1, 2, 3, 8, 16, 32}));
  } catch (const CapError &e) {
    CHECK(e.kind() == ErrorKind::SingularTuple);
  }

  SpaceParams space(5);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    LinearMap g = testing::random_map(space, rng);
    std::vector<Point> t;
    for (int i = 0; i < 6; ++i)
      t.push_back(g.apply(Point{1u << i}));
    LinearMap m = map_from_preimages(t);
    for (int i = 0; i < 6; ++i)
      CHECK(m.apply(t[i]).index == (1u << i));
  }
}

TEST_CASE("group order") {
  CHECK(gl_order(2) == 168);
  CHECK(gl_order(3) == 20160);
  CHECK(gl_order(4) == 9999360);
  CHECK(gl_order(5) == 20158709760ull);
  // 15 * 14 * 12 * 8 for d=3.
  CHECK(gl_order(3) == 15ull * 14 * 12 * 8);
}

TEST_CASE("random maps are bijections that preserve caps and compose") {
  SpaceParams space(5);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    LinearMap a = testing::random_map(space, rng);
    LinearMap b = testing::random_map(space, rng);
    CapSet images;
    for (unsigned p = 1; p <= space.n_points(); ++p) {
      images.insert(a.apply(Point{p}));
      CHECK((a * b).apply(Point{p}) == a.apply(b.apply(Point{p})));
      CHECK(a.inverse().apply(a.apply(Point{p})).index == p);
    }
    CHECK(images.size() == 63);
    CapSet s = testing::random_spanning_cap(space, 5 + trial % 25, rng);
    CHECK(is_cap(apply_set(a, s)));
    CHECK(apply_set(a, s).size() == s.size());
  }
}
