#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "ltnn/errors.hpp"
#include "ltnn/oracle.hpp"
#include "ltnn/random.hpp"
#include "ltnn/separability.hpp"

using namespace ltnn;

namespace {

const std::vector<Vec> kSquare = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};

Mask collection_of(std::size_t m, const std::vector<std::vector<std::size_t>>& subsets) {
  (void)m;
  Mask c = 0;
  for (const auto& s : subsets) {
    Mask a = 0;
    for (auto i : s) a |= Mask{1} << (i - 1);
    c |= Mask{1} << a;
  }
  return c;
}

}  // namespace

TEST_CASE("separate_subset on the square corners") {
  auto w = separate_subset(kSquare, 0b1010);
  REQUIRE(w);
  CHECK(w->contains(kSquare[1]));
  CHECK(w->contains(kSquare[3]));
  CHECK_FALSE(w->contains(kSquare[0]));
  CHECK_FALSE(w->contains(kSquare[2]));
  // Equivalent to x₁ > 1/2 on these points: only the first coordinate matters.
  CHECK(w->a[1] == 0);

  CHECK_FALSE(separate_subset(kSquare, 0b1001));
  CHECK_FALSE(separate_subset(kSquare, 0b0110));

  auto empty = separate_subset(kSquare, 0);
  REQUIRE(empty);
  CHECK(empty->a == Vec{0, 0});
  CHECK(empty->b == -1);

  CHECK_THROWS_AS(separate_subset({{0, 0}, {1}}, 1), InputError);
}

TEST_CASE("witnesses are coprime integers") {
  for (const auto& e : enumerate_separable_subsets(kSquare).entries) {
    Vec all = e.witness.a;
    all.push_back(e.witness.b);
    CHECK(primitive_integer(all) == all);
  }
}

TEST_CASE("separable subset counts") {
  const auto square = enumerate_separable_subsets(kSquare);
  CHECK(square.size() == 14);
  CHECK(verify_table(square));
  CHECK(square.find(0));
  CHECK(square.find(0b1111));
  CHECK_FALSE(square.find(0b1001));

  const auto line = enumerate_separable_subsets({{0}, {1}, {2}});
  CHECK(line.size() == 6);
  CHECK_FALSE(line.find(0b101));

  CHECK(enumerate_separable_subsets({{5}}).size() == 2);
  CHECK_THROWS_AS(enumerate_separable_subsets({{1, 2}, {1, 2}}), InputError);
}

TEST_CASE("separable subsets are closed under complement") {
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Vec> pts;
    for (int i = 0; i < 7; ++i) pts.push_back(rng.point(2, 3, 4));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const auto t = enumerate_separable_subsets(pts);
    for (const auto& e : t.entries) CHECK(t.find(~e.subset & full_mask(pts.size())));
  }
}

TEST_CASE("enumeration matches the all-subsets scan") {
  Rng rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 1 + rng.below(3);
    std::vector<Vec> pts;
    for (int i = 0; i < 9; ++i) pts.push_back(rng.point(n, 2, 2));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const auto fast = enumerate_separable_subsets(pts);
    const auto slow = oracle::brute_dichotomies(pts);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast.entries[i].subset == slow.entries[i].subset);
  }
}

TEST_CASE("Harding count and the quoted bound") {
  CHECK(general_position_count(4, 2) == 14);
  CHECK(quoted_subset_bound(4, 2) == 12);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("separate_collection examples") {
  CHECK(separate_collection(2, collection_of(2, {{}, {1}, {2}})));
  CHECK_FALSE(separate_collection(2, collection_of(2, {{}, {1, 2}})));
  const Mask only1 = collection_of(2, {{1}});
  auto w = separate_collection(2, only1);
  REQUIRE(w);
  for (Mask a = 0; a < 4; ++a) CHECK(w->accepts(a) == test_bit(only1, a));
  const CollectionWitness hand{{1, -1}, Rational(-1, 2)};
  for (Mask a = 0; a < 4; ++a) CHECK(hand.accepts(a) == test_bit(only1, a));
}

TEST_CASE("collection counts") {
  CHECK(enumerate_collections(1).size() == 4);
  CHECK(enumerate_collections(2).size() == 14);
  const auto l3 = enumerate_collections(3);
  CHECK(l3.size() == 104);
  CHECK(verify_table(l3));
  CHECK_THROWS_AS(enumerate_collections(5), RefusalError);
  CHECK_THROWS_AS(enumerate_collections(0), InputError);
}

TEST_CASE("collections are closed under permutations of the ground set") {
  const auto l3 = enumerate_collections(3);
  std::set<Mask> all;
  for (const auto& e : l3.entries) all.insert(e.collection);
  const std::vector<std::array<int, 3>> perms = {{1, 0, 2}, {0, 2, 1}, {2, 0, 1}};
  for (const auto& p : perms) {
    for (Mask c : all) {
      Mask image = 0;
      for (Mask a = 0; a < 8; ++a) {
        if (!test_bit(c, a)) continue;
        Mask b = 0;
        for (int s = 0; s < 3; ++s) {
          if (test_bit(a, s)) b |= Mask{1} << p[s];
        }
        image |= Mask{1} << b;
      }
      CHECK(all.count(image) == 1);
    }
  }
}

TEST_CASE("collection tables round-trip and are cached on disk") {
  const auto t = enumerate_collections(2);
  const auto text = serialize_collection_table(t);
  const auto back = deserialize_collection_table(text);
  CHECK(serialize_collection_table(back) == text);
  CHECK_THROWS_AS(deserialize_collection_table("garbage"), ParseError);

  std::string tampered = text;
  const auto pos = tampered.rfind('\n', tampered.size() - 2);
  tampered = tampered.substr(0, pos + 1) + "1 0 0 1\n";
  CHECK_THROWS_AS(deserialize_collection_table(tampered), ParseError);

  const auto dir = std::filesystem::temp_directory_path() / "ltnn_cache_test";
  std::filesystem::remove_all(dir);
  {
    CollectionCache cache(dir);
    CHECK(cache.get(3).size() == 104);
  }
  CHECK(std::filesystem::exists(dir / "collections_m3.txt"));
  CollectionCache again(dir);
  CHECK(again.get(3).size() == 104);
  CHECK_THROWS_AS(again.get(5), RefusalError);
  std::filesystem::remove_all(dir);
}
