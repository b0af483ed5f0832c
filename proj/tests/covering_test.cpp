#include <gtest/gtest.h>

#include <set>

#include "nvfix/covering.hpp"
#include "nvfix/errors.hpp"
#include "nvfix/index.hpp"
#include "nvfix/lefschetz.hpp"
#include "nvfix/map_io.hpp"
#include "support.hpp"

using namespace nvfix;
using test::constant;
using test::R;

TEST(Covering, DoublingMapLiftsThroughTheTripleCover) {
  const auto lifts = lift_map(linear_map(1, 2), CyclicCover{3});
  ASSERT_EQ(lifts.size(), 3u);
  for (int j = 0; j < 3; ++j) {
    const auto& s = lifts[static_cast<std::size_t>(j)].map.strand(0);
    for (int i = 0; i <= 12; ++i) {
      const Rational t(i, 12);
      EXPECT_EQ(s(t), t * 2 + Rational(j, 3));
    }
  }
}

TEST(Covering, LiftsCommuteWithProjection) {
  for (const auto& base : {linear_map(1, 2), constant({"0", "1/2"}), linear_map(2, 1), linear_map(2, -2)}) {
    for (int k = 2; k <= 4; ++k) {
      for (const auto& lift : lift_map(base, CyclicCover{k})) {
        EXPECT_TRUE(validate(lift.map).ok());
        for (int i = 0; i < 50; ++i) EXPECT_TRUE(commutes_at(lift, Rational(i * 7 % 50, 50)));
      }
    }
  }
}

TEST(Covering, LiftListIsDeckClosed) {
  for (const auto& base : {constant({"0", "1/2"}), linear_map(2, 4), linear_map(3, 0)}) {
    const CyclicCover cover{2};
    const auto lifts = lift_map(base, cover);
    std::set<std::string> keys;
    for (const auto& l : lifts) keys.insert(serialize_map(l.map));
    for (const auto& l : lifts) {
      EXPECT_TRUE(keys.count(serialize_map(deck_act({1}, l).map)));
    }
  }
}

TEST(Covering, DeckAction) {
  const auto lifts = lift_map(linear_map(1, 2), CyclicCover{3});
  const auto& l = lifts[0];
  EXPECT_EQ(serialize_map(deck_act({0}, l).map), serialize_map(l.map));
  EXPECT_EQ(deck_act({1}, l).map.strand(0)(R("1/2")), R("4/3"));
  EXPECT_EQ(serialize_map(deck_act({1}, deck_act({2}, l)).map), serialize_map(l.map));
  EXPECT_EQ(serialize_map(deck_act({2}, deck_act({2}, l)).map), serialize_map(deck_act({1}, l).map));
}

TEST(Covering, Preimage) {
  const auto u = preimage(OpenArcSet::single(R("1/2"), R("1/4")), CyclicCover{2});
  EXPECT_EQ(u.to_string(), "1/4+1/8,3/4+1/8");
  EXPECT_TRUE(preimage(OpenArcSet::whole_circle(), CyclicCover{3}).is_whole_circle());
}

TEST(Covering, AveragingNamedCases) {
  const auto r = verify_averaging(linear_map(1, 2), CyclicCover{3}, OpenArcSet::whole_circle());
  EXPECT_EQ(r.base_index, -1);
  EXPECT_EQ(r.translate_indices, (std::vector<long>{-1, -1, -1}));
  EXPECT_TRUE(r.holds());

  const auto c = verify_averaging(constant({"0", "1/2"}), CyclicCover{2}, OpenArcSet::whole_circle());
  EXPECT_EQ(c.base_index, 2);
  EXPECT_EQ(c.deck_sum, 4);
  EXPECT_TRUE(c.holds());
}

TEST(Covering, LefschetzAveraging) {
  const auto r = verify_lefschetz_averaging(linear_map(1, 2), CyclicCover{3});
  EXPECT_EQ(r.base_lefschetz, -1);
  EXPECT_EQ(r.sum, -3);
  EXPECT_TRUE(verify_lefschetz_averaging(constant({"0"}), CyclicCover{2}).holds());
}

TEST(Covering, MissingLiftIsReported) {
  EXPECT_TRUE(lift_map(linear_map(2, 1), CyclicCover{2}).empty());
  EXPECT_EQ(lift_map(linear_map(2, 1), CyclicCover{3}).size(), 3u);
  EXPECT_THROW(verify_averaging(linear_map(2, 1), CyclicCover{2}, OpenArcSet::whole_circle()), NoLiftExists);
  EXPECT_THROW(verify_lefschetz_averaging(linear_map(2, 1), CyclicCover{2}), NoLiftExists);
  EXPECT_THROW(lift_map(linear_map(4, 1), CyclicCover{4}, 100), InvalidArgument);
}

TEST(Covering, AveragingOnAnArc) {
  const auto base = linear_map(1, 3);  // fixed points 0 and 1/2
  const auto r = verify_averaging(base, CyclicCover{3}, OpenArcSet::single(R("1/4"), R("1/2")));
  EXPECT_EQ(r.base_index, -1);
  EXPECT_TRUE(r.holds());
}
