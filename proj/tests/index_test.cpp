#include <gtest/gtest.h>

#include "nvfix/errors.hpp"
#include "nvfix/homotopy.hpp"
#include "nvfix/index.hpp"
#include "support.hpp"

using namespace nvfix;
using test::constant;
using test::identity_map;
using test::R;
using test::strand;

namespace {

const OpenArcSet kAll = OpenArcSet::whole_circle();

std::vector<Rational> locations(const FixedPointSet& fix) {
  std::vector<Rational> out;
  for (const auto& p : fix.points) out.push_back(p.location.coordinate());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Index, FixedPointsOfTheDoublingMap) {
  const auto fix = fixed_points(linear_map(1, 2));
  ASSERT_EQ(fix.points.size(), 1u);
  EXPECT_EQ(fix.points[0].location.coordinate(), R("0"));
  EXPECT_EQ(fix.points[0].slope(), R("2"));
  EXPECT_EQ(fix.points[0].local_index, -1);
  EXPECT_FALSE(fix.points[0].degenerate);
}

TEST(Index, FixedPointsOfLinear26) {
  const auto fix = fixed_points(linear_map(2, 6));
  EXPECT_EQ(locations(fix), (std::vector<Rational>{R("0"), R("1/4"), R("1/2"), R("3/4")}));
  for (const auto& p : fix.points) {
    EXPECT_EQ(p.slope(), R("3"));
    EXPECT_EQ(p.local_index, -1);
  }
}

TEST(Index, LinearGridMatchesHandSolvedFixedPoints) {
  for (int n = 1; n <= 4; ++n) {
    for (long d = -8; d <= 8; ++d) {
      const auto fix = fixed_points(linear_map(n, d));
      if (d == n) {
        EXPECT_FALSE(fix.fix_finite());
        continue;
      }
      auto expected = test::linear_fixed_points(n, d);
      std::sort(expected.begin(), expected.end());
      EXPECT_EQ(locations(fix), expected) << n << "," << d;
      EXPECT_EQ(static_cast<long>(fix.points.size()), std::abs(n - d));
      EXPECT_EQ(index_schirmer(linear_map(n, d), kAll), n - d);
      EXPECT_EQ(index_crossing(linear_map(n, d), kAll), n - d);
    }
  }
}

TEST(Index, IdentityIsOneDegenerateInterval) {
  const auto fix = fixed_points(identity_map());
  EXPECT_TRUE(fix.points.empty());
  ASSERT_EQ(fix.intervals.size(), 1u);
  EXPECT_EQ(fix.intervals[0].length, R("1"));
  EXPECT_EQ(index_crossing(identity_map(), kAll), 0);
  EXPECT_EQ(index_schirmer(identity_map(), kAll), 0);
}

TEST(Index, SeamFixedPointReportedOnce) {
  // Strand lift t -> t/2 + 1/2 of linear_map(2,1) reaches 1 at t = 1, which is
  // the fixed point 0 seen from strand 0; it must not be counted twice.
  const auto fix = fixed_points(linear_map(2, 1));
  ASSERT_EQ(fix.points.size(), 1u);
  EXPECT_EQ(fix.points[0].strand, 0);
}

TEST(Index, KinkedTouchingPointHasIndexZero) {
  const NValuedCircleMap m({strand({{"0", "1/4"}, {"1/2", "1/2"}, {"1", "9/4"}})}, {0});
  const auto fix = fixed_points(m);
  ASSERT_EQ(fix.points.size(), 2u);
  EXPECT_EQ(fix.points[0].location.coordinate(), R("1/2"));
  EXPECT_TRUE(fix.points[0].degenerate);
  EXPECT_EQ(fix.points[0].local_index, 0);
  EXPECT_EQ(fix.points[1].location.coordinate(), R("9/10"));
  EXPECT_EQ(index_schirmer(m, OpenArcSet::single(R("1/4"), R("1/2"))), 0);
  EXPECT_EQ(index_crossing(m, OpenArcSet::single(R("1/4"), R("1/2"))), 0);
  EXPECT_EQ(index_schirmer(m, kAll), -1);
}

TEST(Index, Admissibility) {
  EXPECT_TRUE(is_admissible(linear_map(1, 2), OpenArcSet::single(R("1/4"), R("1/2"))));
  EXPECT_FALSE(is_admissible(linear_map(1, 2), OpenArcSet::single(R("0"), R("1/2"))));
  EXPECT_TRUE(is_admissible(identity_map(), kAll));
  EXPECT_FALSE(is_admissible(identity_map(), OpenArcSet::single(R("1/4"), R("1/2"))));
  EXPECT_THROW(index_schirmer(linear_map(1, 2), OpenArcSet::single(R("0"), R("1/2"))), NotAdmissible);
  EXPECT_THROW(index_crossing(linear_map(1, 2), OpenArcSet::single(R("0"), R("1/2"))), NotAdmissible);
}

TEST(Index, PerturbingTheIdentity) {
  const Perturbation p = fix_finite_perturb(identity_map());
  const auto fix = fixed_points(p.map);
  ASSERT_TRUE(fix.fix_finite());
  ASSERT_EQ(fix.points.size(), 2u);
  EXPECT_EQ(fix.points[0].local_index + fix.points[1].local_index, 0);
  EXPECT_NE(fix.points[0].local_index, 0);
  EXPECT_TRUE(homotopy_is_admissible(p.homotopy, kAll));
}

TEST(Index, PerturbationLeavesFixFiniteMapsAlone) {
  const Perturbation p = fix_finite_perturb(linear_map(2, 1));
  EXPECT_EQ(p.map.strands(), linear_map(2, 1).strands());
  EXPECT_EQ(p.epsilon, R("0"));
}

TEST(Index, PerturbationTouchesOnlyTheDegenerateSegment) {
  // Strand 1 of 3 is the identity on [1/2, 2/3]; the other strands are not.
  const NValuedCircleMap m({strand({{"0", "1/3"}, {"1", "4/3"}}),
                            strand({{"0", "0"}, {"1/2", "1/2"}, {"2/3", "2/3"}, {"1", "1"}}),
                            strand({{"0", "2/3"}, {"1", "5/3"}})},
                           {0, 1, 2});
  ASSERT_TRUE(validate(m).ok());
  const Perturbation p = fix_finite_perturb(m);
  EXPECT_EQ(p.map.strand(0), m.strand(0));
  EXPECT_EQ(p.map.strand(2), m.strand(2));
  EXPECT_NE(p.map.strand(1), m.strand(1));
  const auto fix = fixed_points(p.map);
  EXPECT_TRUE(fix.fix_finite());
  long sum = 0;
  for (const auto& q : fix.points) sum += q.local_index;
  EXPECT_EQ(sum, 0);
  EXPECT_EQ(index_schirmer(m, kAll), index_crossing(m, kAll));
}

TEST(Index, NormalizationOnConstants) {
  EXPECT_EQ(index_schirmer(constant({"1/4", "3/4"}), OpenArcSet::single(R("1/5"), R("1/10"))), 1);
  EXPECT_EQ(index_crossing(constant({"1/4", "3/4"}), OpenArcSet::single(R("1/5"), R("1/10"))), 1);
  EXPECT_EQ(index_schirmer(constant({"0", "1/3", "2/3"}), OpenArcSet::single(R("1/4"), R("1/6"))), 1);
  EXPECT_EQ(index_schirmer(constant({"0"}), OpenArcSet::single(R("7/8"), R("1/4"))), 1);
}

TEST(Index, NamedWholeCircleValues) {
  EXPECT_EQ(index_schirmer(linear_map(2, 1), kAll), 1);
  EXPECT_EQ(index_schirmer(linear_map(2, 6), kAll), -4);
  EXPECT_EQ(index_crossing(linear_map(1, 2), kAll), -1);
  EXPECT_EQ(index_crossing(linear_map(3, 1), kAll), 2);
}

TEST(Index, EmptyRegionIsZero) {
  for (const auto& m : {linear_map(2, 1), constant({"1/4"}), identity_map()}) {
    EXPECT_EQ(empty_region_index(m), 0);
    EXPECT_EQ(index_schirmer(m, OpenArcSet::empty()), 0);
    EXPECT_EQ(index_crossing(m, OpenArcSet::empty()), 0);
  }
}

TEST(Index, AdditivityOverSeamCrossingArcs) {
  const auto m = rotated(linear_map(3, -1), R("1/11"));
  const auto u1 = OpenArcSet::parse("9/10+1/5");
  const auto u2 = OpenArcSet::parse("1/5+3/5");
  const auto both = OpenArcSet::parse("9/10+1/5,1/5+3/5");
  ASSERT_TRUE(is_admissible(m, both));
  EXPECT_EQ(index_schirmer(m, both), index_schirmer(m, u1) + index_schirmer(m, u2));
  EXPECT_EQ(index_crossing(m, both), index_schirmer(m, both));
}

TEST(Index, ClassicalLocalIndex) {
  const PlFunction b = strand({{"0", "1/4"}, {"1/2", "1/2"}, {"1", "2"}});
  EXPECT_EQ(classical_local_index(b, R("1/2")), 0);
  const PlFunction c = strand({{"0", "1/4"}, {"1", "3/4"}});
  EXPECT_EQ(classical_local_index(c, R("1/2")), 1);
  EXPECT_EQ(branch_fixed_points(c, R("0"), R("1")), std::vector<Rational>{R("1/2")});
}
