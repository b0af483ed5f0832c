#include <gtest/gtest.h>

#include "nvfix/errors.hpp"
#include "nvfix/homotopy.hpp"
#include "nvfix/index.hpp"
#include "support.hpp"

using namespace nvfix;
using test::constant;
using test::R;
using test::strand;

TEST(Homotopy, ShiftOfLinearMapIsValid) {
  const auto f = linear_map(2, 1);
  const auto h = make_homotopy(f, rotated(f, R("1/8")));
  EXPECT_TRUE(validate(h.at(R("1/3"))).ok());
  EXPECT_EQ(h.at(R("1/2")).strand(0)(R("0")), R("1/16"));
  const auto report = verify_homotopy_invariance(h, OpenArcSet::whole_circle());
  EXPECT_TRUE(report.holds());
  EXPECT_EQ(report.schirmer_target, 1);
}

TEST(Homotopy, SwappedConstantsCollide) {
  const auto a = constant({"0", "1/2"});
  const NValuedCircleMap b({strand({{"0", "1/2"}, {"1", "1/2"}}), strand({{"0", "0"}, {"1", "0"}})}, {0, 1});
  try {
    make_homotopy(a, b);
    FAIL() << "expected DistinctnessBroken";
  } catch (const DistinctnessBroken& e) {
    EXPECT_NE(std::string(e.what()).find("1/2"), std::string::npos) << e.what();
  }
}

TEST(Homotopy, MismatchedMonodromyOrWinding) {
  EXPECT_THROW(make_homotopy(linear_map(2, 1), linear_map(2, 3)), MonodromyMismatch);
  EXPECT_THROW(make_homotopy(linear_map(1, 1), linear_map(1, 2)), MonodromyMismatch);
  EXPECT_THROW(make_homotopy(linear_map(2, 1), linear_map(3, 1)), MonodromyMismatch);
}

TEST(Homotopy, IdentityHomotopy) {
  const auto f = linear_map(3, -2);
  const auto h = identity_homotopy(f);
  EXPECT_EQ(h.at(R("2/7")).strands(), h.source().strands());
  EXPECT_TRUE(verify_homotopy_invariance(h, OpenArcSet::parse("1/10+1/5")).holds());
}

TEST(Homotopy, RotationFamilyStaysAdmissible) {
  const auto f = linear_map(1, 2);
  const auto h = make_homotopy(f, rotated(f, R("1/16")));
  EXPECT_TRUE(homotopy_is_admissible(h, OpenArcSet::single(R("1/4"), R("1/2"))));
  EXPECT_TRUE(homotopy_is_admissible(h, OpenArcSet::whole_circle()));
}

TEST(Homotopy, DraggingAFixedPointAcrossTheBoundary) {
  // Fixed point of t -> 2t - c sits at t = c; pushing c from 0 to 1/2 crosses 1/4.
  const auto f = linear_map(1, 2);
  const auto h = make_homotopy(f, rotated(f, R("-1/2")));
  const auto u = OpenArcSet::single(R("1/4"), R("1/2"));
  EXPECT_TRUE(is_admissible(h.source(), u));
  EXPECT_TRUE(is_admissible(h.target(), u));
  EXPECT_FALSE(homotopy_is_admissible(h, u));
  EXPECT_THROW(verify_homotopy_invariance(h, u), NotAdmissible);
}

TEST(Homotopy, PreservesTotalDegree) {
  const auto f = linear_map(3, 4);
  const auto g = rotated(refined(f, std::vector<Rational>{R("1/2")}), R("1/5"));
  const auto h = make_homotopy(f, g);
  EXPECT_EQ(total_degree(h.source()), total_degree(h.target()));
  EXPECT_EQ(total_degree(h.at(R("3/4"))), 4);
}
