#include <gtest/gtest.h>

#include "nvfix/errors.hpp"
#include "support.hpp"

using namespace nvfix;
using test::R;
using test::strand;

TEST(PlFunction, EvaluatesAndReportsSlopes) {
  const PlFunction f = strand({{"0", "0"}, {"1/2", "1/4"}, {"1", "2"}});
  EXPECT_EQ(f(R("1/4")), R("1/8"));
  EXPECT_EQ(f(R("3/4")), R("9/8"));
  EXPECT_EQ(f.slope_left(R("1/2")), R("1/2"));
  EXPECT_EQ(f.slope_right(R("1/2")), R("7/2"));
  EXPECT_EQ(f.slope_left(R("1/3")), f.slope_right(R("1/3")));
}

TEST(PlFunction, RejectsBadBreakpoints) {
  EXPECT_THROW(PlFunction({{R("0"), R("0")}}), InvalidArgument);
  EXPECT_THROW(strand({{"0", "0"}, {"0", "1"}}), InvalidArgument);
  EXPECT_THROW(strand({{"0", "0"}, {"1/2", "1"}, {"1/3", "1"}}), InvalidArgument);
}

TEST(PlFunction, RefineRestrictSimplifyRoundTrip) {
  const PlFunction f = strand({{"0", "1"}, {"1", "3"}});
  const std::vector<Rational> ts{R("1/3"), R("2/3")};
  const PlFunction g = f.refined(ts);
  EXPECT_EQ(g.segment_count(), 3u);
  EXPECT_EQ(g.simplified(), f);
  const PlFunction h = f.restricted(R("1/4"), R("1/2"));
  EXPECT_EQ(h.start_value(), R("3/2"));
  EXPECT_EQ(h.end_value(), R("2"));
}

TEST(PlFunction, ConcatenationAndAffineMaps) {
  const PlFunction a = strand({{"0", "0"}, {"1", "1"}});
  const PlFunction b = a.affine_domain(R("1"), R("1")).shifted(R("1"));  // on [1, 2]
  const PlFunction c = a.concatenated(b);
  EXPECT_EQ(c.end(), R("2"));
  EXPECT_EQ(c(R("3/2")), R("3/2"));
  EXPECT_EQ(a.affine_values(R("2"), R("1/2"))(R("1/4")), R("1"));
}

TEST(PlFunction, CommonBreakpointsMerge) {
  const std::vector<PlFunction> fs{strand({{"0", "0"}, {"1/3", "1"}, {"1", "0"}}),
                                   strand({{"0", "0"}, {"1/2", "1"}, {"1", "0"}})};
  const auto ts = common_breakpoints(fs);
  EXPECT_EQ(ts, (std::vector<Rational>{R("0"), R("1/3"), R("1/2"), R("1")}));
}
