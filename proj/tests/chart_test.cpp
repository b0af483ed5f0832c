#include <gtest/gtest.h>

#include "nvfix/chart.hpp"
#include "nvfix/errors.hpp"
#include "nvfix/index.hpp"
#include "nvfix/map_io.hpp"
#include "support.hpp"

using namespace nvfix;
using test::constant;
using test::R;
using test::strand;

namespace {

// phi o f o phi^{-1} evaluated pointwise, as a set of circle points.
std::vector<CirclePoint> conjugate_at(const CircleHomeomorphism& phi, const NValuedCircleMap& f, const Rational& t) {
  std::vector<CirclePoint> out;
  for (const auto& p : evaluate(f, phi.apply_inverse(t).frac())) out.emplace_back(phi.apply(p.coordinate()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Chart, RejectsNonHomeomorphisms) {
  EXPECT_THROW(CircleHomeomorphism(strand({{"0", "0"}, {"1", "2"}})), InvalidArgument);
  EXPECT_THROW(CircleHomeomorphism(strand({{"0", "0"}, {"1/2", "0"}, {"1", "1"}})), InvalidArgument);
}

TEST(Chart, InverseUndoesApply) {
  const CircleHomeomorphism phi(strand({{"0", "1/3"}, {"1/4", "1/2"}, {"3/4", "5/4"}, {"1", "4/3"}}));
  const auto inv = phi.inverse();
  for (int i = -10; i <= 30; ++i) {
    const Rational x(i, 17);
    EXPECT_EQ(phi.apply_inverse(phi.apply(x)), x);
    EXPECT_EQ(inv.apply(phi.apply(x)), x);
  }
}

TEST(Chart, ConjugateMatchesPointwiseDefinition) {
  const CircleHomeomorphism phi(strand({{"0", "-1/5"}, {"1/3", "1/2"}, {"1", "4/5"}}));
  for (const auto& f : {linear_map(2, 1), linear_map(3, -2), constant({"1/4", "3/4"})}) {
    const auto g = phi.conjugate(f);
    EXPECT_TRUE(validate(g).ok());
    EXPECT_EQ(total_degree(g), total_degree(f));
    for (int i = 0; i < 40; ++i) {
      const Rational t(i, 40);
      EXPECT_EQ(evaluate(g, t), conjugate_at(phi, f, t)) << t;
    }
  }
}

TEST(Chart, IndexIsInvariant) {
  const auto rot = CircleHomeomorphism::rotation(R("1/7"));
  EXPECT_EQ(index_schirmer(rot.conjugate(linear_map(2, 1)), OpenArcSet::whole_circle()), 1);

  const CircleHomeomorphism phi(strand({{"0", "0"}, {"1/2", "1/4"}, {"1", "1"}}));
  const auto c = constant({"1/4", "3/4"});
  const auto u = OpenArcSet::single(R("1/5"), R("1/10"));
  EXPECT_EQ(index_schirmer(phi.conjugate(c), phi.image(u)), 1);
  EXPECT_EQ(index_crossing(phi.conjugate(c), phi.image(u)), 1);

  const auto id = CircleHomeomorphism::identity();
  EXPECT_EQ(serialize_map(id.conjugate(linear_map(3, 2))), serialize_map(linear_map(3, 2)));
}

TEST(Chart, ImageOfASeamArc) {
  const auto rot = CircleHomeomorphism::rotation(R("1/4"));
  EXPECT_EQ(rot.image(OpenArcSet::single(R("7/8"), R("1/4"))).to_string(), "1/8+1/4");
}
