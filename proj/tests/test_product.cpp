#include <gtest/gtest.h>

#include <cmath>

#include "dsm/explorer.hpp"
#include "dsm/product.hpp"

using namespace dsm;

namespace {

Frame greek() { return Frame({"alpha", "beta"}); }
Frame latin() { return Frame({"a", "b"}); }

void expect_same_body(const BodyOfEvidence& got, const BodyOfEvidence& want) {
  EXPECT_EQ(got.frame(), want.frame());
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got.entries()[i].set, want.entries()[i].set);
    EXPECT_NEAR(got.entries()[i].mass, want.entries()[i].mass, 1e-12);
  }
}

}  // namespace

TEST(ProductJoin, CertaintyTimesCertainty) {
  auto joint = product_join(BodyOfEvidence::certainty(latin(), 1),
                            BodyOfEvidence::certainty(greek(), 0));
  ASSERT_EQ(joint.size(), 1u);
  const auto& e = joint.entries()[0];
  ASSERT_TRUE(e.set.is_singleton());
  EXPECT_EQ(joint.frame().label(std::countr_zero(e.set.bits())), "b|alpha");
  EXPECT_EQ(e.mass, 1.0);
}

TEST(ProductJoin, VacuousTimesVacuous) {
  auto joint = product_join(BodyOfEvidence::vacuous(latin()), BodyOfEvidence::vacuous(greek()));
  EXPECT_EQ(joint.frame().size(), 4u);
  ASSERT_EQ(joint.size(), 1u);
  EXPECT_EQ(joint.entries()[0].set.bits(), 0b1111u);
}

TEST(ProductJoin, FrameTooLarge) {
  auto x = BodyOfEvidence::vacuous(Frame::of_size(9));
  auto y = BodyOfEvidence::vacuous(Frame::of_size(8));
  EXPECT_THROW(product_join(x, y), Error);
}

TEST(ProductJoin, MeasuresAreAdditive) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(derive_seed(11, seed));
    const Frame fx = Frame::of_size(1 + rng.below(4));
    const Frame fy = Frame::of_size(1 + rng.below(4));
    auto x = random_body(fx, 1 + rng.below(std::min<std::size_t>(6, fx.full_mask())), rng);
    auto y = random_body(fy, 1 + rng.below(std::min<std::size_t>(6, fy.full_mask())), rng);
    auto xy = product_join(x, y);
    for (Measure m : {Measure::N, Measure::D, Measure::S, Measure::T, Measure::NS})
      EXPECT_NEAR(evaluate(m, xy), evaluate(m, x) + evaluate(m, y), 1e-9) << to_string(m);
  }
}

TEST(Marginalize, PaperJoint) {
  Frame joint = Frame::product(latin(), greek());
  auto body = validate_body(joint, {{0b1111, 0.5}, {0b1001, 0.5}});
  auto mx = marginalize(body, Axis::First);
  auto my = marginalize(body, Axis::Second);
  EXPECT_EQ(mx, BodyOfEvidence::vacuous(latin()));
  EXPECT_EQ(my, BodyOfEvidence::vacuous(greek()));
}

TEST(Marginalize, RecoversFactors) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(derive_seed(5, seed));
    const Frame fx = Frame::of_size(1 + rng.below(4));
    const Frame fy = Frame::of_size(1 + rng.below(4));
    auto x = random_body(fx, 1 + rng.below(std::min<std::size_t>(5, fx.full_mask())), rng);
    auto y = random_body(fy, 1 + rng.below(std::min<std::size_t>(5, fy.full_mask())), rng);
    auto xy = product_join(x, y);
    expect_same_body(marginalize(xy, Axis::First), x);
    expect_same_body(marginalize(xy, Axis::Second), y);
  }
}

TEST(Marginalize, RequiresProductFrame) {
  try {
    marginalize(BodyOfEvidence::vacuous(Frame::of_size(4)), Axis::First);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAProductFrame);
  }
}

TEST(Subadditivity, NonspecificityHoldsOnRandomJoints) {
  const Frame joint = Frame::product(Frame::of_size(3), Frame::of_size(3));
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(derive_seed(99, seed));
    auto body = random_body(joint, 1 + rng.below(10), rng);
    EXPECT_LE(nonspecificity(body), nonspecificity(marginalize(body, Axis::First)) +
                                        nonspecificity(marginalize(body, Axis::Second)) + 1e-9);
  }
}

TEST(Subadditivity, StrifeFailsOnThePaperJoint) {
  Frame joint = Frame::product(latin(), greek());
  auto body = validate_body(joint, {{0b1111, 0.5}, {0b1001, 0.5}});
  EXPECT_NEAR(strife(body), 0.5 * (2.0 - std::log2(3.0)), 1e-12);
  EXPECT_EQ(strife(marginalize(body, Axis::First)) + strife(marginalize(body, Axis::Second)), 0.0);
}
