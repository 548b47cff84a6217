#include <gtest/gtest.h>

#include <cmath>

#include "semsteg/errors.hpp"
#include "semsteg/predictor.hpp"
#include "semsteg/token.hpp"

using namespace semsteg;

namespace {

const Shape kShape{4, 8, 8};

ConditionSet conditions(double lambda) {
  return {embed_text("a smiling face", 64), embed_text("pose skeleton", 64),
          embed_text("reference image", 64), lambda};
}

double l2(const LatentGrid& g) {
  double s = 0;
  for (double v : g.values()) s += v * v;
  return std::sqrt(s);
}

double l2_diff(const LatentGrid& a, const LatentGrid& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

TEST(EmbedText, DeterministicUnitNorm) {
  const auto a = embed_text("hello", 64);
  EXPECT_EQ(a, embed_text("hello", 64));
  double n = 0;
  for (double v : a) n += v * v;
  EXPECT_NEAR(std::sqrt(n), 1.0, 1e-12);
  EXPECT_THROW(embed_text("hello", 0), ValidationError);
}

TEST(EmbedText, DistinctStringsAreNearlyOrthogonal) {
  std::vector<std::vector<double>> e;
  for (int i = 0; i < 100; ++i) e.push_back(embed_text("prompt-" + std::to_string(i), 64));
  double worst = -1;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      double c = 0;
      for (std::size_t k = 0; k < 64; ++k) c += e[i][k] * e[j][k];
      worst = std::max(worst, c);
    }
  EXPECT_LT(worst, 0.5);
}

TEST(Predictor, ZeroIsZero) {
  const Predictor p({PredictorKind::Zero}, kShape);
  const auto c = conditions(0.5);
  const auto z = init_latent("z", kShape);
  EXPECT_EQ(p.predict(z, 3, &c), LatentGrid(kShape));
  EXPECT_EQ(p.guided_predict(z, 3, c), LatentGrid(kShape));
}

TEST(Predictor, DeterministicAndShapePreserving) {
  for (auto kind : {PredictorKind::Linear, PredictorKind::TinyMLP}) {
    const Predictor p({kind, Seed64{17}}, kShape);
    const Predictor q({kind, Seed64{17}}, kShape);
    const auto c = conditions(1.0);
    const auto z = init_latent("z", kShape);
    const auto a = p.predict(z, 7, &c);
    EXPECT_EQ(a.shape(), kShape);
    EXPECT_EQ(a, p.predict(z, 7, &c));
    EXPECT_EQ(a, q.predict(z, 7, &c));
    EXPECT_NE(a, p.predict(z, 7, nullptr)) << "conditions must change the output";
  }
}

TEST(Predictor, TinyMlpTimeAndConditionSensitive) {
  const Predictor p({PredictorKind::TinyMLP, Seed64{3}}, kShape);
  const auto z = init_latent("z", kShape);
  const auto c = conditions(1.0);
  EXPECT_NE(p.predict(z, 1, &c), p.predict(z, 2, &c));
  ConditionSet other = c;
  other.ref_embedding = embed_text("another reference", 64);
  EXPECT_NE(p.predict(z, 1, &c), p.predict(z, 1, &other));
}

TEST(Predictor, TinyMlpOutputBoundedByHiddenWidthTimesMaxWeight) {
  const Predictor p({PredictorKind::TinyMLP, Seed64{5}}, kShape);
  LatentGrid unit(kShape, 1.0 / std::sqrt(static_cast<double>(kShape.size())));
  const double bound = static_cast<double>(p.spec().hidden_width) * p.max_output_weight();
  for (int t : {1, 25, 50}) {
    const auto out = p.predict(unit, t, nullptr);
    ASSERT_TRUE(out.all_finite());
    for (double v : out.values()) EXPECT_LE(std::abs(v), bound);
    EXPECT_LE(l2(out), bound * std::sqrt(static_cast<double>(kShape.size())));
  }
}

TEST(Predictor, RejectsBadInput) {
  const Predictor p({PredictorKind::TinyMLP, Seed64{5}}, kShape);
  LatentGrid z = init_latent("z", kShape);
  z[3] = std::nan("");
  EXPECT_THROW(p.predict(z, 1, nullptr), ValidationError);
  EXPECT_THROW(p.predict(LatentGrid(Shape{1, 8, 8}), 1, nullptr), ValidationError);
  EXPECT_THROW(Predictor({PredictorKind::TinyMLP}, Shape{0, 8, 8}), ValidationError);
}

TEST(GuidedPredict, EndpointsAreExact) {
  const Predictor p({PredictorKind::TinyMLP, Seed64{8}}, kShape);
  const auto z = init_latent("z", kShape);
  const auto c0 = conditions(0.0);
  const auto c1 = conditions(1.0);
  const auto key_only = c1.without_reference();
  EXPECT_EQ(p.guided_predict(z, 4, c0), p.predict(z, 4, &key_only));
  EXPECT_EQ(p.guided_predict(z, 4, c1), p.predict(z, 4, &c1));
}

TEST(GuidedPredict, HalfIsElementwiseMeanOfEndpoints) {
  const Predictor p({PredictorKind::TinyMLP, Seed64{8}}, kShape);
  const auto z = init_latent("z", kShape);
  const auto full = conditions(1.0);
  const auto key_only = full.without_reference();
  const auto a = p.predict(z, 9, &key_only);
  const auto b = p.predict(z, 9, &full);
  const auto mid = p.guided_predict(z, 9, conditions(0.5));
  for (std::size_t i = 0; i < mid.size(); ++i) EXPECT_NEAR(mid[i], 0.5 * (a[i] + b[i]), 1e-15);
}

TEST(GuidedPredict, AffineInLambda) {
  for (auto kind : {PredictorKind::Linear, PredictorKind::TinyMLP}) {
    const Predictor p({kind, Seed64{21}}, kShape);
    const auto z = init_latent("affine", kShape);
    const auto o0 = p.guided_predict(z, 12, conditions(0.0));
    const auto o1 = p.guided_predict(z, 12, conditions(1.0));
    for (double lambda : {0.1, 0.25, 0.6, 0.93}) {
      const auto o = p.guided_predict(z, 12, conditions(lambda));
      for (std::size_t i = 0; i < o.size(); ++i) {
        EXPECT_NEAR(o[i], o0[i] + lambda * (o1[i] - o0[i]), 1e-12);
      }
    }
  }
}

TEST(Predictor, LinearIsLipschitz) {
  const Predictor p({PredictorKind::Linear, Seed64{2}}, kShape);
  const auto c = conditions(1.0);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const auto z1 = init_latent("l1-" + std::to_string(i), kShape);
    const auto z2 = init_latent("l2-" + std::to_string(i), kShape);
    const double ratio = l2_diff(p.predict(z1, 5, &c), p.predict(z2, 5, &c)) / l2_diff(z1, z2);
    worst = std::max(worst, ratio);
  }
  std::cout << "measured Lipschitz constant of the linear predictor: " << worst << "\n";
  // Signed permutation: an isometry in z.
  EXPECT_NEAR(worst, 1.0, 1e-12);
}

TEST(ConditionSet, Validation) {
  auto c = conditions(0.5);
  EXPECT_NO_THROW(c.validate());
  c.lambda = 1.5;
  EXPECT_THROW(c.validate(), ValidationError);
  c = conditions(0.5);
  c.key_embedding[0] += 0.5;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(PredictorKind, ParseAndPrint) {
  for (auto k : {PredictorKind::Zero, PredictorKind::Linear, PredictorKind::TinyMLP}) {
    EXPECT_EQ(parse_predictor_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_predictor_kind("unet"), ValidationError);
}
