#include <gtest/gtest.h>

#include "metrics.hpp"
#include "pipeline.hpp"
#include "synthetic.hpp"

namespace pdebin {
namespace {

TEST(Pipeline, AllWhiteIsBackground) {
  const auto r = binarize_document(ScalarField(24, 24, 1.0), {});
  EXPECT_TRUE(r.flat_input);
  for (auto b : r.binary.values()) EXPECT_EQ(b, BinaryMap::kBackground);
}

TEST(Pipeline, AllBlackIsText) {
  const auto r = binarize_document(ScalarField(24, 24, 0.0), {});
  EXPECT_TRUE(r.flat_input);
  for (auto b : r.binary.values()) EXPECT_EQ(b, BinaryMap::kText);
}

TEST(Pipeline, NearlyFlatInputIsNotEvolved) {
  ScalarField u(8, 8, 0.7);
  u.set(3, 3, 0.7 + 0.5 / 255);
  EXPECT_TRUE(binarize_document(u, {}).flat_input);
  u.set(3, 3, 0.7 + 2.0 / 255);
  EXPECT_FALSE(binarize_document(u, {}).flat_input);
}

TEST(Pipeline, StainedDocument) {
  const auto doc = testing::stained_document(128, 7);
  const auto r = binarize_document(doc.image, {});
  EXPECT_FALSE(r.flat_input);
  EXPECT_GE(r.iterations, 1);
  EXPECT_GE(f_measure(confusion_counts(r.binary, doc.clean)), 95.0);
  EXPECT_LT(drd(r.binary, doc.clean), 1.0);
}

TEST(Pipeline, FractionalOrderAlsoWorks) {
  const auto doc = testing::stained_document(96, 3);
  PipelineConfig cfg;
  cfg.pde.alpha = 0.8;
  const auto r = binarize_document(doc.image, cfg);
  EXPECT_GE(f_measure(confusion_counts(r.binary, doc.clean)), 90.0);
}

TEST(Pipeline, OtsuFinalThreshold) {
  const auto doc = testing::stained_document(96, 5);
  PipelineConfig cfg;
  cfg.threshold = ThresholdMode::Otsu;
  const auto r = binarize_document(doc.image, cfg);
  EXPECT_GE(f_measure(confusion_counts(r.binary, doc.clean)), 90.0);
}

TEST(Pipeline, Deterministic) {
  const auto doc = testing::stained_document(64, 11);
  EXPECT_EQ(binarize_document(doc.image, {}).binary, binarize_document(doc.image, {}).binary);
}

TEST(Pipeline, ValidatesConfig) {
  PipelineConfig cfg;
  cfg.pde.dt = 1.0;
  EXPECT_THROW(binarize_document(ScalarField(4, 4, 0.5), cfg), Error);
  cfg = {};
  cfg.target.radius = 0;
  EXPECT_THROW(validate(cfg), Error);
}

}  // namespace
}  // namespace pdebin
