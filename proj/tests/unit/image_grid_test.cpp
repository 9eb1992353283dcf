#include <gtest/gtest.h>

#include <limits>

#include "image_grid.hpp"
#include "synthetic.hpp"

namespace pdebin {
namespace {

TEST(ScalarField, RejectsSamplesOutsideUnitInterval) {
  EXPECT_THROW(ScalarField(1, 1, std::vector<double>{1.5}), Error);
  EXPECT_THROW(ScalarField(1, 1, std::vector<double>{-0.1}), Error);
  EXPECT_THROW(ScalarField(1, 1, std::vector<double>{std::numeric_limits<double>::quiet_NaN()}), Error);
  ScalarField f(2, 1);
  EXPECT_THROW(f.set(0, 0, 2.0), Error);
}

TEST(ScalarField, RejectsBadDimensions) {
  try {
    ScalarField(0, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Dimension);
  }
  EXPECT_THROW(ScalarField(2, 2, std::vector<double>{0.0, 0.0, 0.0}), Error);
}

TEST(ScalarField, ClampedFoldsIntoRange) {
  RealGrid g(3, 1, std::vector<double>{-1.0, 0.25, 7.0});
  const auto f = ScalarField::clamped(g);
  EXPECT_EQ(f.at(0, 0), 0.0);
  EXPECT_EQ(f.at(1, 0), 0.25);
  EXPECT_EQ(f.at(2, 0), 1.0);
}

TEST(BinaryMap, OnlyZeroOrOne) {
  EXPECT_THROW(BinaryMap(1, 1, std::vector<std::uint8_t>{2}), Error);
  BinaryMap m(2, 2);
  EXPECT_EQ(m.at(1, 1), BinaryMap::kBackground);
}

TEST(SampleAt, ReplicatesOutsideTheGrid) {
  const ScalarField f(2, 2, std::vector<double>{0.1, 0.2, 0.3, 0.4});
  EXPECT_EQ(sample_at(f, -1, -1), 0.1);
  EXPECT_EQ(sample_at(f, 2, 0), 0.2);
  EXPECT_EQ(sample_at(f, 1, 1), 0.4);
  EXPECT_EQ(sample_at(f, -100, 100), 0.3);
}

TEST(SampleAt, TotalOverAllCoordinates) {
  const auto f = testing::random_field(5, 3, 11);
  for (int y = -7; y < 10; ++y)
    for (int x = -7; x < 12; ++x) {
      const double v = sample_at(f, x, y);
      EXPECT_EQ(v, f.at(std::clamp(x, 0, 4), std::clamp(y, 0, 2)));
    }
}

}  // namespace
}  // namespace pdebin
