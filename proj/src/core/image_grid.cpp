#include "image_grid.hpp"

#include <cmath>

namespace pdebin {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Io: return "I/O error";
    case ErrorCode::Format: return "format error";
    case ErrorCode::Dimension: return "dimension error";
    case ErrorCode::Parameter: return "parameter error";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::State: return "state error";
    case ErrorCode::DegenerateGroundTruth: return "degenerate ground truth";
    case ErrorCode::EmptyInput: return "empty input";
  }
  return "unknown error";
}

namespace {

void check_unit(double v) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0)
    fail(ErrorCode::Domain, "field sample outside [0,1]: " + std::to_string(v));
}

void check_bit(std::uint8_t b) {
  if (b > 1) fail(ErrorCode::Domain, "binary map element must be 0 or 1");
}

}  // namespace

ScalarField::ScalarField(int width, int height, double fill) : Grid2D(width, height, fill) {
  check_unit(fill);
}

ScalarField::ScalarField(int width, int height, std::vector<double> samples)
    : Grid2D(width, height, std::move(samples)) {
  for (double v : data_) check_unit(v);
}

ScalarField ScalarField::clamped(const RealGrid& grid) {
  ScalarField out(grid.width(), grid.height());
  auto src = grid.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!std::isfinite(src[i])) fail(ErrorCode::Domain, "non-finite sample");
    out.data_[i] = std::clamp(src[i], 0.0, 1.0);
  }
  return out;
}

void ScalarField::set(int x, int y, double v) {
  check_unit(v);
  (*this)(x, y) = v;
}

BinaryMap::BinaryMap(int width, int height, std::uint8_t fill) : Grid2D(width, height, fill) {
  check_bit(fill);
}

BinaryMap::BinaryMap(int width, int height, std::vector<std::uint8_t> bits)
    : Grid2D(width, height, std::move(bits)) {
  for (auto b : data_) check_bit(b);
}

void BinaryMap::set(int x, int y, std::uint8_t bit) {
  check_bit(bit);
  (*this)(x, y) = bit;
}

}  // namespace pdebin
