#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace pdebin {

// Out-of-grid stencil reads resolve to the nearest in-grid pixel.
enum class BoundaryRule { Replicate };

inline int clamp_index(int i, int extent) noexcept {
  return std::clamp(i, 0, extent - 1);
}

// Row-major 2-D grid. Base storage for every field type below.
template <typename T>
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(int width, int height, T fill = T{})
      : width_(check_dim(width)), height_(check_dim(height)),
        data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}
  Grid2D(int width, int height, std::vector<T> data)
      : width_(check_dim(width)), height_(check_dim(height)), data_(std::move(data)) {
    if (data_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_))
      fail(ErrorCode::Dimension, "sample count does not match width*height");
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }

  // Total over all integer coordinates.
  T sample(int x, int y, BoundaryRule = BoundaryRule::Replicate) const noexcept {
    return data_[index(clamp_index(x, width_), clamp_index(y, height_))];
  }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  template <typename U>
  bool same_shape(const Grid2D<U>& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 protected:
  static int check_dim(int d) {
    if (d < 1) fail(ErrorCode::Dimension, "grid dimensions must be >= 1");
    return d;
  }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

// Unconstrained real grid: PDE term values, edge responses before normalization.
using RealGrid = Grid2D<double>;

// Image-valued grid; every sample is finite and in [0,1].
class ScalarField : public Grid2D<double> {
 public:
  ScalarField() = default;
  ScalarField(int width, int height, double fill = 0.0);
  ScalarField(int width, int height, std::vector<double> samples);

  // Clamps each sample into [0,1]; non-finite samples are rejected.
  static ScalarField clamped(const RealGrid& grid);

  void set(int x, int y, double v);
  double at(int x, int y) const noexcept { return (*this)(x, y); }

  const RealGrid& grid() const noexcept { return *this; }
  std::span<const double> values() const noexcept { return data_; }

 private:
  // Writes go through set() so the [0,1] invariant holds.
  using Grid2D<double>::operator();
};

// 0 = text (ink, positive class), 1 = background.
class BinaryMap : public Grid2D<std::uint8_t> {
 public:
  static constexpr std::uint8_t kText = 0;
  static constexpr std::uint8_t kBackground = 1;

  BinaryMap() = default;
  BinaryMap(int width, int height, std::uint8_t fill = kBackground);
  BinaryMap(int width, int height, std::vector<std::uint8_t> bits);

  void set(int x, int y, std::uint8_t bit);
  std::uint8_t at(int x, int y) const noexcept { return (*this)(x, y); }
  std::span<const std::uint8_t> values() const noexcept { return data_; }

 private:
  using Grid2D<std::uint8_t>::operator();
};

inline double sample_at(const ScalarField& field, int x, int y,
                        BoundaryRule rule = BoundaryRule::Replicate) noexcept {
  return field.sample(x, y, rule);
}

template <typename A, typename B>
void require_same_shape(const Grid2D<A>& a, const Grid2D<B>& b, const char* what) {
  if (!a.same_shape(b))
    fail(ErrorCode::Dimension, std::string(what) + ": dimension mismatch (" +
                                   std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                                   " vs " + std::to_string(b.width()) + "x" +
                                   std::to_string(b.height()) + ")");
}

}  // namespace pdebin
