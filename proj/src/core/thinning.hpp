#pragma once

#include <cstdint>

#include "image_grid.hpp"

namespace pdebin {

// Zhang-Suen thinning of the text (bit 0) pixels of a map. Returns a mask with
// 1 on skeleton pixels and 0 elsewhere; pixels outside the image count as
// background.
Grid2D<std::uint8_t> zhang_suen_skeleton(const BinaryMap& map);

}  // namespace pdebin
