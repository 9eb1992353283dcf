#pragma once

#include <filesystem>

#include "image_grid.hpp"

namespace pdebin {

// Reads PNG (8/16-bit gray, gray+alpha, RGB, RGBA, palette) or binary PGM (P5).
// Color is reduced with BT.709 luma weights; samples are scaled into [0,1] by
// the format maximum. Alpha is ignored.
ScalarField load_image(const std::filesystem::path& path);

// Ground-truth style read: any sample < 0.5 is text (0), everything else 1.
BinaryMap load_binary(const std::filesystem::path& path);

// 8-bit grayscale write; format picked from the extension (.pgm -> P5,
// anything else -> PNG). Field samples are quantized as floor(255*v + 0.5);
// binary maps store 0 -> 0 and 1 -> 255.
void save_image(const ScalarField& field, const std::filesystem::path& path);
void save_image(const BinaryMap& map, const std::filesystem::path& path);

std::uint8_t quantize_8bit(double v) noexcept;

}  // namespace pdebin
