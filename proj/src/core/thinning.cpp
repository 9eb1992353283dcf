#include "thinning.hpp"

#include <array>

namespace pdebin {

Grid2D<std::uint8_t> zhang_suen_skeleton(const BinaryMap& map) {
  const int w = map.width();
  const int h = map.height();
  Grid2D<std::uint8_t> img(w, h, 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img(x, y) = map.at(x, y) == BinaryMap::kText ? 1 : 0;

  auto at = [&](int x, int y) -> int {
    return (x >= 0 && x < w && y >= 0 && y < h) ? img(x, y) : 0;
  };

  std::vector<std::pair<int, int>> doomed;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      doomed.clear();
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          if (!img(x, y)) continue;
          // P2..P9 clockwise starting north
          const std::array<int, 8> p{at(x, y - 1), at(x + 1, y - 1), at(x + 1, y), at(x + 1, y + 1),
                                     at(x, y + 1), at(x - 1, y + 1), at(x - 1, y), at(x - 1, y - 1)};
          int neighbours = 0;
          int transitions = 0;
          for (int i = 0; i < 8; ++i) {
            neighbours += p[i];
            transitions += p[i] == 0 && p[(i + 1) % 8] == 1;
          }
          if (neighbours < 2 || neighbours > 6 || transitions != 1) continue;
          const int p2 = p[0], p4 = p[2], p6 = p[4], p8 = p[6];
          const bool keep = pass == 0 ? (p2 * p4 * p6 != 0 || p4 * p6 * p8 != 0)
                                      : (p2 * p4 * p8 != 0 || p2 * p6 * p8 != 0);
          if (!keep) doomed.emplace_back(x, y);
        }
      for (auto [x, y] : doomed) img(x, y) = 0;
      changed = changed || !doomed.empty();
    }
  }
  return img;
}

}  // namespace pdebin
