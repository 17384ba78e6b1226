#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minvset/geometry.hpp"

namespace minvset::tool {

/// Renders a cloud as a white-on-black grayscale raster: the bounding box
/// plus a 5% margin is mapped to the canvas and each point dilated by one
/// pixel. The PNG encoding uses stored (uncompressed) deflate blocks with no
/// ancillary chunks, so identical clouds produce byte-identical files.
std::vector<uint8_t> render_png(const PointCloud& cloud, int width, int height);

void write_png(const std::string& path, const PointCloud& cloud, int width, int height);

}  // namespace minvset::tool
