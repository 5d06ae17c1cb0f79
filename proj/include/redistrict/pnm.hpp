#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace redistrict::pnm {

/// Decoded netpbm image. `samples` has width*height*channels entries.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  int maxval = 255;
  std::vector<std::uint16_t> samples;
};

/// Decodes P2, P3, P5 and P6. Throws MALFORMED_IMAGE.
Image decode(std::string_view bytes);

/// Binary P6, maxval 255. `rgb` holds width*height*3 bytes.
std::string encode_ppm(int width, int height, const std::vector<std::uint8_t>& rgb);

}  // namespace redistrict::pnm
