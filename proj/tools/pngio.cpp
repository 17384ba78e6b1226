#include "pngio.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include "minvset/errors.hpp"

namespace minvset::tool {
namespace {

uint32_t crc32(const uint8_t* data, std::size_t len, uint32_t crc = 0xffffffffu) {
  static const auto table = [] {
    std::array<uint32_t, 256> t{};
    for (uint32_t n = 0; n < 256; ++n) {
      uint32_t c = n;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
      t[n] = c;
    }
    return t;
  }();
  for (std::size_t i = 0; i < len; ++i) crc = table[(crc ^ data[i]) & 0xffu] ^ (crc >> 8);
  return crc;
}

uint32_t adler32(const std::vector<uint8_t>& data) {
  uint32_t a = 1, b = 0;
  for (uint8_t byte : data) {
    a = (a + byte) % 65521u;
    b = (b + a) % 65521u;
  }
  return (b << 16) | a;
}

void push_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

void push_chunk(std::vector<uint8_t>& out, const char type[4], const std::vector<uint8_t>& data) {
  push_u32(out, static_cast<uint32_t>(data.size()));
  const std::size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  push_u32(out, crc32(out.data() + crc_start, out.size() - crc_start) ^ 0xffffffffu);
}

// zlib stream made of stored deflate blocks: deterministic by construction.
std::vector<uint8_t> zlib_stored(const std::vector<uint8_t>& raw) {
  std::vector<uint8_t> out{0x78, 0x01};
  std::size_t off = 0;
  do {
    const std::size_t len = std::min<std::size_t>(65535, raw.size() - off);
    const bool final = off + len == raw.size();
    out.push_back(final ? 1 : 0);
    out.push_back(static_cast<uint8_t>(len & 0xff));
    out.push_back(static_cast<uint8_t>(len >> 8));
    out.push_back(static_cast<uint8_t>(~len & 0xff));
    out.push_back(static_cast<uint8_t>((~len >> 8) & 0xff));
    out.insert(out.end(), raw.begin() + off, raw.begin() + off + len);
    off += len;
  } while (off < raw.size());
  push_u32(out, adler32(raw));
  return out;
}

}  // namespace

std::vector<uint8_t> render_png(const PointCloud& cloud, int width, int height) {
  if (width < 1 || height < 1) throw DomainError("render_png: canvas must be positive");

  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  if (!cloud.empty()) {
    xmin = xmax = cloud.points[0].real();
    ymin = ymax = cloud.points[0].imag();
    for (const Complex& p : cloud.points) {
      xmin = std::min(xmin, p.real());
      xmax = std::max(xmax, p.real());
      ymin = std::min(ymin, p.imag());
      ymax = std::max(ymax, p.imag());
    }
  }
  double wx = xmax - xmin, wy = ymax - ymin;
  if (wx <= 0.0) wx = std::max(wy, 1e-9);
  if (wy <= 0.0) wy = std::max(wx, 1e-9);
  xmin -= 0.05 * wx;
  xmax += 0.05 * wx;
  ymin -= 0.05 * wy;
  ymax += 0.05 * wy;

  std::vector<uint8_t> pixels(static_cast<std::size_t>(width) * height, 0);
  auto plot = [&](int px, int py) {
    if (px < 0 || px >= width || py < 0 || py >= height) return;
    pixels[static_cast<std::size_t>(py) * width + px] = 255;
  };
  for (const Complex& p : cloud.points) {
    const int px = static_cast<int>(
        std::lround((p.real() - xmin) / (xmax - xmin) * (width - 1)));
    const int py = height - 1 - static_cast<int>(std::lround(
                                    (p.imag() - ymin) / (ymax - ymin) * (height - 1)));
    plot(px, py);
  }

  // 1-pixel dilation (8-neighborhood).
  std::vector<uint8_t> dilated(pixels);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (!pixels[static_cast<std::size_t>(y) * width + x]) continue;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if (nx >= 0 && nx < width && ny >= 0 && ny < height)
            dilated[static_cast<std::size_t>(ny) * width + nx] = 255;
        }
    }
  }

  // Raw scanlines with filter byte 0.
  std::vector<uint8_t> raw;
  raw.reserve(static_cast<std::size_t>(height) * (width + 1));
  for (int y = 0; y < height; ++y) {
    raw.push_back(0);
    const uint8_t* row = dilated.data() + static_cast<std::size_t>(y) * width;
    raw.insert(raw.end(), row, row + width);
  }

  std::vector<uint8_t> png{0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
  std::vector<uint8_t> ihdr;
  push_u32(ihdr, static_cast<uint32_t>(width));
  push_u32(ihdr, static_cast<uint32_t>(height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(0);  // grayscale
  ihdr.push_back(0);  // deflate
  ihdr.push_back(0);  // adaptive filtering
  ihdr.push_back(0);  // no interlace
  push_chunk(png, "IHDR", ihdr);
  push_chunk(png, "IDAT", zlib_stored(raw));
  push_chunk(png, "IEND", {});
  return png;
}

void write_png(const std::string& path, const PointCloud& cloud, int width, int height) {
  const std::vector<uint8_t> png = render_png(cloud, width, height);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(png.data()), static_cast<std::streamsize>(png.size()));
}

}  // namespace minvset::tool
