#include "redistrict/pnm.hpp"

#include <cctype>
#include <cstddef>

#include "redistrict/error.hpp"

namespace redistrict::pnm {
namespace {

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  long read_int(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      throw Error(ErrorCode::MalformedImage, std::string("expected ") + what);
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) throw Error(ErrorCode::MalformedImage, std::string(what) + " too large");
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates the header from binary raster data.
  void skip_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw Error(ErrorCode::MalformedImage, "missing separator before raster");
    }
    ++pos_;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::uint8_t byte() { return static_cast<std::uint8_t>(bytes_[pos_++]); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image decode(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw Error(ErrorCode::MalformedImage, "missing magic number");
  const char kind = bytes[1];
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
    throw Error(ErrorCode::MalformedImage, std::string("unsupported format P") + kind);
  }
  const bool binary = kind == '5' || kind == '6';
  Reader in(bytes.substr(2));

  Image img;
  img.channels = (kind == '3' || kind == '6') ? 3 : 1;
  const long width = in.read_int("width");
  const long height = in.read_int("height");
  const long maxval = in.read_int("maxval");
  if (width < 1 || height < 1) throw Error(ErrorCode::MalformedImage, "zero image dimension");
  if (maxval < 1 || maxval > 65535) throw Error(ErrorCode::MalformedImage, "maxval out of range");
  if (width * height > 100'000'000L) throw Error(ErrorCode::MalformedImage, "image too large");
  img.width = static_cast<int>(width);
  img.height = static_cast<int>(height);
  img.maxval = static_cast<int>(maxval);

  const std::size_t count = static_cast<std::size_t>(width * height) * img.channels;
  img.samples.reserve(count);
  if (binary) {
    in.skip_single_space();
    const std::size_t bytesPerSample = maxval > 255 ? 2 : 1;
    if (in.remaining() < count * bytesPerSample) throw Error(ErrorCode::MalformedImage, "truncated raster");
    for (std::size_t i = 0; i < count; ++i) {
      std::uint16_t v = in.byte();
      if (bytesPerSample == 2) v = static_cast<std::uint16_t>((v << 8) | in.byte());
      if (v > maxval) throw Error(ErrorCode::MalformedImage, "sample exceeds maxval");
      img.samples.push_back(v);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const long v = in.read_int("sample");
      if (v > maxval) throw Error(ErrorCode::MalformedImage, "sample exceeds maxval");
      img.samples.push_back(static_cast<std::uint16_t>(v));
    }
  }
  return img;
}

std::string encode_ppm(int width, int height, const std::vector<std::uint8_t>& rgb) {
  std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
  return out;
}

}  // namespace redistrict::pnm
