#include "core/binary_image.hpp"

#include <png.h>

#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "core/error.hpp"

namespace scriptid {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    fail(ErrorCode::kInvalidArgument,
         "image dimensions must be positive, got " + std::to_string(width) + "x" +
             std::to_string(height));
  }
}

class PgmReader {
 public:
  explicit PgmReader(std::string bytes) : bytes_(std::move(bytes)) {}

  // Next whitespace-delimited header token, skipping '#' comments.
  long next_int() {
    skip_space_and_comments();
    std::size_t start = pos_;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail(ErrorCode::kParse, "malformed PGM header");
    return std::stol(bytes_.substr(start, pos_ - start));
  }

  std::string_view rest_after_single_space() {
    if (pos_ >= bytes_.size()) fail(ErrorCode::kParse, "truncated PGM");
    ++pos_;
    return std::string_view(bytes_).substr(pos_);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string bytes_;
  std::size_t pos_ = 2;
};

std::uint8_t to_8bit(long v, long maxval) {
  return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
}

BinaryImage load_pgm(const std::string& bytes, InkPolarity ink) {
  const bool ascii = bytes[1] == '2';
  PgmReader reader(bytes);
  const long width = reader.next_int();
  const long height = reader.next_int();
  const long maxval = reader.next_int();
  if (maxval < 1 || maxval > 65535) fail(ErrorCode::kParse, "PGM maxval out of range");
  check_dims(static_cast<int>(width), static_cast<int>(height));
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);

  std::vector<std::uint8_t> gray(count);
  if (ascii) {
    std::string_view body = reader.rest_after_single_space();
    std::size_t pos = 0;
    for (std::size_t i = 0; i < count; ++i) {
      while (pos < body.size() && !std::isdigit(static_cast<unsigned char>(body[pos]))) {
        if (body[pos] == '#') {
          while (pos < body.size() && body[pos] != '\n') ++pos;
        } else {
          ++pos;
        }
      }
      std::size_t start = pos;
      while (pos < body.size() && std::isdigit(static_cast<unsigned char>(body[pos]))) ++pos;
      if (start == pos) fail(ErrorCode::kParse, "truncated P2 pixel data");
      long v = std::stol(std::string(body.substr(start, pos - start)));
      if (v > maxval) fail(ErrorCode::kParse, "P2 sample exceeds maxval");
      gray[i] = to_8bit(v, maxval);
    }
  } else {
    std::string_view body = reader.rest_after_single_space();
    const std::size_t bps = maxval > 255 ? 2 : 1;
    if (body.size() < count * bps) fail(ErrorCode::kParse, "truncated P5 pixel data");
    for (std::size_t i = 0; i < count; ++i) {
      long v = static_cast<unsigned char>(body[i * bps]);
      if (bps == 2) v = (v << 8) | static_cast<unsigned char>(body[i * bps + 1]);
      gray[i] = to_8bit(v, maxval);
    }
  }
  return binarize_gray(static_cast<int>(width), static_cast<int>(height), gray, ink);
}

BinaryImage load_png(const std::string& bytes, InkPolarity ink) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    fail(ErrorCode::kParse, std::string("PNG decode failed: ") + image.message);
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> gray(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, gray.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    fail(ErrorCode::kParse, "PNG decode failed: " + msg);
  }
  return binarize_gray(static_cast<int>(image.width), static_cast<int>(image.height), gray,
                       ink);
}

}  // namespace

BinaryImage::BinaryImage(int width, int height)
    : width_(width), height_(height) {
  check_dims(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * height, 0);
}

BinaryImage::BinaryImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    fail(ErrorCode::kInvalidArgument, "pixel buffer size does not match dimensions");
  }
  for (auto p : pixels_) {
    if (p > 1) fail(ErrorCode::kInvalidArgument, "binary image pixels must be 0 or 1");
  }
}

std::size_t BinaryImage::ink_count() const {
  std::size_t n = 0;
  for (auto p : pixels_) n += p;
  return n;
}

BinaryImage BinaryImage::padded(int left, int top, int right, int bottom) const {
  BinaryImage out(width_ + left + right, height_ + top + bottom);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      out.set(x + left, y + top, at(x, y) != 0);
    }
  }
  return out;
}

BinaryImage BinaryImage::scaled(int factor) const {
  if (factor < 1) fail(ErrorCode::kInvalidArgument, "scale factor must be >= 1");
  BinaryImage out(width_ * factor, height_ * factor);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      out.set(x, y, at(x / factor, y / factor) != 0);
    }
  }
  return out;
}

BinaryImage binarize_gray(int width, int height, std::span<const std::uint8_t> gray,
                          InkPolarity ink) {
  check_dims(width, height);
  std::array<bool, 256> seen{};
  int distinct = 0;
  std::vector<std::uint8_t> bits(gray.size());
  for (std::size_t i = 0; i < gray.size(); ++i) {
    std::uint8_t v = gray[i];
    if (!seen[v]) {
      seen[v] = true;
      if (++distinct > 2) {
        fail(ErrorCode::kParse,
             "image has more than two gray levels; binarize it before segmentation");
      }
    }
    if (ink == InkPolarity::kLight) v = static_cast<std::uint8_t>(255 - v);
    bits[i] = v >= 128 ? 0 : 1;
  }
  return BinaryImage(width, height, std::move(bits));
}

BinaryImage load_image(const std::filesystem::path& path, InkPolarity ink) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open image " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() >= 8 && png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) == 0) {
    return load_png(bytes, ink);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5')) {
    return load_pgm(bytes, ink);
  }
  fail(ErrorCode::kParse, "unsupported image format: " + path.string());
}

void save_pgm(const BinaryImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  for (auto p : img.pixels()) out.put(p ? static_cast<char>(0) : static_cast<char>(255));
  if (!out) fail(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace scriptid
