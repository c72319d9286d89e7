#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace scriptid {

enum class InkPolarity { kDark, kLight };

// Row-major binary raster, 1 = ink. Origin top-left, y grows downward.
class BinaryImage {
 public:
  BinaryImage(int width, int height);
  BinaryImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
  void set(int x, int y, bool ink) { pixels_[index(x, y)] = ink ? 1 : 0; }

  std::span<const std::uint8_t> row(int y) const {
    return {pixels_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }
  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

  std::size_t ink_count() const;

  // Adds background margins on each side.
  BinaryImage padded(int left, int top, int right, int bottom) const;
  // Nearest-neighbour upscaling by an integer factor.
  BinaryImage scaled(int factor) const;

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

// Converts 8-bit gray samples to ink/background. Values >= 128 are background
// for dark ink; the scale is inverted first for light ink. Rejects inputs with
// more than two distinct gray levels.
BinaryImage binarize_gray(int width, int height, std::span<const std::uint8_t> gray,
                          InkPolarity ink);

// Reads PGM (P2/P5) or PNG, detected from the file signature.
BinaryImage load_image(const std::filesystem::path& path, InkPolarity ink);

// Writes binary P5 with ink as 0 (dark ink on light ground).
void save_pgm(const BinaryImage& img, const std::filesystem::path& path);

}  // namespace scriptid
