#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "core/binary_image.hpp"

namespace scriptid {

struct LineBand {
  int y_top = 0;
  int y_bottom = 0;  // inclusive

  double y_mid() const noexcept { return (y_top + y_bottom) / 2.0; }
  int height() const noexcept { return y_bottom - y_top + 1; }

  friend bool operator==(const LineBand&, const LineBand&) = default;
};

struct BoundingBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct Blob {
  BoundingBox bbox;
  std::size_t area = 0;  // foreground pixels in the component
  std::size_t line_index = 0;

  int height() const noexcept { return bbox.y_max - bbox.y_min + 1; }
  double x_center() const noexcept { return (bbox.x_min + bbox.x_max) / 2.0; }
  double y_center() const noexcept { return (bbox.y_min + bbox.y_max) / 2.0; }
};

struct SegmentParams {
  int min_gap = 1;
  std::size_t min_blob_area = 4;
};

struct Segmentation {
  std::vector<LineBand> bands;
  std::vector<Blob> blobs;  // reading order
};

std::vector<std::size_t> horizontal_projection(const BinaryImage& img);

// Bands are maximal runs of inked rows; zero gaps shorter than min_gap rows are
// bridged. Throws EmptyDocument on an all-zero profile.
std::vector<LineBand> segment_lines(std::span<const std::size_t> profile, int min_gap = 1);

// One blob per 8-connected component with area >= min_blob_area, assigned to the
// band containing its vertical center (nearest band midpoint otherwise) and
// sorted top-to-bottom by band, then left-to-right.
std::vector<Blob> extract_blobs(const BinaryImage& img, std::span<const LineBand> bands,
                                std::size_t min_blob_area = 4);

// Per-pixel component labels (0 = background, 1.. = components in scan order).
std::vector<int> label_components(const BinaryImage& img, int* component_count = nullptr);

Segmentation segment(const BinaryImage& img, const SegmentParams& params = {});

}  // namespace scriptid
