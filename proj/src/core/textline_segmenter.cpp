#include "core/textline_segmenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "core/error.hpp"

namespace scriptid {

std::vector<std::size_t> horizontal_projection(const BinaryImage& img) {
  std::vector<std::size_t> profile(static_cast<std::size_t>(img.height()), 0);
  for (int y = 0; y < img.height(); ++y) {
    for (auto p : img.row(y)) profile[static_cast<std::size_t>(y)] += p;
  }
  return profile;
}

std::vector<LineBand> segment_lines(std::span<const std::size_t> profile, int min_gap) {
  if (profile.empty()) fail(ErrorCode::kInvalidArgument, "projection profile is empty");
  if (min_gap < 1) fail(ErrorCode::kInvalidArgument, "min_gap must be >= 1");

  std::vector<LineBand> bands;
  const int rows = static_cast<int>(profile.size());
  int r = 0;
  while (r < rows) {
    if (profile[static_cast<std::size_t>(r)] == 0) {
      ++r;
      continue;
    }
    int start = r;
    while (r < rows && profile[static_cast<std::size_t>(r)] > 0) ++r;
    LineBand band{start, r - 1};
    if (!bands.empty() && band.y_top - bands.back().y_bottom - 1 < min_gap) {
      bands.back().y_bottom = band.y_bottom;
    } else {
      bands.push_back(band);
    }
  }
  if (bands.empty()) fail(ErrorCode::kEmptyDocument, "image contains no ink rows");
  return bands;
}

std::vector<int> label_components(const BinaryImage& img, int* component_count) {
  const int w = img.width();
  const int h = img.height();
  std::vector<int> labels(static_cast<std::size_t>(w) * h, 0);
  std::vector<std::pair<int, int>> stack;
  int next = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto idx = static_cast<std::size_t>(y) * w + x;
      if (!img.at(x, y) || labels[idx] != 0) continue;
      ++next;
      labels[idx] = next;
      stack.emplace_back(x, y);
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx;
            const int ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const auto nidx = static_cast<std::size_t>(ny) * w + nx;
            if (img.at(nx, ny) && labels[nidx] == 0) {
              labels[nidx] = next;
              stack.emplace_back(nx, ny);
            }
          }
        }
      }
    }
  }
  if (component_count) *component_count = next;
  return labels;
}

namespace {

std::size_t assign_band(double y_c, std::span<const LineBand> bands) {
  for (std::size_t i = 0; i < bands.size(); ++i) {
    if (y_c >= bands[i].y_top && y_c <= bands[i].y_bottom) return i;
  }
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < bands.size(); ++i) {
    double d = std::abs(y_c - bands[i].y_mid());
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::vector<Blob> extract_blobs(const BinaryImage& img, std::span<const LineBand> bands,
                                std::size_t min_blob_area) {
  if (bands.empty()) fail(ErrorCode::kInvalidArgument, "no line bands given");
  int count = 0;
  const auto labels = label_components(img, &count);

  std::vector<Blob> blobs(static_cast<std::size_t>(count));
  for (auto& b : blobs) {
    b.bbox = {std::numeric_limits<int>::max(), std::numeric_limits<int>::max(), -1, -1};
  }
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      int l = labels[static_cast<std::size_t>(y) * img.width() + x];
      if (l == 0) continue;
      Blob& b = blobs[static_cast<std::size_t>(l - 1)];
      b.bbox.x_min = std::min(b.bbox.x_min, x);
      b.bbox.y_min = std::min(b.bbox.y_min, y);
      b.bbox.x_max = std::max(b.bbox.x_max, x);
      b.bbox.y_max = std::max(b.bbox.y_max, y);
      ++b.area;
    }
  }

  std::erase_if(blobs, [&](const Blob& b) { return b.area < min_blob_area; });
  if (blobs.empty()) fail(ErrorCode::kEmptyDocument, "no foreground components survive the speckle filter");

  for (auto& b : blobs) b.line_index = assign_band(b.y_center(), bands);
  std::stable_sort(blobs.begin(), blobs.end(), [](const Blob& a, const Blob& b) {
    return std::tie(a.line_index, a.bbox.x_min, a.bbox.y_min) <
           std::tie(b.line_index, b.bbox.x_min, b.bbox.y_min);
  });
  return blobs;
}

Segmentation segment(const BinaryImage& img, const SegmentParams& params) {
  Segmentation seg;
  const auto profile = horizontal_projection(img);
  seg.bands = segment_lines(profile, params.min_gap);
  seg.blobs = extract_blobs(img, seg.bands, params.min_blob_area);
  return seg;
}

}  // namespace scriptid
