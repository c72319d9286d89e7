#include "core/typographic_mapper.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "core/error.hpp"

namespace scriptid {

HeightThresholds height_thresholds(std::span<const int> heights, double flat_tolerance) {
  if (heights.empty()) fail(ErrorCode::kInvalidArgument, "no blob heights");
  std::vector<double> sorted(heights.begin(), heights.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  if (hi <= 0.0) fail(ErrorCode::kInvalidArgument, "blob heights must be positive");

  if ((hi - lo) / hi < flat_tolerance) return {hi, hi, true};

  double mid_seed = sorted[(sorted.size() - 1) / 2];
  // A median equal to an end seed would leave two coincident centroids.
  if (mid_seed == lo || mid_seed == hi) mid_seed = (lo + hi) / 2.0;
  std::array<double, 3> centroid = {lo, mid_seed, hi};
  std::vector<int> member(sorted.size(), -1);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      int best = 0;
      for (int c = 1; c < 3; ++c) {
        if (std::abs(sorted[i] - centroid[c]) < std::abs(sorted[i] - centroid[best])) best = c;
      }
      if (member[i] != best) {
        member[i] = best;
        changed = true;
      }
    }
    if (!changed) break;
    std::array<double, 3> sum{};
    std::array<std::size_t, 3> count{};
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      sum[member[i]] += sorted[i];
      ++count[member[i]];
    }
    // an emptied cluster keeps its previous centroid
    for (int c = 0; c < 3; ++c) {
      if (count[c] > 0) centroid[c] = sum[c] / static_cast<double>(count[c]);
    }
  }
  std::sort(centroid.begin(), centroid.end());
  return {(centroid[0] + centroid[1]) / 2.0, (centroid[1] + centroid[2]) / 2.0, false};
}

ScriptType classify_blob(const Blob& blob, const LineBand& band, const HeightThresholds& th,
                         double eps) {
  const double h = blob.height();
  if (h > th.high) return ScriptType::kFull;
  if (h <= th.low) return ScriptType::kBase;
  const double yc = blob.y_center();
  const double mid = band.y_mid();
  if (yc > mid + eps) return ScriptType::kDescender;
  return ScriptType::kAscender;
}

CodedSequence encode_document(std::span<const ScriptType> codes) {
  if (codes.empty()) fail(ErrorCode::kEmptyDocument, "document has no classified blobs");
  std::vector<std::uint8_t> symbols;
  symbols.reserve(codes.size());
  for (auto c : codes) symbols.push_back(static_cast<std::uint8_t>(c));
  return CodedSequence(std::move(symbols));
}

std::vector<ScriptType> classify_document(const Segmentation& seg, const MapperParams& params) {
  if (seg.blobs.empty()) fail(ErrorCode::kEmptyDocument, "document has no blobs");
  std::vector<int> heights;
  heights.reserve(seg.blobs.size());
  for (const auto& b : seg.blobs) heights.push_back(b.height());
  const auto th = height_thresholds(heights, params.flat_tolerance);

  std::vector<ScriptType> codes;
  codes.reserve(seg.blobs.size());
  for (const auto& b : seg.blobs) {
    const LineBand& band = seg.bands.at(b.line_index);
    codes.push_back(classify_blob(b, band, th, params.eps_fraction * band.height()));
  }
  return codes;
}

CodedSequence encode_segmentation(const Segmentation& seg, const MapperParams& params) {
  return encode_document(classify_document(seg, params));
}

}  // namespace scriptid
