#pragma once

#include <span>
#include <vector>

#include "core/coded_sequence.hpp"
#include "core/textline_segmenter.hpp"

namespace scriptid {

// Height cut points: h <= low is small, low < h <= high is medium, h > high is tall.
struct HeightThresholds {
  double low = 0.0;
  double high = 0.0;
  bool degenerate = false;  // no height contrast; everything counts as small
};

struct MapperParams {
  double flat_tolerance = 0.1;
  // Center-point tolerance as a fraction of the band height.
  double eps_fraction = 0.05;
};

// 1-D 3-means over blob heights, seeded at (min, median, max); thresholds are
// the midpoints between adjacent centroids.
HeightThresholds height_thresholds(std::span<const int> heights, double flat_tolerance = 0.1);

ScriptType classify_blob(const Blob& blob, const LineBand& band, const HeightThresholds& th,
                         double eps);

// Codes in the given (reading) order; lines are concatenated with no separator.
CodedSequence encode_document(std::span<const ScriptType> codes);

// Thresholds are computed per document over all retained blobs.
std::vector<ScriptType> classify_document(const Segmentation& seg, const MapperParams& params = {});

CodedSequence encode_segmentation(const Segmentation& seg, const MapperParams& params = {});

}  // namespace scriptid
