#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "core/coded_sequence.hpp"

namespace scriptid {

// Counts of maximal runs by (gray level, run length). Gray level g lives in
// row g, i.e. the 1-based row index used by the emphasis weights is g + 1.
class RunLengthMatrix {
 public:
  RunLengthMatrix(int levels, int max_run_length);

  int levels() const noexcept { return levels_; }
  int max_run_length() const noexcept { return max_run_; }

  // level in [0, levels), run_length in [1, max_run_length]
  std::size_t count(int level, int run_length) const {
    return counts_[index(level, run_length)];
  }
  void add_run(int level, int run_length) { ++counts_[index(level, run_length)]; }

  std::size_t run_count() const noexcept { return n_runs_; }
  std::size_t pixel_count() const noexcept { return n_pixels_; }
  void set_totals(std::size_t runs, std::size_t pixels) {
    n_runs_ = runs;
    n_pixels_ = pixels;
  }

 private:
  std::size_t index(int level, int run_length) const;

  int levels_;
  int max_run_;
  std::vector<std::size_t> counts_;
  std::size_t n_runs_ = 0;
  std::size_t n_pixels_ = 0;
};

struct RunLengthFeatures {
  double sre = 0, lre = 0, gln = 0, rln = 0, rp = 0;
  double lgre = 0, hgre = 0;
  double srlge = 0, srhge = 0, lrlge = 0, lrhge = 0;

  std::array<double, 11> as_array() const {
    return {sre, lre, gln, rln, rp, lgre, hgre, srlge, srhge, lrlge, lrhge};
  }
};

inline constexpr std::size_t kRunLengthFeatureCount = 11;
inline constexpr std::size_t kAlbpBins = 16;
inline constexpr std::size_t kFeatureCount = kRunLengthFeatureCount + kAlbpBins;

inline constexpr std::array<std::string_view, kRunLengthFeatureCount> kRunLengthFeatureNames = {
    "sre", "lre", "gln", "rln", "rp", "lgre", "hgre", "srlge", "srhge", "lrlge", "lrhge"};

enum class AlbpMode { kNormalized, kCounts };

struct AlbpHistogram {
  std::array<double, kAlbpBins> bins{};
  std::size_t valid_positions = 0;
};

using FeatureVector = std::array<double, kFeatureCount>;

RunLengthMatrix run_length_matrix(const CodedSequence& seq);
RunLengthFeatures run_length_features(const RunLengthMatrix& rlm);

// Two-neighbour LBP at an interior position: left neighbour is bit 0, right is bit 1.
int lbp_1d(const CodedSequence& seq, std::size_t pos);

// Labels lbp(pos) + 4 * lbp(pos + 1) over all n - 3 adjacent interior pairs.
// Sequences shorter than 4 give an all-zero histogram with no valid positions.
AlbpHistogram albp_histogram(const CodedSequence& seq, AlbpMode mode = AlbpMode::kNormalized);

// [11 run-length statistics, 16 ALBP bins].
FeatureVector feature_vector(const CodedSequence& seq, AlbpMode mode = AlbpMode::kNormalized);

// Too short for any ALBP pair.
inline bool is_degenerate(const CodedSequence& seq) { return seq.size() < 4; }

}  // namespace scriptid
