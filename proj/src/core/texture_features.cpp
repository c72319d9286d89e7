#include "core/texture_features.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace scriptid {

RunLengthMatrix::RunLengthMatrix(int levels, int max_run_length)
    : levels_(levels), max_run_(max_run_length) {
  if (levels < 1 || max_run_length < 1) {
    fail(ErrorCode::kInvalidArgument, "run-length matrix dimensions must be positive");
  }
  counts_.assign(static_cast<std::size_t>(levels) * max_run_length, 0);
}

std::size_t RunLengthMatrix::index(int level, int run_length) const {
  if (level < 0 || level >= levels_ || run_length < 1 || run_length > max_run_) {
    fail(ErrorCode::kOutOfRange, "run-length matrix index out of range");
  }
  return static_cast<std::size_t>(level) * max_run_ + (run_length - 1);
}

RunLengthMatrix run_length_matrix(const CodedSequence& seq) {
  if (seq.empty()) fail(ErrorCode::kEmptySequence, "cannot build a run-length matrix of an empty sequence");
  const auto s = seq.symbols();

  std::vector<std::pair<int, int>> runs;
  std::size_t i = 0;
  int longest = 0;
  while (i < s.size()) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    const int len = static_cast<int>(j - i);
    runs.emplace_back(s[i], len);
    longest = std::max(longest, len);
    i = j;
  }

  RunLengthMatrix rlm(kGrayLevels, longest);
  for (auto [level, len] : runs) rlm.add_run(level, len);
  rlm.set_totals(runs.size(), s.size());
  return rlm;
}

RunLengthFeatures run_length_features(const RunLengthMatrix& rlm) {
  if (rlm.run_count() == 0 || rlm.pixel_count() == 0) {
    fail(ErrorCode::kEmptySequence, "run-length matrix holds no runs");
  }
  const int m = rlm.levels();
  const int n = rlm.max_run_length();
  RunLengthFeatures f;

  std::vector<double> level_sums(static_cast<std::size_t>(m), 0.0);
  std::vector<double> length_sums(static_cast<std::size_t>(n), 0.0);
  for (int g = 0; g < m; ++g) {
    const double i2 = static_cast<double>(g + 1) * (g + 1);
    for (int len = 1; len <= n; ++len) {
      const double p = static_cast<double>(rlm.count(g, len));
      if (p == 0.0) continue;
      const double j2 = static_cast<double>(len) * len;
      f.sre += p / j2;
      f.lre += p * j2;
      f.lgre += p / i2;
      f.hgre += p * i2;
      f.srlge += p / (i2 * j2);
      f.srhge += p * i2 / j2;
      f.lrlge += p * j2 / i2;
      f.lrhge += p * i2 * j2;
      level_sums[static_cast<std::size_t>(g)] += p;
      length_sums[static_cast<std::size_t>(len - 1)] += p;
    }
  }
  for (double v : level_sums) f.gln += v * v;
  for (double v : length_sums) f.rln += v * v;

  const double nr = static_cast<double>(rlm.run_count());
  for (double* v : {&f.sre, &f.lre, &f.gln, &f.rln, &f.lgre, &f.hgre, &f.srlge, &f.srhge,
                    &f.lrlge, &f.lrhge}) {
    *v /= nr;
  }
  f.rp = nr / static_cast<double>(rlm.pixel_count());
  return f;
}

int lbp_1d(const CodedSequence& seq, std::size_t pos) {
  if (pos == 0 || pos + 1 >= seq.size()) {
    fail(ErrorCode::kOutOfRange, "LBP position " + std::to_string(pos) + " lacks a neighbour");
  }
  const int center = seq[pos];
  const int left = seq[pos - 1] - center >= 0 ? 1 : 0;
  const int right = seq[pos + 1] - center >= 0 ? 1 : 0;
  return left + 2 * right;
}

AlbpHistogram albp_histogram(const CodedSequence& seq, AlbpMode mode) {
  AlbpHistogram hist;
  if (seq.size() < 4) return hist;
  for (std::size_t pos = 1; pos + 2 < seq.size(); ++pos) {
    const int label = lbp_1d(seq, pos) + 4 * lbp_1d(seq, pos + 1);
    hist.bins[static_cast<std::size_t>(label)] += 1.0;
    ++hist.valid_positions;
  }
  if (mode == AlbpMode::kNormalized) {
    const double total = static_cast<double>(hist.valid_positions);
    for (auto& b : hist.bins) b /= total;
  }
  return hist;
}

FeatureVector feature_vector(const CodedSequence& seq, AlbpMode mode) {
  const auto rl = run_length_features(run_length_matrix(seq)).as_array();
  const auto albp = albp_histogram(seq, mode);
  FeatureVector v{};
  std::copy(rl.begin(), rl.end(), v.begin());
  std::copy(albp.bins.begin(), albp.bins.end(), v.begin() + kRunLengthFeatureCount);
  return v;
}

}  // namespace scriptid
