#include "core/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "core/error.hpp"

namespace scriptid {

void validate_profile(const SyntheticProfile& profile) {
  double sum = 0.0;
  for (double p : profile.code_probs) {
    if (!(p >= 0.0)) fail(ErrorCode::kInvalidProfile, "profile '" + profile.class_name + "' has a negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    fail(ErrorCode::kInvalidProfile, "profile '" + profile.class_name + "' probabilities do not sum to 1");
  }
  if (!(profile.persistence >= 0.0 && profile.persistence < 1.0)) {
    fail(ErrorCode::kInvalidProfile, "profile '" + profile.class_name + "' persistence must lie in [0, 1)");
  }
  if (profile.min_length < 1 || profile.max_length < profile.min_length) {
    fail(ErrorCode::kInvalidProfile, "profile '" + profile.class_name + "' has an invalid length range");
  }
  if (profile.class_name.empty()) fail(ErrorCode::kInvalidProfile, "profile needs a class name");
}

std::vector<SyntheticDocument> generate_synthetic(std::span<const SyntheticProfile> profiles,
                                                  std::span<const int> counts, std::uint64_t seed) {
  if (profiles.empty()) fail(ErrorCode::kInvalidProfile, "at least one profile is required");
  if (profiles.size() != counts.size()) {
    fail(ErrorCode::kInvalidProfile, "one document count per profile is required");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SyntheticDocument> docs;
  for (std::size_t p = 0; p < profiles.size(); ++p) {
    const auto& prof = profiles[p];
    validate_profile(prof);
    if (counts[p] < 1) fail(ErrorCode::kInvalidProfile, "document counts must be >= 1");
    std::discrete_distribution<int> symbol(prof.code_probs.begin(), prof.code_probs.end());
    std::uniform_int_distribution<int> length(prof.min_length, prof.max_length);
    for (int d = 0; d < counts[p]; ++d) {
      const int len = length(rng);
      std::vector<std::uint8_t> codes;
      codes.reserve(static_cast<std::size_t>(len));
      for (int i = 0; i < len; ++i) {
        if (i > 0 && unit(rng) < prof.persistence) {
          codes.push_back(codes.back());
        } else {
          codes.push_back(static_cast<std::uint8_t>(symbol(rng)));
        }
      }
      char id[64];
      std::snprintf(id, sizeof id, "%s_%03d", prof.class_name.c_str(), d);
      docs.push_back({id, prof.class_name, CodedSequence(std::move(codes))});
    }
  }
  return docs;
}

std::vector<SyntheticProfile> separated_profiles() {
  return {
      {"cyrillic", {0.60, 0.15, 0.15, 0.10}, 0.05, 60, 90},
      {"angular", {0.10, 0.15, 0.15, 0.60}, 0.45, 60, 90},
      {"round", {0.20, 0.35, 0.35, 0.10}, 0.75, 60, 90},
  };
}

SyntheticProfile interpolate_profiles(const SyntheticProfile& a, const SyntheticProfile& b, double weight) {
  SyntheticProfile out = a;
  for (std::size_t i = 0; i < 4; ++i) out.code_probs[i] = (1.0 - weight) * a.code_probs[i] + weight * b.code_probs[i];
  out.persistence = (1.0 - weight) * a.persistence + weight * b.persistence;
  out.min_length = static_cast<int>(std::lround((1.0 - weight) * a.min_length + weight * b.min_length));
  out.max_length = static_cast<int>(std::lround((1.0 - weight) * a.max_length + weight * b.max_length));
  return out;
}

SyntheticDataset preset_dataset(const std::string& preset, std::uint64_t seed) {
  auto base = separated_profiles();
  SyntheticDataset ds;
  for (const auto& p : base) ds.class_names.push_back(p.class_name);
  if (preset == "db1") {
    const std::vector<int> counts{5, 5, 5};
    ds.documents = generate_synthetic(base, counts, seed);
    return ds;
  }
  if (preset == "db2") {
    SyntheticProfile transitional = interpolate_profiles(base[1], base[2], 0.5);
    const std::vector<SyntheticProfile> profiles{base[0], base[1], transitional, base[2]};
    const std::vector<int> counts{5, 5, 5, 5};
    ds.documents = generate_synthetic(profiles, counts, seed);
    // transitional documents share the angular class name; keep ids unique
    for (int i = 10; i < 15; ++i) {
      char id[64];
      std::snprintf(id, sizeof id, "angular_%03d", i - 5);
      ds.documents[static_cast<std::size_t>(i)].id = id;
    }
    return ds;
  }
  fail(ErrorCode::kConfig, "unknown synthetic preset '" + preset + "' (expected db1 or db2)");
}

namespace {

constexpr int kMargin = 4;
constexpr int kGlyphWidth = 6;
constexpr int kGlyphGap = 4;
constexpr int kZone = 10;
constexpr int kLineGap = 12;

}  // namespace

BinaryImage render_lines(std::span<const std::vector<ScriptType>> lines) {
  std::size_t widest = 1;
  for (const auto& l : lines) widest = std::max(widest, l.size());
  const int width = 2 * kMargin + static_cast<int>(widest) * (kGlyphWidth + kGlyphGap);
  const int line_count = std::max<int>(1, static_cast<int>(lines.size()));
  const int height = 2 * kMargin + line_count * 3 * kZone + (line_count - 1) * kLineGap;
  BinaryImage img(width, height);

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const int y0 = kMargin + static_cast<int>(li) * (3 * kZone + kLineGap);
    for (std::size_t gi = 0; gi < lines[li].size(); ++gi) {
      const int x0 = kMargin + static_cast<int>(gi) * (kGlyphWidth + kGlyphGap);
      int top = y0 + kZone;
      int bottom = y0 + 2 * kZone - 1;
      switch (lines[li][gi]) {
        case ScriptType::kBase: break;
        case ScriptType::kAscender: top = y0; break;
        case ScriptType::kDescender: bottom = y0 + 3 * kZone - 1; break;
        case ScriptType::kFull:
          top = y0;
          bottom = y0 + 3 * kZone - 1;
          break;
      }
      for (int y = top; y <= bottom; ++y) {
        for (int x = x0; x < x0 + kGlyphWidth; ++x) img.set(x, y, true);
      }
    }
  }
  return img;
}

}  // namespace scriptid
