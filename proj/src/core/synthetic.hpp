#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/binary_image.hpp"
#include "core/coded_sequence.hpp"

namespace scriptid {

// Stand-in for a script class: a categorical law over the four codes plus a
// persistence probability of repeating the previous symbol.
struct SyntheticProfile {
  std::string class_name;
  std::array<double, 4> code_probs{0.25, 0.25, 0.25, 0.25};
  double persistence = 0.0;  // [0, 1)
  int min_length = 60;
  int max_length = 90;
};

struct SyntheticDocument {
  std::string id;
  std::string class_name;
  CodedSequence sequence;
};

void validate_profile(const SyntheticProfile& profile);

// Documents are emitted profile by profile, in the order given.
std::vector<SyntheticDocument> generate_synthetic(std::span<const SyntheticProfile> profiles,
                                                  std::span<const int> counts, std::uint64_t seed);

// Three well-separated class profiles (cyrillic, angular, round).
std::vector<SyntheticProfile> separated_profiles();

// Componentwise blend: weight 0 gives `a`, weight 1 gives `b`; the class name is taken from `a`.
SyntheticProfile interpolate_profiles(const SyntheticProfile& a, const SyntheticProfile& b, double weight);

struct SyntheticDataset {
  std::vector<SyntheticDocument> documents;
  std::vector<std::string> class_names;
};

// "db1": 5/5/5 separated classes. "db2": db1 plus 5 transitional documents
// (half angular, half round) labelled angular and placed after the angular block.
SyntheticDataset preset_dataset(const std::string& preset, std::uint64_t seed);

// Draws each code as a solid glyph box inside a three-zone text line: base
// glyphs occupy the middle zone, ascenders the upper two, descenders the lower
// two and full glyphs all three.
BinaryImage render_lines(std::span<const std::vector<ScriptType>> lines);

}  // namespace scriptid
