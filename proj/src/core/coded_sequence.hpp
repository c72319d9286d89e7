#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scriptid {

enum class ScriptType : std::uint8_t {
  kBase = 0,
  kAscender = 1,
  kDescender = 2,
  kFull = 3,
};

inline constexpr int kGrayLevels = 4;

// A document rewritten as script-type codes in reading order, treated as a
// 1-D image with four gray levels.
class CodedSequence {
 public:
  CodedSequence() = default;
  explicit CodedSequence(std::vector<std::uint8_t> symbols);

  std::span<const std::uint8_t> symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return symbols_[i]; }

  std::string to_string() const;

  friend bool operator==(const CodedSequence&, const CodedSequence&) = default;

 private:
  std::vector<std::uint8_t> symbols_;
};

// Digits '0'..'3'; whitespace ignored. Any other character is a parse error.
CodedSequence parse_coded_text(std::string_view text);
CodedSequence load_coded_file(const std::filesystem::path& path);
void save_coded_file(const CodedSequence& seq, const std::filesystem::path& path);

}  // namespace scriptid
