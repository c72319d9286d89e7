#include "core/coded_sequence.hpp"

#include <cctype>
#include <fstream>
#include <iterator>

#include "core/error.hpp"

namespace scriptid {

CodedSequence::CodedSequence(std::vector<std::uint8_t> symbols)
    : symbols_(std::move(symbols)) {
  for (auto s : symbols_) {
    if (s >= kGrayLevels) {
      fail(ErrorCode::kInvalidArgument, "coded symbol out of range: " + std::to_string(s));
    }
  }
}

std::string CodedSequence::to_string() const {
  std::string out;
  out.reserve(symbols_.size());
  for (auto s : symbols_) out.push_back(static_cast<char>('0' + s));
  return out;
}

CodedSequence parse_coded_text(std::string_view text) {
  std::vector<std::uint8_t> symbols;
  symbols.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '3') {
      symbols.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      fail(ErrorCode::kParse, "invalid character in coded text at offset " + std::to_string(i));
    }
  }
  return CodedSequence(std::move(symbols));
}

CodedSequence load_coded_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_coded_text(text);
}

void save_coded_file(const CodedSequence& seq, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
  out << seq.to_string() << '\n';
  if (!out) fail(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace scriptid
