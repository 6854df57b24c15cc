#include "guiact/text_f1.h"

#include <map>

namespace guiact {
namespace {

bool IsAsciiSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool HasWhitespace(std::string_view s) {
  for (unsigned char c : s) {
    if (IsAsciiSpace(c)) return true;
  }
  return false;
}

bool HasNonAscii(std::string_view s) {
  for (unsigned char c : s) {
    if (c >= 0x80) return true;
  }
  return false;
}

// Length of the UTF-8 sequence starting with `lead`; malformed bytes count as
// single-byte tokens.
size_t Utf8Length(std::string_view s, size_t i) {
  const auto lead = static_cast<unsigned char>(s[i]);
  size_t len = 1;
  if ((lead & 0xE0) == 0xC0) {
    len = 2;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
  }
  if (i + len > s.size()) return 1;
  for (size_t k = 1; k < len; ++k) {
    if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 1;
  }
  return len;
}

}  // namespace

std::vector<std::string> WhitespaceTokens(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsAsciiSpace(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !IsAsciiSpace(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string> CodepointTokens(std::string_view text) {
  std::vector<std::string> tokens;
  for (size_t i = 0; i < text.size();) {
    size_t len = Utf8Length(text, i);
    if (!(len == 1 && IsAsciiSpace(text[i]))) {
      tokens.emplace_back(text.substr(i, len));
    }
    i += len;
  }
  return tokens;
}

double TextF1(std::string_view predicted, std::string_view reference) {
  auto per_char = [](std::string_view s) {
    return !HasWhitespace(s) && HasNonAscii(s);
  };
  const bool by_char = per_char(predicted) || per_char(reference);
  auto tokenize = by_char ? CodepointTokens : WhitespaceTokens;
  const auto pred = tokenize(predicted);
  const auto ref = tokenize(reference);

  if (pred.empty() && ref.empty()) return 1.0;
  if (pred.empty() || ref.empty()) return 0.0;

  std::map<std::string, long> counts;
  for (const auto& t : ref) ++counts[t];
  long overlap = 0;
  for (const auto& t : pred) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (overlap == 0) return 0.0;
  const double precision = static_cast<double>(overlap) / pred.size();
  const double recall = static_cast<double>(overlap) / ref.size();
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace guiact
