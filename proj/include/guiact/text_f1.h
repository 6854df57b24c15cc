#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace guiact {

// Whitespace tokens, or per-codepoint unigrams when either side of a
// comparison is a single non-ASCII run (CJK input has no spaces).
std::vector<std::string> WhitespaceTokens(std::string_view text);
std::vector<std::string> CodepointTokens(std::string_view text);

// Multiset token F1. Two empty strings score 1, empty vs non-empty 0.
double TextF1(std::string_view predicted, std::string_view reference);

}  // namespace guiact
