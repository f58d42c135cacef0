#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rthes {

// Lower-cases ASCII and the Latin-1 letters (U+00C0..U+00DE); other code
// points pass through unchanged.
std::string fold_case(std::string_view text);

struct Token {
  std::string text;        // original spelling
  std::uint32_t phrase;    // 1-based within the document
  std::uint32_t position;  // 1-based within the phrase
  std::size_t offset;      // byte offset in the source text
};

// Splits UTF-8 text into phrases and tokens. A phrase ends at '.', '!' or
// '?' followed by whitespace or the end of the text. A token is a maximal run
// of letters, digits and hyphens holding at least one letter or digit;
// everything else separates tokens. Phrases without tokens are not numbered.
std::vector<Token> tokenize(std::string_view text);

// Token spellings only, ignoring phrase structure.
std::vector<std::string> words(std::string_view text);

}  // namespace rthes
