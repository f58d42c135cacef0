#include "rthes/text.hpp"

namespace rthes {
namespace {

constexpr char32_t kInvalid = 0xFFFD;

// Decodes one code point starting at `i` and advances `i` past it.
char32_t decode(std::string_view s, std::size_t& i) {
  const auto lead = static_cast<unsigned char>(s[i]);
  std::size_t len = 1;
  char32_t cp = lead;
  if (lead >= 0xF0 && lead < 0xF8) {
    len = 4;
    cp = lead & 0x07;
  } else if (lead >= 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if (lead >= 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if (lead >= 0x80) {
    ++i;
    return kInvalid;
  }
  if (i + len > s.size()) {
    i = s.size();
    return kInvalid;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const auto c = static_cast<unsigned char>(s[i + k]);
    if ((c & 0xC0) != 0x80) {
      i += k;
      return kInvalid;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  i += len;
  return cp;
}

void encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_alnum(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  if (cp == kInvalid || cp < 0xC0 || cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
  return true;
}

bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v' || cp == 0xA0;
}

bool ends_phrase(char32_t cp) { return cp == '.' || cp == '!' || cp == '?'; }

}  // namespace

std::string fold_case(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t start = i;
    char32_t cp = decode(text, i);
    if (cp == kInvalid) {
      out.append(text.substr(start, i - start));
      continue;
    }
    if (cp >= 'A' && cp <= 'Z') cp += 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) cp += 0x20;
    encode(cp, out);
  }
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::uint32_t phrase = 1;
  std::uint32_t position = 0;
  std::string current;
  std::size_t current_offset = 0;
  bool current_has_alnum = false;

  auto flush = [&] {
    if (!current.empty() && current_has_alnum) out.push_back({current, phrase, ++position, current_offset});
    current.clear();
    current_has_alnum = false;
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t start = i;
    const char32_t cp = decode(text, i);
    if (is_alnum(cp) || cp == '-') {
      if (current.empty()) current_offset = start;
      current.append(text.substr(start, i - start));
      current_has_alnum = current_has_alnum || cp != '-';
      continue;
    }
    flush();
    if (ends_phrase(cp)) {
      std::size_t next = i;
      const bool boundary = next >= text.size() || is_space(decode(text, next));
      if (boundary && position > 0) {
        ++phrase;
        position = 0;
      }
    }
  }
  flush();
  return out;
}

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  for (auto& token : tokenize(text)) out.push_back(std::move(token.text));
  return out;
}

}  // namespace rthes
