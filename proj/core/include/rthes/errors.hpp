#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rthes {

// Base of every exception thrown by the library. `code()` is a stable
// machine-readable identifier that the HTTP layer forwards to clients.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t cells, std::size_t cap)
      : Error("cap_exceeded",
              "relation has " + std::to_string(cells) +
                  " cells, enumeration cap is " + std::to_string(cap)),
        cap_(cap) {}

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class InvalidRectangle : public Error {
 public:
  explicit InvalidRectangle(const std::string& message)
      : Error("invalid_rectangle", message) {}
};

class ElementNotInRelation : public Error {
 public:
  ElementNotInRelation() : Error("element_not_in_relation", "element is not a pair of the relation") {}
};

// Malformed input text. `line()` is 1-based; 0 when no position is known.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message)
      : Error("parse_error", (source.empty() ? std::string() : source + ":") +
                                 (line ? std::to_string(line) + ": " : std::string()) + message),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class VersionMismatch : public Error {
 public:
  VersionMismatch(int found, int expected)
      : Error("version_mismatch", "file version " + std::to_string(found) +
                                      " is not supported (expected " +
                                      std::to_string(expected) + ")") {}
};

class UnknownNode : public Error {
 public:
  explicit UnknownNode(std::uint32_t id)
      : Error("unknown_node", "no thesaurus node with id " + std::to_string(id)) {}
};

class LexiconError : public Error {
 public:
  using Error::Error;
};

class SessionError : public Error {
 public:
  using Error::Error;
};

class EmptyQuery : public Error {
 public:
  EmptyQuery() : Error("empty_query", "query resolves to no concept") {}
};

}  // namespace rthes
