#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace periodlab {

/// A mathematically well-formed request outside the supported domain
/// (divergent symbol, argument outside the series domain, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input text. `position` is a 0-based byte offset into the source.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace periodlab
