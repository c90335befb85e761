#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mepprove {

enum class ErrorKind {
  kBudgetExceeded,
  kIndeterminate,      // enclosure straddles zero at the tightest allowed precision
  kZeroPolynomial,
  kDegenerateInput,
  kPrecondition,
  kParse,
  kUnsupported,
  kMalformedCertificate,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax or grammar violation; `position` is a 0-based byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorKind::kParse, "at position " + std::to_string(position) + ": " + message),
        position_(position),
        message_(message) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

}  // namespace mepprove
