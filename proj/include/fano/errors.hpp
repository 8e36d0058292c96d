#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fano {

// Domain error carrying a stable machine-readable code (e.g. "NotOnX").
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Malformed textual input (polynomial files, line literals, field names).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error("ParseError", message) {}
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
  throw Error(std::move(code), message);
}

}  // namespace fano
