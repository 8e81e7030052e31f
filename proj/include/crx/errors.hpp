#pragma once

#include <stdexcept>
#include <string>

namespace crx {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CompositionError : Error {
  using Error::Error;
};

struct UnknownGenerator : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct TruncationError : Error {
  using Error::Error;
};

struct ResourceBound : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& file, std::size_t line, std::size_t column, const std::string& msg)
      : Error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

}  // namespace crx
