#include "hardattn/core/error.hpp"

namespace hardattn {

namespace {

std::string located(const std::string& message, int line, int column) {
  if (line <= 0) return message;
  std::string out = "line " + std::to_string(line);
  if (column > 0) out += ", column " + std::to_string(column);
  return out + ": " + message;
}

}  // namespace

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(located(message, line, column)), line_(line), column_(column) {}

}  // namespace hardattn
