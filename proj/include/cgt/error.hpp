#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cgt {

enum class ErrorKind {
  invalid_argument,
  precondition_violation,
  resource_limit,
  unsupported,
  syntax,
  not_antisymmetric,
  loop,
};

const char *error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
public:
  SyntaxError(std::size_t offset, const std::string &what)
      : Error(ErrorKind::syntax, what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what) {
  throw Error(kind, what);
}

} // namespace cgt
