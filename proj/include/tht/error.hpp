// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace tht {

enum class ErrorKind {
  Structural,   // cells do not fit together (bad incidence, not a subgraph, ...)
  Input,        // malformed user input
  Unsupported,  // valid input outside the operation's domain
  Contract,     // caller violated a documented precondition
  Internal,     // an invariant of ours broke
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace tht
