// Copyright 2026 The sessionkv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sessionkv {

/// Caller-supplied input was rejected (bad application, unknown name, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bounded computation ran out of its configured budget.
class ResourceExhausted : public std::runtime_error {
 public:
  ResourceExhausted(const std::string& what, std::size_t frontier_size)
      : std::runtime_error(what), frontier_size_(frontier_size) {}

  [[nodiscard]] std::size_t frontier_size() const { return frontier_size_; }

 private:
  std::size_t frontier_size_;
};

/// File or socket failure. The message names the path or endpoint.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition the caller was obliged to establish did not hold. This is a
/// programming error, never a recoverable condition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {
[[noreturn]] void contract_failure(const char* expr, const char* file, int line, const std::string& msg);
}  // namespace detail

}  // namespace sessionkv

#define SESSIONKV_EXPECTS(cond, msg)                                                     \
  do {                                                                                   \
    if (!(cond)) ::sessionkv::detail::contract_failure(#cond, __FILE__, __LINE__, (msg)); \
  } while (false)
