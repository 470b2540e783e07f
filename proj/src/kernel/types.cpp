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


#include "sessionkv/kernel/types.hpp"

#include <string>

#include "sessionkv/kernel/error.hpp"

namespace sessionkv {

std::string to_string(Key k) { return "k" + std::to_string(k.value); }
std::string to_string(Value v) { return std::to_string(v.value); }
std::string to_string(ClientId c) { return "c" + std::to_string(c.value); }
std::string to_string(ReplicaId r) { return "r" + std::to_string(r.value); }

namespace detail {

void contract_failure(const char* expr, const char* file, int line, const std::string& msg) {
  throw ContractViolation(std::string(file) + ":" + std::to_string(line) + ": contract `" + expr +
                          "` failed: " + msg);
}

}  // namespace detail
}  // namespace sessionkv
