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


#include "sessionkv/protocols/store.hpp"

namespace sessionkv {

const char* store_name(StoreKind k) {
  switch (k) {
    case StoreKind::kChain:
      return "chain";
    case StoreKind::kAssoc:
      return "assoc";
    case StoreKind::kTree:
      return "tree";
  }
  return "?";
}

StoreKind parse_store(const std::string& name) {
  for (StoreKind k : all_stores()) {
    if (name == store_name(k)) return k;
  }
  throw InvalidArgument("unknown store `" + name + "` (expected chain, assoc or tree)");
}

const std::vector<StoreKind>& all_stores() {
  static const std::vector<StoreKind> kAll{StoreKind::kChain, StoreKind::kAssoc, StoreKind::kTree};
  return kAll;
}

}  // namespace sessionkv
