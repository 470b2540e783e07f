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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sessionkv/protocols/cc_impl.hpp"
#include "sessionkv/protocols/cc_spec.hpp"
#include "sessionkv/protocols/labeling.hpp"
#include "sessionkv/protocols/mr.hpp"
#include "sessionkv/protocols/mutants.hpp"
#include "sessionkv/protocols/mw.hpp"
#include "sessionkv/protocols/relaxed.hpp"
#include "sessionkv/protocols/ryw.hpp"
#include "sessionkv/protocols/store.hpp"

namespace sessionkv {

enum class ProtocolName : std::uint8_t {
  kRelaxed,
  kRywSpec,
  kRywImpl,
  kMrSpec,
  kMrImpl,
  kMwSpec,
  kMwImpl,
  kRywMwImpl,
  kCcSpec,
  kCcImplVc,
  kCcImplLf,
  kLccSpec,
};

[[nodiscard]] const char* protocol_name(ProtocolName p);
/// Throws InvalidArgument naming the token.
[[nodiscard]] ProtocolName parse_protocol(const std::string& name);
/// Registry order.
[[nodiscard]] const std::vector<ProtocolName>& all_protocols();

enum class MutantKind : std::uint8_t {
  kRywImplGetGuardTrue,
  kMrImplGetGuardTrue,
  kMwImplPutGuardTrue,
  kCcImplVcPutGuardTrue,
};

[[nodiscard]] const std::vector<MutantKind>& all_mutants();
/// The unmutated protocol a mutant is derived from.
[[nodiscard]] ProtocolName mutant_base(MutantKind m);

/// A configured protocol instance of any shipped type.
class ProtocolDefinition {
 public:
  using Variant =
      std::variant<Relaxed, RywSpec, RywImpl, MrSpec, MrImpl, MwSpec, MwImpl, RywMwImpl, CcSpec, CcImplVc, CcImplLf,
                   LccSpec, GetGuardForcedTrue<RywImpl>, GetGuardForcedTrue<MrImpl>, PutGuardForcedTrue<MwImpl>,
                   PutGuardForcedTrue<CcImplVc>>;

  explicit ProtocolDefinition(Variant v) : v_(std::move(v)) {}

  [[nodiscard]] std::string name() const {
    return std::visit([](const auto& p) { return p.name(); }, v_);
  }
  [[nodiscard]] Domain domain() const {
    return std::visit([](const auto& p) { return p.domain(); }, v_);
  }
  [[nodiscard]] StoreKind store() const {
    return std::visit([](const auto& p) { return p.store(); }, v_);
  }

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), v_);
  }

 private:
  Variant v_;
};

/// Errors: labeling must be present iff `name` is lcc_spec.
[[nodiscard]] ProtocolDefinition make_protocol(ProtocolName name, StoreKind store, const Domain& domain,
                                               const std::optional<LabelingConfig>& labeling = std::nullopt);

/// Builds by registry name; lcc_spec gets `labeling` or, when absent, the
/// default labeling with two labels.
[[nodiscard]] ProtocolDefinition make_protocol_or_default(ProtocolName name, StoreKind store, const Domain& domain,
                                                          const std::optional<LabelingConfig>& labeling = std::nullopt);

[[nodiscard]] ProtocolDefinition make_mutant(MutantKind kind, StoreKind store, const Domain& domain);

}  // namespace sessionkv
