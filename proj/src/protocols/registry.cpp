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


#include "sessionkv/protocols/registry.hpp"

#include <string>

#include "sessionkv/kernel/error.hpp"

namespace sessionkv {

const char* protocol_name(ProtocolName p) {
  switch (p) {
    case ProtocolName::kRelaxed:
      return "relaxed";
    case ProtocolName::kRywSpec:
      return "ryw_spec";
    case ProtocolName::kRywImpl:
      return "ryw_impl";
    case ProtocolName::kMrSpec:
      return "mr_spec";
    case ProtocolName::kMrImpl:
      return "mr_impl";
    case ProtocolName::kMwSpec:
      return "mw_spec";
    case ProtocolName::kMwImpl:
      return "mw_impl";
    case ProtocolName::kRywMwImpl:
      return "ryw_mw_impl";
    case ProtocolName::kCcSpec:
      return "cc_spec";
    case ProtocolName::kCcImplVc:
      return "cc_impl_vc";
    case ProtocolName::kCcImplLf:
      return "cc_impl_lf";
    case ProtocolName::kLccSpec:
      return "lcc_spec";
  }
  return "?";
}

const std::vector<ProtocolName>& all_protocols() {
  static const std::vector<ProtocolName> kAll{
      ProtocolName::kRelaxed,  ProtocolName::kRywSpec,   ProtocolName::kRywImpl,  ProtocolName::kMrSpec,
      ProtocolName::kMrImpl,   ProtocolName::kMwSpec,    ProtocolName::kMwImpl,   ProtocolName::kRywMwImpl,
      ProtocolName::kCcSpec,   ProtocolName::kCcImplVc,  ProtocolName::kCcImplLf, ProtocolName::kLccSpec,
  };
  return kAll;
}

ProtocolName parse_protocol(const std::string& name) {
  for (ProtocolName p : all_protocols()) {
    if (name == protocol_name(p)) return p;
  }
  throw InvalidArgument("unknown protocol `" + name + "`");
}

const std::vector<MutantKind>& all_mutants() {
  static const std::vector<MutantKind> kAll{MutantKind::kRywImplGetGuardTrue, MutantKind::kMrImplGetGuardTrue,
                                            MutantKind::kMwImplPutGuardTrue, MutantKind::kCcImplVcPutGuardTrue};
  return kAll;
}

ProtocolName mutant_base(MutantKind m) {
  switch (m) {
    case MutantKind::kRywImplGetGuardTrue:
      return ProtocolName::kRywImpl;
    case MutantKind::kMrImplGetGuardTrue:
      return ProtocolName::kMrImpl;
    case MutantKind::kMwImplPutGuardTrue:
      return ProtocolName::kMwImpl;
    case MutantKind::kCcImplVcPutGuardTrue:
      return ProtocolName::kCcImplVc;
  }
  return ProtocolName::kRelaxed;
}

ProtocolDefinition make_protocol(ProtocolName name, StoreKind store, const Domain& d,
                                 const std::optional<LabelingConfig>& labeling) {
  if (d.clients == 0 || d.keys == 0 || d.values == 0 || d.replicas == 0) {
    throw InvalidArgument("domain sizes must be positive");
  }
  if (d.values < d.keys) throw InvalidArgument("value domain must contain the key domain");
  if (name == ProtocolName::kLccSpec && !labeling) throw InvalidArgument("lcc_spec requires a labeling");
  if (name != ProtocolName::kLccSpec && labeling) {
    throw InvalidArgument(std::string("labeling given for ") + protocol_name(name) + ", which takes none");
  }
  using V = ProtocolDefinition::Variant;
  switch (name) {
    case ProtocolName::kRelaxed:
      return ProtocolDefinition(V{Relaxed(d, store)});
    case ProtocolName::kRywSpec:
      return ProtocolDefinition(V{RywSpec(d, store)});
    case ProtocolName::kRywImpl:
      return ProtocolDefinition(V{RywImpl(d, store)});
    case ProtocolName::kMrSpec:
      return ProtocolDefinition(V{MrSpec(d, store)});
    case ProtocolName::kMrImpl:
      return ProtocolDefinition(V{MrImpl(d, store)});
    case ProtocolName::kMwSpec:
      return ProtocolDefinition(V{MwSpec(d, store)});
    case ProtocolName::kMwImpl:
      return ProtocolDefinition(V{MwImpl(d, store)});
    case ProtocolName::kRywMwImpl:
      return ProtocolDefinition(V{RywMwImpl(d, store)});
    case ProtocolName::kCcSpec:
      return ProtocolDefinition(V{CcSpec(d, store)});
    case ProtocolName::kCcImplVc:
      return ProtocolDefinition(V{CcImplVc(d, store)});
    case ProtocolName::kCcImplLf:
      return ProtocolDefinition(V{CcImplLf(d, store)});
    case ProtocolName::kLccSpec:
      return ProtocolDefinition(V{LccSpec(d, store, *labeling)});
  }
  throw InvalidArgument("unknown protocol");
}

ProtocolDefinition make_protocol_or_default(ProtocolName name, StoreKind store, const Domain& d,
                                            const std::optional<LabelingConfig>& labeling) {
  if (name == ProtocolName::kLccSpec) {
    return make_protocol(name, store, d, labeling ? *labeling : default_labeling(d, 2));
  }
  return make_protocol(name, store, d);
}

ProtocolDefinition make_mutant(MutantKind kind, StoreKind store, const Domain& d) {
  using V = ProtocolDefinition::Variant;
  switch (kind) {
    case MutantKind::kRywImplGetGuardTrue:
      return ProtocolDefinition(V{GetGuardForcedTrue<RywImpl>(RywImpl(d, store))});
    case MutantKind::kMrImplGetGuardTrue:
      return ProtocolDefinition(V{GetGuardForcedTrue<MrImpl>(MrImpl(d, store))});
    case MutantKind::kMwImplPutGuardTrue:
      return ProtocolDefinition(V{PutGuardForcedTrue<MwImpl>(MwImpl(d, store))});
    case MutantKind::kCcImplVcPutGuardTrue:
      return ProtocolDefinition(V{PutGuardForcedTrue<CcImplVc>(CcImplVc(d, store))});
  }
  throw InvalidArgument("unknown mutant");
}

}  // namespace sessionkv
