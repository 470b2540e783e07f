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
#include <map>
#include <string_view>
#include <vector>

#include "sessionkv/kernel/types.hpp"
#include "sessionkv/protocols/sorted_set.hpp"

namespace sessionkv {

/// Topic labels for labeled causal consistency.
struct LabelingConfig {
  std::uint32_t label_count = 1;
  /// Indexed by value; total over the value domain.
  std::vector<TopicLabel> value_labels;
  /// Total over real clients 1..clients.
  std::map<ClientId, SortedSet<TopicLabel>> client_labels;

  [[nodiscard]] TopicLabel label(Value v) const;
  [[nodiscard]] const SortedSet<TopicLabel>& labels_of(ClientId c) const;

  /// Throws InvalidArgument unless the config is total over `d` and every
  /// label lies in [0, label_count).
  void validate(const Domain& d) const;

  auto operator<=>(const LabelingConfig&) const = default;
};

/// value v gets label v mod label_count; every client subscribes to all labels.
[[nodiscard]] LabelingConfig default_labeling(const Domain& d, std::uint32_t label_count);

/// Text format, one directive per line, `#` comments allowed:
///
///     labels 2
///     value 1: 0        # optional override of v mod labels
///     client 1: 0 1
///     client 2: 1
///
/// Clients without a line subscribe to every label.
[[nodiscard]] LabelingConfig parse_labeling(std::string_view text, const Domain& d);

}  // namespace sessionkv
