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


#include "sessionkv/protocols/labeling.hpp"

#include <charconv>
#include <optional>
#include <string>
#include <vector>

#include "sessionkv/kernel/error.hpp"

namespace sessionkv {

TopicLabel LabelingConfig::label(Value v) const {
  SESSIONKV_EXPECTS(v.value < value_labels.size(), "value outside labeling domain");
  return value_labels[v.value];
}

const SortedSet<TopicLabel>& LabelingConfig::labels_of(ClientId c) const {
  auto it = client_labels.find(c);
  SESSIONKV_EXPECTS(it != client_labels.end(), "client without label subscription");
  return it->second;
}

void LabelingConfig::validate(const Domain& d) const {
  if (label_count == 0) throw InvalidArgument("labeling needs at least one label");
  if (value_labels.size() != d.values) {
    throw InvalidArgument("labeling covers " + std::to_string(value_labels.size()) + " values, domain has " +
                          std::to_string(d.values));
  }
  for (TopicLabel l : value_labels) {
    if (l.value >= label_count) throw InvalidArgument("value label out of range: " + std::to_string(l.value));
  }
  for (std::uint32_t c = 1; c <= d.clients; ++c) {
    auto it = client_labels.find(ClientId{c});
    if (it == client_labels.end()) throw InvalidArgument("no label subscription for client c" + std::to_string(c));
    for (TopicLabel l : it->second) {
      if (l.value >= label_count) throw InvalidArgument("client label out of range: " + std::to_string(l.value));
    }
  }
  for (const auto& [c, ls] : client_labels) {
    if (c.value == 0 || c.value > d.clients) throw InvalidArgument("labeling names unknown client " + to_string(c));
  }
}

LabelingConfig default_labeling(const Domain& d, std::uint32_t label_count) {
  if (label_count == 0) throw InvalidArgument("labeling needs at least one label");
  LabelingConfig out;
  out.label_count = label_count;
  for (std::uint32_t v = 0; v < d.values; ++v) out.value_labels.emplace_back(v % label_count);
  SortedSet<TopicLabel> all;
  for (std::uint32_t l = 0; l < label_count; ++l) all.insert(TopicLabel{l});
  for (std::uint32_t c = 1; c <= d.clients; ++c) out.client_labels[ClientId{c}] = all;
  return out;
}

namespace {

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint32_t number(std::string_view tok, std::size_t line) {
  std::uint32_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw InvalidArgument("labeling line " + std::to_string(line) + ": expected a number, got `" + std::string(tok) +
                          "`");
  }
  return v;
}

/// `<n>:` -> n
std::uint32_t header_number(std::string_view tok, std::size_t line) {
  if (tok.empty() || tok.back() != ':') {
    throw InvalidArgument("labeling line " + std::to_string(line) + ": expected `<id>:`");
  }
  tok.remove_suffix(1);
  if (!tok.empty() && (tok.front() == 'c' || tok.front() == 'v')) tok.remove_prefix(1);
  return number(tok, line);
}

}  // namespace

LabelingConfig parse_labeling(std::string_view text, const Domain& d) {
  std::optional<LabelingConfig> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    const auto w = words(line);
    if (w.empty()) continue;
    if (w[0] == "labels") {
      if (w.size() != 2 || out) {
        throw InvalidArgument("labeling line " + std::to_string(line_no) + ": expected a single `labels <n>`");
      }
      out = default_labeling(d, number(w[1], line_no));
      continue;
    }
    if (!out) throw InvalidArgument("labeling line " + std::to_string(line_no) + ": `labels <n>` must come first");
    if (w[0] == "client" && w.size() >= 2) {
      const ClientId c{header_number(w[1], line_no)};
      SortedSet<TopicLabel> ls;
      for (std::size_t i = 2; i < w.size(); ++i) ls.insert(TopicLabel{number(w[i], line_no)});
      out->client_labels[c] = std::move(ls);
    } else if (w[0] == "value" && w.size() == 3) {
      const std::uint32_t v = header_number(w[1], line_no);
      if (v >= d.values) throw InvalidArgument("labeling line " + std::to_string(line_no) + ": value out of domain");
      out->value_labels[v] = TopicLabel{number(w[2], line_no)};
    } else {
      throw InvalidArgument("labeling line " + std::to_string(line_no) + ": unrecognized directive `" +
                            std::string(w[0]) + "`");
    }
  }
  if (!out) throw InvalidArgument("labeling file has no `labels <n>` line");
  out->validate(d);
  return *out;
}

}  // namespace sessionkv
