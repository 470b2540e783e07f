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
#include <vector>

namespace sessionkv {

/// Nearest rank: the ceil(q*n)-th smallest sample. Throws InvalidArgument on
/// an empty pool or q outside (0,1].
[[nodiscard]] double percentile(std::vector<double> samples, double q);

[[nodiscard]] double median(std::vector<double> samples);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  /// Zero when either variable is constant.
  double pearson = 0;
};

/// Ordinary least squares of y on x. Throws InvalidArgument unless x takes at
/// least two distinct values.
[[nodiscard]] LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sessionkv
