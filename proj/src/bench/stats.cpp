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


#include "sessionkv/bench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sessionkv/kernel/error.hpp"

namespace sessionkv {

double percentile(std::vector<double> samples, double q) {
  if (samples.empty()) throw InvalidArgument("percentile of an empty sample pool");
  if (!(q > 0.0 && q <= 1.0)) throw InvalidArgument("percentile rank must lie in (0,1]");
  std::sort(samples.begin(), samples.end());
  // The epsilon keeps q*n that should be integral but is not exactly (0.95*100).
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(samples.size()) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, samples.size());
  return samples[rank - 1];
}

double median(std::vector<double> samples) { return percentile(std::move(samples), 0.5); }

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("regression needs paired samples");
  if (std::set<double>(x.begin(), x.end()).size() < 2) {
    throw InvalidArgument("regression needs at least two distinct x values");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0;
  double syy = 0;
  double sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.pearson = syy > 0 ? sxy / std::sqrt(sxx * syy) : 0.0;
  return f;
}

}  // namespace sessionkv
