// src/histogram.cc

// Copyright 2026 The halscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.


#include "halscope/histogram.h"

#include <cmath>
#include <numeric>

#include "halscope/errors.h"

namespace halscope {

void BinSpec::Validate() const {
  if (bins == 0) throw Error(Errc::kEmptyBinSpec, "zero bins");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw Error(Errc::kEmptyBinSpec, "bin range must satisfy lo < hi");
}

std::vector<double> BinSpec::Edges() const {
  std::vector<double> edges(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i) edges[i] = lo + width * static_cast<double>(i);
  edges[bins] = hi;
  return edges;
}

std::size_t BinSpec::BinOf(double v) const {
  if (!(v > lo)) return 0;
  if (v >= hi) return bins - 1;
  auto idx = static_cast<std::size_t>(std::floor((v - lo) / (hi - lo) * bins));
  return std::min(idx, bins - 1);
}

std::size_t HistogramData::Total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

HistogramData Histogram(std::span<const double> values, const BinSpec &spec,
                        std::string metric, std::string phase) {
  spec.Validate();
  HistogramData h;
  h.metric = std::move(metric);
  h.phase = std::move(phase);
  h.edges = spec.Edges();
  h.counts.assign(spec.bins, 0);
  for (double v : values) {
    if (std::isnan(v)) throw Error(Errc::kNonFiniteInput, "NaN in histogram input");
    if (v < spec.lo || v > spec.hi) ++h.clipped;
    ++h.counts[spec.BinOf(v)];
  }
  return h;
}

}  // namespace halscope
