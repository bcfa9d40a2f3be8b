// include/halscope/histogram.h

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


#ifndef HALSCOPE_HISTOGRAM_H_
#define HALSCOPE_HISTOGRAM_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace halscope {

/// Fixed-width bins over [lo, hi].
struct BinSpec {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t bins = 10;

  /// Throws EmptyBinSpec unless bins > 0 and lo < hi (both finite).
  void Validate() const;
  /// bins + 1 strictly increasing edges.
  std::vector<double> Edges() const;
  /// Bin of |v|, clamped to the edge bins; v == hi lands in the last bin.
  std::size_t BinOf(double v) const;
};

struct HistogramData {
  std::string metric;
  std::string phase;
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  /// Values outside [lo, hi]; each is also counted in its edge bin.
  std::size_t clipped = 0;

  std::size_t Total() const;
};

/// Throws EmptyBinSpec, or NonFiniteInput for NaN values. Infinite values
/// clip like any other out-of-range value.
HistogramData Histogram(std::span<const double> values, const BinSpec &spec,
                        std::string metric = {}, std::string phase = {});

}  // namespace halscope

#endif  // HALSCOPE_HISTOGRAM_H_
