// include/halscope/report.h

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


// Serialization and export of detection reports. All writers emit fields in
// a fixed order and format numbers with shortest round-trip precision, so the
// same report always produces the same bytes.

#ifndef HALSCOPE_REPORT_H_
#define HALSCOPE_REPORT_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "halscope/detector.h"
#include "halscope/histogram.h"

namespace halscope {

inline constexpr std::string_view kReportSchema = "halscope.detection_report";
inline constexpr int kReportSchemaVersion = 1;

struct DistributionOptions {
  BinSpec wer{0.0, 200.0, 40};
  BinSpec cos{0.0, 1.0, 20};
  BinSpec ppl{0.0, 1000.0, 50};
  /// Leave WER = 0 records out of the WER histograms.
  bool exclude_zero_wer = false;
};

/// Per-phase histograms (wer, cos, ppl for natural then perturbed). WER covers
/// every scored record; cos and ppl cover the records where they were
/// computed.
std::vector<HistogramData> CompareDistributions(
    const DetectionReport &report, const DistributionOptions &options = {});

std::string DetectionReportToJson(const DetectionReport &report);
/// Throws MalformedLine on a schema mismatch.
DetectionReport DetectionReportFromJson(std::string_view json);

std::string RecordsCsv(const DetectionReport &report);
/// phase,class,count for all classes of both phases.
std::string ClassCountsCsv(const DetectionReport &report);
std::string HistogramCsv(const HistogramData &histogram);
std::string DistributionsJson(const std::vector<HistogramData> &histograms);

/// Hallucination ratios per model and dataset: a long table
/// (model,dataset,natural,perturbed,susceptibility) and a models x datasets
/// table of natural rates.
std::string RatioLongCsv(std::span<const DetectionReport> reports);
std::string RatioTableCsv(std::span<const DetectionReport> reports);

/// Writes report.json, records.csv, class_counts.csv, distributions.json and
/// hist_<phase>_<metric>.csv under |dir|. Returns the written paths.
std::vector<std::filesystem::path> ExportReport(
    const DetectionReport &report, const std::filesystem::path &dir,
    const DistributionOptions &options = {});

/// Throws IoError.
void WriteTextFile(const std::filesystem::path &path, std::string_view content);
std::string ReadTextFile(const std::filesystem::path &path);

/// Shortest representation that parses back to the same double.
std::string FormatDouble(double v);

}  // namespace halscope

#endif  // HALSCOPE_REPORT_H_
