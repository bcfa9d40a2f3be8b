// tests/unit/report_test.cc

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

#include "halscope/report.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "json.hpp"

#include "halscope/errors.h"
#include "unit/test_util.h"

namespace halscope {
namespace {

EvalRecord Record(std::string id, Phase phase, double wer, std::optional<double> cos,
                  std::optional<double> ppl, ErrorClass cls) {
  EvalRecord r;
  r.id = std::move(id);
  r.phase = phase;
  r.reference = "one two three four";
  r.hypothesis = "one two, \"three\"";
  r.alignment.ref_len = 4;
  r.alignment.deletions = 1;
  r.alignment.ops = {EditOp::kMatch, EditOp::kMatch, EditOp::kSub, EditOp::kDel};
  r.alignment.substitutions = 1;
  r.wer = wer;
  r.cos = cos;
  r.ppl = ppl;
  r.error_class = cls;
  return r;
}

DetectionReport Sample() {
  DetectionReport r;
  r.model = "m1";
  r.dataset = "d1";
  r.noise = NoiseSpec::Begin(0.5, 1.0, NoiseMode::kAdd, 3);
  r.natural_records = {Record("a", Phase::kNatural, 0.0, std::nullopt, std::nullopt, ErrorClass::kClean),
                       Record("b", Phase::kNatural, 75.0, 0.1, 42.25, ErrorClass::kHallucination),
                       Record("c", Phase::kNatural, 12.5, std::nullopt, std::nullopt, ErrorClass::kClean)};
  r.natural_records.push_back(r.natural_records[0]);
  r.natural_records.back().id = "d";
  r.natural_records.back().error = "decoder crashed";
  r.perturbed_records = {Record("a", Phase::kPerturbed, 100.0 / 3.0, 0.3333333333333333, 1e6,
                                ErrorClass::kPhoneticError),
                         Record("c", Phase::kPerturbed, 150.0, 0.0, 0.1, ErrorClass::kHallucination)};
  r.Finalize();
  return r;
}

TEST(DetectionReportJson, RoundTripIsByteIdentical) {
  DetectionReport r = Sample();
  std::string a = DetectionReportToJson(r);
  DetectionReport back = DetectionReportFromJson(a);
  EXPECT_EQ(DetectionReportToJson(back), a);
  EXPECT_EQ(back.natural_records[1].cos, 0.1);
  EXPECT_EQ(back.perturbed_records[0].cos, 0.3333333333333333);
  EXPECT_FALSE(back.natural_records[0].ppl.has_value());
  EXPECT_TRUE(back.natural_records[3].failed());
  EXPECT_EQ(back.natural_records[1].alignment.ops, r.natural_records[1].alignment.ops);
  auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["summary"]["natural"]["evaluated"], 3);
  EXPECT_EQ(j["summary"]["natural"]["failed"], 1);
  EXPECT_DOUBLE_EQ(j["summary"]["susceptibility_score"].get<double>(), 1.0 / 3.0 - 0.5);
}

TEST(DetectionReportJson, RejectsOtherSchemas) {
  EXPECT_THROW(DetectionReportFromJson("[]"), Error);
  EXPECT_THROW(DetectionReportFromJson(R"({"schema":"other","schema_version":1})"), Error);
  EXPECT_THROW(DetectionReportFromJson("{"), Error);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(30.0), "30");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    double v = d(rng);
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

TEST(Csv, ClassCountsAndRecords) {
  DetectionReport r = Sample();
  std::string classes = ClassCountsCsv(r);
  EXPECT_NE(classes.find("natural,CLEAN,2\n"), std::string::npos);
  EXPECT_NE(classes.find("natural,HALLUCINATION,1\n"), std::string::npos);
  EXPECT_NE(classes.find("perturbed,PHONETIC_ERROR,1\n"), std::string::npos);
  EXPECT_NE(classes.find("perturbed,DISFLUENT_ERROR,0\n"), std::string::npos);
  std::string records = RecordsCsv(r);
  EXPECT_NE(records.find("\"one two, \"\"three\"\"\""), std::string::npos);
  EXPECT_NE(records.find("natural,b,75,1,0,1,4,0.1,42.25,0,HALLUCINATION,,"), std::string::npos);
  EXPECT_EQ(std::count(records.begin(), records.end(), '\n'), 7);
}

TEST(Distributions, PhasesMetricsAndFilters) {
  DetectionReport r = Sample();
  auto hs = CompareDistributions(r);
  ASSERT_EQ(hs.size(), 6u);
  EXPECT_EQ(hs[0].metric, "wer");
  EXPECT_EQ(hs[0].phase, "natural");
  EXPECT_EQ(hs[0].Total(), 3u);
  EXPECT_EQ(hs[1].metric, "cos");
  EXPECT_EQ(hs[1].Total(), 1u);
  EXPECT_EQ(hs[3].phase, "perturbed");
  EXPECT_EQ(hs[5].Total(), 2u);
  EXPECT_EQ(hs[5].clipped, 1u);
  DistributionOptions opts;
  opts.exclude_zero_wer = true;
  EXPECT_EQ(CompareDistributions(r, opts)[0].Total(), 2u);
  std::string csv = HistogramCsv(hs[1]);
  EXPECT_EQ(csv.substr(0, 22), "bin_lo,bin_hi,count\n0,");
}

TEST(RatioTables, LongAndPivot) {
  DetectionReport a = Sample();
  DetectionReport b = Sample();
  b.model = "m2";
  DetectionReport c = Sample();
  c.dataset = "d2";
  std::vector<DetectionReport> all = {a, b, c};
  std::string lng = RatioLongCsv(all);
  EXPECT_EQ(lng.substr(0, lng.find('\n')), "model,dataset,natural,perturbed,susceptibility");
  EXPECT_NE(lng.find("m2,d1,0.3333333333333333,0.5,"), std::string::npos);
  std::string pivot = RatioTableCsv(all);
  EXPECT_EQ(pivot, "model,d1,d2\nm1,0.3333333333333333,0.3333333333333333\nm2,0.3333333333333333,\n");
}

TEST(ExportReport, WritesAllArtifacts) {
  testing::TempDir dir;
  auto paths = ExportReport(Sample(), dir.path());
  for (const char *name : {"report.json", "records.csv", "class_counts.csv",
                           "distributions.json", "hist_natural_wer.csv", "hist_perturbed_ppl.csv"})
    EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;
  EXPECT_EQ(paths.size(), 10u);
}

}  // namespace
}  // namespace halscope
