// tests/unit/cli_test.cc

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

#include "halscope/cli.h"

#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"

#include "halscope/corpus.h"
#include "halscope/report.h"
#include "unit/test_util.h"

namespace halscope {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out, err;
};

Result Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "halscope");
  std::ostringstream out, err;
  int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

// A small synthetic corpus written once per test.
class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Result r = Cli({"synth-corpus", "--utterances", "80", "--pool-size", "12", "--seed", "3",
                    "--noisy-onset-fraction", "0.05", "--out-dir", dir_.path().string()});
    ASSERT_EQ(r.code, 0) << r.err;
    manifest_ = (dir_ / "synthetic.tsv").string();
    sim_ = (dir_ / "sim.yaml").string();
  }

  std::string Out(const std::string &name) const { return (dir_ / name).string(); }

  testing::TempDir dir_;
  std::string manifest_, sim_;
};

TEST(CliUsage, ExitCodes) {
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Cli({"detect", "--manifest", "x.tsv"}).code, kExitUsage);
  EXPECT_EQ(Cli({"detect", "--manifest", "x.tsv", "--backend", "sim:y", "--bogus"}).code,
            kExitUsage);
  Result help = Cli({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("detect"), std::string::npos);
  Result missing = Cli({"detect", "--manifest", "/nonexistent/x.tsv", "--backend", "sim:y"});
  EXPECT_EQ(missing.code, kExitRunError);
  EXPECT_NE(missing.err.find("MissingFile"), std::string::npos);
}

TEST_F(CliTest, SynthCorpusOutputs) {
  EXPECT_EQ(LoadManifest(manifest_).size(), 80u);
  EXPECT_TRUE(fs::exists(dir_ / "pool.txt"));
  EXPECT_TRUE(fs::exists(dir_ / "lm_train.txt"));
}

TEST_F(CliTest, DetectIsDeterministic) {
  std::vector<std::string> args = {"detect", "--manifest", manifest_, "--backend", "sim:" + sim_,
                                   "--lm-train", Out("lm_train.txt")};
  auto a = args, b = args;
  a.insert(a.end(), {"--out-dir", Out("run1")});
  b.insert(b.end(), {"--out-dir", Out("run2"), "--jobs", "3", "--batch", "5"});
  Result ra = Cli(a), rb = Cli(b);
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(rb.code, 0) << rb.err;
  std::string report = testing::ReadFile(dir_ / "run1" / "report.json");
  EXPECT_EQ(report, testing::ReadFile(dir_ / "run2" / "report.json"));
  for (const char *f : {"records.csv", "class_counts.csv", "distributions.json",
                        "halluc_ratio.csv", "halluc_ratio_table.csv", "hist_perturbed_cos.csv"})
    EXPECT_TRUE(fs::exists(dir_ / "run1" / f)) << f;
  json j = json::parse(report);
  EXPECT_EQ(j["summary"]["natural"]["evaluated"], 80);
  EXPECT_LT(j["summary"]["susceptibility_score"].get<double>(), 0.0);
}

TEST_F(CliTest, ExternalBackendMatchesInProcessSimulator) {
  std::vector<std::string> common = {"--manifest", manifest_, "--lm-train", Out("lm_train.txt")};
  std::vector<std::string> in = {"detect", "--backend", "sim:" + sim_, "--out-dir", Out("in")};
  in.insert(in.end(), common.begin(), common.end());
  std::string cmd = std::string("exec:") + HALSCOPE_CLI_PATH + " simulate-backend --manifest " +
                    manifest_ + " --sim-config " + sim_;
  std::vector<std::string> ext = {"detect", "--backend", cmd, "--jobs", "2", "--out-dir",
                                  Out("ext")};
  ext.insert(ext.end(), common.begin(), common.end());
  ASSERT_EQ(Cli(in).code, 0);
  Result r = Cli(ext);
  ASSERT_EQ(r.code, 0) << r.err;
  json a = json::parse(testing::ReadFile(dir_ / "in" / "report.json"));
  json b = json::parse(testing::ReadFile(dir_ / "ext" / "report.json"));
  EXPECT_EQ(a["natural_records"], b["natural_records"]);
  EXPECT_EQ(a["perturbed_records"], b["perturbed_records"]);
  EXPECT_EQ(a["summary"], b["summary"]);
}

TEST_F(CliTest, ConfigFileWithCommandLineOverride) {
  testing::WriteFile(dir_ / "run.yaml",
                     "manifest: " + manifest_ + "\nbackend: sim:" + sim_ +
                         "\nthresholds:\n  wer: 50\n  cos: 0.3\nnoise:\n  amplitude: 0.1\n"
                         "score-all: true\n");
  Result a = Cli({"detect", "--config", Out("run.yaml"), "--out-dir", Out("cfg1")});
  ASSERT_EQ(a.code, 0) << a.err;
  json ja = json::parse(testing::ReadFile(dir_ / "cfg1" / "report.json"));
  EXPECT_EQ(ja["thresholds"]["wer"], 50.0);
  EXPECT_EQ(ja["thresholds"]["cos"], 0.3);
  EXPECT_EQ(ja["noise"]["amplitude"], 0.1);
  EXPECT_EQ(ja["score_all"], true);
  Result b = Cli({"detect", "--config", Out("run.yaml"), "--t-wer", "40", "--out-dir", Out("cfg2")});
  ASSERT_EQ(b.code, 0) << b.err;
  json jb = json::parse(testing::ReadFile(dir_ / "cfg2" / "report.json"));
  EXPECT_EQ(jb["thresholds"]["wer"], 40.0);
  testing::WriteFile(dir_ / "bad.yaml", "no-such-flag: 1\n");
  EXPECT_EQ(Cli({"detect", "--config", Out("bad.yaml")}).code, kExitUsage);
}

TEST_F(CliTest, EvaluateWritesMetrics) {
  Result r = Cli({"evaluate", "--manifest", manifest_, "--backend", "sim:" + sim_, "--out-dir",
                  Out("eval")});
  ASSERT_EQ(r.code, 0) << r.err;
  json m = json::parse(testing::ReadFile(dir_ / "eval" / "metrics.json"));
  for (const char *k : {"wer", "bleu", "chrf2", "rouge1"}) EXPECT_TRUE(m.contains(k)) << k;
  EXPECT_GT(m["bleu"].get<double>(), 50.0);
  EXPECT_TRUE(fs::exists(dir_ / "eval" / "report.json"));
}

TEST_F(CliTest, PerturbWritesNoisyCopies) {
  Result r = Cli({"perturb", "--manifest", manifest_, "--noise-placement", "whole",
                  "--noise-amplitude", "0.1", "--out-dir", Out("pert")});
  ASSERT_EQ(r.code, 0) << r.err;
  Corpus base = LoadManifest(manifest_);
  Corpus p = LoadManifest(dir_ / "pert" / "synthetic.tsv");
  ASSERT_EQ(p.size(), base.size());
  Waveform a = LoadAudio(base[0].audio_path), b = LoadAudio(p[0].audio_path);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  EXPECT_NE(a.samples, b.samples);
  EXPECT_TRUE(b.InRange());
}

TEST_F(CliTest, CorruptWritesManifestAndSidecar) {
  Result r = Cli({"corrupt", "--manifest", manifest_, "--scheme", "rr", "--volume", "25%",
                  "--rr-pairs", "4", "--out-dir", Out("cor")});
  ASSERT_EQ(r.code, 0) << r.err;
  Corpus c = LoadManifest(dir_ / "cor" / "synthetic+rr.tsv");
  EXPECT_EQ(c.size(), 100u);
  json j = json::parse(testing::ReadFile(dir_ / "cor" / "corruption.json"));
  EXPECT_EQ(j["corrupted_ids"].size(), 20u);
  EXPECT_EQ(Cli({"corrupt", "--manifest", manifest_, "--scheme", "uu", "--volume", "0",
                 "--out-dir", Out("cor2")}).code,
            kExitRunError);
}

TEST_F(CliTest, ProvenanceFindsPoolCopies) {
  ASSERT_EQ(Cli({"detect", "--manifest", manifest_, "--backend", "sim:" + sim_, "--lm-train",
                 Out("lm_train.txt"), "--out-dir", Out("det")}).code,
            0);
  Result r = Cli({"provenance", "--report", Out("det/report.json"), "--train-text",
                  Out("pool.txt"), "--out-dir", Out("prov")});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(testing::ReadFile(dir_ / "prov" / "provenance.json"));
  ASSERT_GT(j["entries"].size(), 0u);
  EXPECT_EQ(j["copied"], j["entries"].size());
}

TEST_F(CliTest, ReportCombinesRuns) {
  for (const char *name : {"m1", "m2"})
    ASSERT_EQ(Cli({"detect", "--manifest", manifest_, "--backend", "sim:" + sim_,
                   "--model-name", name, "--out-dir", Out(std::string("r_") + name)}).code,
              0);
  Result r = Cli({"report", "--report", Out("r_m1/report.json"), "--report",
                  Out("r_m2/report.json"), "--out-dir", Out("combined")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "combined" / "m1__synthetic" / "report.json"));
  EXPECT_TRUE(fs::exists(dir_ / "combined" / "halluc_ratio_table.csv"));
  EXPECT_EQ(testing::ReadFile(dir_ / "combined" / "m1__synthetic" / "report.json"),
            testing::ReadFile(dir_ / "r_m1" / "report.json"));
  EXPECT_NE(r.out.find("m2,synthetic,"), std::string::npos);
}

TEST_F(CliTest, UnreachableBackendIsRunError) {
  Result r = Cli({"detect", "--manifest", manifest_, "--backend", "tcp:127.0.0.1:1",
                  "--out-dir", Out("x")});
  EXPECT_EQ(r.code, kExitRunError);
  EXPECT_NE(r.err.find("BackendUnreachable"), std::string::npos);
}

}  // namespace
}  // namespace halscope
