// src/report.cc

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
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "halscope/errors.h"

namespace halscope {

using nlohmann::ordered_json;

namespace {

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string OptionalDouble(const std::optional<double> &v) {
  return v ? FormatDouble(*v) : std::string();
}

char OpChar(EditOp op) {
  switch (op) {
    case EditOp::kMatch: return '=';
    case EditOp::kSub: return 'S';
    case EditOp::kIns: return 'I';
    case EditOp::kDel: return 'D';
  }
  return '?';
}

EditOp ParseOp(char c) {
  switch (c) {
    case '=': return EditOp::kMatch;
    case 'S': return EditOp::kSub;
    case 'I': return EditOp::kIns;
    case 'D': return EditOp::kDel;
    default: throw Error(Errc::kMalformedLine, std::string("bad edit op '") + c + "'");
  }
}

ordered_json OptionalJson(const std::optional<double> &v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json RecordToJson(const EvalRecord &r) {
  ordered_json j;
  j["id"] = r.id;
  j["phase"] = PhaseName(r.phase);
  j["reference"] = r.reference;
  j["hypothesis"] = r.hypothesis;
  if (r.failed()) {
    j["error"] = *r.error;
    return j;
  }
  j["wer"] = r.wer;
  j["substitutions"] = r.alignment.substitutions;
  j["insertions"] = r.alignment.insertions;
  j["deletions"] = r.alignment.deletions;
  j["ref_len"] = r.alignment.ref_len;
  std::string ops;
  for (EditOp op : r.alignment.ops) ops += OpChar(op);
  j["ops"] = ops;
  j["cos"] = OptionalJson(r.cos);
  j["ppl"] = OptionalJson(r.ppl);
  j["oscillating"] = r.oscillating;
  j["class"] = ErrorClassName(r.error_class);
  return j;
}

std::optional<double> OptionalFromJson(const ordered_json &j, const char *key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

EvalRecord RecordFromJson(const ordered_json &j) {
  EvalRecord r;
  r.id = j.at("id").get<std::string>();
  r.phase = ParsePhase(j.at("phase").get<std::string>());
  r.reference = j.at("reference").get<std::string>();
  r.hypothesis = j.at("hypothesis").get<std::string>();
  if (j.contains("error")) {
    r.error = j["error"].get<std::string>();
    return r;
  }
  r.wer = j.at("wer").get<double>();
  r.alignment.substitutions = j.at("substitutions").get<int>();
  r.alignment.insertions = j.at("insertions").get<int>();
  r.alignment.deletions = j.at("deletions").get<int>();
  r.alignment.ref_len = j.at("ref_len").get<int>();
  for (char c : j.at("ops").get<std::string>()) r.alignment.ops.push_back(ParseOp(c));
  r.cos = OptionalFromJson(j, "cos");
  r.ppl = OptionalFromJson(j, "ppl");
  r.oscillating = j.at("oscillating").get<bool>();
  auto cls = ParseErrorClass(j.at("class").get<std::string>());
  if (!cls) throw Error(Errc::kMalformedLine, "unknown class in record " + r.id);
  r.error_class = *cls;
  return r;
}

ordered_json SummaryToJson(const PhaseSummary &s) {
  ordered_json j;
  j["evaluated"] = s.evaluated;
  j["failed"] = s.failed;
  j["hallucinations"] = s.hallucinations;
  j["halluc_rate"] = s.halluc_rate;
  j["mean_wer"] = s.mean_wer;
  j["corpus_wer"] = s.corpus_wer;
  ordered_json classes;
  for (ErrorClass c : kAllErrorClasses) classes[std::string(ErrorClassName(c))] = s.count(c);
  j["class_counts"] = std::move(classes);
  return j;
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string DetectionReportToJson(const DetectionReport &report) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["schema_version"] = kReportSchemaVersion;
  j["model"] = report.model;
  j["dataset"] = report.dataset;
  const Thresholds &th = report.scoring.thresholds;
  j["thresholds"] = {{"wer", th.wer}, {"cos", th.cos}, {"ppl", th.ppl}};
  j["oscillation"] = {{"min_ngram", report.scoring.oscillation.min_ngram},
                      {"min_repeats", report.scoring.oscillation.min_repeats}};
  j["score_all"] = report.scoring.score_all;
  ordered_json noise;
  noise["placement"] = PlacementName(report.noise.placement);
  noise["amplitude"] = report.noise.amplitude;
  noise["duration_s"] = OptionalJson(report.noise.duration_s);
  noise["mode"] = ModeName(report.noise.mode);
  noise["seed"] = report.noise.seed;
  j["noise"] = std::move(noise);
  ordered_json summary;
  summary["natural"] = SummaryToJson(report.natural);
  summary["perturbed"] = SummaryToJson(report.perturbed);
  summary["boundary_count"] = report.boundary_count;
  summary["natural_halluc_rate"] = report.natural.halluc_rate;
  summary["perturbed_halluc_rate"] = report.perturbed.halluc_rate;
  summary["susceptibility_score"] = report.susceptibility_score;
  j["summary"] = std::move(summary);
  ordered_json natural = ordered_json::array(), perturbed = ordered_json::array();
  for (const EvalRecord &r : report.natural_records) natural.push_back(RecordToJson(r));
  for (const EvalRecord &r : report.perturbed_records) perturbed.push_back(RecordToJson(r));
  j["natural_records"] = std::move(natural);
  j["perturbed_records"] = std::move(perturbed);
  return j.dump(2) + "\n";
}

DetectionReport DetectionReportFromJson(std::string_view text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error(Errc::kMalformedLine, "report is not a JSON object");
  if (j.value("schema", "") != kReportSchema ||
      j.value("schema_version", -1) != kReportSchemaVersion)
    throw Error(Errc::kMalformedLine, "not a detection report (schema mismatch)");
  try {
    DetectionReport r;
    r.model = j.at("model").get<std::string>();
    r.dataset = j.at("dataset").get<std::string>();
    const auto &th = j.at("thresholds");
    r.scoring.thresholds = {th.at("wer").get<double>(), th.at("cos").get<double>(),
                            th.at("ppl").get<double>()};
    const auto &osc = j.at("oscillation");
    r.scoring.oscillation = {osc.at("min_ngram").get<int>(),
                             osc.at("min_repeats").get<int>()};
    r.scoring.score_all = j.at("score_all").get<bool>();
    const auto &noise = j.at("noise");
    r.noise.placement = ParsePlacement(noise.at("placement").get<std::string>());
    r.noise.amplitude = noise.at("amplitude").get<double>();
    r.noise.duration_s = OptionalFromJson(noise, "duration_s");
    r.noise.mode = ParseMode(noise.at("mode").get<std::string>());
    r.noise.seed = noise.at("seed").get<std::uint64_t>();
    for (const auto &rec : j.at("natural_records")) r.natural_records.push_back(RecordFromJson(rec));
    for (const auto &rec : j.at("perturbed_records")) r.perturbed_records.push_back(RecordFromJson(rec));
    r.Finalize();
    return r;
  } catch (const nlohmann::json::exception &e) {
    throw Error(Errc::kMalformedLine, std::string("report field: ") + e.what());
  }
}

std::vector<HistogramData> CompareDistributions(const DetectionReport &report,
                                                const DistributionOptions &options) {
  std::vector<HistogramData> out;
  for (Phase phase : {Phase::kNatural, Phase::kPerturbed}) {
    const auto &records =
        phase == Phase::kNatural ? report.natural_records : report.perturbed_records;
    std::vector<double> wer, cos, ppl;
    for (const EvalRecord &r : records) {
      if (r.failed()) continue;
      if (!(options.exclude_zero_wer && r.wer == 0.0)) wer.push_back(r.wer);
      if (r.cos) cos.push_back(*r.cos);
      if (r.ppl) ppl.push_back(*r.ppl);
    }
    const std::string name(PhaseName(phase));
    out.push_back(Histogram(wer, options.wer, "wer", name));
    out.push_back(Histogram(cos, options.cos, "cos", name));
    out.push_back(Histogram(ppl, options.ppl, "ppl", name));
  }
  return out;
}

std::string RecordsCsv(const DetectionReport &report) {
  std::ostringstream os;
  os << "phase,id,wer,substitutions,insertions,deletions,ref_len,cos,ppl,"
        "oscillating,class,error,reference,hypothesis\n";
  for (const auto *records : {&report.natural_records, &report.perturbed_records}) {
    for (const EvalRecord &r : *records) {
      os << PhaseName(r.phase) << ',' << CsvField(r.id) << ',';
      if (r.failed()) {
        os << ",,,,,,,,," << CsvField(*r.error);
      } else {
        os << FormatDouble(r.wer) << ',' << r.alignment.substitutions << ','
           << r.alignment.insertions << ',' << r.alignment.deletions << ','
           << r.alignment.ref_len << ',' << OptionalDouble(r.cos) << ','
           << OptionalDouble(r.ppl) << ',' << (r.oscillating ? 1 : 0) << ','
           << ErrorClassName(r.error_class) << ',';
      }
      os << ',' << CsvField(r.reference) << ',' << CsvField(r.hypothesis) << '\n';
    }
  }
  return os.str();
}

std::string ClassCountsCsv(const DetectionReport &report) {
  std::ostringstream os;
  os << "phase,class,count\n";
  for (Phase phase : {Phase::kNatural, Phase::kPerturbed}) {
    const PhaseSummary &s = phase == Phase::kNatural ? report.natural : report.perturbed;
    for (ErrorClass c : kAllErrorClasses)
      os << PhaseName(phase) << ',' << ErrorClassName(c) << ',' << s.count(c) << '\n';
  }
  return os.str();
}

std::string HistogramCsv(const HistogramData &h) {
  std::ostringstream os;
  os << "bin_lo,bin_hi,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    os << FormatDouble(h.edges[i]) << ',' << FormatDouble(h.edges[i + 1]) << ','
       << h.counts[i] << '\n';
  return os.str();
}

std::string DistributionsJson(const std::vector<HistogramData> &histograms) {
  ordered_json arr = ordered_json::array();
  for (const HistogramData &h : histograms) {
    ordered_json j;
    j["metric"] = h.metric;
    j["phase"] = h.phase;
    j["edges"] = h.edges;
    j["counts"] = h.counts;
    j["clipped"] = h.clipped;
    arr.push_back(std::move(j));
  }
  ordered_json root;
  root["histograms"] = std::move(arr);
  return root.dump(2) + "\n";
}

std::string RatioLongCsv(std::span<const DetectionReport> reports) {
  std::ostringstream os;
  os << "model,dataset,natural,perturbed,susceptibility\n";
  for (const DetectionReport &r : reports)
    os << CsvField(r.model) << ',' << CsvField(r.dataset) << ','
       << FormatDouble(r.natural.halluc_rate) << ','
       << FormatDouble(r.perturbed.halluc_rate) << ','
       << FormatDouble(r.susceptibility_score) << '\n';
  return os.str();
}

std::string RatioTableCsv(std::span<const DetectionReport> reports) {
  std::vector<std::string> models, datasets;
  std::map<std::pair<std::string, std::string>, double> cell;
  for (const DetectionReport &r : reports) {
    if (std::find(models.begin(), models.end(), r.model) == models.end())
      models.push_back(r.model);
    if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end())
      datasets.push_back(r.dataset);
    cell[{r.model, r.dataset}] = r.natural.halluc_rate;
  }
  std::ostringstream os;
  os << "model";
  for (const auto &d : datasets) os << ',' << CsvField(d);
  os << '\n';
  for (const auto &m : models) {
    os << CsvField(m);
    for (const auto &d : datasets) {
      os << ',';
      if (auto it = cell.find({m, d}); it != cell.end()) os << FormatDouble(it->second);
    }
    os << '\n';
  }
  return os.str();
}

void WriteTextFile(const std::filesystem::path &path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(Errc::kIoError, "short write to " + path.string());
}

std::string ReadTextFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kMissingFile, path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::filesystem::path> ExportReport(const DetectionReport &report,
                                                const std::filesystem::path &dir,
                                                const DistributionOptions &options) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string &name, const std::string &content) {
    WriteTextFile(dir / name, content);
    written.push_back(dir / name);
  };
  put("report.json", DetectionReportToJson(report));
  put("records.csv", RecordsCsv(report));
  put("class_counts.csv", ClassCountsCsv(report));
  std::vector<HistogramData> hists = CompareDistributions(report, options);
  put("distributions.json", DistributionsJson(hists));
  for (const HistogramData &h : hists)
    put("hist_" + h.phase + "_" + h.metric + ".csv", HistogramCsv(h));
  return written;
}

}  // namespace halscope
