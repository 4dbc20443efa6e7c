/*
 * Copyright 2026 The emq Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "emq/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace emq {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> SplitCsv(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(Trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(Trim(current));
  return fields;
}

std::optional<double> ParseNumber(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) return std::nullopt;
  return value;
}

// Classes and values of one sample before validation.
struct RawSample {
  std::string id;
  std::string locus;
  std::vector<std::string> classes;
  std::vector<double> truth;
  std::vector<double> pred;
  std::optional<std::uint64_t> size;
  bool counts = false;
  std::optional<RecordError> error;
};

std::string SampleLocus(const std::string& id) { return "sample '" + id + "'"; }

// Aligns the raw sample on `codeframe` and validates it.
SampleRecord Finish(const RawSample& raw, const Codeframe& codeframe) {
  const std::set<std::string> have(raw.classes.begin(), raw.classes.end());
  const std::set<std::string> want(codeframe.labels().begin(),
                                   codeframe.labels().end());
  if (have != want) {
    throw Error(ErrorCode::kMixedCodeframes,
                "classes differ from those of the first sample");
  }
  std::vector<double> truth(codeframe.size()), pred(codeframe.size());
  for (std::size_t i = 0; i < raw.classes.size(); ++i) {
    const std::size_t j = codeframe.IndexOf(raw.classes[i]);
    truth[j] = raw.truth[i];
    pred[j] = raw.pred[i];
  }
  if (raw.counts) {
    const double total = std::accumulate(truth.begin(), truth.end(), 0.0);
    SampleRecord record{raw.id, PrevalenceFromCounts(codeframe, truth),
                        PrevalenceFromCounts(codeframe, pred), std::nullopt};
    if (total >= 1.0) record.sample_size = static_cast<std::uint64_t>(std::llround(total));
    return record;
  }
  return SampleRecord{raw.id, ValidatePrevalence(codeframe, truth),
                      ValidatePrevalence(codeframe, pred), raw.size};
}

IngestResult Assemble(std::vector<RawSample> raws,
                      std::vector<RecordError> errors) {
  IngestResult result;
  result.errors = std::move(errors);
  std::optional<Codeframe> codeframe;
  for (const auto& raw : raws) {
    if (raw.error) {
      result.errors.push_back(*raw.error);
      continue;
    }
    try {
      if (!codeframe) codeframe = Codeframe(raw.classes);
      result.records.push_back(Finish(raw, *codeframe));
    } catch (const Error& e) {
      result.errors.push_back({raw.locus, e.code(), e.what()});
    }
  }
  return result;
}

IngestResult IngestCsv(std::istream& in) {
  std::vector<RawSample> raws;
  std::vector<RecordError> errors;
  std::map<std::string, std::size_t> index;
  std::map<std::string, std::set<std::string>> seen_classes;
  std::string line;
  std::size_t line_no = 0;
  std::optional<bool> counts;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const auto fields = SplitCsv(line);
    const std::string locus = "line " + std::to_string(line_no);
    if (!counts) {
      const std::vector<std::string> plain = {"sample_id", "class", "true", "pred"};
      const std::vector<std::string> counted = {"sample_id", "class",
                                                "true_count", "pred_count"};
      if (fields == plain) {
        counts = false;
      } else if (fields == counted) {
        counts = true;
      } else {
        errors.push_back({locus, ErrorCode::kParseError,
                          "ParseError: expected header sample_id,class,true,pred "
                          "or sample_id,class,true_count,pred_count"});
        return {{}, errors};
      }
      continue;
    }
    if (fields.size() != 4) {
      errors.push_back({locus, ErrorCode::kParseError,
                        "ParseError: expected 4 fields, got " +
                            std::to_string(fields.size())});
      continue;
    }
    const auto truth = ParseNumber(fields[2]);
    const auto pred = ParseNumber(fields[3]);
    if (!truth || !pred || fields[0].empty() || fields[1].empty()) {
      errors.push_back({locus, ErrorCode::kParseError,
                        "ParseError: malformed row"});
      continue;
    }
    auto [it, inserted] = index.emplace(fields[0], raws.size());
    if (inserted) {
      RawSample raw;
      raw.id = fields[0];
      raw.locus = SampleLocus(fields[0]);
      raw.counts = *counts;
      raws.push_back(std::move(raw));
    }
    RawSample& raw = raws[it->second];
    if (!seen_classes[raw.id].insert(fields[1]).second) {
      if (!raw.error) {
        raw.error = RecordError{
            raw.locus, ErrorCode::kDuplicateSample,
            "DuplicateSample: class '" + fields[1] + "' listed twice (" +
                locus + ")"};
      }
      continue;
    }
    raw.classes.push_back(fields[1]);
    raw.truth.push_back(*truth);
    raw.pred.push_back(*pred);
  }
  if (!counts && errors.empty()) return {};
  return Assemble(std::move(raws), std::move(errors));
}

IngestResult IngestJson(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  if (Trim(text).empty()) return {};
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    return {{}, {{"byte " + std::to_string(e.byte), ErrorCode::kParseError,
                  std::string("ParseError: ") + e.what()}}};
  }
  if (!doc.is_array()) {
    return {{}, {{"document", ErrorCode::kParseError,
                  "ParseError: expected a JSON array of samples"}}};
  }
  std::vector<RawSample> raws;
  std::vector<RecordError> errors;
  std::set<std::string> ids;
  for (std::size_t r = 0; r < doc.size(); ++r) {
    const auto& item = doc[r];
    const std::string locus = "record " + std::to_string(r);
    const auto bad = [&](const std::string& what) {
      errors.push_back({locus, ErrorCode::kParseError, "ParseError: " + what});
    };
    if (!item.is_object() || !item.contains("id") || !item["id"].is_string()) {
      bad("missing string field 'id'");
      continue;
    }
    RawSample raw;
    raw.id = item["id"].get<std::string>();
    raw.locus = SampleLocus(raw.id);
    if (!ids.insert(raw.id).second) {
      errors.push_back({raw.locus, ErrorCode::kDuplicateSample,
                        "DuplicateSample: id appears more than once"});
      continue;
    }
    if (item.contains("size")) {
      const auto& size = item["size"];
      if (!size.is_number_integer() || size.get<std::int64_t>() < 1) {
        errors.push_back({raw.locus, ErrorCode::kInvalidSmoothing,
                          "InvalidSmoothing: 'size' must be a positive integer"});
        continue;
      }
      raw.size = size.get<std::uint64_t>();
    }
    const auto* truth = item.contains("true") ? &item["true"] : nullptr;
    const auto* pred = item.contains("pred") ? &item["pred"] : nullptr;
    if (!truth || !pred || !truth->is_object() || !pred->is_object()) {
      bad("'true' and 'pred' must be objects");
      continue;
    }
    bool ok = true;
    for (const auto& [label, value] : truth->items()) {
      if (!value.is_number() || !pred->contains(label) ||
          !(*pred)[label].is_number()) {
        ok = false;
        break;
      }
      raw.classes.push_back(label);
      raw.truth.push_back(value.get<double>());
      raw.pred.push_back((*pred)[label].get<double>());
    }
    if (!ok || pred->size() != truth->size()) {
      if (ok) {
        errors.push_back({raw.locus, ErrorCode::kMixedCodeframes,
                          "MixedCodeframes: 'true' and 'pred' list different classes"});
      } else {
        errors.push_back({raw.locus, ErrorCode::kParseError,
                          "ParseError: non-numeric value or class missing from 'pred'"});
      }
      continue;
    }
    raws.push_back(std::move(raw));
  }
  return Assemble(std::move(raws), std::move(errors));
}

std::string FormatNumber(double v) {
  if (!std::isfinite(v)) return "null";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string Quote(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

std::optional<InputFormat> ParseInputFormat(std::string_view name) {
  if (name == "csv") return InputFormat::kCsv;
  if (name == "json") return InputFormat::kJson;
  return std::nullopt;
}

IngestResult IngestCollect(std::istream& in, InputFormat format) {
  return format == InputFormat::kCsv ? IngestCsv(in) : IngestJson(in);
}

std::vector<SampleRecord> Ingest(std::istream& in, InputFormat format) {
  IngestResult result = IngestCollect(in, format);
  if (!result.errors.empty()) {
    const auto& e = result.errors.front();
    throw Error(e.code, e.locus + ": " + e.message);
  }
  return std::move(result.records);
}

std::vector<SampleRecord> IngestFile(const std::string& path,
                                     InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  return Ingest(in, format);
}

double Mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "no values");
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double Median(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "no values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return sorted[n / 2 - 1] + (sorted[n / 2] - sorted[n / 2 - 1]) / 2.0;
}

MultiSampleReport EvaluateSamples(const std::vector<SampleRecord>& records,
                                  std::span<const Measure> measures,
                                  const EvalContext& ctx) {
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "no samples to evaluate");
  if (measures.empty()) throw Error(ErrorCode::kInvalidArgument, "no measures requested");
  MultiSampleReport report;
  report.measures.assign(measures.begin(), measures.end());
  const Codeframe& codeframe = records.front().true_prev.codeframe();
  for (const auto& record : records) {
    if (!(record.true_prev.codeframe() == codeframe) ||
        !(record.pred_prev.codeframe() == codeframe)) {
      throw Error(ErrorCode::kMixedCodeframes,
                  "sample '" + record.sample_id + "' uses a different codeframe");
    }
    if (report.per_sample.count(record.sample_id)) {
      throw Error(ErrorCode::kDuplicateSample,
                  "sample '" + record.sample_id + "' appears more than once");
    }
    EvalContext local = ctx;
    if (!ctx.smoothing.enabled() && record.sample_size) {
      local.smoothing = SmoothingConfig::FromSampleSize(*record.sample_size);
    }
    std::vector<double> scores;
    scores.reserve(measures.size());
    for (Measure m : measures) {
      try {
        scores.push_back(Score(m, record.true_prev, record.pred_prev, local));
      } catch (const Error& e) {
        throw Error(e.code(), "sample '" + record.sample_id + "': " + e.what());
      }
    }
    report.per_sample.emplace(record.sample_id, std::move(scores));
  }
  // Fold in sorted sample_id order so the result is independent of input order.
  for (std::size_t j = 0; j < measures.size(); ++j) {
    std::vector<double> column;
    column.reserve(report.per_sample.size());
    for (const auto& [id, scores] : report.per_sample) column.push_back(scores[j]);
    report.aggregates.push_back({Mean(column), Median(column)});
  }
  return report;
}

std::string ReportToJson(const MultiSampleReport& report) {
  std::ostringstream out;
  out << "{\n  \"measures\": [";
  for (std::size_t j = 0; j < report.measures.size(); ++j) {
    out << (j ? ", " : "") << Quote(std::string(MeasureName(report.measures[j])));
  }
  out << "],\n  \"per_sample\": {";
  bool first = true;
  for (const auto& [id, scores] : report.per_sample) {
    out << (first ? "\n" : ",\n") << "    " << Quote(id) << ": {";
    first = false;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      out << (j ? ", " : "") << Quote(std::string(MeasureName(report.measures[j])))
          << ": " << FormatNumber(scores[j]);
    }
    out << "}";
  }
  out << (first ? "},\n" : "\n  },\n") << "  \"aggregates\": {";
  for (std::size_t j = 0; j < report.aggregates.size(); ++j) {
    out << (j ? ",\n" : "\n") << "    "
        << Quote(std::string(MeasureName(report.measures[j])))
        << ": {\"mean\": " << FormatNumber(report.aggregates[j].mean)
        << ", \"median\": " << FormatNumber(report.aggregates[j].median) << "}";
  }
  out << (report.aggregates.empty() ? "}\n}\n" : "\n  }\n}\n");
  return out.str();
}

MultiSampleReport ReportFromJson(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  MultiSampleReport report;
  try {
    for (const auto& name : doc.at("measures")) {
      const auto m = ParseMeasure(name.get<std::string>());
      if (!m) throw Error(ErrorCode::kParseError, "unknown measure in report");
      report.measures.push_back(*m);
    }
    for (const auto& [id, scores] : doc.at("per_sample").items()) {
      std::vector<double> row;
      for (Measure m : report.measures) {
        row.push_back(scores.at(std::string(MeasureName(m))).get<double>());
      }
      report.per_sample.emplace(id, std::move(row));
    }
    const auto& aggregates = doc.at("aggregates");
    for (Measure m : report.measures) {
      const auto& a = aggregates.at(std::string(MeasureName(m)));
      report.aggregates.push_back(
          {a.at("mean").get<double>(), a.at("median").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("malformed report: ") + e.what());
  }
  return report;
}

}  // namespace emq
