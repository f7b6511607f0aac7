// Copyright 2026 The asrbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "asrbench/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "asrbench/error.hpp"
#include "asrbench/stats.hpp"
#include "asrbench/util.hpp"

namespace asrbench {

namespace fs = std::filesystem;
using nlohmann::json;

std::string EvaluationRecord::id() const {
  return recording_id + "|" + backend_id + "|" + condition;
}

// ---------------------------------------------------------------------------
// Record serialization

namespace {

json disfluency_to_json(const DisfluencyReport& d) {
  json revisions = json::array();
  for (const auto& r : d.revisions) {
    revisions.push_back({{"ref_start", r.span.ref_start},
                         {"ref_end", r.span.ref_end},
                         {"label", r.span.label},
                         {"hypothesis_tokens", r.hypothesis_tokens},
                         {"mer", r.mer},
                         {"accuracy", r.accuracy}});
  }
  return {{"reference_fillers", d.reference_fillers},
          {"hypothesis_fillers", d.hypothesis_fillers},
          {"reference_repetitions", d.reference_repetitions},
          {"hypothesis_repetitions", d.hypothesis_repetitions},
          {"retained_repetitions", d.retained_repetitions},
          {"revisions", revisions}};
}

DisfluencyReport disfluency_from_json(const json& j) {
  DisfluencyReport d;
  d.reference_fillers = j.at("reference_fillers").get<std::size_t>();
  d.hypothesis_fillers = j.at("hypothesis_fillers").get<std::size_t>();
  d.reference_repetitions = j.at("reference_repetitions").get<std::size_t>();
  d.hypothesis_repetitions = j.at("hypothesis_repetitions").get<std::size_t>();
  d.retained_repetitions = j.at("retained_repetitions").get<std::size_t>();
  for (const auto& r : j.value("revisions", json::array())) {
    RevisionScore s;
    s.span.ref_start = r.at("ref_start").get<std::size_t>();
    s.span.ref_end = r.at("ref_end").get<std::size_t>();
    s.span.label = r.value("label", "");
    s.hypothesis_tokens = r.value("hypothesis_tokens", std::vector<std::string>{});
    s.mer = r.at("mer").get<double>();
    s.accuracy = r.value("accuracy", 1.0 - s.mer);
    d.revisions.push_back(std::move(s));
  }
  return d;
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

}  // namespace

json to_json(const EvaluationRecord& r) {
  json j = {{"recording_id", r.recording_id}, {"speaker_id", r.speaker_id},
            {"l1", r.l1},                     {"gender", r.gender},
            {"speech_type", r.speech_type},   {"backend_id", r.backend_id},
            {"condition", r.condition},       {"captured_at", r.captured_at},
            {"retries", r.retries}};
  if (r.mer) j["mer"] = *r.mer;
  if (r.wer) j["wer"] = *r.wer;
  if (r.counts)
    j["counts"] = {{"hits", r.counts->hits},
                   {"substitutions", r.counts->substitutions},
                   {"deletions", r.counts->deletions},
                   {"insertions", r.counts->insertions}};
  if (r.processing_time_s) j["processing_time_s"] = *r.processing_time_s;
  if (r.efficiency) j["efficiency"] = *r.efficiency;
  if (r.disfluency) j["disfluency"] = disfluency_to_json(*r.disfluency);
  if (r.hypothesis_text) j["hypothesis_text"] = *r.hypothesis_text;
  return j;
}

EvaluationRecord record_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::kParse, "record: object expected");
  try {
    EvaluationRecord r;
    r.recording_id = j.at("recording_id").get<std::string>();
    r.backend_id = j.at("backend_id").get<std::string>();
    if (r.recording_id.empty() || r.backend_id.empty())
      fail(ErrorCode::kParse, "record: recording_id and backend_id must be nonempty");
    r.speaker_id = j.value("speaker_id", "");
    r.l1 = j.value("l1", "");
    r.gender = j.value("gender", "");
    r.speech_type = j.value("speech_type", "");
    r.condition = j.value("condition", "");
    r.captured_at = j.value("captured_at", "");
    r.retries = j.value("retries", 0u);
    r.mer = optional_field<double>(j, "mer");
    r.wer = optional_field<double>(j, "wer");
    r.processing_time_s = optional_field<double>(j, "processing_time_s");
    r.efficiency = optional_field<double>(j, "efficiency");
    r.hypothesis_text = optional_field<std::string>(j, "hypothesis_text");
    if (auto c = j.find("counts"); c != j.end() && !c->is_null()) {
      r.counts = ErrorCounts{c->at("hits").get<std::size_t>(), c->at("substitutions").get<std::size_t>(),
                             c->at("deletions").get<std::size_t>(), c->at("insertions").get<std::size_t>()};
    }
    if (auto d = j.find("disfluency"); d != j.end() && !d->is_null())
      r.disfluency = disfluency_from_json(*d);
    return r;
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("record: ") + e.what());
  }
}

std::vector<EvaluationRecord> read_records(std::istream& in) {
  std::vector<EvaluationRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      fail(ErrorCode::kParse, "records line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      fail(e.code(), "records line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<EvaluationRecord> load_records(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  return read_records(in);
}

void write_record(std::ostream& out, const EvaluationRecord& record) {
  out << to_json(record).dump() << '\n';
}

// ---------------------------------------------------------------------------
// Grouping and metrics

std::string_view to_string(GroupField f) noexcept {
  switch (f) {
    case GroupField::kSystem: return "system";
    case GroupField::kL1: return "l1";
    case GroupField::kGender: return "gender";
    case GroupField::kSpeaker: return "speaker";
    case GroupField::kCondition: return "condition";
    case GroupField::kSpeechType: return "speech_type";
  }
  return "unknown";
}

GroupField parse_group_field(std::string_view s) {
  for (auto f : {GroupField::kSystem, GroupField::kL1, GroupField::kGender, GroupField::kSpeaker,
                 GroupField::kCondition, GroupField::kSpeechType})
    if (s == to_string(f)) return f;
  if (s == "backend") return GroupField::kSystem;
  fail(ErrorCode::kInvalidArgument, "unknown group field '" + std::string(s) + "'");
}

GroupTemplate parse_group_template(std::string_view spec) {
  GroupTemplate out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t comma = std::min(spec.find(',', pos), spec.size());
    std::string_view part = spec.substr(pos, comma - pos);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (part.empty()) fail(ErrorCode::kInvalidArgument, "empty field in grouping '" + std::string(spec) + "'");
    const GroupField f = parse_group_field(part);
    if (std::find(out.begin(), out.end(), f) != out.end())
      fail(ErrorCode::kInvalidArgument, "repeated field in grouping '" + std::string(spec) + "'");
    out.push_back(f);
    pos = comma + 1;
  }
  return out;
}

std::string field_value(const EvaluationRecord& r, GroupField field) {
  switch (field) {
    case GroupField::kSystem: return r.backend_id;
    case GroupField::kL1: return r.l1;
    case GroupField::kGender: return r.gender;
    case GroupField::kSpeaker: return r.speaker_id;
    case GroupField::kCondition: return r.condition;
    case GroupField::kSpeechType: return r.speech_type;
  }
  return {};
}

std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::kMer: return "mer";
    case Metric::kWer: return "wer";
    case Metric::kEfficiency: return "efficiency";
    case Metric::kProcessingTime: return "processing_time";
  }
  return "unknown";
}

Metric parse_metric(std::string_view s) {
  for (auto m : {Metric::kMer, Metric::kWer, Metric::kEfficiency, Metric::kProcessingTime})
    if (s == to_string(m)) return m;
  fail(ErrorCode::kInvalidArgument, "unknown metric '" + std::string(s) + "'");
}

std::optional<double> metric_value(const EvaluationRecord& r, Metric metric) {
  switch (metric) {
    case Metric::kMer: return r.mer;
    case Metric::kWer: return r.wer;
    case Metric::kEfficiency: return r.efficiency;
    case Metric::kProcessingTime: return r.processing_time_s;
  }
  return std::nullopt;
}

const ReportTable* ReportDocument::find_table(std::string_view name) const {
  for (const auto& t : tables)
    if (t.name == name) return &t;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Report construction

namespace {

using RecordPtrs = std::vector<const EvaluationRecord*>;

std::vector<std::string> provenance_of(const RecordPtrs& records) {
  std::vector<std::string> ids;
  ids.reserve(records.size());
  for (const auto* r : records) ids.push_back(r->id());
  std::sort(ids.begin(), ids.end());
  return ids;
}

void put_mean_sd(ReportRow& row, const std::string& prefix, const std::vector<double>& values) {
  if (values.empty()) return;
  const stats::MeanSd m = stats::mean_sd(values);
  row.cells[prefix + "_mean"] = MetricCell{m.mean};
  if (m.sd) row.cells[prefix + "_sd"] = MetricCell{*m.sd};
  row.cells[prefix + "_n"] = static_cast<std::int64_t>(m.n);
}

ReportTable grouped_table(const std::vector<EvaluationRecord>& records, const GroupTemplate& tmpl,
                          const std::vector<Metric>& metrics) {
  ReportTable table;
  table.name = "by";
  for (auto f : tmpl) {
    table.name += "_" + std::string(to_string(f));
    table.columns.emplace_back(to_string(f));
  }
  for (auto m : metrics)
    for (const char* suffix : {"_mean", "_sd", "_n"})
      table.columns.push_back(std::string(to_string(m)) + suffix);

  std::map<std::vector<std::string>, RecordPtrs> groups;
  for (const auto& r : records) {
    std::vector<std::string> key;
    bool complete = true;
    for (auto f : tmpl) {
      key.push_back(field_value(r, f));
      complete = complete && !key.back().empty();
    }
    if (complete) groups[std::move(key)].push_back(&r);
  }

  for (const auto& [key, members] : groups) {
    ReportRow row;
    for (std::size_t i = 0; i < tmpl.size(); ++i) row.cells[std::string(to_string(tmpl[i]))] = key[i];
    bool any = false;
    for (auto m : metrics) {
      std::vector<double> values;
      for (const auto* r : members)
        if (auto v = metric_value(*r, m)) values.push_back(*v);
      any = any || !values.empty();
      put_mean_sd(row, std::string(to_string(m)), values);
    }
    if (!any) continue;
    row.provenance = provenance_of(members);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::optional<ReportTable> condition_difference_table(const std::vector<EvaluationRecord>& records) {
  struct Side {
    std::map<std::string, double> by_recording;
    RecordPtrs members;
  };
  std::map<std::string, std::pair<Side, Side>> systems;  // omitted, retained
  for (const auto& r : records) {
    if (!r.mer) continue;
    if (r.condition == "omitted" || r.condition == "retained") {
      auto& pair = systems[r.backend_id];
      Side& side = r.condition == "omitted" ? pair.first : pair.second;
      side.by_recording[r.recording_id] = *r.mer;
      side.members.push_back(&r);
    }
  }

  ReportTable table;
  table.name = "condition_difference";
  table.columns = {"system",       "omitted_mean", "omitted_sd", "omitted_n", "retained_mean",
                   "retained_sd",  "retained_n",   "difference", "pairs",     "t",
                   "df",           "p"};
  for (const auto& [system, sides] : systems) {
    const auto& [omitted, retained] = sides;
    if (omitted.members.empty() || retained.members.empty()) continue;
    std::vector<double> o, r;
    for (const auto& [id, v] : omitted.by_recording) o.push_back(v);
    for (const auto& [id, v] : retained.by_recording) r.push_back(v);

    ReportRow row;
    row.cells["system"] = system;
    put_mean_sd(row, "omitted", o);
    put_mean_sd(row, "retained", r);
    row.cells["difference"] = MetricCell{stats::mean(o) - stats::mean(r)};

    std::vector<double> po, pr;
    for (const auto& [id, v] : omitted.by_recording) {
      if (auto it = retained.by_recording.find(id); it != retained.by_recording.end()) {
        po.push_back(v);
        pr.push_back(it->second);
      }
    }
    row.cells["pairs"] = static_cast<std::int64_t>(po.size());
    if (po.size() >= 2) {
      try {
        const stats::TestResult t = stats::paired_t(po, pr);
        row.cells["t"] = MetricCell{t.statistic};
        row.cells["df"] = static_cast<std::int64_t>(std::llround(t.df));
        row.cells["p"] = MetricCell{t.p_value};
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDegenerateTest) throw;
      }
    }
    RecordPtrs all = omitted.members;
    all.insert(all.end(), retained.members.begin(), retained.members.end());
    row.provenance = provenance_of(all);
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) return std::nullopt;
  return table;
}

std::optional<ReportTable> disfluency_table(const std::vector<EvaluationRecord>& records) {
  std::map<std::pair<std::string, std::string>, RecordPtrs> groups;
  for (const auto& r : records)
    if (r.disfluency) groups[{r.backend_id, r.condition}].push_back(&r);
  if (groups.empty()) return std::nullopt;

  ReportTable table;
  table.name = "disfluency";
  table.columns = {"system",
                   "condition",
                   "recordings",
                   "reference_fillers",
                   "hypothesis_fillers",
                   "filler_detection_rate",
                   "reference_repetitions",
                   "hypothesis_repetitions",
                   "retained_repetitions",
                   "repetition_retention_rate",
                   "revisions",
                   "revision_mer_mean"};
  for (const auto& [key, members] : groups) {
    DisfluencyReport total;
    std::vector<double> revision_mers;
    for (const auto* r : members) {
      const auto& d = *r->disfluency;
      total.reference_fillers += d.reference_fillers;
      total.hypothesis_fillers += d.hypothesis_fillers;
      total.reference_repetitions += d.reference_repetitions;
      total.hypothesis_repetitions += d.hypothesis_repetitions;
      total.retained_repetitions += d.retained_repetitions;
      for (const auto& rev : d.revisions) revision_mers.push_back(rev.mer);
    }
    ReportRow row;
    row.cells["system"] = key.first;
    row.cells["condition"] = key.second;
    row.cells["recordings"] = static_cast<std::int64_t>(members.size());
    row.cells["reference_fillers"] = static_cast<std::int64_t>(total.reference_fillers);
    row.cells["hypothesis_fillers"] = static_cast<std::int64_t>(total.hypothesis_fillers);
    if (auto rate = total.filler_detection_rate()) row.cells["filler_detection_rate"] = MetricCell{*rate};
    row.cells["reference_repetitions"] = static_cast<std::int64_t>(total.reference_repetitions);
    row.cells["hypothesis_repetitions"] = static_cast<std::int64_t>(total.hypothesis_repetitions);
    row.cells["retained_repetitions"] = static_cast<std::int64_t>(total.retained_repetitions);
    if (auto rate = total.repetition_retention_rate())
      row.cells["repetition_retention_rate"] = MetricCell{*rate};
    row.cells["revisions"] = static_cast<std::int64_t>(revision_mers.size());
    if (!revision_mers.empty()) row.cells["revision_mer_mean"] = MetricCell{stats::mean(revision_mers)};
    row.provenance = provenance_of(members);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::optional<ReportTable> revisions_table(const std::vector<EvaluationRecord>& records) {
  ReportTable table;
  table.name = "revisions";
  table.columns = {"recording", "system", "condition", "label", "ref_start", "ref_end", "hypothesis", "mer"};
  RecordPtrs sorted;
  for (const auto& r : records)
    if (r.disfluency && !r.disfluency->revisions.empty()) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return a->id() < b->id(); });
  for (const auto* r : sorted) {
    for (const auto& rev : r->disfluency->revisions) {
      ReportRow row;
      row.cells["recording"] = r->recording_id;
      row.cells["system"] = r->backend_id;
      row.cells["condition"] = r->condition;
      row.cells["label"] = rev.span.label;
      row.cells["ref_start"] = static_cast<std::int64_t>(rev.span.ref_start);
      row.cells["ref_end"] = static_cast<std::int64_t>(rev.span.ref_end);
      std::string hyp;
      for (const auto& t : rev.hypothesis_tokens) hyp += (hyp.empty() ? "" : " ") + t;
      row.cells["hypothesis"] = hyp;
      row.cells["mer"] = MetricCell{rev.mer};
      row.provenance = {r->id()};
      table.rows.push_back(std::move(row));
    }
  }
  if (table.rows.empty()) return std::nullopt;
  return table;
}

}  // namespace

std::string resolve_generated_at(const std::vector<EvaluationRecord>& records,
                                 const std::optional<std::string>& explicit_value) {
  if (explicit_value && !explicit_value->empty()) return *explicit_value;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    std::int64_t secs = 0;
    const char* end = epoch + std::char_traits<char>::length(epoch);
    auto [ptr, ec] = std::from_chars(epoch, end, secs);
    if (ec != std::errc() || ptr != end)
      fail(ErrorCode::kConfig, "SOURCE_DATE_EPOCH must be an integer");
    return format_utc_timestamp(secs);
  }
  std::string latest;
  for (const auto& r : records) latest = std::max(latest, r.captured_at);
  return latest.empty() ? format_utc_timestamp(0) : latest;
}

ReportDocument build_report(const std::vector<EvaluationRecord>& input, const ReportOptions& options) {
  if (input.empty()) fail(ErrorCode::kInvalidArgument, "cannot build a report from zero records");
  // Canonical order keeps floating-point sums independent of input order.
  std::vector<EvaluationRecord> records = input;
  std::stable_sort(records.begin(), records.end(),
                   [](const auto& a, const auto& b) { return a.id() < b.id(); });
  if (options.groupings.empty()) fail(ErrorCode::kInvalidArgument, "at least one grouping is required");
  for (const auto& g : options.groupings)
    if (g.empty()) fail(ErrorCode::kInvalidArgument, "grouping templates need at least one field");

  ReportDocument doc;
  doc.generated_at = options.generated_at.empty() ? resolve_generated_at(records, std::nullopt)
                                                  : options.generated_at;

  json config = {{"groupings", json::array()}, {"metrics", json::array()}, {"settings", options.config}};
  for (const auto& g : options.groupings) {
    json fields = json::array();
    for (auto f : g) fields.push_back(std::string(to_string(f)));
    config["groupings"].push_back(fields);
  }
  for (auto m : options.metrics) config["metrics"].push_back(std::string(to_string(m)));
  doc.config_digest = sha256_hex(config.dump());

  std::set<std::string> seen;
  for (const auto& g : options.groupings) {
    ReportTable t = grouped_table(records, g, options.metrics);
    if (!seen.insert(t.name).second) continue;
    doc.tables.push_back(std::move(t));
  }
  if (auto t = condition_difference_table(records)) doc.tables.push_back(std::move(*t));
  if (auto t = disfluency_table(records)) doc.tables.push_back(std::move(*t));
  if (auto t = revisions_table(records)) doc.tables.push_back(std::move(*t));
  return doc;
}

// ---------------------------------------------------------------------------
// Export

std::string round_half_even(double value, int decimals) {
  if (!std::isfinite(value)) fail(ErrorCode::kInvalidArgument, "cannot display a non-finite value");
  if (decimals < 0 || decimals > 17) fail(ErrorCode::kInvalidArgument, "decimals out of range");

  // Round the shortest round-trip decimal form, so 0.0125 is treated as written.
  char buf[400];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::abs(value), std::chars_format::fixed);
  if (ec != std::errc()) fail(ErrorCode::kInternal, "number formatting failed");
  std::string text(buf, end);
  const auto dot = text.find('.');
  std::string digits = dot == std::string::npos ? text : text.substr(0, dot) + text.substr(dot + 1);
  const std::size_t int_len = dot == std::string::npos ? text.size() : dot;
  std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);

  std::string kept = text.substr(0, int_len) + frac.substr(0, std::min<std::size_t>(frac.size(), decimals));
  kept.append(decimals - std::min<std::size_t>(frac.size(), decimals), '0');
  if (frac.size() > static_cast<std::size_t>(decimals)) {
    const char next = frac[decimals];
    const bool tail_nonzero = frac.find_first_not_of('0', decimals + 1) != std::string::npos;
    const bool last_odd = ((kept.back() - '0') & 1) != 0;
    if (next > '5' || (next == '5' && (tail_nonzero || last_odd))) {
      int i = static_cast<int>(kept.size()) - 1;
      while (i >= 0 && kept[i] == '9') kept[i--] = '0';
      if (i < 0) {
        kept.insert(kept.begin(), '1');
      } else {
        ++kept[i];
      }
    }
  }
  const std::size_t split = kept.size() - decimals;
  std::string out = kept.substr(0, split);
  if (decimals > 0) out += "." + kept.substr(split);
  const bool zero = out.find_first_not_of("0.") == std::string::npos;
  return (value < 0 && !zero) ? "-" + out : out;
}

ExportFormat parse_export_format(std::string_view s) {
  if (s == "json") return ExportFormat::kJson;
  if (s == "csv") return ExportFormat::kCsv;
  fail(ErrorCode::kInvalidArgument, "format must be json or csv, got '" + std::string(s) + "'");
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

json display_number(double raw) { return json::parse(round_half_even(raw)); }

json table_to_json(const ReportTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json cells = json::object();
    for (const auto& [col, value] : row.cells) {
      std::visit(
          [&, col = col](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, MetricCell>) {
              if (!std::isfinite(v.raw)) fail(ErrorCode::kInternal, "non-finite value in column " + col);
              cells[col] = display_number(v.raw);
              cells[col + "_raw"] = v.raw;
            } else {
              cells[col] = v;
            }
          },
          value);
    }
    rows.push_back({{"cells", cells}, {"provenance", row.provenance}});
  }
  return {{"name", t.name}, {"columns", t.columns}, {"rows", rows}};
}

std::string csv_cell(const CellValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using V = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<V, MetricCell>) return round_half_even(x.raw);
        else if constexpr (std::is_same_v<V, std::int64_t>) return std::to_string(x);
        else return csv_escape(x);
      },
      v);
}

}  // namespace

std::string export_report(const ReportDocument& doc, ExportFormat format) {
  if (format == ExportFormat::kJson) {
    json tables = json::array();
    for (const auto& t : doc.tables) tables.push_back(table_to_json(t));
    const json j = {{"generated_at", doc.generated_at},
                    {"tool_version", doc.tool_version},
                    {"config_digest", doc.config_digest},
                    {"tables", tables}};
    return j.dump(2) + "\n";
  }

  std::string out;
  out += "# generated_at: " + doc.generated_at + "\r\n";
  out += "# tool_version: " + doc.tool_version + "\r\n";
  out += "# config_digest: " + doc.config_digest + "\r\n";
  for (const auto& t : doc.tables) {
    out += "\r\n# table: " + t.name + "\r\n";
    for (const auto& c : t.columns) out += csv_escape(c) + ",";
    out += "provenance\r\n";
    for (const auto& row : t.rows) {
      for (const auto& c : t.columns) {
        if (auto it = row.cells.find(c); it != row.cells.end()) out += csv_cell(it->second);
        out += ",";
      }
      std::string prov;
      for (const auto& p : row.provenance) prov += (prov.empty() ? "" : ";") + p;
      out += csv_escape(prov) + "\r\n";
    }
  }
  return out;
}

ReportDocument parse_report_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    ReportDocument doc;
    doc.generated_at = j.at("generated_at").get<std::string>();
    doc.tool_version = j.at("tool_version").get<std::string>();
    doc.config_digest = j.at("config_digest").get<std::string>();
    for (const auto& jt : j.at("tables")) {
      ReportTable t;
      t.name = jt.at("name").get<std::string>();
      t.columns = jt.at("columns").get<std::vector<std::string>>();
      for (const auto& jr : jt.at("rows")) {
        ReportRow row;
        row.provenance = jr.at("provenance").get<std::vector<std::string>>();
        const json& cells = jr.at("cells");
        for (auto it = cells.begin(); it != cells.end(); ++it) {
          const std::string& key = it.key();
          if (cells.contains(key + "_raw")) {
            row.cells[key] = MetricCell{cells.at(key + "_raw").get<double>()};
          } else if (key.size() > 4 && key.ends_with("_raw") &&
                     cells.contains(key.substr(0, key.size() - 4))) {
            continue;
          } else if (it->is_string()) {
            row.cells[key] = it->get<std::string>();
          } else if (it->is_number_integer()) {
            row.cells[key] = it->get<std::int64_t>();
          } else {
            fail(ErrorCode::kParse, "report: unexpected value in column " + key);
          }
        }
        t.rows.push_back(std::move(row));
      }
      doc.tables.push_back(std::move(t));
    }
    return doc;
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("report: ") + e.what());
  }
}

}  // namespace asrbench
