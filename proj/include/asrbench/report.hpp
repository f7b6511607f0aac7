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

// Evaluation records and grouped reports.
//
// Records are stored one JSON object per line. A report is a list of named
// tables; every row lists the ids of the records it was computed from.
// Metrics are kept at full precision and only rounded (half-even, three
// decimals) when displayed.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "asrbench/align.hpp"
#include "asrbench/disfluency.hpp"

namespace asrbench {

inline constexpr std::string_view kToolVersion = "0.3.0";

struct EvaluationRecord {
  std::string recording_id;
  std::string speaker_id;
  std::string l1;
  std::string gender;       // "F", "M" or empty
  std::string speech_type;  // "read", "spontaneous" or empty
  std::string backend_id;
  std::string condition;    // "omitted", "retained" or empty
  std::optional<double> mer;
  std::optional<double> wer;
  std::optional<ErrorCounts> counts;
  std::optional<double> processing_time_s;
  std::optional<double> efficiency;
  std::optional<DisfluencyReport> disfluency;
  std::optional<std::string> hypothesis_text;
  std::string captured_at;
  unsigned retries = 0;

  /// "<recording_id>|<backend_id>|<condition>"
  std::string id() const;
};

nlohmann::json to_json(const EvaluationRecord& record);
EvaluationRecord record_from_json(const nlohmann::json& j);

/// Throws kParse with the offending line number.
std::vector<EvaluationRecord> read_records(std::istream& in);
std::vector<EvaluationRecord> load_records(const std::filesystem::path& path);
void write_record(std::ostream& out, const EvaluationRecord& record);

enum class GroupField { kSystem, kL1, kGender, kSpeaker, kCondition, kSpeechType };

std::string_view to_string(GroupField f) noexcept;
GroupField parse_group_field(std::string_view s);

/// Ordered list of fields, e.g. {kSystem, kCondition}.
using GroupTemplate = std::vector<GroupField>;

/// "system,condition" -> {kSystem, kCondition}
GroupTemplate parse_group_template(std::string_view spec);

/// Empty when the record has no value for the field.
std::string field_value(const EvaluationRecord& record, GroupField field);

enum class Metric { kMer, kWer, kEfficiency, kProcessingTime };

std::string_view to_string(Metric m) noexcept;
Metric parse_metric(std::string_view s);
std::optional<double> metric_value(const EvaluationRecord& record, Metric metric);

/// Full-precision value that is displayed rounded to three decimals.
struct MetricCell {
  double raw = 0.0;
};

using CellValue = std::variant<std::string, std::int64_t, MetricCell>;

struct ReportRow {
  std::map<std::string, CellValue> cells;
  std::vector<std::string> provenance;  // record ids
};

struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<ReportRow> rows;
};

struct ReportDocument {
  std::string generated_at;
  std::string tool_version{kToolVersion};
  std::string config_digest;
  std::vector<ReportTable> tables;

  const ReportTable* find_table(std::string_view name) const;
};

struct ReportOptions {
  std::vector<GroupTemplate> groupings{{GroupField::kSystem}, {GroupField::kSystem, GroupField::kCondition}};
  std::vector<Metric> metrics{Metric::kMer, Metric::kWer, Metric::kEfficiency};
  /// Recorded as generated_at; see resolve_generated_at.
  std::string generated_at;
  /// Extra settings folded into config_digest (normalization etc.).
  nlohmann::json config = nlohmann::json::object();
};

/// Builds one table per (grouping, metric) with mean, sd and n per cell,
/// plus condition-difference, disfluency and revision tables when the
/// records support them. Throws kInvalidArgument for an empty record set.
ReportDocument build_report(const std::vector<EvaluationRecord>& records,
                            const ReportOptions& options = {});

/// Never reads the wall clock: explicit value, then SOURCE_DATE_EPOCH, then
/// the latest captured_at among the records, then the Unix epoch.
std::string resolve_generated_at(const std::vector<EvaluationRecord>& records,
                                 const std::optional<std::string>& explicit_value);

/// `value` rounded half-to-even and printed with exactly `decimals` places
/// ("0.7134" -> "0.713", "0.0125" -> "0.012", 0.5 -> "0.500").
std::string round_half_even(double value, int decimals = 3);

enum class ExportFormat { kJson, kCsv };

ExportFormat parse_export_format(std::string_view s);
std::string export_report(const ReportDocument& doc, ExportFormat format);
ReportDocument parse_report_json(std::string_view text);

/// RFC 4180 field quoting.
std::string csv_escape(std::string_view field);

}  // namespace asrbench
