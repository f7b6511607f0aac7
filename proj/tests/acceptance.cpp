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

// Standalone acceptance run: one PASS/FAIL line per criterion, nonzero exit
// status if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "asrbench/align.hpp"
#include "asrbench/disfluency.hpp"
#include "asrbench/log.hpp"
#include "asrbench/metrics.hpp"
#include "asrbench/pipeline.hpp"
#include "asrbench/report.hpp"
#include "asrbench/stats.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace asrbench;

namespace {

// Collects failed expectations for the criterion being run.
struct Checker {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

const std::filesystem::path& fixtures() {
  static const std::filesystem::path p = testing::fixture_dir();
  return p;
}

const char* kSystems[] = {"assemblyai", "deepgram", "revai", "speechmatics", "whisper_replicate"};

void worked_example(Checker& c) {
  const Alignment a = align(testing::toks("please open the windows"), testing::toks("open a window"));
  c.expect(a.counts == ErrorCounts{1, 2, 1, 0}, "counts H=1 S=2 D=1 I=0");
  const ScoreReport s = score(a.counts);
  c.expect(s.wer == 0.75, "WER 0.75");
  c.expect(s.mer == 0.75, "MER 0.75");
}

void degenerate_systems(Checker& c) {
  for (std::size_t n : {1u, 7u, 100u}) {
    c.expect(wer({0, n, 0, 0}) == 1.0 && mer({0, n, 0, 0}) == 1.0, "all substitutions give 1/1");
    c.expect(wer({0, n, 0, n}) == 2.0 && mer({0, n, 0, n}) == 1.0, "substitutions plus insertions give 2/1");
  }
}

struct NccRun {
  std::size_t reference_fillers = 0;
  std::map<std::string, DisfluencyReport> by_system;
};

NccRun run_ncc() {
  NccRun run;
  const auto ref = normalize(read_text_file(fixtures() / "ncc" / "reference" / "NCC.txt"));
  const auto doc = nlohmann::json::parse(read_text_file(fixtures() / "ncc" / "annotations.json"));
  const auto spans = parse_revision_annotations(doc.at("NCC").dump());
  run.reference_fillers = count_fillers(ref).count;
  for (const char* sys : kSystems) {
    const auto hyp = normalize(RawTranscript{read_text_file(fixtures() / "ncc" / sys / "NCC.txt"),
                                             TranscriptSource::kVendorOutput, sys});
    run.by_system[sys] = analyze_disfluencies(ref, hyp, align(ref, hyp), spans);
  }
  return run;
}

void revision_mers(Checker& c) {
  const NccRun run = run_ncc();
  // Exact rationals: every expected value is a ratio of small integers.
  const std::map<std::string, std::vector<std::pair<int, int>>> expected{
      {"assemblyai", {{2, 3}, {1, 2}, {2, 9}}},   {"deepgram", {{0, 1}, {1, 2}, {2, 9}}},
      {"revai", {{0, 1}, {1, 2}, {0, 1}}},        {"speechmatics", {{0, 1}, {1, 4}, {2, 9}}},
      {"whisper_replicate", {{1, 3}, {1, 2}, {1, 3}}},
  };
  for (const auto& [sys, want] : expected) {
    const auto& revs = run.by_system.at(sys).revisions;
    c.expect(revs.size() == 3, sys + ": three revisions");
    for (std::size_t i = 0; i < revs.size() && i < 3; ++i) {
      const double q = static_cast<double>(want[i].first) / want[i].second;
      c.expect(revs[i].mer == q, sys + " revision " + std::to_string(i + 1) + " = " + round_half_even(q) +
                                     " (got " + round_half_even(revs[i].mer) + ")");
    }
  }
}

void filler_counts(Checker& c) {
  const NccRun run = run_ncc();
  c.expect(run.reference_fillers == 20, "ground truth 20");
  const std::map<std::string, std::size_t> expected{
      {"assemblyai", 14}, {"deepgram", 17}, {"revai", 17}, {"speechmatics", 14}, {"whisper_replicate", 2}};
  for (const auto& [sys, n] : expected)
    c.expect(run.by_system.at(sys).hypothesis_fillers == n,
             sys + " " + std::to_string(n) + " (got " + std::to_string(run.by_system.at(sys).hypothesis_fillers) + ")");
}

void rate_arithmetic(Checker& c) {
  c.expect(round_half_even(112.0 / 157.0) == "0.713", "112/157 -> 0.713");
  c.expect(round_half_even(31.0 / 40.0) == "0.775", "31/40 -> 0.775");
  c.expect(round_half_even(filler_detection_rate(157, 112)) == "0.713", "detection rate helper");
  c.expect(round_half_even(repetition_retention_rate(31, 40)) == "0.775", "retention rate helper");
}

const ReportTable& difference_table(Checker& c) {
  static const ReportDocument doc = [] {
    ReportOptions o;
    o.generated_at = "1970-01-01T00:00:00Z";
    return build_report(load_records(fixtures() / "spontaneous" / "records.jsonl"), o);
  }();
  const ReportTable* t = doc.find_table("condition_difference");
  c.expect(t != nullptr, "condition_difference table present");
  static const ReportTable empty;
  return t ? *t : empty;
}

double cell(const ReportTable& t, const std::string& system, const std::string& col) {
  for (const auto& r : t.rows)
    if (std::get<std::string>(r.cells.at("system")) == system) return std::get<MetricCell>(r.cells.at(col)).raw;
  return std::nan("");
}

void grouped_means(Checker& c) {
  const ReportTable& t = difference_table(c);
  const double omitted[] = {0.122, 0.114, 0.103, 0.112, 0.142};
  const double retained[] = {0.096, 0.085, 0.063, 0.075, 0.090};
  for (int i = 0; i < 5; ++i) {
    const std::string sys = kSystems[i];
    const double o = cell(t, sys, "omitted_mean"), r = cell(t, sys, "retained_mean");
    c.expect(std::abs(o - omitted[i]) <= 0.0005, sys + " omitted mean " + round_half_even(o, 5));
    c.expect(std::abs(r - retained[i]) <= 0.0005, sys + " retained mean " + round_half_even(r, 5));
  }
}

void condition_differences(Checker& c) {
  const ReportTable& t = difference_table(c);
  const double diff[] = {0.026, 0.028, 0.040, 0.037, 0.051};
  for (int i = 0; i < 5; ++i) {
    const double d = cell(t, kSystems[i], "difference");
    c.expect(std::abs(d - diff[i]) <= 0.001, std::string(kSystems[i]) + " difference " + round_half_even(d, 5));
  }
}

void alignment_oracle(Checker& c) {
  std::vector<std::vector<std::string>> all{{}}, frontier{{}};
  for (int len = 1; len <= 6; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& s : frontier)
      for (const char* t : {"a", "b", "c"}) {
        next.push_back(s);
        next.back().push_back(t);
      }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::size_t mismatches = 0, pairs = 0;
  for (const auto& r : all) {
    const TokenSequence ref(r);
    for (const auto& h : all) {
      ++pairs;
      const Alignment a = align(ref, TokenSequence(h));
      const std::size_t d = oracle::edit_distance(r, h);
      if (a.counts.errors() != d) {
        ++mismatches;
        continue;
      }
      if (d + a.counts.hits > 0 && mer(a.counts) != static_cast<double>(d) / static_cast<double>(d + a.counts.hits))
        ++mismatches;
    }
  }
  c.expect(pairs == 1093u * 1093u, "all " + std::to_string(pairs) + " pairs visited");
  c.expect(mismatches == 0, std::to_string(mismatches) + " mismatching pairs");
}

void property_suites(Checker& c) {
  std::mt19937_64 rng(20260101);
  const std::vector<std::string> pieces{"Um", "uh,", "don\xE2\x80\x99t", "-", "\xE2\x80\x94", " ", "\t", ".",
                                        "<noise>", "Speaker 2 00:01 ", "7", "e\xCC\x81", "'", "X", "well-known"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1), len(0, 12);
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    for (std::size_t k = len(rng); k > 0; --k) s += pieces[pick(rng)];
    const std::string once = normalize(s).join();
    if (normalize(once).join() != once) ++bad;
  }
  c.expect(bad == 0, "normalization idempotence (" + std::to_string(bad) + " failures)");

  std::uniform_int_distribution<std::size_t> n(0, 40);
  bad = 0;
  for (int i = 0; i < 5000; ++i) {
    const ErrorCounts k{n(rng), n(rng), n(rng), n(rng)};
    if (k.hits + k.substitutions + k.deletions == 0) continue;
    const double m = mer(k);
    if (m < 0.0 || m > 1.0 || m > wer(k)) ++bad;
  }
  c.expect(bad == 0, "metric bounds (" + std::to_string(bad) + " failures)");

  std::uniform_int_distribution<int> v(0, 5);
  bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<double>> m(5, std::vector<double>(3)), g = m;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        m[i][j] = v(rng);
        g[i][j] = std::log1p(m[i][j]) * 10.0 - 3.0;
      }
    try {
      if (std::abs(stats::friedman(m).statistic - stats::friedman(g).statistic) > 1e-9) ++bad;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateTest) ++bad;
    }
    std::vector<double> x(7), y(7), fx(7);
    for (std::size_t i = 0; i < 7; ++i) {
      x[i] = v(rng);
      y[i] = v(rng);
      fx[i] = std::exp(x[i]);
    }
    try {
      if (std::abs(stats::spearman(x, y).statistic - stats::spearman(fx, y).statistic) > 1e-9) ++bad;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateTest) ++bad;
    }
  }
  c.expect(bad == 0, "rank-test monotone invariance (" + std::to_string(bad) + " failures)");

  std::uniform_int_distribution<std::size_t> frames(0, 2000);
  std::uniform_real_distribution<double> target(0.0, 0.4);
  bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint16_t bits = static_cast<std::uint16_t>(8 * (1 + trial % 4));
    const std::uint16_t ch = static_cast<std::uint16_t>(1 + trial % 2);
    Bytes pcm(frames(rng) * ch * (bits / 8));
    for (auto& b : pcm) b = static_cast<std::uint8_t>(rng());
    const Bytes out = pad_audio(make_wav(ch, 11025, bits, pcm), target(rng));
    const WavInfo info = parse_wav(out);
    if (!std::equal(pcm.begin(), pcm.end(), out.begin() + static_cast<std::ptrdiff_t>(info.data_offset))) ++bad;
  }
  c.expect(bad == 0, "padding keeps the sample prefix (" + std::to_string(bad) + " failures)");
}

void replay_determinism(Checker& c) {
  testing::TempDir dir;
  ResponseCache cache(dir / "cache");
  const std::vector<std::pair<std::string, std::string>> recs{
      {"ABA_0001", "Author of the danger trail."}, {"ABA_0002", "Um, not at this particular case, Tom."},
      {"SKA_0001", "For the twentieth time that evening the two men shook hands."}};
  nlohmann::json manifest = {{"speakers", {{{"id", "ABA"}, {"l1", "Arabic"}, {"gender", "M"}},
                                           {{"id", "SKA"}, {"l1", "Arabic"}, {"gender", "F"}}}},
                             {"recordings", nlohmann::json::array()}};
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& [id, text] = recs[i];
    const Bytes wav = testing::pcm16_wav(16000, 8000 + 1000 * i);
    write_file_atomic(dir / ("wav/" + id + ".wav"), std::span<const std::uint8_t>(wav));
    testing::write_text(dir / ("ref/" + id + ".txt"), text);
    manifest["recordings"].push_back({{"id", id}, {"speaker_id", id.substr(0, 3)},
                                      {"audio_path", "wav/" + id + ".wav"}, {"duration_s", 0.5},
                                      {"reference_path", "ref/" + id + ".txt"}, {"speech_type", "read"}});
    const std::string sha = sha256_hex(std::span<const std::uint8_t>(wav));
    for (const char* sys : {"deepgram", "revai"}) {
      for (auto cond : {DisfluencyCondition::kOmitted, DisfluencyCondition::kRetained}) {
        std::string hyp = text;
        if (cond == DisfluencyCondition::kOmitted && hyp.rfind("Um, ", 0) == 0) hyp = hyp.substr(4);
        if (std::string(sys) == "revai") hyp = "Speaker 0 00:00:00 " + hyp;
        cache.put(parse_backend_id(sys), cond, sha,
                  {hyp, 0.25 + 0.01 * i, "2026-02-0" + std::to_string(i + 1) + "T10:00:00Z", nlohmann::json::object()});
      }
    }
  }
  testing::write_text(dir / "manifest.json", manifest.dump(2));

  auto run = [&](const std::string& out) {
    PipelineOptions o;
    o.manifest = dir / "manifest.json";
    o.set("backend", "replay:deepgram");
    o.set("backend", "replay:revai");
    o.cache_dir = dir / "cache";
    o.max_concurrency = 3;
    o.out = dir / out;
    const RunSummary s = cmd_evaluate(o);
    c.expect(s.produced == 12 && s.failures == 0, out + ": 12 records scored without failures");
    return read_text_file(dir / out);
  };
  const std::string first = run("a.json");
  const std::string second = run("b.json");
  c.expect(!first.empty(), "report written");
  c.expect(first == second, "reports are byte-identical");
}

}  // namespace

int main() {
  asrbench::log::set_level(asrbench::log::Level::kError);
  const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria{
      {"worked-example MER/WER", worked_example},
      {"degenerate all-error systems", degenerate_systems},
      {"twelve revision MERs on the NCC narrative", revision_mers},
      {"filler counts on the NCC narrative", filler_counts},
      {"rate arithmetic to three decimals", rate_arithmetic},
      {"grouped spontaneous means", grouped_means},
      {"condition differences", condition_differences},
      {"exhaustive alignment oracle, lengths up to 6", alignment_oracle},
      {"property suites", property_suites},
      {"replay determinism", replay_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const bool ok = c.failures.empty();
    failed += !ok;
    std::printf("%s criterion %zu: %s (%.1f ms)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), ms);
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
