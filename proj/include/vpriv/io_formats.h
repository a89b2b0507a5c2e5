// Copyright (c) 2026 vpriv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VPRIV_IO_FORMATS_H_
#define VPRIV_IO_FORMATS_H_

// Line-oriented text formats. Common rules for every parser:
//  - UTF-8, LF line endings; a CR anywhere is a syntax error
//  - blank lines and lines whose first non-blank byte is '#' are skipped
//  - fields are separated by runs of spaces or tabs
//  - reals are finite decimal numbers (std::from_chars syntax, no '+')
//  - unknown trailing fields are an error
// Errors are ParseError with the 1-based line of the first offending line.
//
// Serializers emit the canonical form: single-space separators, reals in
// shortest round-trip form (std::to_chars), records sorted by primary id,
// one trailing newline per record.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vpriv/f0_transform.h"
#include "vpriv/metrics.h"
#include "vpriv/plda.h"
#include "vpriv/pseudo_speaker.h"

namespace vpriv {

std::string FormatReal(double v);

struct NamedStats {
  std::string id;
  LogF0Stats stats;

  bool operator==(const NamedStats&) const = default;
};

// `<source_speaker_id> <seed_used> <member_id>...`
struct MappingRecord {
  std::string source_speaker_id;
  std::uint64_t seed_used = 0;
  std::vector<std::string> member_ids;

  bool operator==(const MappingRecord&) const = default;
};

struct ScoreRecord {
  std::string enroll_speaker_id;
  std::string test_utterance_id;
  double score = 0.0;

  bool operator==(const ScoreRecord&) const = default;
};

struct TrialKeyRecord {
  std::string enroll_speaker_id;
  std::string test_utterance_id;
  bool target = false;

  bool operator==(const TrialKeyRecord&) const = default;
};

struct KeyValue {
  std::string key;
  std::vector<std::string> values;
  std::size_t line = 0;
};

// Per-file bookkeeping; checksum is the SHA-256 hex digest of the canonical
// serialization.
struct Manifest {
  std::string format_version;
  std::size_t record_count = 0;
  std::string checksum;

  bool operator==(const Manifest&) const = default;
};

inline constexpr std::string_view kFormatVersion = "1";

std::string Sha256Hex(std::string_view bytes);
Manifest MakeManifest(std::size_t record_count, std::string_view canonical);

// `<utterance_id> <v1> ... <vN>`, Hz, 0 for unvoiced.
std::vector<F0Contour> ParseContours(std::string_view text);
std::string SerializeContours(std::vector<F0Contour> contours);

// `<id> <mean> <std> <voiced_count>`.
std::vector<NamedStats> ParseStats(std::string_view text);
std::string SerializeStats(std::vector<NamedStats> stats);

// `<speaker_id> <utterance_id|-> <M|F> <d reals>`. All records share one
// dimension; expected_dim pins it when given.
std::vector<SpeakerEmbedding> ParseEmbeddings(
    std::string_view text, std::optional<std::size_t> expected_dim = {});
std::string SerializeEmbeddings(std::vector<SpeakerEmbedding> embeddings);

// `<speaker_id> <M|F> <d reals> | <f0_mean> <f0_std> <voiced_count>`.
// The returned pool has no PLDA model attached.
SpeakerPool ParsePoolManifest(std::string_view text);
std::string SerializePoolManifest(SpeakerPool pool);

// dim d / mean <d> / d x (transform <d>) / psi <d>.
PldaModel ParsePldaModel(std::string_view text);
std::string SerializePldaModel(const PldaModel& model);

std::vector<MappingRecord> ParseMapping(std::string_view text);
std::string SerializeMapping(std::vector<MappingRecord> records);
MappingRecord ToMappingRecord(const PseudoSpeaker& p);

// `<enroll_speaker_id> <test_utterance_id> <score>`.
std::vector<ScoreRecord> ParseScores(std::string_view text);
std::string SerializeScores(std::vector<ScoreRecord> records);

// `<enroll_speaker_id> <test_utterance_id> <target|nontarget>`.
std::vector<TrialKeyRecord> ParseTrialKey(std::string_view text);
std::string SerializeTrialKey(std::vector<TrialKeyRecord> records);

// Evaluation report as written to disk. EER is kept in percent so the text
// form round-trips exactly.
struct ReportRecord {
  double eer_pct = 0.0;
  double cllr_bits = 0.0;
  double min_cllr_bits = 0.0;
  std::size_t n_target = 0;
  std::size_t n_nontarget = 0;

  bool operator==(const ReportRecord&) const = default;
};

ReportRecord ToReportRecord(const EvaluationReport& report);

// `<key> <value>` lines for eer_pct, cllr_bits, min_cllr_bits, n_target,
// n_nontarget, in that order.
ReportRecord ParseReport(std::string_view text);
std::string SerializeReport(const ReportRecord& report);

// `<Pfa> <Pmiss>` rows, order preserved.
std::vector<DetPoint> ParseDet(std::string_view text);
std::string SerializeDet(const std::vector<DetPoint>& points);

// `<key> <value>...`; duplicate keys are an error. Order preserved.
std::vector<KeyValue> ParseKeyValues(std::string_view text);
std::string SerializeKeyValues(const std::vector<KeyValue>& entries);

// Joins scores onto a trial key. Every key trial needs a score
// (kMissingId); scores absent from the key are ignored.
TrialScoreSet JoinScores(const std::vector<ScoreRecord>& scores,
                         const std::vector<TrialKeyRecord>& key);

// Whole-file helpers; throw kIo.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace vpriv

#endif  // VPRIV_IO_FORMATS_H_
