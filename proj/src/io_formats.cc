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

#include "vpriv/io_formats.h"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "vpriv/error.h"

namespace vpriv {

namespace {

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Field> fields;
};

bool IsBlank(char c) { return c == ' ' || c == '\t'; }

// Splits text into non-comment, non-blank lines of fields.
std::vector<Line> SplitLines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++number;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;

    for (std::size_t i = 0; i < raw.size(); ++i) {
      const auto c = static_cast<unsigned char>(raw[i]);
      if ((c < 0x20 && c != '\t') || c == 0x7f) {
        throw ParseError(ErrorCode::kSyntaxError, number, i + 1,
                         c == '\r' ? "CR line endings are not allowed"
                                   : "control character in line");
      }
    }
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && IsBlank(raw[i])) ++i;
      if (i >= raw.size()) break;
      const std::size_t start = i;
      while (i < raw.size() && !IsBlank(raw[i])) ++i;
      line.fields.push_back({raw.substr(start, i - start), start + 1});
    }
    if (line.fields.empty() || line.fields.front().text.front() == '#') {
      continue;
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void Fail(ErrorCode code, const Line& line, const Field* field,
                       const std::string& message) {
  throw ParseError(code, line.number, field ? field->column : 0, message);
}

void ExpectFields(const Line& line, std::size_t n, const char* what) {
  if (line.fields.size() != n) {
    Fail(ErrorCode::kSyntaxError, line,
         line.fields.size() > n ? &line.fields[n] : nullptr,
         std::string(what) + " needs " + std::to_string(n) + " fields, found " +
             std::to_string(line.fields.size()));
  }
}

double ParseReal(const Line& line, const Field& f) {
  double v = 0.0;
  const char* first = f.text.data();
  const char* last = first + f.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    Fail(ErrorCode::kInvalidValue, line, &f,
         "'" + std::string(f.text) + "' is not a real number");
  }
  if (!std::isfinite(v)) {
    Fail(ErrorCode::kInvalidValue, line, &f,
         "'" + std::string(f.text) + "' is not finite");
  }
  return v;
}

std::uint64_t ParseUint(const Line& line, const Field& f) {
  std::uint64_t v = 0;
  const char* first = f.text.data();
  const char* last = first + f.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    Fail(ErrorCode::kInvalidValue, line, &f,
         "'" + std::string(f.text) + "' is not an unsigned integer");
  }
  return v;
}

Gender ParseGender(const Line& line, const Field& f) {
  if (f.text == "M") return Gender::kMale;
  if (f.text == "F") return Gender::kFemale;
  Fail(ErrorCode::kInvalidValue, line, &f,
       "gender must be M or F, found '" + std::string(f.text) + "'");
}

std::string ParseId(const Line& line, const Field& f) {
  if (f.text == "|" || f.text.front() == '#') {
    Fail(ErrorCode::kInvalidValue, line, &f,
         "'" + std::string(f.text) + "' is not a valid id");
  }
  return std::string(f.text);
}

// Ids must survive the tokenizer unchanged.
void CheckId(const std::string& id) {
  bool ok = !id.empty() && id.front() != '#' && id != "|";
  for (char c : id) {
    const auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || u == 0x7f) ok = false;
  }
  if (!ok) {
    throw Error(ErrorCode::kInvalidValue,
                "id '" + id + "' cannot be written to a text file");
  }
}

void AppendReal(std::string& out, double v) {
  out += ' ';
  out += FormatReal(v);
}

}  // namespace

std::string FormatReal(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 computation failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

Manifest MakeManifest(std::size_t record_count, std::string_view canonical) {
  return {std::string(kFormatVersion), record_count, Sha256Hex(canonical)};
}

// ---------------------------------------------------------------- contours

std::vector<F0Contour> ParseContours(std::string_view text) {
  std::vector<F0Contour> out;
  std::set<std::string> seen;
  for (const auto& line : SplitLines(text)) {
    F0Contour c;
    c.utterance_id = ParseId(line, line.fields[0]);
    if (!seen.insert(c.utterance_id).second) {
      Fail(ErrorCode::kInvalidValue, line, &line.fields[0],
           "duplicate utterance '" + c.utterance_id + "'");
    }
    for (std::size_t i = 1; i < line.fields.size(); ++i) {
      const double v = ParseReal(line, line.fields[i]);
      if (v < 0.0) {
        Fail(ErrorCode::kInvalidValue, line, &line.fields[i],
             "F0 values must be >= 0");
      }
      c.values.push_back(v);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string SerializeContours(std::vector<F0Contour> contours) {
  std::sort(contours.begin(), contours.end(),
            [](const F0Contour& a, const F0Contour& b) {
              return a.utterance_id < b.utterance_id;
            });
  std::string out;
  for (const auto& c : contours) {
    CheckId(c.utterance_id);
    out += c.utterance_id;
    for (double v : c.values) AppendReal(out, v);
    out += '\n';
  }
  return out;
}

// ------------------------------------------------------------------- stats

std::vector<NamedStats> ParseStats(std::string_view text) {
  std::vector<NamedStats> out;
  std::set<std::string> seen;
  for (const auto& line : SplitLines(text)) {
    ExpectFields(line, 4, "stats record");
    NamedStats s;
    s.id = ParseId(line, line.fields[0]);
    if (!seen.insert(s.id).second) {
      Fail(ErrorCode::kInvalidValue, line, &line.fields[0],
           "duplicate id '" + s.id + "'");
    }
    s.stats.mean = ParseReal(line, line.fields[1]);
    s.stats.std = ParseReal(line, line.fields[2]);
    if (s.stats.std < 0.0) {
      Fail(ErrorCode::kInvalidValue, line, &line.fields[2], "std must be >= 0");
    }
    s.stats.voiced_frame_count = ParseUint(line, line.fields[3]);
    if (s.stats.voiced_frame_count == 0) {
      Fail(ErrorCode::kInvalidValue, line, &line.fields[3],
           "voiced_count must be >= 1");
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string SerializeStats(std::vector<NamedStats> stats) {
  std::sort(
      stats.begin(), stats.end(),
      [](const NamedStats& a, const NamedStats& b) { return a.id < b.id; });
  std::string out;
  for (const auto& s : stats) {
    CheckId(s.id);
    out += s.id;
    AppendReal(out, s.stats.mean);
    AppendReal(out, s.stats.std);
    out += ' ';
    out += std::to_string(s.stats.voiced_frame_count);
    out += '\n';
  }
  return out;
}

// -------------------------------------------------------------- embeddings

std::vector<SpeakerEmbedding> ParseEmbeddings(
    std::string_view text, std::optional<std::size_t> expected_dim) {
  std::vector<SpeakerEmbedding> out;
  std::set<std::pair<std::string, std::string>> seen;
  std::optional<std::size_t> dim = expected_dim;
  for (const auto& line : SplitLines(text)) {
    if (line.fields.size() < 4) {
      Fail(ErrorCode::kSyntaxError, line, nullptr,
           "embedding record needs speaker, utterance, gender and values");
    }
    const std::size_t d = line.fields.size() - 3;
    if (dim && *dim != d) {
      Fail(ErrorCode::kDimensionMismatch, line, nullptr,
           "embedding has " + std::to_string(d) + " values, expected " +
               std::to_string(*dim));
    }
    dim = d;
    SpeakerEmbedding e;
    e.speaker_id = ParseId(line, line.fields[0]);
    const std::string utt = ParseId(line, line.fields[1]);
    if (utt != "-") e.utterance_id = utt;
    if (!seen.insert({e.speaker_id, utt}).second) {
      Fail(ErrorCode::kInvalidValue, line, &line.fields[1],
           "duplicate embedding '" + e.speaker_id + " " + utt + "'");
    }
    e.gender = ParseGender(line, line.fields[2]);
    e.vector.reserve(d);
    for (std::size_t i = 3; i < line.fields.size(); ++i) {
      e.vector.push_back(ParseReal(line, line.fields[i]));
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string SerializeEmbeddings(std::vector<SpeakerEmbedding> embeddings) {
  auto utt = [](const SpeakerEmbedding& e) {
    return e.utterance_id.value_or("-");
  };
  std::sort(embeddings.begin(), embeddings.end(),
            [&](const SpeakerEmbedding& a, const SpeakerEmbedding& b) {
              if (a.speaker_id != b.speaker_id) {
                return a.speaker_id < b.speaker_id;
              }
              return utt(a) < utt(b);
            });
  std::string out;
  for (const auto& e : embeddings) {
    CheckId(e.speaker_id);
    if (e.utterance_id) {
      CheckId(*e.utterance_id);
      if (*e.utterance_id == "-") {
        throw Error(ErrorCode::kInvalidValue,
                    "utterance id '-' is reserved for speaker-level vectors");
      }
    }
    out += e.speaker_id;
    out += ' ';
    out += utt(e);
    out += ' ';
    out += GenderCode(e.gender);
    for (double v : e.vector) AppendReal(out, v);
    out += '\n';
  }
  return out;
}

// ------------------------------------------------------------------- pool

SpeakerPool ParsePoolManifest(std::string_view text) {
  SpeakerPool pool;
  std::set<std::string> seen;
  std::optional<std::size_t> dim;
  for (const auto& line : SplitLines(text)) {
    std::size_t bar = 0;
    for (std::size_t i = 0; i < line.fields.size(); ++i) {
      if (line.fields[i].text == "|") {
        bar = i;
        break;
      }
    }
    if (bar == 0) {
      Fail(ErrorCode::kSyntaxError, line, nullptr,
           "pool record needs a '|' separating embedding and F0 stats");
    }
    if (bar < 3) {
      Fail(ErrorCode::kSyntaxError, line, &line.fields[bar],
           "pool record needs speaker, gender and at least one value");
    }
    if (line.fields.size() != bar + 4) {
      Fail(ErrorCode::kSyntaxError, line,
           line.fields.size() > bar + 4 ? &line.fields[bar + 4] : nullptr,
           "pool record needs exactly 3 fields after '|'");
    }
    const std::size_t d = bar - 2;
    if (dim && *dim != d) {
      Fail(ErrorCode::kDimensionMismatch, line, nullptr,
           "embedding has " + std::to_string(d) + " values, expected " +
               std::to_string(*dim));
    }
    dim = d;
    PoolSpeaker s;
    s.speaker_id = ParseId(line, line.fields[0]);
    if (!seen.insert(s.speaker_id).second) {
      Fail(ErrorCode::kInvalidValue, line, &line.fields[0],
           "duplicate pool speaker '" + s.speaker_id + "'");
    }
    s.gender = ParseGender(line, line.fields[1]);
    for (std::size_t i = 2; i < bar; ++i) {
      s.mean_embedding.push_back(ParseReal(line, line.fields[i]));
    }
    s.f0_stats.mean = ParseReal(line, line.fields[bar + 1]);
    s.f0_stats.std = ParseReal(line, line.fields[bar + 2]);
    if (s.f0_stats.std < 0.0) {
      Fail(ErrorCode::kInvalidValue, line, &line.fields[bar + 2],
           "f0_std must be >= 0");
    }
    s.f0_stats.voiced_frame_count = ParseUint(line, line.fields[bar + 3]);
    if (s.f0_stats.voiced_frame_count == 0) {
      Fail(ErrorCode::kInvalidValue, line, &line.fields[bar + 3],
           "voiced_count must be >= 1");
    }
    pool.speakers.push_back(std::move(s));
  }
  return pool;
}

std::string SerializePoolManifest(SpeakerPool pool) {
  std::sort(pool.speakers.begin(), pool.speakers.end(),
            [](const PoolSpeaker& a, const PoolSpeaker& b) {
              return a.speaker_id < b.speaker_id;
            });
  std::string out;
  for (const auto& s : pool.speakers) {
    CheckId(s.speaker_id);
    out += s.speaker_id;
    out += ' ';
    out += GenderCode(s.gender);
    for (double v : s.mean_embedding) AppendReal(out, v);
    out += " |";
    AppendReal(out, s.f0_stats.mean);
    AppendReal(out, s.f0_stats.std);
    out += ' ';
    out += std::to_string(s.f0_stats.voiced_frame_count);
    out += '\n';
  }
  return out;
}

// ------------------------------------------------------------------- PLDA

PldaModel ParsePldaModel(std::string_view text) {
  const auto lines = SplitLines(text);
  std::size_t next = 0;
  auto take = [&](const char* keyword) -> const Line& {
    if (next >= lines.size()) {
      const std::size_t at = lines.empty() ? 1 : lines.back().number + 1;
      throw ParseError(ErrorCode::kSyntaxError, at, 0,
                       std::string("missing '") + keyword + "' line");
    }
    const Line& line = lines[next++];
    if (line.fields.front().text != keyword) {
      Fail(ErrorCode::kSyntaxError, line, &line.fields.front(),
           std::string("expected '") + keyword + "', found '" +
               std::string(line.fields.front().text) + "'");
    }
    return line;
  };
  auto reals = [&](const Line& line, std::size_t d, std::vector<double>& out) {
    if (line.fields.size() != d + 1) {
      Fail(ErrorCode::kDimensionMismatch, line, nullptr,
           std::string(line.fields.front().text) + " needs " +
               std::to_string(d) + " values, found " +
               std::to_string(line.fields.size() - 1));
    }
    for (std::size_t i = 1; i <= d; ++i) {
      out.push_back(ParseReal(line, line.fields[i]));
    }
  };

  PldaModel m;
  const Line& dim_line = take("dim");
  ExpectFields(dim_line, 2, "dim line");
  const std::uint64_t d = ParseUint(dim_line, dim_line.fields[1]);
  if (d == 0 || d > (1u << 16)) {
    Fail(ErrorCode::kInvalidValue, dim_line, &dim_line.fields[1],
         "dim must be in [1, 65536]");
  }
  m.dim = static_cast<std::size_t>(d);
  reals(take("mean"), m.dim, m.mean);
  m.transform.reserve(m.dim * m.dim);
  for (std::size_t r = 0; r < m.dim; ++r) {
    reals(take("transform"), m.dim, m.transform);
  }
  const Line& psi_line = take("psi");
  reals(psi_line, m.dim, m.psi);
  for (std::size_t i = 0; i < m.dim; ++i) {
    if (m.psi[i] < 0.0) {
      Fail(ErrorCode::kInvalidValue, psi_line, &psi_line.fields[i + 1],
           "psi must be >= 0");
    }
  }
  if (next != lines.size()) {
    Fail(ErrorCode::kSyntaxError, lines[next], &lines[next].fields.front(),
         "unexpected content after 'psi' line");
  }
  return m;
}

std::string SerializePldaModel(const PldaModel& model) {
  model.Validate();
  std::string out = "dim " + std::to_string(model.dim) + "\nmean";
  for (double v : model.mean) AppendReal(out, v);
  out += '\n';
  for (std::size_t r = 0; r < model.dim; ++r) {
    out += "transform";
    for (std::size_t c = 0; c < model.dim; ++c) {
      AppendReal(out, model.TransformAt(r, c));
    }
    out += '\n';
  }
  out += "psi";
  for (double v : model.psi) AppendReal(out, v);
  out += '\n';
  return out;
}

// ---------------------------------------------------------------- mapping

std::vector<MappingRecord> ParseMapping(std::string_view text) {
  std::vector<MappingRecord> out;
  std::set<std::string> seen;
  for (const auto& line : SplitLines(text)) {
    if (line.fields.size() < 3) {
      Fail(ErrorCode::kSyntaxError, line, nullptr,
           "mapping record needs source id, seed and at least one member");
    }
    MappingRecord r;
    r.source_speaker_id = ParseId(line, line.fields[0]);
    if (!seen.insert(r.source_speaker_id).second) {
      Fail(ErrorCode::kInvalidValue, line, &line.fields[0],
           "duplicate source speaker '" + r.source_speaker_id + "'");
    }
    r.seed_used = ParseUint(line, line.fields[1]);
    std::set<std::string> members;
    for (std::size_t i = 2; i < line.fields.size(); ++i) {
      std::string id = ParseId(line, line.fields[i]);
      if (!members.insert(id).second) {
        Fail(ErrorCode::kInvalidValue, line, &line.fields[i],
             "duplicate member '" + id + "'");
      }
      r.member_ids.push_back(std::move(id));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string SerializeMapping(std::vector<MappingRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const MappingRecord& a, const MappingRecord& b) {
              return a.source_speaker_id < b.source_speaker_id;
            });
  std::string out;
  for (const auto& r : records) {
    CheckId(r.source_speaker_id);
    out += r.source_speaker_id;
    out += ' ';
    out += std::to_string(r.seed_used);
    for (const auto& m : r.member_ids) {
      CheckId(m);
      out += ' ';
      out += m;
    }
    out += '\n';
  }
  return out;
}

MappingRecord ToMappingRecord(const PseudoSpeaker& p) {
  return {p.source_speaker_id, p.seed_used, p.member_ids};
}

// ----------------------------------------------------------- scores / key

namespace {

template <typename Record, typename ParseThird>
std::vector<Record> ParseTrialLines(std::string_view text, const char* what,
                                    ParseThird parse_third) {
  std::vector<Record> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& line : SplitLines(text)) {
    ExpectFields(line, 3, what);
    Record r;
    r.enroll_speaker_id = ParseId(line, line.fields[0]);
    r.test_utterance_id = ParseId(line, line.fields[1]);
    if (!seen.insert({r.enroll_speaker_id, r.test_utterance_id}).second) {
      Fail(ErrorCode::kInvalidValue, line, &line.fields[0],
           "duplicate trial '" + r.enroll_speaker_id + " " +
               r.test_utterance_id + "'");
    }
    parse_third(line, line.fields[2], r);
    out.push_back(std::move(r));
  }
  return out;
}

template <typename Record>
void SortTrials(std::vector<Record>& records) {
  std::sort(records.begin(), records.end(),
            [](const Record& a, const Record& b) {
              if (a.enroll_speaker_id != b.enroll_speaker_id) {
                return a.enroll_speaker_id < b.enroll_speaker_id;
              }
              return a.test_utterance_id < b.test_utterance_id;
            });
}

}  // namespace

std::vector<ScoreRecord> ParseScores(std::string_view text) {
  return ParseTrialLines<ScoreRecord>(
      text, "score record",
      [](const Line& line, const Field& f, ScoreRecord& r) {
        r.score = ParseReal(line, f);
      });
}

std::string SerializeScores(std::vector<ScoreRecord> records) {
  SortTrials(records);
  std::string out;
  for (const auto& r : records) {
    CheckId(r.enroll_speaker_id);
    CheckId(r.test_utterance_id);
    out += r.enroll_speaker_id;
    out += ' ';
    out += r.test_utterance_id;
    AppendReal(out, r.score);
    out += '\n';
  }
  return out;
}

std::vector<TrialKeyRecord> ParseTrialKey(std::string_view text) {
  return ParseTrialLines<TrialKeyRecord>(
      text, "trial key record",
      [](const Line& line, const Field& f, TrialKeyRecord& r) {
        if (f.text == "target") {
          r.target = true;
        } else if (f.text == "nontarget") {
          r.target = false;
        } else {
          Fail(ErrorCode::kInvalidValue, line, &f,
               "label must be 'target' or 'nontarget', found '" +
                   std::string(f.text) + "'");
        }
      });
}

std::string SerializeTrialKey(std::vector<TrialKeyRecord> records) {
  SortTrials(records);
  std::string out;
  for (const auto& r : records) {
    CheckId(r.enroll_speaker_id);
    CheckId(r.test_utterance_id);
    out += r.enroll_speaker_id;
    out += ' ';
    out += r.test_utterance_id;
    out += r.target ? " target\n" : " nontarget\n";
  }
  return out;
}

TrialScoreSet JoinScores(const std::vector<ScoreRecord>& scores,
                         const std::vector<TrialKeyRecord>& key) {
  std::map<std::pair<std::string, std::string>, double> by_trial;
  for (const auto& s : scores) {
    by_trial[{s.enroll_speaker_id, s.test_utterance_id}] = s.score;
  }
  TrialScoreSet out;
  for (const auto& k : key) {
    auto it = by_trial.find({k.enroll_speaker_id, k.test_utterance_id});
    if (it == by_trial.end()) {
      throw Error(ErrorCode::kMissingId, "no score for trial '" +
                                             k.enroll_speaker_id + " " +
                                             k.test_utterance_id + "'");
    }
    (k.target ? out.target_scores : out.nontarget_scores).push_back(it->second);
  }
  return out;
}

// ----------------------------------------------------------------- report

ReportRecord ToReportRecord(const EvaluationReport& report) {
  return {100.0 * report.eer, report.cllr, report.min_cllr, report.n_target,
          report.n_nontarget};
}

ReportRecord ParseReport(std::string_view text) {
  static const char* kKeys[] = {"eer_pct", "cllr_bits", "min_cllr_bits",
                                "n_target", "n_nontarget"};
  const auto lines = SplitLines(text);
  ReportRecord r;
  std::size_t i = 0;
  for (const char* key : kKeys) {
    if (i >= lines.size()) {
      const std::size_t at = lines.empty() ? 1 : lines.back().number + 1;
      throw ParseError(ErrorCode::kSyntaxError, at, 0,
                       std::string("missing '") + key + "' line");
    }
    const Line& line = lines[i++];
    ExpectFields(line, 2, "report line");
    if (line.fields[0].text != key) {
      Fail(ErrorCode::kSyntaxError, line, &line.fields[0],
           std::string("expected '") + key + "'");
    }
    const Field& v = line.fields[1];
    const std::string_view k = key;
    if (k == "eer_pct") {
      r.eer_pct = ParseReal(line, v);
    } else if (k == "cllr_bits") {
      r.cllr_bits = ParseReal(line, v);
    } else if (k == "min_cllr_bits") {
      r.min_cllr_bits = ParseReal(line, v);
    } else if (k == "n_target") {
      r.n_target = ParseUint(line, v);
    } else {
      r.n_nontarget = ParseUint(line, v);
    }
  }
  if (i != lines.size()) {
    Fail(ErrorCode::kSyntaxError, lines[i], &lines[i].fields.front(),
         "unexpected content after report");
  }
  return r;
}

std::string SerializeReport(const ReportRecord& r) {
  return "eer_pct " + FormatReal(r.eer_pct) + "\ncllr_bits " +
         FormatReal(r.cllr_bits) + "\nmin_cllr_bits " +
         FormatReal(r.min_cllr_bits) + "\nn_target " +
         std::to_string(r.n_target) + "\nn_nontarget " +
         std::to_string(r.n_nontarget) + "\n";
}

// -------------------------------------------------------------------- DET

std::vector<DetPoint> ParseDet(std::string_view text) {
  std::vector<DetPoint> out;
  for (const auto& line : SplitLines(text)) {
    ExpectFields(line, 2, "DET row");
    DetPoint p{ParseReal(line, line.fields[0]),
               ParseReal(line, line.fields[1])};
    for (std::size_t i = 0; i < 2; ++i) {
      const double v = i == 0 ? p.pfa : p.pmiss;
      if (v < 0.0 || v > 1.0) {
        Fail(ErrorCode::kInvalidValue, line, &line.fields[i],
             "probability outside [0, 1]");
      }
    }
    out.push_back(p);
  }
  return out;
}

std::string SerializeDet(const std::vector<DetPoint>& points) {
  std::string out;
  for (const auto& p : points) {
    out += FormatReal(p.pfa);
    AppendReal(out, p.pmiss);
    out += '\n';
  }
  return out;
}

// -------------------------------------------------------------- key/value

std::vector<KeyValue> ParseKeyValues(std::string_view text) {
  std::vector<KeyValue> out;
  std::set<std::string> seen;
  for (const auto& line : SplitLines(text)) {
    if (line.fields.size() < 2) {
      Fail(ErrorCode::kSyntaxError, line, nullptr,
           "'" + std::string(line.fields[0].text) + "' has no value");
    }
    KeyValue kv;
    kv.key = std::string(line.fields[0].text);
    kv.line = line.number;
    if (!seen.insert(kv.key).second) {
      Fail(ErrorCode::kInvalidValue, line, &line.fields[0],
           "duplicate key '" + kv.key + "'");
    }
    for (std::size_t i = 1; i < line.fields.size(); ++i) {
      kv.values.emplace_back(line.fields[i].text);
    }
    out.push_back(std::move(kv));
  }
  return out;
}

std::string SerializeKeyValues(const std::vector<KeyValue>& entries) {
  std::string out;
  for (const auto& kv : entries) {
    CheckId(kv.key);
    out += kv.key;
    for (const auto& v : kv.values) {
      CheckId(v);
      out += ' ';
      out += v;
    }
    out += '\n';
  }
  return out;
}

// ------------------------------------------------------------------ files

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  return ss.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
}

}  // namespace vpriv
