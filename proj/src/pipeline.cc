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

#include "vpriv/pipeline.h"

#include <map>
#include <utility>

#include "vpriv/error.h"
#include "vpriv/parallel.h"

namespace vpriv {

AnonymizationResult AnonymizeBatch(const SpeakerPool& pool,
                                   std::span<const SpeakerEmbedding> utterances,
                                   std::span<const F0Contour> contours,
                                   const SelectionConfig& sel, F0Mode f0_mode,
                                   std::size_t threads) {
  sel.Validate();
  pool.Validate();

  struct Source {
    Gender gender;
    std::vector<std::vector<double>> vectors;
  };
  std::map<std::string, Source> sources;
  std::map<std::string, std::string> speaker_of_utt;
  for (const auto& e : utterances) {
    if (e.vector.size() != pool.dim()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "embedding of speaker '" + e.speaker_id + "' has dimension " +
                      std::to_string(e.vector.size()) + ", pool has " +
                      std::to_string(pool.dim()));
    }
    auto [it, inserted] =
        sources.try_emplace(e.speaker_id, Source{e.gender, {}});
    if (!inserted && it->second.gender != e.gender) {
      throw Error(ErrorCode::kInvalidValue,
                  "speaker '" + e.speaker_id + "' has conflicting genders");
    }
    it->second.vectors.push_back(e.vector);
    if (e.utterance_id) speaker_of_utt[*e.utterance_id] = e.speaker_id;
  }

  std::vector<std::pair<std::string, const Source*>> ordered;
  for (const auto& [id, src] : sources) ordered.emplace_back(id, &src);

  AnonymizationResult result;
  result.pseudo.resize(ordered.size());
  ParallelFor(ordered.size(), threads, [&](std::size_t i) {
    SpeakerEmbedding src{ordered[i].first, std::nullopt,
                         ordered[i].second->gender,
                         AverageVectors(ordered[i].second->vectors)};
    result.pseudo[i] = DerivePseudoSpeaker(pool, src, sel);
  });

  std::map<std::string, std::size_t> pseudo_index;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    pseudo_index[ordered[i].first] = i;
  }
  std::vector<std::size_t> target_of(contours.size());
  for (std::size_t i = 0; i < contours.size(); ++i) {
    ValidateContour(contours[i]);
    auto it = speaker_of_utt.find(contours[i].utterance_id);
    if (it == speaker_of_utt.end()) {
      throw Error(ErrorCode::kMissingId, "contour utterance '" +
                                             contours[i].utterance_id +
                                             "' has no embedding");
    }
    target_of[i] = pseudo_index.at(it->second);
  }

  result.contours.resize(contours.size());
  std::vector<std::string> warning_of(contours.size());
  ParallelFor(contours.size(), threads, [&](std::size_t i) {
    const F0Contour& c = contours[i];
    if (f0_mode == F0Mode::kOriginal) {
      result.contours[i] = c;
      return;
    }
    const LogF0Stats& target = result.pseudo[target_of[i]].f0_stats;
    bool voiced = false;
    for (double v : c.values) voiced = voiced || v > 0.0;
    if (!voiced) {
      result.contours[i] = c;
      warning_of[i] = "utterance '" + c.utterance_id +
                      "' has no voiced frames; contour copied unchanged";
      return;
    }
    const LogF0Stats source = ComputeLogF0Stats(c);
    if (source.std == 0.0 && target.std > 0.0) {
      LogF0Stats relocate = target;
      relocate.std = 0.0;
      result.contours[i] = TransformContour(c, source, relocate);
      warning_of[i] = "utterance '" + c.utterance_id +
                      "' has constant F0; voiced frames moved to the "
                      "target mean";
      return;
    }
    result.contours[i] = TransformContour(c, source, target);
  });
  for (auto& w : warning_of) {
    if (!w.empty()) result.warnings.push_back(std::move(w));
  }
  return result;
}

std::vector<NamedStats> ContourStats(std::span<const F0Contour> contours,
                                     std::vector<std::string>* skipped) {
  std::vector<NamedStats> out;
  for (const auto& c : contours) {
    ValidateContour(c);
    bool voiced = false;
    for (double v : c.values) voiced = voiced || v > 0.0;
    if (!voiced) {
      if (skipped) skipped->push_back(c.utterance_id);
      continue;
    }
    out.push_back({c.utterance_id, ComputeLogF0Stats(c)});
  }
  return out;
}

std::vector<ScoreRecord> ScoreTrials(const std::optional<PldaModel>& plda,
                                     ScorerKind scorer, const PldaOptions& opts,
                                     std::span<const SpeakerEmbedding> enroll,
                                     std::span<const SpeakerEmbedding> test,
                                     std::span<const TrialKeyRecord> key,
                                     std::size_t threads) {
  if (scorer == ScorerKind::kPlda && !plda) {
    throw Error(ErrorCode::kInvalidConfig, "PLDA scorer needs a PLDA model");
  }
  auto represent = [&](const SpeakerEmbedding& e) {
    return scorer == ScorerKind::kPlda ? Project(*plda, e, opts) : e.vector;
  };

  std::map<std::string, std::vector<std::vector<double>>> enroll_vectors;
  for (const auto& e : enroll) {
    enroll_vectors[e.speaker_id].push_back(represent(e));
  }
  std::map<std::string, std::vector<double>> enroll_model;
  for (auto& [id, vs] : enroll_vectors) enroll_model[id] = AverageVectors(vs);

  std::map<std::string, std::vector<double>> test_model;
  for (const auto& e : test) {
    if (!e.utterance_id) {
      throw Error(ErrorCode::kMissingId, "test embedding of speaker '" +
                                             e.speaker_id +
                                             "' has no utterance id");
    }
    if (!test_model.emplace(*e.utterance_id, represent(e)).second) {
      throw Error(ErrorCode::kInvalidValue,
                  "duplicate test utterance '" + *e.utterance_id + "'");
    }
  }

  std::vector<const std::vector<double>*> lhs(key.size()), rhs(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) {
    auto e = enroll_model.find(key[i].enroll_speaker_id);
    if (e == enroll_model.end()) {
      throw Error(ErrorCode::kMissingId, "enrollment speaker '" +
                                             key[i].enroll_speaker_id +
                                             "' has no embedding");
    }
    auto t = test_model.find(key[i].test_utterance_id);
    if (t == test_model.end()) {
      throw Error(
          ErrorCode::kMissingId,
          "test utterance '" + key[i].test_utterance_id + "' has no embedding");
    }
    lhs[i] = &e->second;
    rhs[i] = &t->second;
  }

  std::vector<ScoreRecord> out(key.size());
  ParallelFor(key.size(), threads, [&](std::size_t i) {
    out[i].enroll_speaker_id = key[i].enroll_speaker_id;
    out[i].test_utterance_id = key[i].test_utterance_id;
    out[i].score = scorer == ScorerKind::kPlda
                       ? PldaScore(*plda, *lhs[i], *rhs[i])
                       : CosineScore(*lhs[i], *rhs[i]);
  });
  return out;
}

}  // namespace vpriv
