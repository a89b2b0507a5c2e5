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

#ifndef VPRIV_PIPELINE_H_
#define VPRIV_PIPELINE_H_

// Batch operations behind the command-line tool.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vpriv/attack_sim.h"
#include "vpriv/f0_transform.h"
#include "vpriv/io_formats.h"
#include "vpriv/plda.h"
#include "vpriv/pseudo_speaker.h"

namespace vpriv {

struct AnonymizationResult {
  // One per distinct source speaker, ascending by speaker id.
  std::vector<PseudoSpeaker> pseudo;
  // One per input contour, in input order.
  std::vector<F0Contour> contours;
  std::vector<std::string> warnings;
};

// Derives one pseudo-speaker per source speaker (x-vector = mean of that
// speaker's utterance embeddings) and, in Modified mode, maps each contour
// onto its speaker's target F0 statistics using per-utterance source
// statistics. Contours are matched to speakers through utterance_id
// (kMissingId when absent). Contours without voiced frames are copied with
// a warning; contours with a single distinct voiced value are relocated to
// the target mean with a warning.
AnonymizationResult AnonymizeBatch(const SpeakerPool& pool,
                                   std::span<const SpeakerEmbedding> utterances,
                                   std::span<const F0Contour> contours,
                                   const SelectionConfig& sel, F0Mode f0_mode,
                                   std::size_t threads = 1);

// Per-utterance log-F0 statistics; utterances without voiced frames are
// skipped and named in `skipped`.
std::vector<NamedStats> ContourStats(std::span<const F0Contour> contours,
                                     std::vector<std::string>* skipped);

// Scores every key trial. Enrollment speakers with several embeddings are
// represented by the mean of their projected vectors (PLDA) or of their raw
// vectors (cosine). Test embeddings are looked up by utterance id.
// Throws kMissingId naming the first unknown id.
std::vector<ScoreRecord> ScoreTrials(const std::optional<PldaModel>& plda,
                                     ScorerKind scorer, const PldaOptions& opts,
                                     std::span<const SpeakerEmbedding> enroll,
                                     std::span<const SpeakerEmbedding> test,
                                     std::span<const TrialKeyRecord> key,
                                     std::size_t threads = 1);

}  // namespace vpriv

#endif  // VPRIV_PIPELINE_H_
