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

#ifndef VPRIV_PSEUDO_SPEAKER_H_
#define VPRIV_PSEUDO_SPEAKER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vpriv/f0_transform.h"
#include "vpriv/plda.h"

namespace vpriv {

enum class GenderPolicy { kSame, kOpposite };
enum class ScorerKind { kPlda, kCosine };

struct PoolSpeaker {
  std::string speaker_id;
  Gender gender = Gender::kMale;
  std::vector<double> mean_embedding;
  LogF0Stats f0_stats;

  bool operator==(const PoolSpeaker&) const = default;
};

// External speakers that pseudo-speakers are built from.
struct SpeakerPool {
  std::vector<PoolSpeaker> speakers;
  std::optional<PldaModel> plda;

  // Unique ids, one embedding dimension, voiced_frame_count >= 1.
  void Validate() const;
  std::size_t dim() const {
    return speakers.empty() ? 0 : speakers.front().mean_embedding.size();
  }

  bool operator==(const SpeakerPool&) const = default;
};

struct SelectionConfig {
  std::size_t k_far = 200;
  std::size_t k_sel = 100;
  GenderPolicy gender_policy = GenderPolicy::kSame;
  ScorerKind scorer = ScorerKind::kPlda;
  std::uint64_t global_seed = 0;
  // Passed through to PldaOptions for ranking.
  bool length_norm = true;

  // Throws kInvalidConfig unless 1 <= k_sel <= k_far.
  void Validate() const;
};

struct PseudoSpeaker {
  std::string source_speaker_id;
  Gender gender = Gender::kMale;  // gender of the members
  std::vector<double> xvector;
  LogF0Stats f0_stats;
  std::vector<std::string> member_ids;  // ascending
  std::uint64_t seed_used = 0;

  bool operator==(const PseudoSpeaker&) const = default;
};

// Per-speaker sampling seed:
//   Mix64(Mix64(global_seed) ^ Fnv1a64(speaker_id))
// Mix64 is the SplitMix64 finalizer, Fnv1a64 the 64-bit FNV-1a hash of the
// id bytes. For a fixed id the map from global_seed is a bijection.
std::uint64_t SeedForSpeaker(std::uint64_t global_seed,
                             std::string_view speaker_id);

// Same keeps speakers of the source gender, Opposite the others.
// Throws kEmptyAfterFilter.
SpeakerPool FilterByGender(const SpeakerPool& pool, Gender source_gender,
                           GenderPolicy policy);

// The k_far speakers scoring lowest against the source x-vector, ascending
// by score, ties by ascending speaker_id. Throws kPoolTooSmall, and
// kInvalidConfig when the PLDA scorer is requested for a pool without one.
std::vector<std::string> RankFurthest(const SpeakerPool& subset,
                                      std::span<const double> source_xvector,
                                      const SelectionConfig& cfg);

// Gender filter, rank, draw k_sel of the k_far candidates without
// replacement using SeedForSpeaker(cfg.global_seed, source.speaker_id), then
// average the members' embeddings and F0 statistics.
PseudoSpeaker DerivePseudoSpeaker(const SpeakerPool& pool,
                                  const SpeakerEmbedding& source,
                                  const SelectionConfig& cfg);

}  // namespace vpriv

#endif  // VPRIV_PSEUDO_SPEAKER_H_
