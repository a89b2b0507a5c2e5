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

#include "vpriv/pseudo_speaker.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>
#include <utility>

#include "vpriv/error.h"
#include "vpriv/rng.h"

namespace vpriv {

namespace {

// Indices into subset.speakers of the k_far furthest speakers.
std::vector<std::size_t> RankFurthestIndices(
    const SpeakerPool& subset, std::span<const double> source_xvector,
    const SelectionConfig& cfg) {
  cfg.Validate();
  const std::size_t n = subset.speakers.size();
  if (n < cfg.k_far) {
    throw Error(ErrorCode::kPoolTooSmall,
                "candidate pool has " + std::to_string(n) +
                    " speakers, k_far is " + std::to_string(cfg.k_far));
  }
  std::vector<double> scores(n);
  if (cfg.scorer == ScorerKind::kPlda) {
    if (!subset.plda) {
      throw Error(ErrorCode::kInvalidConfig,
                  "PLDA scorer requested but the pool has no PLDA model");
    }
    const PldaModel& model = *subset.plda;
    const PldaOptions opts{cfg.length_norm};
    const auto src = Project(model, source_xvector, opts);
    for (std::size_t i = 0; i < n; ++i) {
      const auto cand = Project(
          model, std::span<const double>(subset.speakers[i].mean_embedding),
          opts);
      scores[i] = PldaScore(model, src, cand);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = CosineScore(
          source_xvector,
          std::span<const double>(subset.speakers[i].mean_embedding));
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto less = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] < scores[b];
    return subset.speakers[a].speaker_id < subset.speakers[b].speaker_id;
  };
  std::partial_sort(order.begin(), order.begin() + cfg.k_far, order.end(),
                    less);
  order.resize(cfg.k_far);
  return order;
}

}  // namespace

void SpeakerPool::Validate() const {
  std::unordered_set<std::string> seen;
  const std::size_t d = dim();
  for (const auto& s : speakers) {
    if (!seen.insert(s.speaker_id).second) {
      throw Error(ErrorCode::kInvalidValue,
                  "duplicate pool speaker '" + s.speaker_id + "'");
    }
    if (s.mean_embedding.size() != d || d == 0) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "pool speaker '" + s.speaker_id + "' has dimension " +
                      std::to_string(s.mean_embedding.size()) + ", expected " +
                      std::to_string(d));
    }
    if (s.f0_stats.voiced_frame_count == 0) {
      throw Error(ErrorCode::kInvalidValue,
                  "pool speaker '" + s.speaker_id + "' has no voiced frames");
    }
  }
  if (plda) {
    plda->Validate();
    if (!speakers.empty() && plda->dim != d) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "PLDA dimension " + std::to_string(plda->dim) +
                      " does not match pool dimension " + std::to_string(d));
    }
  }
}

void SelectionConfig::Validate() const {
  if (k_sel == 0 || k_sel > k_far) {
    throw Error(ErrorCode::kInvalidConfig,
                "need 1 <= k_sel <= k_far, got k_sel=" + std::to_string(k_sel) +
                    " k_far=" + std::to_string(k_far));
  }
}

std::uint64_t SeedForSpeaker(std::uint64_t global_seed,
                             std::string_view speaker_id) {
  return Mix64(Mix64(global_seed) ^ Fnv1a64(speaker_id));
}

SpeakerPool FilterByGender(const SpeakerPool& pool, Gender source_gender,
                           GenderPolicy policy) {
  const Gender wanted = policy == GenderPolicy::kSame
                            ? source_gender
                            : OppositeGender(source_gender);
  SpeakerPool out;
  out.plda = pool.plda;
  for (const auto& s : pool.speakers) {
    if (s.gender == wanted) out.speakers.push_back(s);
  }
  if (out.speakers.empty()) {
    throw Error(
        ErrorCode::kEmptyAfterFilter,
        std::string("no pool speakers of gender ") + GenderCode(wanted));
  }
  return out;
}

std::vector<std::string> RankFurthest(const SpeakerPool& subset,
                                      std::span<const double> source_xvector,
                                      const SelectionConfig& cfg) {
  std::vector<std::string> ids;
  for (std::size_t i : RankFurthestIndices(subset, source_xvector, cfg)) {
    ids.push_back(subset.speakers[i].speaker_id);
  }
  return ids;
}

PseudoSpeaker DerivePseudoSpeaker(const SpeakerPool& pool,
                                  const SpeakerEmbedding& source,
                                  const SelectionConfig& cfg) {
  try {
    const SpeakerPool subset =
        FilterByGender(pool, source.gender, cfg.gender_policy);
    std::vector<std::size_t> candidates = RankFurthestIndices(
        subset, std::span<const double>(source.vector), cfg);

    PseudoSpeaker out;
    out.source_speaker_id = source.speaker_id;
    out.gender = subset.speakers.front().gender;
    out.seed_used = SeedForSpeaker(cfg.global_seed, source.speaker_id);

    // Partial Fisher-Yates: the first k_sel slots become the sample.
    Rng rng(out.seed_used);
    for (std::size_t i = 0; i < cfg.k_sel; ++i) {
      const std::size_t j = i + rng.Index(candidates.size() - i);
      std::swap(candidates[i], candidates[j]);
    }
    candidates.resize(cfg.k_sel);
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) {
                return subset.speakers[a].speaker_id <
                       subset.speakers[b].speaker_id;
              });

    out.xvector.assign(subset.dim(), 0.0);
    std::vector<LogF0Stats> stats;
    stats.reserve(cfg.k_sel);
    for (std::size_t idx : candidates) {
      const PoolSpeaker& m = subset.speakers[idx];
      out.member_ids.push_back(m.speaker_id);
      for (std::size_t i = 0; i < out.xvector.size(); ++i) {
        out.xvector[i] += m.mean_embedding[i];
      }
      stats.push_back(m.f0_stats);
    }
    const double k = static_cast<double>(cfg.k_sel);
    for (double& x : out.xvector) x /= k;
    out.f0_stats = AggregateTargetStats(stats);
    return out;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kPoolTooSmall ||
        e.code() == ErrorCode::kEmptyAfterFilter) {
      throw Error(e.code(),
                  "source speaker '" + source.speaker_id + "': " + e.message());
    }
    throw;
  }
}

}  // namespace vpriv
