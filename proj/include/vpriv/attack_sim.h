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

#ifndef VPRIV_ATTACK_SIM_H_
#define VPRIV_ATTACK_SIM_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vpriv/f0_transform.h"
#include "vpriv/metrics.h"
#include "vpriv/plda.h"
#include "vpriv/pseudo_speaker.h"

namespace vpriv {

// Synthetic speaker population. Embedding identities are N(0, between_var I)
// and each utterance adds N(0, within_var I). A speaker's mean log-F0 is
// drawn around its gender mean with f0_between_std; frames scatter around
// it with f0_within_std. Every tenth frame (index % 10 == 9) is unvoiced.
struct CohortSpec {
  std::size_t n_speakers_per_gender = 20;
  std::size_t utts_per_speaker = 5;
  std::size_t embed_dim = 32;
  double between_var = 1.0;
  double within_var = 0.02;
  double f0_mean_male = std::log(120.0);
  double f0_mean_female = std::log(210.0);
  double f0_between_std = 0.12;
  double f0_within_std = 0.15;
  std::size_t frames_per_utt = 200;
  // External pool the pseudo-speakers are drawn from.
  std::size_t pool_speakers_per_gender = 40;
  std::uint64_t seed = 1;

  // Throws kInvalidSpec.
  void Validate() const;
  double F0GenderMean(Gender g) const {
    return g == Gender::kMale ? f0_mean_male : f0_mean_female;
  }
};

struct Utterance {
  SpeakerEmbedding embedding;  // utterance_id always set
  F0Contour contour;
};

struct Cohort {
  CohortSpec spec;
  SpeakerPool pool;              // carries the true PLDA model
  std::vector<Utterance> users;  // grouped by speaker, utterance order kept
  PldaModel plda;                // psi = between_var / within_var
};

Cohort GenerateCohort(const CohortSpec& spec);

enum class AttackKind { kOriginalToAnonymized, kAnonymizedToAnonymized };
enum class F0Mode { kOriginal, kModified };
enum class AttackerKind { kEmbeddingOnly, kEmbeddingPlusF0 };

struct ScenarioConfig {
  AttackKind attack = AttackKind::kAnonymizedToAnonymized;
  F0Mode f0_mode = F0Mode::kOriginal;
  GenderPolicy gender_policy = GenderPolicy::kSame;
  std::uint64_t enroll_seed = 1;
  std::uint64_t trial_seed = 2;
  AttackerKind attacker = AttackerKind::kEmbeddingPlusF0;
  // Weight of the F0 term; <= 0 selects it from the cohort as
  // sd(PLDA score) / sd(F0 term) over the unanonymized trial list.
  double f0_weight = 0.0;

  // Throws kInvalidConfig when a-a uses enroll_seed == trial_seed.
  void Validate() const;
};

// Test-harness switches.
struct ScenarioHarness {
  bool check_seeds = true;
  // false scores original enrollment against original trials (plain ASV).
  bool anonymize = true;
  std::size_t threads = 1;
};

struct Trial {
  std::string enroll_speaker_id;
  std::string test_utterance_id;
  bool target = false;
  double score = 0.0;
};

struct ScenarioResult {
  std::vector<Trial> trials;  // sorted by (enroll id, test id)
  TrialScoreSet scores;
  EvaluationReport report;
  double f0_weight = 0.0;
  // Per user speaker, in cohort order. enroll_pseudo is empty for o-a.
  std::vector<PseudoSpeaker> enroll_pseudo;
  std::vector<PseudoSpeaker> trial_pseudo;
  // Anonymized trial-side utterances (all user utterances).
  std::vector<Utterance> anonymized;
};

// Utterance 0 of every user speaker is its enrollment; utterances 1.. are
// tests, scored against every enrollment of the same gender. The
// gender_policy of `cfg` overrides that of `sel`.
ScenarioResult RunScenario(const Cohort& cohort, const ScenarioConfig& cfg,
                           const SelectionConfig& sel,
                           const ScenarioHarness& harness = {});

// Defaults sized for desk-scale cohorts: k_far 8, k_sel 4, PLDA scorer,
// no length normalization (cohort embeddings follow the PLDA model as is).
SelectionConfig SimulationSelection();

}  // namespace vpriv

#endif  // VPRIV_ATTACK_SIM_H_
