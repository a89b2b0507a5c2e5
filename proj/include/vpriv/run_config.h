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

#ifndef VPRIV_RUN_CONFIG_H_
#define VPRIV_RUN_CONFIG_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vpriv/attack_sim.h"
#include "vpriv/io_formats.h"
#include "vpriv/pseudo_speaker.h"

namespace vpriv {

// Everything a command can be configured with. Config files are `key value`
// lines (see io_formats.h) whose keys are the field names below; the
// gender_policy key sets both selection and scenario policies.
struct RunConfig {
  CohortSpec cohort;
  ScenarioConfig scenario;
  SelectionConfig selection;
  std::size_t threads = 1;

  std::string pool_file;
  std::string embeddings_file;
  std::string contours_file;
  std::string plda_file;
  std::string enroll_file;
  std::string trial_embeddings;
  std::string trial_key;
  std::string score_file;
  std::string out_stats_file;
  std::string report_file;
  std::string out_dir;
  std::string det_out;
};

// Enum spellings are the enumerator names without the k prefix, matched
// case-insensitively; attack also accepts o-a / a-a.
AttackKind ParseAttackKind(std::string_view s);
F0Mode ParseF0Mode(std::string_view s);
GenderPolicy ParseGenderPolicy(std::string_view s);
AttackerKind ParseAttackerKind(std::string_view s);
ScorerKind ParseScorerKind(std::string_view s);
bool ParseBool(std::string_view s);

const char* Name(AttackKind v);
const char* Name(F0Mode v);
const char* Name(GenderPolicy v);
const char* Name(AttackerKind v);
const char* Name(ScorerKind v);

// Applies entries over *config. Unknown keys and bad values throw
// ParseError(kInvalidConfig) at the entry's line.
void ApplyKeyValues(const std::vector<KeyValue>& entries, RunConfig* config);
RunConfig ParseRunConfig(std::string_view text, RunConfig base = {});

// Canonical dump of the cohort, scenario and selection fields.
std::vector<KeyValue> SimulationKeyValues(const RunConfig& config);

}  // namespace vpriv

#endif  // VPRIV_RUN_CONFIG_H_
