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

#include "vpriv/run_config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include "vpriv/error.h"

namespace vpriv {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

[[noreturn]] void BadValue(std::string_view what, std::string_view got) {
  throw Error(ErrorCode::kInvalidConfig,
              "invalid " + std::string(what) + " '" + std::string(got) + "'");
}

double ToReal(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    BadValue("real", s);
  }
  return v;
}

std::uint64_t ToUint(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) BadValue("integer", s);
  return v;
}

using Setter = std::function<void(const std::vector<std::string>&, RunConfig*)>;

const std::vector<std::string>& One(const std::vector<std::string>& v) {
  if (v.size() != 1) {
    throw Error(ErrorCode::kInvalidConfig,
                "expected one value, found " + std::to_string(v.size()));
  }
  return v;
}

const std::map<std::string, Setter>& Setters() {
  static const std::map<std::string, Setter> kSetters = [] {
    std::map<std::string, Setter> m;
    auto size = [&](const char* key, auto member) {
      m[key] = [member](const auto& v, RunConfig* c) {
        member(c) = static_cast<std::size_t>(ToUint(One(v)[0]));
      };
    };
    auto u64 = [&](const char* key, auto member) {
      m[key] = [member](const auto& v, RunConfig* c) {
        member(c) = ToUint(One(v)[0]);
      };
    };
    auto real = [&](const char* key, auto member) {
      m[key] = [member](const auto& v, RunConfig* c) {
        member(c) = ToReal(One(v)[0]);
      };
    };
    auto path = [&](const char* key, auto member) {
      m[key] = [member](const auto& v, RunConfig* c) { member(c) = One(v)[0]; };
    };

    size("n_speakers_per_gender",
         [](RunConfig* c) -> auto& { return c->cohort.n_speakers_per_gender; });
    size("utts_per_speaker",
         [](RunConfig* c) -> auto& { return c->cohort.utts_per_speaker; });
    size("embed_dim",
         [](RunConfig* c) -> auto& { return c->cohort.embed_dim; });
    real("between_var",
         [](RunConfig* c) -> auto& { return c->cohort.between_var; });
    real("within_var",
         [](RunConfig* c) -> auto& { return c->cohort.within_var; });
    m["f0_gender_means"] = [](const auto& v, RunConfig* c) {
      if (v.size() != 4) {
        throw Error(ErrorCode::kInvalidConfig,
                    "f0_gender_means needs 'M <real> F <real>'");
      }
      bool has_m = false;
      bool has_f = false;
      for (std::size_t i = 0; i < 4; i += 2) {
        if (v[i] == "M" && !has_m) {
          c->cohort.f0_mean_male = ToReal(v[i + 1]);
          has_m = true;
        } else if (v[i] == "F" && !has_f) {
          c->cohort.f0_mean_female = ToReal(v[i + 1]);
          has_f = true;
        } else {
          BadValue("gender", v[i]);
        }
      }
    };
    real("f0_between_std",
         [](RunConfig* c) -> auto& { return c->cohort.f0_between_std; });
    real("f0_within_std",
         [](RunConfig* c) -> auto& { return c->cohort.f0_within_std; });
    size("frames_per_utt",
         [](RunConfig* c) -> auto& { return c->cohort.frames_per_utt; });
    size("pool_speakers_per_gender", [](RunConfig* c) -> auto& {
      return c->cohort.pool_speakers_per_gender;
    });
    u64("seed", [](RunConfig* c) -> auto& { return c->cohort.seed; });

    m["attack"] = [](const auto& v, RunConfig* c) {
      c->scenario.attack = ParseAttackKind(One(v)[0]);
    };
    m["f0_mode"] = [](const auto& v, RunConfig* c) {
      c->scenario.f0_mode = ParseF0Mode(One(v)[0]);
    };
    m["gender_policy"] = [](const auto& v, RunConfig* c) {
      c->scenario.gender_policy = ParseGenderPolicy(One(v)[0]);
      c->selection.gender_policy = c->scenario.gender_policy;
    };
    u64("enroll_seed",
        [](RunConfig* c) -> auto& { return c->scenario.enroll_seed; });
    u64("trial_seed",
        [](RunConfig* c) -> auto& { return c->scenario.trial_seed; });
    m["attacker"] = [](const auto& v, RunConfig* c) {
      c->scenario.attacker = ParseAttackerKind(One(v)[0]);
    };
    real("f0_weight",
         [](RunConfig* c) -> auto& { return c->scenario.f0_weight; });

    size("k_far", [](RunConfig* c) -> auto& { return c->selection.k_far; });
    size("k_sel", [](RunConfig* c) -> auto& { return c->selection.k_sel; });
    m["scorer"] = [](const auto& v, RunConfig* c) {
      c->selection.scorer = ParseScorerKind(One(v)[0]);
    };
    u64("global_seed",
        [](RunConfig* c) -> auto& { return c->selection.global_seed; });
    m["length_norm"] = [](const auto& v, RunConfig* c) {
      c->selection.length_norm = ParseBool(One(v)[0]);
    };
    size("threads", [](RunConfig* c) -> auto& { return c->threads; });

    path("pool_file", [](RunConfig* c) -> auto& { return c->pool_file; });
    path("embeddings_file",
         [](RunConfig* c) -> auto& { return c->embeddings_file; });
    path("contours_file",
         [](RunConfig* c) -> auto& { return c->contours_file; });
    path("plda_file", [](RunConfig* c) -> auto& { return c->plda_file; });
    path("enroll_file", [](RunConfig* c) -> auto& { return c->enroll_file; });
    path("trial_embeddings",
         [](RunConfig* c) -> auto& { return c->trial_embeddings; });
    path("trial_key", [](RunConfig* c) -> auto& { return c->trial_key; });
    path("score_file", [](RunConfig* c) -> auto& { return c->score_file; });
    path("out_stats_file",
         [](RunConfig* c) -> auto& { return c->out_stats_file; });
    path("report_file", [](RunConfig* c) -> auto& { return c->report_file; });
    path("out_dir", [](RunConfig* c) -> auto& { return c->out_dir; });
    path("det_out", [](RunConfig* c) -> auto& { return c->det_out; });
    return m;
  }();
  return kSetters;
}

}  // namespace

AttackKind ParseAttackKind(std::string_view s) {
  const std::string v = Lower(s);
  if (v == "originaltoanonymized" || v == "o-a") {
    return AttackKind::kOriginalToAnonymized;
  }
  if (v == "anonymizedtoanonymized" || v == "a-a") {
    return AttackKind::kAnonymizedToAnonymized;
  }
  BadValue("attack", s);
}

F0Mode ParseF0Mode(std::string_view s) {
  const std::string v = Lower(s);
  if (v == "original") return F0Mode::kOriginal;
  if (v == "modified") return F0Mode::kModified;
  BadValue("f0_mode", s);
}

GenderPolicy ParseGenderPolicy(std::string_view s) {
  const std::string v = Lower(s);
  if (v == "same") return GenderPolicy::kSame;
  if (v == "opposite") return GenderPolicy::kOpposite;
  BadValue("gender_policy", s);
}

AttackerKind ParseAttackerKind(std::string_view s) {
  const std::string v = Lower(s);
  if (v == "embeddingonly") return AttackerKind::kEmbeddingOnly;
  if (v == "embeddingplusf0") return AttackerKind::kEmbeddingPlusF0;
  BadValue("attacker", s);
}

ScorerKind ParseScorerKind(std::string_view s) {
  const std::string v = Lower(s);
  if (v == "plda") return ScorerKind::kPlda;
  if (v == "cosine") return ScorerKind::kCosine;
  BadValue("scorer", s);
}

bool ParseBool(std::string_view s) {
  const std::string v = Lower(s);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  BadValue("boolean", s);
}

const char* Name(AttackKind v) {
  return v == AttackKind::kOriginalToAnonymized ? "OriginalToAnonymized"
                                                : "AnonymizedToAnonymized";
}
const char* Name(F0Mode v) {
  return v == F0Mode::kOriginal ? "Original" : "Modified";
}
const char* Name(GenderPolicy v) {
  return v == GenderPolicy::kSame ? "Same" : "Opposite";
}
const char* Name(AttackerKind v) {
  return v == AttackerKind::kEmbeddingOnly ? "EmbeddingOnly"
                                           : "EmbeddingPlusF0";
}
const char* Name(ScorerKind v) {
  return v == ScorerKind::kPlda ? "Plda" : "Cosine";
}

void ApplyKeyValues(const std::vector<KeyValue>& entries, RunConfig* config) {
  const auto& setters = Setters();
  for (const auto& kv : entries) {
    auto it = setters.find(kv.key);
    if (it == setters.end()) {
      throw ParseError(ErrorCode::kInvalidConfig, kv.line, 1,
                       "unknown key '" + kv.key + "'");
    }
    try {
      it->second(kv.values, config);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(ErrorCode::kInvalidConfig, kv.line, 0,
                       kv.key + ": " + e.message());
    }
  }
}

RunConfig ParseRunConfig(std::string_view text, RunConfig base) {
  ApplyKeyValues(ParseKeyValues(text), &base);
  return base;
}

std::vector<KeyValue> SimulationKeyValues(const RunConfig& c) {
  auto u = [](std::uint64_t v) { return std::to_string(v); };
  auto r = [](double v) { return FormatReal(v); };
  return {
      {"n_speakers_per_gender", {u(c.cohort.n_speakers_per_gender)}},
      {"utts_per_speaker", {u(c.cohort.utts_per_speaker)}},
      {"embed_dim", {u(c.cohort.embed_dim)}},
      {"between_var", {r(c.cohort.between_var)}},
      {"within_var", {r(c.cohort.within_var)}},
      {"f0_gender_means",
       {"M", r(c.cohort.f0_mean_male), "F", r(c.cohort.f0_mean_female)}},
      {"f0_between_std", {r(c.cohort.f0_between_std)}},
      {"f0_within_std", {r(c.cohort.f0_within_std)}},
      {"frames_per_utt", {u(c.cohort.frames_per_utt)}},
      {"pool_speakers_per_gender", {u(c.cohort.pool_speakers_per_gender)}},
      {"seed", {u(c.cohort.seed)}},
      {"attack", {Name(c.scenario.attack)}},
      {"f0_mode", {Name(c.scenario.f0_mode)}},
      {"gender_policy", {Name(c.scenario.gender_policy)}},
      {"enroll_seed", {u(c.scenario.enroll_seed)}},
      {"trial_seed", {u(c.scenario.trial_seed)}},
      {"attacker", {Name(c.scenario.attacker)}},
      {"f0_weight", {r(c.scenario.f0_weight)}},
      {"k_far", {u(c.selection.k_far)}},
      {"k_sel", {u(c.selection.k_sel)}},
      {"scorer", {Name(c.selection.scorer)}},
      {"length_norm", {c.selection.length_norm ? "true" : "false"}},
  };
}

}  // namespace vpriv
