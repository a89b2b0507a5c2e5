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

#include "vpriv/attack_sim.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <utility>

#include "vpriv/error.h"
#include "vpriv/parallel.h"
#include "vpriv/rng.h"

namespace vpriv {

namespace {

std::string PaddedId(const char* prefix, std::size_t i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, i);
  return buf;
}

struct GeneratedSpeaker {
  std::string id;
  Gender gender;
  std::vector<Utterance> utts;
};

GeneratedSpeaker GenerateSpeaker(const CohortSpec& spec, const std::string& id,
                                 Gender gender) {
  GeneratedSpeaker out{id, gender, {}};
  const double between_sd = std::sqrt(spec.between_var);
  const double within_sd = std::sqrt(spec.within_var);

  std::vector<double> identity(spec.embed_dim);
  Rng id_rng(SeedForSpeaker(spec.seed, "identity/" + id));
  for (double& x : identity) x = between_sd * id_rng.Normal();

  Rng f0_rng(SeedForSpeaker(spec.seed, "f0/" + id));
  const double f0_mean =
      spec.F0GenderMean(gender) + spec.f0_between_std * f0_rng.Normal();

  for (std::size_t j = 0; j < spec.utts_per_speaker; ++j) {
    Utterance u;
    const std::string utt_id = PaddedId((id + "-").c_str(), j, 2);
    Rng rng(SeedForSpeaker(spec.seed, "utt/" + utt_id));
    u.embedding.speaker_id = id;
    u.embedding.utterance_id = utt_id;
    u.embedding.gender = gender;
    u.embedding.vector.resize(spec.embed_dim);
    for (std::size_t k = 0; k < spec.embed_dim; ++k) {
      u.embedding.vector[k] = identity[k] + within_sd * rng.Normal();
    }
    u.contour.utterance_id = utt_id;
    u.contour.values.resize(spec.frames_per_utt);
    for (std::size_t t = 0; t < spec.frames_per_utt; ++t) {
      const double log_f0 = f0_mean + spec.f0_within_std * rng.Normal();
      u.contour.values[t] = t % 10 == 9 ? 0.0 : std::exp(log_f0);
    }
    out.utts.push_back(std::move(u));
  }
  return out;
}

struct UserSpeaker {
  std::string id;
  Gender gender;
  std::vector<std::size_t> utt_indices;  // into cohort.users
  std::vector<double> xvector;           // mean utterance embedding
};

std::vector<UserSpeaker> GroupUsers(const Cohort& cohort) {
  std::vector<UserSpeaker> speakers;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < cohort.users.size(); ++i) {
    const auto& e = cohort.users[i].embedding;
    auto [it, inserted] = index.emplace(e.speaker_id, speakers.size());
    if (inserted) speakers.push_back({e.speaker_id, e.gender, {}, {}});
    speakers[it->second].utt_indices.push_back(i);
  }
  for (auto& s : speakers) {
    std::vector<std::vector<double>> vs;
    for (std::size_t i : s.utt_indices) {
      vs.push_back(cohort.users[i].embedding.vector);
    }
    s.xvector = AverageVectors(vs);
  }
  return speakers;
}

// What the attacker sees of one utterance.
struct Features {
  std::vector<double> latent;
  double log_f0_mean = 0.0;
};

Features Extract(const Cohort& cohort, const Utterance& u,
                 const PldaOptions& opts) {
  return {Project(cohort.plda, u.embedding, opts),
          ComputeLogF0Stats(u.contour).mean};
}

double StdDev(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double sq = 0.0;
  for (double x : v) sq += (x - mean) * (x - mean);
  return std::sqrt(sq / static_cast<double>(v.size()));
}

// Replaces the embedding with pseudo x-vector + fresh within-speaker noise
// and, in Modified mode, moves the contour onto the pseudo-speaker's F0
// statistics.
Utterance Anonymize(const Utterance& u, const PseudoSpeaker& pseudo,
                    F0Mode f0_mode, double within_var, std::uint64_t seed) {
  Utterance out = u;
  Rng rng(SeedForSpeaker(seed, "noise/" + *u.embedding.utterance_id));
  const double sd = std::sqrt(within_var);
  for (std::size_t k = 0; k < out.embedding.vector.size(); ++k) {
    out.embedding.vector[k] = pseudo.xvector[k] + sd * rng.Normal();
  }
  if (f0_mode == F0Mode::kModified) {
    out.contour = TransformContour(u.contour, ComputeLogF0Stats(u.contour),
                                   pseudo.f0_stats);
  }
  return out;
}

}  // namespace

void CohortSpec::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidSpec, what);
  };
  if (n_speakers_per_gender == 0) fail("n_speakers_per_gender must be > 0");
  if (utts_per_speaker == 0) fail("utts_per_speaker must be > 0");
  if (embed_dim == 0) fail("embed_dim must be > 0");
  if (frames_per_utt == 0) fail("frames_per_utt must be > 0");
  if (!(between_var > 0.0) || !std::isfinite(between_var)) {
    fail("between_var must be a positive real");
  }
  if (!(within_var > 0.0) || !std::isfinite(within_var)) {
    fail("within_var must be a positive real");
  }
  if (!(f0_between_std > 0.0) || !std::isfinite(f0_between_std)) {
    fail("f0_between_std must be a positive real");
  }
  if (!(f0_within_std > 0.0) || !std::isfinite(f0_within_std)) {
    fail("f0_within_std must be a positive real");
  }
  if (!std::isfinite(f0_mean_male) || !std::isfinite(f0_mean_female) ||
      !(f0_mean_female > f0_mean_male)) {
    fail("female log-F0 mean must exceed the male one");
  }
  if (pool_speakers_per_gender == 0) {
    fail("pool_speakers_per_gender must be > 0");
  }
}

Cohort GenerateCohort(const CohortSpec& spec) {
  spec.Validate();
  Cohort cohort;
  cohort.spec = spec;
  cohort.plda = PldaModel::Diagonal(
      std::vector<double>(spec.embed_dim, spec.between_var / spec.within_var));
  const double whiten = 1.0 / std::sqrt(spec.within_var);
  for (std::size_t i = 0; i < spec.embed_dim; ++i) {
    cohort.plda.transform[i * spec.embed_dim + i] = whiten;
  }

  for (Gender g : {Gender::kFemale, Gender::kMale}) {
    const char* prefix = g == Gender::kFemale ? "pf" : "pm";
    for (std::size_t i = 0; i < spec.pool_speakers_per_gender; ++i) {
      const auto spk = GenerateSpeaker(spec, PaddedId(prefix, i, 3), g);
      PoolSpeaker p;
      p.speaker_id = spk.id;
      p.gender = g;
      std::vector<std::vector<double>> vs;
      std::vector<double> frames;
      for (const auto& u : spk.utts) {
        vs.push_back(u.embedding.vector);
        frames.insert(frames.end(), u.contour.values.begin(),
                      u.contour.values.end());
      }
      p.mean_embedding = AverageVectors(vs);
      p.f0_stats = ComputeLogF0Stats(std::span<const double>(frames));
      cohort.pool.speakers.push_back(std::move(p));
    }
  }
  cohort.pool.plda = cohort.plda;

  for (Gender g : {Gender::kFemale, Gender::kMale}) {
    const char* prefix = g == Gender::kFemale ? "uf" : "um";
    for (std::size_t i = 0; i < spec.n_speakers_per_gender; ++i) {
      auto spk = GenerateSpeaker(spec, PaddedId(prefix, i, 3), g);
      for (auto& u : spk.utts) cohort.users.push_back(std::move(u));
    }
  }
  return cohort;
}

void ScenarioConfig::Validate() const {
  if (attack == AttackKind::kAnonymizedToAnonymized &&
      enroll_seed == trial_seed) {
    throw Error(ErrorCode::kInvalidConfig,
                "a-a scenario needs enroll_seed != trial_seed (both " +
                    std::to_string(enroll_seed) + ")");
  }
  if (!std::isfinite(f0_weight)) {
    throw Error(ErrorCode::kInvalidConfig, "f0_weight must be finite");
  }
}

SelectionConfig SimulationSelection() {
  SelectionConfig sel;
  sel.k_far = 8;
  sel.k_sel = 4;
  sel.scorer = ScorerKind::kPlda;
  sel.length_norm = false;
  return sel;
}

ScenarioResult RunScenario(const Cohort& cohort, const ScenarioConfig& cfg,
                           const SelectionConfig& sel_in,
                           const ScenarioHarness& harness) {
  if (harness.check_seeds) cfg.Validate();
  SelectionConfig sel = sel_in;
  sel.gender_policy = cfg.gender_policy;
  sel.Validate();

  const auto speakers = GroupUsers(cohort);
  for (const auto& s : speakers) {
    if (s.utt_indices.size() < 2) {
      throw Error(ErrorCode::kInvalidSpec,
                  "speaker '" + s.id +
                      "' needs an enrollment and at least one test "
                      "utterance");
    }
  }
  const PldaOptions popts{sel.length_norm};
  const std::size_t n_spk = speakers.size();

  auto derive_all = [&](std::uint64_t seed) {
    std::vector<PseudoSpeaker> out(n_spk);
    SelectionConfig s = sel;
    s.global_seed = seed;
    ParallelFor(n_spk, harness.threads, [&](std::size_t i) {
      SpeakerEmbedding src{speakers[i].id, std::nullopt, speakers[i].gender,
                           speakers[i].xvector};
      out[i] = DerivePseudoSpeaker(cohort.pool, src, s);
    });
    return out;
  };

  ScenarioResult result;
  const bool a_a = cfg.attack == AttackKind::kAnonymizedToAnonymized;
  if (harness.anonymize) {
    result.trial_pseudo = derive_all(cfg.trial_seed);
    if (a_a) result.enroll_pseudo = derive_all(cfg.enroll_seed);
  }

  // Trial side: every user utterance, anonymized unless bypassed.
  const std::size_t n_utt = cohort.users.size();
  std::vector<std::size_t> speaker_of(n_utt);
  for (std::size_t s = 0; s < n_spk; ++s) {
    for (std::size_t i : speakers[s].utt_indices) speaker_of[i] = s;
  }
  result.anonymized.resize(n_utt);
  std::vector<Features> test_feat(n_utt);
  std::vector<Features> test_orig(n_utt);
  ParallelFor(n_utt, harness.threads, [&](std::size_t i) {
    const Utterance& u = cohort.users[i];
    result.anonymized[i] =
        harness.anonymize
            ? Anonymize(u, result.trial_pseudo[speaker_of[i]], cfg.f0_mode,
                        cohort.spec.within_var, cfg.trial_seed)
            : u;
    test_feat[i] = Extract(cohort, result.anonymized[i], popts);
    test_orig[i] = Extract(cohort, u, popts);
  });

  // Enrollment side: utterance 0 of each speaker.
  std::vector<Features> enroll_feat(n_spk);
  std::vector<Features> enroll_orig(n_spk);
  ParallelFor(n_spk, harness.threads, [&](std::size_t s) {
    const Utterance& u = cohort.users[speakers[s].utt_indices.front()];
    enroll_orig[s] = test_orig[speakers[s].utt_indices.front()];
    if (harness.anonymize && a_a) {
      enroll_feat[s] =
          Extract(cohort,
                  Anonymize(u, result.enroll_pseudo[s], cfg.f0_mode,
                            cohort.spec.within_var, cfg.enroll_seed),
                  popts);
    } else {
      enroll_feat[s] = enroll_orig[s];
    }
  });

  struct Pair {
    std::size_t enroll;
    std::size_t test;
  };
  std::vector<Pair> pairs;
  for (std::size_t e = 0; e < n_spk; ++e) {
    for (std::size_t t = 0; t < n_spk; ++t) {
      if (speakers[t].gender != speakers[e].gender) continue;
      const auto& idx = speakers[t].utt_indices;
      for (std::size_t j = 1; j < idx.size(); ++j) pairs.push_back({e, idx[j]});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
    if (speakers[a.enroll].id != speakers[b.enroll].id) {
      return speakers[a.enroll].id < speakers[b.enroll].id;
    }
    return *cohort.users[a.test].embedding.utterance_id <
           *cohort.users[b.test].embedding.utterance_id;
  });

  const bool use_f0 = cfg.attacker == AttackerKind::kEmbeddingPlusF0;
  auto f0_term = [](const Features& e, const Features& t) {
    return -std::abs(e.log_f0_mean - t.log_f0_mean);
  };
  result.f0_weight = 0.0;
  if (use_f0) {
    result.f0_weight = cfg.f0_weight;
    if (!(cfg.f0_weight > 0.0)) {
      std::vector<double> emb(pairs.size()), f0(pairs.size());
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto& e = enroll_orig[pairs[p].enroll];
        const auto& t = test_orig[pairs[p].test];
        emb[p] = PldaScore(cohort.plda, e.latent, t.latent);
        f0[p] = f0_term(e, t);
      }
      const double f0_sd = StdDev(f0);
      result.f0_weight = f0_sd > 0.0 ? StdDev(emb) / f0_sd : 1.0;
    }
  }

  result.trials.resize(pairs.size());
  ParallelFor(pairs.size(), harness.threads, [&](std::size_t p) {
    const auto& e = enroll_feat[pairs[p].enroll];
    const auto& t = test_feat[pairs[p].test];
    Trial& trial = result.trials[p];
    trial.enroll_speaker_id = speakers[pairs[p].enroll].id;
    trial.test_utterance_id =
        *cohort.users[pairs[p].test].embedding.utterance_id;
    trial.target = speaker_of[pairs[p].test] == pairs[p].enroll;
    trial.score = PldaScore(cohort.plda, e.latent, t.latent);
    if (use_f0) trial.score += result.f0_weight * f0_term(e, t);
  });

  for (const auto& t : result.trials) {
    (t.target ? result.scores.target_scores : result.scores.nontarget_scores)
        .push_back(t.score);
  }
  result.report = Evaluate(result.scores);
  return result;
}

}  // namespace vpriv
