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

#include <cmath>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "vpriv/attack_sim.h"

namespace vpriv {
namespace {

using testing::CodeOf;

struct Batch {
  Cohort cohort;
  std::vector<SpeakerEmbedding> embeddings;
  std::vector<F0Contour> contours;
};

Batch MakeBatch(std::size_t utts) {
  CohortSpec spec;
  spec.n_speakers_per_gender = 4;
  spec.utts_per_speaker = utts;
  spec.embed_dim = 8;
  spec.frames_per_utt = 50;
  spec.pool_speakers_per_gender = 12;
  Batch b{GenerateCohort(spec), {}, {}};
  for (const auto& u : b.cohort.users) {
    b.embeddings.push_back(u.embedding);
    b.contours.push_back(u.contour);
  }
  return b;
}

SelectionConfig Sel() {
  SelectionConfig s = SimulationSelection();
  s.global_seed = 17;
  return s;
}

TEST(AnonymizeBatchTest, OnePseudoSpeakerPerSpeaker) {
  const Batch b = MakeBatch(20);
  const auto r = AnonymizeBatch(b.cohort.pool, b.embeddings, b.contours, Sel(),
                                F0Mode::kModified);
  ASSERT_EQ(r.pseudo.size(), 8u);
  for (std::size_t i = 1; i < r.pseudo.size(); ++i) {
    EXPECT_LT(r.pseudo[i - 1].source_speaker_id, r.pseudo[i].source_speaker_id);
  }
  ASSERT_EQ(r.contours.size(), b.contours.size());
  for (std::size_t i = 0; i < b.contours.size(); ++i) {
    EXPECT_EQ(r.contours[i].utterance_id, b.contours[i].utterance_id);
    const std::string& spk = b.embeddings[i].speaker_id;
    const PseudoSpeaker* p = nullptr;
    for (const auto& q : r.pseudo) {
      if (q.source_speaker_id == spk) p = &q;
    }
    ASSERT_NE(p, nullptr);
    const LogF0Stats s = ComputeLogF0Stats(r.contours[i]);
    EXPECT_NEAR(s.mean, p->f0_stats.mean, 1e-9);
    EXPECT_NEAR(s.std, p->f0_stats.std, 1e-9);
  }
  EXPECT_TRUE(r.warnings.empty());
}

TEST(AnonymizeBatchTest, OriginalModeCopiesContours) {
  const Batch b = MakeBatch(3);
  const auto r = AnonymizeBatch(b.cohort.pool, b.embeddings, b.contours, Sel(),
                                F0Mode::kOriginal);
  EXPECT_EQ(r.contours, b.contours);
}

TEST(AnonymizeBatchTest, ThreadCountDoesNotMatter) {
  const Batch b = MakeBatch(5);
  const auto a = AnonymizeBatch(b.cohort.pool, b.embeddings, b.contours, Sel(),
                                F0Mode::kModified, 1);
  for (std::size_t t : {4u, 8u}) {
    const auto c = AnonymizeBatch(b.cohort.pool, b.embeddings, b.contours,
                                  Sel(), F0Mode::kModified, t);
    EXPECT_EQ(a.pseudo, c.pseudo);
    EXPECT_EQ(a.contours, c.contours);
  }
}

TEST(AnonymizeBatchTest, DegenerateContours) {
  Batch b = MakeBatch(2);
  b.contours[0].values.assign(b.contours[0].values.size(), 0.0);
  b.contours[1].values = {150, 0, 150};
  const auto r = AnonymizeBatch(b.cohort.pool, b.embeddings, b.contours, Sel(),
                                F0Mode::kModified);
  EXPECT_EQ(r.contours[0], b.contours[0]);
  ASSERT_EQ(r.warnings.size(), 2u);
  const double target = std::exp(r.pseudo[0].f0_stats.mean);
  EXPECT_NEAR(r.contours[1].values[0], target, 1e-9 * target);
  EXPECT_EQ(r.contours[1].values[1], 0.0);
}

TEST(AnonymizeBatchTest, Errors) {
  Batch b = MakeBatch(2);
  auto contours = b.contours;
  contours.push_back({"ghost", {100}, 10});
  EXPECT_EQ(CodeOf([&] {
              AnonymizeBatch(b.cohort.pool, b.embeddings, contours, Sel(),
                             F0Mode::kModified);
            }),
            ErrorCode::kMissingId);
  auto emb = b.embeddings;
  emb[1].gender = OppositeGender(emb[0].gender);
  EXPECT_EQ(CodeOf([&] {
              AnonymizeBatch(b.cohort.pool, emb, b.contours, Sel(),
                             F0Mode::kModified);
            }),
            ErrorCode::kInvalidValue);
  emb = b.embeddings;
  emb[0].vector.pop_back();
  EXPECT_EQ(CodeOf([&] {
              AnonymizeBatch(b.cohort.pool, emb, b.contours, Sel(),
                             F0Mode::kModified);
            }),
            ErrorCode::kDimensionMismatch);
  SelectionConfig big = Sel();
  big.k_far = 13;
  EXPECT_EQ(CodeOf([&] {
              AnonymizeBatch(b.cohort.pool, b.embeddings, b.contours, big,
                             F0Mode::kModified);
            }),
            ErrorCode::kPoolTooSmall);
}

TEST(ContourStatsTest, SkipsUnvoiced) {
  const std::vector<F0Contour> cs{
      {"a", {100, 0, 400}, 10}, {"b", {0, 0}, 10}, {"c", {150}, 10}};
  std::vector<std::string> skipped;
  const auto s = ContourStats(cs, &skipped);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].id, "a");
  EXPECT_EQ(s[0].stats, ComputeLogF0Stats(cs[0]));
  EXPECT_EQ(skipped, std::vector<std::string>{"b"});
}

TEST(ScoreTrialsTest, MatchesLibraryScores) {
  const Batch b = MakeBatch(3);
  std::vector<SpeakerEmbedding> enroll, test;
  for (const auto& e : b.embeddings) {
    (e.utterance_id->ends_with("-00") ? enroll : test).push_back(e);
  }
  std::vector<TrialKeyRecord> key;
  for (const auto& e : enroll) {
    for (const auto& t : test)
      key.push_back({e.speaker_id, *t.utterance_id, false});
  }
  const PldaOptions opts{true};
  const auto scores =
      ScoreTrials(b.cohort.plda, ScorerKind::kPlda, opts, enroll, test, key, 3);
  ASSERT_EQ(scores.size(), key.size());
  for (std::size_t i = 0; i < key.size(); ++i) {
    const SpeakerEmbedding* e = nullptr;
    const SpeakerEmbedding* t = nullptr;
    for (const auto& x : enroll)
      if (x.speaker_id == key[i].enroll_speaker_id) e = &x;
    for (const auto& x : test)
      if (*x.utterance_id == key[i].test_utterance_id) t = &x;
    EXPECT_EQ(scores[i].score,
              PldaScore(b.cohort.plda, Project(b.cohort.plda, *e, opts),
                        Project(b.cohort.plda, *t, opts)));
  }
  const auto cos =
      ScoreTrials(std::nullopt, ScorerKind::kCosine, opts, enroll, test, key);
  EXPECT_EQ(cos[0].score, CosineScore(enroll[0], test[0]));
  EXPECT_TRUE(
      ScoreTrials(b.cohort.plda, ScorerKind::kPlda, opts, enroll, test, {})
          .empty());
}

TEST(ScoreTrialsTest, Errors) {
  const Batch b = MakeBatch(2);
  const std::vector<TrialKeyRecord> key{{"nobody", "um000-01", true}};
  EXPECT_EQ(CodeOf([&] {
              ScoreTrials(b.cohort.plda, ScorerKind::kPlda, {}, b.embeddings,
                          b.embeddings, key);
            }),
            ErrorCode::kMissingId);
  EXPECT_EQ(CodeOf([&] {
              ScoreTrials(std::nullopt, ScorerKind::kPlda, {}, b.embeddings,
                          b.embeddings, key);
            }),
            ErrorCode::kInvalidConfig);
}

}  // namespace
}  // namespace vpriv
