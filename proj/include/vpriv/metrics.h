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

#ifndef VPRIV_METRICS_H_
#define VPRIV_METRICS_H_

#include <cstddef>
#include <vector>

namespace vpriv {

// Scores are natural-log likelihood ratios; higher means "same speaker".
struct TrialScoreSet {
  std::vector<double> target_scores;
  std::vector<double> nontarget_scores;

  bool operator==(const TrialScoreSet&) const = default;
};

struct DetPoint {
  double pfa = 0.0;
  double pmiss = 0.0;

  bool operator==(const DetPoint&) const = default;
};

struct EvaluationReport {
  double eer = 0.0;       // fraction in [0, 0.5]
  double cllr = 0.0;      // bits
  double min_cllr = 0.0;  // bits
  std::size_t n_target = 0;
  std::size_t n_nontarget = 0;

  bool operator==(const EvaluationReport&) const = default;
};

// Every distinct empirical operating point, accepting trials whose score is
// >= the threshold, ascending in Pfa. Starts at (0, 1) and ends at (1, 0).
// Throws kEmptyPopulation / kInvalidValue.
std::vector<DetPoint> DetPoints(const TrialScoreSet& scores);

// Vertices of the lower-left convex hull of the empirical ROC, from (0, 1)
// to (1, 0).
std::vector<DetPoint> RocConvexHull(const TrialScoreSet& scores);

// Equal error rate where the ROC convex hull crosses Pmiss == Pfa.
double Eer(const TrialScoreSet& scores);

// 0.5 * [mean_tar log2(1 + e^-s) + mean_non log2(1 + e^s)].
double Cllr(const TrialScoreSet& scores);

// Recalibrated LLRs from the pool-adjacent-violators fit of the labels
// against score rank, converted with the empirical prior odds
// (n_target / n_nontarget). Tied scores are ordered targets first, so every
// tie group ends up in one block. Entries may be +/-infinity. Output
// entries line up with the input entries.
TrialScoreSet PavCalibrate(const TrialScoreSet& scores);

// Cllr after PavCalibrate.
double MinCllr(const TrialScoreSet& scores);

EvaluationReport Evaluate(const TrialScoreSet& scores);

}  // namespace vpriv

#endif  // VPRIV_METRICS_H_
