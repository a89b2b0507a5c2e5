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

#include "vpriv/metrics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "vpriv/error.h"

namespace vpriv {

namespace {

void CheckPopulations(const TrialScoreSet& s) {
  if (s.target_scores.empty() || s.nontarget_scores.empty()) {
    throw Error(ErrorCode::kEmptyPopulation,
                "need at least one target and one nontarget score (got " +
                    std::to_string(s.target_scores.size()) + " and " +
                    std::to_string(s.nontarget_scores.size()) + ")");
  }
  for (const auto* v : {&s.target_scores, &s.nontarget_scores}) {
    for (double x : *v) {
      if (!std::isfinite(x)) {
        throw Error(ErrorCode::kInvalidValue, "score is not finite");
      }
    }
  }
}

struct LabeledScore {
  double score;
  bool target;
  std::size_t index;  // position within its own population
};

// Ascending by score; within a tie, targets before nontargets.
std::vector<LabeledScore> SortedTrials(const TrialScoreSet& s) {
  std::vector<LabeledScore> all;
  all.reserve(s.target_scores.size() + s.nontarget_scores.size());
  for (std::size_t i = 0; i < s.target_scores.size(); ++i) {
    all.push_back({s.target_scores[i], true, i});
  }
  for (std::size_t i = 0; i < s.nontarget_scores.size(); ++i) {
    all.push_back({s.nontarget_scores[i], false, i});
  }
  std::sort(all.begin(), all.end(),
            [](const LabeledScore& a, const LabeledScore& b) {
              if (a.score != b.score) return a.score < b.score;
              return a.target && !b.target;
            });
  return all;
}

// log(1 + e^x) without overflow.
double Softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// Allows infinite LLRs on the side where their cost is zero.
double CllrUnchecked(const TrialScoreSet& s) {
  // Running means keep the all-equal case exact.
  double tar = 0.0;
  double k = 0.0;
  for (double x : s.target_scores) {
    k += 1.0;
    tar += (Softplus(-x) - tar) / k;
  }
  double non = 0.0;
  k = 0.0;
  for (double x : s.nontarget_scores) {
    k += 1.0;
    non += (Softplus(x) - non) / k;
  }
  return 0.5 * (tar + non) / std::numbers::ln2;
}

double Cross(const DetPoint& o, const DetPoint& a, const DetPoint& b) {
  return (a.pfa - o.pfa) * (b.pmiss - o.pmiss) -
         (a.pmiss - o.pmiss) * (b.pfa - o.pfa);
}

}  // namespace

std::vector<DetPoint> DetPoints(const TrialScoreSet& scores) {
  CheckPopulations(scores);
  const auto sorted = SortedTrials(scores);
  const double n_tar = static_cast<double>(scores.target_scores.size());
  const double n_non = static_cast<double>(scores.nontarget_scores.size());

  const std::size_t n_tar_count = scores.target_scores.size();
  std::vector<DetPoint> points{{0.0, 1.0}};
  std::size_t accepted_tar = 0;
  std::size_t accepted_non = 0;
  // Lower the threshold through each distinct score, highest first.
  std::size_t i = sorted.size();
  while (i > 0) {
    const double threshold = sorted[i - 1].score;
    while (i > 0 && sorted[i - 1].score == threshold) {
      if (sorted[i - 1].target) {
        ++accepted_tar;
      } else {
        ++accepted_non;
      }
      --i;
    }
    points.push_back({static_cast<double>(accepted_non) / n_non,
                      static_cast<double>(n_tar_count - accepted_tar) / n_tar});
  }
  return points;
}

std::vector<DetPoint> RocConvexHull(const TrialScoreSet& scores) {
  const auto points = DetPoints(scores);
  // Monotone chain over points already ordered by Pfa ascending, Pmiss
  // descending; keep only counter-clockwise turns (the lower-left hull).
  std::vector<DetPoint> hull;
  for (const auto& p : points) {
    while (!hull.empty() && hull.back().pfa == p.pfa) {
      hull.pop_back();
    }
    while (hull.size() >= 2 &&
           Cross(hull[hull.size() - 2], hull.back(), p) <= 0.0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return hull;
}

double Eer(const TrialScoreSet& scores) {
  const auto hull = RocConvexHull(scores);
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const DetPoint& a = hull[i];
    const DetPoint& b = hull[i + 1];
    const double da = a.pmiss - a.pfa;
    const double db = b.pmiss - b.pfa;
    if (da >= 0.0 && db <= 0.0) {
      if (da == db) return a.pfa;
      const double t = da / (da - db);
      return a.pfa + t * (b.pfa - a.pfa);
    }
  }
  // Unreachable: the hull runs from (0, 1) to (1, 0).
  return 0.5;
}

double Cllr(const TrialScoreSet& scores) {
  CheckPopulations(scores);
  return CllrUnchecked(scores);
}

TrialScoreSet PavCalibrate(const TrialScoreSet& scores) {
  CheckPopulations(scores);
  const auto sorted = SortedTrials(scores);

  // Pool adjacent violators over the 0/1 labels, unit weights.
  struct Block {
    double sum;
    double count;
  };
  std::vector<Block> blocks;
  std::vector<std::size_t> block_end;  // exclusive end index into sorted
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    blocks.push_back({sorted[i].target ? 1.0 : 0.0, 1.0});
    block_end.push_back(i + 1);
    while (blocks.size() >= 2) {
      const Block& hi = blocks[blocks.size() - 1];
      const Block& lo = blocks[blocks.size() - 2];
      // Merge while the lower block's mean is not below the upper one's.
      if (lo.sum * hi.count < hi.sum * lo.count) break;
      blocks[blocks.size() - 2] = {lo.sum + hi.sum, lo.count + hi.count};
      block_end[block_end.size() - 2] = block_end.back();
      blocks.pop_back();
      block_end.pop_back();
    }
  }

  const double n_tar = static_cast<double>(scores.target_scores.size());
  const double n_non = static_cast<double>(scores.nontarget_scores.size());
  const double log_prior_odds = std::log(n_tar / n_non);

  TrialScoreSet out;
  out.target_scores.resize(scores.target_scores.size());
  out.nontarget_scores.resize(scores.nontarget_scores.size());
  std::size_t begin = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const double tar = blocks[b].sum;
    const double non = blocks[b].count - blocks[b].sum;
    // log(p / (1 - p)) - log(n_tar / n_non), infinite for pure blocks.
    double llr;
    if (non == 0.0) {
      llr = INFINITY;
    } else if (tar == 0.0) {
      llr = -INFINITY;
    } else {
      llr = std::log(tar / non) - log_prior_odds;
    }
    for (std::size_t i = begin; i < block_end[b]; ++i) {
      (sorted[i].target ? out.target_scores
                        : out.nontarget_scores)[sorted[i].index] = llr;
    }
    begin = block_end[b];
  }
  return out;
}

double MinCllr(const TrialScoreSet& scores) {
  return CllrUnchecked(PavCalibrate(scores));
}

EvaluationReport Evaluate(const TrialScoreSet& scores) {
  EvaluationReport r;
  r.eer = Eer(scores);
  r.cllr = Cllr(scores);
  r.min_cllr = MinCllr(scores);
  r.n_target = scores.target_scores.size();
  r.n_nontarget = scores.nontarget_scores.size();
  return r;
}

}  // namespace vpriv
