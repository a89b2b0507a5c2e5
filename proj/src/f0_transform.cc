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

#include "vpriv/f0_transform.h"

#include <cmath>

#include "vpriv/error.h"

namespace vpriv {

void ValidateContour(const F0Contour& contour) {
  for (std::size_t i = 0; i < contour.values.size(); ++i) {
    const double v = contour.values[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kInvalidValue, "contour '" + contour.utterance_id +
                                                "' frame " + std::to_string(i) +
                                                " is not a finite value >= 0");
    }
  }
}

LogF0Stats ComputeLogF0Stats(std::span<const double> values) {
  // Two passes over the voiced frames: mean first, then centered squares.
  std::uint64_t n = 0;
  double sum = 0.0;
  for (double v : values) {
    if (v > 0.0) {
      sum += std::log(v);
      ++n;
    }
  }
  if (n == 0) {
    throw Error(ErrorCode::kNoVoicedFrames, "contour has no voiced frames");
  }
  const double mean = sum / static_cast<double>(n);
  double sq = 0.0;
  for (double v : values) {
    if (v > 0.0) {
      const double d = std::log(v) - mean;
      sq += d * d;
    }
  }
  return {mean, std::sqrt(sq / static_cast<double>(n)), n};
}

LogF0Stats ComputeLogF0Stats(const F0Contour& contour) {
  try {
    return ComputeLogF0Stats(std::span<const double>(contour.values));
  } catch (const Error& e) {
    throw Error(e.code(), "utterance '" + contour.utterance_id +
                              "' has no voiced frames");
  }
}

F0Contour TransformContour(const F0Contour& contour, const LogF0Stats& source,
                           const LogF0Stats& target) {
  double ratio = 0.0;
  if (source.std > 0.0) {
    ratio = target.std / source.std;
  } else if (target.std > 0.0) {
    throw Error(ErrorCode::kDegenerateSourceStats,
                "utterance '" + contour.utterance_id +
                    "': source log-F0 std is 0 but target std is " +
                    std::to_string(target.std));
  }
  F0Contour out = contour;
  for (double& v : out.values) {
    if (v > 0.0) {
      v = std::exp(target.mean + ratio * (std::log(v) - source.mean));
    }
  }
  return out;
}

LogF0Stats AggregateTargetStats(std::span<const LogF0Stats> per_speaker) {
  if (per_speaker.empty()) {
    throw Error(ErrorCode::kEmptySpeakerSet,
                "cannot aggregate F0 statistics of zero speakers");
  }
  // Running means, so identical members reproduce their values exactly.
  LogF0Stats out;
  double k = 0.0;
  for (const auto& s : per_speaker) {
    if (s.voiced_frame_count == 0) {
      throw Error(ErrorCode::kInvalidValue,
                  "member F0 statistics have zero voiced frames");
    }
    k += 1.0;
    out.mean += (s.mean - out.mean) / k;
    out.std += (s.std - out.std) / k;
    out.voiced_frame_count += s.voiced_frame_count;
  }
  return out;
}

}  // namespace vpriv
