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

#ifndef VPRIV_F0_TRANSFORM_H_
#define VPRIV_F0_TRANSFORM_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vpriv {

// Per-frame F0 in Hz. 0.0 marks an unvoiced frame; every other value is
// strictly positive.
struct F0Contour {
  std::string utterance_id;
  std::vector<double> values;
  double frame_shift_ms = 10.0;

  bool operator==(const F0Contour&) const = default;
};

// Mean and population standard deviation of ln(F0) over voiced frames.
struct LogF0Stats {
  double mean = 0.0;
  double std = 0.0;
  std::uint64_t voiced_frame_count = 0;

  bool operator==(const LogF0Stats&) const = default;
};

// Throws kInvalidValue on negative or non-finite values.
void ValidateContour(const F0Contour& contour);

// Throws kNoVoicedFrames if no value is > 0.
LogF0Stats ComputeLogF0Stats(std::span<const double> values);
LogF0Stats ComputeLogF0Stats(const F0Contour& contour);

// Maps every voiced frame through
//   exp(target.mean + (target.std / source.std) * (ln f - source.mean))
// and leaves unvoiced frames at 0.0.
//
// source.std == 0 with target.std == 0 relocates every voiced frame to
// exp(target.mean). source.std == 0 with target.std > 0 throws
// kDegenerateSourceStats.
F0Contour TransformContour(const F0Contour& contour, const LogF0Stats& source,
                           const LogF0Stats& target);

// Pseudo-speaker target: arithmetic mean of the member means and of the
// member stds; frame counts are summed. Throws kEmptySpeakerSet.
LogF0Stats AggregateTargetStats(std::span<const LogF0Stats> per_speaker);

}  // namespace vpriv

#endif  // VPRIV_F0_TRANSFORM_H_
