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

#ifndef VPRIV_PLDA_H_
#define VPRIV_PLDA_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vpriv {

enum class Gender { kMale, kFemale };

inline Gender OppositeGender(Gender g) {
  return g == Gender::kMale ? Gender::kFemale : Gender::kMale;
}

// 'M' or 'F'.
char GenderCode(Gender g);

struct SpeakerEmbedding {
  std::string speaker_id;
  std::optional<std::string> utterance_id;
  Gender gender = Gender::kMale;
  std::vector<double> vector;

  bool operator==(const SpeakerEmbedding&) const = default;
};

// Two-covariance PLDA in diagonalized form. After
//   y = transform * (x - mean)
// the within-speaker covariance is the identity and the between-speaker
// covariance is diag(psi).
struct PldaModel {
  std::size_t dim = 0;
  std::vector<double> mean;       // dim
  std::vector<double> transform;  // dim x dim, row-major
  std::vector<double> psi;        // dim, >= 0

  double TransformAt(std::size_t row, std::size_t col) const {
    return transform[row * dim + col];
  }

  // Throws kInvalidValue / kDimensionMismatch on a malformed model.
  void Validate() const;

  // Zero mean, identity transform.
  static PldaModel Diagonal(std::vector<double> psi);

  bool operator==(const PldaModel&) const = default;
};

struct PldaOptions {
  // Scale each embedding to Euclidean norm sqrt(dim) before centering.
  bool length_normalize = true;
};

// Rescales v to norm sqrt(v.size()). Throws kZeroVector.
std::vector<double> LengthNormalize(std::span<const double> v);

// transform * (maybe_length_normalize(v) - mean). Throws kDimensionMismatch.
std::vector<double> Project(const PldaModel& model, std::span<const double> v,
                            const PldaOptions& opts = {});
std::vector<double> Project(const PldaModel& model, const SpeakerEmbedding& e,
                            const PldaOptions& opts = {});

// Natural-log likelihood ratio of "same speaker" against "different
// speakers" for two projected vectors. With a single enrollment vector u,
// per dimension:
//   same:  N(v; psi/(psi+1) u, 1 + psi/(psi+1))
//   diff:  N(v; 0, 1 + psi)
double PldaScore(const PldaModel& model, std::span<const double> enroll,
                 std::span<const double> test);

// Elementwise mean of projected enrollment vectors, used for multi-session
// enrollment. Throws kEmptySpeakerSet / kDimensionMismatch.
std::vector<double> AverageVectors(std::span<const std::vector<double>> vs);

// Cosine similarity. Throws kZeroVector / kDimensionMismatch.
double CosineScore(std::span<const double> a, std::span<const double> b);
double CosineScore(const SpeakerEmbedding& a, const SpeakerEmbedding& b);

}  // namespace vpriv

#endif  // VPRIV_PLDA_H_
