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

#include "vpriv/plda.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "vpriv/error.h"

namespace vpriv {

namespace {

void CheckDim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " has dimension " + std::to_string(got) +
                    ", expected " + std::to_string(expected));
  }
}

double Norm(std::span<const double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

}  // namespace

char GenderCode(Gender g) { return g == Gender::kMale ? 'M' : 'F'; }

void PldaModel::Validate() const {
  if (dim == 0) {
    throw Error(ErrorCode::kInvalidValue, "PLDA dimension must be positive");
  }
  CheckDim(dim, mean.size(), "PLDA mean");
  CheckDim(dim, psi.size(), "PLDA psi");
  CheckDim(dim * dim, transform.size(), "PLDA transform");
  for (double x : mean) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidValue, "PLDA mean is not finite");
    }
  }
  for (double x : transform) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidValue, "PLDA transform is not finite");
    }
  }
  for (double x : psi) {
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorCode::kInvalidValue,
                  "PLDA psi must be finite and non-negative");
    }
  }
}

PldaModel PldaModel::Diagonal(std::vector<double> psi) {
  PldaModel m;
  m.dim = psi.size();
  m.mean.assign(m.dim, 0.0);
  m.transform.assign(m.dim * m.dim, 0.0);
  for (std::size_t i = 0; i < m.dim; ++i) m.transform[i * m.dim + i] = 1.0;
  m.psi = std::move(psi);
  return m;
}

std::vector<double> LengthNormalize(std::span<const double> v) {
  const double norm = Norm(v);
  if (norm == 0.0) {
    throw Error(ErrorCode::kZeroVector,
                "cannot length-normalize a zero vector");
  }
  const double scale = std::sqrt(static_cast<double>(v.size())) / norm;
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x *= scale;
  return out;
}

std::vector<double> Project(const PldaModel& model, std::span<const double> v,
                            const PldaOptions& opts) {
  CheckDim(model.dim, v.size(), "embedding");
  std::vector<double> centered = opts.length_normalize
                                     ? LengthNormalize(v)
                                     : std::vector<double>(v.begin(), v.end());
  for (std::size_t i = 0; i < model.dim; ++i) centered[i] -= model.mean[i];
  std::vector<double> out(model.dim, 0.0);
  for (std::size_t r = 0; r < model.dim; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < model.dim; ++c) {
      acc += model.TransformAt(r, c) * centered[c];
    }
    out[r] = acc;
  }
  return out;
}

std::vector<double> Project(const PldaModel& model, const SpeakerEmbedding& e,
                            const PldaOptions& opts) {
  try {
    return Project(model, std::span<const double>(e.vector), opts);
  } catch (const Error& err) {
    throw Error(err.code(), "speaker '" + e.speaker_id + "': " + err.message());
  }
}

double PldaScore(const PldaModel& model, std::span<const double> enroll,
                 std::span<const double> test) {
  CheckDim(model.dim, enroll.size(), "enrollment vector");
  CheckDim(model.dim, test.size(), "test vector");
  double llr = 0.0;
  for (std::size_t i = 0; i < model.dim; ++i) {
    const double psi = model.psi[i];
    const double shrink = psi / (psi + 1.0);
    const double mean_same = shrink * enroll[i];
    const double var_same = 1.0 + shrink;
    const double var_diff = 1.0 + psi;
    const double d = test[i] - mean_same;
    llr += -0.5 * std::log(var_same) - d * d / (2.0 * var_same) +
           0.5 * std::log(var_diff) + test[i] * test[i] / (2.0 * var_diff);
  }
  return llr;
}

std::vector<double> AverageVectors(std::span<const std::vector<double>> vs) {
  if (vs.empty()) {
    throw Error(ErrorCode::kEmptySpeakerSet, "no vectors to average");
  }
  std::vector<double> out(vs.front().size(), 0.0);
  for (const auto& v : vs) {
    CheckDim(out.size(), v.size(), "vector");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
  }
  const double n = static_cast<double>(vs.size());
  for (double& x : out) x /= n;
  return out;
}

double CosineScore(std::span<const double> a, std::span<const double> b) {
  CheckDim(a.size(), b.size(), "second vector");
  const double na = Norm(a);
  const double nb = Norm(b);
  if (na == 0.0 || nb == 0.0) {
    throw Error(ErrorCode::kZeroVector, "cosine score of a zero vector");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

double CosineScore(const SpeakerEmbedding& a, const SpeakerEmbedding& b) {
  return CosineScore(std::span<const double>(a.vector),
                     std::span<const double>(b.vector));
}

}  // namespace vpriv
