// Copyright (c) 2026, the fsaug authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FSAUG_TENSOR_HPP_
#define FSAUG_TENSOR_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fsaug {

/// Dense real (n, c, h, w) field, row-major, no range constraint. Used for
/// amplitudes, phases and unclamped spatial intermediates.
struct FieldBatch {
  int n = 0, c = 0, h = 0, w = 0;
  std::vector<double> data;

  FieldBatch() = default;
  FieldBatch(int n_, int c_, int h_, int w_, double fill = 0.0);

  std::size_t index(int ni, int ci, int hi, int wi) const {
    return ((static_cast<std::size_t>(ni) * c + ci) * h + hi) * w + wi;
  }
  double& at(int ni, int ci, int hi, int wi) { return data[index(ni, ci, hi, wi)]; }
  double at(int ni, int ci, int hi, int wi) const { return data[index(ni, ci, hi, wi)]; }
  bool same_shape(const FieldBatch& o) const {
    return n == o.n && c == o.c && h == o.h && w == o.w;
  }
};

/// Batch of images with values in [0, 1], layout (n, c, h, w) row-major.
/// C is 1 (grayscale) or 3 (RGB); H and W are at least 2.
struct ImageBatch {
  int n = 0, c = 0, h = 0, w = 0;
  std::vector<double> data;

  ImageBatch() = default;
  ImageBatch(int n_, int c_, int h_, int w_);  // validates dimensions, zero-fills

  std::size_t index(int ni, int ci, int hi, int wi) const {
    return ((static_cast<std::size_t>(ni) * c + ci) * h + hi) * w + wi;
  }
  double& at(int ni, int ci, int hi, int wi) { return data[index(ni, ci, hi, wi)]; }
  double at(int ni, int ci, int hi, int wi) const { return data[index(ni, ci, hi, wi)]; }

  /// Throws if any value lies outside [0, 1].
  void check_range() const;

  /// Single image ni as a batch of one.
  ImageBatch image(int ni) const;
};

/// Allocate an N x C x H x W batch filled with a constant. Throws on invalid
/// dimensions or fill outside [0, 1].
ImageBatch alloc_batch(int n, int c, int h, int w, double fill);

/// Stack of V augmented views of a batch, layout (n, v, c, h, w) row-major.
struct ViewBatch {
  int n = 0, v = 0, c = 0, h = 0, w = 0;
  std::vector<double> data;

  ViewBatch() = default;
  ViewBatch(int n_, int v_, int c_, int h_, int w_);

  std::size_t index(int ni, int vi, int ci, int hi, int wi) const {
    return (((static_cast<std::size_t>(ni) * v + vi) * c + ci) * h + hi) * w + wi;
  }
  double& at(int ni, int vi, int ci, int hi, int wi) {
    return data[index(ni, vi, ci, hi, wi)];
  }
  double at(int ni, int vi, int ci, int hi, int wi) const {
    return data[index(ni, vi, ci, hi, wi)];
  }

  /// Extract view vi as an ImageBatch (copies).
  ImageBatch view(int vi) const;
  /// Overwrite view vi from a batch of matching shape.
  void set_view(int vi, const ImageBatch& img);
};

/// Complex 2-D spectrum per image channel, indexed (n, c, u, v). `shifted`
/// is true when the zero-frequency bin sits at the centered index
/// (h/2, w/2); false when it sits at (0, 0).
struct SpectrumBatch {
  int n = 0, c = 0, h = 0, w = 0;
  bool shifted = false;
  std::vector<double> re, im;

  SpectrumBatch() = default;
  SpectrumBatch(int n_, int c_, int h_, int w_, bool shifted_ = false);

  std::size_t index(int ni, int ci, int ui, int vi) const {
    return ((static_cast<std::size_t>(ni) * c + ci) * h + ui) * w + vi;
  }
};

/// Row-major dense real matrix.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Deterministic seeded generator (splitmix64 state advance). The same seed
/// produces the same stream on every platform. Not safe to share across
/// concurrent tasks; split seeds instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Next raw 64-bit word.
  std::uint64_t next_u64();

  /// Uniform double in [0, 1) built from the top 53 bits of the next word.
  double next_double();

  /// lo + (hi - lo) * u with u in [0, 1). Advances the state exactly once.
  /// Throws if lo > hi.
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n). Advances the state exactly once.
  std::uint64_t next_below(std::uint64_t n);

  /// Fisher-Yates permutation of {0, ..., n-1}. Throws if n < 1.
  std::vector<int> permutation(int n);

 private:
  std::uint64_t state_;
};

}  // namespace fsaug

#endif  // FSAUG_TENSOR_HPP_
