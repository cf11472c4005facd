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

#ifndef FSAUG_STYLE_AUG_HPP_
#define FSAUG_STYLE_AUG_HPP_

#include <vector>

#include "fsaug/tensor.hpp"

namespace fsaug {

/// Bounds for the sampled area ratio r between the substituted low-frequency
/// amplitude block and the full amplitude field.
struct RatioRange {
  double r_min = 0.02;
  double r_max = 1.0;

  RatioRange() = default;
  RatioRange(double lo, double hi);  // validates 0 <= lo <= hi <= 1
};

/// Half side length l = min(floor(r*h/2), floor(r*w/2)) of the centered
/// substitution block.
int substitution_half_length(double r, int h, int w);

/// Replace the centered block rows [h/2 - l, h/2 + l) x cols [w/2 - l,
/// w/2 + l) of src_amp with the same block of tgt_amp, per (n, c) plane.
/// Both fields must be center-shifted amplitudes of identical shape.
FieldBatch substitute_low_freq(const FieldBatch& src_amp, const FieldBatch& tgt_amp,
                               double r);

/// Center-shifted amplitude field of `batch` after substituting every
/// image's low-frequency block with that of image `style_index`, at ratio r.
/// Spectrum-level output; no inverse transform is applied.
FieldBatch substituted_amplitudes(const ImageBatch& batch, int style_index, double r);

/// Per-image Fourier augmentation with caller-supplied style indices and
/// ratios (one of each per image). Channels of one image share its (k, r).
ImageBatch fa_with(const ImageBatch& batch, const std::vector<int>& style_index,
                   const std::vector<double>& ratio);
/// Same, without the final clamp to [0, 1].
FieldBatch fa_with_raw(const ImageBatch& batch, const std::vector<int>& style_index,
                       const std::vector<double>& ratio);

/// Batch styles standardization with caller-supplied per-view style indices
/// and a single shared ratio. View v substitutes every image's block with
/// that of image view_styles[v]; phases stay per-image.
ViewBatch bss_with(const ImageBatch& batch, const std::vector<int>& view_styles,
                   double r);
/// Same, without the final clamp; one unclamped field per view.
std::vector<FieldBatch> bss_with_raw(const ImageBatch& batch,
                                     const std::vector<int>& view_styles, double r);

/// Fourier augmentation: each image i independently draws a style index
/// k_i over {0, ..., N-1} and a ratio r_i ~ U(r_min, r_max), then has its
/// centered low-frequency amplitude block replaced by image k_i's while
/// keeping its own phase. Inverse transform clamped to [0, 1].
ImageBatch fourier_augment(const ImageBatch& batch, const RatioRange& range, Rng& rng);

/// Batch styles standardization: one permutation of {0, ..., N-1} is drawn
/// and its first n_views entries become the per-view style indices; a single
/// ratio r ~ U(r_min, r_max) is shared by all views. Within a view every
/// image receives the view's style block, so a unique style prevails.
/// Throws if n_views > N.
ViewBatch batch_styles_standardize(const ImageBatch& batch, int n_views,
                                   const RatioRange& range, Rng& rng);

/// True iff for every view the centered substitution blocks (half length
/// derived from r) of all images' amplitude spectra agree bin-wise within
/// 1e-5 relative. Comparison covers the conjugate-symmetric interior of the
/// block; the asymmetric rim row/column is excluded since the real-valued
/// output cannot carry independent amplitudes there.
bool standardized_low_freq_check(const ViewBatch& views, double r);

}  // namespace fsaug

#endif  // FSAUG_STYLE_AUG_HPP_
