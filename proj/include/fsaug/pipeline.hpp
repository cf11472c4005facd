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

#ifndef FSAUG_PIPELINE_HPP_
#define FSAUG_PIPELINE_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "fsaug/style_aug.hpp"
#include "fsaug/tensor.hpp"

namespace fsaug {

enum class StyleMode { kBss, kFa, kNone };

/// One group of views: how many, their output side length, the area range
/// for the random resized crop, and the style transfer applied first.
struct ViewSpec {
  int count = 1;
  int crop_size = 2;
  double scale_lo = 0.2;
  double scale_hi = 1.0;
  StyleMode style_mode = StyleMode::kNone;

  void validate() const;
};

/// Maximum perturbation magnitudes for the batch-wise color jitter.
struct ColorJitterParams {
  double brightness = 0.0;
  double contrast = 0.0;
  double saturation = 0.0;
  double grayscale_prob = 0.0;
};

/// One concrete set of jitter factors, applied identically to every image.
struct JitterFactors {
  double brightness = 1.0;
  double contrast = 1.0;
  double saturation = 1.0;
  bool to_grayscale = false;
};

/// Knobs for the per-sample geometric ops and per-view color jitter used by
/// the view-generation recipes. Defaults follow the usual pretraining
/// recipe; plain() disables everything except the mandatory crop.
struct PipelineParams {
  ColorJitterParams color{0.4, 0.4, 0.4, 0.2};
  double hflip_prob = 0.5;
  double max_rotate_deg = 15.0;   // angle bound for small rotations
  double cutout_frac = 0.25;      // hole side as a fraction of crop_size; 0 disables

  static PipelineParams plain();
};

/// Crop the region (top, left) x (crop_h, crop_w) of every image, then
/// bilinearly resize to out_size x out_size (half-pixel-center sampling).
ImageBatch crop_and_resize(const ImageBatch& batch, int top, int left, int crop_h,
                           int crop_w, int out_size);

/// Per-image random resized crop: samples an area fraction in the spec's
/// scale range and an aspect ratio in [3/4, 4/3]; falls back to a center
/// crop when no valid geometry is found in 10 attempts.
ImageBatch random_resized_crop(const ImageBatch& batch, const ViewSpec& spec, Rng& rng);

/// Mirror columns of every image.
ImageBatch hflip(const ImageBatch& batch);

/// Rotate every image by `degrees` around its center with bilinear
/// resampling and zero padding.
ImageBatch rotate(const ImageBatch& batch, double degrees);

/// Per-image rotation by an angle ~ U(-max_deg, +max_deg), 0 <= max_deg <= 30.
ImageBatch rotate_small(const ImageBatch& batch, double max_deg, Rng& rng);

/// Zero a hole x hole square at a uniform position, per image. Requires
/// hole < min(H, W).
ImageBatch cutout(const ImageBatch& batch, int hole, Rng& rng);

/// Draw one factor set: multiplier in [max(0, 1-m), 1+m] per magnitude m,
/// grayscale with probability grayscale_prob. Always advances the rng by
/// four draws.
JitterFactors sample_jitter_factors(const ColorJitterParams& params, Rng& rng);

/// Apply one factor set identically to every image: brightness multiplies,
/// contrast interpolates toward the per-image mean luminance, saturation
/// toward per-pixel grayscale; outputs clamped to [0, 1] after each step.
ImageBatch apply_color_jitter(const ImageBatch& batch, const JitterFactors& factors);

/// Sample one factor set per call and apply it batch-wise.
ImageBatch batch_color_jitter(const ImageBatch& batch, const ColorJitterParams& params,
                              Rng& rng);

/// SimCLR view generation: one styles-standardization pass supplies all
/// sum(spec.count) views (distinct styles, one shared ratio), then each view
/// goes through per-sample geometric ops and one batch-wise color jitter.
/// Returns one ViewBatch per spec group, in order.
std::vector<ViewBatch> make_simclr_views(const ImageBatch& batch,
                                         const std::vector<ViewSpec>& specs,
                                         const RatioRange& range, Rng& rng,
                                         const PipelineParams& params = {});

/// SWaV multi-crop: exactly 2 global views (styles standardized) and
/// local_spec.count local views (per-sample Fourier augmentation).
std::pair<ViewBatch, ViewBatch> make_swav_views(const ImageBatch& batch,
                                                const ViewSpec& global_spec,
                                                const ViewSpec& local_spec,
                                                const RatioRange& range, Rng& rng,
                                                const PipelineParams& params = {});

/// Per-(image, view) boolean patch masks; dropped[index(...)] is 1 when the
/// patch is dropped.
struct MaskBatch {
  int n = 0, v = 0, patches = 0;
  std::vector<std::uint8_t> dropped;

  std::size_t index(int ni, int vi, int pi) const {
    return (static_cast<std::size_t>(ni) * v + vi) * patches + pi;
  }
};

struct MsnViews {
  ViewBatch unmasked;
  ViewBatch masked;
  MaskBatch mask;
};

/// MSN views: unmasked views styles-standardized, masked views Fourier
/// augmented, each masked view carrying a mask that drops
/// floor(mask_ratio * n_patches) patches uniformly without replacement.
/// Requires masked crop size divisible by `patch` and 0 <= mask_ratio < 1.
MsnViews make_msn_views(const ImageBatch& batch, const ViewSpec& unmasked_spec,
                        const ViewSpec& masked_spec, double mask_ratio, int patch,
                        const RatioRange& range, Rng& rng,
                        const PipelineParams& params = {});

}  // namespace fsaug

#endif  // FSAUG_PIPELINE_HPP_
