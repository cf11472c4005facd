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

#include "fsaug/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsaug {

void ViewSpec::validate() const {
  if (count < 1) throw std::invalid_argument("ViewSpec: count must be >= 1");
  if (crop_size < 2) throw std::invalid_argument("ViewSpec: crop_size must be >= 2");
  if (!(scale_lo > 0.0 && scale_lo <= scale_hi && scale_hi <= 1.0))
    throw std::invalid_argument("ViewSpec: need 0 < scale_lo <= scale_hi <= 1");
}

PipelineParams PipelineParams::plain() {
  PipelineParams p;
  p.color = ColorJitterParams{};
  p.hflip_prob = 0.0;
  p.max_rotate_deg = 0.0;
  p.cutout_frac = 0.0;
  return p;
}

namespace {

// Lerp-form bilinear: exact for constant inputs and for integral coordinates.
double bilinear_tap(const ImageBatch& img, int ni, int ci, double sy, double sx) {
  const int y0 = static_cast<int>(std::floor(sy));
  const int x0 = static_cast<int>(std::floor(sx));
  const double wy = sy - y0, wx = sx - x0;
  const int y1 = std::min(y0 + 1, img.h - 1);
  const int x1 = std::min(x0 + 1, img.w - 1);
  const double top = img.at(ni, ci, y0, x0) +
                     wx * (img.at(ni, ci, y0, x1) - img.at(ni, ci, y0, x0));
  const double bottom = img.at(ni, ci, y1, x0) +
                        wx * (img.at(ni, ci, y1, x1) - img.at(ni, ci, y1, x0));
  return top + wy * (bottom - top);
}

void crop_resize_one(const ImageBatch& src, int ni, int top, int left, int crop_h,
                     int crop_w, ImageBatch& dst, int dst_n) {
  const int out = dst.h;
  const double scale_y = static_cast<double>(crop_h) / out;
  const double scale_x = static_cast<double>(crop_w) / out;
  for (int ci = 0; ci < src.c; ++ci) {
    for (int oy = 0; oy < out; ++oy) {
      double sy = (oy + 0.5) * scale_y - 0.5;
      sy = std::clamp(sy, 0.0, static_cast<double>(crop_h - 1)) + top;
      for (int ox = 0; ox < out; ++ox) {
        double sx = (ox + 0.5) * scale_x - 0.5;
        sx = std::clamp(sx, 0.0, static_cast<double>(crop_w - 1)) + left;
        dst.at(dst_n, ci, oy, ox) =
            std::clamp(bilinear_tap(src, ni, ci, sy, sx), 0.0, 1.0);
      }
    }
  }
}

}  // namespace

ImageBatch crop_and_resize(const ImageBatch& batch, int top, int left, int crop_h,
                           int crop_w, int out_size) {
  if (crop_h < 1 || crop_w < 1 || top < 0 || left < 0 || top + crop_h > batch.h ||
      left + crop_w > batch.w)
    throw std::invalid_argument("crop_and_resize: crop region out of bounds");
  if (out_size < 2) throw std::invalid_argument("crop_and_resize: out_size must be >= 2");
  ImageBatch out(batch.n, batch.c, out_size, out_size);
  for (int ni = 0; ni < batch.n; ++ni)
    crop_resize_one(batch, ni, top, left, crop_h, crop_w, out, ni);
  return out;
}

ImageBatch random_resized_crop(const ImageBatch& batch, const ViewSpec& spec, Rng& rng) {
  spec.validate();
  ImageBatch out(batch.n, batch.c, spec.crop_size, spec.crop_size);
  const double area = static_cast<double>(batch.h) * batch.w;
  const double log_lo = std::log(3.0 / 4.0), log_hi = std::log(4.0 / 3.0);
  for (int ni = 0; ni < batch.n; ++ni) {
    bool placed = false;
    for (int attempt = 0; attempt < 10 && !placed; ++attempt) {
      const double target = area * rng.uniform(spec.scale_lo, spec.scale_hi);
      const double aspect = std::exp(rng.uniform(log_lo, log_hi));
      const int cw = static_cast<int>(std::lround(std::sqrt(target * aspect)));
      const int ch = static_cast<int>(std::lround(std::sqrt(target / aspect)));
      if (cw >= 1 && ch >= 1 && cw <= batch.w && ch <= batch.h) {
        const int top = static_cast<int>(rng.next_below(batch.h - ch + 1));
        const int left = static_cast<int>(rng.next_below(batch.w - cw + 1));
        crop_resize_one(batch, ni, top, left, ch, cw, out, ni);
        placed = true;
      }
    }
    if (!placed) {  // center-crop fallback
      const int side = std::min(batch.h, batch.w);
      crop_resize_one(batch, ni, (batch.h - side) / 2, (batch.w - side) / 2, side, side,
                      out, ni);
    }
  }
  return out;
}

ImageBatch hflip(const ImageBatch& batch) {
  ImageBatch out(batch.n, batch.c, batch.h, batch.w);
  for (int ni = 0; ni < batch.n; ++ni)
    for (int ci = 0; ci < batch.c; ++ci)
      for (int hi = 0; hi < batch.h; ++hi)
        for (int wi = 0; wi < batch.w; ++wi)
          out.at(ni, ci, hi, wi) = batch.at(ni, ci, hi, batch.w - 1 - wi);
  return out;
}

namespace {

void rotate_one(const ImageBatch& src, int ni, double degrees, ImageBatch& dst) {
  const double rad = degrees * std::numbers::pi / 180.0;
  const double cs = std::cos(rad), sn = std::sin(rad);
  const double cy = (src.h - 1) / 2.0, cx = (src.w - 1) / 2.0;
  for (int ci = 0; ci < src.c; ++ci) {
    for (int y = 0; y < src.h; ++y) {
      for (int x = 0; x < src.w; ++x) {
        const double dy = y - cy, dx = x - cx;
        const double sy = -sn * dx + cs * dy + cy;
        const double sx = cs * dx + sn * dy + cx;
        // bilinear with zero padding: out-of-range taps read as zero
        const int y0 = static_cast<int>(std::floor(sy));
        const int x0 = static_cast<int>(std::floor(sx));
        const double wy = sy - y0, wx = sx - x0;
        auto tap = [&](int yy, int xx) {
          return (yy < 0 || yy >= src.h || xx < 0 || xx >= src.w)
                     ? 0.0
                     : src.at(ni, ci, yy, xx);
        };
        const double top = tap(y0, x0) + wx * (tap(y0, x0 + 1) - tap(y0, x0));
        const double bottom =
            tap(y0 + 1, x0) + wx * (tap(y0 + 1, x0 + 1) - tap(y0 + 1, x0));
        dst.at(ni, ci, y, x) = std::clamp(top + wy * (bottom - top), 0.0, 1.0);
      }
    }
  }
}

}  // namespace

ImageBatch rotate(const ImageBatch& batch, double degrees) {
  ImageBatch out(batch.n, batch.c, batch.h, batch.w);
  for (int ni = 0; ni < batch.n; ++ni) rotate_one(batch, ni, degrees, out);
  return out;
}

ImageBatch rotate_small(const ImageBatch& batch, double max_deg, Rng& rng) {
  if (!(max_deg >= 0.0 && max_deg <= 30.0))
    throw std::invalid_argument("rotate_small: need 0 <= max_deg <= 30");
  ImageBatch out(batch.n, batch.c, batch.h, batch.w);
  for (int ni = 0; ni < batch.n; ++ni)
    rotate_one(batch, ni, rng.uniform(-max_deg, max_deg), out);
  return out;
}

ImageBatch cutout(const ImageBatch& batch, int hole, Rng& rng) {
  if (hole < 0 || hole >= std::min(batch.h, batch.w))
    throw std::invalid_argument("cutout: need 0 <= hole < min(H, W)");
  ImageBatch out = batch;
  for (int ni = 0; ni < batch.n; ++ni) {
    const int top = static_cast<int>(rng.next_below(batch.h - hole + 1));
    const int left = static_cast<int>(rng.next_below(batch.w - hole + 1));
    for (int ci = 0; ci < batch.c; ++ci)
      for (int y = top; y < top + hole; ++y)
        for (int x = left; x < left + hole; ++x) out.at(ni, ci, y, x) = 0.0;
  }
  return out;
}

JitterFactors sample_jitter_factors(const ColorJitterParams& params, Rng& rng) {
  if (!(params.brightness >= 0.0 && params.contrast >= 0.0 &&
        params.saturation >= 0.0) ||
      !std::isfinite(params.brightness + params.contrast + params.saturation))
    throw std::invalid_argument("color jitter magnitudes must be finite and >= 0");
  if (!(params.grayscale_prob >= 0.0 && params.grayscale_prob <= 1.0))
    throw std::invalid_argument("grayscale_prob must be in [0, 1]");
  auto factor = [&rng](double magnitude) {
    return rng.uniform(std::max(0.0, 1.0 - magnitude), 1.0 + magnitude);
  };
  JitterFactors f;
  f.brightness = factor(params.brightness);
  f.contrast = factor(params.contrast);
  f.saturation = factor(params.saturation);
  f.to_grayscale = rng.uniform(0.0, 1.0) < params.grayscale_prob;
  return f;
}

namespace {

double luma(const ImageBatch& img, int ni, int hi, int wi) {
  if (img.c == 1) return img.at(ni, 0, hi, wi);
  return 0.299 * img.at(ni, 0, hi, wi) + 0.587 * img.at(ni, 1, hi, wi) +
         0.114 * img.at(ni, 2, hi, wi);
}

}  // namespace

ImageBatch apply_color_jitter(const ImageBatch& batch, const JitterFactors& factors) {
  ImageBatch out = batch;
  if (factors.brightness != 1.0) {
    for (double& v : out.data) v = std::clamp(v * factors.brightness, 0.0, 1.0);
  }
  if (factors.contrast != 1.0) {
    for (int ni = 0; ni < out.n; ++ni) {
      double mean = 0.0;
      for (int hi = 0; hi < out.h; ++hi)
        for (int wi = 0; wi < out.w; ++wi) mean += luma(out, ni, hi, wi);
      mean /= static_cast<double>(out.h) * out.w;
      for (int ci = 0; ci < out.c; ++ci)
        for (int hi = 0; hi < out.h; ++hi)
          for (int wi = 0; wi < out.w; ++wi) {
            double& v = out.at(ni, ci, hi, wi);
            v = std::clamp(mean + factors.contrast * (v - mean), 0.0, 1.0);
          }
    }
  }
  if (factors.saturation != 1.0 && out.c == 3) {
    for (int ni = 0; ni < out.n; ++ni)
      for (int hi = 0; hi < out.h; ++hi)
        for (int wi = 0; wi < out.w; ++wi) {
          const double gray = luma(out, ni, hi, wi);
          for (int ci = 0; ci < 3; ++ci) {
            double& v = out.at(ni, ci, hi, wi);
            v = std::clamp(gray + factors.saturation * (v - gray), 0.0, 1.0);
          }
        }
  }
  if (factors.to_grayscale && out.c == 3) {
    for (int ni = 0; ni < out.n; ++ni)
      for (int hi = 0; hi < out.h; ++hi)
        for (int wi = 0; wi < out.w; ++wi) {
          const double gray = luma(out, ni, hi, wi);
          for (int ci = 0; ci < 3; ++ci) out.at(ni, ci, hi, wi) = gray;
        }
  }
  return out;
}

ImageBatch batch_color_jitter(const ImageBatch& batch, const ColorJitterParams& params,
                              Rng& rng) {
  return apply_color_jitter(batch, sample_jitter_factors(params, rng));
}

namespace {

// Per-sample geometric ops followed by one batch-wise color jitter.
ImageBatch finish_view(const ImageBatch& styled, const ViewSpec& spec,
                       const PipelineParams& params, Rng& rng) {
  ImageBatch img = random_resized_crop(styled, spec, rng);
  if (params.hflip_prob > 0.0) {
    for (int ni = 0; ni < img.n; ++ni) {
      if (rng.uniform(0.0, 1.0) < params.hflip_prob) {
        for (int ci = 0; ci < img.c; ++ci)
          for (int hi = 0; hi < img.h; ++hi)
            for (int wi = 0; wi < img.w / 2; ++wi)
              std::swap(img.at(ni, ci, hi, wi), img.at(ni, ci, hi, img.w - 1 - wi));
      }
    }
  }
  if (params.max_rotate_deg > 0.0) img = rotate_small(img, params.max_rotate_deg, rng);
  if (params.cutout_frac > 0.0) {
    const int hole =
        std::min(static_cast<int>(params.cutout_frac * spec.crop_size),
                 spec.crop_size - 1);
    if (hole > 0) img = cutout(img, hole, rng);
  }
  return batch_color_jitter(img, params.color, rng);
}

// Full-resolution styled views for one spec group.
std::vector<ImageBatch> styled_views(const ImageBatch& batch, StyleMode mode,
                                     int count, const RatioRange& range, Rng& rng) {
  std::vector<ImageBatch> views;
  views.reserve(count);
  switch (mode) {
    case StyleMode::kBss: {
      const ViewBatch vb = batch_styles_standardize(batch, count, range, rng);
      for (int v = 0; v < count; ++v) views.push_back(vb.view(v));
      break;
    }
    case StyleMode::kFa:
      for (int v = 0; v < count; ++v) views.push_back(fourier_augment(batch, range, rng));
      break;
    case StyleMode::kNone:
      for (int v = 0; v < count; ++v) views.push_back(batch);
      break;
  }
  return views;
}

ViewBatch collect(const std::vector<ImageBatch>& views) {
  const ImageBatch& first = views.front();
  ViewBatch out(first.n, static_cast<int>(views.size()), first.c, first.h, first.w);
  for (int v = 0; v < out.v; ++v) out.set_view(v, views[v]);
  return out;
}

}  // namespace

std::vector<ViewBatch> make_simclr_views(const ImageBatch& batch,
                                         const std::vector<ViewSpec>& specs,
                                         const RatioRange& range, Rng& rng,
                                         const PipelineParams& params) {
  if (specs.empty()) throw std::invalid_argument("make_simclr_views: no view specs");
  int total = 0;
  for (const ViewSpec& s : specs) {
    s.validate();
    if (s.style_mode != specs.front().style_mode)
      throw std::invalid_argument("make_simclr_views: specs must share one style mode");
    total += s.count;
  }

  const std::vector<ImageBatch> styled =
      styled_views(batch, specs.front().style_mode, total, range, rng);

  std::vector<ViewBatch> out;
  out.reserve(specs.size());
  int offset = 0;
  for (const ViewSpec& spec : specs) {
    std::vector<ImageBatch> group;
    group.reserve(spec.count);
    for (int v = 0; v < spec.count; ++v)
      group.push_back(finish_view(styled[offset + v], spec, params, rng));
    offset += spec.count;
    out.push_back(collect(group));
  }
  return out;
}

std::pair<ViewBatch, ViewBatch> make_swav_views(const ImageBatch& batch,
                                                const ViewSpec& global_spec,
                                                const ViewSpec& local_spec,
                                                const RatioRange& range, Rng& rng,
                                                const PipelineParams& params) {
  global_spec.validate();
  local_spec.validate();
  if (global_spec.count != 2)
    throw std::invalid_argument("make_swav_views: exactly 2 global views required");

  std::vector<ImageBatch> globals;
  for (const ImageBatch& styled :
       styled_views(batch, global_spec.style_mode, global_spec.count, range, rng))
    globals.push_back(finish_view(styled, global_spec, params, rng));

  std::vector<ImageBatch> locals;
  for (const ImageBatch& styled :
       styled_views(batch, local_spec.style_mode, local_spec.count, range, rng))
    locals.push_back(finish_view(styled, local_spec, params, rng));

  return {collect(globals), collect(locals)};
}

MsnViews make_msn_views(const ImageBatch& batch, const ViewSpec& unmasked_spec,
                        const ViewSpec& masked_spec, double mask_ratio, int patch,
                        const RatioRange& range, Rng& rng,
                        const PipelineParams& params) {
  unmasked_spec.validate();
  masked_spec.validate();
  if (!(mask_ratio >= 0.0 && mask_ratio < 1.0))
    throw std::invalid_argument("make_msn_views: need 0 <= mask_ratio < 1");
  if (patch < 1 || masked_spec.crop_size % patch != 0)
    throw std::invalid_argument("make_msn_views: masked crop size must be divisible by patch");

  MsnViews out;
  std::vector<ImageBatch> unmasked;
  for (const ImageBatch& styled :
       styled_views(batch, unmasked_spec.style_mode, unmasked_spec.count, range, rng))
    unmasked.push_back(finish_view(styled, unmasked_spec, params, rng));
  out.unmasked = collect(unmasked);

  std::vector<ImageBatch> masked;
  for (const ImageBatch& styled :
       styled_views(batch, masked_spec.style_mode, masked_spec.count, range, rng))
    masked.push_back(finish_view(styled, masked_spec, params, rng));
  out.masked = collect(masked);

  const int per_side = masked_spec.crop_size / patch;
  const int n_patches = per_side * per_side;
  const int n_dropped = static_cast<int>(mask_ratio * n_patches);
  out.mask.n = batch.n;
  out.mask.v = masked_spec.count;
  out.mask.patches = n_patches;
  out.mask.dropped.assign(static_cast<std::size_t>(batch.n) * masked_spec.count *
                              n_patches,
                          0);
  for (int ni = 0; ni < batch.n; ++ni) {
    for (int vi = 0; vi < masked_spec.count; ++vi) {
      const std::vector<int> perm = rng.permutation(n_patches);
      for (int d = 0; d < n_dropped; ++d)
        out.mask.dropped[out.mask.index(ni, vi, perm[d])] = 1;
    }
  }
  return out;
}

}  // namespace fsaug
