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

#include "fsaug/style_aug.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fsaug/fourier.hpp"

namespace fsaug {

RatioRange::RatioRange(double lo, double hi) : r_min(lo), r_max(hi) {
  if (!(lo >= 0.0 && lo <= hi && hi <= 1.0))
    throw std::invalid_argument("RatioRange: need 0 <= r_min <= r_max <= 1");
}

int substitution_half_length(double r, int h, int w) {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::invalid_argument("substitution ratio must be in [0, 1]");
  const int lh = static_cast<int>(r * h / 2.0);
  const int lw = static_cast<int>(r * w / 2.0);
  return std::min(lh, lw);
}

namespace {

// Copies the centered block of plane (src_n, c) in `from` into plane
// (dst_n, c) of `into`. Fields must be center-shifted.
void copy_center_block(FieldBatch& into, int dst_n, const FieldBatch& from, int src_n,
                       int l) {
  if (l == 0) return;
  const int hc = into.h / 2, wc = into.w / 2;
  for (int ci = 0; ci < into.c; ++ci) {
    for (int u = hc - l; u < hc + l; ++u) {
      for (int v = wc - l; v < wc + l; ++v) {
        into.at(dst_n, ci, u, v) = from.at(src_n, ci, u, v);
      }
    }
  }
}

void check_style_index(int k, int n) {
  if (k < 0 || k >= n)
    throw std::invalid_argument("style index out of range: " + std::to_string(k));
}

}  // namespace

FieldBatch substitute_low_freq(const FieldBatch& src_amp, const FieldBatch& tgt_amp,
                               double r) {
  if (!src_amp.same_shape(tgt_amp))
    throw std::invalid_argument("substitute_low_freq: shape mismatch");
  const int l = substitution_half_length(r, src_amp.h, src_amp.w);
  FieldBatch out = src_amp;
  for (int ni = 0; ni < out.n; ++ni) copy_center_block(out, ni, tgt_amp, ni, l);
  return out;
}

FieldBatch substituted_amplitudes(const ImageBatch& batch, int style_index, double r) {
  check_style_index(style_index, batch.n);
  const AmpPhase ap = amp_phase(fftshift(dft2(batch)));
  const int l = substitution_half_length(r, batch.h, batch.w);
  FieldBatch out = ap.amplitude;
  for (int ni = 0; ni < batch.n; ++ni)
    copy_center_block(out, ni, ap.amplitude, style_index, l);
  return out;
}

namespace {

// Shared FA core: substituted amplitudes + original phases -> spatial field.
FieldBatch fa_core(const ImageBatch& batch, const std::vector<int>& style_index,
                   const std::vector<double>& ratio) {
  const int n = batch.n;
  if (static_cast<int>(style_index.size()) != n ||
      static_cast<int>(ratio.size()) != n)
    throw std::invalid_argument("fa_with: need one style index and ratio per image");
  for (int k : style_index) check_style_index(k, n);

  const AmpPhase ap = amp_phase(fftshift(dft2(batch)));
  FieldBatch amp = ap.amplitude;  // blocks are read from the untouched original
  for (int ni = 0; ni < n; ++ni) {
    const int l = substitution_half_length(ratio[ni], batch.h, batch.w);
    copy_center_block(amp, ni, ap.amplitude, style_index[ni], l);
  }
  return idft2_real(ifftshift(reconstruct(amp, ap.phase, /*shifted=*/true)));
}

ImageBatch clamp_field(const FieldBatch& f) {
  ImageBatch out(f.n, f.c, f.h, f.w);
  for (std::size_t i = 0; i < f.data.size(); ++i)
    out.data[i] = std::clamp(f.data[i], 0.0, 1.0);
  return out;
}

}  // namespace

FieldBatch fa_with_raw(const ImageBatch& batch, const std::vector<int>& style_index,
                       const std::vector<double>& ratio) {
  return fa_core(batch, style_index, ratio);
}

ImageBatch fa_with(const ImageBatch& batch, const std::vector<int>& style_index,
                   const std::vector<double>& ratio) {
  return clamp_field(fa_core(batch, style_index, ratio));
}

std::vector<FieldBatch> bss_with_raw(const ImageBatch& batch,
                                     const std::vector<int>& view_styles, double r) {
  if (view_styles.empty())
    throw std::invalid_argument("bss_with: need at least one view style");
  for (int k : view_styles) check_style_index(k, batch.n);
  const int l = substitution_half_length(r, batch.h, batch.w);

  const AmpPhase ap = amp_phase(fftshift(dft2(batch)));
  std::vector<FieldBatch> out;
  out.reserve(view_styles.size());
  for (int k : view_styles) {
    FieldBatch amp = ap.amplitude;
    for (int ni = 0; ni < batch.n; ++ni) copy_center_block(amp, ni, ap.amplitude, k, l);
    out.push_back(idft2_real(ifftshift(reconstruct(amp, ap.phase, /*shifted=*/true))));
  }
  return out;
}

ViewBatch bss_with(const ImageBatch& batch, const std::vector<int>& view_styles,
                   double r) {
  const std::vector<FieldBatch> raw = bss_with_raw(batch, view_styles, r);
  ViewBatch out(batch.n, static_cast<int>(view_styles.size()), batch.c, batch.h,
                batch.w);
  for (int vi = 0; vi < out.v; ++vi) out.set_view(vi, clamp_field(raw[vi]));
  return out;
}

ImageBatch fourier_augment(const ImageBatch& batch, const RatioRange& range, Rng& rng) {
  std::vector<int> styles(batch.n);
  std::vector<double> ratios(batch.n);
  for (int i = 0; i < batch.n; ++i) {
    styles[i] = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(batch.n)));
    ratios[i] = rng.uniform(range.r_min, range.r_max);
  }
  return fa_with(batch, styles, ratios);
}

ViewBatch batch_styles_standardize(const ImageBatch& batch, int n_views,
                                   const RatioRange& range, Rng& rng) {
  if (n_views < 1 || n_views > batch.n)
    throw std::invalid_argument("batch_styles_standardize: need 1 <= n_views <= N");
  std::vector<int> perm = rng.permutation(batch.n);
  perm.resize(n_views);
  const double r = rng.uniform(range.r_min, range.r_max);
  return bss_with(batch, perm, r);
}

bool standardized_low_freq_check(const ViewBatch& views, double r) {
  const int l = substitution_half_length(r, views.h, views.w);
  const int hc = views.h / 2, wc = views.w / 2;
  // The rim row/column at frequency -l has its mirrored frequency +l outside
  // the block; the real-part projection of the inverse transform averages
  // those bins with unsubstituted ones, so only the symmetric interior of
  // the block carries the shared style amplitudes.
  for (int vi = 0; vi < views.v; ++vi) {
    const AmpPhase ap = amp_phase(fftshift(dft2(views.view(vi))));
    for (int ni = 1; ni < views.n; ++ni) {
      for (int ci = 0; ci < views.c; ++ci) {
        for (int u = hc - l + 1; u < hc + l; ++u) {
          for (int v = wc - l + 1; v < wc + l; ++v) {
            const double a = ap.amplitude.at(0, ci, u, v);
            const double b = ap.amplitude.at(ni, ci, u, v);
            const double tol = 1e-5 * std::max(std::abs(a), std::abs(b)) + 1e-9;
            if (std::abs(a - b) > tol) return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace fsaug
