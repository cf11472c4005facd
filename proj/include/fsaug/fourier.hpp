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

#ifndef FSAUG_FOURIER_HPP_
#define FSAUG_FOURIER_HPP_

#include "fsaug/tensor.hpp"

namespace fsaug {

/// Unnormalized forward 2-D DFT per (n, c) plane:
///   F(u, v) = sum_h sum_w X[h, w] * exp(-i 2 pi (h u / H + w v / W)).
/// The result is unshifted (zero frequency at bin (0, 0)).
SpectrumBatch dft2(const ImageBatch& batch);
SpectrumBatch dft2(const FieldBatch& batch);

/// Real part of the inverse transform (scaled by 1 / (H W)), unclamped.
/// Requires an unshifted spectrum.
FieldBatch idft2_real(const SpectrumBatch& spec);

/// Inverse transform clamped to [0, 1]. Requires an unshifted spectrum.
ImageBatch idft2(const SpectrumBatch& spec);

/// Circular shift moving bin (0, 0) to the centered index (h/2, w/2).
/// Requires shifted == false; the result has shifted == true.
SpectrumBatch fftshift(const SpectrumBatch& spec);

/// Exact inverse of fftshift. Requires shifted == true.
SpectrumBatch ifftshift(const SpectrumBatch& spec);

struct AmpPhase {
  FieldBatch amplitude;  // sqrt(re^2 + im^2)
  FieldBatch phase;      // atan2(im, re) in (-pi, pi]; 0 at zero bins
};

/// Polar decomposition of a spectrum (shifted or not).
AmpPhase amp_phase(const SpectrumBatch& spec);

/// Spectrum with re = amplitude * cos(phase), im = amplitude * sin(phase).
/// Throws on negative amplitudes or mismatched shapes.
SpectrumBatch reconstruct(const FieldBatch& amplitude, const FieldBatch& phase,
                          bool shifted);

}  // namespace fsaug

#endif  // FSAUG_FOURIER_HPP_
