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

#include "fsaug/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace fsaug {

namespace {

// fftw plan creation is not thread-safe; plans are cached per (h, w, sign)
// and executed on per-call buffers via fftw_execute_dft, which is.
class PlanCache {
 public:
  fftw_plan get(int h, int w, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(h, w, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::size_t total = static_cast<std::size_t>(h) * w;
    fftw_complex* buf = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft_2d(h, w, buf, buf, sign, FFTW_ESTIMATE);
    fftw_free(buf);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t total) : ptr(fftw_alloc_complex(total)) {
    if (!ptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* ptr;
};

SpectrumBatch forward_planes(const double* data, int n, int c, int h, int w) {
  SpectrumBatch out(n, c, h, w, /*shifted=*/false);
  const std::size_t plane = static_cast<std::size_t>(h) * w;
  fftw_plan plan = plan_cache().get(h, w, FFTW_FORWARD);
  FftwBuffer buf(plane);
  for (int p = 0; p < n * c; ++p) {
    const double* src = data + p * plane;
    for (std::size_t i = 0; i < plane; ++i) {
      buf.ptr[i][0] = src[i];
      buf.ptr[i][1] = 0.0;
    }
    fftw_execute_dft(plan, buf.ptr, buf.ptr);
    for (std::size_t i = 0; i < plane; ++i) {
      out.re[p * plane + i] = buf.ptr[i][0];
      out.im[p * plane + i] = buf.ptr[i][1];
    }
  }
  return out;
}

}  // namespace

SpectrumBatch dft2(const ImageBatch& batch) {
  return forward_planes(batch.data.data(), batch.n, batch.c, batch.h, batch.w);
}

SpectrumBatch dft2(const FieldBatch& batch) {
  return forward_planes(batch.data.data(), batch.n, batch.c, batch.h, batch.w);
}

FieldBatch idft2_real(const SpectrumBatch& spec) {
  if (spec.shifted)
    throw std::invalid_argument("idft2: spectrum must be unshifted (call ifftshift first)");
  FieldBatch out(spec.n, spec.c, spec.h, spec.w);
  const std::size_t plane = static_cast<std::size_t>(spec.h) * spec.w;
  const double scale = 1.0 / static_cast<double>(plane);
  fftw_plan plan = plan_cache().get(spec.h, spec.w, FFTW_BACKWARD);
  FftwBuffer buf(plane);
  for (int p = 0; p < spec.n * spec.c; ++p) {
    for (std::size_t i = 0; i < plane; ++i) {
      buf.ptr[i][0] = spec.re[p * plane + i];
      buf.ptr[i][1] = spec.im[p * plane + i];
    }
    fftw_execute_dft(plan, buf.ptr, buf.ptr);
    for (std::size_t i = 0; i < plane; ++i) {
      out.data[p * plane + i] = buf.ptr[i][0] * scale;
    }
  }
  return out;
}

ImageBatch idft2(const SpectrumBatch& spec) {
  FieldBatch real = idft2_real(spec);
  ImageBatch out(spec.n, spec.c, spec.h, spec.w);
  for (std::size_t i = 0; i < real.data.size(); ++i) {
    out.data[i] = std::clamp(real.data[i], 0.0, 1.0);
  }
  return out;
}

namespace {

SpectrumBatch roll(const SpectrumBatch& spec, int dh, int dw, bool shifted_after) {
  SpectrumBatch out(spec.n, spec.c, spec.h, spec.w, shifted_after);
  const int h = spec.h, w = spec.w;
  for (int ni = 0; ni < spec.n; ++ni) {
    for (int ci = 0; ci < spec.c; ++ci) {
      for (int u = 0; u < h; ++u) {
        const int uu = (u + dh) % h;
        for (int v = 0; v < w; ++v) {
          const int vv = (v + dw) % w;
          const std::size_t src = spec.index(ni, ci, u, v);
          const std::size_t dst = out.index(ni, ci, uu, vv);
          out.re[dst] = spec.re[src];
          out.im[dst] = spec.im[src];
        }
      }
    }
  }
  return out;
}

}  // namespace

SpectrumBatch fftshift(const SpectrumBatch& spec) {
  if (spec.shifted)
    throw std::invalid_argument("fftshift: spectrum is already shifted");
  return roll(spec, spec.h / 2, spec.w / 2, /*shifted_after=*/true);
}

SpectrumBatch ifftshift(const SpectrumBatch& spec) {
  if (!spec.shifted)
    throw std::invalid_argument("ifftshift: spectrum is not shifted");
  return roll(spec, (spec.h + 1) / 2, (spec.w + 1) / 2, /*shifted_after=*/false);
}

AmpPhase amp_phase(const SpectrumBatch& spec) {
  AmpPhase out;
  out.amplitude = FieldBatch(spec.n, spec.c, spec.h, spec.w);
  out.phase = FieldBatch(spec.n, spec.c, spec.h, spec.w);
  constexpr double kPi = 3.14159265358979323846;
  for (std::size_t i = 0; i < spec.re.size(); ++i) {
    const double re = spec.re[i], im = spec.im[i];
    out.amplitude.data[i] = std::hypot(re, im);
    double p = (re == 0.0 && im == 0.0) ? 0.0 : std::atan2(im, re);
    if (p == -kPi) p = kPi;  // keep the range (-pi, pi]
    out.phase.data[i] = p;
  }
  return out;
}

SpectrumBatch reconstruct(const FieldBatch& amplitude, const FieldBatch& phase,
                          bool shifted) {
  if (!amplitude.same_shape(phase))
    throw std::invalid_argument("reconstruct: amplitude/phase shape mismatch");
  SpectrumBatch out(amplitude.n, amplitude.c, amplitude.h, amplitude.w, shifted);
  for (std::size_t i = 0; i < amplitude.data.size(); ++i) {
    const double a = amplitude.data[i];
    if (a < 0.0) throw std::invalid_argument("reconstruct: negative amplitude");
    out.re[i] = a * std::cos(phase.data[i]);
    out.im[i] = a * std::sin(phase.data[i]);
  }
  return out;
}

}  // namespace fsaug
