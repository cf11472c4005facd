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

#include "fsaug/tensor.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace fsaug {

namespace {

void check_image_dims(int n, int c, int h, int w) {
  if (n < 1) throw std::invalid_argument("ImageBatch: n_images must be >= 1");
  if (c != 1 && c != 3) throw std::invalid_argument("ImageBatch: channels must be 1 or 3");
  if (h < 2 || w < 2) throw std::invalid_argument("ImageBatch: height and width must be >= 2");
}

}  // namespace

FieldBatch::FieldBatch(int n_, int c_, int h_, int w_, double fill)
    : n(n_), c(c_), h(h_), w(w_) {
  if (n < 0 || c < 0 || h < 0 || w < 0)
    throw std::invalid_argument("FieldBatch: negative dimension");
  data.assign(static_cast<std::size_t>(n) * c * h * w, fill);
}

ImageBatch::ImageBatch(int n_, int c_, int h_, int w_) : n(n_), c(c_), h(h_), w(w_) {
  check_image_dims(n, c, h, w);
  data.assign(static_cast<std::size_t>(n) * c * h * w, 0.0);
}

void ImageBatch::check_range() const {
  for (double v : data) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("ImageBatch: value outside [0, 1]");
  }
}

ImageBatch ImageBatch::image(int ni) const {
  ImageBatch out(1, c, h, w);
  const std::size_t plane = static_cast<std::size_t>(c) * h * w;
  std::copy(data.begin() + ni * plane, data.begin() + (ni + 1) * plane, out.data.begin());
  return out;
}

ImageBatch alloc_batch(int n, int c, int h, int w, double fill) {
  if (!(fill >= 0.0 && fill <= 1.0))
    throw std::invalid_argument("alloc_batch: fill must be in [0, 1]");
  ImageBatch b(n, c, h, w);
  std::fill(b.data.begin(), b.data.end(), fill);
  return b;
}

ViewBatch::ViewBatch(int n_, int v_, int c_, int h_, int w_)
    : n(n_), v(v_), c(c_), h(h_), w(w_) {
  check_image_dims(n, c, h, w);
  if (v < 1) throw std::invalid_argument("ViewBatch: n_views must be >= 1");
  data.assign(static_cast<std::size_t>(n) * v * c * h * w, 0.0);
}

ImageBatch ViewBatch::view(int vi) const {
  ImageBatch out(n, c, h, w);
  const std::size_t plane = static_cast<std::size_t>(c) * h * w;
  for (int ni = 0; ni < n; ++ni) {
    const std::size_t src = index(ni, vi, 0, 0, 0);
    std::copy(data.begin() + src, data.begin() + src + plane,
              out.data.begin() + ni * plane);
  }
  return out;
}

void ViewBatch::set_view(int vi, const ImageBatch& img) {
  if (img.n != n || img.c != c || img.h != h || img.w != w)
    throw std::invalid_argument("ViewBatch::set_view: shape mismatch");
  const std::size_t plane = static_cast<std::size_t>(c) * h * w;
  for (int ni = 0; ni < n; ++ni) {
    const std::size_t dst = index(ni, vi, 0, 0, 0);
    std::copy(img.data.begin() + ni * plane, img.data.begin() + (ni + 1) * plane,
              data.begin() + dst);
  }
}

SpectrumBatch::SpectrumBatch(int n_, int c_, int h_, int w_, bool shifted_)
    : n(n_), c(c_), h(h_), w(w_), shifted(shifted_) {
  const std::size_t total = static_cast<std::size_t>(n) * c * h * w;
  re.assign(total, 0.0);
  im.assign(total, 0.0);
}

std::uint64_t Rng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("Rng::uniform: lo > hi");
  return lo + (hi - lo) * next_double();
}

std::uint64_t Rng::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::next_below: n must be >= 1");
  auto v = static_cast<std::uint64_t>(next_double() * static_cast<double>(n));
  return v >= n ? n - 1 : v;  // rounding at u close to 1 can land on n
}

std::vector<int> Rng::permutation(int n) {
  if (n < 1) throw std::invalid_argument("Rng::permutation: n must be >= 1");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

}  // namespace fsaug
