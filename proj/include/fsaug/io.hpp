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

#ifndef FSAUG_IO_HPP_
#define FSAUG_IO_HPP_

#include <string>
#include <vector>

#include "fsaug/ssl.hpp"
#include "fsaug/tensor.hpp"

namespace fsaug::io {

/// Load every *.png in a directory (sorted by filename) into one batch.
/// 8-bit grayscale files load as C=1, 8-bit RGB as C=3; pixel values map to
/// [0, 1] by value / 255. All files must share dimensions and color mode.
ImageBatch load_images(const std::string& dir);

/// Single PNG as a batch of one.
ImageBatch load_png(const std::string& path);

/// Write image ni of the batch as an 8-bit PNG (grayscale for C=1, RGB for
/// C=3). Quantization is round-half-away-from-zero of value * 255.
void save_png(const ImageBatch& batch, int ni, const std::string& path);

/// Write every image as <prefix>NNNN.png under dir (created if missing).
void save_images(const ImageBatch& batch, const std::string& dir,
                 const std::string& prefix = "img_");

/// Tile a view batch into one PNG: rows are contents, columns are views,
/// separated by 2-pixel black gutters.
void save_grid(const ViewBatch& views, const std::string& path);

/// Binary embedding file: magic "EMB1", then u32 LE n, d, flags (bit 0 =
/// rows pre-normalized), then n*d IEEE-754 32-bit LE reals, row-major.
EmbeddingSet load_embeddings(const std::string& path);
void save_embeddings(const Matrix& vectors, bool normalized, const std::string& path);

struct Labels {
  std::vector<int> domain;
  std::vector<int> cls;
};

/// CSV with header "index,domain_label,class_label"; indices 0..n-1 must
/// each appear exactly once.
Labels load_labels(const std::string& path);
void save_labels(const Labels& labels, const std::string& path);

}  // namespace fsaug::io

#endif  // FSAUG_IO_HPP_
