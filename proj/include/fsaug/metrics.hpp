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

#ifndef FSAUG_METRICS_HPP_
#define FSAUG_METRICS_HPP_

#include <cstdint>
#include <vector>

#include "fsaug/ssl.hpp"
#include "fsaug/tensor.hpp"

namespace fsaug {

/// Embedding rows paired with per-row domain and class labels.
struct LabeledEmbeddings {
  Matrix vectors;
  std::vector<int> domain_label;
  std::vector<int> class_label;

  void validate() const;  // label lengths match rows, labels >= 0
};

struct Histogram {
  std::vector<double> bin_edges;        // sorted, len = bins + 1
  std::vector<std::uint64_t> counts;    // len = bins
};

/// Indices of the k rows most cosine-similar to row `query_index`, self
/// excluded, ties broken by ascending index. Requires 1 <= k <= N-1.
std::vector<int> knn(const Matrix& vectors, int query_index, int k);

/// Mean over examples of the fraction of each example's k nearest neighbors
/// (by cosine similarity) sharing its domain label.
double domain_purity(const LabeledEmbeddings& emb, int k);

/// Histogram over [-1, 1] of cosine similarities between every anchor
/// (c, s) and every view of a different content (c'', s''), c'' != c.
/// Rows laid out row = content * n_views + view; rows must be unit.
Histogram anchor_negative_similarities(const Matrix& views, int n_contents,
                                       int n_views, int bins);

enum class LabelKind { kDomain, kClass };

/// Size-weighted label purity of the hard Sinkhorn-Knopp assignments: each
/// example is assigned to the argmax code of sinkhorn_knopp(z . C^T), and
/// each nonempty prototype scores (most frequent label count) / (member
/// count); prototypes are averaged weighted by member count.
double prototype_homogeneity(const LabeledEmbeddings& emb, const PrototypeBank& protos,
                             LabelKind kind, double sk_epsilon, int sk_iters);

}  // namespace fsaug

#endif  // FSAUG_METRICS_HPP_
