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

#include "fsaug/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace fsaug {

namespace {

double cosine_similarity(const Matrix& m, std::size_t a, std::size_t b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t j = 0; j < m.cols; ++j) {
    dot += m(a, j) * m(b, j);
    na += m(a, j) * m(a, j);
    nb += m(b, j) * m(b, j);
  }
  const double denom = std::sqrt(na) * std::sqrt(nb);
  return denom > 0.0 ? dot / denom : 0.0;
}

}  // namespace

void LabeledEmbeddings::validate() const {
  if (domain_label.size() != vectors.rows || class_label.size() != vectors.rows)
    throw std::invalid_argument("LabeledEmbeddings: label count must match rows");
  for (int d : domain_label)
    if (d < 0) throw std::invalid_argument("LabeledEmbeddings: negative domain label");
  for (int c : class_label)
    if (c < 0) throw std::invalid_argument("LabeledEmbeddings: negative class label");
}

std::vector<int> knn(const Matrix& vectors, int query_index, int k) {
  const int n = static_cast<int>(vectors.rows);
  if (query_index < 0 || query_index >= n)
    throw std::invalid_argument("knn: query index out of range");
  if (k < 1 || k > n - 1) throw std::invalid_argument("knn: need 1 <= k <= N-1");

  std::vector<std::pair<double, int>> sims;
  sims.reserve(n - 1);
  for (int i = 0; i < n; ++i) {
    if (i == query_index) continue;
    sims.emplace_back(cosine_similarity(vectors, query_index, i), i);
  }
  // highest similarity first, ties by ascending index
  std::sort(sims.begin(), sims.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<int> out(k);
  for (int i = 0; i < k; ++i) out[i] = sims[i].second;
  return out;
}

double domain_purity(const LabeledEmbeddings& emb, int k) {
  emb.validate();
  const int n = static_cast<int>(emb.vectors.rows);
  if (k < 1 || k > n - 1) throw std::invalid_argument("domain_purity: need 1 <= k <= N-1");
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::vector<int> nb = knn(emb.vectors, i, k);
    int same = 0;
    for (int j : nb)
      if (emb.domain_label[j] == emb.domain_label[i]) ++same;
    total += static_cast<double>(same) / static_cast<double>(k);
  }
  return total / static_cast<double>(n);
}

Histogram anchor_negative_similarities(const Matrix& views, int n_contents,
                                       int n_views, int bins) {
  if (n_views < 2)
    throw std::invalid_argument("anchor_negative_similarities: need V >= 2");
  if (bins < 1) throw std::invalid_argument("anchor_negative_similarities: bins >= 1");
  const std::size_t total = static_cast<std::size_t>(n_contents) * n_views;
  if (views.rows != total)
    throw std::invalid_argument(
        "anchor_negative_similarities: row count must equal contents * views");

  Histogram hist;
  hist.bin_edges.resize(bins + 1);
  const double width = 2.0 / bins;
  for (int i = 0; i <= bins; ++i) hist.bin_edges[i] = -1.0 + width * i;
  hist.counts.assign(bins, 0);

  for (std::size_t a = 0; a < total; ++a) {
    const std::size_t anchor_content = a / n_views;
    for (std::size_t b = 0; b < total; ++b) {
      if (b / n_views == anchor_content) continue;
      const double sim = cosine_similarity(views, a, b);
      int bin = static_cast<int>((sim + 1.0) / width);
      bin = std::clamp(bin, 0, bins - 1);  // sim == 1 lands in the last bin
      ++hist.counts[bin];
    }
  }
  return hist;
}

double prototype_homogeneity(const LabeledEmbeddings& emb, const PrototypeBank& protos,
                             LabelKind kind, double sk_epsilon, int sk_iters) {
  emb.validate();
  if (emb.vectors.cols != protos.centroids.cols)
    throw std::invalid_argument("prototype_homogeneity: dim mismatch");
  const std::size_t n = emb.vectors.rows, k = protos.centroids.rows;

  Matrix scores(n, k, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double dot = 0.0;
      for (std::size_t d = 0; d < emb.vectors.cols; ++d)
        dot += emb.vectors(i, d) * protos.centroids(j, d);
      scores(i, j) = dot;
    }
  const AssignmentMatrix codes = sinkhorn_knopp(scores, sk_epsilon, sk_iters);

  const std::vector<int>& labels =
      kind == LabelKind::kDomain ? emb.domain_label : emb.class_label;

  // hard assignment: argmax code per row, first maximum wins
  std::vector<std::map<int, int>> label_counts(k);
  std::vector<int> member_count(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < k; ++j)
      if (codes.q(i, j) > codes.q(i, best)) best = j;
    ++label_counts[best][labels[i]];
    ++member_count[best];
  }

  double weighted = 0.0;
  std::size_t assigned = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (member_count[j] == 0) continue;
    int most = 0;
    for (const auto& [label, count] : label_counts[j]) most = std::max(most, count);
    weighted += static_cast<double>(most);
    assigned += member_count[j];
  }
  return weighted / static_cast<double>(assigned);
}

}  // namespace fsaug
