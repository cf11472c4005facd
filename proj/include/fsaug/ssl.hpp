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

#ifndef FSAUG_SSL_HPP_
#define FSAUG_SSL_HPP_

#include <vector>

#include "fsaug/tensor.hpp"

namespace fsaug {

/// N x D embedding rows. When `normalized` is set, every row has unit L2
/// norm within 1e-6.
struct EmbeddingSet {
  Matrix vectors;
  bool normalized = false;

  /// Throws on NaN/Inf entries, or non-unit rows when `normalized` is set.
  void validate() const;
  /// Scale every row to unit norm; throws on zero rows.
  void normalize_rows();
};

/// K x D bank of cluster centroids with unit-normalized rows.
struct PrototypeBank {
  Matrix centroids;

  explicit PrototypeBank(Matrix c);  // validates unit rows within 1e-6
};

/// Soft assignment codes: entries >= 0, rows sum to 1/N.
struct AssignmentMatrix {
  Matrix q;
};

/// NT-Xent over an N-contents x V-views grid of unit embeddings, laid out
/// row = content * n_views + view. Mean over all (content, view) of
///   -1/(V-1) sum_{s' != s} log( exp(z_cs . z_cs' / T)
///                               / sum_{(c'', s'') != (c, s)} exp(z_cs . z_c''s'' / T) ).
double nt_xent(const Matrix& views, int n_contents, int n_views, double temperature);

/// Row-wise softmax(z . C^T / tau). Rows of z and the centroids must be
/// unit-normalized.
Matrix prototype_probs(const EmbeddingSet& z, const PrototypeBank& protos, double tau);

/// Sinkhorn-Knopp codes: Q = exp(scores / epsilon) normalized by its total
/// sum, then `iters` rounds of column normalization (columns sum to 1/K)
/// followed by row normalization (rows sum to 1/N); the last step is a row
/// normalization. Scores are shifted by their maximum before exponentiation.
AssignmentMatrix sinkhorn_knopp(const Matrix& scores, double epsilon, int iters);

/// Swapped-prediction loss: mean over n of H(q_s, p_t) + H(q_t, p_s), where
/// H(q, p) = -sum_k q_k log p_k with q rows rescaled to sum to 1.
double swav_loss_pair(const AssignmentMatrix& q_s, const AssignmentMatrix& q_t,
                      const Matrix& p_s, const Matrix& p_t);

/// Multi-crop loss: exactly 2 global code sets and V+2 probability sets (the
/// first 2 aligned with the globals); mean over n of
///   1/(2(V+1)) sum_i sum_{v != i} H(q_i, p_v).
double swav_loss_multicrop(const std::vector<AssignmentMatrix>& q_globals,
                           const std::vector<Matrix>& p_all);

/// Masked-view matching loss: (1/(N M)) sum_{n,m} H(p+_n, p_{n,m}) minus
/// lambda times the entropy of the mean masked row. p_masked is (N*M) x K
/// with row n * M + m; targets p_unmasked are N x K.
double msn_loss(const Matrix& p_masked, int n_masked_views, const Matrix& p_unmasked,
                double lambda);

struct MsnProbs {
  Matrix masked;    // (N*M) x K, temperature tau
  Matrix unmasked;  // N x K, temperature tau_plus, sharpened by Sinkhorn-Knopp
};

/// Prototype probabilities for masked rows (tau) and unmasked targets
/// (tau_plus, tau > tau_plus), targets then run through Sinkhorn-Knopp
/// across the batch and rescaled back to probability rows.
MsnProbs msn_probs(const EmbeddingSet& z_masked, const EmbeddingSet& z_unmasked,
                   const PrototypeBank& protos, double tau, double tau_plus,
                   double sk_epsilon = 0.05, int sk_iters = 3);

}  // namespace fsaug

#endif  // FSAUG_SSL_HPP_
