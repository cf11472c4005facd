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

#include "fsaug/ssl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fsaug {

namespace {

constexpr double kProbFloor = 1e-12;  // clamp inside logs
constexpr double kNormTol = 1e-6;

double row_norm(const Matrix& m, std::size_t i) {
  double s = 0.0;
  for (std::size_t j = 0; j < m.cols; ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

void require_unit_rows(const Matrix& m, const char* what) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (std::abs(row_norm(m, i) - 1.0) > kNormTol)
      throw std::invalid_argument(std::string(what) + ": rows must be unit-normalized");
  }
}

double dot_rows(const Matrix& a, std::size_t i, const Matrix& b, std::size_t j) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.cols; ++k) s += a(i, k) * b(j, k);
  return s;
}

// -sum_k q_k log(max(p_k, floor)), with q already a probability row.
double cross_entropy_row(const Matrix& q, std::size_t qi, double q_scale,
                         const Matrix& p, std::size_t pi) {
  double s = 0.0;
  for (std::size_t k = 0; k < q.cols; ++k) {
    s -= q_scale * q(qi, k) * std::log(std::max(p(pi, k), kProbFloor));
  }
  return s;
}

}  // namespace

void EmbeddingSet::validate() const {
  for (double v : vectors.data) {
    if (!std::isfinite(v))
      throw std::invalid_argument("EmbeddingSet: NaN or Inf entry");
  }
  if (normalized) require_unit_rows(vectors, "EmbeddingSet");
}

void EmbeddingSet::normalize_rows() {
  for (std::size_t i = 0; i < vectors.rows; ++i) {
    const double norm = row_norm(vectors, i);
    if (norm == 0.0)
      throw std::invalid_argument("EmbeddingSet: cannot normalize a zero row");
    for (std::size_t j = 0; j < vectors.cols; ++j) vectors(i, j) /= norm;
  }
  normalized = true;
}

PrototypeBank::PrototypeBank(Matrix c) : centroids(std::move(c)) {
  require_unit_rows(centroids, "PrototypeBank");
}

double nt_xent(const Matrix& views, int n_contents, int n_views, double temperature) {
  if (temperature <= 0.0) throw std::invalid_argument("nt_xent: temperature must be > 0");
  if (n_views < 2) throw std::invalid_argument("nt_xent: need at least 2 views");
  const std::size_t total = static_cast<std::size_t>(n_contents) * n_views;
  if (views.rows != total)
    throw std::invalid_argument("nt_xent: row count must equal contents * views");
  require_unit_rows(views, "nt_xent");

  // logits(a, b) = z_a . z_b / T; per anchor a the denominator runs over all
  // b != a and the positives are the other views of the same content.
  Matrix logits(total, total, 0.0);
  for (std::size_t a = 0; a < total; ++a) {
    for (std::size_t b = 0; b < total; ++b) {
      logits(a, b) = dot_rows(views, a, views, b) / temperature;
    }
  }

  double loss_sum = 0.0;
  for (std::size_t a = 0; a < total; ++a) {
    double max_logit = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < total; ++b) {
      if (b != a) max_logit = std::max(max_logit, logits(a, b));
    }
    double denom = 0.0;
    for (std::size_t b = 0; b < total; ++b) {
      if (b != a) denom += std::exp(logits(a, b) - max_logit);
    }
    const double lse = max_logit + std::log(denom);

    const std::size_t content = a / n_views;
    double anchor_loss = 0.0;
    for (int s = 0; s < n_views; ++s) {
      const std::size_t pos = content * n_views + s;
      if (pos == a) continue;
      anchor_loss -= logits(a, pos) - lse;
    }
    loss_sum += anchor_loss / (n_views - 1);
  }
  return loss_sum / static_cast<double>(total);
}

Matrix prototype_probs(const EmbeddingSet& z, const PrototypeBank& protos, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("prototype_probs: tau must be > 0");
  if (z.vectors.cols != protos.centroids.cols)
    throw std::invalid_argument("prototype_probs: embedding/centroid dim mismatch");
  z.validate();
  require_unit_rows(z.vectors, "prototype_probs");

  const std::size_t n = z.vectors.rows, k = protos.centroids.rows;
  Matrix probs(n, k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double max_logit = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
      probs(i, j) = dot_rows(z.vectors, i, protos.centroids, j) / tau;
      max_logit = std::max(max_logit, probs(i, j));
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      probs(i, j) = std::exp(probs(i, j) - max_logit);
      sum += probs(i, j);
    }
    for (std::size_t j = 0; j < k; ++j) probs(i, j) /= sum;
  }
  return probs;
}

AssignmentMatrix sinkhorn_knopp(const Matrix& scores, double epsilon, int iters) {
  if (epsilon <= 0.0) throw std::invalid_argument("sinkhorn_knopp: epsilon must be > 0");
  if (iters < 1) throw std::invalid_argument("sinkhorn_knopp: iters must be >= 1");
  const std::size_t n = scores.rows, k = scores.cols;
  if (n == 0 || k == 0) throw std::invalid_argument("sinkhorn_knopp: empty scores");

  const double max_score = *std::max_element(scores.data.begin(), scores.data.end());
  Matrix q(n, k, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n * k; ++i) {
    q.data[i] = std::exp((scores.data[i] - max_score) / epsilon);
    total += q.data[i];
  }
  for (double& v : q.data) v /= total;

  std::vector<double> col_sum(k), row_sum(n);
  for (int it = 0; it < iters; ++it) {
    std::fill(col_sum.begin(), col_sum.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) col_sum[j] += q(i, j);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (col_sum[j] > 0.0) q(i, j) /= col_sum[j] * static_cast<double>(k);

    std::fill(row_sum.begin(), row_sum.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) row_sum[i] += q(i, j);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (row_sum[i] > 0.0) q(i, j) /= row_sum[i] * static_cast<double>(n);
  }
  return AssignmentMatrix{std::move(q)};
}

double swav_loss_pair(const AssignmentMatrix& q_s, const AssignmentMatrix& q_t,
                      const Matrix& p_s, const Matrix& p_t) {
  const std::size_t n = q_s.q.rows, k = q_s.q.cols;
  if (q_t.q.rows != n || p_s.rows != n || p_t.rows != n || q_t.q.cols != k ||
      p_s.cols != k || p_t.cols != k)
    throw std::invalid_argument("swav_loss_pair: shape mismatch");
  const double scale = static_cast<double>(n);  // q rows sum to 1/N
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    loss += cross_entropy_row(q_s.q, i, scale, p_t, i);
    loss += cross_entropy_row(q_t.q, i, scale, p_s, i);
  }
  return loss / static_cast<double>(n);
}

double swav_loss_multicrop(const std::vector<AssignmentMatrix>& q_globals,
                           const std::vector<Matrix>& p_all) {
  if (q_globals.size() != 2)
    throw std::invalid_argument("swav_loss_multicrop: need exactly 2 global code sets");
  if (p_all.size() < 2)
    throw std::invalid_argument("swav_loss_multicrop: need at least 2 probability sets");
  const std::size_t n = q_globals[0].q.rows, k = q_globals[0].q.cols;
  for (const auto& q : q_globals)
    if (q.q.rows != n || q.q.cols != k)
      throw std::invalid_argument("swav_loss_multicrop: global shape mismatch");
  for (const auto& p : p_all)
    if (p.rows != n || p.cols != k)
      throw std::invalid_argument("swav_loss_multicrop: probability shape mismatch");

  const std::size_t n_locals = p_all.size() - 2;  // V
  const double scale = static_cast<double>(n);
  const double norm = 1.0 / (2.0 * (static_cast<double>(n_locals) + 1.0));
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double per_sample = 0.0;
    for (std::size_t gi = 0; gi < 2; ++gi) {
      for (std::size_t vi = 0; vi < p_all.size(); ++vi) {
        if (vi == gi) continue;
        per_sample += cross_entropy_row(q_globals[gi].q, i, scale, p_all[vi], i);
      }
    }
    loss += norm * per_sample;
  }
  return loss / static_cast<double>(n);
}

double msn_loss(const Matrix& p_masked, int n_masked_views, const Matrix& p_unmasked,
                double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("msn_loss: lambda must be >= 0");
  if (n_masked_views < 1)
    throw std::invalid_argument("msn_loss: need at least one masked view");
  const std::size_t m = static_cast<std::size_t>(n_masked_views);
  const std::size_t n = p_unmasked.rows, k = p_unmasked.cols;
  if (p_masked.rows != n * m || p_masked.cols != k)
    throw std::invalid_argument("msn_loss: masked probabilities shape mismatch");

  double ce = 0.0;
  for (std::size_t ni = 0; ni < n; ++ni) {
    for (std::size_t mi = 0; mi < m; ++mi) {
      ce += cross_entropy_row(p_unmasked, ni, 1.0, p_masked, ni * m + mi);
    }
  }
  ce /= static_cast<double>(n * m);

  std::vector<double> mean_row(k, 0.0);
  for (std::size_t i = 0; i < n * m; ++i)
    for (std::size_t j = 0; j < k; ++j) mean_row[j] += p_masked(i, j);
  double entropy = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double p = mean_row[j] / static_cast<double>(n * m);
    entropy -= p * std::log(std::max(p, kProbFloor));
  }
  return ce - lambda * entropy;
}

MsnProbs msn_probs(const EmbeddingSet& z_masked, const EmbeddingSet& z_unmasked,
                   const PrototypeBank& protos, double tau, double tau_plus,
                   double sk_epsilon, int sk_iters) {
  if (!(tau > tau_plus && tau_plus > 0.0))
    throw std::invalid_argument("msn_probs: need tau > tau_plus > 0");
  MsnProbs out;
  out.masked = prototype_probs(z_masked, protos, tau);
  Matrix targets = prototype_probs(z_unmasked, protos, tau_plus);
  // Sharpen targets across the batch; SK rows sum to 1/N, so rescale back
  // to probability rows.
  AssignmentMatrix codes = sinkhorn_knopp(targets, sk_epsilon, sk_iters);
  const double scale = static_cast<double>(codes.q.rows);
  for (double& v : codes.q.data) v *= scale;
  out.unmasked = std::move(codes.q);
  return out;
}

}  // namespace fsaug
