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

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fsaug/io.hpp"
#include "fsaug/metrics.hpp"
#include "fsaug/ssl.hpp"
#include "fsaug/style_aug.hpp"
#include "fsaug/tensor.hpp"

namespace {

using namespace fsaug;

EmbeddingSet load_unit_embeddings(const std::string& path) {
  EmbeddingSet emb = io::load_embeddings(path);
  if (!emb.normalized) emb.normalize_rows();
  return emb;
}

LabeledEmbeddings load_labeled(const std::string& emb_path,
                               const std::string& labels_path) {
  const EmbeddingSet emb = load_unit_embeddings(emb_path);
  const io::Labels labels = io::load_labels(labels_path);
  if (labels.domain.size() != emb.vectors.rows)
    throw std::invalid_argument("label row count does not match embedding rows");
  return LabeledEmbeddings{emb.vectors, labels.domain, labels.cls};
}

PrototypeBank load_prototypes(const std::string& path) {
  EmbeddingSet protos = io::load_embeddings(path);
  if (!protos.normalized) protos.normalize_rows();
  return PrototypeBank(protos.vectors);
}

struct AugmentArgs {
  std::string input, output;
  std::string mode = "bss";
  int views = 1;
  double r_min = 0.02, r_max = 1.0;
  std::uint64_t seed = 0;
  std::vector<double> r_sweep;
};

void run_augment(const AugmentArgs& args) {
  const RatioRange range(args.r_min, args.r_max);  // validates the bounds
  if (args.views < 1) throw std::invalid_argument("--views must be >= 1");

  const ImageBatch batch = io::load_images(args.input);
  Rng rng(args.seed);

  ViewBatch grid;
  if (!args.r_sweep.empty()) {
    // Fixed style image, one column per listed ratio.
    for (double r : args.r_sweep)
      if (!(r >= 0.0 && r <= 1.0))
        throw std::invalid_argument("--r-sweep ratios must be in [0, 1]");
    const int style = static_cast<int>(rng.next_below(batch.n));
    grid = ViewBatch(batch.n, static_cast<int>(args.r_sweep.size()), batch.c, batch.h,
                     batch.w);
    for (std::size_t vi = 0; vi < args.r_sweep.size(); ++vi) {
      const ViewBatch one = bss_with(batch, {style}, args.r_sweep[vi]);
      grid.set_view(static_cast<int>(vi), one.view(0));
    }
  } else if (args.mode == "bss") {
    grid = batch_styles_standardize(batch, args.views, range, rng);
  } else if (args.mode == "fa") {
    grid = ViewBatch(batch.n, args.views, batch.c, batch.h, batch.w);
    for (int vi = 0; vi < args.views; ++vi)
      grid.set_view(vi, fourier_augment(batch, range, rng));
  } else if (args.mode == "none") {
    grid = ViewBatch(batch.n, args.views, batch.c, batch.h, batch.w);
    for (int vi = 0; vi < args.views; ++vi) grid.set_view(vi, batch);
  } else {
    throw std::invalid_argument("--mode must be one of fa, bss, none");
  }
  io::save_grid(grid, args.output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier-based style augmentation, SSL loss evaluation and "
               "embedding diagnostics"};
  app.require_subcommand(1);

  // ---- augment ----
  AugmentArgs aug;
  CLI::App* augment = app.add_subcommand("augment", "Write an N x V grid of augmented views");
  augment->add_option("--input", aug.input, "Directory of 8-bit PNG images")->required();
  augment->add_option("--output", aug.output, "Output grid PNG path")->required();
  augment->add_option("--mode", aug.mode, "Style transfer: fa, bss or none")
      ->check(CLI::IsMember({"fa", "bss", "none"}));
  augment->add_option("--views", aug.views, "Number of views (grid columns)");
  augment->add_option("--r-min", aug.r_min, "Minimum substitution area ratio");
  augment->add_option("--r-max", aug.r_max, "Maximum substitution area ratio");
  augment->add_option("--seed", aug.seed, "Generator seed");
  augment->add_option("--r-sweep", aug.r_sweep,
                      "Fixed ratios, one column each, with a single style image")
      ->delimiter(',');

  // ---- metrics ----
  CLI::App* metrics = app.add_subcommand("metrics", "Embedding-space diagnostics");
  metrics->require_subcommand(1);

  std::string m_emb, m_labels, m_protos, m_label_kind = "domain";
  std::vector<int> m_k{10};
  int m_views = 2, m_bins = 50, m_sk_iters = 3;
  double m_sk_eps = 0.05;

  CLI::App* purity = metrics->add_subcommand("purity", "Mean k-NN domain purity");
  purity->add_option("--emb", m_emb, "EMB1 embedding file")->required();
  purity->add_option("--labels", m_labels, "Label CSV")->required();
  purity->add_option("--k", m_k, "Neighbor counts")->delimiter(',');

  CLI::App* homogeneity =
      metrics->add_subcommand("homogeneity", "Per-prototype label homogeneity");
  homogeneity->add_option("--emb", m_emb, "EMB1 embedding file")->required();
  homogeneity->add_option("--labels", m_labels, "Label CSV")->required();
  homogeneity->add_option("--protos", m_protos, "EMB1 prototype file")->required();
  homogeneity->add_option("--label", m_label_kind, "domain or class")
      ->check(CLI::IsMember({"domain", "class"}));
  homogeneity->add_option("--sk-iters", m_sk_iters, "Sinkhorn iterations");
  homogeneity->add_option("--sk-eps", m_sk_eps, "Sinkhorn epsilon");

  CLI::App* negsim =
      metrics->add_subcommand("negsim", "Anchor-negative cosine similarity histogram");
  negsim->add_option("--emb", m_emb, "EMB1 embedding file, row = content * V + view")
      ->required();
  negsim->add_option("--views", m_views, "Views per content")->required();
  negsim->add_option("--bins", m_bins, "Histogram bins over [-1, 1]");

  // ---- loss ----
  CLI::App* loss = app.add_subcommand("loss", "Forward SSL objective evaluation");
  loss->require_subcommand(1);

  std::string l_emb, l_protos, l_masked, l_unmasked;
  int l_contents = 0, l_views = 2, l_sk_iters = 3;
  double l_temp = 0.5, l_tau = 0.1, l_tau_plus = 0.025, l_lambda = 1.0,
         l_sk_eps = 0.05;

  CLI::App* ntxent = loss->add_subcommand("ntxent", "NT-Xent contrastive loss");
  ntxent->add_option("--emb", l_emb, "EMB1 file, row = content * V + view")->required();
  ntxent->add_option("--contents", l_contents, "Number of contents N")->required();
  ntxent->add_option("--views", l_views, "Views per content V")->required();
  ntxent->add_option("--temp", l_temp, "Temperature T");

  CLI::App* swav = loss->add_subcommand("swav", "Multi-crop swapped prediction loss");
  swav->add_option("--emb", l_emb,
                   "EMB1 file, view-major: 2 global blocks of N rows, then locals")
      ->required();
  swav->add_option("--protos", l_protos, "EMB1 prototype file")->required();
  swav->add_option("--contents", l_contents, "Number of contents N")->required();
  swav->add_option("--tau", l_tau, "Softmax temperature");
  swav->add_option("--sk-eps", l_sk_eps, "Sinkhorn epsilon");
  swav->add_option("--sk-iters", l_sk_iters, "Sinkhorn iterations");

  CLI::App* msn = loss->add_subcommand("msn", "Masked prototype matching loss");
  msn->add_option("--emb-masked", l_masked, "EMB1 file, row = content * M + view")
      ->required();
  msn->add_option("--emb-unmasked", l_unmasked, "EMB1 file, N rows")->required();
  msn->add_option("--protos", l_protos, "EMB1 prototype file")->required();
  msn->add_option("--tau", l_tau, "Masked temperature");
  msn->add_option("--tau-plus", l_tau_plus, "Unmasked temperature");
  msn->add_option("--lambda", l_lambda, "Entropy regularization weight");
  msn->add_option("--sk-eps", l_sk_eps, "Sinkhorn epsilon");
  msn->add_option("--sk-iters", l_sk_iters, "Sinkhorn iterations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (augment->parsed()) {
      run_augment(aug);
    } else if (purity->parsed()) {
      const LabeledEmbeddings emb = load_labeled(m_emb, m_labels);
      for (int k : m_k) std::printf("%d,%.6f\n", k, domain_purity(emb, k));
    } else if (homogeneity->parsed()) {
      const LabeledEmbeddings emb = load_labeled(m_emb, m_labels);
      const PrototypeBank protos = load_prototypes(m_protos);
      const LabelKind kind =
          m_label_kind == "domain" ? LabelKind::kDomain : LabelKind::kClass;
      std::printf("%.6f\n", prototype_homogeneity(emb, protos, kind, m_sk_eps,
                                                  m_sk_iters));
    } else if (negsim->parsed()) {
      const EmbeddingSet emb = load_unit_embeddings(m_emb);
      if (m_views < 1 || emb.vectors.rows % m_views != 0)
        throw std::invalid_argument("--views must divide the embedding row count");
      const int contents = static_cast<int>(emb.vectors.rows) / m_views;
      const Histogram hist =
          anchor_negative_similarities(emb.vectors, contents, m_views, m_bins);
      for (std::size_t i = 0; i < hist.counts.size(); ++i)
        std::printf("%.6f,%.6f,%llu\n", hist.bin_edges[i], hist.bin_edges[i + 1],
                    static_cast<unsigned long long>(hist.counts[i]));
    } else if (ntxent->parsed()) {
      const EmbeddingSet emb = load_unit_embeddings(l_emb);
      std::printf("%.12f\n", nt_xent(emb.vectors, l_contents, l_views, l_temp));
    } else if (swav->parsed()) {
      const EmbeddingSet emb = load_unit_embeddings(l_emb);
      const PrototypeBank protos = load_prototypes(l_protos);
      const std::size_t n = static_cast<std::size_t>(l_contents);
      if (n < 1 || emb.vectors.rows % n != 0 || emb.vectors.rows / n < 2)
        throw std::invalid_argument(
            "--contents must divide the rows into at least 2 view blocks");
      const std::size_t n_view_blocks = emb.vectors.rows / n;
      std::vector<Matrix> blocks(n_view_blocks);
      for (std::size_t b = 0; b < n_view_blocks; ++b) {
        blocks[b] = Matrix(n, emb.vectors.cols);
        std::copy(emb.vectors.data.begin() + b * n * emb.vectors.cols,
                  emb.vectors.data.begin() + (b + 1) * n * emb.vectors.cols,
                  blocks[b].data.begin());
      }
      std::vector<AssignmentMatrix> codes;
      std::vector<Matrix> probs;
      for (std::size_t b = 0; b < n_view_blocks; ++b) {
        EmbeddingSet z{blocks[b], true};
        if (b < 2) {
          Matrix scores(n, protos.centroids.rows);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < protos.centroids.rows; ++j) {
              double dot = 0.0;
              for (std::size_t d = 0; d < z.vectors.cols; ++d)
                dot += z.vectors(i, d) * protos.centroids(j, d);
              scores(i, j) = dot;
            }
          codes.push_back(sinkhorn_knopp(scores, l_sk_eps, l_sk_iters));
        }
        probs.push_back(prototype_probs(z, protos, l_tau));
      }
      std::printf("%.12f\n", swav_loss_multicrop(codes, probs));
    } else if (msn->parsed()) {
      const EmbeddingSet masked = load_unit_embeddings(l_masked);
      const EmbeddingSet unmasked = load_unit_embeddings(l_unmasked);
      const PrototypeBank protos = load_prototypes(l_protos);
      if (unmasked.vectors.rows == 0 ||
          masked.vectors.rows % unmasked.vectors.rows != 0)
        throw std::invalid_argument(
            "masked rows must be a multiple of unmasked rows");
      const int m = static_cast<int>(masked.vectors.rows / unmasked.vectors.rows);
      const MsnProbs p =
          msn_probs(masked, unmasked, protos, l_tau, l_tau_plus, l_sk_eps, l_sk_iters);
      std::printf("%.12f\n", msn_loss(p.masked, m, p.unmasked, l_lambda));
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
