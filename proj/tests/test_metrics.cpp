#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "doctest.h"
#include "fsaug/metrics.hpp"
#include "fsaug/tensor.hpp"
#include "test_util.hpp"

using namespace fsaug;

namespace {

Matrix angles_2d(const std::vector<double>& degrees) {
  Matrix m(degrees.size(), 2);
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const double rad = degrees[i] * std::numbers::pi / 180.0;
    m(i, 0) = std::cos(rad);
    m(i, 1) = std::sin(rad);
  }
  return m;
}

}  // namespace

TEST_CASE("knn ordering and bounds") {
  SUBCASE("a duplicate of the query comes first") {
    Matrix m = angles_2d({0.0, 45.0, 0.0, 90.0});
    const std::vector<int> nb = knn(m, 0, 3);
    CHECK(nb[0] == 2);
  }
  SUBCASE("hand-computed angular order") {
    // query at 0 deg; neighbors at 30, 60, 120 deg
    Matrix m = angles_2d({0.0, 120.0, 30.0, 60.0});
    const std::vector<int> nb = knn(m, 0, 3);
    CHECK(nb == std::vector<int>{2, 3, 1});
  }
  SUBCASE("k = N-1 returns all the other rows") {
    Matrix m = angles_2d({0.0, 10.0, 20.0, 30.0});
    std::vector<int> nb = knn(m, 1, 3);
    std::sort(nb.begin(), nb.end());
    CHECK(nb == std::vector<int>{0, 2, 3});
  }
  SUBCASE("equal similarities break ties by index") {
    Matrix m = angles_2d({0.0, 30.0, -30.0, 90.0});
    const std::vector<int> nb = knn(m, 0, 2);
    CHECK(nb == std::vector<int>{1, 2});
  }
  SUBCASE("k bounds") {
    Matrix m = angles_2d({0.0, 10.0});
    CHECK_THROWS_AS(knn(m, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(knn(m, 0, 2), std::invalid_argument);
  }
}

TEST_CASE("domain purity on separated clusters is 1") {
  // two orthogonal, tight clusters; all within-domain similarities dominate
  Rng rng(51);
  const int per_cluster = 8, d = 6;
  LabeledEmbeddings emb;
  emb.vectors = Matrix(2 * per_cluster, d);
  for (int i = 0; i < 2 * per_cluster; ++i) {
    const int dom = i < per_cluster ? 0 : 1;
    std::vector<double> v(d, 0.0);
    v[dom] = 1.0;
    for (int j = 0; j < d; ++j) v[j] += rng.uniform(-0.05, 0.05);
    for (int j = 0; j < d; ++j) emb.vectors(i, j) = v[j];
    emb.domain_label.push_back(dom);
    emb.class_label.push_back(0);
  }
  for (int k : {1, 3, per_cluster - 1}) CHECK(domain_purity(emb, k) == 1.0);
}

TEST_CASE("domain purity with one domain is 1 for any k") {
  Rng rng(52);
  LabeledEmbeddings emb;
  emb.vectors = testutil::random_unit_rows(rng, 10, 4);
  emb.domain_label.assign(10, 3);
  emb.class_label.assign(10, 0);
  for (int k : {1, 5, 9}) CHECK(domain_purity(emb, k) == 1.0);
}

TEST_CASE("domain purity under independent labels is near 1/2") {
  Rng rng(53);
  const int n = 2000;
  LabeledEmbeddings emb;
  emb.vectors = testutil::random_unit_rows(rng, n, 8);
  emb.domain_label.assign(n, 0);
  for (int i = 0; i < n / 2; ++i) emb.domain_label[i] = 1;
  // shuffle labels independently of the vectors
  Rng shuffler(54);
  const std::vector<int> perm = shuffler.permutation(n);
  std::vector<int> shuffled(n);
  for (int i = 0; i < n; ++i) shuffled[i] = emb.domain_label[perm[i]];
  emb.domain_label = shuffled;
  emb.class_label.assign(n, 0);

  const double purity = domain_purity(emb, 10);
  CHECK(std::abs(purity - 0.5) <= 0.03);
}

TEST_CASE("domain purity ignores uniform rescaling") {
  Rng rng(55);
  LabeledEmbeddings emb;
  emb.vectors = testutil::random_unit_rows(rng, 64, 8);
  emb.domain_label.assign(64, 0);
  for (int i = 0; i < 32; ++i) emb.domain_label[i] = 1;
  emb.class_label.assign(64, 0);
  const double base = domain_purity(emb, 5);
  for (double& v : emb.vectors.data) v *= 3.7;
  CHECK(domain_purity(emb, 5) == base);
}

TEST_CASE("anchor-negative histogram") {
  SUBCASE("identical embeddings put all mass at similarity 1") {
    Matrix m(6, 3, 0.0);
    for (std::size_t i = 0; i < 6; ++i) m(i, 0) = 1.0;
    const Histogram h = anchor_negative_similarities(m, 3, 2, 10);
    std::uint64_t total = std::accumulate(h.counts.begin(), h.counts.end(),
                                          std::uint64_t{0});
    CHECK(total == 6ull * 2 * 2);  // N V (N-1) V
    CHECK(h.counts.back() == total);
  }
  SUBCASE("pair count identity") {
    Rng rng(61);
    const int n = 5, v = 3;
    const Matrix m = testutil::random_unit_rows(rng, n * v, 4);
    const Histogram h = anchor_negative_similarities(m, n, v, 7);
    const std::uint64_t total =
        std::accumulate(h.counts.begin(), h.counts.end(), std::uint64_t{0});
    CHECK(total == static_cast<std::uint64_t>(n) * v * (n - 1) * v);
  }
  SUBCASE("hand-placed angles land in the expected bins") {
    // contents: {0 deg, 10 deg} and {90 deg, 100 deg}; 8 negative pairs
    const Matrix m = angles_2d({0.0, 10.0, 90.0, 100.0});
    const Histogram h = anchor_negative_similarities(m, 2, 2, 4);
    // cos(90) = 0 twice, cos(80) twice, cos(100) < 0 twice, each direction
    CHECK(h.counts[0] == 0);
    CHECK(h.counts[1] == 2);  // cos(100 deg) in [-0.5, 0)
    CHECK(h.counts[2] == 6);  // cos(90), cos(80) in [0, 0.5)
    CHECK(h.counts[3] == 0);
  }
}

TEST_CASE("prototype homogeneity") {
  SUBCASE("single-label prototypes score 1") {
    Matrix protos(2, 4, 0.0);
    protos(0, 0) = 1.0;
    protos(1, 1) = 1.0;
    const PrototypeBank bank(protos);
    LabeledEmbeddings emb;
    emb.vectors = Matrix(6, 4, 0.0);
    for (int i = 0; i < 6; ++i) {
      const int cluster = i < 3 ? 0 : 1;
      emb.vectors(i, cluster) = 1.0;
      emb.domain_label.push_back(cluster);
      emb.class_label.push_back(cluster);
    }
    CHECK(prototype_homogeneity(emb, bank, LabelKind::kDomain, 0.05, 3) == 1.0);
    CHECK(prototype_homogeneity(emb, bank, LabelKind::kClass, 0.05, 3) == 1.0);
  }
  SUBCASE("uniform split over L labels scores 1/L") {
    Matrix protos(1, 4, 0.0);
    protos(0, 0) = 1.0;
    const PrototypeBank bank(protos);
    LabeledEmbeddings emb;
    emb.vectors = Matrix(8, 4, 0.0);
    for (int i = 0; i < 8; ++i) {
      emb.vectors(i, 0) = 1.0;
      emb.domain_label.push_back(i % 4);  // uniform over L = 4
      emb.class_label.push_back(0);
    }
    CHECK(prototype_homogeneity(emb, bank, LabelKind::kDomain, 0.05, 3) == 0.25);
  }
  SUBCASE("aligned class clusters vs shuffled domains") {
    Rng rng(62);
    const int k = 4, per_cluster = 500, d = 4;
    Matrix protos(k, d, 0.0);
    for (int j = 0; j < k; ++j) protos(j, j) = 1.0;
    const PrototypeBank bank(protos);

    LabeledEmbeddings emb;
    emb.vectors = Matrix(k * per_cluster, d);
    for (int i = 0; i < k * per_cluster; ++i) {
      const int cluster = i / per_cluster;
      std::vector<double> v(d);
      for (int j = 0; j < d; ++j) v[j] = rng.uniform(-0.05, 0.05);
      v[cluster] += 1.0;
      double norm = 0.0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      for (int j = 0; j < d; ++j) emb.vectors(i, j) = v[j] / norm;
      emb.class_label.push_back(cluster);
      emb.domain_label.push_back(static_cast<int>(rng.next_below(2)));
    }
    CHECK(prototype_homogeneity(emb, bank, LabelKind::kClass, 0.05, 3) == 1.0);
    const double dom = prototype_homogeneity(emb, bank, LabelKind::kDomain, 0.05, 3);
    CHECK(std::abs(dom - 0.5) <= 0.05);
  }
  SUBCASE("homogeneity stays within [1/L, 1]") {
    Rng rng(63);
    Matrix protos = testutil::random_unit_rows(rng, 3, 5);
    const PrototypeBank bank(protos);
    LabeledEmbeddings emb;
    emb.vectors = testutil::random_unit_rows(rng, 30, 5);
    for (int i = 0; i < 30; ++i) {
      emb.domain_label.push_back(static_cast<int>(rng.next_below(3)));
      emb.class_label.push_back(0);
    }
    const double h = prototype_homogeneity(emb, bank, LabelKind::kDomain, 0.05, 3);
    CHECK(h >= 1.0 / 3.0);
    CHECK(h <= 1.0);
  }
}
