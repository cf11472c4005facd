#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fsaug/io.hpp"
#include "fsaug/tensor.hpp"
#include "test_util.hpp"

using namespace fsaug;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out_path = dir / "stdout.txt";
  const std::string cmd = std::string(FSAUG_CLI_PATH) + " " + args + " > " +
                          out_path.string() + " 2> " + (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path);
  result.out.assign((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return result;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("fsaug_cli_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("augment mode none reproduces the inputs in the grid") {
  TempDir dir("none");
  Rng rng(100);
  const ImageBatch batch = testutil::random_batch(rng, 2, 1, 8, 8);
  io::save_images(batch, (dir.path / "in").string());
  const CliResult r = run_cli("augment --input " + (dir.path / "in").string() +
                                  " --output " + (dir.path / "grid.png").string() +
                                  " --mode none --views 1 --seed 1",
                              dir.path);
  CHECK(r.exit_code == 0);

  const ImageBatch grid = io::load_png((dir.path / "grid.png").string());
  const ImageBatch in = io::load_images((dir.path / "in").string());
  CHECK(grid.h == 2 * 8 + 2);
  CHECK(grid.w == 8);
  for (int ni = 0; ni < 2; ++ni)
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 8; ++x)
        CHECK(grid.at(0, 0, ni * 10 + y, x) == in.at(ni, 0, y, x));
}

TEST_CASE("augment runs are byte deterministic under a fixed seed") {
  TempDir dir("det");
  Rng rng(101);
  const ImageBatch batch = testutil::random_batch(rng, 4, 3, 16, 16);
  io::save_images(batch, (dir.path / "in").string());
  const std::string base = "augment --input " + (dir.path / "in").string() +
                           " --mode bss --views 3 --seed 42 --output ";
  CHECK(run_cli(base + (dir.path / "a.png").string(), dir.path).exit_code == 0);
  CHECK(run_cli(base + (dir.path / "b.png").string(), dir.path).exit_code == 0);
  const std::string a = slurp(dir.path / "a.png");
  CHECK(!a.empty());
  CHECK(a == slurp(dir.path / "b.png"));
}

TEST_CASE("augment rejects an inverted ratio range with exit 2") {
  TempDir dir("range");
  Rng rng(102);
  io::save_images(testutil::random_batch(rng, 2, 1, 8, 8), (dir.path / "in").string());
  const CliResult r = run_cli("augment --input " + (dir.path / "in").string() +
                                  " --output " + (dir.path / "g.png").string() +
                                  " --mode bss --r-min 0.3 --r-max 0.2 --seed 1",
                              dir.path);
  CHECK(r.exit_code == 2);
  CHECK(slurp(dir.path / "stderr.txt").find("r_min") != std::string::npos);
}

TEST_CASE("augment r-sweep columns use one style at the listed ratios") {
  TempDir dir("sweep");
  Rng rng(103);
  io::save_images(testutil::random_batch(rng, 4, 1, 16, 16),
                  (dir.path / "in").string());
  const CliResult r = run_cli(
      "augment --input " + (dir.path / "in").string() + " --output " +
          (dir.path / "sweep.png").string() +
          " --mode bss --seed 9 --r-sweep 0.05,0.1,0.3,0.6,1.0",
      dir.path);
  CHECK(r.exit_code == 0);
  const ImageBatch grid = io::load_png((dir.path / "sweep.png").string());
  CHECK(grid.w == 5 * 16 + 4 * 2);  // five ratio columns
  CHECK(grid.h == 4 * 16 + 3 * 2);
}

TEST_CASE("loss ntxent prints the analytic value for identical embeddings") {
  TempDir dir("ntxent");
  const int n = 4, v = 2;
  Matrix z(static_cast<std::size_t>(n) * v, 3, 0.0);
  for (std::size_t i = 0; i < z.rows; ++i) z(i, 0) = 1.0;
  io::save_embeddings(z, true, (dir.path / "z.emb").string());

  const CliResult r = run_cli("loss ntxent --emb " + (dir.path / "z.emb").string() +
                                  " --contents 4 --views 2 --temp 0.5",
                              dir.path);
  CHECK(r.exit_code == 0);
  CHECK(std::abs(std::stod(r.out) - std::log(n * v - 1.0)) < 1e-9);

  // --temp defaults to 0.5
  const CliResult d = run_cli("loss ntxent --emb " + (dir.path / "z.emb").string() +
                                  " --contents 4 --views 2",
                              dir.path);
  CHECK(d.exit_code == 0);
  CHECK(d.out == r.out);
}

TEST_CASE("malformed embedding magic exits 1") {
  TempDir dir("magic");
  std::ofstream((dir.path / "bad.emb").string(), std::ios::binary)
      << "NOPE0000000000000000";
  const CliResult r = run_cli("loss ntxent --emb " + (dir.path / "bad.emb").string() +
                                  " --contents 2 --views 2",
                              dir.path);
  CHECK(r.exit_code == 1);
  CHECK(slurp(dir.path / "stderr.txt").find("bad magic") != std::string::npos);
}

TEST_CASE("metrics purity on the two-cluster fixture prints 1") {
  TempDir dir("purity");
  const int per = 4;
  Matrix z(2 * per, 4, 0.0);
  io::Labels labels;
  for (int i = 0; i < 2 * per; ++i) {
    const int dom = i < per ? 0 : 1;
    z(i, dom) = 1.0;
    z(i, 2) = i % per * 0.01;  // break exact ties inside a cluster
    labels.domain.push_back(dom);
    labels.cls.push_back(0);
  }
  io::save_embeddings(z, false, (dir.path / "z.emb").string());
  io::save_labels(labels, (dir.path / "l.csv").string());

  const CliResult r = run_cli("metrics purity --emb " + (dir.path / "z.emb").string() +
                                  " --labels " + (dir.path / "l.csv").string() +
                                  " --k 3,5",
                              dir.path);
  CHECK(r.exit_code == 0);
  // k = 3 stays inside a cluster; k = 5 must borrow 2 cross-domain neighbors
  CHECK(r.out == "3,1.000000\n5,0.600000\n");
}

TEST_CASE("metrics homogeneity on a single-label fixture prints 1") {
  TempDir dir("homog");
  Matrix z(6, 4, 0.0);
  io::Labels labels;
  for (int i = 0; i < 6; ++i) {
    z(i, i % 2) = 1.0;
    labels.domain.push_back(7);
    labels.cls.push_back(7);
  }
  Matrix protos(2, 4, 0.0);
  protos(0, 0) = 1.0;
  protos(1, 1) = 1.0;
  io::save_embeddings(z, false, (dir.path / "z.emb").string());
  io::save_embeddings(protos, true, (dir.path / "p.emb").string());
  io::save_labels(labels, (dir.path / "l.csv").string());

  const CliResult r = run_cli(
      "metrics homogeneity --emb " + (dir.path / "z.emb").string() + " --labels " +
          (dir.path / "l.csv").string() + " --protos " + (dir.path / "p.emb").string() +
          " --label domain --sk-iters 3 --sk-eps 0.05",
      dir.path);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1.000000\n");
}

TEST_CASE("metrics negsim counts match the pair identity") {
  TempDir dir("negsim");
  Rng rng(104);
  const int n = 3, v = 2;
  const Matrix z = testutil::random_unit_rows(rng, static_cast<std::size_t>(n) * v, 4);
  io::save_embeddings(z, true, (dir.path / "z.emb").string());

  const CliResult r = run_cli("metrics negsim --emb " + (dir.path / "z.emb").string() +
                                  " --views 2 --bins 10",
                              dir.path);
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::uint64_t total = 0;
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    const auto last_comma = line.rfind(',');
    total += std::stoull(line.substr(last_comma + 1));
  }
  CHECK(rows == 10);
  CHECK(total == static_cast<std::uint64_t>(n) * v * (n - 1) * v);
}

TEST_CASE("loss swav and msn run end to end") {
  TempDir dir("loss");
  Rng rng(105);
  const int n = 4, k = 6, d = 5;
  // 2 globals + 2 locals, view-major blocks
  const Matrix z = testutil::random_unit_rows(rng, static_cast<std::size_t>(n) * 4, d);
  const Matrix protos = testutil::random_unit_rows(rng, k, d);
  io::save_embeddings(z, true, (dir.path / "z.emb").string());
  io::save_embeddings(protos, true, (dir.path / "p.emb").string());

  const CliResult swav = run_cli(
      "loss swav --emb " + (dir.path / "z.emb").string() + " --protos " +
          (dir.path / "p.emb").string() + " --contents 4 --tau 0.1",
      dir.path);
  CHECK(swav.exit_code == 0);
  CHECK(std::isfinite(std::stod(swav.out)));

  const Matrix masked =
      testutil::random_unit_rows(rng, static_cast<std::size_t>(n) * 3, d);
  const Matrix unmasked = testutil::random_unit_rows(rng, n, d);
  io::save_embeddings(masked, true, (dir.path / "m.emb").string());
  io::save_embeddings(unmasked, true, (dir.path / "u.emb").string());
  const CliResult msn = run_cli(
      "loss msn --emb-masked " + (dir.path / "m.emb").string() + " --emb-unmasked " +
          (dir.path / "u.emb").string() + " --protos " + (dir.path / "p.emb").string() +
          " --tau 0.1 --tau-plus 0.025 --lambda 1.0",
      dir.path);
  CHECK(msn.exit_code == 0);
  CHECK(std::isfinite(std::stod(msn.out)));
}

TEST_CASE("usage errors exit 2") {
  TempDir dir("usage");
  CHECK(run_cli("augment --mode bss", dir.path).exit_code == 2);  // missing required
  CHECK(run_cli("nosuchcommand", dir.path).exit_code == 2);
}
