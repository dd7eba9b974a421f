#include "cpe/cli.hpp"
#include "cpe/ensembles.hpp"

#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace cpe;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(CPE_CLI_PATH) + " " + args + " > /dev/null 2> /dev/null";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

struct Csv {
  std::vector<std::string> comments;
  std::string header;
  std::vector<std::vector<std::string>> rows;
};

Csv read_csv(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(static_cast<bool>(in));
  Csv csv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      csv.comments.push_back(line);
      continue;
    }
    if (csv.header.empty()) {
      csv.header = line;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    csv.rows.push_back(cells);
  }
  return csv;
}

std::string tmp_path(const std::string& name) {
  return "/tmp/cpe_cli_test_" + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(static_cast<bool>(out));
  out << text;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("transform emits the certified coefficient table") {
  const std::string out = tmp_path("transform.csv");
  REQUIRE(run_cli("transform --ensemble jacobi --alpha 1 --gamma 0.3 --n 2 "
                  "--out " +
                  out) == 0);
  const Csv csv = read_csv(out);
  CHECK(csv.header == "s,re,im");
  REQUIRE(!csv.comments.empty());
  bool found = false;
  for (const auto& row : csv.rows) {
    REQUIRE(row.size() == std::size_t{3});
    if (row[0] != "0") continue;
    found = true;
    CHECK(std::abs(std::stod(row[1]) - 1.7739856050465113) <= 1e-14);
    CHECK(std::abs(std::stod(row[2]) - -0.3547971210093022) <= 1e-14);
  }
  CHECK(found);
  // Window [-256, 257] for this family and dimension.
  CHECK(csv.rows.size() == std::size_t{514});
}

TEST_CASE("density of the flat ensemble is constant") {
  const std::string out = tmp_path("density.csv");
  REQUIRE(run_cli("density --ensemble haar --n 2 --out " + out) == 0);
  const Csv csv = read_csv(out);
  CHECK(csv.header == "theta,r1");
  REQUIRE(csv.rows.size() == std::size_t{256});
  for (const auto& row : csv.rows) {
    REQUIRE(row.size() == std::size_t{2});
    CHECK(std::abs(std::stod(row[1]) - 2.0) <= 1e-9);
  }
}

TEST_CASE("sample command driven entirely by a config file") {
  const std::string out = tmp_path("sample.csv");
  const std::string cfg = tmp_path("sample_cfg.json");
  write_file(cfg,
             "{\"n\": 2, \"samples\": 50, \"seed\": 5, "
             "\"ensemble\": {\"kind\": \"rank1\", "
             "\"gammas\": [0.2, -0.35, 0.5, 0.15]}, \"out\": \"" +
                 out + "\"}");
  REQUIRE(run_cli("sample --config " + cfg) == 0);
  const Csv csv = read_csv(out);
  CHECK(csv.header == "sample,slot,theta");
  REQUIRE(csv.rows.size() == std::size_t{100});
  for (const auto& row : csv.rows) {
    const double th = std::stod(row[2]);
    CHECK(th > -pi - 1e-15);
    CHECK(th <= pi + 1e-15);
  }
}

TEST_CASE("kernel grid output carries the job echo") {
  const std::string out = tmp_path("kernel.csv");
  const std::string cfg = tmp_path("kernel_cfg.json");
  write_file(cfg,
             "{\"grid\": 4, \"n\": 2, "
             "\"ensemble\": {\"kind\": \"gauss\", \"t\": 0.8}, \"out\": \"" +
                 out + "\"}");
  REQUIRE(run_cli("kernel --config " + cfg) == 0);
  const Csv csv = read_csv(out);
  CHECK(csv.header == "i,j,theta1,theta2,re,im");
  CHECK(csv.rows.size() == std::size_t{16});
  REQUIRE(!csv.comments.empty());
  CHECK(csv.comments[0].find("\"command\":\"kernel\"") != std::string::npos);
  CHECK(csv.comments[0].find("\"grid\":4") != std::string::npos);
}

TEST_CASE("failure modes exit with status 2") {
  CHECK(run_cli("frobnicate --ensemble haar --n 2") == 2);
  CHECK(run_cli("density --n 2") == 2);  // no ensemble, no config
  CHECK(run_cli("transform --ensemble jacobi --alpha -3 --n 2") == 2);
  CHECK(run_cli("transform --ensemble nosuch --n 2") == 2);
}

TEST_CASE("config parsing fills defaults and nests ensembles") {
  const JobConfig job = parse_config("{\"command\": \"density\"}");
  CHECK(job.command == "density");
  CHECK(job.n == 2);
  CHECK(job.grid == 256);
  CHECK(job.seed == std::uint64_t{12345});
  CHECK(job.samples == 10000);
  CHECK(job.bins == 64);
  CHECK(job.ensemble.kind == EnsembleKind::Haar);

  const EnsembleSpec spec = ensemble_from_json(
      "{\"kind\": \"product\", \"factors\": ["
      "{\"kind\": \"jacobi\", \"alpha\": 1.5, \"gamma\": 0.3},"
      "{\"kind\": \"inverse\", \"inner\": {\"kind\": \"gauss\", \"t\": 0.5}}]}");
  REQUIRE(spec.kind == EnsembleKind::Product);
  REQUIRE(spec.inner.size() == std::size_t{2});
  CHECK(spec.inner[0].kind == EnsembleKind::Jacobi);
  CHECK(spec.inner[0].alpha == 1.5);
  CHECK(spec.inner[0].gamma == 0.3);
  REQUIRE(spec.inner[1].kind == EnsembleKind::Inverse);
  REQUIRE(spec.inner[1].inner.size() == std::size_t{1});
  CHECK(spec.inner[1].inner[0].kind == EnsembleKind::Gauss);
  CHECK(spec.inner[1].inner[0].t == 0.5);

  CHECK_THROWS(ensemble_from_json("{\"kind\": \"nope\"}"));
  CHECK_THROWS(parse_config("not json"));
}

TEST_CASE("run dispatch reports unknown commands without throwing") {
  JobConfig job;
  job.command = "bogus";
  std::ostringstream log;
  CHECK(run(job, log) == 2);
  CHECK(log.str().find("error:") != std::string::npos);
}

}  // TEST_SUITE
