#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "mktcx/ingest.hpp"
#include "synthetic.hpp"

using namespace mktcx;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(MKTCX_CLI_PATH) + " " + args;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_CASE("ctm-gen output is shard-count invariant and reloads") {
  const auto dir = testing::scratch_dir("cli-ctm");
  REQUIRE(run("ctm-gen --states 1 -o " + q(dir / "d1.ctm") + " 2>/dev/null") == 0);
  REQUIRE(run("ctm-gen --states 2 --shards 1 -o " + q(dir / "a.ctm") + " 2>/dev/null") == 0);
  REQUIRE(run("ctm-gen --states 2 --shards 8 --threads 4 -o " + q(dir / "b.ctm") + " 2>/dev/null") == 0);
  CHECK(read_file(dir / "a.ctm") == read_file(dir / "b.ctm"));
  CHECK(read_file(dir / "a.ctm").rfind("# states=2 colors=2 step_bound=6 machines=10000 mode=exhaustive\n", 0) == 0);
  CHECK(run("ctm-gen --states 4 -o " + q(dir / "c.ctm") + " 2>/dev/null") == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("per-measure subcommands") {
  const auto dir = testing::scratch_dir("cli-measures");
  std::mt19937_64 rng(3);
  const auto s = testing::daily_series("w", MarketKind::stock_index,
                                       (testing::gaussian_walk(200, rng) * 0.01).array().exp() * 10);
  std::ofstream(dir / "w.csv") << write_csv(s);
  std::ofstream(dir / "bad.csv") << "2013-01-01,1\n2013-01-02,oops\n";
  REQUIRE(run("ctm-gen --states 2 -o " + q(dir / "d2.ctm") + " 2>/dev/null") == 0);

  const auto w = q(dir / "w.csv");
  CHECK(run("ingest " + w + " -o " + q(dir / "canon.csv")) == 0);
  CHECK(read_file(dir / "canon.csv") == write_csv(s));
  CHECK(run("returns " + w + " --histogram " + q(dir / "h.csv") + " > /dev/null") == 0);
  CHECK(std::filesystem::exists(dir / "h.csv"));
  CHECK(run("entropy " + w + " > /dev/null") == 0);
  CHECK(run("compress " + w + " > /dev/null") == 0);
  CHECK(run("fractal " + w + " --scales 3 > /dev/null") == 0);
  CHECK(run("bdm " + w + " --table " + q(dir / "d2.ctm") + " > /dev/null") == 0);
  CHECK(run("bdm " + w + " --table " + q(dir / "d2.ctm") + " --expect-states 3 2>/dev/null") == 1);
  CHECK(run("correlate " + w + " " + w + " --source-anchors 2010-01-10,2010-05-01 "
            "--dest-anchors 2010-01-10,2010-05-01 > " + q(dir / "corr.txt")) == 0);
  CHECK(read_file(dir / "corr.txt").find("price_correlation = 1\n") != std::string::npos);
  CHECK(run("align " + w + " " + w + " -o " + q(dir / "al.csv") + " 2>/dev/null") == 0);
  CHECK(run("ingest " + q(dir / "bad.csv") + " 2>/dev/null") == 2);
  CHECK(run("no-such-command 2>/dev/null") == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("report exit codes") {
  const auto dir = testing::scratch_dir("cli-report");
  std::mt19937_64 rng(4);
  std::vector<PriceSeries> markets{
      testing::daily_series("a", MarketKind::stock_index,
                            (testing::gaussian_walk(200, rng) * 0.01).array().exp() * 10)};
  const auto cfg = testing::write_fixture(markets, dir, "ctm_states = 2\n");
  CHECK(run("report -c " + q(cfg) + " 2>/dev/null") == 0);
  CHECK(std::filesystem::exists(dir / "report" / "report.csv"));
  CHECK(run("report -c " + q(cfg) + " -o " + q(dir / "elsewhere") + " 2>/dev/null") == 0);
  CHECK(read_file(dir / "report" / "report.csv") == read_file(dir / "elsewhere" / "report.csv"));
  CHECK(run("report -c " + q(cfg) + " --set window_start=2030-01-01 2>/dev/null") == 1);
  CHECK(run("report -c " + q(cfg) + " --set block_max=zero 2>/dev/null") == 2);
  CHECK(run("report -c " + q(cfg) + " --set bdm_offset=9 2>/dev/null") == 2);
  std::filesystem::remove_all(dir);
}
