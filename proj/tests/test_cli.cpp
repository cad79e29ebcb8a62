// End-to-end checks of the command-line tool: spawns the built binary
// against temp files and inspects stdout plus exit codes.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "radii/metric.hpp"

namespace fs = std::filesystem;

namespace {

const char* kLineInstance =
    "metric euclidean 1 W 30\n"
    "facility 0 0 cost 1\n"
    "facility 30 30 cost 1\n";

struct CliResult {
  int exit_code = -1;
  std::string out;
};

class TempDir {
 public:
  TempDir() {
    dir_ = fs::temp_directory_path() / ("radii_cli_test_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  fs::path path(const std::string& name) const { return dir_ / name; }

 private:
  fs::path dir_;
};

std::string write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p.string();
}

CliResult run_cli(const std::string& args, const fs::path& capture,
                  const std::string& env_prefix = "") {
  const std::string cmd =
      env_prefix + std::string(RADII_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  result.out = radii::read_text_file(capture.string());
  return result;
}

}  // namespace

TEST_CASE("build dumps the tree with stats") {
  TempDir tmp;
  const auto instance = write_file(tmp.path("inst.txt"), kLineInstance);
  const auto result = run_cli("build --instance " + instance, tmp.path("out.txt"));
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("pair 0 3 parent - children 1\n") != std::string::npos);
  CHECK(result.out.find("pairs 6\n") != std::string::npos);
  CHECK(result.out.find("height 4\n") != std::string::npos);
}

TEST_CASE("build reports parse errors with a nonzero exit") {
  TempDir tmp;
  const auto instance = write_file(tmp.path("bad.txt"), "metric euclidean 1 W 30\nfacility x\n");
  const auto result = run_cli("build --instance " + instance, tmp.path("out.txt"));
  CHECK(result.exit_code == 2);
  CHECK(result.out.find("ParseError") != std::string::npos);
}

TEST_CASE("build warns about facilities that can never open") {
  TempDir tmp;
  const auto instance = write_file(tmp.path("inst.txt"),
                                   "metric euclidean 1 W 30\n"
                                   "facility 0 0 cost 1\n"
                                   "facility 9 5 cost 126\n");  // 126 > 5^3
  const auto result = run_cli("build --instance " + instance, tmp.path("out.txt"));
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("warning: facility 9") != std::string::npos);
}

TEST_CASE("run answers queries in order") {
  TempDir tmp;
  const auto instance = write_file(tmp.path("inst.txt"), kLineInstance);
  const auto events = write_file(tmp.path("events.txt"),
                                 "insert a 2\n"
                                 "insert b 29\n"
                                 "cost?\n"
                                 "solution?\n"
                                 "delete a\n"
                                 "cost?\n");
  const auto result = run_cli("run --instance " + instance + " --events " + events, tmp.path("out.txt"));
  CHECK(result.exit_code == 0);
  CHECK(result.out ==
        "cost 16\n"
        "solution 16 2 (0,0) (30,0)\n"
        "cost 8\n");
}

TEST_CASE("run with only a query reports zero cost") {
  TempDir tmp;
  const auto instance = write_file(tmp.path("inst.txt"), kLineInstance);
  const auto events = write_file(tmp.path("events.txt"), "cost?\n");
  const auto result = run_cli("run --instance " + instance + " --events " + events, tmp.path("out.txt"));
  CHECK(result.exit_code == 0);
  CHECK(result.out == "cost 0\n");
}

TEST_CASE("run --trace emits touch counts") {
  TempDir tmp;
  const auto instance = write_file(tmp.path("inst.txt"), kLineInstance);
  const auto events = write_file(tmp.path("events.txt"), "insert a 2\ndelete a\n");
  const auto result =
      run_cli("run --instance " + instance + " --events " + events + " --trace", tmp.path("out.txt"));
  CHECK(result.exit_code == 0);
  std::istringstream lines(result.out);
  std::string line;
  int touched_lines = 0;
  while (std::getline(lines, line)) {
    CHECK(line.rfind("touched ", 0) == 0);
    ++touched_lines;
  }
  CHECK(touched_lines == 2);
}

TEST_CASE("run reports replay errors with the event index") {
  TempDir tmp;
  const auto instance = write_file(tmp.path("inst.txt"), kLineInstance);
  const auto events = write_file(tmp.path("events.txt"), "insert a 2\ndelete zz\n");
  const auto result = run_cli("run --instance " + instance + " --events " + events, tmp.path("out.txt"));
  CHECK(result.exit_code == 2);
  CHECK(result.out.find("event 2") != std::string::npos);
  CHECK(result.out.find("NoSuchClient") != std::string::npos);
}

TEST_CASE("verify passes on a clean replay and reports ratios") {
  TempDir tmp;
  const auto instance = write_file(tmp.path("inst.txt"),
                                   "metric euclidean 1 W 30\n"
                                   "kappa 1\n"
                                   "facility 0 0 cost 1\n"
                                   "facility 30 30 cost 1\n");
  const auto events = write_file(tmp.path("events.txt"),
                                 "insert a 2\n"
                                 "insert b 29\n"
                                 "cost?\n"
                                 "delete a\n"
                                 "cost?\n");
  const auto result = run_cli("verify --instance " + instance + " --events " + events, tmp.path("out.txt"));
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("ratio 3.2 bound 320\n") != std::string::npos);
  CHECK(result.out.find("verify ok 5 events\n") != std::string::npos);
}

TEST_CASE("verify flags corrupted annotations at the first query") {
  TempDir tmp;
  const auto instance = write_file(tmp.path("inst.txt"), kLineInstance);
  // node 5 is the root of the six-pair line tree; the corrupted x survives
  // until a path update rewrites it, so the first query sees it
  const auto events = write_file(tmp.path("events.txt"), "cost?\ninsert a 2\ncost?\n");
  const auto result = run_cli("verify --instance " + instance + " --events " + events,
                              tmp.path("out.txt"), "RADII_CORRUPT_NODE=5 ");
  CHECK(result.exit_code == 1);
  CHECK(result.out.find("divergence at event 1") != std::string::npos);
}

TEST_CASE("gen produces loadable files and honors RADII_SEED") {
  TempDir tmp;
  const auto spec = write_file(tmp.path("spec.txt"),
                               "seed=1\nmetric=euclidean2\nfacilities=6\nevents=40\n");
  const std::string gen_args = "gen --spec " + spec + " --out-instance " + tmp.path("i1.txt").string() +
                               " --out-events " + tmp.path("e1.txt").string();
  CHECK(run_cli(gen_args, tmp.path("out.txt")).exit_code == 0);

  const auto verify = run_cli("verify --instance " + tmp.path("i1.txt").string() + " --events " +
                                  tmp.path("e1.txt").string(),
                              tmp.path("out.txt"));
  CHECK(verify.exit_code == 0);
  CHECK(verify.out.find("verify ok 40 events") != std::string::npos);

  const std::string gen2 = "gen --spec " + spec + " --out-instance " + tmp.path("i2.txt").string() +
                           " --out-events " + tmp.path("e2.txt").string();
  CHECK(run_cli(gen2, tmp.path("out.txt"), "RADII_SEED=2 ").exit_code == 0);
  CHECK(radii::read_text_file(tmp.path("i1.txt").string()) !=
        radii::read_text_file(tmp.path("i2.txt").string()));
}

TEST_CASE("areas enumerates a finite universe") {
  TempDir tmp;
  const auto instance = write_file(tmp.path("inst.txt"), kLineInstance);
  const auto universe = write_file(tmp.path("universe.txt"), "point u 2\npoint v 29\n");
  const auto result =
      run_cli("areas --instance " + instance + " --universe " + universe, tmp.path("out.txt"));
  CHECK(result.exit_code == 0);
  CHECK(result.out ==
        "area 0 3: u v\n"
        "area 0 2: u v\n"
        "area 0 1: u\n"
        "area 30 1: v\n"
        "area 0 0: u\n"
        "area 30 0: v\n");
}

TEST_CASE("bench prints a report with exact touch counts") {
  TempDir tmp;
  const auto instance = write_file(tmp.path("inst.txt"), kLineInstance);
  const auto events = write_file(tmp.path("events.txt"),
                                 "insert a 2\ninsert b 29\ncost?\nsolution?\ndelete a\n");
  const auto result = run_cli("bench --instance " + instance + " --events " + events, tmp.path("out.txt"));
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("pairs 6\n") != std::string::npos);
  CHECK(result.out.find("insert count 2") != std::string::npos);
  CHECK(result.out.find("delete count 1") != std::string::npos);
  CHECK(result.out.find("cost count 1 touched 1") != std::string::npos);
  CHECK(result.out.find("path_max 4") != std::string::npos);

  const auto empty_events = write_file(tmp.path("none.txt"), "");
  const auto empty = run_cli("bench --instance " + instance + " --events " + empty_events, tmp.path("out.txt"));
  CHECK(empty.exit_code == 0);
  CHECK(empty.out.find("events 0\n") != std::string::npos);

  // --out writes the same report to a file
  const auto with_out = run_cli("bench --instance " + instance + " --events " + events + " --out " +
                                    tmp.path("report.txt").string(),
                                tmp.path("out.txt"));
  CHECK(with_out.exit_code == 0);
  const std::string report = radii::read_text_file(tmp.path("report.txt").string());
  CHECK(report.find("pairs 6\n") != std::string::npos);
  CHECK(report.find("cost count 1 touched 1") != std::string::npos);
}

TEST_CASE("byte-identical outputs across consecutive executions") {
  TempDir tmp;
  const auto spec = write_file(tmp.path("spec.txt"),
                               "seed=11\nmetric=euclidean2\nfacilities=8\nevents=60\nw_solution=1\n");
  const std::string gen_args = "gen --spec " + spec + " --out-instance " + tmp.path("inst.txt").string() +
                               " --out-events " + tmp.path("events.txt").string();
  REQUIRE(run_cli(gen_args, tmp.path("out.txt")).exit_code == 0);

  const std::string build_args = "build --instance " + tmp.path("inst.txt").string();
  const auto build1 = run_cli(build_args, tmp.path("b1.txt"));
  const auto build2 = run_cli(build_args, tmp.path("b2.txt"));
  CHECK(build1.exit_code == 0);
  CHECK(build1.out == build2.out);

  const std::string run_args = "run --instance " + tmp.path("inst.txt").string() + " --events " +
                               tmp.path("events.txt").string() + " --trace";
  const auto run1 = run_cli(run_args, tmp.path("r1.txt"));
  const auto run2 = run_cli(run_args, tmp.path("r2.txt"));
  CHECK(run1.exit_code == 0);
  CHECK(run1.out == run2.out);
}

TEST_CASE("unknown command and missing flags exit with usage errors") {
  TempDir tmp;
  CHECK(run_cli("frobnicate", tmp.path("out.txt")).exit_code == 2);
  CHECK(run_cli("build", tmp.path("out.txt")).exit_code == 2);
}
