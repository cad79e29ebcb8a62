// Command-line front end: build, run, verify, bench, gen, areas.
// Exit codes: 0 success, 1 verification divergence, 2 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "radii/areas.hpp"
#include "radii/dynamic.hpp"
#include "radii/events.hpp"
#include "radii/gen.hpp"
#include "radii/metric.hpp"
#include "radii/oracle.hpp"
#include "radii/preprocess.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDivergence = 1;
constexpr int kExitInputError = 2;

void print_usage(std::ostream& out) {
  out << "usage: radii <command> [flags]\n"
      << "\n"
      << "commands:\n"
      << "  build  --instance <file>                      dump the pair tree and stats\n"
      << "  run    --instance <file> --events <file> [--trace]\n"
      << "                                                replay events, answer queries\n"
      << "  verify --instance <file> --events <file>      replay with oracle cross-checks\n"
      << "  bench  --instance <file> --events <file> [--out <file>]\n"
      << "                                                timed replay with touch counts\n"
      << "  gen    --spec <file> --out-instance <file> --out-events <file>\n"
      << "                                                generate a workload (RADII_SEED overrides seed)\n"
      << "  areas  --instance <file> --universe <file>    enumerate areas over a finite universe\n";
}

struct Args {
  std::string command;
  std::map<std::string, std::string> values;
  bool trace = false;
};

Args parse_args(int argc, char** argv) {
  Args args;
  if (argc < 2) radii::fail(radii::ErrorCode::UsageError, "missing command");
  args.command = argv[1];
  for (int i = 2; i < argc; ++i) {
    const std::string flag = argv[i];
    if (flag == "--trace") {
      args.trace = true;
      continue;
    }
    if (flag.rfind("--", 0) != 0) radii::fail(radii::ErrorCode::UsageError, "unexpected argument '" + flag + "'");
    if (i + 1 >= argc) radii::fail(radii::ErrorCode::UsageError, "flag " + flag + " needs a value");
    args.values[flag.substr(2)] = argv[++i];
  }
  return args;
}

std::string required(const Args& args, const std::string& key) {
  auto it = args.values.find(key);
  if (it == args.values.end()) {
    radii::fail(radii::ErrorCode::UsageError, "missing --" + key + " for '" + args.command + "'");
  }
  return it->second;
}

struct Built {
  radii::Instance instance;
  radii::LevelSets levels;
  radii::PairTree tree;
};

Built build_from_file(const std::string& path) {
  Built b;
  b.instance = radii::load_instance_file(path);
  for (radii::FacilityId id : b.instance.oversized_facilities) {
    std::cerr << "warning: facility " << id << " has cost above 5^rho_max and can never be opened\n";
  }
  const auto range = radii::compute_logradius_range(b.instance);
  b.levels = radii::build_level_sets(b.instance, range);
  b.tree = radii::build_pair_tree(b.instance, b.levels);
  return b;
}

int cmd_build(const Args& args) {
  const Built b = build_from_file(required(args, "instance"));
  radii::dump_pair_tree(b.levels, b.tree, std::cout);
  return kExitOk;
}

int cmd_run(const Args& args) {
  const Built b = build_from_file(required(args, "instance"));
  std::ifstream in(required(args, "events"));
  if (!in) radii::fail(radii::ErrorCode::IoError, "cannot open events file");
  const auto events = radii::parse_events(in, b.instance);
  radii::RunOptions options;
  options.trace = args.trace;
  radii::run_events(b.instance, b.tree, events, std::cout, options);
  return kExitOk;
}

int cmd_verify(const Args& args) {
  const Built b = build_from_file(required(args, "instance"));
  std::ifstream in(required(args, "events"));
  if (!in) radii::fail(radii::ErrorCode::IoError, "cannot open events file");
  const auto events = radii::parse_events(in, b.instance);
  radii::VerifyOptions options;
  if (const char* corrupt = std::getenv("RADII_CORRUPT_NODE")) {
    options.corrupt_node = std::atoi(corrupt);
  }
  const auto result = radii::verify_events(b.instance, b.tree, events, std::cout, options);
  return result.ok ? kExitOk : kExitDivergence;
}

int cmd_bench(const Args& args) {
  const Built b = build_from_file(required(args, "instance"));
  std::ifstream in(required(args, "events"));
  if (!in) radii::fail(radii::ErrorCode::IoError, "cannot open events file");
  const auto events = radii::parse_events(in, b.instance);
  const auto report = radii::bench_events(b.instance, b.tree, events);
  radii::print_bench_report(report, std::cout);
  if (auto it = args.values.find("out"); it != args.values.end()) {
    std::ostringstream ss;
    radii::print_bench_report(report, ss);
    radii::write_text_file(it->second, ss.str());
  }
  return report.bounds_ok ? kExitOk : kExitDivergence;
}

int cmd_gen(const Args& args) {
  std::ifstream in(required(args, "spec"));
  if (!in) radii::fail(radii::ErrorCode::IoError, "cannot open spec file");
  radii::WorkloadSpec spec = radii::parse_workload_spec(in);
  if (const char* seed_env = std::getenv("RADII_SEED")) {
    spec.seed = std::strtoull(seed_env, nullptr, 10);
  }
  const std::string instance_text = radii::gen_instance_text(spec);
  radii::write_text_file(required(args, "out-instance"), instance_text);
  std::istringstream iss(instance_text);
  const radii::Instance inst = radii::load_instance(iss);
  radii::write_text_file(required(args, "out-events"), radii::gen_events_text(spec, inst));
  return kExitOk;
}

int cmd_areas(const Args& args) {
  const Built b = build_from_file(required(args, "instance"));
  std::ifstream in(required(args, "universe"));
  if (!in) radii::fail(radii::ErrorCode::IoError, "cannot open universe file");

  std::vector<std::string> ids;
  std::vector<radii::PointCoord> points;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = radii::tokenize_line(line);
    if (tokens.empty()) continue;
    if (tokens[0] != "point" || tokens.size() < 3) {
      radii::fail(radii::ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'point <id> <coords...>'");
    }
    ids.push_back(tokens[1]);
    points.push_back(radii::parse_point(b.instance, tokens, 2, line_no));
  }

  const auto areas = radii::enumerate_areas(b.instance, b.tree, points);
  for (int r = b.tree.range.rho_max; r >= b.tree.range.rho_min; --r) {
    const auto [first, last] = b.tree.level_span[static_cast<std::size_t>(b.tree.level_of(r))];
    for (int i = first; i < last; ++i) {
      const auto& node = b.tree.node(i);
      std::cout << "area " << node.facility << ' ' << node.logradius << ':';
      for (int member : areas[static_cast<std::size_t>(i)].members) {
        std::cout << ' ' << ids[static_cast<std::size_t>(member)];
      }
      std::cout << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    const Args args = parse_args(argc, argv);
    if (args.command == "build") return cmd_build(args);
    if (args.command == "run") return cmd_run(args);
    if (args.command == "verify") return cmd_verify(args);
    if (args.command == "bench") return cmd_bench(args);
    if (args.command == "gen") return cmd_gen(args);
    if (args.command == "areas") return cmd_areas(args);
    if (args.command == "--help" || args.command == "help") {
      print_usage(std::cout);
      return kExitOk;
    }
    radii::fail(radii::ErrorCode::UsageError, "unknown command '" + args.command + "'");
  } catch (const radii::Error& err) {
    std::cerr << err.what() << '\n';
    if (err.code() == radii::ErrorCode::UsageError) print_usage(std::cerr);
    return kExitInputError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInputError;
  }
}
