#pragma once

// Event streams: `insert <id> <coords...>`, `delete <id>`, `cost?`,
// `solution?`. One replay engine serves the run, verify, and bench commands.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "radii/dynamic.hpp"
#include "radii/metric.hpp"
#include "radii/preprocess.hpp"

namespace radii {

struct Event {
  enum class Kind { Insert, Delete, CostQuery, SolutionQuery };

  Kind kind = Kind::CostQuery;
  std::string client_id;
  PointCoord point;  // inserts only
  int line = 0;
};

std::vector<Event> parse_events(std::istream& in, const Instance& inst);
std::vector<Event> parse_events_text(const std::string& text, const Instance& inst);

struct RunOptions {
  bool trace = false;
};

// Applies events in order, writing one line per query (`cost <int>` or
// `solution <cost> <k> (<facility>,<logradius>)...`); with trace on, each
// update additionally emits `touched <n>`.
void run_events(const Instance& inst, const PairTree& tree, const std::vector<Event>& events,
                std::ostream& out, const RunOptions& options);

struct VerifyOptions {
  // Negative-control hook: skew x at this node before replay (-1 = off).
  int corrupt_node = -1;
  std::int64_t corrupt_delta = 1;
  double ratio_bound_factor = 80.0;
};

struct VerifyResult {
  bool ok = true;
  std::size_t events_checked = 0;
  std::string divergence;  // empty when ok
};

// Replays events, comparing the dynamic structure against the offline
// recurrence after every event and against the exhaustive oracles at each
// cost?/solution? query when the instance is within their guards.
VerifyResult verify_events(const Instance& inst, const PairTree& tree,
                           const std::vector<Event>& events, std::ostream& out,
                           const VerifyOptions& options);

struct OpStats {
  std::int64_t count = 0;
  double visits_mean = 0;
  std::int64_t visits_max = 0;
  double path_mean = 0;
  std::int64_t path_max = 0;
  double touched_mean = 0;
  std::int64_t touched_max = 0;
  std::int64_t ns_p50 = 0;
  std::int64_t ns_p90 = 0;
  std::int64_t ns_p99 = 0;
};

struct BenchReport {
  std::size_t pairs = 0;
  int height = 0;
  int max_degree = 0;
  std::size_t events = 0;
  OpStats insert_stats;
  OpStats delete_stats;
  OpStats cost_stats;     // touched is always 1
  OpStats solution_stats;
  bool bounds_ok = true;  // cost touches 1 and every update path <= height
  std::string violation;
};

BenchReport bench_events(const Instance& inst, const PairTree& tree,
                         const std::vector<Event>& events);
void print_bench_report(const BenchReport& report, std::ostream& out);

}  // namespace radii
