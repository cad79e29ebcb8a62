#pragma once

// Deterministic instance and event-stream generators. One seed, one byte
// stream: the PRNG is a fixed xorshift64* so outputs reproduce across
// platforms and implementations.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "radii/metric.hpp"

namespace radii {

struct Xorshift64Star {
  std::uint64_t state = 0x9E3779B97F4A7C15ull;

  explicit Xorshift64Star(std::uint64_t seed) {
    state = seed ? seed : 0x9E3779B97F4A7C15ull;
  }

  std::uint64_t next() {
    state ^= state >> 12;
    state ^= state << 25;
    state ^= state >> 27;
    return state * 0x2545F4914F6CDD1Dull;
  }

  // Uniform in [0, n); n > 0.
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

  // Uniform in [lo, hi] inclusive.
  std::int64_t next_range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

struct WorkloadSpec {
  std::uint64_t seed = 1;
  std::string metric = "euclidean2";  // euclidean1 | euclidean2 | grid
  std::string spatial = "uniform";    // uniform | blobs (euclidean only)
  int facilities = 10;
  std::int64_t cost_min = 1;
  std::int64_t cost_max = 10;
  int events = 100;
  int w_insert = 6;
  int w_delete = 3;
  int w_query = 1;  // cost?
  int w_solution = 0;
  std::int64_t box = 100;
  int blobs = 3;
  int grid_rows = 4;
  int grid_cols = 4;
  std::optional<int> kappa;  // defaults per metric when absent
};

WorkloadSpec parse_workload_spec(std::istream& in);
WorkloadSpec parse_workload_spec_text(const std::string& text);

// Instance file text. Same spec, same bytes.
std::string gen_instance_text(const WorkloadSpec& spec);

// Event file text for an instance produced from the same spec. Deletes only
// reference live clients, points stay within the facility bounding box (so
// every replay is in-diameter), and queries interleave at the configured
// rate.
std::string gen_events_text(const WorkloadSpec& spec, const Instance& inst);

}  // namespace radii
