#pragma once

// Problem instances: facilities with integer opening costs living in a metric
// space (euclidean coordinates, graph shortest paths, or an explicit distance
// matrix), plus the declared diameter bound W. Instances are immutable after
// load and safe for concurrent reads.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "radii/error.hpp"

namespace radii {

using FacilityId = std::int64_t;

enum class MetricKind { Euclidean, Graph, Matrix };

// A point of the universe. Euclidean points carry coordinates; graph points
// name a vertex id; matrix points name a row index.
struct PointCoord {
  std::vector<double> coords;
  std::int64_t ref = 0;

  static PointCoord euclidean(std::vector<double> c) {
    PointCoord p;
    p.coords = std::move(c);
    return p;
  }
  static PointCoord at(std::int64_t id) {
    PointCoord p;
    p.ref = id;
    return p;
  }

  bool operator==(const PointCoord&) const = default;
};

struct Facility {
  FacilityId id = 0;
  PointCoord point;
  std::int64_t cost = 1;
};

struct Instance {
  MetricKind kind = MetricKind::Euclidean;
  int dim = 1;                 // euclidean only
  double diameter_bound = 0;   // W
  std::optional<int> kappa_hint;

  std::vector<Facility> facilities;  // ascending id
  std::int64_t f_min = 1;
  // Facilities whose cost exceeds 5^rho_max: no level admits them, flagged at load.
  std::vector<FacilityId> oversized_facilities;

  std::vector<std::int64_t> vertex_ids;        // graph: ascending vertex ids
  std::vector<std::vector<double>> dist_table;  // graph APSP / explicit matrix

  double distance(const PointCoord& a, const PointCoord& b) const;

  std::size_t point_count() const { return dist_table.size(); }
  int vertex_index(std::int64_t id) const;  // graph: id -> row, -1 if unknown
};

// Exact powers of 5 (r in [0, 26]); the instance guard keeps 7*5^r within
// 63 bits everywhere these are used as costs.
std::int64_t pow5(int r);

// Smallest r >= 0 with 5^r >= x.
int ceil_log5(double x);

Instance load_instance(std::istream& in);
Instance load_instance_file(const std::string& path);

// Parses one point from whitespace tokens starting at `first` (coordinates for
// euclidean, a vertex id / matrix index otherwise). Validates against `inst`.
PointCoord parse_point(const Instance& inst, const std::vector<std::string>& tokens,
                       std::size_t first, int line_no);

// Splits a line into whitespace tokens, dropping anything after '#'.
std::vector<std::string> tokenize_line(const std::string& line);

std::int64_t parse_int64(const std::string& tok, int line_no);
double parse_double(const std::string& tok, int line_no);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace radii
