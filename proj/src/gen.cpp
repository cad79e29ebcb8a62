#include "radii/gen.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <set>
#include <sstream>
#include <vector>

namespace radii {

namespace {

int default_kappa(const std::string& metric) {
  if (metric == "euclidean1") return 1;  // an interval splits into two halves
  if (metric == "euclidean2") return 3;  // seven half-radius disks cover a disk
  return 4;                              // grid: L1 plane plus lattice snapping
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidSpec, what);
}

}  // namespace

WorkloadSpec parse_workload_spec(std::istream& in) {
  WorkloadSpec spec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize_line(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 1) fail(ErrorCode::InvalidSpec, "line " + std::to_string(line_no) + ": expected key=value");
    const auto eq = tokens[0].find('=');
    if (eq == std::string::npos) fail(ErrorCode::InvalidSpec, "line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = tokens[0].substr(0, eq);
    const std::string value = tokens[0].substr(eq + 1);

    if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(parse_int64(value, line_no));
    } else if (key == "metric") {
      spec.metric = value;
    } else if (key == "spatial") {
      spec.spatial = value;
    } else if (key == "facilities") {
      spec.facilities = static_cast<int>(parse_int64(value, line_no));
    } else if (key == "cost_min") {
      spec.cost_min = parse_int64(value, line_no);
    } else if (key == "cost_max") {
      spec.cost_max = parse_int64(value, line_no);
    } else if (key == "events") {
      spec.events = static_cast<int>(parse_int64(value, line_no));
    } else if (key == "w_insert") {
      spec.w_insert = static_cast<int>(parse_int64(value, line_no));
    } else if (key == "w_delete") {
      spec.w_delete = static_cast<int>(parse_int64(value, line_no));
    } else if (key == "w_query") {
      spec.w_query = static_cast<int>(parse_int64(value, line_no));
    } else if (key == "w_solution") {
      spec.w_solution = static_cast<int>(parse_int64(value, line_no));
    } else if (key == "box") {
      spec.box = parse_int64(value, line_no);
    } else if (key == "blobs") {
      spec.blobs = static_cast<int>(parse_int64(value, line_no));
    } else if (key == "grid_rows") {
      spec.grid_rows = static_cast<int>(parse_int64(value, line_no));
    } else if (key == "grid_cols") {
      spec.grid_cols = static_cast<int>(parse_int64(value, line_no));
    } else if (key == "kappa") {
      spec.kappa = static_cast<int>(parse_int64(value, line_no));
    } else {
      fail(ErrorCode::InvalidSpec, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }

  require(spec.facilities >= 1, "facilities must be >= 1");
  require(spec.cost_min >= 1, "cost_min must be >= 1");
  require(spec.cost_max >= spec.cost_min, "cost_max must be >= cost_min");
  require(spec.events >= 0, "events must be >= 0");
  require(spec.w_insert >= 1, "w_insert must be >= 1");
  require(spec.w_delete >= 0 && spec.w_query >= 0 && spec.w_solution >= 0, "weights must be >= 0");
  require(spec.box >= 1, "box must be >= 1");
  require(spec.blobs >= 1, "blobs must be >= 1");
  require(spec.metric == "euclidean1" || spec.metric == "euclidean2" || spec.metric == "grid",
          "metric must be euclidean1, euclidean2, or grid");
  require(spec.spatial == "uniform" || spec.spatial == "blobs", "spatial must be uniform or blobs");
  if (spec.metric == "grid") {
    require(spec.grid_rows >= 1 && spec.grid_cols >= 1, "grid dimensions must be >= 1");
    require(spec.facilities <= spec.grid_rows * spec.grid_cols, "more facilities than grid vertices");
  }
  return spec;
}

WorkloadSpec parse_workload_spec_text(const std::string& text) {
  std::istringstream in(text);
  return parse_workload_spec(in);
}

namespace {

std::vector<std::vector<std::int64_t>> euclidean_points(const WorkloadSpec& spec, Xorshift64Star& rng,
                                                        int count, int dim) {
  std::vector<std::vector<std::int64_t>> pts;
  pts.reserve(static_cast<std::size_t>(count));
  if (spec.spatial == "blobs") {
    std::vector<std::vector<std::int64_t>> centers;
    for (int b = 0; b < spec.blobs; ++b) {
      std::vector<std::int64_t> c(static_cast<std::size_t>(dim));
      for (auto& v : c) v = rng.next_range(0, spec.box);
      centers.push_back(std::move(c));
    }
    const std::int64_t spread = std::max<std::int64_t>(1, spec.box / 10);
    for (int i = 0; i < count; ++i) {
      const auto& c = centers[rng.next_below(centers.size())];
      std::vector<std::int64_t> p(static_cast<std::size_t>(dim));
      for (int d = 0; d < dim; ++d) {
        p[static_cast<std::size_t>(d)] =
            std::clamp<std::int64_t>(c[static_cast<std::size_t>(d)] + rng.next_range(-spread, spread), 0, spec.box);
      }
      pts.push_back(std::move(p));
    }
  } else {
    for (int i = 0; i < count; ++i) {
      std::vector<std::int64_t> p(static_cast<std::size_t>(dim));
      for (auto& v : p) v = rng.next_range(0, spec.box);
      pts.push_back(std::move(p));
    }
  }
  return pts;
}

}  // namespace

std::string gen_instance_text(const WorkloadSpec& spec) {
  Xorshift64Star rng(spec.seed);
  std::ostringstream out;
  out << "# generated instance, seed " << spec.seed << "\n";

  const int kappa = spec.kappa.value_or(default_kappa(spec.metric));

  if (spec.metric == "grid") {
    const int rows = spec.grid_rows;
    const int cols = spec.grid_cols;
    const std::int64_t w = (rows - 1) + (cols - 1);  // exact diameter, unit weights
    out << "metric graph W " << w << "\n";
    out << "kappa " << kappa << "\n";
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) out << "vertex " << (r * cols + c) << "\n";
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const int v = r * cols + c;
        if (c + 1 < cols) out << "edge " << v << ' ' << (v + 1) << " 1\n";
        if (r + 1 < rows) out << "edge " << v << ' ' << (v + cols) << " 1\n";
      }
    }
    std::set<std::int64_t> chosen;
    while (static_cast<int>(chosen.size()) < spec.facilities) {
      chosen.insert(rng.next_range(0, rows * cols - 1));
    }
    std::int64_t id = 0;
    for (std::int64_t v : chosen) {
      out << "facility " << id++ << ' ' << v << " cost " << rng.next_range(spec.cost_min, spec.cost_max)
          << "\n";
    }
    return out.str();
  }

  const int dim = spec.metric == "euclidean1" ? 1 : 2;
  const auto pts = euclidean_points(spec, rng, spec.facilities, dim);

  // W is the exact bounding-box diameter of the facilities; clients are later
  // drawn inside the same box, so every distance stays within W.
  std::vector<std::int64_t> lo(static_cast<std::size_t>(dim), 0);
  std::vector<std::int64_t> hi(static_cast<std::size_t>(dim), 0);
  for (int d = 0; d < dim; ++d) {
    lo[static_cast<std::size_t>(d)] = hi[static_cast<std::size_t>(d)] = pts[0][static_cast<std::size_t>(d)];
  }
  for (const auto& p : pts) {
    for (int d = 0; d < dim; ++d) {
      lo[static_cast<std::size_t>(d)] = std::min(lo[static_cast<std::size_t>(d)], p[static_cast<std::size_t>(d)]);
      hi[static_cast<std::size_t>(d)] = std::max(hi[static_cast<std::size_t>(d)], p[static_cast<std::size_t>(d)]);
    }
  }
  double sq = 0;
  for (int d = 0; d < dim; ++d) {
    const double side = static_cast<double>(hi[static_cast<std::size_t>(d)] - lo[static_cast<std::size_t>(d)]);
    sq += side * side;
  }
  const double w = std::sqrt(sq);

  out << "metric euclidean " << dim << " W " << format_double(w) << "\n";
  out << "kappa " << kappa << "\n";
  for (int i = 0; i < spec.facilities; ++i) {
    out << "facility " << i;
    for (int d = 0; d < dim; ++d) out << ' ' << pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
    out << " cost " << rng.next_range(spec.cost_min, spec.cost_max) << "\n";
  }
  return out.str();
}

std::string gen_events_text(const WorkloadSpec& spec, const Instance& inst) {
  // Distinct stream from the instance generator so the pair (spec, instance)
  // alone determines the bytes.
  Xorshift64Star rng(spec.seed ^ 0xD1B54A32D192ED03ull);
  std::ostringstream out;
  out << "# generated events, seed " << spec.seed << "\n";

  std::vector<std::int64_t> lo, hi;
  if (inst.kind == MetricKind::Euclidean) {
    lo.assign(static_cast<std::size_t>(inst.dim), 0);
    hi.assign(static_cast<std::size_t>(inst.dim), 0);
    for (int d = 0; d < inst.dim; ++d) {
      lo[static_cast<std::size_t>(d)] = hi[static_cast<std::size_t>(d)] =
          static_cast<std::int64_t>(inst.facilities[0].point.coords[static_cast<std::size_t>(d)]);
    }
    for (const auto& f : inst.facilities) {
      for (int d = 0; d < inst.dim; ++d) {
        const auto v = static_cast<std::int64_t>(f.point.coords[static_cast<std::size_t>(d)]);
        lo[static_cast<std::size_t>(d)] = std::min(lo[static_cast<std::size_t>(d)], v);
        hi[static_cast<std::size_t>(d)] = std::max(hi[static_cast<std::size_t>(d)], v);
      }
    }
  }

  const int total_weight = spec.w_insert + spec.w_delete + spec.w_query + spec.w_solution;
  std::vector<std::string> live;
  std::int64_t next_client = 0;

  for (int e = 0; e < spec.events; ++e) {
    std::int64_t pick = rng.next_range(0, total_weight - 1);
    bool do_insert = pick < spec.w_insert;
    pick -= spec.w_insert;
    const bool do_delete = !do_insert && pick < spec.w_delete;
    pick -= spec.w_delete;
    const bool do_query = !do_insert && !do_delete && pick < spec.w_query;

    if (do_delete && live.empty()) do_insert = true;

    if (do_insert) {
      std::string id = "c" + std::to_string(next_client++);
      out << "insert " << id;
      if (inst.kind == MetricKind::Euclidean) {
        for (int d = 0; d < inst.dim; ++d) {
          out << ' ' << rng.next_range(lo[static_cast<std::size_t>(d)], hi[static_cast<std::size_t>(d)]);
        }
      } else {
        out << ' ' << inst.vertex_ids[rng.next_below(inst.vertex_ids.size())];
      }
      out << "\n";
      live.push_back(std::move(id));
    } else if (do_delete) {
      const std::size_t idx = rng.next_below(live.size());
      out << "delete " << live[idx] << "\n";
      live[idx] = live.back();
      live.pop_back();
    } else if (do_query) {
      out << "cost?\n";
    } else {
      out << "solution?\n";
    }
  }
  return out.str();
}

}  // namespace radii
