#include "radii/metric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace radii {

namespace {

constexpr int kMaxPow5 = 26;

// rho_max above this would push 7*5^r past 63 bits.
constexpr int kMaxLogradius = 25;

std::int64_t checked_pow5(int r) {
  static const auto table = [] {
    std::array<std::int64_t, kMaxPow5 + 1> t{};
    t[0] = 1;
    for (int i = 1; i <= kMaxPow5; ++i) t[i] = t[i - 1] * 5;
    return t;
  }();
  if (r < 0 || r > kMaxPow5) fail(ErrorCode::InstanceTooLarge, "5^" + std::to_string(r) + " out of range");
  return table[static_cast<std::size_t>(r)];
}

double euclidean_distance(const PointCoord& a, const PointCoord& b) {
  double sum = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const double d = a.coords[i] - b.coords[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

std::int64_t pow5(int r) { return checked_pow5(r); }

int ceil_log5(double x) {
  int r = 0;
  while (static_cast<double>(checked_pow5(r)) < x) ++r;
  return r;
}

int Instance::vertex_index(std::int64_t id) const {
  auto it = std::lower_bound(vertex_ids.begin(), vertex_ids.end(), id);
  if (it == vertex_ids.end() || *it != id) return -1;
  return static_cast<int>(it - vertex_ids.begin());
}

double Instance::distance(const PointCoord& a, const PointCoord& b) const {
  switch (kind) {
    case MetricKind::Euclidean: {
      if (a.coords.size() != static_cast<std::size_t>(dim) ||
          b.coords.size() != static_cast<std::size_t>(dim)) {
        fail(ErrorCode::InvalidPoint, "euclidean point of wrong dimension");
      }
      return euclidean_distance(a, b);
    }
    case MetricKind::Graph: {
      const int ia = vertex_index(a.ref);
      const int ib = vertex_index(b.ref);
      if (ia < 0) fail(ErrorCode::InvalidPoint, "unknown vertex " + std::to_string(a.ref));
      if (ib < 0) fail(ErrorCode::InvalidPoint, "unknown vertex " + std::to_string(b.ref));
      return dist_table[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ib)];
    }
    case MetricKind::Matrix: {
      const auto n = static_cast<std::int64_t>(dist_table.size());
      if (a.ref < 0 || a.ref >= n) fail(ErrorCode::InvalidPoint, "matrix index " + std::to_string(a.ref));
      if (b.ref < 0 || b.ref >= n) fail(ErrorCode::InvalidPoint, "matrix index " + std::to_string(b.ref));
      return dist_table[static_cast<std::size_t>(a.ref)][static_cast<std::size_t>(b.ref)];
    }
  }
  fail(ErrorCode::InvalidPoint, "bad metric kind");
}

std::vector<std::string> tokenize_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == '#') break;
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::int64_t parse_int64(const std::string& tok, int line_no) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected integer, got '" + tok + "'");
  }
  return value;
}

double parse_double(const std::string& tok, int line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected number, got '" + tok + "'");
  }
}

PointCoord parse_point(const Instance& inst, const std::vector<std::string>& tokens,
                       std::size_t first, int line_no) {
  switch (inst.kind) {
    case MetricKind::Euclidean: {
      if (tokens.size() - first != static_cast<std::size_t>(inst.dim)) {
        fail(ErrorCode::InvalidPoint,
             "line " + std::to_string(line_no) + ": expected " + std::to_string(inst.dim) + " coordinates");
      }
      std::vector<double> coords;
      coords.reserve(static_cast<std::size_t>(inst.dim));
      for (std::size_t i = first; i < tokens.size(); ++i) coords.push_back(parse_double(tokens[i], line_no));
      return PointCoord::euclidean(std::move(coords));
    }
    case MetricKind::Graph: {
      if (tokens.size() - first != 1) fail(ErrorCode::InvalidPoint, "line " + std::to_string(line_no) + ": expected one vertex id");
      const std::int64_t id = parse_int64(tokens[first], line_no);
      if (inst.vertex_index(id) < 0) fail(ErrorCode::InvalidPoint, "line " + std::to_string(line_no) + ": unknown vertex " + std::to_string(id));
      return PointCoord::at(id);
    }
    case MetricKind::Matrix: {
      if (tokens.size() - first != 1) fail(ErrorCode::InvalidPoint, "line " + std::to_string(line_no) + ": expected one point index");
      const std::int64_t idx = parse_int64(tokens[first], line_no);
      if (idx < 0 || idx >= static_cast<std::int64_t>(inst.point_count())) {
        fail(ErrorCode::InvalidPoint, "line " + std::to_string(line_no) + ": point index " + std::to_string(idx) + " out of range");
      }
      return PointCoord::at(idx);
    }
  }
  fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad metric kind");
}

namespace {

struct RawEdge {
  std::int64_t a, b;
  double w;
};

void compute_graph_apsp(Instance& inst, const std::vector<RawEdge>& edges) {
  const std::size_t n = inst.vertex_ids.size();
  const double inf = std::numeric_limits<double>::infinity();
  inst.dist_table.assign(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) inst.dist_table[i][i] = 0;
  for (const auto& e : edges) {
    const int ia = inst.vertex_index(e.a);
    const int ib = inst.vertex_index(e.b);
    auto& dab = inst.dist_table[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ib)];
    auto& dba = inst.dist_table[static_cast<std::size_t>(ib)][static_cast<std::size_t>(ia)];
    dab = std::min(dab, e.w);
    dba = std::min(dba, e.w);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = inst.dist_table[i][k];
      if (dik == inf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + inst.dist_table[k][j];
        if (via < inst.dist_table[i][j]) inst.dist_table[i][j] = via;
      }
    }
}

void validate_finite_metric(const Instance& inst) {
  const std::size_t n = inst.point_count();
  for (std::size_t i = 0; i < n; ++i) {
    if (inst.dist_table[i][i] != 0) fail(ErrorCode::MetricViolation, "d(p,p) != 0 at point " + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij = inst.dist_table[i][j];
      if (!(dij == inst.dist_table[j][i])) fail(ErrorCode::MetricViolation, "asymmetric distance between " + std::to_string(i) + " and " + std::to_string(j));
      if (std::isinf(dij)) fail(ErrorCode::MetricViolation, "disconnected points " + std::to_string(i) + " and " + std::to_string(j));
      if (dij < 0) fail(ErrorCode::MetricViolation, "negative distance");
      if (dij == 0) fail(ErrorCode::MetricViolation, "distinct points " + std::to_string(i) + " and " + std::to_string(j) + " at distance 0");
    }
  }
  // Graph distances are shortest paths, so the triangle inequality holds by
  // construction; explicit matrices need the full scan.
  if (inst.kind == MetricKind::Matrix) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (inst.dist_table[i][j] > inst.dist_table[i][k] + inst.dist_table[k][j]) {
            fail(ErrorCode::MetricViolation, "triangle inequality fails on (" + std::to_string(i) + "," +
                                                 std::to_string(j) + "," + std::to_string(k) + ")");
          }
  }
}

void validate_instance(Instance& inst) {
  if (inst.facilities.empty()) fail(ErrorCode::ParseError, "at least one facility required");
  std::sort(inst.facilities.begin(), inst.facilities.end(),
            [](const Facility& a, const Facility& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < inst.facilities.size(); ++i) {
    if (inst.facilities[i].id == inst.facilities[i - 1].id) {
      fail(ErrorCode::ParseError, "duplicate facility id " + std::to_string(inst.facilities[i].id));
    }
  }
  inst.f_min = inst.facilities.front().cost;
  for (const auto& f : inst.facilities) inst.f_min = std::min(inst.f_min, f.cost);

  if (inst.kind != MetricKind::Euclidean) validate_finite_metric(inst);

  // Pairwise facility distances must respect the declared bound. For finite
  // universes every future client is a known point, so check those too.
  const double w = inst.diameter_bound;
  for (std::size_t i = 0; i < inst.facilities.size(); ++i) {
    for (std::size_t j = i + 1; j < inst.facilities.size(); ++j) {
      const double d = inst.distance(inst.facilities[i].point, inst.facilities[j].point);
      if (d > w) {
        fail(ErrorCode::DiameterViolation,
             "facilities " + std::to_string(inst.facilities[i].id) + " and " +
                 std::to_string(inst.facilities[j].id) + " at distance exceeding W");
      }
    }
  }
  if (inst.kind != MetricKind::Euclidean) {
    for (const auto& f : inst.facilities) {
      for (std::size_t p = 0; p < inst.point_count(); ++p) {
        const PointCoord q = PointCoord::at(inst.kind == MetricKind::Graph
                                                ? inst.vertex_ids[p]
                                                : static_cast<std::int64_t>(p));
        if (inst.distance(f.point, q) > w) {
          fail(ErrorCode::DiameterViolation,
               "point " + std::to_string(q.ref) + " beyond W from facility " + std::to_string(f.id));
        }
      }
    }
  }

  // Overflow guard: reject W (or f_min) so large that 7*5^rho_max leaves 63 bits.
  int rho_min = 0;
  while (static_cast<double>(checked_pow5(rho_min)) < static_cast<double>(inst.f_min)) {
    ++rho_min;
    if (rho_min > kMaxLogradius) fail(ErrorCode::InstanceTooLarge, "f_min too large for exact cost arithmetic");
  }
  int rho_max = rho_min;
  while (static_cast<double>(checked_pow5(rho_max)) < w) {
    ++rho_max;
    if (rho_max > kMaxLogradius) fail(ErrorCode::InstanceTooLarge, "W too large for exact cost arithmetic");
  }
  const std::int64_t top = checked_pow5(rho_max);
  for (const auto& f : inst.facilities) {
    if (f.cost > top) inst.oversized_facilities.push_back(f.id);
  }
}

}  // namespace

Instance load_instance(std::istream& in) {
  Instance inst;
  bool have_header = false;
  std::vector<RawEdge> edges;
  std::set<std::int64_t> vertices;
  std::map<std::pair<std::int64_t, std::int64_t>, double> matrix_entries;
  std::int64_t matrix_max_index = -1;
  struct RawFacility {
    std::int64_t id;
    std::vector<std::string> point_tokens;
    std::int64_t cost;
    int line;
  };
  std::vector<RawFacility> raw_facilities;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = tokenize_line(line);
    if (tok.empty()) continue;
    const std::string& head = tok[0];

    if (head == "metric") {
      if (have_header) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": duplicate metric header");
      std::size_t i = 1;
      if (i >= tok.size()) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": missing metric kind");
      if (tok[i] == "euclidean") {
        inst.kind = MetricKind::Euclidean;
        ++i;
        if (i >= tok.size()) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": missing euclidean dimension");
        const std::int64_t d = parse_int64(tok[i++], line_no);
        if (d < 1 || d > 16) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad dimension");
        inst.dim = static_cast<int>(d);
      } else if (tok[i] == "graph") {
        inst.kind = MetricKind::Graph;
        ++i;
      } else if (tok[i] == "matrix") {
        inst.kind = MetricKind::Matrix;
        ++i;
      } else {
        fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown metric kind '" + tok[i] + "'");
      }
      if (i + 1 >= tok.size() || tok[i] != "W") fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'W <decimal>'");
      inst.diameter_bound = parse_double(tok[i + 1], line_no);
      if (inst.diameter_bound < 0) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": W must be nonnegative");
      if (i + 2 != tok.size()) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": trailing tokens");
      have_header = true;
      continue;
    }

    if (!have_header) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": metric header must come first");

    if (head == "facility") {
      if (tok.size() < 4) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": malformed facility line");
      if (tok[tok.size() - 2] != "cost") fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'cost <int>'");
      RawFacility rf;
      rf.id = parse_int64(tok[1], line_no);
      rf.point_tokens.assign(tok.begin() + 2, tok.end() - 2);
      rf.cost = parse_int64(tok.back(), line_no);
      if (rf.cost < 1) fail(ErrorCode::InvalidCost, "line " + std::to_string(line_no) + ": facility cost must be >= 1");
      rf.line = line_no;
      raw_facilities.push_back(std::move(rf));
    } else if (head == "vertex") {
      if (inst.kind != MetricKind::Graph) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": vertex line outside graph metric");
      if (tok.size() != 2) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": malformed vertex line");
      vertices.insert(parse_int64(tok[1], line_no));
    } else if (head == "edge") {
      if (inst.kind != MetricKind::Graph) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": edge line outside graph metric");
      if (tok.size() != 4) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": malformed edge line");
      RawEdge e;
      e.a = parse_int64(tok[1], line_no);
      e.b = parse_int64(tok[2], line_no);
      e.w = parse_double(tok[3], line_no);
      if (e.w < 0) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": negative edge weight");
      edges.push_back(e);
    } else if (head == "dist") {
      if (inst.kind != MetricKind::Matrix) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": dist line outside matrix metric");
      if (tok.size() != 4) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": malformed dist line");
      const std::int64_t i = parse_int64(tok[1], line_no);
      const std::int64_t j = parse_int64(tok[2], line_no);
      const double v = parse_double(tok[3], line_no);
      if (i < 0 || j < 0) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": negative point index");
      const auto key = std::minmax(i, j);
      auto [it, inserted] = matrix_entries.emplace(std::make_pair(key.first, key.second), v);
      if (!inserted && it->second != v) fail(ErrorCode::MetricViolation, "line " + std::to_string(line_no) + ": conflicting dist entries");
      matrix_max_index = std::max({matrix_max_index, i, j});
    } else if (head == "kappa") {
      if (tok.size() != 2) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": malformed kappa line");
      const std::int64_t k = parse_int64(tok[1], line_no);
      if (k < 0 || k > 30) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad kappa");
      inst.kappa_hint = static_cast<int>(k);
    } else {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown record '" + head + "'");
    }
  }
  if (!have_header) fail(ErrorCode::ParseError, "missing metric header");

  if (inst.kind == MetricKind::Graph) {
    for (const auto& e : edges) {
      if (!vertices.count(e.a) || !vertices.count(e.b)) fail(ErrorCode::ParseError, "edge references unknown vertex");
    }
    inst.vertex_ids.assign(vertices.begin(), vertices.end());
    compute_graph_apsp(inst, edges);
  } else if (inst.kind == MetricKind::Matrix) {
    if (matrix_max_index < 0) fail(ErrorCode::ParseError, "matrix metric without dist lines");
    const auto n = static_cast<std::size_t>(matrix_max_index + 1);
    inst.dist_table.assign(n, std::vector<double>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        auto it = matrix_entries.find({static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)});
        if (it == matrix_entries.end()) {
          fail(ErrorCode::ParseError, "missing dist entry for points " + std::to_string(i) + " and " + std::to_string(j));
        }
        inst.dist_table[i][j] = inst.dist_table[j][i] = it->second;
      }
    for (const auto& [key, v] : matrix_entries) {
      if (key.first == key.second && v != 0) fail(ErrorCode::MetricViolation, "nonzero self distance");
    }
  }

  for (const auto& rf : raw_facilities) {
    Facility f;
    f.id = rf.id;
    f.cost = rf.cost;
    std::vector<std::string> tokens = rf.point_tokens;
    f.point = parse_point(inst, tokens, 0, rf.line);
    inst.facilities.push_back(std::move(f));
  }

  validate_instance(inst);
  return inst;
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  return load_instance(in);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << content;
}

}  // namespace radii
