#include "radii/events.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "radii/oracle.hpp"

namespace radii {

std::vector<Event> parse_events(std::istream& in, const Instance& inst) {
  std::vector<Event> events;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize_line(line);
    if (tokens.empty()) continue;
    Event ev;
    ev.line = line_no;
    const std::string& head = tokens[0];
    if (head == "insert") {
      if (tokens.size() < 3) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": malformed insert");
      ev.kind = Event::Kind::Insert;
      ev.client_id = tokens[1];
      ev.point = parse_point(inst, tokens, 2, line_no);
    } else if (head == "delete") {
      if (tokens.size() != 2) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": malformed delete");
      ev.kind = Event::Kind::Delete;
      ev.client_id = tokens[1];
    } else if (head == "cost?") {
      if (tokens.size() != 1) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": malformed cost query");
      ev.kind = Event::Kind::CostQuery;
    } else if (head == "solution?") {
      if (tokens.size() != 1) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": malformed solution query");
      ev.kind = Event::Kind::SolutionQuery;
    } else {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown event '" + head + "'");
    }
    events.push_back(std::move(ev));
  }
  return events;
}

std::vector<Event> parse_events_text(const std::string& text, const Instance& inst) {
  std::istringstream in(text);
  return parse_events(in, inst);
}

namespace {

void write_solution_line(const Solution& sol, std::ostream& out) {
  out << "solution " << sol.total_cost << ' ' << sol.pairs.size();
  for (const auto& p : sol.pairs) out << " (" << p.facility << ',' << p.logradius << ')';
  out << '\n';
}

[[noreturn]] void fail_at_event(std::size_t index, const Event& ev, const Error& err) {
  fail(err.code(),
       "event " + std::to_string(index) + " (line " + std::to_string(ev.line) + "): " + err.message());
}

std::string format_ratio(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void run_events(const Instance& inst, const PairTree& tree, const std::vector<Event>& events,
                std::ostream& out, const RunOptions& options) {
  DynamicClustering dyn(inst, tree);
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Event& ev = events[i];
    try {
      switch (ev.kind) {
        case Event::Kind::Insert: {
          const UpdateStats stats = dyn.insert(ev.client_id, ev.point);
          if (options.trace) out << "touched " << stats.touched() << '\n';
          break;
        }
        case Event::Kind::Delete: {
          const UpdateStats stats = dyn.erase(ev.client_id);
          if (options.trace) out << "touched " << stats.touched() << '\n';
          break;
        }
        case Event::Kind::CostQuery:
          out << "cost " << dyn.cost() << '\n';
          break;
        case Event::Kind::SolutionQuery:
          write_solution_line(dyn.solution(), out);
          break;
      }
    } catch (const Error& err) {
      fail_at_event(i + 1, ev, err);
    }
  }
}

VerifyResult verify_events(const Instance& inst, const PairTree& tree,
                           const std::vector<Event>& events, std::ostream& out,
                           const VerifyOptions& options) {
  DynamicClustering dyn(inst, tree);
  if (options.corrupt_node >= 0) dyn.inject_annotation_error(options.corrupt_node, options.corrupt_delta);

  std::map<std::string, PointCoord> live;
  VerifyResult result;

  auto diverge = [&](std::size_t index, const std::string& what) {
    result.ok = false;
    result.divergence = "divergence at event " + std::to_string(index) + ": " + what;
    out << result.divergence << '\n';
  };

  for (std::size_t i = 0; i < events.size() && result.ok; ++i) {
    const Event& ev = events[i];
    const std::size_t index = i + 1;
    try {
      switch (ev.kind) {
        case Event::Kind::Insert:
          dyn.insert(ev.client_id, ev.point);
          live.emplace(ev.client_id, ev.point);
          break;
        case Event::Kind::Delete:
          dyn.erase(ev.client_id);
          live.erase(ev.client_id);
          break;
        case Event::Kind::CostQuery: {
          if (tree.size() <= kMaxExhaustivePairs) {
            std::vector<PointCoord> clients;
            for (const auto& [id, p] : live) clients.push_back(p);
            const auto exhaustive = restricted_exhaustive(inst, tree, clients);
            const auto offline = offline_dp(inst, tree, clients);
            if (exhaustive.cost != offline.cost) {
              diverge(index, "offline_dp " + std::to_string(offline.cost) + " != exhaustive " +
                                 std::to_string(exhaustive.cost));
              break;
            }
            if (live.size() <= kMaxExhaustiveClients &&
                inst.facilities.size() <= kMaxExhaustiveFacilities) {
              const auto ratio = ratio_report(inst, tree, clients, options.ratio_bound_factor);
              if (inst.kappa_hint) {
                out << "ratio " << format_ratio(ratio.ratio) << " bound " << format_ratio(ratio.bound)
                    << '\n';
                if (!ratio.within_bound) {
                  diverge(index, "approximation ratio " + format_ratio(ratio.ratio) +
                                     " exceeds bound " + format_ratio(ratio.bound));
                  break;
                }
              } else {
                out << "ratio " << format_ratio(ratio.ratio) << '\n';
              }
            }
          }
          break;
        }
        case Event::Kind::SolutionQuery: {
          const Solution sol = dyn.solution();
          if (sol.total_cost != dyn.cost()) {
            diverge(index, "solution cost " + std::to_string(sol.total_cost) + " != cost() " +
                               std::to_string(dyn.cost()));
            break;
          }
          bool covered_all = true;
          for (const auto& [id, record] : dyn.registry()) {
            bool covered = false;
            for (const auto& p : sol.pairs) {
              const int node = tree.find_node(p.logradius, p.facility);
              if (node >= 0 && tree.is_ancestor_or_self(node, record.home_node)) {
                covered = true;
                break;
              }
            }
            if (!covered) {
              diverge(index, "client '" + id + "' not covered by solution");
              covered_all = false;
              break;
            }
          }
          (void)covered_all;
          break;
        }
      }
    } catch (const Error& err) {
      fail_at_event(index, ev, err);
    }
    if (!result.ok) break;

    std::vector<PointCoord> clients;
    clients.reserve(live.size());
    for (const auto& [id, p] : live) clients.push_back(p);
    const auto offline = offline_dp(inst, tree, clients);
    if (offline.cost != dyn.cost()) {
      diverge(index, "cost expected " + std::to_string(offline.cost) + " got " +
                         std::to_string(dyn.cost()));
      break;
    }
    ++result.events_checked;
  }

  if (result.ok) {
    std::string why;
    if (!dyn.check_consistency(&why)) {
      diverge(events.size(), "annotation sweep mismatch: " + why);
    }
  }
  if (result.ok) out << "verify ok " << result.events_checked << " events\n";
  return result;
}

namespace {

struct Samples {
  std::vector<std::int64_t> visits;
  std::vector<std::int64_t> path;
  std::vector<std::int64_t> touched;
  std::vector<std::int64_t> ns;

  void add(std::int64_t v, std::int64_t p, std::int64_t t, std::int64_t nanos) {
    visits.push_back(v);
    path.push_back(p);
    touched.push_back(t);
    ns.push_back(nanos);
  }
};

std::int64_t percentile(std::vector<std::int64_t> v, double q) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size()))) - 1;
  return v[std::min(idx, v.size() - 1)];
}

double mean(const std::vector<std::int64_t>& v) {
  if (v.empty()) return 0;
  double sum = 0;
  for (auto x : v) sum += static_cast<double>(x);
  return sum / static_cast<double>(v.size());
}

std::int64_t max_of(const std::vector<std::int64_t>& v) {
  std::int64_t m = 0;
  for (auto x : v) m = std::max(m, x);
  return m;
}

OpStats make_stats(const Samples& s) {
  OpStats st;
  st.count = static_cast<std::int64_t>(s.ns.size());
  st.visits_mean = mean(s.visits);
  st.visits_max = max_of(s.visits);
  st.path_mean = mean(s.path);
  st.path_max = max_of(s.path);
  st.touched_mean = mean(s.touched);
  st.touched_max = max_of(s.touched);
  st.ns_p50 = percentile(s.ns, 0.50);
  st.ns_p90 = percentile(s.ns, 0.90);
  st.ns_p99 = percentile(s.ns, 0.99);
  return st;
}

}  // namespace

BenchReport bench_events(const Instance& inst, const PairTree& tree,
                         const std::vector<Event>& events) {
  BenchReport report;
  report.pairs = tree.size();
  report.height = tree.height();
  report.max_degree = tree.max_degree();
  report.events = events.size();

  DynamicClustering dyn(inst, tree);
  Samples ins, del, cost, solution;
  using Clock = std::chrono::steady_clock;

  auto note_violation = [&report](const std::string& what) {
    report.bounds_ok = false;
    if (report.violation.empty()) report.violation = what;
  };

  for (std::size_t i = 0; i < events.size(); ++i) {
    const Event& ev = events[i];
    try {
      switch (ev.kind) {
        case Event::Kind::Insert: {
          const auto t0 = Clock::now();
          const UpdateStats st = dyn.insert(ev.client_id, ev.point);
          const auto t1 = Clock::now();
          ins.add(st.search_visits, st.path_nodes, st.touched(),
                  std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
          if (st.path_nodes > tree.height()) {
            note_violation("insert path " + std::to_string(st.path_nodes) + " exceeds height");
          }
          break;
        }
        case Event::Kind::Delete: {
          const auto t0 = Clock::now();
          const UpdateStats st = dyn.erase(ev.client_id);
          const auto t1 = Clock::now();
          del.add(st.search_visits, st.path_nodes, st.touched(),
                  std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
          if (st.path_nodes > tree.height()) {
            note_violation("delete path " + std::to_string(st.path_nodes) + " exceeds height");
          }
          break;
        }
        case Event::Kind::CostQuery: {
          const auto t0 = Clock::now();
          const volatile std::int64_t c = dyn.cost();
          const auto t1 = Clock::now();
          (void)c;
          cost.add(0, 0, 1, std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
          break;
        }
        case Event::Kind::SolutionQuery: {
          const auto t0 = Clock::now();
          const Solution sol = dyn.solution();
          const auto t1 = Clock::now();
          solution.add(0, 0, sol.nodes_touched,
                       std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
          break;
        }
      }
    } catch (const Error& err) {
      fail_at_event(i + 1, ev, err);
    }
  }

  report.insert_stats = make_stats(ins);
  report.delete_stats = make_stats(del);
  report.cost_stats = make_stats(cost);
  report.solution_stats = make_stats(solution);
  return report;
}

namespace {

std::string format_mean(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

void print_bench_report(const BenchReport& report, std::ostream& out) {
  out << "pairs " << report.pairs << '\n';
  out << "height " << report.height << '\n';
  out << "max_degree " << report.max_degree << '\n';
  out << "events " << report.events << '\n';
  const auto& i = report.insert_stats;
  out << "insert count " << i.count << " visits_mean " << format_mean(i.visits_mean) << " visits_max "
      << i.visits_max << " path_mean " << format_mean(i.path_mean) << " path_max " << i.path_max
      << " ns_p50 " << i.ns_p50 << " ns_p90 " << i.ns_p90 << " ns_p99 " << i.ns_p99 << '\n';
  const auto& d = report.delete_stats;
  out << "delete count " << d.count << " path_mean " << format_mean(d.path_mean) << " path_max "
      << d.path_max << " ns_p50 " << d.ns_p50 << " ns_p90 " << d.ns_p90 << " ns_p99 " << d.ns_p99
      << '\n';
  const auto& c = report.cost_stats;
  out << "cost count " << c.count << " touched 1 ns_p50 " << c.ns_p50 << " ns_p90 " << c.ns_p90
      << " ns_p99 " << c.ns_p99 << '\n';
  const auto& s = report.solution_stats;
  out << "solution count " << s.count << " touched_mean " << format_mean(s.touched_mean)
      << " touched_max " << s.touched_max << " ns_p50 " << s.ns_p50 << " ns_p90 " << s.ns_p90
      << " ns_p99 " << s.ns_p99 << '\n';
  if (!report.bounds_ok) out << "violation " << report.violation << '\n';
}

}  // namespace radii
