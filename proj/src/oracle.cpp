#include "radii/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "radii/areas.hpp"

namespace radii {

RestrictedCover restricted_exhaustive(const Instance& inst, const PairTree& tree,
                                      const std::vector<PointCoord>& clients) {
  const std::size_t n = tree.size();
  if (n > kMaxExhaustivePairs) {
    fail(ErrorCode::TooLargeForExhaustive, "pair set of size " + std::to_string(n));
  }

  // Client p is covered by area (j,r) iff (j,r) is an ancestor-or-self of
  // p's home pair, so each client reduces to a bitmask over the pair set.
  std::vector<std::uint32_t> client_masks;
  client_masks.reserve(clients.size());
  for (const auto& p : clients) {
    std::uint32_t mask = 0;
    int v = home_pair(inst, tree, p).node;
    while (v != -1) {
      mask |= std::uint32_t{1} << v;
      v = tree.node(v).parent;
    }
    client_masks.push_back(mask);
  }

  std::vector<std::int64_t> cost(n);
  for (int i = 0; i < static_cast<int>(n); ++i) cost[static_cast<std::size_t>(i)] = tree.node_cost(inst, i);

  std::uint32_t best_subset = 0;
  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  const std::uint32_t limit = n >= 32 ? 0xffffffffu : (std::uint32_t{1} << n) - 1;
  for (std::uint32_t subset = 0;; ++subset) {
    bool covers = true;
    for (std::uint32_t m : client_masks) {
      if ((subset & m) == 0) {
        covers = false;
        break;
      }
    }
    if (covers) {
      std::int64_t total = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (subset & (std::uint32_t{1} << i)) total += cost[i];
      }
      if (total < best_cost) {
        best_cost = total;
        best_subset = subset;
      }
    }
    if (subset == limit) break;
  }

  RestrictedCover cover;
  cover.cost = clients.empty() ? 0 : best_cost;
  if (!clients.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (best_subset & (std::uint32_t{1} << i)) {
        const auto& node = tree.node(static_cast<int>(i));
        cover.pairs.push_back({node.facility, node.logradius});
      }
    }
  }
  return cover;
}

namespace {

struct CandidateBall {
  int facility_ordinal;
  double radius;
  std::uint32_t covers;
};

}  // namespace

BallCover unrestricted_opt(const Instance& inst, const std::vector<PointCoord>& clients) {
  if (clients.size() > kMaxExhaustiveClients) {
    fail(ErrorCode::TooLargeForExhaustive, std::to_string(clients.size()) + " clients");
  }
  if (inst.facilities.size() > kMaxExhaustiveFacilities) {
    fail(ErrorCode::TooLargeForExhaustive, std::to_string(inst.facilities.size()) + " facilities");
  }
  if (clients.empty()) return {};

  const std::size_t nc = clients.size();
  std::vector<std::vector<double>> dist(inst.facilities.size(), std::vector<double>(nc));
  std::vector<CandidateBall> balls;
  for (std::size_t f = 0; f < inst.facilities.size(); ++f) {
    std::vector<double> radii = {0.0};
    for (std::size_t c = 0; c < nc; ++c) {
      dist[f][c] = inst.distance(inst.facilities[f].point, clients[c]);
      radii.push_back(dist[f][c]);
    }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    for (double r : radii) {
      std::uint32_t covers = 0;
      for (std::size_t c = 0; c < nc; ++c) {
        if (dist[f][c] <= r) covers |= std::uint32_t{1} << c;
      }
      if (covers) balls.push_back({static_cast<int>(f), r, covers});
    }
  }

  // Set-cover DP over client subsets; any cover of M has some ball over M's
  // lowest-index client, so branching on that client stays exact.
  const std::uint32_t full = (std::uint32_t{1} << nc) - 1;
  std::vector<double> memo(full + 1, 0.0);
  std::vector<int> choice(full + 1, -1);
  for (std::uint32_t m = 1; m <= full; ++m) {
    const int low = std::countr_zero(m);
    double best = std::numeric_limits<double>::infinity();
    int best_ball = -1;
    for (std::size_t b = 0; b < balls.size(); ++b) {
      if (!(balls[b].covers & (std::uint32_t{1} << low))) continue;
      const double sub = memo[m & ~balls[b].covers];
      const double total =
          static_cast<double>(inst.facilities[static_cast<std::size_t>(balls[b].facility_ordinal)].cost) +
          balls[b].radius + sub;
      if (total < best) {
        best = total;
        best_ball = static_cast<int>(b);
      }
    }
    memo[m] = best;
    choice[m] = best_ball;
  }

  BallCover cover;
  cover.cost = memo[full];
  for (std::uint32_t m = full; m != 0;) {
    const auto& b = balls[static_cast<std::size_t>(choice[m])];
    cover.balls.push_back(
        {b.facility_ordinal, inst.facilities[static_cast<std::size_t>(b.facility_ordinal)].id, b.radius});
    m &= ~b.covers;
  }
  return cover;
}

BallCover normalize_to_power_of_five(const Instance& inst, const BallCover& cover) {
  const double w = inst.diameter_bound;
  bool oversized = false;
  for (const auto& b : cover.balls) {
    const double f = static_cast<double>(inst.facilities[static_cast<std::size_t>(b.facility_ordinal)].cost);
    if (std::max(f, b.radius) > w) oversized = true;
  }
  BallCover out;
  if (oversized) {
    int cheapest = 0;
    for (int f = 1; f < static_cast<int>(inst.facilities.size()); ++f) {
      if (inst.facilities[static_cast<std::size_t>(f)].cost <
          inst.facilities[static_cast<std::size_t>(cheapest)].cost) {
        cheapest = f;
      }
    }
    out.balls.push_back({cheapest, inst.facilities[static_cast<std::size_t>(cheapest)].id, w});
    out.cost = static_cast<double>(inst.facilities[static_cast<std::size_t>(cheapest)].cost) + w;
    return out;
  }
  for (const auto& b : cover.balls) {
    const auto& fac = inst.facilities[static_cast<std::size_t>(b.facility_ordinal)];
    double radius = std::max(b.radius, static_cast<double>(fac.cost));
    radius = static_cast<double>(pow5(ceil_log5(radius)));
    out.balls.push_back({b.facility_ordinal, fac.id, radius});
    out.cost += static_cast<double>(fac.cost) + radius;
  }
  return out;
}

RatioReport ratio_report(const Instance& inst, const PairTree& tree,
                         const std::vector<PointCoord>& clients, double bound_factor) {
  RatioReport report;
  report.restricted_cost = restricted_exhaustive(inst, tree, clients).cost;
  report.opt_cost = unrestricted_opt(inst, clients).cost;
  if (clients.empty()) {
    report.ratio = 1.0;
  } else {
    report.ratio = static_cast<double>(report.restricted_cost) / report.opt_cost;
  }
  if (inst.kappa_hint) {
    report.bound = bound_factor * std::pow(2.0, 2.0 * *inst.kappa_hint);
    report.within_bound = report.ratio <= report.bound;
  }
  return report;
}

}  // namespace radii
