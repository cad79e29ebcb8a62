#include "radii/areas.hpp"

#include <algorithm>

namespace radii {

namespace {

void descend(const Instance& inst, const PairTree& tree, const PointCoord& p, int node_idx,
             PairsResult& result) {
  ++result.visited;
  const auto& node = tree.node(node_idx);
  const double d =
      inst.distance(p, inst.facilities[static_cast<std::size_t>(node.facility_ordinal)].point);
  if (!(d <= 7.0 * static_cast<double>(pow5(node.logradius)))) return;
  result.covering.push_back({node_idx, d});
  for (int child : node.children) descend(inst, tree, p, child, result);
}

}  // namespace

PairsResult find_pairs(const Instance& inst, const PairTree& tree, const PointCoord& p) {
  const auto& root = tree.node(tree.root);
  const double to_root =
      inst.distance(p, inst.facilities[static_cast<std::size_t>(root.facility_ordinal)].point);
  if (to_root > inst.diameter_bound) {
    fail(ErrorCode::OutOfDiameter, "point beyond W from the root facility");
  }

  PairsResult result;
  descend(inst, tree, p, tree.root, result);
  std::sort(result.covering.begin(), result.covering.end(),
            [](const CoveringPair& a, const CoveringPair& b) { return a.node < b.node; });
  return result;
}

HomePair home_pair(const Instance& inst, const PairTree& tree, const PointCoord& p) {
  const PairsResult found = find_pairs(inst, tree, p);
  // Node order is (logradius asc, facility asc): the minimal-logradius block
  // is a prefix, and within it the first strict distance improvement wins,
  // which is exactly the smallest-id tie rule.
  const int min_logradius = tree.node(found.covering.front().node).logradius;
  HomePair home;
  home.search_visits = found.visited;
  double best = 0;
  for (const auto& cp : found.covering) {
    if (tree.node(cp.node).logradius != min_logradius) break;
    if (home.node == -1 || cp.dist < best) {
      home.node = cp.node;
      best = cp.dist;
    }
  }
  return home;
}

std::vector<AreaExtent> enumerate_areas(const Instance& inst, const PairTree& tree,
                                        const std::vector<PointCoord>& universe) {
  std::vector<AreaExtent> areas(tree.size());
  for (int i = 0; i < static_cast<int>(tree.size()); ++i) areas[static_cast<std::size_t>(i)].node = i;
  for (int pi = 0; pi < static_cast<int>(universe.size()); ++pi) {
    int v = home_pair(inst, tree, universe[static_cast<std::size_t>(pi)]).node;
    while (v != -1) {
      areas[static_cast<std::size_t>(v)].members.push_back(pi);
      v = tree.node(v).parent;
    }
  }
  return areas;
}

}  // namespace radii
