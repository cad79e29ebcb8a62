#pragma once

// The laminar areas, kept implicit: for a query point we find every pair
// whose ball B(j, 7*5^r) contains it by recursive descent (pruned by ball
// nesting), and derive the home pair (minimal logradius, then nearest
// facility, ties by id). Explicit area enumeration exists only for
// verification on finite universes.

#include <cstdint>
#include <vector>

#include "radii/metric.hpp"
#include "radii/preprocess.hpp"

namespace radii {

struct CoveringPair {
  int node = -1;
  double dist = 0;  // d(p, facility of the pair)
};

struct PairsResult {
  // Ascending node index == (logradius ascending, facility ascending).
  std::vector<CoveringPair> covering;
  std::int64_t visited = 0;  // recursion calls, ball misses included
};

// All (j,r) with d(p,j) <= 7*5^r. Requires d(p, root facility) <= W, else
// OutOfDiameter; never returns an empty set (the root ball spans W).
PairsResult find_pairs(const Instance& inst, const PairTree& tree, const PointCoord& p);

struct HomePair {
  int node = -1;
  std::int64_t search_visits = 0;
};

HomePair home_pair(const Instance& inst, const PairTree& tree, const PointCoord& p);

struct AreaExtent {
  int node = -1;
  std::vector<int> members;  // indices into the universe vector, ascending
};

// One extent per tree node: each universe point joins its home pair's area
// and every ancestor's area.
std::vector<AreaExtent> enumerate_areas(const Instance& inst, const PairTree& tree,
                                        const std::vector<PointCoord>& universe);

}  // namespace radii
