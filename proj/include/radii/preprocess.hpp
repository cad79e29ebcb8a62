#pragma once

// Preprocessing: the logradius range, per-level maximal separated facility
// sets J_r, and the pair tree over (facility, logradius) pairs. Everything
// here is built once per instance and immutable afterwards.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "radii/metric.hpp"

namespace radii {

struct LogradiusRange {
  int rho_min = 0;
  int rho_max = 0;

  int height() const { return rho_max - rho_min + 1; }
};

// rho_min = smallest r with 5^r >= f_min; rho_max = max(rho_min, smallest r
// with 5^r >= W). Throws InstanceTooLarge when exact 63-bit cost arithmetic
// would overflow.
LogradiusRange compute_logradius_range(const Instance& inst);

struct LevelSets {
  LogradiusRange range;
  // Indexed by r - rho_min. Entries are facility ordinals (positions in
  // Instance::facilities), ascending by facility id.
  std::vector<std::vector<int>> levels;  // J_r: maximal 5^{r+1}-separated subsets
  std::vector<std::vector<int>> pools;   // J'_r = {j : f_j <= 5^r}, kept for verification
};

// Greedy scan in ascending facility id; a facility joins J_r when it is at
// distance > 5^{r+1} from everything already admitted. Maximal by
// construction and deterministic.
LevelSets build_level_sets(const Instance& inst, const LogradiusRange& range);

struct PairNode {
  int facility_ordinal = -1;
  FacilityId facility = 0;
  int logradius = 0;
  int parent = -1;             // node index, -1 at the root
  std::vector<int> children;   // node indices, ascending facility id
};

struct PairTree {
  LogradiusRange range;
  // Sorted by (logradius ascending, facility id ascending), so a linear pass
  // is bottom-up and the root is the last node.
  std::vector<PairNode> nodes;
  std::vector<std::pair<int, int>> level_span;  // per level: [first, last) into nodes
  int root = -1;

  int height() const { return range.height(); }
  int max_degree() const;
  std::size_t size() const { return nodes.size(); }
  const PairNode& node(int idx) const { return nodes[static_cast<std::size_t>(idx)]; }
  int level_of(int logradius) const { return logradius - range.rho_min; }

  // Node index of (facility id, logradius), -1 if absent.
  int find_node(int logradius, FacilityId facility) const;
  bool is_ancestor_or_self(int ancestor, int descendant) const;

  // c_{j,r} = f_j + 7*5^r, exact.
  std::int64_t node_cost(const Instance& inst, int idx) const;
};

// Parent of (j,r) is the nearest member of J_{r+1}, ties by smaller facility
// id. Throws InstanceTooLarge if the summed node costs leave 63 bits.
PairTree build_pair_tree(const Instance& inst, const LevelSets& levels);

// `pair <facility> <logradius> parent <facility|-> children <k>` records in
// root-first order (logradius descending, facility ascending), followed by
// summary stats. Stable across runs for golden-file comparison.
void dump_pair_tree(const LevelSets& levels, const PairTree& tree, std::ostream& out);

// Exhaustive structural checks used by tests, `verify`, and the acceptance
// suite: Separating/Covering per level, nesting per edge, singleton top
// level, and packing/degree statistics against 2^{2k} / 2^{4k} when a kappa
// hint is available.
struct StructureReport {
  bool separating_ok = true;
  bool covering_ok = true;
  bool nesting_ok = true;
  bool singleton_top_ok = true;
  bool parent_edge_short_ok = true;  // d(j, parent) <= 5^{r+2} per edge
  int max_degree = 0;
  std::int64_t max_packing = 0;  // max over sample points, levels of |{(j,r): d(p,j) < 2*5^{r+1}}|
  bool degree_within_kappa_bound = true;   // meaningful only with kappa hint
  bool packing_within_kappa_bound = true;  // meaningful only with kappa hint
  std::string first_violation;

  bool all_ok() const {
    return separating_ok && covering_ok && nesting_ok && singleton_top_ok && parent_edge_short_ok;
  }
};

StructureReport check_structure(const Instance& inst, const LevelSets& levels, const PairTree& tree,
                                const std::vector<PointCoord>& sample_points);

}  // namespace radii
