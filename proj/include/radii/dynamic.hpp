#pragma once

// The annotated dependency tree. Each pair carries
//   c = f_j + 7*5^r   cost of opening its area,
//   n                 live clients homed exactly here,
//   x                 optimal cost of covering the subtree's clients,
//   y                 sum of the children's x.
// The recurrence x = c if n > 0, else min(c, y), makes x_root the optimal
// restricted cost. Inserting or deleting a client changes n at one node and
// repairs x/y along the path to the root, so updates cost one root path plus
// (for inserts) one covering-pairs search. All arithmetic is exact int64.
//
// Single writer; cost()/solution() may run concurrently with each other but
// not with updates.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "radii/areas.hpp"
#include "radii/metric.hpp"
#include "radii/preprocess.hpp"

namespace radii {

using ClientId = std::string;

struct UpdateStats {
  std::int64_t search_visits = 0;
  std::int64_t path_nodes = 0;

  std::int64_t touched() const { return search_visits + path_nodes; }
};

struct SolutionPair {
  FacilityId facility = 0;
  int logradius = 0;

  bool operator==(const SolutionPair&) const = default;
};

struct Solution {
  std::vector<SolutionPair> pairs;  // extraction (depth-first) order
  std::int64_t total_cost = 0;
  std::int64_t nodes_touched = 0;
};

struct ClientRecord {
  PointCoord point;
  int home_node = -1;
};

class DynamicClustering {
 public:
  DynamicClustering(const Instance& inst, const PairTree& tree);

  UpdateStats insert(const ClientId& id, const PointCoord& p);
  UpdateStats erase(const ClientId& id);

  // x_root; reads exactly one node.
  std::int64_t cost() const { return annotations_[static_cast<std::size_t>(tree_->root)].x; }

  Solution solution() const;

  std::size_t live_clients() const { return clients_.size(); }
  const std::unordered_map<ClientId, ClientRecord>& registry() const { return clients_; }

  struct Annotation {
    std::int64_t c = 0;
    std::int64_t n = 0;
    std::int64_t x = 0;
    std::int64_t y = 0;
  };
  const std::vector<Annotation>& annotations() const { return annotations_; }

  // Recomputes n from the registry and x/y bottom-up; true iff the stored
  // annotations match exactly.
  bool check_consistency(std::string* why = nullptr) const;

  // Negative-control hook for verification tests: skews x at one node.
  void inject_annotation_error(int node_idx, std::int64_t delta);

  const PairTree& tree() const { return *tree_; }
  const Instance& instance() const { return *instance_; }

 private:
  void repair_path(int from);

  const Instance* instance_;
  const PairTree* tree_;
  std::vector<Annotation> annotations_;
  std::unordered_map<ClientId, ClientRecord> clients_;
};

struct OfflineResult {
  std::int64_t cost = 0;
  Solution solution;
};

// The offline restricted optimum, computed from scratch by the bottom-up
// recurrence (homes recomputed fresh). Equivalence oracle for the dynamic
// structure.
OfflineResult offline_dp(const Instance& inst, const PairTree& tree,
                         const std::vector<PointCoord>& clients);

}  // namespace radii
