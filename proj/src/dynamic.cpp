#include "radii/dynamic.hpp"

#include <algorithm>
#include <functional>

namespace radii {

namespace {

std::int64_t recompute_x(const DynamicClustering::Annotation& a) {
  if (a.n > 0) return a.c;
  return std::min(a.c, a.y);
}

}  // namespace

DynamicClustering::DynamicClustering(const Instance& inst, const PairTree& tree)
    : instance_(&inst), tree_(&tree) {
  annotations_.resize(tree.size());
  for (int i = 0; i < static_cast<int>(tree.size()); ++i) {
    annotations_[static_cast<std::size_t>(i)].c = tree.node_cost(inst, i);
  }
}

void DynamicClustering::repair_path(int from) {
  for (int v = from; v != -1; v = tree_->node(v).parent) {
    auto& a = annotations_[static_cast<std::size_t>(v)];
    const std::int64_t old_x = a.x;
    a.x = recompute_x(a);
    const int parent = tree_->node(v).parent;
    if (parent != -1) {
      annotations_[static_cast<std::size_t>(parent)].y += a.x - old_x;
    }
  }
}

UpdateStats DynamicClustering::insert(const ClientId& id, const PointCoord& p) {
  if (clients_.count(id)) fail(ErrorCode::DuplicateClient, "client '" + id + "' already live");
  const HomePair home = home_pair(*instance_, *tree_, p);

  clients_.emplace(id, ClientRecord{p, home.node});
  ++annotations_[static_cast<std::size_t>(home.node)].n;
  repair_path(home.node);

  UpdateStats stats;
  stats.search_visits = home.search_visits;
  stats.path_nodes = tree_->range.rho_max - tree_->node(home.node).logradius + 1;
  return stats;
}

UpdateStats DynamicClustering::erase(const ClientId& id) {
  auto it = clients_.find(id);
  if (it == clients_.end()) fail(ErrorCode::NoSuchClient, "client '" + id + "' not live");
  const int home = it->second.home_node;
  clients_.erase(it);

  --annotations_[static_cast<std::size_t>(home)].n;
  repair_path(home);

  UpdateStats stats;
  stats.path_nodes = tree_->range.rho_max - tree_->node(home).logradius + 1;
  return stats;
}

Solution DynamicClustering::solution() const {
  Solution sol;
  std::function<void(int)> extract = [&](int v) {
    ++sol.nodes_touched;
    const auto& a = annotations_[static_cast<std::size_t>(v)];
    if (a.x == 0) return;
    if (a.x == a.c) {
      const auto& node = tree_->node(v);
      sol.pairs.push_back({node.facility, node.logradius});
      sol.total_cost += a.c;
      return;
    }
    for (int child : tree_->node(v).children) extract(child);
  };
  extract(tree_->root);
  return sol;
}

bool DynamicClustering::check_consistency(std::string* why) const {
  std::vector<Annotation> fresh(annotations_.size());
  for (int i = 0; i < static_cast<int>(tree_->size()); ++i) {
    fresh[static_cast<std::size_t>(i)].c = tree_->node_cost(*instance_, i);
  }
  for (const auto& [id, record] : clients_) {
    ++fresh[static_cast<std::size_t>(record.home_node)].n;
  }
  for (int v = 0; v < static_cast<int>(tree_->size()); ++v) {
    auto& a = fresh[static_cast<std::size_t>(v)];
    a.x = recompute_x(a);
    const int parent = tree_->node(v).parent;
    if (parent != -1) fresh[static_cast<std::size_t>(parent)].y += a.x;
  }
  for (std::size_t v = 0; v < annotations_.size(); ++v) {
    const auto& got = annotations_[v];
    const auto& want = fresh[v];
    if (got.c != want.c || got.n != want.n || got.x != want.x || got.y != want.y) {
      if (why) {
        *why = "node " + std::to_string(v) + ": stored (c=" + std::to_string(got.c) +
               ",n=" + std::to_string(got.n) + ",x=" + std::to_string(got.x) +
               ",y=" + std::to_string(got.y) + ") recomputed (c=" + std::to_string(want.c) +
               ",n=" + std::to_string(want.n) + ",x=" + std::to_string(want.x) +
               ",y=" + std::to_string(want.y) + ")";
      }
      return false;
    }
  }
  return true;
}

void DynamicClustering::inject_annotation_error(int node_idx, std::int64_t delta) {
  annotations_[static_cast<std::size_t>(node_idx)].x += delta;
}

OfflineResult offline_dp(const Instance& inst, const PairTree& tree,
                         const std::vector<PointCoord>& clients) {
  std::vector<std::int64_t> n(tree.size(), 0);
  for (const auto& p : clients) {
    ++n[static_cast<std::size_t>(home_pair(inst, tree, p).node)];
  }

  // Storage order is logradius-ascending, hence bottom-up in the tree.
  std::vector<std::int64_t> x(tree.size(), 0);
  std::vector<std::int64_t> y(tree.size(), 0);
  for (int v = 0; v < static_cast<int>(tree.size()); ++v) {
    const std::int64_t c = tree.node_cost(inst, v);
    x[static_cast<std::size_t>(v)] =
        n[static_cast<std::size_t>(v)] > 0 ? c : std::min(c, y[static_cast<std::size_t>(v)]);
    const int parent = tree.node(v).parent;
    if (parent != -1) y[static_cast<std::size_t>(parent)] += x[static_cast<std::size_t>(v)];
  }

  OfflineResult result;
  result.cost = x[static_cast<std::size_t>(tree.root)];

  std::function<void(int)> extract = [&](int v) {
    ++result.solution.nodes_touched;
    if (x[static_cast<std::size_t>(v)] == 0) return;
    if (x[static_cast<std::size_t>(v)] == tree.node_cost(inst, v)) {
      const auto& node = tree.node(v);
      result.solution.pairs.push_back({node.facility, node.logradius});
      result.solution.total_cost += x[static_cast<std::size_t>(v)];
      return;
    }
    for (int child : tree.node(v).children) extract(child);
  };
  extract(tree.root);
  return result;
}

}  // namespace radii
