#include "radii/preprocess.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>

namespace radii {

LogradiusRange compute_logradius_range(const Instance& inst) {
  LogradiusRange range;
  while (static_cast<double>(pow5(range.rho_min)) < static_cast<double>(inst.f_min)) {
    ++range.rho_min;
    if (range.rho_min > 25) fail(ErrorCode::InstanceTooLarge, "f_min too large");
  }
  range.rho_max = range.rho_min;
  while (static_cast<double>(pow5(range.rho_max)) < inst.diameter_bound) {
    ++range.rho_max;
    if (range.rho_max > 25) fail(ErrorCode::InstanceTooLarge, "W too large");
  }
  return range;
}

LevelSets build_level_sets(const Instance& inst, const LogradiusRange& range) {
  LevelSets sets;
  sets.range = range;
  sets.levels.resize(static_cast<std::size_t>(range.height()));
  sets.pools.resize(static_cast<std::size_t>(range.height()));

  for (int r = range.rho_min; r <= range.rho_max; ++r) {
    const auto lvl = static_cast<std::size_t>(r - range.rho_min);
    const std::int64_t radius_cap = pow5(r);
    const double separation = static_cast<double>(pow5(r + 1));

    auto& pool = sets.pools[lvl];
    for (std::size_t i = 0; i < inst.facilities.size(); ++i) {
      if (inst.facilities[i].cost <= radius_cap) pool.push_back(static_cast<int>(i));
    }
    auto& level = sets.levels[lvl];
    for (int cand : pool) {
      bool separated = true;
      for (int got : level) {
        if (inst.distance(inst.facilities[static_cast<std::size_t>(cand)].point,
                          inst.facilities[static_cast<std::size_t>(got)].point) <= separation) {
          separated = false;
          break;
        }
      }
      if (separated) level.push_back(cand);
    }
  }

  if (sets.pools.back().empty()) {
    fail(ErrorCode::NoUsableFacility, "no facility with cost <= 5^rho_max");
  }
  return sets;
}

int PairTree::max_degree() const {
  int deg = 0;
  for (const auto& n : nodes) deg = std::max(deg, static_cast<int>(n.children.size()));
  return deg;
}

int PairTree::find_node(int logradius, FacilityId facility) const {
  if (logradius < range.rho_min || logradius > range.rho_max) return -1;
  const auto [first, last] = level_span[static_cast<std::size_t>(level_of(logradius))];
  for (int i = first; i < last; ++i) {
    if (nodes[static_cast<std::size_t>(i)].facility == facility) return i;
  }
  return -1;
}

bool PairTree::is_ancestor_or_self(int ancestor, int descendant) const {
  int v = descendant;
  while (v != -1) {
    if (v == ancestor) return true;
    v = nodes[static_cast<std::size_t>(v)].parent;
  }
  return false;
}

std::int64_t PairTree::node_cost(const Instance& inst, int idx) const {
  const auto& n = nodes[static_cast<std::size_t>(idx)];
  return inst.facilities[static_cast<std::size_t>(n.facility_ordinal)].cost + 7 * pow5(n.logradius);
}

PairTree build_pair_tree(const Instance& inst, const LevelSets& levels) {
  PairTree tree;
  tree.range = levels.range;

  for (int r = tree.range.rho_min; r <= tree.range.rho_max; ++r) {
    const auto lvl = static_cast<std::size_t>(r - tree.range.rho_min);
    const int first = static_cast<int>(tree.nodes.size());
    for (int ord : levels.levels[lvl]) {
      PairNode node;
      node.facility_ordinal = ord;
      node.facility = inst.facilities[static_cast<std::size_t>(ord)].id;
      node.logradius = r;
      tree.nodes.push_back(std::move(node));
    }
    tree.level_span.emplace_back(first, static_cast<int>(tree.nodes.size()));
  }
  tree.root = static_cast<int>(tree.nodes.size()) - 1;

  // Nearest member of the level above, ties by ascending facility id (the
  // level lists are already id-sorted, so strict improvement keeps the tie).
  for (int r = tree.range.rho_min; r < tree.range.rho_max; ++r) {
    const auto [first, last] = tree.level_span[static_cast<std::size_t>(tree.level_of(r))];
    const auto [pfirst, plast] = tree.level_span[static_cast<std::size_t>(tree.level_of(r + 1))];
    for (int i = first; i < last; ++i) {
      auto& node = tree.nodes[static_cast<std::size_t>(i)];
      const auto& pt = inst.facilities[static_cast<std::size_t>(node.facility_ordinal)].point;
      int best = -1;
      double best_dist = std::numeric_limits<double>::infinity();
      for (int p = pfirst; p < plast; ++p) {
        const auto& cand = tree.nodes[static_cast<std::size_t>(p)];
        const double d =
            inst.distance(pt, inst.facilities[static_cast<std::size_t>(cand.facility_ordinal)].point);
        if (d < best_dist) {
          best_dist = d;
          best = p;
        }
      }
      node.parent = best;
      tree.nodes[static_cast<std::size_t>(best)].children.push_back(i);
    }
  }

  // Children were appended in ascending facility order within each level, so
  // the lists are already sorted; keep that as an explicit guarantee.
  for (auto& n : tree.nodes) std::sort(n.children.begin(), n.children.end());

  unsigned __int128 total_cost = 0;
  for (int i = 0; i < static_cast<int>(tree.nodes.size()); ++i) {
    total_cost += static_cast<unsigned __int128>(tree.node_cost(inst, i));
  }
  if (total_cost > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) {
    fail(ErrorCode::InstanceTooLarge, "summed pair costs exceed 63 bits");
  }
  return tree;
}

void dump_pair_tree(const LevelSets& levels, const PairTree& tree, std::ostream& out) {
  for (int r = tree.range.rho_max; r >= tree.range.rho_min; --r) {
    const auto [first, last] = tree.level_span[static_cast<std::size_t>(tree.level_of(r))];
    for (int i = first; i < last; ++i) {
      const auto& n = tree.node(i);
      out << "pair " << n.facility << ' ' << n.logradius << " parent ";
      if (n.parent < 0) {
        out << '-';
      } else {
        out << tree.node(n.parent).facility;
      }
      out << " children " << n.children.size() << '\n';
    }
  }
  out << "pairs " << tree.nodes.size() << '\n';
  out << "height " << tree.height() << '\n';
  out << "max_degree " << tree.max_degree() << '\n';
  for (int r = tree.range.rho_min; r <= tree.range.rho_max; ++r) {
    out << "level " << r << " size "
        << levels.levels[static_cast<std::size_t>(r - tree.range.rho_min)].size() << '\n';
  }
  std::map<std::size_t, int> degree_histogram;
  for (const auto& n : tree.nodes) ++degree_histogram[n.children.size()];
  for (const auto& [deg, count] : degree_histogram) {
    out << "degree " << deg << " count " << count << '\n';
  }
}

StructureReport check_structure(const Instance& inst, const LevelSets& levels, const PairTree& tree,
                                const std::vector<PointCoord>& sample_points) {
  StructureReport report;
  report.max_degree = tree.max_degree();
  auto note = [&report](const std::string& what) {
    if (report.first_violation.empty()) report.first_violation = what;
  };

  const auto& range = tree.range;
  for (int r = range.rho_min; r <= range.rho_max; ++r) {
    const auto lvl = static_cast<std::size_t>(r - range.rho_min);
    const double threshold = static_cast<double>(pow5(r + 1));
    const auto& level = levels.levels[lvl];

    for (std::size_t a = 0; a < level.size(); ++a) {
      for (std::size_t b = a + 1; b < level.size(); ++b) {
        const double d = inst.distance(inst.facilities[static_cast<std::size_t>(level[a])].point,
                                       inst.facilities[static_cast<std::size_t>(level[b])].point);
        if (!(d > threshold)) {
          report.separating_ok = false;
          note("separating fails at logradius " + std::to_string(r));
        }
      }
    }
    for (int cand : levels.pools[lvl]) {
      bool covered = false;
      for (int got : level) {
        if (inst.distance(inst.facilities[static_cast<std::size_t>(cand)].point,
                          inst.facilities[static_cast<std::size_t>(got)].point) <= threshold) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        report.covering_ok = false;
        note("covering fails at logradius " + std::to_string(r));
      }
    }
  }

  const auto [tfirst, tlast] = tree.level_span.back();
  if (tlast - tfirst != 1) {
    report.singleton_top_ok = false;
    note("top level is not a singleton");
  }

  for (int i = 0; i < static_cast<int>(tree.nodes.size()); ++i) {
    const auto& n = tree.node(i);
    if (n.parent < 0) continue;
    const auto& p = tree.node(n.parent);
    const double d = inst.distance(inst.facilities[static_cast<std::size_t>(n.facility_ordinal)].point,
                                   inst.facilities[static_cast<std::size_t>(p.facility_ordinal)].point);
    if (!(d + 7.0 * static_cast<double>(pow5(n.logradius)) <=
          7.0 * static_cast<double>(pow5(n.logradius + 1)))) {
      report.nesting_ok = false;
      note("nesting fails at pair (" + std::to_string(n.facility) + "," + std::to_string(n.logradius) + ")");
    }
    if (!(d <= static_cast<double>(pow5(n.logradius + 2)))) {
      report.parent_edge_short_ok = false;
      note("parent edge exceeds 5^{r+2} at (" + std::to_string(n.facility) + "," + std::to_string(n.logradius) + ")");
    }
  }

  for (const auto& p : sample_points) {
    for (int r = range.rho_min; r <= range.rho_max; ++r) {
      const double near = 2.0 * static_cast<double>(pow5(r + 1));
      const auto [first, last] = tree.level_span[static_cast<std::size_t>(tree.level_of(r))];
      std::int64_t count = 0;
      for (int i = first; i < last; ++i) {
        const auto& n = tree.node(i);
        if (inst.distance(p, inst.facilities[static_cast<std::size_t>(n.facility_ordinal)].point) < near) {
          ++count;
        }
      }
      report.max_packing = std::max(report.max_packing, count);
    }
  }

  if (inst.kappa_hint) {
    const int kappa = *inst.kappa_hint;
    const std::int64_t packing_bound = std::int64_t{1} << std::min(60, 2 * kappa);
    const std::int64_t degree_bound = std::int64_t{1} << std::min(60, 4 * kappa);
    if (report.max_packing > packing_bound) {
      report.packing_within_kappa_bound = false;
      note("packing bound 2^{2k} exceeded");
    }
    if (report.max_degree > degree_bound) {
      report.degree_within_kappa_bound = false;
      note("degree bound 2^{4k} exceeded");
    }
  }
  return report;
}

}  // namespace radii
