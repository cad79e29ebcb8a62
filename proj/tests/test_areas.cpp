#include <set>

#include "doctest.h"
#include "radii/areas.hpp"
#include "test_util.hpp"

using namespace radii;

namespace {

std::set<std::pair<FacilityId, int>> as_pairs(const PairTree& tree, const std::vector<int>& nodes) {
  std::set<std::pair<FacilityId, int>> out;
  for (int n : nodes) out.insert({tree.node(n).facility, tree.node(n).logradius});
  return out;
}

}  // namespace

TEST_CASE("find_pairs on the line instance") {
  const auto b = testutil::build_instance(testutil::line_instance());

  // p = 2: within 7*5^0 of facility 0 only; within 7*5^1 = 35 of both.
  const auto result = find_pairs(b.instance, b.tree, testutil::pt1(2));
  const auto got = as_pairs(b.tree, testutil::covering_nodes(result));
  const std::set<std::pair<FacilityId, int>> want = {{0, 3}, {0, 2}, {0, 1}, {30, 1}, {0, 0}};
  CHECK(got == want);
  CHECK(got == as_pairs(b.tree, testutil::brute_force_pairs(b.instance, b.tree, testutil::pt1(2))));

  // the root facility location always carries the root pair
  const auto at_root = find_pairs(b.instance, b.tree, testutil::pt1(0));
  CHECK(as_pairs(b.tree, testutil::covering_nodes(at_root)).count({0, 3}) == 1);
}

TEST_CASE("find_pairs rejects points beyond W") {
  const auto b = testutil::build_instance(testutil::line_instance());
  CHECK_THROWS_WITH_AS((void)find_pairs(b.instance, b.tree, testutil::pt1(100)),
                       doctest::Contains("OutOfDiameter"), Error);
}

TEST_CASE("find_pairs equals the brute-force filter everywhere") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    WorkloadSpec spec;
    spec.seed = seed;
    spec.metric = seed % 2 ? "euclidean2" : "euclidean1";
    spec.facilities = 2 + static_cast<int>(seed % 9);
    spec.cost_max = 4;
    spec.box = 20 + static_cast<std::int64_t>(seed) * 31;
    const auto b = testutil::build_instance(testutil::gen_instance(spec));

    Xorshift64Star rng(seed * 1000 + 7);
    const auto& root_pt =
        b.instance.facilities[static_cast<std::size_t>(b.tree.node(b.tree.root).facility_ordinal)].point;
    for (int trial = 0; trial < 40; ++trial) {
      PointCoord p;
      if (b.instance.dim == 1) {
        p = testutil::pt1(static_cast<double>(rng.next_range(0, spec.box)));
      } else {
        p = testutil::pt2(static_cast<double>(rng.next_range(0, spec.box)),
                          static_cast<double>(rng.next_range(0, spec.box)));
      }
      if (b.instance.distance(p, root_pt) > b.instance.diameter_bound) continue;
      const auto result = find_pairs(b.instance, b.tree, p);
      CHECK(testutil::covering_nodes(result) == testutil::brute_force_pairs(b.instance, b.tree, p));
      CHECK(!result.covering.empty());
      // visit accounting: only covering pairs and their direct children get touched
      CHECK(result.visited <=
            static_cast<std::int64_t>(result.covering.size()) * (b.tree.max_degree() + 1));
    }
  }
}

TEST_CASE("home pair on the line instance") {
  const auto b = testutil::build_instance(testutil::line_instance());
  const auto h2 = home_pair(b.instance, b.tree, testutil::pt1(2));
  CHECK(b.tree.node(h2.node).facility == 0);
  CHECK(b.tree.node(h2.node).logradius == 0);

  const auto h29 = home_pair(b.instance, b.tree, testutil::pt1(29));
  CHECK(b.tree.node(h29.node).facility == 30);
  CHECK(b.tree.node(h29.node).logradius == 0);

  // p = 15 is equidistant from both level-1 facilities; the smaller id wins.
  const auto h15 = home_pair(b.instance, b.tree, testutil::pt1(15));
  CHECK(b.tree.node(h15.node).facility == 0);
  CHECK(b.tree.node(h15.node).logradius == 1);
}

TEST_CASE("home pair matches the exhaustive definition") {
  for (std::uint64_t seed = 40; seed <= 48; ++seed) {
    WorkloadSpec spec;
    spec.seed = seed;
    spec.metric = "euclidean2";
    spec.facilities = 3 + static_cast<int>(seed % 7);
    spec.box = 60;
    const auto b = testutil::build_instance(testutil::gen_instance(spec));
    Xorshift64Star rng(seed);
    const auto& root_pt =
        b.instance.facilities[static_cast<std::size_t>(b.tree.node(b.tree.root).facility_ordinal)].point;
    for (int trial = 0; trial < 30; ++trial) {
      const auto p = testutil::pt2(static_cast<double>(rng.next_range(0, spec.box)),
                                   static_cast<double>(rng.next_range(0, spec.box)));
      if (b.instance.distance(p, root_pt) > b.instance.diameter_bound) continue;

      const auto covering = testutil::brute_force_pairs(b.instance, b.tree, p);
      int want = -1;
      double want_dist = 0;
      for (int n : covering) {
        const auto& node = b.tree.node(n);
        const double d = b.instance.distance(
            p, b.instance.facilities[static_cast<std::size_t>(node.facility_ordinal)].point);
        if (want == -1 || node.logradius < b.tree.node(want).logradius ||
            (node.logradius == b.tree.node(want).logradius && d < want_dist)) {
          want = n;
          want_dist = d;
        }
      }
      CHECK(home_pair(b.instance, b.tree, p).node == want);
    }
  }
}

TEST_CASE("enumerate_areas on the line instance") {
  const auto b = testutil::build_instance(testutil::line_instance());
  const std::vector<PointCoord> universe = {testutil::pt1(2), testutil::pt1(29)};
  const auto areas = enumerate_areas(b.instance, b.tree, universe);

  auto members = [&](int logradius, FacilityId facility) {
    return areas[static_cast<std::size_t>(b.tree.find_node(logradius, facility))].members;
  };
  CHECK(members(0, 0) == std::vector<int>{0});
  CHECK(members(0, 30) == std::vector<int>{1});
  CHECK(members(1, 0) == std::vector<int>{0});
  CHECK(members(1, 30) == std::vector<int>{1});
  CHECK(members(2, 0) == std::vector<int>{0, 1});
  CHECK(members(3, 0) == std::vector<int>{0, 1});
}

TEST_CASE("empty universe gives empty areas") {
  const auto b = testutil::build_instance(testutil::line_instance());
  for (const auto& area : enumerate_areas(b.instance, b.tree, {})) {
    CHECK(area.members.empty());
  }
}

namespace {

void check_laminarity(const testutil::BuiltInstance& b, const std::vector<PointCoord>& universe) {
  const auto areas = enumerate_areas(b.instance, b.tree, universe);

  // containment: every member within 7*5^r of the pair facility
  for (const auto& area : areas) {
    const auto& node = b.tree.node(area.node);
    for (int m : area.members) {
      CHECK(b.instance.distance(
                universe[static_cast<std::size_t>(m)],
                b.instance.facilities[static_cast<std::size_t>(node.facility_ordinal)].point) <=
            7.0 * static_cast<double>(pow5(node.logradius)));
    }
  }

  // Laminar: any two areas are disjoint or nested, nesting follows ancestry,
  // and same-logradius areas never overlap.
  for (std::size_t a = 0; a < areas.size(); ++a) {
    const std::set<int> sa(areas[a].members.begin(), areas[a].members.end());
    for (std::size_t c = a + 1; c < areas.size(); ++c) {
      const std::set<int> sc(areas[c].members.begin(), areas[c].members.end());
      std::size_t common = 0;
      for (int m : sc) common += sa.count(m);
      if (common == 0) continue;
      const int na = static_cast<int>(a);
      const int nc = static_cast<int>(c);
      CHECK(b.tree.node(na).logradius != b.tree.node(nc).logradius);
      if (common == sc.size() && b.tree.is_ancestor_or_self(na, nc)) continue;
      if (common == sa.size() && b.tree.is_ancestor_or_self(nc, na)) continue;
      FAIL("areas ", a, " and ", c, " overlap without nesting");
    }
  }

  // Equivalence with the level-by-level Voronoi construction.
  const auto voronoi = testutil::voronoi_areas(b.instance, b.tree, universe);
  REQUIRE(voronoi.size() == areas.size());
  for (std::size_t i = 0; i < areas.size(); ++i) {
    CHECK(areas[i].members == voronoi[i].members);
  }
}

}  // namespace

TEST_CASE("areas form a laminar family matching the voronoi construction") {
  for (std::uint64_t seed = 60; seed <= 70; ++seed) {
    WorkloadSpec spec;
    spec.seed = seed;
    spec.metric = seed % 3 == 0 ? "grid" : "euclidean2";
    spec.facilities = 2 + static_cast<int>(seed % 8);
    spec.box = 40 + static_cast<std::int64_t>(seed % 5) * 20;
    const auto b = testutil::build_instance(testutil::gen_instance(spec));

    std::vector<PointCoord> universe;
    for (const auto& f : b.instance.facilities) universe.push_back(f.point);
    Xorshift64Star rng(seed);
    if (b.instance.kind == MetricKind::Euclidean) {
      for (int i = 0; i < 25; ++i) {
        PointCoord p = b.instance.dim == 1
                           ? testutil::pt1(static_cast<double>(rng.next_range(0, spec.box)))
                           : testutil::pt2(static_cast<double>(rng.next_range(0, spec.box)),
                                           static_cast<double>(rng.next_range(0, spec.box)));
        const auto& root_pt = b.instance
                                  .facilities[static_cast<std::size_t>(
                                      b.tree.node(b.tree.root).facility_ordinal)]
                                  .point;
        if (b.instance.distance(p, root_pt) <= b.instance.diameter_bound) universe.push_back(p);
      }
    } else {
      for (std::int64_t v : b.instance.vertex_ids) universe.push_back(PointCoord::at(v));
    }
    check_laminarity(b, universe);
  }
}
