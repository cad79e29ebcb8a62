#pragma once

// Exact ground-truth solvers for small instances. These never approximate:
// sizes beyond the guards are a hard error.

#include <cstdint>
#include <vector>

#include "radii/dynamic.hpp"
#include "radii/metric.hpp"
#include "radii/preprocess.hpp"

namespace radii {

inline constexpr std::size_t kMaxExhaustivePairs = 20;
inline constexpr std::size_t kMaxExhaustiveClients = 12;
inline constexpr std::size_t kMaxExhaustiveFacilities = 8;

struct RestrictedCover {
  std::vector<SolutionPair> pairs;
  std::int64_t cost = 0;
};

// Minimum-cost subset of the pair set whose areas cover every client, by
// subset enumeration over all 2^|Pi| choices. Guard: |Pi| <= 20.
RestrictedCover restricted_exhaustive(const Instance& inst, const PairTree& tree,
                                      const std::vector<PointCoord>& clients);

struct Ball {
  int facility_ordinal = -1;
  FacilityId facility = 0;
  double radius = 0;
};

struct BallCover {
  std::vector<Ball> balls;
  double cost = 0;
};

// Exact unrestricted optimum over covers by balls B(j,R); it suffices to try
// R = 0 and R = d(j, client) for each client, since an optimal ball shrinks
// onto its farthest served client. Guards: <= 12 clients, <= 8 facilities.
BallCover unrestricted_opt(const Instance& inst, const std::vector<PointCoord>& clients);

// The power-of-5 normalization applied to a given cover: radii raised to at
// least the opening cost and rounded up to powers of 5; if any ball exceeds W
// in cost or radius, the whole cover collapses to one W-ball at the cheapest
// facility. Costs at most 10x the input cover.
BallCover normalize_to_power_of_five(const Instance& inst, const BallCover& cover);

struct RatioReport {
  std::int64_t restricted_cost = 0;
  double opt_cost = 0;
  double ratio = 1.0;  // restricted / opt, 1 when both are zero
  double bound = 0;    // bound_factor * 2^{2*kappa}; 0 when no kappa hint
  bool within_bound = true;
};

RatioReport ratio_report(const Instance& inst, const PairTree& tree,
                         const std::vector<PointCoord>& clients, double bound_factor = 80.0);

}  // namespace radii
