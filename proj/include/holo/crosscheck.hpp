#pragma once

#include <random>

#include "holo/topology.hpp"

// Library predicates against the independent raster oracle.
namespace holo {

// One to three disjoint faces (discs, annuli, polygons with a hole) inside omega.
// Annuli are sometimes centred on an obstacle so both convexity verdicts occur.
PolyCompact random_fat_compact(std::mt19937_64& rng, const Domain& omega, int resolution = 128);

struct CrossCheck {
  int holes_library = 0, holes_oracle = 0;
  bool convex_library = false, convex_oracle = false;
  bool hull_idempotent = false;

  bool agree() const {
    return holes_library == holes_oracle && convex_library == convex_oracle && hull_idempotent;
  }
};
CrossCheck cross_check(const PolyCompact& k, const Domain& omega, int resolution = 1024);

// classify_union's convex/not-convex verdict against the oracle on a ∪ b.
bool union_agrees(const PolyCompact& a, const PolyCompact& b, const Domain& omega, int resolution = 1024);

}  // namespace holo
