#pragma once

#include <vector>

#include "holo/geometry.hpp"

// Independent raster cross-check of hole structure. Shares only the value
// types with the library; filling, curve marking and labelling are separate.
namespace holo::oracle {

struct Report {
  int holes = 0;
  // Per hole: whether it contains a point of ℂ∖Ω (only filled when a domain is given).
  std::vector<bool> hole_meets_complement;
  bool omega_convex = true;
  long filled_cells = 0;
};

Report analyse(const PolyCompact& k, const Domain* omega = nullptr, int resolution = 1024);

}  // namespace holo::oracle
