#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "holo/geometry.hpp"

namespace holo {

struct LabelGrid {
  Grid geometry;
  std::vector<int> labels;  // 0 = unbounded component, -1 = compact
};

struct Component {
  bool bounded = false;
  Complex witness;
  // Exact representation: inside `boundary` (if any) and outside every `excluded` curve.
  std::optional<Polyline> boundary;
  std::vector<Polyline> excluded;
  Box boundary_box = Box::empty();
  // Raster representation.
  std::shared_ptr<const LabelGrid> raster;
  int label = 0;

  bool contains(Complex z) const;
  Grid approx_region(const Box& box, int resolution) const;
};

// Faces and pieces that are simple and pairwise disjoint are handled exactly;
// anything else goes through the raster backend with resolution doubling.
std::vector<Component> complement_components(const PolyCompact& k, int resolution = 256);
int hole_count(const PolyCompact& k, int resolution = 256);

PolyCompact polynomial_hull(const PolyCompact& k);

struct OmegaConvexity {
  bool yes = false;
  std::optional<Complex> offending_hole;
};

// Returns a point witnessing K ⊄ Ω, if any.
std::optional<Complex> containment_violation(const PolyCompact& k, const Domain& omega);
// Points of ℂ∖Ω used to decide whether a hole meets the complement of Ω.
std::vector<Complex> complement_witnesses(const Domain& omega);

OmegaConvexity is_omega_convex(const PolyCompact& k, const Domain& omega);
bool is_omega_connected(const PolyCompact& k, const Domain& omega);

struct Membership {
  bool yes = false;
  std::vector<std::string> reasons;
};
Membership in_M_omega(const PolyCompact& k, const Domain& omega);

enum class UnionCase { Case1, Case2, Case3, NotConvex };
const char* to_string(UnionCase c);

struct UnionClass {
  UnionCase label = UnionCase::NotConvex;
  std::optional<Complex> hole_witness;  // witness of O (Case2) or O' (Case3)
};
UnionClass classify_union(const PolyCompact& l, const PolyCompact& l2, const Domain& omega);

std::vector<double> default_margins(int count);
std::vector<PolyCompact> exhaustion(const Domain& omega, int count,
                                    const std::vector<double>& margins = {});

std::vector<PolyCompact> thin_compact_family(const std::vector<Polyline>& g, int n);

// Convex hull of points grown by `radius` with round joins, counterclockwise.
Polyline rounded_hull(std::vector<Complex> points, double radius, int resolution = kCurveResolution);

}  // namespace holo
