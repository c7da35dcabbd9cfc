#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holo/analysis.hpp"
#include "holo/expression.hpp"

namespace holo {

enum class MapKind { Affine, RadialScale, PowerRadial, AnnulusScale, TangentCircles, NormalOffset, JordanRadial, VerticalShift };
const char* to_string(MapKind k);
MapKind map_kind_from_string(const std::string& s);

// Indexed family n -> phi_n. Parameter rules are expressions in n.
struct MapFamily {
  MapKind kind = MapKind::Affine;
  Expression a, b;       // Affine: a(n) z + b(n)
  Expression r;          // RadialScale, PowerRadial, NormalOffset, JordanRadial; AnnulusScale factor c(n); VerticalShift step
  int k = 2;             // PowerRadial exponent
  bool k_is_n = false;   // PowerRadial with k = n
  Expression omega;      // JordanRadial conformal surrogate, an expression in z
  std::vector<Polyline> boundary;  // NormalOffset: boundary curves with the domain on the left
  int first_index = 0;   // smallest admissible n

  static MapFamily affine(Expression a, Expression b);
  static MapFamily radial_scale(Expression r);
  static MapFamily power_radial(Expression r, int k);
  static MapFamily power_radial_n(Expression r);
  static MapFamily annulus_scale();
  static MapFamily tangent_circles();
  static MapFamily normal_offset(Expression r, std::vector<Polyline> boundary);
  static MapFamily jordan_radial(Expression omega, Expression r);
  static MapFamily vertical_shift();

  Complex apply(int n, Complex z) const;
  bool analytic() const;
  // True when phi_n is given in closed form with a closed-form inverse.
  bool closed_form_inverse() const;
  std::string describe() const;
};

// Closed-form verdicts for affine maps, even powers on full circles and the
// tangent-circles family; a sampled collision search otherwise.
Injectivity injectivity_probe(const MapFamily& phi, int n, const PolyCompact& k, int samples = 1024);

PolyCompact image_of(const MapFamily& phi, int n, const PolyCompact& k);
// Image of one polyline with adaptive refinement where the map stretches.
Polyline image_of(const MapFamily& phi, int n, const Polyline& p);

Complex inverse_on(const MapFamily& phi, int n, const PolyCompact& k, Complex w, double tol = 1e-9);

struct AdhocPair {
  Domain omega;
  MapFamily phi;
  Complex translation;
  int step = 0;  // phi_n = 2^{-step n} (z + translation)
  std::vector<PolyCompact> images;
};

// Translation plus geometric scaling that places successive images of
// closure(G) in disjoint annuli around 0, with one obstacle disc per hole.
AdhocPair adhoc_pair_for_bounded_G(const Domain& g, int n_max);

// Closure of a bounded domain as a Fat compact (fat obstacles become holes).
PolyCompact closure_compact(const Domain& g);

}  // namespace holo
