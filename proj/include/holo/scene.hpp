#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holo/construct.hpp"

namespace holo {

Domain plane_domain();
Domain disc_domain(Complex c, double r, int resolution = kCurveResolution);
Domain annulus_domain(Complex c, double r_in, double r_out, int resolution = kCurveResolution);
// Complement of a closed disc.
Domain exterior_domain(Complex c, double r, int resolution = kCurveResolution);

// ℂ minus {0} and the closed discs D_n centred at 3·2^{-2n-2} with radius 2^{-2n-2}, n = 1..cutoff.
Domain ladder_omega(int cutoff);
// ℂ minus {0} and closed discs B_n outside the unit disc, n = 1..cutoff.
Domain outside_discs_omega(int cutoff);
// The obstacle generators by name ("D_n", "B_n").
std::vector<Obstacle> generate_obstacles(const std::string& generator, int cutoff);

// A scene: named domains, one map family, optional probe compacts, config.
struct Scene {
  std::string name;
  std::map<std::string, Domain> domains;
  std::map<std::string, std::vector<Polyline>> curves;  // Thin G as Jordan curves
  std::map<std::string, PolyCompact> compacts;
  MapFamily map;
  std::string g;      // name of G (a domain or a curve set)
  std::string omega;  // name of omega
  bool whole = false;  // thin G: universality for the family {G}
  CertConfig config;
  ConstructConfig construct;
  std::vector<Target> targets;
  int curve_resolution = kCurveResolution;
  std::vector<std::string> flags;  // presumed-typo and modelling notes echoed into reports

  bool thin_g() const { return curves.count(g) > 0; }
  const Domain& omega_domain() const;
  const Domain& g_domain() const;
  const std::vector<Polyline>& g_curves() const;
};

}  // namespace holo
