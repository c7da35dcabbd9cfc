#include "holo/scene.hpp"

#include <cmath>

namespace holo {

Domain plane_domain() { return Domain{}; }

Domain disc_domain(Complex c, double r, int resolution) {
  Domain d;
  d.outer = circle(c, r, resolution);
  return d;
}

Domain annulus_domain(Complex c, double r_in, double r_out, int resolution) {
  if (!(0 < r_in && r_in < r_out)) throw Error(ErrorKind::Validation, "annulus radii must satisfy 0 < r_in < r_out");
  Domain d;
  d.outer = circle(c, r_out, resolution);
  d.obstacles.push_back(Obstacle::fat(disc(c, r_in, resolution)));
  return d;
}

Domain exterior_domain(Complex c, double r, int resolution) {
  Domain d;
  d.obstacles.push_back(Obstacle::fat(disc(c, r, resolution)));
  return d;
}

std::vector<Obstacle> generate_obstacles(const std::string& generator, int cutoff) {
  if (cutoff < 1) throw Error(ErrorKind::Validation, "obstacle generator cutoff must be at least 1");
  std::vector<Obstacle> out;
  if (generator == "D_n") {
    for (int n = 1; n <= cutoff; ++n) {
      const double r = std::ldexp(1.0, -2 * n - 2);
      out.push_back(Obstacle::fat(disc(3 * r, r, 64)));
    }
  } else if (generator == "B_n") {
    // Disjoint closed discs on the positive real axis beyond |z| = 2.
    for (int n = 1; n <= cutoff; ++n) out.push_back(Obstacle::fat(disc(1.5 + n, 0.25, 64)));
  } else {
    throw Error(ErrorKind::Schema, "unknown obstacle generator '" + generator + "'");
  }
  return out;
}

namespace {

Domain punctured_with(const std::string& generator, int cutoff) {
  Domain d;
  d.obstacles.push_back(Obstacle::at(0));
  for (Obstacle& o : generate_obstacles(generator, cutoff)) d.obstacles.push_back(std::move(o));
  d.truncation = Truncation{generator, cutoff};
  return d;
}

}  // namespace

Domain ladder_omega(int cutoff) { return punctured_with("D_n", cutoff); }
Domain outside_discs_omega(int cutoff) { return punctured_with("B_n", cutoff); }

const Domain& Scene::omega_domain() const {
  auto it = domains.find(omega);
  if (it == domains.end()) throw Error(ErrorKind::Schema, "scene: omega '" + omega + "' is not a declared domain");
  return it->second;
}

const Domain& Scene::g_domain() const {
  auto it = domains.find(g);
  if (it == domains.end()) throw Error(ErrorKind::Schema, "scene: g '" + g + "' is not a declared domain");
  return it->second;
}

const std::vector<Polyline>& Scene::g_curves() const {
  auto it = curves.find(g);
  if (it == curves.end()) throw Error(ErrorKind::Schema, "scene: g '" + g + "' is not a declared curve set");
  return it->second;
}

}  // namespace holo
