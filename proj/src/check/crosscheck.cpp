#include "holo/crosscheck.hpp"

#include <cmath>

#include "holo/oracle.hpp"

namespace holo {

namespace {

double area(const PolyCompact& k) {
  double a = 0;
  for (const Face& f : k.faces) {
    a += std::abs(signed_area(f.outer));
    for (const Polyline& h : f.holes) a -= std::abs(signed_area(h));
  }
  return a;
}

Box sample_box(const Domain& omega) {
  if (omega.outer) return omega.outer->bbox();
  Box b = Box::empty();
  for (const Obstacle& o : omega.obstacles) b.add(o.bbox());
  if (b.is_empty()) b.add(Complex(0));
  return b.expanded(2);
}

Polyline star(Complex c, double r, std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> wobble(0.75, 1.0);
  std::vector<Complex> v(n);
  for (int i = 0; i < n; ++i) v[i] = c + std::polar(r * wobble(rng), 2 * kPi * i / n);
  return Polyline(std::move(v), true);
}

}  // namespace

PolyCompact random_fat_compact(std::mt19937_64& rng, const Domain& omega, int resolution) {
  const Box box = sample_box(omega);
  const double scale = std::max(box.width(), box.height());
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> count(1, 3), kind(0, 3);
  const int want = count(rng);
  PolyCompact k;
  for (int attempt = 0; attempt < 400 && static_cast<int>(k.faces.size()) < want; ++attempt) {
    Complex c{box.xmin + u(rng) * box.width(), box.ymin + u(rng) * box.height()};
    const double r = scale * (0.04 + 0.12 * u(rng));
    Face f;
    switch (kind(rng)) {
      case 0: f = disc(c, r, resolution); break;
      case 1: f = annulus(c, 0.5 * r, r, resolution); break;
      case 2: f = make_face(star(c, r, rng, 12), {circle(c, 0.3 * r, resolution / 2)}); break;
      default: {
        if (omega.obstacles.empty()) {
          f = annulus(c, 0.6 * r, r, resolution);
          break;
        }
        const Obstacle& o = omega.obstacles[static_cast<std::size_t>(u(rng) * omega.obstacles.size()) %
                                            omega.obstacles.size()];
        const Box ob = o.bbox();
        c = o.site();
        const double inner = 0.5 * ob.diameter() + scale * (0.01 + 0.03 * u(rng));
        f = annulus(c, inner, inner * (1.3 + 0.5 * u(rng)), resolution);
      }
    }
    const PolyCompact candidate = PolyCompact::fat({f});
    if (containment_violation(candidate, omega)) continue;
    if (!k.empty() && set_distance(candidate, k) < 0.01 * scale) continue;
    // Keep faces disjoint and not nested inside one another's holes or outers.
    bool nested = false;
    for (const Face& g : k.faces)
      if (inside_curve(g.outer, f.outer.vertices.front()) || inside_curve(f.outer, g.outer.vertices.front()))
        nested = true;
    if (nested && u(rng) < 0.5) continue;
    k.faces.push_back(f);
  }
  if (k.empty()) throw Error(ErrorKind::Construction, "could not place a random compact inside omega");
  return k;
}

CrossCheck cross_check(const PolyCompact& k, const Domain& omega, int resolution) {
  CrossCheck c;
  c.holes_library = hole_count(k);
  c.convex_library = is_omega_convex(k, omega).yes;
  const oracle::Report r = oracle::analyse(k, &omega, resolution);
  c.holes_oracle = r.holes;
  c.convex_oracle = r.omega_convex;
  const PolyCompact h1 = polynomial_hull(k);
  const PolyCompact h2 = polynomial_hull(h1);
  c.hull_idempotent = hole_count(h1) == 0 && oracle::analyse(h1, nullptr, resolution).holes == 0 &&
                      std::abs(area(h2) - area(h1)) <= 1e-9 * std::max(1.0, area(h1));
  return c;
}

bool union_agrees(const PolyCompact& a, const PolyCompact& b, const Domain& omega, int resolution) {
  const bool lib = classify_union(a, b, omega).label != UnionCase::NotConvex;
  return lib == oracle::analyse(unite(a, b), &omega, resolution).omega_convex;
}

}  // namespace holo
