#include <doctest.h>

#include "holo/oracle.hpp"
#include "holo/topology.hpp"

using namespace holo;

namespace {

Domain disc_domain(double r = 1) {
  Domain d;
  d.outer = circle(0, r, 256);
  return d;
}

Domain punctured_plane(std::vector<Complex> points = {0}) {
  Domain d;
  for (Complex p : points) d.obstacles.push_back(Obstacle::at(p));
  return d;
}

Domain annulus_domain() {
  Domain d;
  d.outer = circle(0, 4, 256);
  d.obstacles.push_back(Obstacle::fat(disc(0, 2, 256)));
  return d;
}

}  // namespace

TEST_CASE("complement_components examples") {
  auto ann = complement_components(PolyCompact::fat({annulus(0, 1, 2)}));
  REQUIRE(ann.size() == 2);
  CHECK(ann[1].bounded);
  CHECK(ann[1].contains(0));
  CHECK(std::abs(ann[1].witness) < 1);

  CHECK(hole_count(PolyCompact::thin({arc(0, 1, 0, kPi / 2)})) == 0);

  PolyCompact nested = PolyCompact::fat({annulus(0, 1, 2), annulus(0, 3, 4)});
  CHECK(hole_count(nested) == 2);
  CHECK(oracle::analyse(nested).holes == 2);
}

TEST_CASE("raster backend handles touching thin curves") {
  // Two circles tangent at a point: not a simple configuration.
  PolyCompact tangent = PolyCompact::thin({circle(0, 1, 256), circle(0.5, 0.5, 256)});
  CHECK_FALSE(is_simple_configuration(tangent));
  CHECK(hole_count(tangent) == 2);
}

TEST_CASE("polynomial_hull examples") {
  PolyCompact h = polynomial_hull(PolyCompact::fat({annulus(0, 1, 2)}));
  REQUIRE(h.faces.size() == 1);
  CHECK(h.faces[0].holes.empty());
  CHECK(signed_area(h.faces[0].outer) == doctest::Approx(signed_area(circle(0, 2))));

  PolyCompact d = PolyCompact::fat({disc(0, 1)});
  CHECK(polynomial_hull(d).faces.size() == 1);

  PolyCompact two = PolyCompact::fat({annulus(0, 1, 2), annulus(6, 1, 2)});
  PolyCompact h2 = polynomial_hull(two);
  CHECK(h2.faces.size() == 2);
  CHECK(oracle::analyse(h2).holes == 0);

  PolyCompact closed = PolyCompact::thin({circle(0, 1)});
  PolyCompact hc = polynomial_hull(closed);
  CHECK(hc.faces.size() == 1);
  PolyCompact open = PolyCompact::thin({arc(0, 1, 0, 1)});
  CHECK(polynomial_hull(open).pieces.size() == 1);
}

TEST_CASE("is_omega_convex examples") {
  PolyCompact k = PolyCompact::fat({annulus(0, 0.25, 0.5)});
  CHECK_FALSE(is_omega_convex(k, disc_domain()).yes);
  CHECK(is_omega_convex(k, punctured_plane()).yes);
  CHECK_THROWS_AS(is_omega_convex(PolyCompact::fat({disc(0, 2)}), disc_domain()), Error);
}

TEST_CASE("is_omega_connected examples") {
  CHECK(is_omega_connected(PolyCompact::fat({disc(0.3, 0.2)}), disc_domain()));
  Domain ann = annulus_domain();
  CHECK_FALSE(is_omega_connected(PolyCompact::fat({disc(3, 0.5)}), ann));
  PolyCompact loop = PolyCompact::thin({circle(0, 3)});
  CHECK(is_omega_connected(loop, ann));
  CHECK(oracle::analyse(loop).holes == 1);
  CHECK_THROWS_AS(is_omega_connected(PolyCompact::fat({disc(3, 0.2), disc(-3, 0.2)}), ann), Error);
}

TEST_CASE("in_M_omega examples") {
  CHECK(in_M_omega(PolyCompact::fat({disc(0, 0.5)}), disc_domain()).yes);
  Domain ann = annulus_domain();
  Membership m = in_M_omega(PolyCompact::fat({disc(3, 0.5)}), ann);
  CHECK_FALSE(m.yes);
  REQUIRE(m.reasons.size() == 1);
  CHECK(m.reasons[0] == "omega_connected");
  CHECK(in_M_omega(PolyCompact::fat({annulus(0, 2.5, 3.5)}), ann).yes);
}

TEST_CASE("classify_union examples") {
  Domain plane;
  CHECK(classify_union(PolyCompact::fat({disc(0, 1)}), PolyCompact::fat({disc(3, 1)}), plane).label ==
        UnionCase::Case1);
  PolyCompact l = PolyCompact::fat({annulus(0, 1, 2)}), l2 = PolyCompact::fat({annulus(0, 0.1, 0.2)});
  CHECK(classify_union(l, l2, punctured_plane()).label == UnionCase::NotConvex);
  UnionClass c = classify_union(l, l2, punctured_plane({0, 0.5}));
  CHECK(c.label == UnionCase::Case2);
  CHECK(classify_union(l2, l, punctured_plane({0, 0.5})).label == UnionCase::Case3);
}

TEST_CASE("exhaustion examples") {
  auto ks = exhaustion(disc_domain(), 3);
  REQUIRE(ks.size() == 3);
  const double radii[] = {0.5, 0.75, 0.9};
  for (int i = 0; i < 3; ++i) {
    CHECK(ks[i].faces[0].holes.empty());
    CHECK(std::abs(ks[i].faces[0].outer.vertices[0]) == doctest::Approx(radii[i]).epsilon(1e-4));
    CHECK(in_M_omega(ks[i], disc_domain()).yes);
  }

  Domain ann = annulus_domain();
  for (const PolyCompact& k : exhaustion(ann, 4)) {
    CHECK(in_M_omega(k, ann).yes);
    CHECK(k.faces[0].holes.size() == 1);
  }

  auto punct = exhaustion(punctured_plane(), 4);
  for (std::size_t i = 1; i < punct.size(); ++i) {
    const double r_prev = std::abs(punct[i - 1].faces[0].holes[0].vertices[0]);
    const double r = std::abs(punct[i].faces[0].holes[0].vertices[0]);
    const double big_prev = std::abs(punct[i - 1].faces[0].outer.vertices[0]);
    const double big = std::abs(punct[i].faces[0].outer.vertices[0]);
    CHECK(r < r_prev);
    CHECK(big > big_prev);
  }
}

TEST_CASE("exhaustion covers probe compacts eventually") {
  Domain ann = annulus_domain();
  auto ks = exhaustion(ann, 6);
  PolyCompact probe = PolyCompact::fat({annulus(0, 2.2, 3.8)});
  bool covered = false;
  for (const PolyCompact& k : ks) {
    bool all_in = true;
    for (const Polyline* c : probe.curves())
      for (const Complex& v : c->vertices)
        if (point_locate(k, v, 1e-12) != Location::Inside) all_in = false;
    covered = covered || all_in;
  }
  CHECK(covered);
}

TEST_CASE("thin_compact_family examples") {
  auto fam = thin_compact_family({circle(0, 1)}, 1);
  REQUIRE(fam.size() == 1);
  REQUIRE(fam[0].pieces.size() == 1);
  CHECK_FALSE(fam[0].pieces[0].closed);
  CHECK(fam[0].pieces[0].length() > 0.7 * 2 * kPi);
  CHECK(hole_count(fam[0]) == 0);

  Polyline a = arc(0, 1, 0, 2);
  for (const PolyCompact& k : thin_compact_family({a}, 3)) CHECK(k.pieces[0].vertices == a.vertices);

  auto two = thin_compact_family({circle(0, 1), circle(5, 1)}, 4);
  REQUIRE(two.size() == 4);
  double prev_gap = 10;
  for (const PolyCompact& k : two) {
    CHECK(k.pieces.size() == 2);
    CHECK(hole_count(k) == 0);
    const double gap = 2 * kPi - k.pieces[0].length();
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("union of thin compacts meeting in one point keeps connected complement") {
  for (int k = 1; k <= 6; ++k) {
    const double t = 0.3 * k;
    PolyCompact a = PolyCompact::thin({arc(0, 1, 0, t)});
    PolyCompact b = PolyCompact::thin({segment(std::polar(1.0, t), std::polar(2.0, t))});
    CHECK(hole_count(unite(a, b)) == 0);
  }
}
