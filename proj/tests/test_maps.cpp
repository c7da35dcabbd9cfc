#include <doctest.h>

#include <random>

#include "holo/maps.hpp"

using namespace holo;

namespace {

Domain disc_domain(double r) {
  Domain d;
  d.outer = circle(0, r);
  return d;
}

bool on_circle(Complex z, Complex c, double r, double tol) { return std::abs(std::abs(z - c) - r) <= tol; }

}  // namespace

TEST_CASE("expressions") {
  CHECK(std::abs(Expression("1 - 2^(-n)").at_n(3) - 0.875) < 1e-15);
  CHECK(std::abs(Expression("3*2^(-2n-2)").at_n(1) - 3.0 / 16) < 1e-15);
  CHECK(std::abs(Expression("2n+1").at_n(4) - 9.0) < 1e-15);
  CHECK(std::abs(Expression("conj(z)/0.81")(Complex(0, 0.9)) - Complex(0, -0.9 / 0.81)) < 1e-15);
  CHECK(std::abs(Expression("re(z) + i*im(z)^2")(Complex(2, 3)) - Complex(2, 9)) < 1e-15);
  CHECK(std::abs(Expression::constant(Complex(1.5, -0.25)).at_n(0) - Complex(1.5, -0.25)) < 1e-15);
  CHECK(Expression("z + 0.1z^2").holomorphic());
  CHECK_FALSE(Expression("conj(z)").holomorphic());
  CHECK(Expression("conj(2)*z").holomorphic());
  CHECK_THROWS_AS(Expression("foo(z)"), Error);
  CHECK_THROWS_AS(Expression("(1+2"), Error);
}

TEST_CASE("apply examples") {
  CHECK(std::abs(MapFamily::annulus_scale().apply(1, 3) - 0.375) < 1e-15);
  CHECK(std::abs(MapFamily::radial_scale(Expression("1-1/(n+2)")).apply(0, 1) - 0.5) < 1e-15);
  const MapFamily tc = MapFamily::tangent_circles();
  CHECK(std::abs(tc.apply(2, 1)) < 1e-15);
  CHECK_THROWS_AS(tc.apply(2, 0.5), Error);
  CHECK_THROWS_AS(tc.apply(1, 1), Error);
  // Continuity at the breakpoints e^{+-i pi/n}.
  for (int n : {2, 3, 7, 40}) {
    const double a = kPi / n;
    CHECK(std::abs(tc.apply(n, std::polar(1.0, a - 1e-12)) - tc.apply(n, std::polar(1.0, a + 1e-12))) < 1e-9);
    CHECK(std::abs(tc.apply(n, std::polar(1.0, -a - 1e-12)) - tc.apply(n, std::polar(1.0, -a + 1e-12))) < 1e-9);
  }
}

TEST_CASE("image_of examples") {
  MapFamily dbl = MapFamily::affine(Expression("2"), Expression("0"));
  PolyCompact sq = PolyCompact::fat({polygon_face({{0, 0}, {1, 0}, {1, 1}, {0, 1}})});
  PolyCompact img = image_of(dbl, 0, sq);
  REQUIRE(img.faces.size() == 1);
  CHECK(signed_area(img.faces[0].outer) == doctest::Approx(4.0));
  CHECK(img.bbox().xmax == doctest::Approx(2.0));

  PolyCompact ann = PolyCompact::fat({annulus(0, 2.5, 3.5)});
  PolyCompact a1 = image_of(MapFamily::annulus_scale(), 1, ann);
  REQUIRE(a1.faces.size() == 1);
  REQUIRE(a1.faces[0].holes.size() == 1);
  for (Complex v : a1.faces[0].outer.vertices) CHECK(std::abs(v) == doctest::Approx(0.4375));
  for (Complex v : a1.faces[0].holes[0].vertices) CHECK(std::abs(v) == doctest::Approx(0.3125));

  const int n = 3;
  PolyCompact tc = image_of(MapFamily::tangent_circles(), n, PolyCompact::thin({circle(0, 1)}));
  REQUIRE(tc.pieces.size() == 1);
  CHECK(tc.pieces[0].closed);
  const Complex small_c = 1 - 1.5 / n;
  bool touches = false;
  for (Complex w : tc.pieces[0].vertices) {
    const bool big = on_circle(w, 0, 1 - 1.0 / n, 1e-3), small = on_circle(w, small_c, 0.5 / n, 1e-3);
    CHECK((big || small));
    touches = touches || std::abs(w - (1 - 1.0 / n)) < 1e-3;
  }
  CHECK(touches);
  CHECK_FALSE(is_simple(tc.pieces[0]));
  // The small circle is covered once: its image winds once about its centre.
  Polyline small_arc = image_of(MapFamily::tangent_circles(), n, arc(0, 1, -kPi / n, kPi / n));
  CHECK(small_arc.closed);
}

TEST_CASE("image_of rejects non-injective analytic maps on Fat compacts") {
  PolyCompact ann = PolyCompact::fat({annulus(0, 1, 2)});
  CHECK_THROWS_AS(image_of(MapFamily::power_radial(Expression("1"), 2), 0, ann), Error);
  CHECK_THROWS_AS(image_of(MapFamily::tangent_circles(), 2, PolyCompact::fat({disc(0, 1)})), Error);
}

TEST_CASE("inverse_on examples") {
  MapFamily aff = MapFamily::affine(Expression("2"), Expression("1"));
  CHECK(std::abs(inverse_on(aff, 0, PolyCompact::fat({disc(0, 2)}), 3) - 1.0) < 1e-12);
  CHECK_THROWS_AS(inverse_on(aff, 0, PolyCompact::fat({disc(0, 0.5)}), 3), Error);

  PolyCompact unit = PolyCompact::thin({circle(0, 1)});
  CHECK(std::abs(inverse_on(MapFamily::radial_scale(Expression("0.9")), 0, unit, Complex(0, 0.9)) - Complex(0, 1)) <
        1e-9);

  MapFamily jr = MapFamily::jordan_radial(Expression("z + 0.1z^2"), Expression("0.9"));
  const Complex w = 0.9 + 0.1 * 0.81;
  CHECK(std::abs(jr.apply(0, 1) - w) < 1e-15);
  CHECK(std::abs(inverse_on(jr, 0, unit, w) - 1.0) < 1e-6);
}

TEST_CASE("apply and inverse_on round trip") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ang(0, 2 * kPi);
  std::uniform_int_distribution<int> idx(1, 6);
  PolyCompact unit = PolyCompact::thin({circle(0, 1)});
  PolyCompact disc2 = PolyCompact::fat({disc(0, 2)});
  struct Case {
    MapFamily phi;
    PolyCompact k;
    int probes;
  };
  std::vector<Case> cases{
      {MapFamily::affine(Expression("1/(n+1)"), Expression("n")), disc2, 100},
      {MapFamily::radial_scale(Expression("1-2^(-n)")), unit, 100},
      {MapFamily::annulus_scale(), disc2, 100},
      {MapFamily::vertical_shift(), disc2, 100},
      {MapFamily::jordan_radial(Expression("z + 0.1z^2"), Expression("1-2^(-n)")), unit, 25},
      {MapFamily::normal_offset(Expression("1-2^(-n-3)"), {circle(0, 1, 128)}), PolyCompact::thin({circle(0, 1, 128)}), 25},
  };
  for (const Case& c : cases) {
    for (int i = 0; i < c.probes; ++i) {
      const int n = std::max(idx(rng), c.phi.first_index);
      const Complex z = c.k.faces.empty() ? c.k.pieces[0].at(ang(rng) / (2 * kPi)) : std::polar(1.5, ang(rng));
      const Complex w = c.phi.apply(n, z);
      const Complex back = inverse_on(c.phi, n, c.k, w);
      CHECK(std::abs(c.phi.apply(n, back) - w) <= 1e-9 * std::max(1.0, std::abs(w)));
    }
  }
}

TEST_CASE("image_of commutes with unions") {
  MapFamily jr = MapFamily::jordan_radial(Expression("z + 0.1z^2"), Expression("0.8"));
  PolyCompact a = PolyCompact::thin({arc(0, 1, 0, 1)}), b = PolyCompact::thin({arc(0, 1, 2, 3)});
  PolyCompact lhs = image_of(jr, 0, unite(a, b));
  PolyCompact ia = image_of(jr, 0, a), ib = image_of(jr, 0, b);
  REQUIRE(lhs.pieces.size() == 2);
  CHECK(lhs.pieces[0].vertices == ia.pieces[0].vertices);
  CHECK(lhs.pieces[1].vertices == ib.pieces[0].vertices);
}

TEST_CASE("annulus scaling lands in the prescribed annulus") {
  Domain g;
  g.outer = circle(0, 4);
  g.obstacles.push_back(Obstacle::fat(disc(0, 2)));
  const PolyCompact cl = closure_compact(g);
  for (int n = 1; n <= 8; ++n) {
    const double rn = std::pow(2.0, -2 * n), rprev = std::pow(2.0, -2 * (n - 1) - 1);
    const PolyCompact img = image_of(MapFamily::annulus_scale(), n, cl);
    for (const Polyline* c : img.curves())
      for (Complex v : c->vertices) {
        CHECK(std::abs(v) >= rn * (1 - 1e-12));
        CHECK(std::abs(v) <= rprev * (1 + 1e-12));
      }
  }
}

TEST_CASE("normal offset is injective once r_n is close to 1") {
  const Polyline ellipse = [] {
    std::vector<Complex> v;
    for (int k = 0; k < 200; ++k) v.push_back(Complex(2 * std::cos(2 * kPi * k / 200), std::sin(2 * kPi * k / 200)));
    return Polyline(v, true);
  }();
  for (const Polyline& b : {circle(0, 1, 128), ellipse}) {
    const MapFamily no = MapFamily::normal_offset(Expression("1-2^(-n)"), {b});
    for (int n = 4; n <= 8; ++n) {
      CHECK(no.r.at_n(n).real() >= 0.9);
      CHECK(injectivity_probe(no, n, PolyCompact::thin({b})).injective);
      // Inward offset: image points lie inside the boundary curve.
      CHECK(inside_curve(b, no.apply(n, b.vertices[0])));
    }
  }
}

TEST_CASE("injectivity verdicts for map families") {
  PolyCompact sq = PolyCompact::fat({polygon_face({{0, 0}, {1, 0}, {1, 1}, {0, 1}})});
  Injectivity aff = injectivity_probe(MapFamily::affine(Expression("2"), Expression("1")), 0, sq);
  CHECK(aff.injective);
  CHECK(aff.exact);

  Injectivity sq2 = injectivity_probe(MapFamily::power_radial(Expression("0.5"), 2), 0, PolyCompact::thin({circle(0, 1)}));
  REQUIRE_FALSE(sq2.injective);
  CHECK(sq2.exact);
  CHECK(std::abs(sq2.witness->first + sq2.witness->second) < 1e-12);

  // Tangent circles on an arc containing 1: the small circle touches the big one.
  const MapFamily tc = MapFamily::tangent_circles();
  for (int n : {3, 8}) {
    Injectivity t = injectivity_probe(tc, n, PolyCompact::thin({arc(0, 1, -kPi / 2, kPi / 2)}));
    REQUIRE_FALSE(t.injective);
    CHECK(std::abs(tc.apply(n, t.witness->first) - tc.apply(n, t.witness->second)) < 1e-6);
  }
  // Away from 1 the map is injective.
  CHECK(injectivity_probe(tc, 4, PolyCompact::thin({arc(0, 1, 1.0, 5.0)})).injective);
}

TEST_CASE("adhoc pair for bounded domains") {
  Domain unit = disc_domain(1);
  AdhocPair p = adhoc_pair_for_bounded_G(unit, 4);
  CHECK(p.omega.obstacles.size() == 1);
  CHECK(p.omega.truncation);
  for (const PolyCompact& img : p.images) {
    CHECK(hole_count(img) == 0);
    CHECK(point_locate(polynomial_hull(img), 0, 1e-12) == Location::Outside);
  }
  for (std::size_t i = 0; i + 1 < p.images.size(); ++i) CHECK(set_distance(p.images[i], p.images[i + 1]) > 0);

  Domain ann = disc_domain(2);
  ann.obstacles.push_back(Obstacle::fat(disc(0, 1)));
  AdhocPair q = adhoc_pair_for_bounded_G(ann, 3);
  CHECK(q.omega.obstacles.size() == 4);
  CHECK_NOTHROW(validate(q.omega));
  for (const PolyCompact& img : q.images) {
    CHECK(hole_count(img) == 1);
    CHECK(is_omega_convex(img, q.omega).yes);
  }
  CHECK(adhoc_pair_for_bounded_G(ann, 1).images.size() == 1);
}
