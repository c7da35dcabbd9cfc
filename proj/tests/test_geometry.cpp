#include <doctest.h>

#include <random>

#include "holo/geometry.hpp"

using namespace holo;

namespace {

Face unit_square() { return polygon_face({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

}  // namespace

TEST_CASE("point_locate classifies interior, exterior and boundary") {
  PolyCompact sq = PolyCompact::fat({unit_square()});
  CHECK(point_locate(sq, {0.5, 0.5}, 1e-9) == Location::Inside);
  CHECK(point_locate(sq, {2, 0}, 1e-9) == Location::Outside);
  PolyCompact c = PolyCompact::thin({circle(0, 1, 256)});
  CHECK(point_locate(c, {1, 0}, 1e-9) == Location::Boundary);
  CHECK(point_locate(c, {0, 0}, 1e-9) == Location::Outside);
  CHECK_THROWS_AS(point_locate(sq, {0.5, 0.5}, 0.0), Error);
}

TEST_CASE("point_locate is stable under vertex rotation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  Polyline c = circle({0.1, -0.2}, 1.0, 64);
  Face a = make_face(c);
  for (int shift = 1; shift < 64; shift += 7) {
    Polyline rot = c;
    std::rotate(rot.vertices.begin(), rot.vertices.begin() + shift, rot.vertices.end());
    Face b = make_face(rot);
    for (int k = 0; k < 200; ++k) {
      Complex z{u(rng), u(rng)};
      CHECK(point_locate(a, z, 1e-9) == point_locate(b, z, 1e-9));
    }
  }
}

TEST_CASE("faces have the declared orientation") {
  Face f = make_face(reversed(circle(0, 2, 64)), {circle(0, 1, 64)});
  CHECK(signed_area(f.outer) > 0);
  CHECK(signed_area(f.holes[0]) < 0);
  CHECK(std::abs(signed_area(f.holes[0])) < std::abs(signed_area(f.outer)));
  CHECK_NOTHROW(validate(f));
}

TEST_CASE("validation rejects malformed geometry") {
  Polyline bowtie({{0, 0}, {1, 1}, {1, 0}, {0, 1}}, true);
  CHECK_FALSE(is_simple(bowtie));
  CHECK_THROWS_AS(validate(bowtie), Error);
  CHECK_THROWS_AS(validate(make_face(circle(0, 1, 32), {circle(3, 0.5, 32)})), Error);
  PolyCompact overlapping = PolyCompact::fat({disc(0, 1, 32), disc(0.5, 1, 32)});
  CHECK_THROWS_AS(validate(overlapping), Error);
  CHECK(is_simple(circle(0, 1, 256)));
  CHECK(is_simple(arc(0, 1, 0, kPi)));
}

TEST_CASE("set_distance examples") {
  PolyCompact a = PolyCompact::thin({circle(0, 1, 256)});
  PolyCompact b = PolyCompact::thin({circle(3, 1, 256)});
  CHECK(set_distance(a, b) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(set_distance(a, a) == 0.0);
  CHECK(set_distance(a, PolyCompact::thin({segment(2, 3)})) == doctest::Approx(1.0).epsilon(1e-12));
  // A piece inside a face meets it.
  CHECK(set_distance(PolyCompact::fat({disc(0, 2, 64)}), PolyCompact::thin({segment(0, 0.5)})) == 0.0);
}

TEST_CASE("set_distance is symmetric and satisfies the triangle inequality") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(-5, 5), rad(0.1, 1.0);
  std::vector<PolyCompact> corpus;
  for (int i = 0; i < 30; ++i) {
    if (i % 2)
      corpus.push_back(PolyCompact::fat({disc({pos(rng), pos(rng)}, rad(rng), 48)}));
    else
      corpus.push_back(PolyCompact::thin({segment({pos(rng), pos(rng)}, {pos(rng), pos(rng)})}));
  }
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      const double dij = set_distance(corpus[i], corpus[j]);
      CHECK(dij == doctest::Approx(set_distance(corpus[j], corpus[i])));
      // Distances between sets satisfy d(A,C) <= d(A,B) + diam(B) + d(B,C).
      for (std::size_t k = 0; k < corpus.size(); k += 7) {
        const double diam = corpus[j].bbox().diameter();
        CHECK(set_distance(corpus[i], corpus[k]) <= dij + diam + set_distance(corpus[j], corpus[k]) + 1e-12);
      }
    }
}

TEST_CASE("rasterize examples") {
  Grid g = rasterize(PolyCompact::fat({unit_square()}), Box{-2, -2, 2, 2}, 4);
  CHECK(g.count() == 1);
  CHECK(g.at(2, 2) == 1);

  Grid ann = rasterize(PolyCompact::fat({annulus(0, 1, 2, 256)}), Box{-3, -3, 3, 3}, 64);
  int ix, iy;
  REQUIRE(ann.locate({0.01, 0.01}, ix, iy));
  CHECK(ann.at(ix, iy) == 0);
  REQUIRE(ann.locate({1.5, 0.01}, ix, iy));
  CHECK(ann.at(ix, iy) == 1);

  Grid thin = rasterize(PolyCompact::thin({arc(0, 1, 0, kPi / 2)}), Box{-2, -2, 2, 2}, 64);
  for (int y = 0; y < thin.ny; ++y)
    for (int x = 0; x < thin.nx; ++x)
      if (thin.at(x, y)) CHECK(std::abs(std::abs(thin.centre(x, y)) - 1.0) < 2 * thin.dx());
  CHECK(thin.count() > 0);
  CHECK_THROWS_AS(rasterize(PolyCompact::fat({unit_square()}), Box{-2, -2, 2, 2}, 1 << 20), Error);
}

TEST_CASE("domain validation and connectivity") {
  Domain ann;
  ann.outer = circle(0, 4, 256);
  ann.obstacles.push_back(Obstacle::fat(disc(0, 2, 256)));
  CHECK_NOTHROW(validate(ann));
  CHECK(point_locate(ann, 3, 1e-9) == Location::Inside);
  CHECK(point_locate(ann, 1, 1e-9) == Location::Outside);

  Domain cut;
  cut.obstacles.push_back(Obstacle::thin(circle(0, 1, 64)));
  CHECK_THROWS_AS(validate(cut), Error);

  Domain slit;
  slit.obstacles.push_back(Obstacle::thin(segment(0, 1)));
  CHECK_NOTHROW(validate(slit));
  CHECK(is_connected(slit));
}

TEST_CASE("subcurve extracts arcs by arc length") {
  Polyline c = circle(0, 1, 256);
  Polyline half = subcurve(c, 0.0, 0.5);
  CHECK_FALSE(half.closed);
  CHECK(half.length() == doctest::Approx(kPi).epsilon(1e-3));
  Polyline wrap = subcurve(c, 0.75, 1.25);
  CHECK(wrap.length() == doctest::Approx(kPi).epsilon(1e-3));
  CHECK(is_simple(wrap));
}
