#include <doctest.h>

#include <random>

#include "holo/analysis.hpp"

using namespace holo;

namespace {

Domain punctured(std::vector<Complex> points) {
  Domain d;
  for (Complex p : points) d.obstacles.push_back(Obstacle::at(p));
  return d;
}

// Contour integral of f'/f over a circle by the trapezoid rule.
template <class F, class DF>
double quadrature_winding(const F& f, const DF& df, Complex c, double r, int n = 4096) {
  Complex acc = 0;
  for (int k = 0; k < n; ++k) {
    const Complex e = std::polar(1.0, 2 * kPi * k / n);
    const Complex z = c + r * e;
    acc += df(z) / f(z) * Complex(0, 1) * r * e;
  }
  return (acc * (2 * kPi / n) / Complex(0, 2 * kPi)).real();
}

}  // namespace

TEST_CASE("rational evaluation examples") {
  auto sq = RationalFunction::from_partial_fractions({0, 0, 1}, {}, {});
  CHECK(std::abs(sq(Complex(1, 1)) - Complex(0, 2)) < 1e-14);

  auto inv = RationalFunction::from_partial_fractions({}, {0}, {{1}});
  auto dinv = inv.derivative();
  for (Complex z : {Complex(0.3, 0.7), Complex(-2, 1), Complex(5, 0)})
    CHECK(std::abs(dinv(z) + 1.0 / (z * z)) < 1e-12);

  auto f = RationalFunction::from_partial_fractions({0, 1}, {1}, {{1}});
  CHECK(std::abs(f(2.0) - 3.0) < 1e-14);
  CHECK_THROWS_AS(f(1.0), Error);
  CHECK(f.poles().size() == 1);
}

TEST_CASE("derivative of a fitted function matches finite differences") {
  PolyCompact a = PolyCompact::fat({annulus(0, 1, 2)});
  FitConfig cfg;
  cfg.poly_degree = 10;
  cfg.pole_degree = 6;
  FitResult fit = runge_fit(a, punctured({0}), sampler_from_function(a, [](Complex z) {
                              return std::exp(z / 3.0) + 1.0 / (z * z);
                            }),
                            cfg);
  const RationalFunction d1 = fit.f.derivative(), d2 = d1.derivative();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> rad(0.8, 2.5), ang(0, 2 * kPi);
  for (int i = 0; i < 40; ++i) {
    const Complex z = std::polar(rad(rng), ang(rng));
    const double h = 1e-5;
    const Complex fd1 = (fit.f(z + h) - fit.f(z - h)) / (2 * h);
    const Complex fd2 = (d1(z + h) - d1(z - h)) / (2 * h);
    CHECK(std::abs(d1(z) - fd1) <= 1e-6 * std::max(1.0, std::abs(fd1)));
    CHECK(std::abs(d2(z) - fd2) <= 1e-6 * std::max(1.0, std::abs(fd2)));
  }
}

TEST_CASE("winding_number examples") {
  const Polyline unit = circle(0, 1);
  CHECK(winding_number([](Complex z) { return z; }, unit).value == 1);
  Winding w = winding_number([](Complex z) { return (z - 0.5) * (z - 0.5); }, unit);
  CHECK(w.value == 2);
  CHECK(w.residual < 0.01);
  CHECK(w.min_modulus == doctest::Approx(0.25).epsilon(1e-3));
  CHECK_THROWS_AS(winding_number([](Complex z) { return z; }, circle(1, 1)), Error);

  // g_m on the annulus 2<=|z|<=4 with b = 3 in K and the pole 0 in the hole.
  for (int m : {1, 10, 100}) {
    const RationalFunction g = build_g_m(m, 3, {0});
    CHECK(winding_number(g, circle(0, 4)).value == 1);
    CHECK(winding_number(g, reversed(circle(0, 2))).value == 1);
  }
}

TEST_CASE("build_g_m examples") {
  const RationalFunction g = build_g_m(1, 0, {1});
  for (Complex z : {Complex(2, 0), Complex(0.5, 3), Complex(-4, -1)})
    CHECK(std::abs(g(z) - z * z / (z - 1.0)) < 1e-12 * std::abs(z * z / (z - 1.0)));
  CHECK(winding_number(build_g_m(2, 3, {0}), circle(0, 4)).value == 1);
  const RationalFunction g2 = build_g_m(1, 0, {1, 2});
  const Complex z0(0.7, 4.1);
  CHECK(std::abs(g2(z0) - std::pow(z0, 3) / ((z0 - 1.0) * (z0 - 2.0))) < 1e-12 * std::abs(g2(z0)));
  CHECK(winding_number(g2, circle(0, 5)).value == 1);
  CHECK_THROWS_AS(build_g_m(1, 0, {1, 1}), Error);
  CHECK_THROWS_AS(build_g_m(1, 1, {1}), Error);
}

TEST_CASE("winding number is additive and agrees with quadrature") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
    const Complex centre(u(rng) / 2, u(rng) / 2);
    const double r = 0.5 + std::abs(u(rng));
    const Polyline gamma = circle(centre, r, 512);
    // Skip curves passing too close to a zero or pole.
    bool near = false;
    for (Complex p : {a, b, c}) near = near || std::abs(std::abs(p - centre) - r) < 0.05;
    if (near) continue;
    auto f = [&](Complex z) { return z - a; };
    auto g = [&](Complex z) { return (z - b) / (z - c); };
    auto fg = [&](Complex z) { return f(z) * g(z); };
    const int wf = winding_number(f, gamma).value, wg = winding_number(g, gamma).value;
    CHECK(winding_number(fg, gamma).value == wf + wg);
    auto dfg = [&](Complex z) { return g(z) + (z - a) * ((z - c) - (z - b)) / ((z - c) * (z - c)); };
    CHECK(std::lround(quadrature_winding(fg, dfg, centre, r)) == wf + wg);
  }
}

TEST_CASE("runge_fit examples") {
  PolyCompact ann = PolyCompact::fat({annulus(0, 1, 2)});
  FitConfig cfg;
  cfg.poly_degree = 8;
  cfg.pole_degree = 4;
  FitResult r = runge_fit(ann, punctured({0}), sampler_from_function(ann, [](Complex z) { return 1.0 / z; }), cfg);
  CHECK(r.sup_error <= 1e-10);
  REQUIRE(r.pole_sites.size() == 1);
  CHECK(std::abs(r.pole_sites[0]) < 1e-12);
  for (Complex p : r.f.poles()) CHECK(std::abs(p) < 1e-12);

  PolyCompact d = PolyCompact::fat({disc(0, 1)});
  cfg.poly_degree = 12;
  r = runge_fit(d, Domain{}, sampler_from_function(d, [](Complex z) { return std::exp(z); }), cfg);
  // Taylor remainder bound e/13! for the degree-12 truncation.
  double fact = 1;
  for (int i = 2; i <= 13; ++i) fact *= i;
  CHECK(std::exp(1.0) / fact <= 1e-8);
  CHECK(r.sup_error <= std::exp(1.0) / fact * 1.01);
  CHECK(r.f.poles().empty());

  Domain unit;
  unit.outer = circle(0, 1);
  Polyline half = arc(0, 0.9, 0, kPi);
  PolyCompact thin = PolyCompact::thin({half});
  auto conj_target = sampler_from_function(thin, [](Complex w) { return std::conj(w) / 0.81; });
  cfg.poly_degree = 40;
  FitResult r40 = runge_fit(thin, unit, conj_target, cfg);
  CHECK(r40.sup_error <= 1e-2);
  cfg.poly_degree = 80;
  FitResult r80 = runge_fit(thin, unit, conj_target, cfg);
  CHECK(r80.sup_error <= r40.sup_error * 1.05);
  for (Complex p : r40.f.poles()) CHECK(std::abs(p) > 1);
}

TEST_CASE("runge_fit reproduces a pole term in a hole") {
  const Complex p(0.35, 0.1);
  PolyCompact a = PolyCompact::fat({annulus(0.3, 0.5, 1.5)});
  FitConfig cfg;
  cfg.poly_degree = 6;
  cfg.pole_degree = 3;
  FitResult r = runge_fit(a, punctured({p}), sampler_from_function(a, [p](Complex z) { return 1.0 / (z - p); }), cfg);
  CHECK(r.sup_error <= 1e-10);
}

TEST_CASE("runge_fit error decreases with degree") {
  PolyCompact a = PolyCompact::fat({make_face(circle(0, 1.5), {circle(0.2, 0.5)})});
  auto target = sampler_from_function(a, [](Complex z) { return 1.0 / (z - 3.0) + std::sin(z); });
  Domain omega = punctured({0.2});
  double prev = std::numeric_limits<double>::infinity();
  for (int deg : {4, 8, 16, 32}) {
    FitConfig cfg;
    cfg.poly_degree = deg;
    cfg.pole_degree = 4;
    const double e = runge_fit(a, omega, target, cfg).sup_error;
    CHECK(e <= prev * (1 + 1e-9));
    prev = e;
  }
  CHECK(prev < 1e-8);
}

TEST_CASE("runge_fit rejects non-convex fit sets") {
  Domain unit;
  unit.outer = circle(0, 1);
  PolyCompact a = PolyCompact::fat({annulus(0, 0.25, 0.5)});
  CHECK_THROWS_AS(runge_fit(a, unit, sampler_from_function(a, [](Complex z) { return z; }), FitConfig{}), Error);
}

TEST_CASE("generic injectivity probe") {
  PolyCompact sq = PolyCompact::fat({polygon_face({{0, 0}, {1, 0}, {1, 1}, {0, 1}})});
  CHECK(injectivity_probe([](Complex z) { return 2.0 * z + 1.0; }, sq).injective);

  PolyCompact c = PolyCompact::thin({circle(0, 1)});
  Injectivity inj = injectivity_probe([](Complex z) { return 0.7 * z * z; }, c);
  REQUIRE_FALSE(inj.injective);
  REQUIRE(inj.witness);
  CHECK(std::abs(inj.witness->first + inj.witness->second) < 1e-3);

  PolyCompact half = PolyCompact::thin({arc(0, 1, -kPi / 4, kPi / 4)});
  CHECK(injectivity_probe([](Complex z) { return 0.7 * z * z; }, half).injective);
}
