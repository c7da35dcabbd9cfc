#include <doctest.h>

#include "holo/io.hpp"
#include "holo/topology.hpp"

using namespace holo;

namespace {

MapFamily translations() { return MapFamily::affine(Expression("1"), Expression("4n")); }

PolyCompact unit_disc() { return PolyCompact::fat({disc(0, 1)}); }

// Independent sup of |f∘phi_n - g| over K: boundary circle plus an interior polar net.
double measured(const RationalFunction& f, const MapFamily& phi, int n, const std::function<Complex(Complex)>& g,
                double radius = 1) {
  double worst = 0;
  for (int i = 0; i < 3000; ++i) {
    const Complex z = std::polar(radius, 2 * kPi * (i + 0.37) / 3000);
    worst = std::max(worst, std::abs(f(phi.apply(n, z)) - g(z)));
  }
  for (int r = 1; r < 10; ++r)
    for (int i = 0; i < 200; ++i) {
      const Complex z = std::polar(radius * r / 10, 2 * kPi * i / 200);
      worst = std::max(worst, std::abs(f(phi.apply(n, z)) - g(z)));
    }
  return worst;
}

std::vector<Target> birkhoff_targets() {
  return {{"1", unit_disc(), [](Complex) { return Complex(1); }},
          {"z", unit_disc(), [](Complex z) { return z; }},
          {"z^2", unit_disc(), [](Complex z) { return z * z; }}};
}

}  // namespace

TEST_CASE("birkhoff_step with a target already matched makes no correction") {
  const RationalFunction f = RationalFunction::from_partial_fractions({0, 1}, {}, {});
  const Target t{"shift", unit_disc(), [](Complex z) { return z + 4.0; }};
  const StepResult s = birkhoff_step(f, PolyCompact::fat({disc(0, 2)}), t, translations(), 1, plane_domain(), 0.05, {});
  CHECK(s.achieved < 1e-8);
  CHECK(s.drift < 1e-8);
  CHECK(std::abs(s.f_next(Complex(0.3, 0.2)) - f(Complex(0.3, 0.2))) < 1e-8);
}

TEST_CASE("birkhoff_step: z^2 on the unit disc away from L") {
  const PolyCompact l = PolyCompact::fat({disc(0, 2)});
  const Target t{"z^2", unit_disc(), [](Complex z) { return z * z; }};
  CertConfig cfg;
  const Search w = induction_condition(translations(), plane_domain(), t.k, l, 1, cfg);
  REQUIRE(w);
  const RationalFunction zero;
  const StepResult s = birkhoff_step(zero, l, t, translations(), *w.n, plane_domain(), 0.05, {});
  CHECK(s.n >= 1);
  CHECK(measured(s.f_next, translations(), s.n, t.g) <= 0.05);
  double drift = 0;
  for (int i = 0; i < 2000; ++i) drift = std::max(drift, std::abs(s.f_next(std::polar(2.0, 2 * kPi * i / 2000))));
  CHECK(drift <= 0.05);
}

TEST_CASE("birkhoff_step: 1/z on the annulus ladder uses the puncture as a pole") {
  MapFamily phi = MapFamily::annulus_scale();
  phi.first_index = 1;
  const Domain omega = ladder_omega(8);
  const PolyCompact l = exhaustion(omega, 1)[0];
  const Target t{"1/z", PolyCompact::fat({annulus(0, 2.5, 3.5)}), [](Complex z) { return 1.0 / z; }};
  CertConfig cfg;
  cfg.n_max = 8;
  const Search w = induction_condition(phi, omega, t.k, l, 1, cfg);
  REQUIRE(w);
  const StepResult s = birkhoff_step({}, l, t, phi, *w.n, omega, 0.1, {});
  CHECK(s.achieved <= 0.1);
  CHECK(std::any_of(s.pole_sites.begin(), s.pole_sites.end(), [](Complex p) { return std::abs(p) < 1e-12; }));
  for (Complex p : s.f_next.poles()) CHECK(point_locate(omega, p, 1e-9) != Location::Inside);
}

TEST_CASE("build_universal on the Birkhoff scene") {
  ConstructConfig cfg;
  cfg.eps0 = 0.1;
  const auto targets = birkhoff_targets();
  const UniversalCertificate c = build_universal(translations(), plane_domain(), plane_domain(), targets, cfg);
  REQUIRE(c.status == UniversalCertificate::Status::Complete);
  REQUIRE(c.steps.size() == 3);
  CHECK(c.drift_bound_holds());
  CHECK(c.budget <= 2 * cfg.eps0);
  REQUIRE(c.finals.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CAPTURE(targets[i].id);
    CHECK(c.steps[i].achieved <= c.steps[i].eps_target);
    const double err = measured(c.f, translations(), c.finals[i].n, targets[i].g);
    CHECK(err <= 0.2);
    CHECK(err <= c.finals[i].bound);
  }
  // Replaying the same inputs reproduces the certificate exactly.
  const UniversalCertificate again = build_universal(translations(), plane_domain(), plane_domain(), targets, cfg);
  CHECK(to_json(again).dump() == to_json(c).dump());
}

TEST_CASE("build_universal: trivial and refused cases") {
  const UniversalCertificate empty = build_universal(translations(), plane_domain(), plane_domain(), {}, {});
  CHECK(empty.status == UniversalCertificate::Status::Complete);
  CHECK(empty.steps.empty());
  CHECK(empty.f.is_zero());

  MapFamily phi = MapFamily::annulus_scale();
  phi.first_index = 1;
  const Target t{"1", PolyCompact::fat({annulus(0, 2.5, 3.5)}), [](Complex) { return Complex(1); }};
  const UniversalCertificate refused = build_universal(phi, annulus_domain(0, 2, 4), disc_domain(0, 1), {t}, {});
  CHECK(refused.status == UniversalCertificate::Status::Refused);
  CHECK(refused.steps.empty());
}

TEST_CASE("build_universal aborts with a partial certificate") {
  ConstructConfig cfg;
  cfg.eps0 = 0.1;
  cfg.cert.n_max = 2;
  cfg.cert.N_grid = {0};
  // At most two disjoint images fit below n_max, so a later target runs out of witnesses.
  const UniversalCertificate c = build_universal(translations(), plane_domain(), plane_domain(), birkhoff_targets(), cfg);
  CHECK(c.status == UniversalCertificate::Status::Aborted);
  CHECK_FALSE(c.steps.empty());
  CHECK(c.steps.size() < 3);
  CHECK(c.finals.size() == c.steps.size());
  CHECK(c.drift_bound_holds());
  CHECK_FALSE(c.reason.empty());
}

TEST_CASE("continuity_radius") {
  const Arc k{-3 * kPi / 4, 3 * kPi / 4};
  // conj is an isometry: chords up to 2 delta must stay below the bound.
  CHECK(continuity_radius([](Complex z) { return std::conj(z); }, k, 0.1) == doctest::Approx(0.03125));
  CHECK(continuity_radius([](Complex) { return Complex(2); }, k, 0.1) == doctest::Approx(0.5));
}

TEST_CASE("corridor_target") {
  const Domain d = disc_domain(0, 1);
  const PolyCompact l = exhaustion(d, 1)[0];
  const Arc k{-3 * kPi / 4, 3 * kPi / 4};
  CertConfig cfg;
  cfg.n_max = 64;
  auto conj = [](Complex z) { return std::conj(z); };

  SUBCASE("injective plan reduces to the pulled-back target") {
    const auto plan = suffplus_search(MapFamily::radial_scale(Expression("1-2^(-n)")), k, l, 0.1, cfg);
    REQUIRE(plan);
    REQUIRE(plan->l() == 0);
    const CorridorTarget ct = corridor_target(*plan, MapFamily::radial_scale(Expression("1-2^(-n)")), conj, {}, l, 0.1);
    for (double t : {-2.0, -0.5, 0.0, 1.1, 2.3}) CHECK(std::abs(ct.on_k(t) - std::polar(1.0, -t)) < 1e-12);
    CHECK(ct.deviation < 1e-12);
    CHECK(ct.connected_complement);
  }

  SUBCASE("tangent circles: constant on the hull, continuous across the seams") {
    const double eps = 0.15;
    const auto plan = suffplus_search(MapFamily::tangent_circles(), k, l, 0.1, cfg);
    REQUIRE(plan);
    REQUIRE(plan->l() == 1);
    const CorridorTarget ct = corridor_target(*plan, MapFamily::tangent_circles(), conj, {}, l, 0.1);
    const Arc i1 = plan->i(0);
    const Complex c = ct.on_k(i1.alpha);
    for (int j = 0; j <= 20; ++j) CHECK(ct.on_k(i1.alpha + i1.length() * j / 20) == c);
    CHECK(ct.max_jump <= eps / 4);
    CHECK(ct.connected_complement);
    CHECK(hole_count(ct.fit_set) == 0);
    REQUIRE(ct.eta.size() == 1);
    CHECK(i1.beta + ct.eta[0] < k.beta);
  }

  SUBCASE("constant targets stay constant") {
    const auto plan = suffplus_search(MapFamily::tangent_circles(), k, l, 0.1, cfg);
    REQUIRE(plan);
    const CorridorTarget ct =
        corridor_target(*plan, MapFamily::tangent_circles(), [](Complex) { return Complex(2); }, {}, l, 0.1);
    for (int j = 0; j <= 50; ++j) CHECK(ct.on_k(k.alpha + k.length() * j / 50) == Complex(2));
    CHECK(ct.max_jump == 0);
  }
}

TEST_CASE("build_thin_universal rejects targets outside G") {
  ConstructConfig cfg;
  const Target t{"off", PolyCompact::thin({arc(0, 0.5, 0, 1)}), [](Complex z) { return z; }, false};
  const UniversalCertificate c = build_thin_universal(MapFamily::radial_scale(Expression("1-2^(-n)")), {circle(0, 1)},
                                                      disc_domain(0, 1), {t}, cfg);
  CHECK(c.status == UniversalCertificate::Status::Aborted);
  CHECK(c.steps.empty());
}
