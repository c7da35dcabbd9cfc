#include <doctest.h>

#include <random>

#include "holo/crosscheck.hpp"
#include "holo/run.hpp"

using namespace holo;

namespace {

std::string schema_error(const Json& j) {
  try {
    parse_scene(j);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) return e.what();
    return std::string("non-schema error: ") + e.what();
  }
  return "";
}

Json minimal() {
  return Json::parse(R"json({
    "domains": {"d": {"outer": {"type": "circle", "centre": 0, "radius": 1}}},
    "maps": {"m": {"kind": "RadialScale", "r": "1-2^(-n)"}},
    "g": "d", "omega": "d"
  })json");
}

}  // namespace

TEST_CASE("scene parsing") {
  const Scene s = parse_scene(minimal());
  CHECK(s.map.kind == MapKind::RadialScale);
  CHECK(s.g_domain().bounded());
  CHECK_FALSE(s.thin_g());
  CHECK(s.map.apply(1, 1.0) == Complex(0.5));

  Json j = minimal();
  j["domains"]["e"] = Json::parse(R"json({"obstacles": [{"type": "point", "at": [0.5, "-1/4"]}, {"type": "disc", "centre": "2i", "radius": "pi/8"}]})json");
  j["omega"] = "e";
  j["config"] = {{"n_max", 12}, {"N_grid", {0, 3}}};
  const Scene t = parse_scene(j);
  const Domain& e = t.omega_domain();
  REQUIRE(e.obstacles.size() == 2);
  CHECK(e.obstacles[0].point == Complex(0.5, -0.25));
  CHECK(e.obstacles[1].face.outer.bbox().width() == doctest::Approx(kPi / 4).epsilon(1e-3));
  CHECK(t.config.n_max == 12);
}

TEST_CASE("schema errors name the offending field") {
  Json j = minimal();
  j["domains"]["d"]["obstacles"] = Json::parse(R"json([{"type": "point", "at": 0}, {"type": "disc", "centre": 0, "radius": "x"}])json");
  CHECK(schema_error(j).rfind("domains.d.obstacles[1].radius:", 0) == 0);

  j = minimal();
  j["maps"]["m"]["kind"] = "Spiral";
  CHECK(schema_error(j).rfind("maps.m.kind:", 0) == 0);

  j = minimal();
  j["colour"] = "red";
  CHECK(schema_error(j).find("colour") != std::string::npos);

  j = minimal();
  j["omega"] = "nowhere";
  CHECK(schema_error(j).rfind("omega:", 0) == 0);

  j = minimal();
  j["construct"] = Json::parse(R"json({"targets": [{"id": "a", "compact": {"type": "point", "at": 0}, "g": "z"}]})json");
  CHECK(schema_error(j).rfind("construct.targets[0].compact", 0) == 0);

  CHECK_THROWS_AS(load_scene("/nonexistent/missing.json"), Error);
}

TEST_CASE("construct blocks") {
  Json j = minimal();
  j["curves"] = {{"c", Json::parse(R"json([{"type": "circle", "centre": 0, "radius": 1}])json")}};
  j["g"] = "c";
  j["construct"] = Json::parse(R"json({"eps0": 0.2, "targets": [
      {"id": "re", "compact": {"type": "arc", "centre": 0, "radius": 1, "from": "-pi/2", "to": "pi/2"}, "g": "re(z)"},
      {"id": "sq", "compact": {"type": "arc", "centre": 0, "radius": 1, "from": 0, "to": 1}, "g": "z^2"}]})json");
  const Scene s = parse_scene(j);
  CHECK(s.thin_g());
  CHECK(s.construct.eps0 == 0.2);
  REQUIRE(s.targets.size() == 2);
  CHECK_FALSE(s.targets[0].holomorphic);
  CHECK(s.targets[1].holomorphic);
  CHECK(s.targets[0].g(Complex(0.3, 0.4)) == Complex(0.3));
}

TEST_CASE("rational functions survive a JSON round trip") {
  const RationalFunction f = RationalFunction::from_partial_fractions({1, Complex(0, 2), 0.5}, {Complex(3, 1), -2.0},
                                                                     {{1, Complex(0, -1)}, {0.25}});
  const RationalFunction g = rational_from_json(Json::parse(to_json(f).dump()));
  for (Complex z : {Complex(0.1, 0.2), Complex(-1, 1), Complex(5, -3)}) CHECK(std::abs(f(z) - g(z)) < 1e-12 * std::abs(f(z)));
  CHECK(g.poles().size() == 2);
  CHECK(rational_from_json(to_json(RationalFunction{})).is_zero());
}

TEST_CASE("demo corpus") {
  CHECK(demo_names().size() == 9);
  for (const std::string& name : demo_names()) {
    CAPTURE(name);
    const Scene s = parse_scene(demo_scene(name));
    CHECK(s.name == name);
    CHECK_NOTHROW(s.config.validate());
  }
  CHECK_THROWS_AS(demo_scene("nope"), Error);
  CHECK(parse_scene(demo_scene("abel")).targets.size() == 3);
  CHECK(parse_scene(demo_scene("impossibility-outer")).whole);
}

TEST_CASE("exit codes") {
  CHECK(exit_code(Verdict::Pass) == 0);
  CHECK(exit_code(Verdict::Fail) == 2);
  CHECK(exit_code(Verdict::StructuralNo) == 2);
  CHECK(exit_code(Verdict::Inconclusive) == 3);
}

TEST_CASE("certify runs produce plottable reports with the flags echoed") {
  const RunResult r = run_demo("impossibility-outer");
  CHECK(r.exit_code == 2);
  CHECK(r.document["report"]["verdict"] == "Fail");
  CHECK_FALSE(r.document["report"]["obstruction"].is_null());
  CHECK(r.document["config"]["n_max"] == 16);
  CHECK(r.document["geometry"]["images"].size() >= 3);

  const std::string svg = render_svg(r.document);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("hsl(") == std::string::npos);

  Json ladder = demo_scene("annulus-ladder");
  ladder["config"]["n_max"] = 5;
  ladder["config"]["N_grid"] = {0};
  ladder["config"]["exhaustion_depth"] = 1;
  const RunResult l = run_certify(parse_scene(ladder));
  bool flagged = false;
  for (const Json& f : l.document["flags"]) flagged = flagged || f.get<std::string>().find("2^(2n-2)") != std::string::npos;
  CHECK(flagged);
}

TEST_CASE("construct runs carry error profiles") {
  const RunResult r = run_demo("birkhoff");
  CHECK(r.exit_code == 0);
  const Json& profiles = r.document["profiles"];
  REQUIRE(profiles.size() == 3);
  for (const Json& p : profiles) {
    double worst = 0;
    for (const Json& s : p["samples"]) worst = std::max(worst, s[1].get<double>());
    CHECK(worst <= p["bound"].get<double>());
  }
  CHECK(render_svg(r.document).find("log10|f|") != std::string::npos);
  CHECK_THROWS_AS(render_svg(Json::object()), Error);
}

TEST_CASE("topology predicates agree with the raster oracle on random compacts") {
  std::mt19937_64 rng(7);
  const std::vector<Domain> domains{disc_domain(0, 4), annulus_domain(0, 1, 5), ladder_omega(3)};
  for (const Domain& omega : domains) {
    for (int i = 0; i < 6; ++i) {
      const PolyCompact k = random_fat_compact(rng, omega);
      const CrossCheck c = cross_check(k, omega, 512);
      CAPTURE(c.holes_library);
      CAPTURE(c.holes_oracle);
      CHECK(c.agree());
    }
  }
  const Domain punctured = ladder_omega(3);
  const auto ex = exhaustion(punctured, 2);
  CHECK(union_agrees(ex[0], PolyCompact::fat({disc(3, 0.5)}), punctured, 512));
}
