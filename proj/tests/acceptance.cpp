// One line per acceptance criterion; exits nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "holo/crosscheck.hpp"
#include "holo/oracle.hpp"
#include "holo/run.hpp"

using namespace holo;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = o.pass && t < limit_s;
  if (!pass) ++failures;
  std::printf("criterion %2d: %s  %.2f s (limit %.0f s)  %s\n", id, pass ? "PASS" : "FAIL", t, limit_s, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

double sup_on_curve(const std::function<Complex(Complex)>& err, const Polyline& c, int samples = 4000) {
  double worst = 0;
  for (int i = 0; i <= samples; ++i) worst = std::max(worst, std::abs(err(c.at(static_cast<double>(i) / samples))));
  return worst;
}

// Builds the demo's certificate and measures every final error on its own net.
struct ThinRun {
  UniversalCertificate cert;
  std::vector<double> measured;
};

ThinRun thin_run(const std::string& demo) {
  const Scene s = parse_scene(demo_scene(demo));
  ConstructConfig cfg = s.construct;
  cfg.cert = s.config;
  ThinRun r;
  r.cert = build_thin_universal(s.map, s.g_curves(), s.omega_domain(), s.targets, cfg);
  for (const FinalError& fe : r.cert.finals)
    for (const Target& t : s.targets)
      if (t.id == fe.target_id)
        r.measured.push_back(sup_on_curve(
            [&](Complex z) { return r.cert.f(s.map.apply(fe.n, z)) - t.g(z); }, t.k.pieces.front()));
  return r;
}

Outcome check_thin(const ThinRun& r, std::size_t targets, double bound) {
  if (r.cert.status != UniversalCertificate::Status::Complete)
    return {false, std::string(to_string(r.cert.status)) + ": " + r.cert.reason};
  bool ok = r.measured.size() == targets;
  std::string d = "errors";
  for (double e : r.measured) {
    ok = ok && e <= bound;
    d += " " + fmt(e);
  }
  return {ok, d};
}

}  // namespace

int main() {
  criterion(1, 5, [] {
    // p = 1: the annulus of the worked example; p = 2: a disc with two holes.
    struct Config {
      PolyCompact k;
      Complex b;
      std::vector<Complex> lambdas;
    };
    const std::vector<Config> configs{
        {PolyCompact::fat({annulus(0, 2, 4)}), 3, {0}},
        {PolyCompact::fat({make_face(circle(0, 4), {circle(-2, 0.5), circle(2, 0.5)})}), Complex(0, 3), {-2, 2}}};
    int checked = 0;
    double worst = 0;
    for (const Config& c : configs)
      for (int m : {1, 10, 100}) {
        const RationalFunction g = build_g_m(m, c.b, c.lambdas);
        const Face& f = c.k.faces[0];
        std::vector<const Polyline*> gammas{&f.outer};
        for (const Polyline& h : f.holes) gammas.push_back(&h);  // clockwise, as in the proof
        for (const Polyline* gamma : gammas) {
          const Winding w = winding_number(g, *gamma);
          if (w.value != 1) return Outcome{false, "winding " + std::to_string(w.value)};
          worst = std::max(worst, w.residual);
          ++checked;
        }
      }
    return Outcome{worst < 0.01, std::to_string(checked) + " contours wind once, max residual " + fmt(worst)};
  });

  criterion(2, 60, [] {
    Domain two = disc_domain(0, 5);
    two.obstacles = {Obstacle::fat(disc(-2, 0.4, 64)), Obstacle::fat(disc(2, 0.4, 64))};
    Domain punctured;
    punctured.obstacles = {Obstacle::at(0)};
    const std::vector<Domain> domains{disc_domain(0, 4), annulus_domain(0, 1, 5), punctured, two, ladder_omega(4)};
    std::mt19937_64 rng(2024);
    int compacts = 0, agree = 0, unions = 0, unions_agree = 0;
    for (const Domain& omega : domains)
      for (int i = 0; i < 50; ++i) {
        const PolyCompact k = random_fat_compact(rng, omega);
        ++compacts;
        agree += cross_check(k, omega, 1024).agree();
        // Faces of one compact are disjoint and connected; pair the Ω-convex ones.
        if (k.faces.size() >= 2) {
          const PolyCompact a = PolyCompact::fat({k.faces[0]}), b = PolyCompact::fat({k.faces[1]});
          if (is_omega_convex(a, omega).yes && is_omega_convex(b, omega).yes) {
            ++unions;
            unions_agree += union_agrees(a, b, omega, 1024);
          }
        }
      }
    return Outcome{agree == compacts && unions_agree == unions && unions > 0,
                   std::to_string(agree) + "/" + std::to_string(compacts) + " compacts, " + std::to_string(unions_agree) +
                       "/" + std::to_string(unions) + " unions"};
  });

  criterion(3, 10, [] {
    Domain two = disc_domain(0, 5);
    two.obstacles = {Obstacle::fat(disc(-2, 0.4, 64)), Obstacle::fat(disc(2, 0.4, 64))};
    Domain punctured;
    punctured.obstacles = {Obstacle::at(0)};
    const std::vector<std::pair<const char*, Domain>> domains{
        {"disc", disc_domain(0, 1)}, {"annulus", annulus_domain(0, 1, 3)}, {"C\\{0}", punctured}, {"disc-2", two}};
    for (const auto& [name, omega] : domains) {
      const auto ex = exhaustion(omega, 4);
      if (ex.size() != 4) return Outcome{false, std::string(name) + ": wrong count"};
      for (std::size_t j = 0; j < ex.size(); ++j) {
        const Membership m = in_M_omega(ex[j], omega);
        if (!m.yes) return Outcome{false, std::string(name) + ": K_" + std::to_string(j) + " not in M(omega)"};
        if (j == 0) continue;
        // K_{j-1} lies in the interior of K_j.
        for (const Polyline* c : ex[j - 1].curves())
          for (Complex z : c->vertices)
            if (point_locate(ex[j], z, 1e-12) != Location::Inside)
              return Outcome{false, std::string(name) + ": K_" + std::to_string(j - 1) + " not inside K_" + std::to_string(j)};
        for (const Polyline* c : ex[j].curves())
          for (Complex z : c->vertices)
            if (point_locate(ex[j - 1], z, 1e-12) != Location::Outside)
              return Outcome{false, std::string(name) + ": boundary of K_" + std::to_string(j) + " meets K_" + std::to_string(j - 1)};
      }
    }
    return Outcome{true, "4 domains x 4 nested compacts in M(omega)"};
  });

  criterion(4, 60, [] {
    const RunResult ladder = run_certify(parse_scene(demo_scene("annulus-ladder")));
    const Json& r = ladder.document["report"];
    int max_n = 0;
    bool all = r["verdict"] == "Pass";
    for (const Json& w : r["witnesses"]) {
      all = all && !w["n"].is_null() && w["N"].get<int>() <= 5;
      if (!w["n"].is_null()) max_n = std::max(max_n, w["n"].get<int>());
    }
    all = all && max_n <= 8 && r["topology"]["truncation_cutoff"] == 8;

    const RunResult counter = run_certify(parse_scene(demo_scene("annulus-counter")));
    const Json& c = counter.document["report"];
    bool split = c["verdict"] == "Fail";
    for (const Json& w : c["witnesses"]) {
      bool union_fails = false;
      for (const Json& line : w["checks"])
        union_fails = union_fails || line.get<std::string>().find("image ∪ L not omega-convex") != std::string::npos;
      split = split && w["n"].is_null() && !w["image_clause_n"].is_null() && union_fails;
    }
    return Outcome{all && split, "ladder " + r["verdict"].get<std::string>() + " (" + std::to_string(r["witnesses"].size()) +
                                     " samples, max n " + std::to_string(max_n) + "), counter " +
                                     c["verdict"].get<std::string>() + (split ? " on union clause only" : "")};
  });

  criterion(5, 1, [] {
    const Domain ann = annulus_domain(0, 2, 4);
    const bool a = structural_negative(ann, disc_domain(0, 1)).no;
    const bool b = structural_negative(ann, annulus_domain(0, 1, 5)).no;
    Domain punctured;
    punctured.obstacles = {Obstacle::at(0)};
    bool c = true;
    for (const Domain& omega : {disc_domain(0, 1), annulus_domain(0, 1, 5), punctured, ladder_omega(8), plane_domain()})
      c = c && !structural_negative(disc_domain(0, 1), omega).no;
    return Outcome{a && b && c, std::string("annulus/disc ") + (a ? "No" : "-") + ", annulus/annulus " + (b ? "No" : "-") +
                                    ", disc/any " + (c ? "never No" : "No")};
  });

  criterion(6, 30, [] {
    const Scene s = parse_scene(demo_scene("birkhoff"));
    ConstructConfig cfg = s.construct;
    cfg.cert = s.config;
    const UniversalCertificate c = build_universal(s.map, s.g_domain(), s.omega_domain(), s.targets, cfg);
    if (c.status != UniversalCertificate::Status::Complete) return Outcome{false, c.reason};
    bool ok = c.finals.size() == 3 && c.drift_bound_holds();
    std::string d = "errors";
    for (const FinalError& fe : c.finals)
      for (const Target& t : s.targets)
        if (t.id == fe.target_id) {
          // Maximum modulus: the boundary circle bounds the error on the disc.
          const double e = sup_on_curve([&](Complex z) { return c.f(s.map.apply(fe.n, z)) - t.g(z); }, circle(0, 1, 4096));
          ok = ok && e <= 0.2;
          d += " " + fmt(e);
        }
    return Outcome{ok, d + ", drift " + fmt(c.total_drift)};
  });

  criterion(7, 60, [] {
    const Outcome abel = check_thin(thin_run("abel"), 3, 0.1);
    const Outcome slit = check_thin(thin_run("slit-plane"), 1, 0.1);
    return Outcome{abel.pass && slit.pass, "abel: " + abel.detail + "; slit-plane: " + slit.detail};
  });

  criterion(8, 120, [] {
    const Scene s = parse_scene(demo_scene("tangent-circles"));
    const Arc k{-3 * kPi / 4, 3 * kPi / 4};
    const PolyCompact l0 = exhaustion(s.omega_domain(), 1)[0];
    const auto plan = suffplus_search(s.map, k, l0, s.construct.plan_delta, s.config);
    if (!plan) return Outcome{false, "no plan for n <= 64"};
    const CorridorTarget ct = corridor_target(*plan, s.map, s.targets[0].g, {}, l0, s.construct.plan_delta);
    const bool scan = ct.max_jump <= s.construct.eps0 / 4;
    const Outcome fit = check_thin(thin_run("tangent-circles"), 1, 0.15);
    return Outcome{plan->n <= 64 && scan && fit.pass, "plan n=" + std::to_string(plan->n) + " l=" + std::to_string(plan->l()) +
                                                         ", jump " + fmt(ct.max_jump) + ", " + fit.detail};
  });

  criterion(9, 10, [] {
    CertConfig cfg;
    cfg.n_max = 256;
    const PolyCompact k = PolyCompact::thin({arc(0, 1, -0.2, 0.2)});
    const Polyline i1 = arc(0, 1, 1.0, 1.3), i2 = arc(0, 1, 1.0 + kPi, 1.3 + kPi);
    const PolyCompact l = PolyCompact::fat({disc(0, 0.3)});
    MapFamily square = MapFamily::power_radial(Expression("1-2^(-n)"), 2);
    square.first_index = 1;
    const Necessity sq = necessity_probe_thin(square, k, i1, i2, l, cfg);
    bool antipodal = static_cast<int>(sq.collisions.size()) == cfg.n_max;
    for (const Collision& c : sq.collisions) antipodal = antipodal && std::abs(c.a + c.b) < 1e-6;
    cfg.n_max = 32;
    const Necessity abel = necessity_probe_thin(MapFamily::radial_scale(Expression("1-2^(-n)")), k, i1, i2, l, cfg);
    const bool ok = sq.witnesses.empty() && sq.violated_clause == 2 && antipodal && !abel.witnesses.empty();
    return Outcome{ok, "k=2: clause " + std::to_string(sq.violated_clause) + ", " + std::to_string(sq.collisions.size()) +
                           " antipodal collisions; radial: " + std::to_string(abel.witnesses.size()) + " witnesses"};
  });

  criterion(10, 10, [] {
    CertConfig cfg;
    cfg.n_max = 16;
    const std::vector<Polyline> g{circle(0, 1)};
    const MapFamily in = MapFamily::radial_scale(Expression("1-2^(-n)"));
    const MapFamily out = MapFamily::radial_scale(Expression("1+2^(-n)"));
    const auto ob_in = impossibility_detector(in, PolyCompact::thin(g), disc_domain(0, 1), cfg);
    const auto ob_out = impossibility_detector(out, PolyCompact::thin(g), exterior_domain(0, 1), cfg);
    const Verdict v_in = certify_thin(in, g, disc_domain(0, 1), true, cfg).verdict;
    const Verdict v_out = certify_thin(out, g, exterior_domain(0, 1), true, cfg).verdict;
    const bool ok = ob_in && ob_out && v_in != Verdict::Pass && v_out != Verdict::Pass;
    return Outcome{ok, std::string("disc: ") + (ob_in ? "Obstruction" : "none") + "/" + to_string(v_in) +
                           ", exterior: " + (ob_out ? "Obstruction" : "none") + "/" + to_string(v_out)};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
