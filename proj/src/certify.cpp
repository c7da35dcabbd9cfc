#include "holo/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include "holo/parallel.hpp"

namespace holo {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::StructuralNo: return "StructuralNo";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

void CertConfig::validate() const {
  if (n_max < 0) throw Error(ErrorKind::Validation, "n_max must be non-negative");
  if (exhaustion_depth < 1) throw Error(ErrorKind::Validation, "exhaustion_depth must be at least 1");
  if (N_grid.empty()) throw Error(ErrorKind::Validation, "N_grid must not be empty");
  for (int N : N_grid) {
    if (N < 0) throw Error(ErrorKind::Validation, "N_grid entries must be non-negative");
    if (N > n_max) throw Error(ErrorKind::Validation, "n_max must be at least max(N_grid)");
  }
  if (!(tolerance > 0)) throw Error(ErrorKind::Validation, "tolerance must be positive");
}

Polyline Arc::polyline(int resolution) const {
  // At least 16 segments however short the arc.
  const int per_circle = std::max(resolution, static_cast<int>(std::ceil(16 * 2 * kPi / length())));
  return arc(0, 1, alpha, beta, per_circle);
}

namespace {

enum class Mode { Main, SimplyConnected, TwoHoles, Thin };

struct Clauses {
  bool injective = false;
  bool sampled = false;
  bool disjoint = false;
  bool image_convex = false;
  bool union_convex = false;
  std::string failure;
};

std::string describe(int n, const std::string& what) { return "n=" + std::to_string(n) + ": " + what; }

Clauses evaluate(const MapFamily& phi, int n, const PolyCompact& k, const PolyCompact& l, const Domain& omega,
                 Mode mode, const CertConfig& cfg) {
  Clauses c;
  try {
    const PolyCompact img = image_of(phi, n, k);
    c.disjoint = set_distance(img, l) > cfg.tolerance;
    if (!c.disjoint) {
      c.failure = "image meets L";
      return c;
    }
    const Injectivity inj = injectivity_probe(phi, n, k, cfg.injectivity_samples);
    c.injective = inj.injective;
    c.sampled = !inj.exact;
    if (!c.injective) {
      c.failure = "not injective on K";
      return c;
    }
    if (mode == Mode::Main || mode == Mode::TwoHoles) c.image_convex = is_omega_convex(img, omega).yes;
    if (mode == Mode::Main || mode == Mode::Thin) c.union_convex = is_omega_convex(unite(img, l), omega).yes;
    if (mode == Mode::SimplyConnected) c.union_convex = true;
    if (mode == Mode::TwoHoles && !c.image_convex) c.failure = "image not omega-convex";
    if ((mode == Mode::Main || mode == Mode::Thin) && !c.union_convex) c.failure = "image ∪ L not omega-convex";
  } catch (const Error& e) {
    c.failure = std::string(to_string(e.kind())) + ": " + e.what();
  }
  return c;
}

bool passes(const Clauses& c, Mode mode) {
  if (!c.injective || !c.disjoint) return false;
  switch (mode) {
    case Mode::TwoHoles: return c.image_convex;
    case Mode::SimplyConnected: return true;
    default: return c.union_convex;
  }
}

void require_membership(const PolyCompact& k, const Domain& d, const char* what) {
  const Membership m = in_M_omega(k, d);
  if (m.yes) return;
  std::string why = std::string(what) + " is not in M of its domain:";
  for (const auto& r : m.reasons) why += " " + r + ";";
  throw Error(ErrorKind::Precondition, why);
}

using Evaluator = std::function<Clauses(int)>;

Search search(Mode mode, int first, int N, int n_max, const Evaluator& eval, std::optional<int>* image_n = nullptr) {
  Search s;
  for (int n = std::max(N, first); n <= n_max; ++n) {
    const Clauses c = eval(n);
    s.probabilistic = s.probabilistic || c.sampled;
    if (image_n && !*image_n && c.injective && c.disjoint && c.image_convex) *image_n = n;
    if (!s.n) {
      if (passes(c, mode)) s.n = n;
      s.trace.push_back(describe(n, s.n ? "witness" : c.failure));
    }
    if (s.n && (!image_n || *image_n)) return s;
  }
  return s;
}

// Clause evaluations shared by every N of one (K, L) sample.
Evaluator cached(Mode mode, const MapFamily& phi, const PolyCompact& k, const PolyCompact& l, const Domain& omega,
                 const CertConfig& cfg) {
  auto memo = std::make_shared<std::map<int, Clauses>>();
  return [=, &phi, &k, &l, &omega, &cfg](int n) {
    auto it = memo->find(n);
    if (it == memo->end()) it = memo->emplace(n, evaluate(phi, n, k, l, omega, mode, cfg)).first;
    return it->second;
  };
}

Search guarded(Mode mode, const MapFamily& phi, const Domain& g, const Domain& omega, const PolyCompact& k,
               const PolyCompact& l, int N, const CertConfig& cfg) {
  cfg.validate();
  require_membership(k, g, "K");
  require_membership(l, omega, "L");
  return search(mode, phi.first_index, N, cfg.n_max, cached(mode, phi, k, l, omega, cfg));
}

int obstacle_count(const Domain& d) { return static_cast<int>(d.obstacles.size()); }

PolyCompact image_curve_compact(const MapFamily& phi, int n, const Polyline& c) {
  return PolyCompact::thin({image_of(phi, n, c)});
}

// Outer Jordan curve of phi_n applied to G (a closed piece, or the outer boundary of a face).
std::optional<Polyline> image_jordan_curve(const MapFamily& phi, int n, const PolyCompact& g) {
  if (!g.faces.empty()) {
    const PolyCompact img = image_of(phi, n, PolyCompact::fat({g.faces.front()}));
    if (img.faces.empty()) return std::nullopt;
    return img.faces.front().outer;
  }
  if (g.pieces.size() != 1 || !g.pieces.front().closed) return std::nullopt;
  Polyline img = image_of(phi, n, g.pieces.front());
  if (!img.closed || !is_simple(img)) return std::nullopt;
  return img;
}

bool strictly_inside(const Polyline& outer, const Polyline& inner) {
  if (curves_intersect(outer, inner)) return false;
  for (const Complex& z : inner.vertices)
    if (!inside_curve(outer, z)) return false;
  return true;
}

// Angles of a polyline lying on the unit circle, unwrapped along the curve.
std::optional<Arc> as_unit_arc(const Polyline& p) {
  if (p.closed) return std::nullopt;
  for (const Complex& z : p.vertices)
    if (std::abs(std::abs(z) - 1) > 1e-6) return std::nullopt;
  double t = std::arg(p.vertices.front());
  const double start = t;
  for (std::size_t i = 1; i < p.vertices.size(); ++i) t += std::arg(p.vertices[i] / p.vertices[i - 1]);
  if (t < start) return Arc{t, start};
  return Arc{start, t};
}

}  // namespace

Search condition_main(const MapFamily& phi, const Domain& g, const Domain& omega, const PolyCompact& k,
                      const PolyCompact& l, int N, const CertConfig& cfg) {
  return guarded(Mode::Main, phi, g, omega, k, l, N, cfg);
}

Search condition_simply_connected(const MapFamily& phi, const Domain& g, const Domain& omega, const PolyCompact& k,
                                  const PolyCompact& l, int N, const CertConfig& cfg) {
  if (!g.simply_connected())
    throw Error(ErrorKind::Precondition, "condition_simply_connected applies only to simply connected G");
  return guarded(Mode::SimplyConnected, phi, g, omega, k, l, N, cfg);
}

Search condition_two_holes(const MapFamily& phi, const Domain& g, const Domain& omega, const PolyCompact& k,
                           const PolyCompact& l, int N, const CertConfig& cfg) {
  if (obstacle_count(g) < 2) throw Error(ErrorKind::Precondition, "condition_two_holes needs G with at least two holes");
  return guarded(Mode::TwoHoles, phi, g, omega, k, l, N, cfg);
}

Search induction_condition(const MapFamily& phi, const Domain& omega, const PolyCompact& k, const PolyCompact& l, int N,
                           const CertConfig& cfg) {
  return search(Mode::Thin, phi.first_index, N, cfg.n_max, cached(Mode::Thin, phi, k, l, omega, cfg));
}

Structural structural_negative(const Domain& g, const Domain& omega) {
  Structural s;
  const bool g_multiply_connected = !g.simply_connected();
  if (!g_multiply_connected) return s;
  if (omega.truncation) {
    s.caveat = "omega is a truncated model of an infinitely connected domain ('" + omega.truncation->generator_id +
               "' cut at " + std::to_string(omega.truncation->cutoff) + "); finite connectivity is not asserted";
    return s;
  }
  s.no = true;
  s.anchor = "no universal functions when G is not simply connected and omega is finitely connected (" +
             std::to_string(obstacle_count(omega)) + " holes)";
  return s;
}

Necessity necessity_probe_thin(const MapFamily& phi, const PolyCompact& k, const Polyline& i1, const Polyline& i2,
                               const PolyCompact& l, const CertConfig& cfg) {
  cfg.validate();
  if (curves_intersect(i1, i2)) throw Error(ErrorKind::Precondition, "necessity probe: I1 and I2 intersect");
  PolyCompact all = k;
  all.pieces.push_back(i1);
  all.pieces.push_back(i2);
  if (hole_count(all) != 0)
    throw Error(ErrorKind::Precondition, "necessity probe: K ∪ I1 ∪ I2 must have connected complement");

  Necessity out;
  bool clause1_seen = false;
  const PolyCompact pair = PolyCompact::thin({i1, i2});
  for (int n = phi.first_index; n <= cfg.n_max; ++n) {
    const bool c1 = set_distance(image_of(phi, n, k), l) > cfg.tolerance;
    const bool c2 = set_distance(image_curve_compact(phi, n, i1), image_curve_compact(phi, n, i2)) > cfg.tolerance;
    clause1_seen = clause1_seen || c1;
    if (c1 && c2) {
      out.witnesses.push_back(n);
      continue;
    }
    if (c2) continue;
    const Injectivity inj = injectivity_probe([&](Complex z) { return phi.apply(n, z); }, pair, 256);
    if (inj.witness) out.collisions.push_back({n, inj.witness->first, inj.witness->second});
  }
  if (out.witnesses.empty()) out.violated_clause = clause1_seen ? 2 : 1;
  return out;
}

std::optional<Plan> suffplus_search(const MapFamily& phi, const Arc& k, const PolyCompact& l, double delta,
                                    const CertConfig& cfg, std::vector<std::string>* trace) {
  if (!(k.length() > 0) || k.length() >= 2 * kPi) throw Error(ErrorKind::Validation, "K must be a proper closed arc");
  if (!(delta > 0)) throw Error(ErrorKind::Validation, "delta must be positive");
  auto note = [&](int n, const std::string& s) {
    if (trace) trace->push_back(describe(n, s));
  };
  const Polyline kp = k.polyline(1024);
  for (int n = phi.first_index; n <= cfg.n_max; ++n) {
    try {
      if (set_distance(image_curve_compact(phi, n, kp), l) <= cfg.tolerance) {
        note(n, "image meets L");
        continue;
      }
      Plan plan;
      plan.n = n;
      plan.k = k;
      if (phi.kind == MapKind::TangentCircles) {
        // The small circle is the image of [-pi/n, pi/n] modulo 2 pi.
        const double half = kPi / n;
        std::optional<double> centre;
        bool partial = false;
        for (long j = std::lround(std::floor(k.alpha / (2 * kPi))) - 1; j <= std::lround(std::ceil(k.beta / (2 * kPi))) + 1;
             ++j) {
          const double c = 2 * kPi * static_cast<double>(j);
          if (c + half < k.alpha || c - half > k.beta) continue;
          if (c - half > k.alpha && c + half < k.beta) centre = c;
          else partial = true;
        }
        if (partial) {
          note(n, "K ends inside the non-injective zone");
          continue;
        }
        if (centre) {
          if (2 * half > delta) {
            note(n, "non-injective zone longer than delta");
            continue;
          }
          plan.deltas = {*centre - half, *centre + half};
        }
      } else {
        const Injectivity inj = injectivity_probe(phi, n, PolyCompact::thin({kp}), cfg.injectivity_samples);
        if (!inj.injective) {
          note(n, "not injective on K and no partition rule for " + std::string(to_string(phi.kind)));
          continue;
        }
      }

      // Partition K into the I_m and the closures of the pieces of U.
      double start = k.alpha;
      for (int m = 0; m < plan.l(); ++m) {
        plan.u.push_back({start, plan.deltas[2 * m]});
        start = plan.deltas[2 * m + 1];
      }
      plan.u.push_back({start, k.beta});

      bool ok = true;
      std::vector<Polyline> u_inner;
      for (const Arc& a : plan.u) {
        // U is open at the seams; test a slightly shrunken copy.
        const double mu = plan.l() > 0 ? 0.05 * (plan.deltas[1] - plan.deltas[0]) : 0;
        const double a0 = a.alpha + (a.alpha > k.alpha ? mu : 0);
        const double a1 = a.beta - (a.beta < k.beta ? mu : 0);
        if (a1 > a0) u_inner.push_back(Arc{a0, a1}.polyline(1024));
      }
      for (int m = 0; m < plan.l() && ok; ++m) {
        const Polyline img = image_of(phi, n, plan.i(m).polyline(1024));
        if (!img.closed || !is_simple(img)) {
          note(n, "image of I_m is not a Jordan curve");
          ok = false;
          break;
        }
        PolyCompact hull = polynomial_hull(PolyCompact::thin({img}));
        for (const Polyline& p : u_inner) {
          if (set_distance(hull, image_curve_compact(phi, n, p)) <= cfg.tolerance) {
            note(n, "hull of image(I_m) meets image(K \\ I_m)");
            ok = false;
            break;
          }
        }
        plan.hulls.push_back(std::move(hull));
      }
      if (!ok) continue;
      if (plan.l() > 0 && !u_inner.empty()) {
        const Injectivity inj = injectivity_probe(phi, n, PolyCompact::thin(u_inner), cfg.injectivity_samples);
        if (!inj.injective) {
          note(n, "not injective on U");
          continue;
        }
      }
      note(n, "plan with l=" + std::to_string(plan.l()));
      return plan;
    } catch (const Error& e) {
      note(n, std::string(to_string(e.kind())) + ": " + e.what());
    }
  }
  return std::nullopt;
}

std::optional<Obstruction> impossibility_detector(const MapFamily& phi, const PolyCompact& g, const Domain& omega,
                                                  const CertConfig& cfg) {
  std::vector<int> index;
  std::vector<Polyline> curves;
  for (int n = phi.first_index; n <= cfg.n_max; ++n) {
    try {
      if (auto c = image_jordan_curve(phi, n, g)) {
        index.push_back(n);
        curves.push_back(std::move(*c));
      }
    } catch (const Error&) {
    }
  }
  const std::size_t m = curves.size();
  std::vector<std::vector<char>> nested(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) nested[i][j] = strictly_inside(curves[i], curves[j]);

  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (!nested[a][b]) continue;
      for (std::size_t c = 0; c < m; ++c) {
        if (!nested[b][c]) continue;
        const PolyCompact between = PolyCompact::fat({make_face(curves[a], {curves[c]})});
        if (!containment_violation(between, omega)) return Obstruction{index[a], index[b], index[c]};
      }
    }
  return std::nullopt;
}

namespace {

TopologySummary summarize(int holes_of_g, const Domain& omega) {
  TopologySummary t;
  t.holes_of_g = holes_of_g;
  t.holes_of_omega = obstacle_count(omega);
  if (omega.truncation) {
    t.omega_truncated = true;
    t.truncation_cutoff = omega.truncation->cutoff;
  }
  return t;
}

void truncation_note(CertReport& r, const Domain& omega, const CertConfig& cfg) {
  if (omega.truncation && cfg.truncation_note_required)
    r.notes.push_back("omega is truncated: generator '" + omega.truncation->generator_id + "' cut at " +
                      std::to_string(omega.truncation->cutoff) + " obstacles; verdicts hold for the finite model");
}

std::string scope_note(std::size_t ks, std::size_t ls, const CertConfig& cfg) {
  std::ostringstream os;
  os << "sampled scope: " << ks << " K x " << ls << " L x " << cfg.N_grid.size() << " N, n <= " << cfg.n_max;
  return os.str();
}

}  // namespace

CertReport certify(const MapFamily& phi, const Domain& g, const Domain& omega, const CertConfig& cfg) {
  cfg.validate();
  validate(g);
  validate(omega);
  CertReport r;
  r.topology = summarize(obstacle_count(g), omega);
  truncation_note(r, omega, cfg);

  const Structural st = structural_negative(g, omega);
  if (!st.caveat.empty()) r.notes.push_back(st.caveat);
  if (st.no) {
    r.verdict = Verdict::StructuralNo;
    r.condition = "structural";
    r.anchor = st.anchor;
    return r;
  }

  Mode mode = Mode::Main;
  if (g.simply_connected()) {
    mode = Mode::SimplyConnected;
    r.condition = "simply connected G: injectivity and disjointness";
  } else if (obstacle_count(g) >= 2) {
    mode = Mode::TwoHoles;
    r.condition = "G with at least two holes: image omega-convex and disjoint from L";
  } else {
    r.condition = "main characterization: image disjoint from L and image ∪ L omega-convex";
  }

  const std::vector<PolyCompact> ks = exhaustion(g, cfg.exhaustion_depth);
  const std::vector<PolyCompact> ls = exhaustion(omega, cfg.exhaustion_depth);
  r.notes.push_back(scope_note(ks.size(), ls.size(), cfg));

  const int grid = static_cast<int>(cfg.N_grid.size());
  const int pairs = static_cast<int>(ks.size() * ls.size());
  r.witnesses.resize(static_cast<std::size_t>(pairs) * grid);
  std::vector<char> sampled(r.witnesses.size(), 0);
  parallel_for(pairs, [&](int p) {
    const int ki = p / static_cast<int>(ls.size()), li = p % static_cast<int>(ls.size());
    std::string error;
    try {
      require_membership(ks[ki], g, "K");
      require_membership(ls[li], omega, "L");
    } catch (const Error& e) {
      error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    const Evaluator eval = cached(mode, phi, ks[ki], ls[li], omega, cfg);
    for (int t = 0; t < grid; ++t) {
      const std::size_t idx = static_cast<std::size_t>(p) * grid + t;
      SampleRecord& rec = r.witnesses[idx];
      rec.k_id = ki;
      rec.l_id = li;
      rec.N = cfg.N_grid[t];
      rec.error = error;
      if (!error.empty()) continue;
      std::optional<int> image_n;
      const Search s = search(mode, phi.first_index, rec.N, cfg.n_max, eval, mode == Mode::Main ? &image_n : nullptr);
      rec.n = s.n;
      rec.image_clause_n = mode == Mode::Main ? image_n : s.n;
      rec.checks = s.trace;
      sampled[idx] = s.probabilistic;
    }
  });
  r.probabilistic = std::any_of(sampled.begin(), sampled.end(), [](char c) { return c != 0; });
  if (r.probabilistic) r.notes.push_back("some injectivity verdicts are sampled (probabilistic)");

  const bool all = std::all_of(r.witnesses.begin(), r.witnesses.end(), [](const SampleRecord& s) { return s.n.has_value(); });
  if (all) {
    r.verdict = Verdict::Pass;
    r.anchor = r.condition;
    return r;
  }
  r.verdict = Verdict::Inconclusive;
  r.anchor = "search exhausted at n_max=" + std::to_string(cfg.n_max);
  const bool union_clause_only = mode == Mode::Main && std::any_of(r.witnesses.begin(), r.witnesses.end(), [](const SampleRecord& s) {
                                   return !s.n && s.image_clause_n && s.error.empty();
                                 });
  if (union_clause_only) {
    r.obstruction = impossibility_detector(phi, ks.back(), omega, cfg);
    if (r.obstruction) {
      r.verdict = Verdict::Fail;
      r.anchor = "union-convexity clause fails while per-image clauses pass; nested images " +
                 std::to_string(r.obstruction->n1) + " ⊃ " + std::to_string(r.obstruction->n2) + " ⊃ " +
                 std::to_string(r.obstruction->n3) + " bound a region inside omega (maximum modulus)";
    }
  }
  return r;
}

CertReport certify_thin(const MapFamily& phi, const std::vector<Polyline>& g, const Domain& omega, bool whole,
                        const CertConfig& cfg) {
  cfg.validate();
  validate(omega);
  const PolyCompact gk = PolyCompact::thin(g);
  validate(gk);
  CertReport r;
  r.topology = summarize(hole_count(gk), omega);
  truncation_note(r, omega, cfg);
  r.condition = whole ? "family {G}: injective on G, image disjoint from L, image ∪ L omega-convex"
                      : "proper compacts of G: injective on K (or a suff-plus plan), image disjoint from L";

  const std::vector<PolyCompact> ks = whole ? std::vector<PolyCompact>{gk} : thin_compact_family(g, cfg.exhaustion_depth);
  const std::vector<PolyCompact> ls = exhaustion(omega, cfg.exhaustion_depth);
  r.notes.push_back(scope_note(ks.size(), ls.size(), cfg));

  const int grid = static_cast<int>(cfg.N_grid.size());
  const int pairs = static_cast<int>(ks.size() * ls.size());
  r.witnesses.resize(static_cast<std::size_t>(pairs) * grid);
  std::vector<char> sampled(r.witnesses.size(), 0);
  parallel_for(pairs, [&](int p) {
    const int ki = p / static_cast<int>(ls.size()), li = p % static_cast<int>(ls.size());
    const Evaluator eval = cached(Mode::Thin, phi, ks[ki], ls[li], omega, cfg);
    const std::optional<Arc> arc_k = !whole && ks[ki].pieces.size() == 1 ? as_unit_arc(ks[ki].pieces.front()) : std::nullopt;
    for (int t = 0; t < grid; ++t) {
      const std::size_t idx = static_cast<std::size_t>(p) * grid + t;
      SampleRecord& rec = r.witnesses[idx];
      rec.k_id = ki;
      rec.l_id = li;
      rec.N = cfg.N_grid[t];
      try {
        const Search s = search(Mode::Thin, phi.first_index, rec.N, cfg.n_max, eval);
        rec.n = s.n;
        rec.checks = s.trace;
        sampled[idx] = s.probabilistic;
        if (!s.n && arc_k) {
          MapFamily from_n = phi;
          from_n.first_index = std::max(phi.first_index, rec.N);
          if (auto plan = suffplus_search(from_n, *arc_k, ls[li], cfg.plan_delta, cfg, &rec.checks)) rec.n = plan->n;
        }
        rec.image_clause_n = rec.n;
      } catch (const Error& e) {
        rec.error = std::string(to_string(e.kind())) + ": " + e.what();
      }
    }
  });
  r.probabilistic = std::any_of(sampled.begin(), sampled.end(), [](char c) { return c != 0; });

  if (whole) {
    r.obstruction = impossibility_detector(phi, gk, omega, cfg);
    if (r.obstruction) {
      r.verdict = Verdict::Fail;
      r.anchor = "nested image curves " + std::to_string(r.obstruction->n1) + " ⊃ " + std::to_string(r.obstruction->n2) +
                 " ⊃ " + std::to_string(r.obstruction->n3) + " bound a region inside omega (maximum modulus)";
      return r;
    }
  }
  const bool all = std::all_of(r.witnesses.begin(), r.witnesses.end(), [](const SampleRecord& s) { return s.n.has_value(); });
  r.verdict = all ? Verdict::Pass : Verdict::Inconclusive;
  r.anchor = all ? r.condition : "search exhausted at n_max=" + std::to_string(cfg.n_max);
  return r;
}

}  // namespace holo
