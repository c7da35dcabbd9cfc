#include "holo/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace holo {

const char* to_string(UniversalCertificate::Status s) {
  switch (s) {
    case UniversalCertificate::Status::Complete: return "complete";
    case UniversalCertificate::Status::Aborted: return "aborted";
    case UniversalCertificate::Status::Refused: return "refused";
  }
  return "?";
}

bool UniversalCertificate::drift_bound_holds() const {
  return std::all_of(finals.begin(), finals.end(), [](const FinalError& f) { return f.error <= f.bound; });
}

namespace {

std::string last_trace(const Search& s) { return s.trace.empty() ? "" : ": " + s.trace.back(); }

// A step whose fit stayed above eps; worst = max(achieved, drift).
struct StepFailure : Error {
  double worst;
  StepFailure(const std::string& what, double w) : Error(ErrorKind::Construction, what), worst(w) {}
};

// Points of a curve spaced evenly by arc length of their image under phi_n.
std::vector<Complex> push_forward_points(const MapFamily& phi, int n, const Polyline& c, int count, double phase) {
  if (count <= 0) return {};
  const int dense = std::max(4 * count, 512);
  std::vector<double> t(dense), s(dense);
  Complex prev{};
  for (int j = 0; j < dense; ++j) {
    t[j] = c.closed ? static_cast<double>(j) / dense : static_cast<double>(j) / (dense - 1);
    const Complex w = phi.apply(n, c.at(t[j]));
    s[j] = j == 0 ? 0 : s[j - 1] + std::abs(w - prev);
    prev = w;
  }
  double total = s.back();
  if (c.closed) total += std::abs(phi.apply(n, c.at(0)) - prev);
  std::vector<Complex> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    double target = c.closed ? total * (k + phase) / count
                             : (count == 1 ? 0.5 * total : std::min(total, total * (k + phase) / (count - 1)));
    double param;
    if (target >= s.back()) {
      const double tail = total - s.back();
      const double end = c.closed ? 1.0 : t.back();
      param = tail > 0 ? t.back() + (end - t.back()) * (target - s.back()) / tail : t.back();
    } else {
      const auto it = std::upper_bound(s.begin(), s.end(), target);
      const std::size_t j = static_cast<std::size_t>(it - s.begin()) - 1;
      const double span = s[j + 1] - s[j];
      param = span > 0 ? t[j] + (t[j + 1] - t[j]) * (target - s[j]) / span : t[j];
    }
    out.push_back(c.at(std::min(param, c.closed ? std::nextafter(1.0, 0.0) : 1.0)));
  }
  return out;
}

double image_length(const MapFamily& phi, int n, const Polyline& c) { return image_of(phi, n, c).length(); }

double curves_length(const PolyCompact& k) {
  double len = 0;
  for (const Polyline* c : k.curves()) len += c->length();
  return len;
}

// One part of a fit set: count samples with values.
struct Part {
  double weight = 0;
  std::function<std::vector<Sample>(int, double)> draw;
};

Sampler combine(std::vector<Part> parts) {
  double total = 0;
  for (const Part& p : parts) total += p.weight;
  return [parts, total](int count, double phase) {
    std::vector<Sample> out;
    // Every part gets at least a fifth of its proportional share.
    const double floor_share = 0.2 / parts.size();
    std::vector<int> counts;
    double sum = 0;
    for (const Part& p : parts) sum += std::max(p.weight / total, floor_share);
    for (const Part& p : parts)
      counts.push_back(std::max(8, static_cast<int>(std::ceil(count * std::max(p.weight / total, floor_share) / sum))));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::vector<Sample> s = parts[i].draw(counts[i], phase);
      out.insert(out.end(), s.begin(), s.end());
    }
    return out;
  };
}

// Samples phi_n(zeta) on the curves of K with values value(zeta) - f_cur(phi_n(zeta)).
Part image_part(const MapFamily& phi, int n, const PolyCompact& k, std::function<Complex(Complex)> value,
                const RationalFunction& f_cur) {
  std::vector<Polyline> curves;
  std::vector<double> lengths;
  double total = 0;
  for (const Polyline* c : k.curves()) {
    curves.push_back(*c);
    lengths.push_back(image_length(phi, n, *c));
    total += lengths.back();
  }
  Part p;
  p.weight = total;
  p.draw = [=, &phi](int count, double phase) {
    std::vector<Sample> out;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const int c = std::max(4, static_cast<int>(std::ceil(count * lengths[i] / total)));
      for (Complex zeta : push_forward_points(phi, n, curves[i], c, phase)) {
        const Complex w = phi.apply(n, zeta);
        out.push_back({w, value(zeta) - f_cur(w)});
      }
    }
    return out;
  };
  return p;
}

Part zero_part(const PolyCompact& l) {
  Part p;
  p.weight = curves_length(l);
  p.draw = [l](int count, double phase) {
    std::vector<Sample> out;
    for (Complex z : sample_compact(l, count, phase)) out.push_back({z, 0});
    return out;
  };
  return p;
}

double sup_on_image(const RationalFunction& f, const MapFamily& phi, int n, const PolyCompact& k,
                    const std::function<Complex(Complex)>& g, int samples) {
  double worst = 0;
  const auto curves = k.curves();
  for (const Polyline* c : curves)
    for (Complex zeta : push_forward_points(phi, n, *c, std::max(64, samples / static_cast<int>(curves.size())), 0.25))
      worst = std::max(worst, std::abs(f(phi.apply(n, zeta)) - g(zeta)));
  return worst;
}

double sup_on(const RationalFunction& f, const PolyCompact& l, int samples) {
  double worst = 0;
  for (Complex z : sample_compact(l, samples, 0.25)) worst = std::max(worst, std::abs(f(z)));
  return worst;
}

struct FitOutcome {
  RationalFunction correction;
  double achieved = std::numeric_limits<double>::infinity();
  double drift = std::numeric_limits<double>::infinity();
  int poly_degree = 0, pole_degree = 0;
  std::vector<Complex> sites;
  std::string failure;
};

// Fits with doubling degrees until measure(correction) reports both errors within eps.
FitOutcome escalate(const PolyCompact& a, const Domain& omega, const Sampler& sampler, double eps,
                    const ConstructConfig& cfg,
                    const std::function<std::pair<double, double>(const RationalFunction&)>& measure) {
  FitOutcome best;
  FitConfig fc = cfg.fit;
  double last = std::numeric_limits<double>::infinity();
  for (;;) {
    try {
      const FitResult fit = runge_fit(a, omega, sampler, fc);
      const auto [achieved, drift] = measure(fit.f);
      const double err = std::max(achieved, drift);
      if (std::max(achieved, drift) < std::max(best.achieved, best.drift)) {
        best.correction = fit.f;
        best.achieved = achieved;
        best.drift = drift;
        best.poly_degree = fc.poly_degree;
        best.pole_degree = fc.pole_degree;
        best.sites = fit.pole_sites;
      }
      if (achieved <= eps && drift <= eps) return best;
      // Doubling the degree bought less than a third: give up on this fit set.
      if (err > 0.7 * last) return best;
      last = err;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Conditioning) throw;
      best.failure = e.what();
      return best;
    }
    if (fc.poly_degree >= cfg.max_poly_degree) return best;
    fc.poly_degree = std::min(cfg.max_poly_degree, 2 * fc.poly_degree);
    fc.pole_degree = std::min(cfg.max_pole_degree, 2 * fc.pole_degree);
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

void check_inside(const PolyCompact& k, const Domain& g, const std::string& id) {
  if (auto v = containment_violation(k, g))
    throw Error(ErrorKind::Precondition, "target '" + id + "': K is not contained in G", *v);
}

double angle_in(const Arc& k, Complex z) {
  const double a = std::arg(z);
  return a + 2 * kPi * std::ceil((k.alpha - a) / (2 * kPi) - 1e-12);
}

std::optional<Arc> unit_arc_of(const PolyCompact& k) {
  if (k.pieces.size() != 1 || !k.faces.empty()) return std::nullopt;
  const Polyline& p = k.pieces.front();
  if (p.closed) return std::nullopt;
  for (const Complex& z : p.vertices)
    if (std::abs(std::abs(z) - 1) > 1e-6) return std::nullopt;
  double t = std::arg(p.vertices.front());
  const double start = t;
  for (std::size_t i = 1; i < p.vertices.size(); ++i) t += std::arg(p.vertices[i] / p.vertices[i - 1]);
  return t < start ? Arc{t, start} : Arc{start, t};
}

}  // namespace

StepResult birkhoff_step(const RationalFunction& f_cur, const PolyCompact& l, const Target& target,
                         const MapFamily& phi, int n, const Domain& omega, double eps, const ConstructConfig& cfg) {
  if (!(eps > 0)) throw Error(ErrorKind::Validation, "eps must be positive");
  const PolyCompact img = image_of(phi, n, target.k);
  const PolyCompact a = unite(img, l);
  const Sampler sampler = combine({image_part(phi, n, target.k, target.g, f_cur), zero_part(l)});
  const FitOutcome out = escalate(a, omega, sampler, eps, cfg, [&](const RationalFunction& c) {
    const RationalFunction next = f_cur + c;
    return std::make_pair(sup_on_image(next, phi, n, target.k, target.g, cfg.check_samples),
                          sup_on(c, l, cfg.check_samples));
  });
  if (!(out.achieved <= eps && out.drift <= eps)) {
    std::string why = "step for target '" + target.id + "' at n=" + std::to_string(n) + " reached error " +
                      fmt(out.achieved) + " and drift " + fmt(out.drift) + " above eps " + fmt(eps) +
                      " (degree " + std::to_string(out.poly_degree) + ")";
    if (!out.failure.empty()) why += "; " + out.failure;
    throw StepFailure(why, std::max(out.achieved, out.drift));
  }
  StepResult r;
  r.f_next = f_cur + out.correction;
  r.n = n;
  r.achieved = out.achieved;
  r.drift = out.drift;
  r.poly_degree = out.poly_degree;
  r.pole_degree = out.pole_degree;
  r.pole_sites = out.sites;
  return r;
}

namespace {

// Tries up to step_attempts successive witnesses at each degree before doubling
// it, so the lowest workable degree wins and f grows slowly off L.
StepResult step_with_retries(const RationalFunction& f, const PolyCompact& l, const Target& t, const MapFamily& phi,
                             const Domain& omega, double eps, const ConstructConfig& cfg, const Search& first,
                             std::vector<std::string>& notes) {
  std::vector<int> witnesses{*first.n};
  while (static_cast<int>(witnesses.size()) < cfg.step_attempts) {
    const Search s = induction_condition(phi, omega, t.k, l, witnesses.back() + 1, cfg.cert);
    if (!s) break;
    witnesses.push_back(*s.n);
  }
  std::optional<StepFailure> best;
  for (int degree = cfg.fit.poly_degree;; degree = std::min(2 * degree, cfg.max_poly_degree)) {
    ConstructConfig c = cfg;
    c.fit.poly_degree = c.max_poly_degree = degree;
    c.fit.pole_degree = std::min(cfg.max_pole_degree, cfg.fit.pole_degree * degree / std::max(1, cfg.fit.poly_degree));
    for (int n : witnesses) {
      try {
        return birkhoff_step(f, l, t, phi, n, omega, eps, c);
      } catch (const StepFailure& e) {
        if (!best || !(best->worst <= e.worst)) best = e;
      }
    }
    if (degree >= cfg.max_poly_degree) break;
  }
  notes.push_back("target '" + t.id + "': tried witnesses n=" + std::to_string(witnesses.front()) + ".." +
                  std::to_string(witnesses.back()));
  throw *best;
}

struct Induction {
  UniversalCertificate cert;
  PolyCompact l;
  int n_prev = -1;
  std::vector<double> eps;
  std::vector<std::pair<const Target*, int>> done;
};

void finish(Induction& ind, const MapFamily& phi, const ConstructConfig& cfg) {
  UniversalCertificate& c = ind.cert;
  for (const StepRecord& s : c.steps) {
    c.total_drift += s.drift;
    c.budget += s.eps_budget;
  }
  for (std::size_t i = 0; i < ind.done.size(); ++i) {
    FinalError fe;
    fe.target_id = ind.done[i].first->id;
    fe.n = ind.done[i].second;
    fe.error = sup_on_image(c.f, phi, fe.n, ind.done[i].first->k, ind.done[i].first->g, cfg.check_samples);
    fe.bound = ind.eps[i];
    for (std::size_t j = i + 1; j < ind.done.size(); ++j) fe.bound += ind.eps[j];
    c.finals.push_back(fe);
  }
}

StepRecord record(const Target& t, const StepResult& s, double eps) {
  StepRecord r;
  r.target_id = t.id;
  r.n = s.n;
  r.eps_target = eps;
  r.eps_budget = eps;
  r.achieved = s.achieved;
  r.drift = s.drift;
  r.poly_degree = s.poly_degree;
  r.pole_degree = s.pole_degree;
  return r;
}

}  // namespace

UniversalCertificate build_universal(const MapFamily& phi, const Domain& g, const Domain& omega,
                                     const std::vector<Target>& targets, const ConstructConfig& cfg) {
  cfg.cert.validate();
  Induction ind;
  const Structural st = structural_negative(g, omega);
  if (st.no) {
    ind.cert.status = UniversalCertificate::Status::Refused;
    ind.cert.reason = "StructuralNo: " + st.anchor;
    return ind.cert;
  }
  if (!st.caveat.empty()) ind.cert.notes.push_back(st.caveat);
  ind.l = exhaustion(omega, 1).front();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const Target& t = targets[i];
    const double eps = cfg.eps0 * std::ldexp(1.0, -static_cast<int>(i));
    try {
      check_inside(t.k, g, t.id);
      const Search s = induction_condition(phi, omega, t.k, ind.l, ind.n_prev + 1, cfg.cert);
      if (!s) throw Error(ErrorKind::Construction, "no witness n <= " + std::to_string(cfg.cert.n_max) +
                                                       " for target '" + t.id + "'" + last_trace(s));
      const StepResult step = step_with_retries(ind.cert.f, ind.l, t, phi, omega, eps, cfg, s, ind.cert.notes);
      ind.cert.steps.push_back(record(t, step, eps));
      ind.cert.f = step.f_next;
      ind.l = unite(ind.l, image_of(phi, step.n, t.k));
      ind.n_prev = step.n;
      ind.eps.push_back(eps);
      ind.done.emplace_back(&t, step.n);
    } catch (const Error& e) {
      ind.cert.status = UniversalCertificate::Status::Aborted;
      ind.cert.reason = e.what();
      break;
    }
  }
  finish(ind, phi, cfg);
  return ind.cert;
}

double continuity_radius(const std::function<Complex(Complex)>& h, const Arc& k, double bound, double d0) {
  const int m = 1000;
  std::vector<Complex> z(m), v(m);
  for (int i = 0; i < m; ++i) {
    z[i] = k.at(k.alpha + k.length() * i / (m - 1));
    v[i] = h(z[i]);
  }
  for (double d = d0; d > 1e-6; d /= 2) {
    bool ok = true;
    for (int i = 0; i < m && ok; ++i)
      for (int j = i + 1; j < m && ok; ++j)
        if (std::abs(z[i] - z[j]) <= 2 * d && std::abs(v[i] - v[j]) > bound) ok = false;
    if (ok) return d;
  }
  throw Error(ErrorKind::Construction, "target is not uniformly continuous at the requested bound");
}

CorridorTarget corridor_target(const Plan& plan, const MapFamily& phi, const std::function<Complex(Complex)>& h,
                               const RationalFunction& f_cur, const PolyCompact& l, double delta) {
  const int lm = plan.l();
  const std::vector<double>& d = plan.deltas;
  std::vector<Complex> constants(lm);
  CorridorTarget ct;
  for (int m = 0; m < lm; ++m) {
    const double next = m + 1 < lm ? d[2 * m + 2] : plan.k.beta;
    const double eta = 0.5 * std::min(next - d[2 * m + 1], 2 * delta - (d[2 * m + 1] - d[2 * m]));
    if (!(eta > 0)) throw Error(ErrorKind::Construction, "corridor width infeasible for I_" + std::to_string(m + 1));
    ct.eta.push_back(eta);
    constants[m] = h(std::polar(1.0, d[2 * m]));
  }
  const std::vector<double> eta = ct.eta;
  ct.on_k = [d, eta, constants, h, lm](double theta) {
    for (int m = 0; m < lm; ++m) {
      const double a = d[2 * m], b = d[2 * m + 1];
      if (theta >= a && theta <= b) return constants[m];
      if (theta > b && theta <= b + eta[m]) {
        const double s = a + (theta - b) * (b + eta[m] - a) / eta[m];
        return h(std::polar(1.0, s));
      }
    }
    return h(std::polar(1.0, theta));
  };

  const int scan = 20000;
  Complex prev = ct.on_k(plan.k.alpha);
  for (int i = 0; i <= scan; ++i) {
    const double theta = plan.k.alpha + plan.k.length() * i / scan;
    const Complex v = ct.on_k(theta);
    ct.max_jump = std::max(ct.max_jump, std::abs(v - prev));
    ct.deviation = std::max(ct.deviation, std::abs(v - h(std::polar(1.0, theta))));
    prev = v;
  }

  PolyCompact assembled;
  for (const PolyCompact& hull : plan.hulls) assembled = unite(assembled, hull);
  PolyCompact u_arcs;
  for (const Arc& a : plan.u)
    if (a.length() > 0) u_arcs.pieces.push_back(a.polyline(1024));
  assembled = unite(assembled, image_of(phi, plan.n, u_arcs));
  ct.fit_set = unite(assembled, l);
  ct.connected_complement = hole_count(ct.fit_set) == 0;

  std::vector<Part> parts;
  const Arc k = plan.k;
  auto on_k = ct.on_k;
  parts.push_back(image_part(phi, plan.n, u_arcs, [on_k, k](Complex zeta) { return on_k(angle_in(k, zeta)); }, f_cur));
  for (int m = 0; m < lm; ++m) {
    const Complex c = constants[m];
    parts.push_back(image_part(phi, plan.n, PolyCompact::thin({plan.i(m).polyline(1024)}),
                               [c](Complex) { return c; }, f_cur));
  }
  parts.push_back(zero_part(l));
  ct.sampler = combine(std::move(parts));
  return ct;
}

UniversalCertificate build_thin_universal(const MapFamily& phi, const std::vector<Polyline>& g, const Domain& omega,
                                          const std::vector<Target>& targets, const ConstructConfig& cfg) {
  cfg.cert.validate();
  Induction ind;
  ind.l = exhaustion(omega, 1).front();
  const PolyCompact gk = PolyCompact::thin(g);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const Target& t = targets[i];
    const double eps = cfg.eps0 * std::ldexp(1.0, -static_cast<int>(i));
    try {
      for (const Polyline* c : t.k.curves())
        for (const Complex& z : c->vertices)
          if (distance_to_boundary(gk, z) > 1e-6)
            throw Error(ErrorKind::Precondition, "target '" + t.id + "': K is not contained in G", z);
      if (hole_count(t.k) != 0) throw Error(ErrorKind::Precondition, "target '" + t.id + "': K must have connected complement");
      const Search s = induction_condition(phi, omega, t.k, ind.l, ind.n_prev + 1, cfg.cert);
      if (s) {
        const StepResult step = step_with_retries(ind.cert.f, ind.l, t, phi, omega, eps, cfg, s, ind.cert.notes);
        ind.cert.steps.push_back(record(t, step, eps));
        ind.cert.f = step.f_next;
        ind.l = unite(ind.l, image_of(phi, step.n, t.k));
        ind.n_prev = step.n;
      } else {
        const std::optional<Arc> arc_k = unit_arc_of(t.k);
        if (!arc_k)
          throw Error(ErrorKind::Construction, "no witness for target '" + t.id + "' and K is not a unit-circle arc" + last_trace(s));
        const double delta = cfg.plan_delta > 0 ? cfg.plan_delta : continuity_radius(t.g, *arc_k, eps / 2);
        MapFamily from = phi;
        from.first_index = std::max(phi.first_index, ind.n_prev + 1);
        std::vector<std::string> trace;
        const std::optional<Plan> plan = suffplus_search(from, *arc_k, ind.l, delta, cfg.cert, &trace);
        if (!plan)
          throw Error(ErrorKind::Construction, "no suff-plus plan for target '" + t.id + "' with delta " + fmt(delta) +
                                                   (trace.empty() ? "" : ": " + trace.back()));
        const CorridorTarget ct = corridor_target(*plan, phi, t.g, ind.cert.f, ind.l, delta);
        if (!ct.connected_complement)
          throw Error(ErrorKind::Construction, "assembled corridor compact does not have connected complement");
        if (ct.max_jump > eps / 4)
          throw Error(ErrorKind::Construction, "corridor target fails the continuity scan (jump " + fmt(ct.max_jump) + ")");
        const double fit_eps = eps - ct.deviation;
        if (!(fit_eps > 0))
          throw Error(ErrorKind::Construction, "corridor deviation " + fmt(ct.deviation) + " exhausts eps " + fmt(eps));
        const int n = plan->n;
        const FitOutcome out = escalate(ct.fit_set, omega, ct.sampler, fit_eps, cfg, [&](const RationalFunction& c) {
          const RationalFunction next = ind.cert.f + c;
          double worst = 0;
          for (const Polyline* p : t.k.curves())
            for (Complex zeta : push_forward_points(phi, n, *p, cfg.check_samples, 0.25))
              worst = std::max(worst, std::abs(next(phi.apply(n, zeta)) - ct.on_k(angle_in(*arc_k, zeta))));
          return std::make_pair(worst, sup_on(c, ind.l, cfg.check_samples));
        });
        const RationalFunction next = ind.cert.f + out.correction;
        StepResult step;
        step.f_next = next;
        step.n = n;
        step.achieved = sup_on_image(next, phi, n, t.k, t.g, cfg.check_samples);
        step.drift = out.drift;
        step.poly_degree = out.poly_degree;
        step.pole_degree = out.pole_degree;
        if (!(step.achieved <= eps && step.drift <= eps))
          throw Error(ErrorKind::Construction, "corridor step for target '" + t.id + "' at n=" + std::to_string(n) +
                                                   " reached error " + fmt(step.achieved) + " and drift " +
                                                   fmt(step.drift) + " above eps " + fmt(eps));
        StepRecord rec = record(t, step, eps);
        rec.plan_l = plan->l();
        ind.cert.steps.push_back(rec);
        ind.cert.notes.push_back("target '" + t.id + "': suff-plus plan at n=" + std::to_string(n) + " with l=" +
                                 std::to_string(plan->l()) + ", corridor jump " + fmt(ct.max_jump) + ", deviation " +
                                 fmt(ct.deviation));
        ind.cert.f = next;
        ind.l = ct.fit_set;
        ind.n_prev = n;
      }
      ind.eps.push_back(eps);
      ind.done.emplace_back(&t, ind.n_prev);
    } catch (const Error& e) {
      ind.cert.status = UniversalCertificate::Status::Aborted;
      ind.cert.reason = e.what();
      break;
    }
  }
  finish(ind, phi, cfg);
  return ind.cert;
}

}  // namespace holo
