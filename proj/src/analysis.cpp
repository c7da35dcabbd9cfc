#include "holo/analysis.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

namespace holo {

namespace {

// Points at sorted arc-length fractions of one polyline, in a single walk.
std::vector<Complex> points_at(const Polyline& p, const std::vector<double>& ts) {
  std::vector<Complex> out;
  out.reserve(ts.size());
  const double total = p.length();
  const std::size_t m = p.segment_count();
  std::size_t seg = 0;
  double before = 0;
  for (double t : ts) {
    const double target = std::clamp(t, 0.0, 1.0) * total;
    while (seg + 1 < m && before + std::abs(p.seg_b(seg) - p.seg_a(seg)) < target) {
      before += std::abs(p.seg_b(seg) - p.seg_a(seg));
      ++seg;
    }
    const double len = std::abs(p.seg_b(seg) - p.seg_a(seg));
    const double u = len > 0 ? std::clamp((target - before) / len, 0.0, 1.0) : 0.0;
    out.push_back(p.seg_a(seg) + u * (p.seg_b(seg) - p.seg_a(seg)));
  }
  return out;
}

std::vector<double> params_for(const Polyline& p, int n, double phase) {
  std::vector<double> ts;
  if (p.closed) {
    for (int j = 0; j < n; ++j) ts.push_back((j + phase) / n);
    return ts;
  }
  if (phase == 0) {
    for (int j = 0; j < n; ++j) ts.push_back(n > 1 ? static_cast<double>(j) / (n - 1) : 0.0);
    return ts;
  }
  ts.push_back(0);
  for (int j = 0; j < n; ++j) ts.push_back((j + phase) / n);
  ts.push_back(1);
  return ts;
}

std::vector<int> share_counts(const std::vector<const Polyline*>& curves, int count) {
  double total = 0;
  for (const Polyline* c : curves) total += c->length();
  std::vector<int> n;
  for (const Polyline* c : curves) {
    const double share = total > 0 ? c->length() / total : 1.0 / curves.size();
    n.push_back(std::max(4, static_cast<int>(std::lround(share * count))));
  }
  return n;
}

}  // namespace

RationalFunction build_g_m(int m, Complex b, const std::vector<Complex>& lambdas) {
  if (m < 1) throw Error(ErrorKind::Validation, "g_m needs m >= 1");
  const std::size_t p = lambdas.size();
  if (p < 1) throw Error(ErrorKind::Validation, "g_m needs at least one pole");
  for (std::size_t i = 0; i < p; ++i) {
    if (std::abs(lambdas[i] - b) <= RationalFunction::kPoleTol)
      throw Error(ErrorKind::Validation, "b coincides with a pole", b);
    for (std::size_t j = i + 1; j < p; ++j)
      if (std::abs(lambdas[i] - lambdas[j]) <= RationalFunction::kPoleTol)
        throw Error(ErrorKind::Validation, "coincident poles", lambdas[i]);
  }
  // Numerator degree exceeds the denominator's by one: the polynomial part is
  // m (z - (p+1) b + sum lambda_i); residues are simple.
  Complex shift = -static_cast<double>(p + 1) * b;
  for (Complex l : lambdas) shift += l;
  const std::vector<Complex> poly{static_cast<double>(m) * shift, static_cast<double>(m)};
  std::vector<std::vector<Complex>> residues;
  for (std::size_t i = 0; i < p; ++i) {
    Complex r = static_cast<double>(m) * std::pow(lambdas[i] - b, static_cast<int>(p + 1));
    for (std::size_t j = 0; j < p; ++j)
      if (j != i) r /= lambdas[i] - lambdas[j];
    residues.push_back({r});
  }
  return RationalFunction::from_partial_fractions(poly, lambdas, residues);
}

std::vector<Complex> sample_compact(const PolyCompact& k, int count, double phase) {
  const std::vector<const Polyline*> curves = k.curves();
  if (curves.empty()) throw Error(ErrorKind::Validation, "cannot sample an empty compact");
  const std::vector<int> n = share_counts(curves, count);
  std::vector<Complex> out;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    std::vector<Complex> pts = points_at(*curves[i], params_for(*curves[i], n[i], phase));
    out.insert(out.end(), pts.begin(), pts.end());
  }
  return out;
}

Sampler sampler_from_function(const PolyCompact& k, std::function<Complex(Complex)> fn) {
  return [k, fn](int count, double phase) {
    std::vector<Sample> out;
    for (Complex z : sample_compact(k, count, phase)) out.push_back({z, fn(z)});
    return out;
  };
}

std::vector<Complex> pole_sites(const PolyCompact& a, const Domain& omega) {
  std::vector<Complex> sites;
  const std::vector<Component> comps = complement_components(a);
  std::vector<bool> used(omega.obstacles.size(), false);
  for (const Component& c : comps) {
    if (!c.bounded) continue;
    for (std::size_t i = 0; i < omega.obstacles.size(); ++i) {
      if (used[i]) continue;
      for (Complex w : omega.obstacles[i].witness_points()) {
        if (c.contains(w)) {
          used[i] = true;
          sites.push_back(omega.obstacles[i].site());
          break;
        }
      }
    }
  }
  if (omega.bounded()) {
    const Polyline& outer = *omega.outer;
    const std::vector<Complex> pts = sample_compact(a, 256, 0);
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < outer.vertices.size(); ++i) {
      double d = std::numeric_limits<double>::infinity();
      for (Complex z : pts) d = std::min(d, std::abs(z - outer.vertices[i]));
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    const std::size_t nv = outer.vertices.size();
    Complex tangent = outer.vertices[(best + 1) % nv] - outer.vertices[(best + nv - 1) % nv];
    if (signed_area(outer) < 0) tangent = -tangent;
    const Complex normal = tangent * Complex(0, -1) / std::abs(tangent);
    const double push = std::max(0.25 * best_d, 0.05 * outer.bbox().diameter());
    Complex site = outer.vertices[best] + push * normal;
    if (inside_curve(outer, site) || distance_to_curve(outer, site) < 0.5 * push) {
      const Box b = outer.bbox();
      site = Complex(b.xmax + 0.25 * b.diameter(), b.center().imag());
    }
    sites.push_back(site);
  }
  return sites;
}

FitResult fit_with_sites(const std::vector<Complex>& sites, const Sampler& target,
                         const FitConfig& cfg) {
  if (cfg.poly_degree < 0 || cfg.pole_degree < 0 || cfg.regularization < 0)
    throw Error(ErrorKind::Validation, "negative degree or regularization in fit config");
  const int nb = cfg.poly_degree + 1 + cfg.pole_degree * static_cast<int>(sites.size());
  const int m_req = cfg.boundary_samples > 0 ? cfg.boundary_samples : std::max(64, 8 * nb);
  if (m_req < 4 * nb) throw Error(ErrorKind::Validation, "fewer than four samples per basis function");
  const std::vector<Sample> fit = target(m_req, 0.0);
  const Eigen::Index m = static_cast<Eigen::Index>(fit.size());

  Eigen::VectorXcd z(m), b(m);
  Box box = Box::empty();
  for (Eigen::Index i = 0; i < m; ++i) {
    z(i) = fit[i].z;
    b(i) = fit[i].value;
    box.add(fit[i].z);
  }
  const Complex centre = box.center();
  double scale = 0;
  for (Eigen::Index i = 0; i < m; ++i) scale = std::max(scale, std::abs(z(i) - centre));
  scale = std::max(scale, 1e-12);

  Eigen::MatrixXcd h_poly;
  Eigen::MatrixXcd q_poly = arnoldi((z.array() - centre) / scale, cfg.poly_degree, h_poly);
  std::vector<Eigen::MatrixXcd> h_pole(sites.size());
  std::vector<double> s_pole(sites.size());
  Eigen::MatrixXcd design(m, nb);
  design.leftCols(cfg.poly_degree + 1) = q_poly;
  Eigen::Index col = cfg.poly_degree + 1;
  for (std::size_t s = 0; s < sites.size(); ++s) {
    double sp = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) sp = std::min(sp, std::abs(z(i) - sites[s]));
    if (!(sp > RationalFunction::kPoleTol))
      throw Error(ErrorKind::PoleProximity, "pole site lies on the fit set", sites[s]);
    s_pole[s] = sp;
    Eigen::VectorXcd x = sp * (z.array() - sites[s]).inverse();
    Eigen::MatrixXcd q = arnoldi(x, cfg.pole_degree, h_pole[s]);
    design.middleCols(col, cfg.pole_degree) = q.rightCols(cfg.pole_degree);
    col += cfg.pole_degree;
  }

  Eigen::VectorXd norms = Eigen::VectorXd::Ones(nb);
  if (cfg.column_scaling) {
    for (int j = 0; j < nb; ++j) norms(j) = std::max(design.col(j).norm(), 1e-300);
    design = design * norms.cwiseInverse().asDiagonal();
  }
  const double cmax = design.colwise().norm().maxCoeff();
  Eigen::MatrixXcd aug(m + nb, nb);
  aug.topRows(m) = design;
  aug.bottomRows(nb) = std::sqrt(cfg.regularization) * cmax * Eigen::MatrixXcd::Identity(nb, nb);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(m + nb);
  rhs.head(m) = b;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(aug);
  const auto r = qr.matrixR().diagonal().cwiseAbs();
  const double cond = r(0) / std::max(r(nb - 1), 1e-300);
  if (!(cond < 1e14))
    throw Error(ErrorKind::Conditioning, "least-squares system ill-conditioned (estimate " + std::to_string(cond) + ")");
  Eigen::VectorXcd c = qr.solve(rhs);

  c = c.cwiseQuotient(norms.cast<Complex>());

  std::vector<Expansion> terms;
  Expansion poly;
  poly.variable = Expansion::Variable::Affine;
  poly.centre = centre;
  poly.scale = scale;
  poly.hessenberg = h_poly;
  poly.coeffs = c.head(cfg.poly_degree + 1);
  terms.push_back(std::move(poly));
  col = cfg.poly_degree + 1;
  for (std::size_t s = 0; s < sites.size(); ++s) {
    Expansion e;
    e.variable = Expansion::Variable::Inverse;
    e.centre = sites[s];
    e.scale = s_pole[s];
    e.hessenberg = h_pole[s];
    e.coeffs = Eigen::VectorXcd::Zero(cfg.pole_degree + 1);
    e.coeffs.tail(cfg.pole_degree) = c.segment(col, cfg.pole_degree);
    col += cfg.pole_degree;
    terms.push_back(std::move(e));
  }

  FitResult out;
  out.f = RationalFunction(std::move(terms));
  out.condition = cond;
  out.pole_sites = sites;
  for (const Sample& s : fit) out.fit_residual = std::max(out.fit_residual, std::abs(out.f(s.z) - s.value));
  const int v_req = cfg.validation_samples > 0 ? cfg.validation_samples : 4 * static_cast<int>(m);
  for (const Sample& s : target(v_req, 0.5)) out.sup_error = std::max(out.sup_error, std::abs(out.f(s.z) - s.value));
  return out;
}

FitResult runge_fit(const PolyCompact& a, const Domain& omega, const Sampler& target, const FitConfig& cfg) {
  if (a.empty()) throw Error(ErrorKind::Validation, "cannot fit on an empty compact");
  const OmegaConvexity conv = is_omega_convex(a, omega);
  if (!conv.yes) throw Error(ErrorKind::Precondition, "fit set is not omega-convex", conv.offending_hole);
  return fit_with_sites(pole_sites(a, omega), target, cfg);
}

namespace {

struct Interval {
  std::size_t curve;
  double t0, t1;
};

// Parameters of the closest points of segments [p0,p1] and [q0,q1].
std::pair<double, double> closest_params(Complex p0, Complex p1, Complex q0, Complex q1) {
  const Complex dp = p1 - p0, dq = q1 - q0;
  const double den = (std::conj(dp) * dq).imag();
  if (den != 0) {
    const double u = (std::conj(q0 - p0) * dq).imag() / den;
    const double v = (std::conj(q0 - p0) * dp).imag() / den;
    if (u >= 0 && u <= 1 && v >= 0 && v <= 1) return {u, v};
  }
  std::pair<double, double> best{0, 0};
  double best_d = std::numeric_limits<double>::infinity();
  auto consider = [&](double u, double v) {
    const double d = std::abs(p0 + u * dp - (q0 + v * dq));
    if (d < best_d) {
      best_d = d;
      best = {u, v};
    }
  };
  consider(0, project_on_segment(p0, q0, q1));
  consider(1, project_on_segment(p1, q0, q1));
  consider(project_on_segment(q0, p0, p1), 0);
  consider(project_on_segment(q1, p0, p1), 1);
  return best;
}

struct PairCandidate {
  Interval a, b;
  double gap;
};

}  // namespace

Injectivity injectivity_probe(const std::function<Complex(Complex)>& phi, const PolyCompact& k, int samples) {
  if (samples < 64) throw Error(ErrorKind::Validation, "injectivity probe needs at least 64 samples");
  const std::vector<const Polyline*> curves = k.curves();
  const std::vector<int> counts = share_counts(curves, samples);

  struct Node {
    std::size_t curve;
    double t0, t1;
    Complex w0, w1;
  };
  std::vector<Node> nodes;
  Box ibox = Box::empty();
  double diam_k = k.bbox().diameter();
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const int n = counts[c];
    std::vector<double> ts;
    for (int j = 0; j <= n; ++j) ts.push_back(static_cast<double>(j) / n);
    std::vector<Complex> pts = points_at(*curves[c], ts);
    if (curves[c]->closed) pts.back() = pts.front();
    std::vector<Complex> w;
    for (Complex z : pts) {
      w.push_back(phi(z));
      ibox.add(w.back());
    }
    for (int j = 0; j < n; ++j) nodes.push_back({c, ts[j], ts[j + 1], w[j], w[j + 1]});
  }
  const double tol = 1e-9 * std::max(ibox.diameter(), 1e-300);

  auto point = [&](std::size_t c, double t) {
    return points_at(*curves[c], {curves[c]->closed ? t - std::floor(t) : t})[0];
  };
  auto chord_box = [](Complex p, Complex q, double pad) {
    Box b = Box::empty();
    b.add(p);
    b.add(q);
    return b.expanded(pad);
  };
  // Intervals on one curve that share or nearly share an endpoint are not collisions.
  auto adjacent = [&](const Interval& a, const Interval& b) {
    if (a.curve != b.curve) return false;
    const double span = std::max(a.t1 - a.t0, b.t1 - b.t0);
    double gap = std::max(a.t0, b.t0) - std::min(a.t1, b.t1);
    if (curves[a.curve]->closed) gap = std::min(gap, std::min(a.t0, b.t0) + 1 - std::max(a.t1, b.t1));
    return gap <= 1.5 * span;
  };

  std::vector<PairCandidate> active;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& a = nodes[i];
    const double la = std::abs(a.w1 - a.w0);
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const Node& b = nodes[j];
      const Interval ia{a.curve, a.t0, a.t1}, ib{b.curve, b.t0, b.t1};
      if (adjacent(ia, ib)) continue;
      const double lb = std::abs(b.w1 - b.w0);
      const double pad = 0.5 * (la + lb);
      if (!chord_box(a.w0, a.w1, pad).overlaps(chord_box(b.w0, b.w1, pad))) continue;
      active.push_back({ia, ib, segment_distance(a.w0, a.w1, b.w0, b.w1)});
    }
  }

  constexpr std::size_t kMaxActive = 256;
  for (int depth = 0; depth < 48 && !active.empty(); ++depth) {
    std::sort(active.begin(), active.end(), [](const PairCandidate& x, const PairCandidate& y) { return x.gap < y.gap; });
    if (active.size() > kMaxActive) active.resize(kMaxActive);
    std::vector<PairCandidate> next;
    for (const PairCandidate& pc : active) {
      auto halves = [&](const Interval& iv) {
        const double mid = 0.5 * (iv.t0 + iv.t1);
        return std::array<Interval, 2>{Interval{iv.curve, iv.t0, mid}, Interval{iv.curve, mid, iv.t1}};
      };
      for (const Interval& ha : halves(pc.a)) {
        const Complex za0 = point(ha.curve, ha.t0), za1 = point(ha.curve, ha.t1);
        const Complex wa0 = phi(za0), wa1 = phi(za1), wam = phi(point(ha.curve, 0.5 * (ha.t0 + ha.t1)));
        const double pad_a = 2 * std::abs(wam - 0.5 * (wa0 + wa1)) + tol;
        for (const Interval& hb : halves(pc.b)) {
          const Complex zb0 = point(hb.curve, hb.t0), zb1 = point(hb.curve, hb.t1);
          const Complex wb0 = phi(zb0), wb1 = phi(zb1), wbm = phi(point(hb.curve, 0.5 * (hb.t0 + hb.t1)));
          const double pad_b = 2 * std::abs(wbm - 0.5 * (wb0 + wb1)) + tol;
          if (!chord_box(wa0, wa1, pad_a).overlaps(chord_box(wb0, wb1, pad_b))) continue;
          const double gap = segment_distance(wa0, wa1, wb0, wb1);
          if (gap <= tol && pad_a <= 2 * tol && pad_b <= 2 * tol) {
            const auto [u, v] = closest_params(wa0, wa1, wb0, wb1);
            const Complex za = point(ha.curve, ha.t0 + u * (ha.t1 - ha.t0));
            const Complex zb = point(hb.curve, hb.t0 + v * (hb.t1 - hb.t0));
            if (std::abs(za - zb) > 1e-6 * diam_k) return {false, false, std::make_pair(za, zb)};
          }
          next.push_back({ha, hb, gap});
        }
      }
    }
    active = std::move(next);
  }
  return {true, false, std::nullopt};
}

}  // namespace holo
