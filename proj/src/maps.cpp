#include "holo/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace holo {

namespace {

constexpr double kCircleTol = 1e-3;

struct BoundaryHit {
  std::size_t curve = 0, seg = 0;
  double u = 0, dist = std::numeric_limits<double>::infinity();
};

BoundaryHit locate_on(const std::vector<Polyline>& curves, Complex z) {
  BoundaryHit best;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const Polyline& p = curves[c];
    for (std::size_t i = 0; i < p.segment_count(); ++i) {
      const double u = project_on_segment(z, p.seg_a(i), p.seg_b(i));
      const double d = std::abs(z - (p.seg_a(i) + u * (p.seg_b(i) - p.seg_a(i))));
      if (d < best.dist) best = {c, i, u, d};
    }
  }
  return best;
}

// Unit normal pointing left of the direction of travel, averaged at vertices.
Complex vertex_normal(const Polyline& p, std::size_t i) {
  const std::size_t n = p.vertices.size();
  auto left = [](Complex d) { return Complex(0, 1) * d / std::abs(d); };
  const bool has_prev = p.closed || i > 0, has_next = p.closed || i + 1 < n;
  Complex s = 0;
  if (has_prev) s += left(p.vertices[i] - p.vertices[(i + n - 1) % n]);
  if (has_next) s += left(p.vertices[(i + 1) % n] - p.vertices[i]);
  return s / std::abs(s);
}

Complex scale_factor(const MapFamily& m, int n) {
  switch (m.kind) {
    case MapKind::Affine: return m.a.at_n(n);
    case MapKind::RadialScale:
    case MapKind::AnnulusScale: return m.r.at_n(n);
    default: return 1;
  }
}

Complex offset(const MapFamily& m, int n) {
  if (m.kind == MapKind::Affine) return m.b.at_n(n);
  if (m.kind == MapKind::VerticalShift) return Complex(0, 1) * m.r.at_n(n);
  return 0;
}

// Whether a curve on the unit circle passes through e^{i theta}.
bool covers_angle(const Polyline& c, double theta) {
  if (c.closed) return true;
  double t = std::arg(c.vertices.front()), lo = t, hi = t;
  for (std::size_t i = 1; i < c.vertices.size(); ++i) {
    t += std::arg(c.vertices[i] / c.vertices[i - 1]);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  const double shifted = theta + 2 * kPi * std::ceil((lo - theta) / (2 * kPi));
  return shifted <= hi;
}

// Closed curve centred at 0 with constant modulus (a discretised circle |z| = rho).
bool centred_circle(const Polyline& p) {
  if (!p.closed || !inside_curve(p, 0)) return false;
  const double rho = std::abs(p.vertices.front());
  for (Complex v : p.vertices)
    if (std::abs(std::abs(v) - rho) > 1e-9 * rho) return false;
  return true;
}

void refine(const MapFamily& phi, int n, Complex a, Complex b, Complex wa, Complex wb, double tol, double max_len,
            int depth, std::vector<Complex>& out) {
  const Complex m = 0.5 * (a + b);
  const Complex wm = phi.apply(n, m);
  const bool bent = std::abs(wm - 0.5 * (wa + wb)) > tol;
  const bool long_step = std::abs(wb - wa) > max_len;
  if (depth < 12 && (bent || long_step)) {
    refine(phi, n, a, m, wa, wm, tol, max_len, depth + 1, out);
    out.push_back(wm);
    refine(phi, n, m, b, wm, wb, tol, max_len, depth + 1, out);
  }
}

}  // namespace

const char* to_string(MapKind k) {
  switch (k) {
    case MapKind::Affine: return "Affine";
    case MapKind::RadialScale: return "RadialScale";
    case MapKind::PowerRadial: return "PowerRadial";
    case MapKind::AnnulusScale: return "AnnulusScale";
    case MapKind::TangentCircles: return "TangentCircles";
    case MapKind::NormalOffset: return "NormalOffset";
    case MapKind::JordanRadial: return "JordanRadial";
    case MapKind::VerticalShift: return "VerticalShift";
  }
  return "?";
}

MapKind map_kind_from_string(const std::string& s) {
  for (MapKind k : {MapKind::Affine, MapKind::RadialScale, MapKind::PowerRadial, MapKind::AnnulusScale,
                    MapKind::TangentCircles, MapKind::NormalOffset, MapKind::JordanRadial, MapKind::VerticalShift})
    if (s == to_string(k)) return k;
  throw Error(ErrorKind::Schema, "unknown map kind '" + s + "'");
}

MapFamily MapFamily::affine(Expression a, Expression b) {
  MapFamily m;
  m.kind = MapKind::Affine;
  m.a = std::move(a);
  m.b = std::move(b);
  return m;
}

MapFamily MapFamily::radial_scale(Expression r) {
  MapFamily m;
  m.kind = MapKind::RadialScale;
  m.r = std::move(r);
  return m;
}

MapFamily MapFamily::power_radial(Expression r, int k) {
  MapFamily m;
  m.kind = MapKind::PowerRadial;
  m.r = std::move(r);
  m.k = k;
  return m;
}

MapFamily MapFamily::power_radial_n(Expression r) {
  MapFamily m = power_radial(std::move(r), 0);
  m.k_is_n = true;
  m.first_index = 1;
  return m;
}

MapFamily MapFamily::annulus_scale() {
  MapFamily m;
  m.kind = MapKind::AnnulusScale;
  m.r = Expression("2^(-2n-1)");
  return m;
}

MapFamily MapFamily::tangent_circles() {
  MapFamily m;
  m.kind = MapKind::TangentCircles;
  m.first_index = 2;
  return m;
}

MapFamily MapFamily::normal_offset(Expression r, std::vector<Polyline> boundary) {
  MapFamily m;
  m.kind = MapKind::NormalOffset;
  m.r = std::move(r);
  m.boundary = std::move(boundary);
  return m;
}

MapFamily MapFamily::jordan_radial(Expression omega, Expression r) {
  MapFamily m;
  m.kind = MapKind::JordanRadial;
  m.omega = std::move(omega);
  m.r = std::move(r);
  return m;
}

MapFamily MapFamily::vertical_shift() {
  MapFamily m;
  m.kind = MapKind::VerticalShift;
  m.r = Expression("1/n");
  m.first_index = 1;
  return m;
}

Complex MapFamily::apply(int n, Complex z) const {
  if (n < first_index)
    throw Error(ErrorKind::MapDomain, std::string(to_string(kind)) + " is defined for n >= " + std::to_string(first_index));
  switch (kind) {
    case MapKind::Affine: return a.at_n(n) * z + b.at_n(n);
    case MapKind::RadialScale:
    case MapKind::AnnulusScale: return r.at_n(n) * z;
    case MapKind::PowerRadial: return r.at_n(n) * std::pow(z, k_is_n ? n : k);
    case MapKind::VerticalShift: return z + Complex(0, 1) * r.at_n(n);
    case MapKind::JordanRadial: return omega(r.at_n(n) * z, n);
    case MapKind::TangentCircles: {
      if (std::abs(std::abs(z) - 1) > kCircleTol)
        throw Error(ErrorKind::MapDomain, "tangent-circles map is defined on the unit circle", z);
      const Complex u = z / std::abs(z);
      double theta = std::arg(u);
      if (theta < 0) theta += 2 * kPi;
      const double nn = n;
      if (theta <= kPi / nn || theta >= 2 * kPi - kPi / nn) return 1 - 1.5 / nn - std::pow(u, n) / (2 * nn);
      return (1 - 1 / nn) * std::polar(1.0, (nn * theta - kPi) / (nn - 1));
    }
    case MapKind::NormalOffset: {
      const BoundaryHit h = locate_on(boundary, z);
      const double scale = std::max(1.0, std::abs(z));
      if (h.dist > 1e-9 * scale) throw Error(ErrorKind::MapDomain, "normal offset is defined on the boundary", z);
      const Polyline& p = boundary[h.curve];
      const std::size_t j = (h.seg + 1) % p.vertices.size();
      Complex nu = (1 - h.u) * vertex_normal(p, h.seg) + h.u * vertex_normal(p, j);
      nu /= std::abs(nu);
      return z + (1.0 - r.at_n(n)) * nu;
    }
  }
  return z;
}

bool MapFamily::analytic() const {
  switch (kind) {
    case MapKind::TangentCircles:
    case MapKind::NormalOffset: return false;
    case MapKind::JordanRadial: return omega.holomorphic();
    default: return true;
  }
}

bool MapFamily::closed_form_inverse() const {
  return kind == MapKind::Affine || kind == MapKind::RadialScale || kind == MapKind::AnnulusScale ||
         kind == MapKind::VerticalShift;
}

std::string MapFamily::describe() const {
  std::string s = to_string(kind);
  switch (kind) {
    case MapKind::Affine: return s + " z -> (" + a.text() + ") z + (" + b.text() + ")";
    case MapKind::RadialScale:
    case MapKind::AnnulusScale: return s + " z -> (" + r.text() + ") z";
    case MapKind::PowerRadial: return s + " z -> (" + r.text() + ") z^" + (k_is_n ? "n" : std::to_string(k));
    case MapKind::VerticalShift: return s + " z -> z + i (" + r.text() + ")";
    case MapKind::JordanRadial: return s + " z -> omega((" + r.text() + ") z), omega(z) = " + omega.text();
    case MapKind::NormalOffset: return s + " z -> z + (1 - (" + r.text() + ")) nu_z";
    case MapKind::TangentCircles: return s + " (z^n on both small arcs)";
  }
  return s;
}

Injectivity injectivity_probe(const MapFamily& phi, int n, const PolyCompact& k, int samples) {
  if (phi.closed_form_inverse()) {
    const bool inj = std::abs(scale_factor(phi, n)) > 0;
    Injectivity out{inj, true, std::nullopt};
    if (!inj) {
      const auto curves = k.curves();
      out.witness = std::make_pair(curves[0]->vertices[0], curves[0]->vertices.back());
    }
    return out;
  }
  if (phi.kind == MapKind::PowerRadial) {
    const int power = phi.k_is_n ? n : phi.k;
    if (power >= 2) {
      for (const Polyline* c : k.curves()) {
        if (!centred_circle(*c)) continue;
        const Complex z = c->vertices.front();
        return {false, true, std::make_pair(z, z * std::polar(1.0, 2 * kPi / power))};
      }
    }
  }
  if (phi.kind == MapKind::TangentCircles) {
    // The circles meet only at 1 - 1/n, whose preimages are e^{±i pi/n}.
    const double a = kPi / n;
    bool plus = false, minus = false;
    for (const Polyline* c : k.curves()) {
      plus = plus || covers_angle(*c, a);
      minus = minus || covers_angle(*c, -a);
    }
    Injectivity out{!(plus && minus), true, std::nullopt};
    if (!out.injective) out.witness = std::make_pair(std::polar(1.0, a), std::polar(1.0, -a));
    return out;
  }
  return injectivity_probe([&](Complex z) { return phi.apply(n, z); }, k, samples);
}

Polyline image_of(const MapFamily& phi, int n, const Polyline& p) {
  std::vector<Complex> w;
  w.reserve(p.vertices.size());
  Box box = Box::empty();
  for (Complex z : p.vertices) {
    w.push_back(phi.apply(n, z));
    box.add(w.back());
  }
  const double diam = std::max(box.diameter(), 1e-300);
  const double tol = 1e-4 * diam, max_len = diam / 32;
  std::vector<Complex> out;
  const std::size_t segs = p.segment_count();
  for (std::size_t i = 0; i < segs; ++i) {
    const std::size_t j = (i + 1) % p.vertices.size();
    out.push_back(w[i]);
    refine(phi, n, p.vertices[i], p.vertices[j], w[i], w[j], tol, max_len, 0, out);
  }
  if (!p.closed) out.push_back(w.back());
  bool closed = p.closed;
  if (!closed && out.size() > 2 && std::abs(out.front() - out.back()) <= 1e-12 * diam) {
    out.pop_back();
    closed = true;
  }
  return Polyline(std::move(out), closed);
}

PolyCompact image_of(const MapFamily& phi, int n, const PolyCompact& k) {
  PolyCompact out;
  for (const Polyline& piece : k.pieces) out.pieces.push_back(image_of(phi, n, piece));
  for (const Face& f : k.faces) {
    if (!phi.analytic())
      throw Error(ErrorKind::Precondition,
                  std::string(to_string(phi.kind)) + " is not analytic; map Thin compacts or use the suff-plus path");
    std::vector<Polyline> curves{image_of(phi, n, f.outer)};
    for (const Polyline& h : f.holes) curves.push_back(image_of(phi, n, h));
    for (std::size_t i = 0; i < curves.size(); ++i) {
      bool ok = is_simple(curves[i]);
      for (std::size_t j = i + 1; j < curves.size() && ok; ++j) ok = !curves_intersect(curves[i], curves[j]);
      if (!ok)
        throw Error(ErrorKind::Precondition,
                    "map is not injective on the Fat compact; use the Thin or suff-plus path", curves[i].vertices[0]);
    }
    // The image curve enclosing the largest area bounds the image face.
    std::size_t outer = 0;
    for (std::size_t i = 1; i < curves.size(); ++i)
      if (std::abs(signed_area(curves[i])) > std::abs(signed_area(curves[outer]))) outer = i;
    std::vector<Polyline> holes;
    for (std::size_t i = 0; i < curves.size(); ++i)
      if (i != outer) holes.push_back(curves[i]);
    out.faces.push_back(make_face(curves[outer], std::move(holes)));
  }
  return out;
}

Complex inverse_on(const MapFamily& phi, int n, const PolyCompact& k, Complex w, double tol) {
  const double diam_k = k.bbox().diameter();
  const double accept = tol * std::max(1.0, std::abs(w));
  if (phi.closed_form_inverse()) {
    const Complex s = scale_factor(phi, n);
    if (std::abs(s) == 0) throw Error(ErrorKind::Precondition, "map is constant");
    const Complex z = (w - offset(phi, n)) / s;
    const double slack = std::max(accept / std::abs(s), 1e-9 * diam_k);
    const bool inside = k.faces.empty() ? distance_to_boundary(k, z) <= slack
                                        : point_locate(k, z, slack) != Location::Outside;
    if (!inside) throw Error(ErrorKind::NotInImage, "point is not in the image of the compact", w);
    return z;
  }
  const Injectivity inj = injectivity_probe(phi, n, k);
  if (!inj.injective) throw Error(ErrorKind::Precondition, "map is not injective on the compact");

  auto cost = [&](Complex z) { return std::abs(phi.apply(n, z) - w); };
  const std::vector<const Polyline*> curves = k.curves();
  constexpr int kPerCurve = 2048;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_curve = 0;
  double best_t = 0;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    for (int j = 0; j <= kPerCurve; ++j) {
      const double t = static_cast<double>(j) / kPerCurve;
      const double v = cost(curves[c]->at(t));
      if (v < best) {
        best = v;
        best_curve = c;
        best_t = t;
      }
    }
  }
  // Golden-section search along the curve around the best sample.
  const Polyline& curve = *curves[best_curve];
  auto at = [&](double t) { return curve.at(curve.closed ? t - std::floor(t) : std::clamp(t, 0.0, 1.0)); };
  double lo = best_t - 2.0 / kPerCurve, hi = best_t + 2.0 / kPerCurve;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 120; ++it) {
    const double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    if (cost(at(x1)) < cost(at(x2))) hi = x2;
    else lo = x1;
  }
  Complex z = at(0.5 * (lo + hi));
  if (cost(z) <= accept) return z;

  if (!k.faces.empty() && phi.analytic()) {
    // Interior point of a Fat compact: Newton from the best boundary or grid sample.
    const Box b = k.bbox();
    for (int i = 0; i < 64; ++i)
      for (int j = 0; j < 64; ++j) {
        const Complex c{b.xmin + (i + 0.5) * b.width() / 64, b.ymin + (j + 0.5) * b.height() / 64};
        if (point_locate(k, c, 1e-12) == Location::Inside && cost(c) < cost(z)) z = c;
      }
    for (int it = 0; it < 60 && cost(z) > accept; ++it) {
      const double h = 1e-7 * std::max(1.0, diam_k);
      const Complex d = (phi.apply(n, z + h) - phi.apply(n, z - h)) / (2 * h);
      if (std::abs(d) == 0) break;
      z -= (phi.apply(n, z) - w) / d;
    }
    if (cost(z) <= accept && point_locate(k, z, 1e-9 * diam_k) != Location::Outside) return z;
  }
  throw Error(ErrorKind::NotInImage, "point is not in the image of the compact", w);
}

PolyCompact closure_compact(const Domain& g) {
  if (!g.bounded()) throw Error(ErrorKind::Precondition, "closure of an unbounded domain is not compact");
  std::vector<Polyline> holes;
  for (const Obstacle& o : g.obstacles)
    if (o.kind == Obstacle::Kind::Fat) holes.push_back(o.face.outer);
  return PolyCompact::fat({make_face(*g.outer, std::move(holes))});
}

AdhocPair adhoc_pair_for_bounded_G(const Domain& g, int n_max) {
  if (n_max < 1) throw Error(ErrorKind::Validation, "n_max must be at least 1");
  const PolyCompact cl = closure_compact(g);
  const Box b = g.outer->bbox();
  const double d = std::max(b.width(), b.height());
  AdhocPair out;
  // Translate so that the closure lies right of the imaginary axis; then 0
  // is outside its polynomial hull.
  out.translation = Complex(0.5 * d - b.xmin, -b.center().imag());
  Polyline moved = *g.outer;
  for (Complex& v : moved.vertices) v += out.translation;
  const double rho_min = distance_to_curve(moved, 0);
  double rho_max = 0;
  for (Complex v : moved.vertices) rho_max = std::max(rho_max, std::abs(v));
  out.step = static_cast<int>(std::ceil(std::log2(rho_max / rho_min))) + 1;
  const std::string scale = "2^(-" + std::to_string(out.step) + "n)";
  const Expression a_rule(scale);
  const Complex t = out.translation;
  out.phi = MapFamily::affine(a_rule, Expression(scale + "*" + Expression::constant(t).text()));
  out.phi.first_index = 1;

  out.omega.obstacles.push_back(Obstacle::at(0));
  for (int n = 1; n <= n_max; ++n) {
    PolyCompact img = image_of(out.phi, n, cl);
    for (const Component& c : complement_components(img)) {
      if (!c.bounded) continue;
      double r = std::numeric_limits<double>::infinity();
      for (const Polyline* curve : img.curves()) r = std::min(r, distance_to_curve(*curve, c.witness));
      r *= 0.5;
      if (!(r > 1e-12 * img.bbox().diameter()))
        throw Error(ErrorKind::Construction, "no room for an obstacle disc in a hole of image " + std::to_string(n),
                    c.witness);
      out.omega.obstacles.push_back(Obstacle::fat(disc(c.witness, r, 64)));
    }
    // Punctures and slits of G have no hole in the closure; carry them over directly.
    for (const Obstacle& o : g.obstacles) {
      if (o.kind == Obstacle::Kind::Point) out.omega.obstacles.push_back(Obstacle::at(out.phi.apply(n, o.point)));
      if (o.kind == Obstacle::Kind::Thin) out.omega.obstacles.push_back(Obstacle::thin(image_of(out.phi, n, o.curve)));
    }
    out.images.push_back(std::move(img));
  }
  out.omega.truncation = Truncation{"adhoc-scaling", n_max};
  return out;
}

}  // namespace holo
