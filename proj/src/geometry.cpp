#include "holo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace holo {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Containment: return "containment";
    case ErrorKind::Indeterminate: return "indeterminate";
    case ErrorKind::PoleProximity: return "pole-proximity";
    case ErrorKind::Nonvanishing: return "nonvanishing";
    case ErrorKind::Conditioning: return "conditioning";
    case ErrorKind::MapDomain: return "map-domain";
    case ErrorKind::NotInImage: return "not-in-image";
    case ErrorKind::Construction: return "construction";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

const char* to_string(Location loc) {
  switch (loc) {
    case Location::Inside: return "Inside";
    case Location::Boundary: return "Boundary";
    case Location::Outside: return "Outside";
  }
  return "?";
}

Box Box::empty() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {inf, inf, -inf, -inf};
}

void Box::add(Complex z) {
  xmin = std::min(xmin, z.real());
  xmax = std::max(xmax, z.real());
  ymin = std::min(ymin, z.imag());
  ymax = std::max(ymax, z.imag());
}

void Box::add(const Box& b) {
  if (b.is_empty()) return;
  xmin = std::min(xmin, b.xmin);
  xmax = std::max(xmax, b.xmax);
  ymin = std::min(ymin, b.ymin);
  ymax = std::max(ymax, b.ymax);
}

Box Box::expanded(double margin) const {
  return {xmin - margin, ymin - margin, xmax + margin, ymax + margin};
}

bool Box::contains(const Box& b) const {
  return b.xmin >= xmin && b.xmax <= xmax && b.ymin >= ymin && b.ymax <= ymax;
}

bool Box::overlaps(const Box& b, double slack) const {
  return b.xmin <= xmax + slack && xmin <= b.xmax + slack && b.ymin <= ymax + slack &&
         ymin <= b.ymax + slack;
}

Polyline::Polyline(std::vector<Complex> v, bool is_closed) : closed(is_closed) {
  vertices.reserve(v.size());
  for (const Complex& z : v) {
    if (vertices.empty() || vertices.back() != z) vertices.push_back(z);
  }
  if (closed && vertices.size() > 1 && vertices.front() == vertices.back()) vertices.pop_back();
}

std::size_t Polyline::segment_count() const {
  if (vertices.size() < 2) return 0;
  return closed ? vertices.size() : vertices.size() - 1;
}

double Polyline::length() const {
  double s = 0;
  for (std::size_t i = 0; i < segment_count(); ++i) s += std::abs(seg_b(i) - seg_a(i));
  return s;
}

Box Polyline::bbox() const {
  Box b = Box::empty();
  for (const Complex& z : vertices) b.add(z);
  return b;
}

Complex Polyline::at(double t) const {
  const std::size_t m = segment_count();
  if (m == 0) return vertices.empty() ? Complex{} : vertices.front();
  double target = std::clamp(t, 0.0, 1.0) * length();
  for (std::size_t i = 0; i < m; ++i) {
    double len = std::abs(seg_b(i) - seg_a(i));
    if (target <= len || i + 1 == m) {
      double u = len > 0 ? std::min(target / len, 1.0) : 0.0;
      return seg_a(i) + u * (seg_b(i) - seg_a(i));
    }
    target -= len;
  }
  return vertices.back();
}

double signed_area(const Polyline& p) {
  double a = 0;
  const std::size_t n = p.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex u = p.vertices[i], v = p.vertices[(i + 1) % n];
    a += u.real() * v.imag() - v.real() * u.imag();
  }
  return a / 2;
}

std::vector<double> vertex_params(const Polyline& p) {
  std::vector<double> t(p.vertices.size(), 0.0);
  const double total = p.length();
  double acc = 0;
  for (std::size_t i = 1; i < p.vertices.size(); ++i) {
    acc += std::abs(p.vertices[i] - p.vertices[i - 1]);
    t[i] = total > 0 ? acc / total : 0;
  }
  return t;
}

Polyline subcurve(const Polyline& p, double t0, double t1) {
  const std::vector<double> t = vertex_params(p);
  std::vector<Complex> out;
  auto point_at = [&](double u) { return p.at(p.closed ? u - std::floor(u) : u); };
  out.push_back(point_at(t0));
  const int laps = p.closed ? 2 : 1;
  for (int lap = 0; lap < laps; ++lap) {
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
      const double u = t[i] + lap;
      if (u > t0 && u < t1) out.push_back(p.vertices[i]);
    }
  }
  out.push_back(point_at(t1));
  return Polyline(std::move(out), false);
}

Polyline reversed(Polyline p) {
  std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

Face make_face(Polyline outer, std::vector<Polyline> holes) {
  outer.closed = true;
  if (signed_area(outer) < 0) outer = reversed(std::move(outer));
  for (Polyline& h : holes) {
    h.closed = true;
    if (signed_area(h) > 0) h = reversed(std::move(h));
  }
  return {std::move(outer), std::move(holes)};
}

PolyCompact PolyCompact::fat(std::vector<Face> faces) {
  PolyCompact k;
  k.faces = std::move(faces);
  return k;
}

PolyCompact PolyCompact::thin(std::vector<Polyline> pieces) {
  PolyCompact k;
  k.pieces = std::move(pieces);
  return k;
}

CompactKind PolyCompact::kind() const {
  if (faces.empty() && pieces.empty()) return CompactKind::Empty;
  if (pieces.empty()) return CompactKind::Fat;
  if (faces.empty()) return CompactKind::Thin;
  return CompactKind::Mixed;
}

Box PolyCompact::bbox() const {
  Box b = Box::empty();
  for (const Face& f : faces) b.add(f.outer.bbox());
  for (const Polyline& p : pieces) b.add(p.bbox());
  return b;
}

std::vector<const Polyline*> PolyCompact::curves() const {
  std::vector<const Polyline*> out;
  for (const Face& f : faces) {
    out.push_back(&f.outer);
    for (const Polyline& h : f.holes) out.push_back(&h);
  }
  for (const Polyline& p : pieces) out.push_back(&p);
  return out;
}

PolyCompact unite(const PolyCompact& a, const PolyCompact& b) {
  PolyCompact k = a;
  k.faces.insert(k.faces.end(), b.faces.begin(), b.faces.end());
  k.pieces.insert(k.pieces.end(), b.pieces.begin(), b.pieces.end());
  return k;
}

namespace {

Complex polygon_centroid(const Polyline& p) {
  double a = 0, cx = 0, cy = 0;
  const std::size_t n = p.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex u = p.vertices[i], v = p.vertices[(i + 1) % n];
    const double c = u.real() * v.imag() - v.real() * u.imag();
    a += c;
    cx += (u.real() + v.real()) * c;
    cy += (u.imag() + v.imag()) * c;
  }
  if (std::abs(a) < 1e-300) {
    Complex s{};
    for (const Complex& z : p.vertices) s += z;
    return s / static_cast<double>(std::max<std::size_t>(n, 1));
  }
  return {cx / (3 * a), cy / (3 * a)};
}

}  // namespace

Obstacle Obstacle::fat(Face f) {
  Obstacle o;
  o.kind = Kind::Fat;
  o.face = make_face(std::move(f.outer), std::move(f.holes));
  return o;
}

Obstacle Obstacle::thin(Polyline c) {
  Obstacle o;
  o.kind = Kind::Thin;
  o.curve = std::move(c);
  return o;
}

Obstacle Obstacle::at(Complex z) {
  Obstacle o;
  o.kind = Kind::Point;
  o.point = z;
  return o;
}

Complex Obstacle::site() const {
  switch (kind) {
    case Kind::Point: return point;
    case Kind::Thin: return curve.at(0.5);
    case Kind::Fat: {
      Complex c = polygon_centroid(face.outer);
      if (point_locate(face, c, 1e-12) == Location::Inside) return c;
      // Non-convex obstacle: take the deepest point of a coarse interior grid.
      Box b = face.outer.bbox();
      Complex best = face.outer.vertices.front();
      double best_d = -1;
      for (int i = 0; i < 32; ++i) {
        for (int j = 0; j < 32; ++j) {
          Complex z{b.xmin + (i + 0.5) * b.width() / 32, b.ymin + (j + 0.5) * b.height() / 32};
          if (point_locate(face, z, 1e-12) != Location::Inside) continue;
          double d = distance_to_curve(face.outer, z);
          for (const Polyline& h : face.holes) d = std::min(d, distance_to_curve(h, z));
          if (d > best_d) {
            best_d = d;
            best = z;
          }
        }
      }
      return best;
    }
  }
  return point;
}

std::vector<Complex> Obstacle::witness_points() const {
  std::vector<Complex> out;
  switch (kind) {
    case Kind::Point:
      out.push_back(point);
      break;
    case Kind::Thin:
      out.push_back(curve.at(0.5));
      out.insert(out.end(), curve.vertices.begin(), curve.vertices.end());
      break;
    case Kind::Fat:
      out.push_back(site());
      out.insert(out.end(), face.outer.vertices.begin(), face.outer.vertices.end());
      break;
  }
  return out;
}

Box Obstacle::bbox() const {
  switch (kind) {
    case Kind::Point: {
      Box b = Box::empty();
      b.add(point);
      return b;
    }
    case Kind::Thin: return curve.bbox();
    case Kind::Fat: return face.outer.bbox();
  }
  return Box::empty();
}

Box Domain::bbox() const {
  Box b = Box::empty();
  if (outer) b.add(outer->bbox());
  for (const Obstacle& o : obstacles) b.add(o.bbox());
  return b;
}

std::vector<Polyline> oriented_boundary(const Domain& d) {
  std::vector<Polyline> out;
  if (d.outer) {
    Polyline o = *d.outer;
    if (signed_area(o) < 0) o = reversed(std::move(o));
    out.push_back(std::move(o));
  }
  for (const Obstacle& ob : d.obstacles) {
    if (ob.kind == Obstacle::Kind::Fat) out.push_back(reversed(ob.face.outer));
    if (ob.kind == Obstacle::Kind::Thin) out.push_back(ob.curve);
  }
  return out;
}

Polyline circle(Complex c, double r, int n) {
  std::vector<Complex> v(n);
  for (int k = 0; k < n; ++k) v[k] = c + std::polar(r, 2 * kPi * k / n);
  return Polyline(std::move(v), true);
}

Polyline arc(Complex c, double r, double from, double to, int n) {
  const int count = std::max(2, static_cast<int>(std::ceil(std::abs(to - from) / (2 * kPi) * n)) + 1);
  std::vector<Complex> v(count);
  for (int k = 0; k < count; ++k) v[k] = c + std::polar(r, from + (to - from) * k / (count - 1));
  return Polyline(std::move(v), false);
}

Polyline segment(Complex a, Complex b, int n) {
  n = std::max(n, 2);
  std::vector<Complex> v(n);
  for (int k = 0; k < n; ++k) v[k] = a + (b - a) * (static_cast<double>(k) / (n - 1));
  return Polyline(std::move(v), false);
}

Face disc(Complex c, double r, int n) { return make_face(circle(c, r, n)); }

Face annulus(Complex c, double r_in, double r_out, int n) {
  return make_face(circle(c, r_out, n), {circle(c, r_in, n)});
}

Face polygon_face(std::vector<Complex> v) { return make_face(Polyline(std::move(v), true)); }

bool inside_curve(const Polyline& c, Complex z) {
  bool in = false;
  const std::size_t n = c.vertices.size();
  const double x = z.real(), y = z.imag();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Complex a = c.vertices[i], b = c.vertices[j];
    if ((a.imag() > y) != (b.imag() > y)) {
      const double xc = a.real() + (y - a.imag()) / (b.imag() - a.imag()) * (b.real() - a.real());
      if (x < xc) in = !in;
    }
  }
  return in;
}

double point_segment_distance(Complex z, Complex a, Complex b) {
  return std::abs(z - (a + project_on_segment(z, a, b) * (b - a)));
}

double project_on_segment(Complex z, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0) return 0;
  const double t = ((z - a) * std::conj(d)).real() / len2;
  return std::clamp(t, 0.0, 1.0);
}

double distance_to_curve(const Polyline& c, Complex z) {
  double best = std::numeric_limits<double>::infinity();
  if (c.vertices.size() == 1) return std::abs(z - c.vertices[0]);
  for (std::size_t i = 0; i < c.segment_count(); ++i)
    best = std::min(best, point_segment_distance(z, c.seg_a(i), c.seg_b(i)));
  return best;
}

namespace {

double orient(Complex p, Complex q, Complex r) {
  return (q.real() - p.real()) * (r.imag() - p.imag()) - (q.imag() - p.imag()) * (r.real() - p.real());
}

bool on_segment(Complex p, Complex q, Complex r) {
  return std::min(p.real(), r.real()) <= q.real() && q.real() <= std::max(p.real(), r.real()) &&
         std::min(p.imag(), r.imag()) <= q.imag() && q.imag() <= std::max(p.imag(), r.imag());
}

int sign(double v) { return (v > 0) - (v < 0); }

struct Seg {
  Complex a, b;
  int owner;
  std::size_t index;
  double xmin, xmax;
};

std::vector<Seg> collect(const std::vector<const Polyline*>& curves) {
  std::vector<Seg> segs;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const Polyline& p = *curves[c];
    for (std::size_t i = 0; i < p.segment_count(); ++i) {
      const Complex a = p.seg_a(i), b = p.seg_b(i);
      segs.push_back({a, b, static_cast<int>(c), i, std::min(a.real(), b.real()),
                      std::max(a.real(), b.real())});
    }
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& s, const Seg& t) { return s.xmin < t.xmin; });
  return segs;
}

bool y_overlap(const Seg& s, const Seg& t, double slack) {
  return std::min(s.a.imag(), s.b.imag()) <= std::max(t.a.imag(), t.b.imag()) + slack &&
         std::min(t.a.imag(), t.b.imag()) <= std::max(s.a.imag(), s.b.imag()) + slack;
}

}  // namespace

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
  const int o1 = sign(orient(a, b, c)), o2 = sign(orient(a, b, d));
  const int o3 = sign(orient(c, d, a)), o4 = sign(orient(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, c, b)) return true;
  if (o2 == 0 && on_segment(a, d, b)) return true;
  if (o3 == 0 && on_segment(c, a, d)) return true;
  if (o4 == 0 && on_segment(c, b, d)) return true;
  return false;
}

double segment_distance(Complex a, Complex b, Complex c, Complex d) {
  if (segments_intersect(a, b, c, d)) return 0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

bool is_simple(const Polyline& p) {
  const std::size_t n = p.vertices.size();
  const std::size_t m = p.segment_count();
  if (m == 0) return false;
  if (p.closed && (n < 3 || signed_area(p) == 0)) return false;
  auto adjacent = [&](std::size_t i, std::size_t j) {
    if (j == i + 1) return true;
    return p.closed && i == 0 && j == m - 1;
  };
  std::vector<Seg> segs = collect({&p});
  for (std::size_t s = 0; s < segs.size(); ++s) {
    for (std::size_t t = s + 1; t < segs.size() && segs[t].xmin <= segs[s].xmax; ++t) {
      if (!y_overlap(segs[s], segs[t], 0)) continue;
      std::size_t i = std::min(segs[s].index, segs[t].index), j = std::max(segs[s].index, segs[t].index);
      if (adjacent(i, j)) {
        // Adjacent segments may only share their common vertex.
        const Seg& u = segs[s].index == i ? segs[s] : segs[t];
        const Seg& w = segs[s].index == i ? segs[t] : segs[s];
        Complex shared = (j == i + 1) ? u.b : u.a;
        Complex pu = (j == i + 1) ? u.a : u.b;
        Complex pw = (j == i + 1) ? w.b : w.a;
        if (orient(pu, shared, pw) == 0 && ((pu - shared) * std::conj(pw - shared)).real() > 0)
          return false;
        continue;
      }
      if (segments_intersect(segs[s].a, segs[s].b, segs[t].a, segs[t].b)) return false;
    }
  }
  return true;
}

bool curves_intersect(const Polyline& p, const Polyline& q) {
  std::vector<Seg> segs = collect({&p, &q});
  for (std::size_t s = 0; s < segs.size(); ++s) {
    for (std::size_t t = s + 1; t < segs.size() && segs[t].xmin <= segs[s].xmax; ++t) {
      if (segs[s].owner == segs[t].owner || !y_overlap(segs[s], segs[t], 0)) continue;
      if (segments_intersect(segs[s].a, segs[s].b, segs[t].a, segs[t].b)) return true;
    }
  }
  return false;
}

Location point_locate(const Face& f, Complex z, double tol) {
  if (distance_to_curve(f.outer, z) <= tol) return Location::Boundary;
  for (const Polyline& h : f.holes)
    if (distance_to_curve(h, z) <= tol) return Location::Boundary;
  if (!inside_curve(f.outer, z)) return Location::Outside;
  for (const Polyline& h : f.holes)
    if (inside_curve(h, z)) return Location::Outside;
  return Location::Inside;
}

Location point_locate(const PolyCompact& k, Complex z, double tol) {
  if (!(tol > 0)) throw Error(ErrorKind::Precondition, "point_locate: tol must be positive");
  bool inside = false;
  for (const Face& f : k.faces) {
    Location l = point_locate(f, z, tol);
    if (l == Location::Boundary) return l;
    if (l == Location::Inside) inside = true;
  }
  for (const Polyline& p : k.pieces)
    if (distance_to_curve(p, z) <= tol) return Location::Boundary;
  return inside ? Location::Inside : Location::Outside;
}

Location point_locate(const Domain& d, Complex z, double tol) {
  if (!(tol > 0)) throw Error(ErrorKind::Precondition, "point_locate: tol must be positive");
  if (d.outer && distance_to_curve(*d.outer, z) <= tol) return Location::Boundary;
  bool excluded = d.outer && !inside_curve(*d.outer, z);
  for (const Obstacle& o : d.obstacles) {
    switch (o.kind) {
      case Obstacle::Kind::Point:
        if (std::abs(z - o.point) <= tol) return Location::Boundary;
        break;
      case Obstacle::Kind::Thin:
        if (distance_to_curve(o.curve, z) <= tol) return Location::Boundary;
        break;
      case Obstacle::Kind::Fat: {
        Location l = point_locate(o.face, z, tol);
        if (l == Location::Boundary) return l;
        if (l == Location::Inside) excluded = true;
        break;
      }
    }
  }
  return excluded ? Location::Outside : Location::Inside;
}

double distance_to_boundary(const PolyCompact& k, Complex z) {
  double best = std::numeric_limits<double>::infinity();
  for (const Polyline* c : k.curves()) best = std::min(best, distance_to_curve(*c, z));
  return best;
}

double set_distance(const PolyCompact& a, const PolyCompact& b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::Precondition, "set_distance: empty compact");
  const auto ca = a.curves(), cb = b.curves();
  const double tiny = 1e-300;
  for (const Polyline* p : ca)
    if (point_locate(b, p->vertices.front(), tiny) != Location::Outside) return 0;
  for (const Polyline* q : cb)
    if (point_locate(a, q->vertices.front(), tiny) != Location::Outside) return 0;

  std::vector<const Polyline*> all = ca;
  all.insert(all.end(), cb.begin(), cb.end());
  const int split = static_cast<int>(ca.size());
  std::vector<Seg> segs = collect(all);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < segs.size(); ++s) {
    for (std::size_t t = s + 1; t < segs.size() && segs[t].xmin <= segs[s].xmax + best; ++t) {
      if ((segs[s].owner < split) == (segs[t].owner < split)) continue;
      if (!y_overlap(segs[s], segs[t], best)) continue;
      best = std::min(best, segment_distance(segs[s].a, segs[s].b, segs[t].a, segs[t].b));
      if (best == 0) return 0;
    }
  }
  return best;
}

void validate(const Polyline& p, bool simple) {
  for (const Complex& z : p.vertices)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorKind::Validation, "polyline has a non-finite vertex");
  if (p.vertices.size() < 2 || (p.closed && p.vertices.size() < 3))
    throw Error(ErrorKind::Validation, "polyline has too few vertices");
  for (std::size_t i = 0; i < p.segment_count(); ++i)
    if (p.seg_a(i) == p.seg_b(i))
      throw Error(ErrorKind::Validation, "polyline has repeated consecutive vertices", p.seg_a(i));
  if (simple && !is_simple(p))
    throw Error(ErrorKind::Validation, "polyline marked simple self-intersects", p.vertices.front());
}

void validate(const Face& f) {
  validate(f.outer);
  if (signed_area(f.outer) <= 0) throw Error(ErrorKind::Validation, "face outer is not counterclockwise");
  for (std::size_t i = 0; i < f.holes.size(); ++i) {
    const Polyline& h = f.holes[i];
    validate(h);
    if (signed_area(h) >= 0) throw Error(ErrorKind::Validation, "face hole is not clockwise");
    if (curves_intersect(f.outer, h) || !inside_curve(f.outer, h.vertices.front()))
      throw Error(ErrorKind::Validation, "face hole is not strictly inside outer", h.vertices.front());
    for (std::size_t j = 0; j < i; ++j) {
      const Polyline& g = f.holes[j];
      if (curves_intersect(g, h) || inside_curve(g, h.vertices.front()) ||
          inside_curve(h, g.vertices.front()))
        throw Error(ErrorKind::Validation, "face holes overlap", h.vertices.front());
    }
  }
}

namespace {

void check_disjoint(const PolyCompact& k) {
  for (std::size_t i = 0; i < k.faces.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      PolyCompact a = PolyCompact::fat({k.faces[i]}), b = PolyCompact::fat({k.faces[j]});
      if (set_distance(a, b) == 0)
        throw Error(ErrorKind::Validation, "faces are not disjoint", k.faces[i].outer.vertices.front());
    }
  }
  for (std::size_t i = 0; i < k.pieces.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (curves_intersect(k.pieces[i], k.pieces[j]))
        throw Error(ErrorKind::Validation, "pieces are not disjoint", k.pieces[i].vertices.front());
    for (const Face& f : k.faces)
      if (set_distance(PolyCompact::thin({k.pieces[i]}), PolyCompact::fat({f})) == 0)
        throw Error(ErrorKind::Validation, "piece meets a face", k.pieces[i].vertices.front());
  }
}

}  // namespace

void validate(const PolyCompact& k) {
  if (k.kind() == CompactKind::Mixed)
    throw Error(ErrorKind::Validation, "compact mixes faces and pieces");
  for (const Face& f : k.faces) validate(f);
  for (const Polyline& p : k.pieces) validate(p);
  check_disjoint(k);
}

bool is_simple_configuration(const PolyCompact& k) {
  try {
    for (const Face& f : k.faces) validate(f);
    for (const Polyline& p : k.pieces) validate(p);
    check_disjoint(k);
  } catch (const Error&) {
    return false;
  }
  return true;
}

void validate(const Domain& d) {
  if (d.outer) {
    validate(*d.outer);
    if (!d.outer->closed) throw Error(ErrorKind::Validation, "domain outer boundary must be closed");
  }
  std::vector<PolyCompact> parts;
  for (const Obstacle& o : d.obstacles) {
    switch (o.kind) {
      case Obstacle::Kind::Fat:
        validate(o.face);
        parts.push_back(PolyCompact::fat({o.face}));
        break;
      case Obstacle::Kind::Thin:
        validate(o.curve);
        if (o.curve.closed) throw Error(ErrorKind::Validation, "closed thin obstacle disconnects the domain");
        parts.push_back(PolyCompact::thin({o.curve}));
        break;
      case Obstacle::Kind::Point:
        parts.emplace_back();
        break;
    }
    for (const Complex& z : o.witness_points()) {
      if (d.outer && (!inside_curve(*d.outer, z) || distance_to_curve(*d.outer, z) == 0))
        throw Error(ErrorKind::Validation, "obstacle not strictly inside outer boundary", z);
    }
    if (d.outer && o.kind != Obstacle::Kind::Point) {
      const Polyline& c = o.kind == Obstacle::Kind::Fat ? o.face.outer : o.curve;
      if (curves_intersect(*d.outer, c))
        throw Error(ErrorKind::Validation, "obstacle meets outer boundary", c.vertices.front());
    }
  }
  for (std::size_t i = 0; i < d.obstacles.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Obstacle &a = d.obstacles[i], &b = d.obstacles[j];
      if (a.kind == Obstacle::Kind::Point && b.kind == Obstacle::Kind::Point) {
        if (a.point == b.point) throw Error(ErrorKind::Validation, "duplicate point obstacle", a.point);
        continue;
      }
      if (a.kind == Obstacle::Kind::Point || b.kind == Obstacle::Kind::Point) {
        const Obstacle& pt = a.kind == Obstacle::Kind::Point ? a : b;
        const PolyCompact& other = a.kind == Obstacle::Kind::Point ? parts[j] : parts[i];
        if (point_locate(other, pt.point, 1e-300) != Location::Outside)
          throw Error(ErrorKind::Validation, "obstacles are not disjoint", pt.point);
        continue;
      }
      if (set_distance(parts[i], parts[j]) == 0)
        throw Error(ErrorKind::Validation, "obstacles are not disjoint", a.site());
    }
  }
  if (!is_connected(d)) throw Error(ErrorKind::Validation, "domain is not connected");
}

Grid::Grid(const Box& b, int nx_, int ny_) : box(b), nx(nx_), ny(ny_) {
  cells.assign(static_cast<std::size_t>(nx) * ny, 0);
}

Complex Grid::centre(int ix, int iy) const {
  return {box.xmin + (ix + 0.5) * dx(), box.ymin + (iy + 0.5) * dy()};
}

bool Grid::locate(Complex z, int& ix, int& iy) const {
  const double fx = (z.real() - box.xmin) / dx(), fy = (z.imag() - box.ymin) / dy();
  if (!(fx >= 0 && fy >= 0 && fx < nx && fy < ny)) return false;
  ix = static_cast<int>(fx);
  iy = static_cast<int>(fy);
  return true;
}

std::size_t Grid::count() const { return std::count(cells.begin(), cells.end(), 1); }

namespace {

void check_resolution(int resolution) {
  if (resolution < kMinResolution || resolution > kMaxResolution)
    throw Error(ErrorKind::Precondition,
                "rasterize: resolution " + std::to_string(resolution) + " outside supported range");
}

// Even-odd scanline fill over a set of closed curves; toggles `value` into cells.
void fill_parity(Grid& g, const std::vector<const Polyline*>& curves, std::uint8_t value) {
  std::vector<double> xs;
  for (int iy = 0; iy < g.ny; ++iy) {
    const double y = g.box.ymin + (iy + 0.5) * g.dy();
    xs.clear();
    for (const Polyline* c : curves) {
      const std::size_t n = c->vertices.size();
      for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Complex a = c->vertices[i], b = c->vertices[j];
        if ((a.imag() > y) != (b.imag() > y))
          xs.push_back(a.real() + (y - a.imag()) / (b.imag() - a.imag()) * (b.real() - a.real()));
      }
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const int lo = std::max(0, static_cast<int>(std::ceil((xs[k] - g.box.xmin) / g.dx() - 0.5)));
      const int hi = std::min(g.nx - 1, static_cast<int>(std::floor((xs[k + 1] - g.box.xmin) / g.dx() - 0.5)));
      for (int ix = lo; ix <= hi; ++ix) g.at(ix, iy) = value;
    }
  }
}

Grid make_grid(const Box& bbox, int resolution) {
  check_resolution(resolution);
  return Grid(bbox, resolution, resolution);
}

}  // namespace

void mark_curve(Grid& g, const Polyline& c, std::uint8_t value) {
  const double step = 0.5 * std::min(g.dx(), g.dy());
  int ix, iy;
  if (c.vertices.size() == 1 && g.locate(c.vertices[0], ix, iy)) g.at(ix, iy) = value;
  for (std::size_t i = 0; i < c.segment_count(); ++i) {
    const Complex a = c.seg_a(i), b = c.seg_b(i);
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / step)));
    for (int k = 0; k <= steps; ++k) {
      if (g.locate(a + (b - a) * (static_cast<double>(k) / steps), ix, iy)) g.at(ix, iy) = value;
    }
  }
}

Grid rasterize(const PolyCompact& k, const Box& bbox, int resolution) {
  if (!bbox.contains(k.bbox())) throw Error(ErrorKind::Precondition, "rasterize: bbox does not contain compact");
  Grid g = make_grid(bbox, resolution);
  std::vector<const Polyline*> curves;
  for (const Face& f : k.faces) {
    curves.push_back(&f.outer);
    for (const Polyline& h : f.holes) curves.push_back(&h);
  }
  fill_parity(g, curves, 1);
  for (const Polyline& p : k.pieces) mark_curve(g, p);
  return g;
}

Grid rasterize(const Domain& d, const Box& bbox, int resolution) {
  Grid g = make_grid(bbox, resolution);
  if (d.outer) {
    fill_parity(g, {&*d.outer}, 1);
  } else {
    std::fill(g.cells.begin(), g.cells.end(), 1);
  }
  for (const Obstacle& o : d.obstacles) {
    if (o.kind != Obstacle::Kind::Fat) continue;
    Grid mask(bbox, g.nx, g.ny);
    std::vector<const Polyline*> curves{&o.face.outer};
    for (const Polyline& h : o.face.holes) curves.push_back(&h);
    fill_parity(mask, curves, 1);
    for (std::size_t i = 0; i < g.cells.size(); ++i)
      if (mask.cells[i]) g.cells[i] = 0;
  }
  return g;
}

bool is_connected(const Domain& d, int resolution) {
  Box b = d.bbox();
  if (b.is_empty()) return true;
  b = b.expanded(0.1 * std::max(b.width(), b.height()) + (d.outer ? 0.0 : 1.0));
  Grid g = rasterize(d, b, resolution);
  for (const Obstacle& o : d.obstacles) {
    if (o.kind == Obstacle::Kind::Thin) mark_curve(g, o.curve, 0);
    if (o.kind == Obstacle::Kind::Fat) mark_curve(g, o.face.outer, 0);
  }
  std::vector<int> label(g.cells.size(), -1);
  int components = 0;
  std::deque<int> queue;
  auto flood = [&](int seed_label) {
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      const int ix = c % g.nx, iy = c / g.nx;
      const int nbr[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
      for (const auto& q : nbr) {
        if (q[0] < 0 || q[1] < 0 || q[0] >= g.nx || q[1] >= g.ny) continue;
        const int qi = q[1] * g.nx + q[0];
        if (!g.cells[qi] || label[qi] >= 0) continue;
        label[qi] = seed_label;
        queue.push_back(qi);
      }
    }
  };
  if (!d.outer) {
    // The unbounded part beyond the grid joins every border cell.
    for (int i = 0; i < g.nx * g.ny; ++i) {
      const int ix = i % g.nx, iy = i / g.nx;
      const bool border = ix == 0 || iy == 0 || ix == g.nx - 1 || iy == g.ny - 1;
      if (border && g.cells[i] && label[i] < 0) {
        label[i] = 0;
        queue.push_back(i);
      }
    }
    flood(0);
    components = 1;
  }
  for (int i = 0; i < g.nx * g.ny; ++i) {
    if (!g.cells[i] || label[i] >= 0) continue;
    label[i] = components;
    queue.push_back(i);
    flood(components);
    ++components;
  }
  return components <= 1;
}

}  // namespace holo
