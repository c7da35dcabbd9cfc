#include "holo/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace holo {

namespace {

constexpr double kLocateTol = 1e-12;
constexpr int kMinHoleCells = 16;

bool in_box(const Box& b, Complex z) {
  return z.real() >= b.xmin && z.real() <= b.xmax && z.imag() >= b.ymin && z.imag() <= b.ymax;
}

// A closed curve together with its bounding box, for fast rejection.
struct BoxedCurve {
  const Polyline* curve;
  Box box;
  bool contains(Complex z) const { return in_box(box, z) && inside_curve(*curve, z); }
};

struct Node {
  const Polyline* outer = nullptr;
  std::vector<const Polyline*> holes;  // for closed pieces: the piece itself
  bool arc = false;
  int parent_node = -1;
  int parent_hole = -1;
};

std::vector<Node> nesting_forest(const PolyCompact& k) {
  std::vector<Node> nodes;
  for (const Face& f : k.faces) {
    Node n;
    n.outer = &f.outer;
    for (const Polyline& h : f.holes) n.holes.push_back(&h);
    nodes.push_back(n);
  }
  for (const Polyline& p : k.pieces) {
    Node n;
    n.outer = &p;
    n.arc = !p.closed;
    if (p.closed) n.holes.push_back(&p);
    nodes.push_back(n);
  }
  std::vector<std::vector<BoxedCurve>> boxed(nodes.size());
  std::vector<std::vector<double>> areas(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const Polyline* h : nodes[i].holes) {
      boxed[i].push_back({h, h->bbox()});
      areas[i].push_back(std::abs(signed_area(*h)));
    }
  }
  for (std::size_t x = 0; x < nodes.size(); ++x) {
    const Complex ref = nodes[x].outer->vertices.front();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < nodes.size(); ++y) {
      if (y == x) continue;
      for (std::size_t h = 0; h < boxed[y].size(); ++h) {
        if (areas[y][h] < best && boxed[y][h].contains(ref)) {
          best = areas[y][h];
          nodes[x].parent_node = static_cast<int>(y);
          nodes[x].parent_hole = static_cast<int>(h);
        }
      }
    }
  }
  return nodes;
}

// Deepest sampled point of a component, measured against the given curves.
std::optional<Complex> deepest_point(const Component& c, const Box& box,
                                     const std::vector<const Polyline*>& curves) {
  for (int n = 32; n <= 512; n *= 4) {
    std::optional<Complex> best;
    double best_d = -1;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Complex z{box.xmin + (i + 0.5) * box.width() / n, box.ymin + (j + 0.5) * box.height() / n};
        if (!c.contains(z)) continue;
        double d = std::numeric_limits<double>::infinity();
        for (const Polyline* p : curves) d = std::min(d, distance_to_curve(*p, z));
        if (d > best_d) {
          best_d = d;
          best = z;
        }
      }
    }
    if (best && best_d > 0) return best;
  }
  return std::nullopt;
}

std::vector<Component> exact_components(const PolyCompact& k) {
  std::vector<Node> nodes = nesting_forest(k);
  std::vector<Component> out;

  Component unbounded;
  unbounded.bounded = false;
  const Box kb = k.bbox();
  unbounded.witness = Complex(kb.xmax + std::max(1.0, kb.width()), kb.center().imag());
  for (const Node& n : nodes)
    if (n.parent_node < 0 && !n.arc) unbounded.excluded.push_back(*n.outer);
  out.push_back(std::move(unbounded));

  for (std::size_t y = 0; y < nodes.size(); ++y) {
    for (std::size_t h = 0; h < nodes[y].holes.size(); ++h) {
      Component c;
      c.bounded = true;
      c.boundary = *nodes[y].holes[h];
      c.boundary_box = c.boundary->bbox();
      std::vector<const Polyline*> near{nodes[y].holes[h]};
      for (const Node& n : nodes) {
        if (n.parent_node != static_cast<int>(y) || n.parent_hole != static_cast<int>(h)) continue;
        if (!n.arc) c.excluded.push_back(*n.outer);
        near.push_back(n.outer);
      }
      std::optional<Complex> w = deepest_point(c, c.boundary_box, near);
      if (!w)
        throw Error(ErrorKind::Indeterminate, "could not place a witness point in a hole",
                    c.boundary->vertices.front());
      c.witness = *w;
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::shared_ptr<LabelGrid> label_complement(const PolyCompact& k, int resolution, int& bounded) {
  Box b = k.bbox();
  const double side = std::max(b.width(), b.height());
  const Complex c = b.center();
  const double half = 0.55 * side + 4 * side / resolution + 1e-12;
  Box square{c.real() - half, c.imag() - half, c.real() + half, c.imag() + half};
  auto lg = std::make_shared<LabelGrid>();
  lg->geometry = rasterize(k, square, resolution);
  const Grid& g = lg->geometry;
  lg->labels.assign(g.cells.size(), -2);
  for (std::size_t i = 0; i < g.cells.size(); ++i)
    if (g.cells[i]) lg->labels[i] = -1;

  std::deque<int> queue;
  auto flood = [&](int label) {
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      const int ix = q % g.nx, iy = q / g.nx;
      const int nbr[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
      for (const auto& p : nbr) {
        if (p[0] < 0 || p[1] < 0 || p[0] >= g.nx || p[1] >= g.ny) continue;
        const int pi = p[1] * g.nx + p[0];
        if (lg->labels[pi] != -2) continue;
        lg->labels[pi] = label;
        queue.push_back(pi);
      }
    }
  };
  for (int i = 0; i < g.nx * g.ny; ++i) {
    const int ix = i % g.nx, iy = i / g.nx;
    if ((ix == 0 || iy == 0 || ix == g.nx - 1 || iy == g.ny - 1) && lg->labels[i] == -2) {
      lg->labels[i] = 0;
      queue.push_back(i);
    }
  }
  flood(0);
  bounded = 0;
  std::vector<int> members;
  for (int i = 0; i < g.nx * g.ny; ++i) {
    if (lg->labels[i] != -2) continue;
    lg->labels[i] = ++bounded;
    queue.push_back(i);
    members.assign(1, i);
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      const int ix = q % g.nx, iy = q / g.nx;
      const int nbr[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
      for (const auto& p : nbr) {
        if (p[0] < 0 || p[1] < 0 || p[0] >= g.nx || p[1] >= g.ny) continue;
        const int pi = p[1] * g.nx + p[0];
        if (lg->labels[pi] != -2) continue;
        lg->labels[pi] = bounded;
        queue.push_back(pi);
        members.push_back(pi);
      }
    }
    // Pockets of a few cells are pinch artifacts of the chain marking, not holes.
    if (static_cast<int>(members.size()) < kMinHoleCells) {
      for (int m : members) lg->labels[m] = -1;
      --bounded;
    }
  }
  return lg;
}

std::vector<Component> raster_components(const PolyCompact& k, int resolution) {
  resolution = std::max(resolution, 64);
  int prev_count = -1;
  std::shared_ptr<LabelGrid> grid;
  int count = 0;
  for (int res = resolution; res <= 4096; res *= 2) {
    grid = label_complement(k, res, count);
    if (count == prev_count) break;
    if (res * 2 > 4096)
      throw Error(ErrorKind::Indeterminate,
                  "component count unstable at resolution cap: " + std::to_string(prev_count) + " vs " +
                      std::to_string(count));
    prev_count = count;
  }
  const Grid& g = grid->geometry;
  // Chessboard distance to the nearest foreign cell picks a central witness.
  std::vector<int> depth(g.cells.size(), -1);
  std::deque<int> queue;
  for (int i = 0; i < g.nx * g.ny; ++i) {
    if (grid->labels[i] <= 0) continue;
    const int ix = i % g.nx, iy = i / g.nx;
    bool edge = false;
    for (int dy = -1; dy <= 1 && !edge; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const int jx = ix + dx, jy = iy + dy;
        if (jx < 0 || jy < 0 || jx >= g.nx || jy >= g.ny || grid->labels[jy * g.nx + jx] != grid->labels[i]) {
          edge = true;
          break;
        }
      }
    if (edge) {
      depth[i] = 0;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    const int ix = q % g.nx, iy = q / g.nx;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const int jx = ix + dx, jy = iy + dy;
        if (jx < 0 || jy < 0 || jx >= g.nx || jy >= g.ny) continue;
        const int j = jy * g.nx + jx;
        if (depth[j] >= 0 || grid->labels[j] != grid->labels[q]) continue;
        depth[j] = depth[q] + 1;
        queue.push_back(j);
      }
  }
  std::vector<int> best(count + 1, -1);
  for (int i = 0; i < g.nx * g.ny; ++i) {
    const int l = grid->labels[i];
    if (l > 0 && (best[l] < 0 || depth[i] > depth[best[l]])) best[l] = i;
  }
  std::vector<Component> out;
  Component unbounded;
  unbounded.raster = grid;
  unbounded.label = 0;
  unbounded.witness = Complex(g.box.xmax + g.box.width(), g.box.center().imag());
  out.push_back(std::move(unbounded));
  for (int l = 1; l <= count; ++l) {
    Component c;
    c.bounded = true;
    c.raster = grid;
    c.label = l;
    c.witness = g.centre(best[l] % g.nx, best[l] / g.nx);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

bool Component::contains(Complex z) const {
  if (raster) {
    int ix, iy;
    if (!raster->geometry.locate(z, ix, iy)) return label == 0;
    return raster->labels[static_cast<std::size_t>(iy) * raster->geometry.nx + ix] == label;
  }
  if (boundary && !(in_box(boundary_box, z) && inside_curve(*boundary, z))) return false;
  for (const Polyline& e : excluded)
    if (inside_curve(e, z)) return false;
  return true;
}

Grid Component::approx_region(const Box& box, int resolution) const {
  Grid g(box, resolution, resolution);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) g.at(ix, iy) = contains(g.centre(ix, iy)) ? 1 : 0;
  return g;
}

std::vector<Component> complement_components(const PolyCompact& k, int resolution) {
  if (k.empty()) throw Error(ErrorKind::Precondition, "complement_components: empty compact");
  if (is_simple_configuration(k)) return exact_components(k);
  return raster_components(k, resolution);
}

int hole_count(const PolyCompact& k, int resolution) {
  return static_cast<int>(complement_components(k, resolution).size()) - 1;
}

PolyCompact polynomial_hull(const PolyCompact& k) {
  if (k.empty()) throw Error(ErrorKind::Precondition, "polynomial_hull: empty compact");
  if (!is_simple_configuration(k))
    throw Error(ErrorKind::Precondition, "polynomial_hull: compact is not a simple configuration");
  PolyCompact out;
  for (const Node& n : nesting_forest(k)) {
    if (n.parent_node >= 0) continue;
    if (n.arc) {
      out.pieces.push_back(*n.outer);
    } else {
      out.faces.push_back(make_face(*n.outer));
    }
  }
  return out;
}

std::vector<Complex> complement_witnesses(const Domain& omega) {
  std::vector<Complex> out;
  if (omega.outer) out = omega.outer->vertices;
  for (const Obstacle& o : omega.obstacles) {
    std::vector<Complex> w = o.witness_points();
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

std::optional<Complex> containment_violation(const PolyCompact& k, const Domain& omega) {
  for (const Polyline* c : k.curves())
    for (const Complex& v : c->vertices)
      if (point_locate(omega, v, kLocateTol) != Location::Inside) return v;
  for (const Polyline& b : oriented_boundary(omega))
    for (const Polyline* c : k.curves())
      if (b.bbox().overlaps(c->bbox()) && curves_intersect(b, *c)) return c->vertices.front();
  const Box kb = k.bbox();
  for (const Obstacle& o : omega.obstacles) {
    if (!o.bbox().overlaps(kb)) continue;
    for (const Complex& w : o.witness_points())
      if (in_box(kb, w) && point_locate(k, w, kLocateTol) != Location::Outside) return w;
  }
  return std::nullopt;
}

namespace {

OmegaConvexity convexity_of(const std::vector<Component>& comps, const std::vector<Complex>& witnesses) {
  OmegaConvexity r;
  r.yes = true;
  for (const Component& c : comps) {
    if (!c.bounded) continue;
    bool hit = false;
    for (const Complex& w : witnesses) {
      if (c.contains(w)) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      r.yes = false;
      r.offending_hole = c.witness;
      return r;
    }
  }
  return r;
}

bool connected_compact(const PolyCompact& k) { return k.faces.size() + k.pieces.size() == 1; }

}  // namespace

OmegaConvexity is_omega_convex(const PolyCompact& k, const Domain& omega) {
  if (auto v = containment_violation(k, omega))
    throw Error(ErrorKind::Containment, "compact is not contained in the domain", *v);
  return convexity_of(complement_components(k), complement_witnesses(omega));
}

bool is_omega_connected(const PolyCompact& k, const Domain& omega) {
  if (k.empty()) throw Error(ErrorKind::Precondition, "is_omega_connected: empty compact");
  if (!connected_compact(k)) throw Error(ErrorKind::Precondition, "is_omega_connected: compact is disconnected");
  const int holes = hole_count(k);
  return omega.simply_connected() ? holes == 0 : holes >= 1;
}

Membership in_M_omega(const PolyCompact& k, const Domain& omega) {
  if (auto v = containment_violation(k, omega))
    throw Error(ErrorKind::Containment, "compact is not contained in the domain", *v);
  Membership m;
  bool regular = k.kind() == CompactKind::Fat;
  if (k.kind() == CompactKind::Thin)
    regular = std::all_of(k.pieces.begin(), k.pieces.end(), [](const Polyline& p) { return p.closed; });
  if (!regular) m.reasons.push_back("regular");
  const bool connected = connected_compact(k);
  if (!connected) m.reasons.push_back("connected");
  const std::vector<Component> comps = complement_components(k);
  const int holes = static_cast<int>(comps.size()) - 1;
  if (k.kind() == CompactKind::Fat) {
    const bool ok = omega.simply_connected() ? holes == 0 : holes >= 1;
    if (!ok) m.reasons.push_back("omega_connected");
  }
  if (!convexity_of(comps, complement_witnesses(omega)).yes) m.reasons.push_back("omega_convex");
  m.yes = m.reasons.empty();
  return m;
}

const char* to_string(UnionCase c) {
  switch (c) {
    case UnionCase::Case1: return "Case1";
    case UnionCase::Case2: return "Case2";
    case UnionCase::Case3: return "Case3";
    case UnionCase::NotConvex: return "NotConvex";
  }
  return "?";
}

UnionClass classify_union(const PolyCompact& l, const PolyCompact& l2, const Domain& omega) {
  if (!connected_compact(l) || !connected_compact(l2))
    throw Error(ErrorKind::Precondition, "classify_union: compacts must be connected");
  if (set_distance(l, l2) <= 0)
    throw Error(ErrorKind::Precondition, "classify_union: compacts intersect", l2.curves().front()->vertices.front());
  for (const PolyCompact* k : {&l, &l2}) {
    OmegaConvexity c = is_omega_convex(*k, omega);
    if (!c.yes) throw Error(ErrorKind::Precondition, "classify_union: input is not omega-convex", c.offending_hole);
  }
  const PolyCompact hull_l = polynomial_hull(l), hull_l2 = polynomial_hull(l2);
  const Complex ref_l = l.curves().front()->vertices.front();
  const Complex ref_l2 = l2.curves().front()->vertices.front();
  const bool l_in_hull2 = point_locate(hull_l2, ref_l, kLocateTol) != Location::Outside;
  const bool l2_in_hull = point_locate(hull_l, ref_l2, kLocateTol) != Location::Outside;
  const std::vector<Complex> witnesses = complement_witnesses(omega);

  UnionClass r;
  auto nested = [&](const PolyCompact& outer, const PolyCompact& inner_hull, Complex inner_ref,
                    UnionCase label) {
    for (const Component& c : complement_components(outer)) {
      if (!c.bounded || !c.contains(inner_ref)) continue;
      for (const Complex& w : witnesses) {
        if (c.contains(w) && point_locate(inner_hull, w, kLocateTol) == Location::Outside) {
          r.label = label;
          r.hole_witness = c.witness;
          return;
        }
      }
    }
    r.label = UnionCase::NotConvex;
  };
  if (!l_in_hull2 && !l2_in_hull) {
    r.label = UnionCase::Case1;
  } else if (l2_in_hull) {
    nested(l, hull_l2, ref_l2, UnionCase::Case2);
  } else {
    nested(l2, hull_l, ref_l, UnionCase::Case3);
  }
  const bool direct = is_omega_convex(unite(l, l2), omega).yes;
  if (direct != (r.label != UnionCase::NotConvex))
    throw Error(ErrorKind::Internal, std::string("classify_union disagrees with direct test: ") + to_string(r.label));
  return r;
}

Polyline rounded_hull(std::vector<Complex> points, double radius, int resolution) {
  auto less = [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  };
  std::sort(points.begin(), points.end(), less);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  auto cross = [](Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
  };
  std::vector<Complex> hull;
  if (points.size() <= 2) {
    hull = points;
  } else {
    std::vector<Complex> h(2 * points.size());
    std::size_t k = 0;
    for (const Complex& p : points) {
      while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
      h[k++] = p;
    }
    for (std::size_t i = points.size() - 1, t = k + 1; i-- > 0;) {
      while (k >= t && cross(h[k - 2], h[k - 1], points[i]) <= 0) --k;
      h[k++] = points[i];
    }
    h.resize(k - 1);
    hull = h;
  }
  if (hull.size() == 1) return circle(hull[0], radius, resolution);
  std::vector<Complex> out;
  const std::size_t m = hull.size();
  const double step = 2 * kPi / resolution;
  for (std::size_t i = 0; i < m; ++i) {
    const Complex prev = hull[(i + m - 1) % m], cur = hull[i], next = hull[(i + 1) % m];
    // Outward normals of a counterclockwise hull point to the right of each edge.
    const double a0 = std::arg((cur - prev) * Complex(0, -1));
    double a1 = std::arg((next - cur) * Complex(0, -1));
    while (a1 < a0) a1 += 2 * kPi;
    const int steps = std::max(1, static_cast<int>(std::ceil((a1 - a0) / step)));
    for (int s = 0; s <= steps; ++s) out.push_back(cur + std::polar(radius, a0 + (a1 - a0) * s / steps));
  }
  return Polyline(std::move(out), true);
}

std::vector<double> default_margins(int count) {
  std::vector<double> m;
  const double head[] = {0.5, 0.25, 0.1};
  for (int i = 0; i < count; ++i) m.push_back(i < 3 ? head[i] : m.back() / 2);
  return m;
}

namespace {

PolyCompact obstacle_compact(const Obstacle& o) {
  switch (o.kind) {
    case Obstacle::Kind::Fat: return PolyCompact::fat({o.face});
    case Obstacle::Kind::Thin: return PolyCompact::thin({o.curve});
    case Obstacle::Kind::Point: break;
  }
  return {};
}

double obstacle_distance(const Obstacle& a, const Obstacle& b) {
  using K = Obstacle::Kind;
  if (a.kind == K::Point && b.kind == K::Point) return std::abs(a.point - b.point);
  if (a.kind == K::Point || b.kind == K::Point) {
    const Obstacle& p = a.kind == K::Point ? a : b;
    const PolyCompact other = obstacle_compact(a.kind == K::Point ? b : a);
    if (point_locate(other, p.point, 1e-300) != Location::Outside) return 0;
    return distance_to_boundary(other, p.point);
  }
  return set_distance(obstacle_compact(a), obstacle_compact(b));
}

std::vector<Complex> obstacle_points(const Obstacle& o) {
  switch (o.kind) {
    case Obstacle::Kind::Fat: return o.face.outer.vertices;
    case Obstacle::Kind::Thin: return o.curve.vertices;
    case Obstacle::Kind::Point: return {o.point};
  }
  return {};
}

// Moves each vertex of a counterclockwise curve inward by d along the bisector.
Polyline inset(const Polyline& c, double d) {
  const std::size_t n = c.vertices.size();
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex prev = c.vertices[(i + n - 1) % n], cur = c.vertices[i], next = c.vertices[(i + 1) % n];
    const Complex n_in = Complex(0, 1) * (cur - prev) / std::abs(cur - prev);
    const Complex n_out = Complex(0, 1) * (next - cur) / std::abs(next - cur);
    Complex bis = n_in + n_out;
    if (std::abs(bis) < 1e-12) bis = n_in;
    bis /= std::abs(bis);
    const double cos_half = std::max(0.2, (bis * std::conj(n_in)).real());
    out[i] = cur + bis * (d / cos_half);
  }
  return Polyline(std::move(out), true);
}

int find(std::vector<int>& parent, int i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

}  // namespace

std::vector<PolyCompact> exhaustion(const Domain& omega, int count, const std::vector<double>& margins) {
  if (count < 1) throw Error(ErrorKind::Precondition, "exhaustion: count must be at least 1");
  std::vector<double> m = margins.empty() ? default_margins(count) : margins;
  if (static_cast<int>(m.size()) < count) throw Error(ErrorKind::Precondition, "exhaustion: margin schedule too short");
  for (int i = 0; i < count; ++i)
    if (!(m[i] > 0) || (i > 0 && m[i] >= m[i - 1]))
      throw Error(ErrorKind::Precondition, "exhaustion: margins must be positive and decreasing");

  const std::size_t nob = omega.obstacles.size();
  double scale = 1.0;
  Polyline outer_ccw;
  if (omega.outer) {
    outer_ccw = *omega.outer;
    if (signed_area(outer_ccw) < 0) outer_ccw = reversed(outer_ccw);
    scale = std::sqrt(std::abs(signed_area(outer_ccw)) / kPi);
    for (const Obstacle& o : omega.obstacles) {
      double clearance = std::numeric_limits<double>::infinity();
      for (const Complex& z : obstacle_points(o)) clearance = std::min(clearance, distance_to_curve(outer_ccw, z));
      scale = std::min(scale, clearance / 2);
    }
  }
  std::vector<std::vector<double>> dist(nob, std::vector<double>(nob, 0));
  for (std::size_t i = 0; i < nob; ++i)
    for (std::size_t j = 0; j < i; ++j)
      dist[i][j] = dist[j][i] = obstacle_distance(omega.obstacles[i], omega.obstacles[j]);

  Complex centre{};
  double reach = 0;
  if (nob > 0) {
    for (const Obstacle& o : omega.obstacles) centre += o.site();
    centre /= static_cast<double>(nob);
    for (const Obstacle& o : omega.obstacles)
      for (const Complex& z : obstacle_points(o)) reach = std::max(reach, std::abs(z - centre));
  }

  std::vector<PolyCompact> out;
  for (int level = 0; level < count; ++level) {
    const double mu = m[level] * scale;
    std::vector<int> parent(nob);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < nob; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (dist[i][j] <= 2 * mu) parent[find(parent, static_cast<int>(i))] = find(parent, static_cast<int>(j));

    std::vector<Polyline> holes;
    for (bool merged = true; merged;) {
      merged = false;
      std::vector<std::vector<Complex>> clusters(nob);
      for (std::size_t i = 0; i < nob; ++i) {
        std::vector<Complex> pts = obstacle_points(omega.obstacles[i]);
        auto& c = clusters[find(parent, static_cast<int>(i))];
        c.insert(c.end(), pts.begin(), pts.end());
      }
      holes.clear();
      std::vector<int> roots;
      for (std::size_t i = 0; i < nob; ++i) {
        if (clusters[i].empty()) continue;
        holes.push_back(rounded_hull(clusters[i], mu));
        roots.push_back(static_cast<int>(i));
      }
      for (std::size_t a = 0; a < holes.size() && !merged; ++a) {
        for (std::size_t b = 0; b < a; ++b) {
          if (curves_intersect(holes[a], holes[b]) || inside_curve(holes[a], holes[b].vertices.front()) ||
              inside_curve(holes[b], holes[a].vertices.front())) {
            parent[find(parent, roots[a])] = find(parent, roots[b]);
            merged = true;
            break;
          }
        }
      }
    }

    Polyline outer = omega.outer ? inset(outer_ccw, mu) : circle(centre, reach + scale / m[level]);
    if (!is_simple(outer))
      throw Error(ErrorKind::Construction,
                  "exhaustion: inset outer boundary self-intersects at margin " + std::to_string(mu) +
                      "; use a smaller margin");
    for (const Polyline& h : holes) {
      if (curves_intersect(outer, h) || !inside_curve(outer, h.vertices.front()))
        throw Error(ErrorKind::Construction,
                    "exhaustion: cannot encircle obstacles at margin " + std::to_string(mu) +
                        "; use a smaller margin",
                    h.vertices.front());
    }
    PolyCompact k = PolyCompact::fat({make_face(outer, holes)});
    if (!out.empty()) {
      const PolyCompact& prev = out.back();
      for (const Polyline* c : prev.curves())
        for (const Complex& v : c->vertices)
          if (point_locate(k, v, 1e-12) != Location::Inside)
            throw Error(ErrorKind::Construction, "exhaustion: compacts are not nested; use a finer margin schedule", v);
    }
    out.push_back(std::move(k));
  }
  return out;
}

namespace {

double radical_inverse(unsigned k, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0;
  while (k > 0) {
    r += f * (k % base);
    k /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

std::vector<PolyCompact> thin_compact_family(const std::vector<Polyline>& g, int n) {
  if (n < 1) throw Error(ErrorKind::Precondition, "thin_compact_family: n must be at least 1");
  PolyCompact all = PolyCompact::thin(g);
  validate(all);
  static const unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  std::vector<PolyCompact> out;
  for (int k = 1; k <= n; ++k) {
    const double eta = std::ldexp(1.0, -k - 3);
    PolyCompact kk;
    unsigned closed_index = 0;
    for (const Polyline& p : g) {
      if (!p.closed) {
        kk.pieces.push_back(p);
        continue;
      }
      const double r = radical_inverse(static_cast<unsigned>(k), primes[closed_index++ % 15]);
      kk.pieces.push_back(subcurve(p, r + eta, r - eta + 1));
    }
    out.push_back(std::move(kk));
  }
  return out;
}

}  // namespace holo
