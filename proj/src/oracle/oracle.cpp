#include "holo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace holo::oracle {

namespace {

struct Raster {
  double x0, y0, h;
  int n;
  std::vector<signed char> cell;  // 1 = compact, 0 = free

  int index(int i, int j) const { return j * n + i; }
  bool cell_of(Complex z, int& i, int& j) const {
    i = static_cast<int>(std::floor((z.real() - x0) / h));
    j = static_cast<int>(std::floor((z.imag() - y0) / h));
    return i >= 0 && j >= 0 && i < n && j < n;
  }
};

struct Crossing {
  double x;
  int dir;
};

// Nonzero winding per face: inside outer and not inside any hole.
void fill_face(Raster& r, const Face& f) {
  std::vector<Crossing> xs;
  std::vector<std::vector<Crossing>> hole_xs(f.holes.size());
  auto crossings = [&](const Polyline& c, double y, std::vector<Crossing>& out) {
    out.clear();
    const std::size_t m = c.vertices.size();
    for (std::size_t k = 0; k < m; ++k) {
      const Complex a = c.vertices[k], b = c.vertices[(k + 1) % m];
      if (a.imag() <= y && b.imag() > y) out.push_back({a.real() + (y - a.imag()) / (b.imag() - a.imag()) * (b.real() - a.real()), 1});
      if (b.imag() <= y && a.imag() > y) out.push_back({a.real() + (y - a.imag()) / (b.imag() - a.imag()) * (b.real() - a.real()), -1});
    }
    std::sort(out.begin(), out.end(), [](const Crossing& p, const Crossing& q) { return p.x < q.x; });
  };
  auto winding_at = [](const std::vector<Crossing>& cs, double x) {
    int w = 0;
    for (const Crossing& c : cs)
      if (c.x > x) w += c.dir;
    return w;
  };
  for (int j = 0; j < r.n; ++j) {
    const double y = r.y0 + (j + 0.5) * r.h;
    crossings(f.outer, y, xs);
    if (xs.empty()) continue;
    for (std::size_t h = 0; h < f.holes.size(); ++h) crossings(f.holes[h], y, hole_xs[h]);
    const int i0 = std::max(0, static_cast<int>(std::floor((xs.front().x - r.x0) / r.h)));
    const int i1 = std::min(r.n - 1, static_cast<int>(std::ceil((xs.back().x - r.x0) / r.h)));
    for (int i = i0; i <= i1; ++i) {
      const double x = r.x0 + (i + 0.5) * r.h;
      if (winding_at(xs, x) == 0) continue;
      bool in_hole = false;
      for (const auto& hx : hole_xs)
        if (winding_at(hx, x) != 0) in_hole = true;
      if (!in_hole) r.cell[r.index(i, j)] = 1;
    }
  }
}

// Grid traversal marking every cell a segment passes through (supercover).
void mark_segment(Raster& r, Complex a, Complex b) {
  const double ax = (a.real() - r.x0) / r.h, ay = (a.imag() - r.y0) / r.h;
  const double bx = (b.real() - r.x0) / r.h, by = (b.imag() - r.y0) / r.h;
  int i = static_cast<int>(std::floor(ax)), j = static_cast<int>(std::floor(ay));
  const int ie = static_cast<int>(std::floor(bx)), je = static_cast<int>(std::floor(by));
  const double dx = bx - ax, dy = by - ay;
  const int si = dx > 0 ? 1 : -1, sj = dy > 0 ? 1 : -1;
  double tx = dx != 0 ? ((si > 0 ? i + 1 - ax : ax - i) / std::abs(dx)) : INFINITY;
  double ty = dy != 0 ? ((sj > 0 ? j + 1 - ay : ay - j) / std::abs(dy)) : INFINITY;
  const double ddx = dx != 0 ? 1 / std::abs(dx) : INFINITY, ddy = dy != 0 ? 1 / std::abs(dy) : INFINITY;
  for (int guard = 0; guard < 4 * r.n + 8; ++guard) {
    if (i >= 0 && j >= 0 && i < r.n && j < r.n) r.cell[r.index(i, j)] = 1;
    if (i == ie && j == je) break;
    if (tx < ty) {
      i += si;
      tx += ddx;
    } else {
      j += sj;
      ty += ddy;
    }
  }
}

}  // namespace

Report analyse(const PolyCompact& k, const Domain* omega, int resolution) {
  double xmin = 1e300, ymin = 1e300, xmax = -1e300, ymax = -1e300;
  for (const Polyline* c : k.curves())
    for (const Complex& z : c->vertices) {
      xmin = std::min(xmin, z.real());
      xmax = std::max(xmax, z.real());
      ymin = std::min(ymin, z.imag());
      ymax = std::max(ymax, z.imag());
    }
  const double side = std::max(xmax - xmin, ymax - ymin) * 1.2 + 1e-9;
  Raster r;
  r.n = resolution;
  r.h = side / resolution;
  r.x0 = (xmin + xmax) / 2 - side / 2;
  r.y0 = (ymin + ymax) / 2 - side / 2;
  r.cell.assign(static_cast<std::size_t>(r.n) * r.n, 0);
  for (const Face& f : k.faces) fill_face(r, f);
  for (const Polyline* c : k.curves())
    for (std::size_t s = 0; s < c->segment_count(); ++s) mark_segment(r, c->seg_a(s), c->seg_b(s));

  Report rep;
  rep.filled_cells = std::count(r.cell.begin(), r.cell.end(), 1);
  std::vector<int> label(r.cell.size(), -1);
  std::vector<int> stack;
  auto fill = [&](int seed, int l) {
    stack.assign(1, seed);
    label[seed] = l;
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      const int i = c % r.n, j = c / r.n;
      const int nb[4] = {i > 0 ? c - 1 : -1, i + 1 < r.n ? c + 1 : -1, j > 0 ? c - r.n : -1,
                         j + 1 < r.n ? c + r.n : -1};
      for (int q : nb) {
        if (q < 0 || r.cell[q] || label[q] >= 0) continue;
        label[q] = l;
        stack.push_back(q);
      }
    }
  };
  for (int t = 0; t < r.n; ++t) {
    for (int seed : {t, (r.n - 1) * r.n + t, t * r.n, t * r.n + r.n - 1})
      if (!r.cell[seed] && label[seed] < 0) fill(seed, 0);
  }
  int holes = 0;
  for (std::size_t c = 0; c < r.cell.size(); ++c)
    if (!r.cell[c] && label[c] < 0) fill(static_cast<int>(c), ++holes);
  rep.holes = holes;
  if (omega) {
    rep.hole_meets_complement.assign(holes, false);
    std::vector<Complex> pts;
    if (omega->outer) pts = omega->outer->vertices;
    for (const Obstacle& o : omega->obstacles) {
      switch (o.kind) {
        case Obstacle::Kind::Point: pts.push_back(o.point); break;
        case Obstacle::Kind::Thin: pts.insert(pts.end(), o.curve.vertices.begin(), o.curve.vertices.end()); break;
        case Obstacle::Kind::Fat: pts.insert(pts.end(), o.face.outer.vertices.begin(), o.face.outer.vertices.end()); break;
      }
    }
    for (const Complex& z : pts) {
      int i, j;
      if (!r.cell_of(z, i, j)) continue;
      const int l = label[r.index(i, j)];
      if (l > 0) rep.hole_meets_complement[l - 1] = true;
    }
    rep.omega_convex = std::all_of(rep.hole_meets_complement.begin(), rep.hole_meets_complement.end(),
                                   [](bool b) { return b; });
  }
  return rep;
}

}  // namespace holo::oracle
