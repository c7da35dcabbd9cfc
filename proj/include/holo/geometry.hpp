#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holo/error.hpp"

namespace holo {

using Complex = std::complex<double>;

inline constexpr int kCurveResolution = 256;
inline constexpr double kPi = 3.14159265358979323846;

struct Box {
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;

  static Box empty();
  bool is_empty() const { return xmin > xmax; }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  Complex center() const { return {(xmin + xmax) / 2, (ymin + ymax) / 2}; }
  double diameter() const { return std::hypot(width(), height()); }
  void add(Complex z);
  void add(const Box& b);
  Box expanded(double margin) const;
  bool contains(const Box& b) const;
  bool overlaps(const Box& b, double slack = 0) const;
};

struct Polyline {
  std::vector<Complex> vertices;
  bool closed = false;

  Polyline() = default;
  Polyline(std::vector<Complex> v, bool is_closed);

  std::size_t segment_count() const;
  Complex seg_a(std::size_t i) const { return vertices[i]; }
  Complex seg_b(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }
  double length() const;
  Box bbox() const;
  // Point at arc-length fraction t in [0,1].
  Complex at(double t) const;
};

// Signed area (positive for counterclockwise closed polylines).
double signed_area(const Polyline& p);
// Arc-length fractions of each vertex (closed curves end below 1).
std::vector<double> vertex_params(const Polyline& p);
// Portion between arc-length fractions t0 < t1; for closed curves t1 may exceed 1 (wraps).
Polyline subcurve(const Polyline& p, double t0, double t1);
Polyline reversed(Polyline p);

struct Face {
  Polyline outer;
  std::vector<Polyline> holes;
};

// Orients outer counterclockwise and holes clockwise.
Face make_face(Polyline outer, std::vector<Polyline> holes = {});

enum class CompactKind { Empty, Fat, Thin, Mixed };

struct PolyCompact {
  std::vector<Face> faces;
  std::vector<Polyline> pieces;

  static PolyCompact fat(std::vector<Face> faces);
  static PolyCompact thin(std::vector<Polyline> pieces);

  CompactKind kind() const;
  bool empty() const { return faces.empty() && pieces.empty(); }
  Box bbox() const;
  // Every boundary polyline (face outers, face holes, pieces).
  std::vector<const Polyline*> curves() const;
};

PolyCompact unite(const PolyCompact& a, const PolyCompact& b);

struct Truncation {
  std::string generator_id;
  int cutoff = 0;
};

struct Obstacle {
  enum class Kind { Fat, Thin, Point };
  Kind kind = Kind::Point;
  Face face;
  Polyline curve;
  Complex point;

  static Obstacle fat(Face f);
  static Obstacle thin(Polyline c);
  static Obstacle at(Complex z);

  // Centroid plus every vertex.
  std::vector<Complex> witness_points() const;
  // Canonical representative (pole site).
  Complex site() const;
  Box bbox() const;
};

struct Domain {
  std::optional<Polyline> outer;
  std::vector<Obstacle> obstacles;
  std::optional<Truncation> truncation;

  bool bounded() const { return outer.has_value(); }
  bool simply_connected() const { return obstacles.empty() && !truncation; }
  Box bbox() const;
};

// Boundary curves of a domain oriented with the domain on the left.
std::vector<Polyline> oriented_boundary(const Domain& d);

Polyline circle(Complex c, double r, int n = kCurveResolution);
Polyline arc(Complex c, double r, double from, double to, int n = kCurveResolution);
Polyline segment(Complex a, Complex b, int n = 2);
Face disc(Complex c, double r, int n = kCurveResolution);
Face annulus(Complex c, double r_in, double r_out, int n = kCurveResolution);
Face polygon_face(std::vector<Complex> v);

enum class Location { Inside, Boundary, Outside };
const char* to_string(Location loc);

// Even-odd crossing test against a closed polyline; boundary points are unspecified.
bool inside_curve(const Polyline& c, Complex z);
double distance_to_curve(const Polyline& c, Complex z);

Location point_locate(const Face& f, Complex z, double tol);
Location point_locate(const PolyCompact& k, Complex z, double tol);
Location point_locate(const Domain& d, Complex z, double tol);

double point_segment_distance(Complex z, Complex a, Complex b);
double segment_distance(Complex a, Complex b, Complex c, Complex d);
bool segments_intersect(Complex a, Complex b, Complex c, Complex d);
// Closest point on segment [a,b] to z, as a parameter in [0,1].
double project_on_segment(Complex z, Complex a, Complex b);

bool is_simple(const Polyline& p);
bool curves_intersect(const Polyline& p, const Polyline& q);

double set_distance(const PolyCompact& a, const PolyCompact& b);
double distance_to_boundary(const PolyCompact& k, Complex z);

void validate(const Polyline& p, bool simple = true);
void validate(const Face& f);
void validate(const PolyCompact& k);
void validate(const Domain& d);
// True when faces and pieces are individually simple and pairwise disjoint.
bool is_simple_configuration(const PolyCompact& k);

struct Grid {
  Box box;
  int nx = 0, ny = 0;
  std::vector<std::uint8_t> cells;

  Grid() = default;
  Grid(const Box& b, int nx_, int ny_);
  double dx() const { return box.width() / nx; }
  double dy() const { return box.height() / ny; }
  Complex centre(int ix, int iy) const;
  std::uint8_t& at(int ix, int iy) { return cells[static_cast<std::size_t>(iy) * nx + ix]; }
  std::uint8_t at(int ix, int iy) const { return cells[static_cast<std::size_t>(iy) * nx + ix]; }
  // Cell containing z, or false when z lies outside the grid.
  bool locate(Complex z, int& ix, int& iy) const;
  std::size_t count() const;
};

inline constexpr int kMinResolution = 4;
inline constexpr int kMaxResolution = 16384;

Grid rasterize(const PolyCompact& k, const Box& bbox, int resolution);
Grid rasterize(const Domain& d, const Box& bbox, int resolution);
// Marks every cell met by the polyline (8-connected chain).
void mark_curve(Grid& g, const Polyline& c, std::uint8_t value = 1);
bool is_connected(const Domain& d, int resolution = 512);

}  // namespace holo
