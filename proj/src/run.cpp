#include "holo/run.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "holo/topology.hpp"

namespace holo {

namespace {

constexpr int kMaxImages = 8;
constexpr int kGeometryVertices = 512;
constexpr int kProfileSamples = 256;

const char* const kDnTypo =
    "D_n uses radius 2^(-2n-2) (centre 3*2^(-2n-2) as printed); the printed exponent 2^(2n-2) is taken to be a slip";

Json thinned(const Polyline& p) {
  if (static_cast<int>(p.vertices.size()) <= kGeometryVertices) return to_json(p);
  Polyline q;
  q.closed = p.closed;
  const std::size_t n = p.vertices.size();
  const std::size_t step = (n + kGeometryVertices - 1) / kGeometryVertices;
  for (std::size_t i = 0; i < n; i += step) q.vertices.push_back(p.vertices[i]);
  if (!p.closed && q.vertices.back() != p.vertices.back()) q.vertices.push_back(p.vertices.back());
  return to_json(q);
}

Json curves_json(const PolyCompact& k) {
  Json out = Json::array();
  for (const Polyline* c : k.curves()) out.push_back(thinned(*c));
  return out;
}

Json domain_json(const Domain& d) {
  Json obstacles = Json::array();
  for (const Obstacle& o : d.obstacles) {
    switch (o.kind) {
      case Obstacle::Kind::Fat: obstacles.push_back({{"kind", "fat"}, {"outline", thinned(o.face.outer)}}); break;
      case Obstacle::Kind::Thin: obstacles.push_back({{"kind", "thin"}, {"outline", thinned(o.curve)}}); break;
      case Obstacle::Kind::Point: obstacles.push_back({{"kind", "point"}, {"at", to_json(o.point)}}); break;
    }
  }
  Json out = {{"obstacles", obstacles}};
  out["outer"] = d.outer ? thinned(*d.outer) : Json(nullptr);
  return out;
}

// A compact standing in for G when drawing its images.
PolyCompact g_compact(const Scene& s) {
  if (s.thin_g()) return PolyCompact::thin(s.g_curves());
  const Domain& g = s.g_domain();
  if (g.bounded()) return closure_compact(g);
  return exhaustion(g, 1)[0];
}

Json images_json(const MapFamily& phi, const PolyCompact& k, const std::vector<int>& ns, std::vector<std::string>& notes) {
  Json out = Json::array();
  for (int n : ns) {
    try {
      out.push_back({{"n", n}, {"curves", curves_json(image_of(phi, n, k))}});
    } catch (const Error& e) {
      notes.push_back("image for n = " + std::to_string(n) + " not drawn: " + e.what());
    }
  }
  return out;
}

std::vector<int> drawn_indices(std::set<int> ns, const MapFamily& phi, int n_max) {
  if (ns.empty())
    for (int n = phi.first_index; n < phi.first_index + 4 && n <= std::max(n_max, phi.first_index); ++n) ns.insert(n);
  std::vector<int> out(ns.begin(), ns.end());
  if (static_cast<int>(out.size()) > kMaxImages) out.resize(kMaxImages);
  return out;
}

Json base_document(const Scene& s, const char* kind) {
  std::vector<std::string> flags = s.flags;
  const Domain& omega = s.omega_domain();
  if (omega.truncation && omega.truncation->generator_id == "D_n" &&
      std::find(flags.begin(), flags.end(), kDnTypo) == flags.end())
    flags.push_back(kDnTypo);
  Json doc = {{"kind", kind},
              {"scene", s.name},
              {"map", s.map.describe()},
              {"flags", flags},
              {"config", to_json(s.config)}};
  Json geometry = {{"omega", domain_json(omega)}};
  if (s.thin_g()) {
    Json g = Json::array();
    for (const Polyline& c : s.g_curves()) g.push_back(thinned(c));
    geometry["g"] = {{"thin", true}, {"curves", g}};
  } else {
    Json g = domain_json(s.g_domain());
    g["thin"] = false;
    geometry["g"] = g;
  }
  doc["geometry"] = geometry;
  return doc;
}

// |f∘phi_n - g| along each curve of K, indexed by arc-length fraction.
Json error_profile(const RationalFunction& f, const MapFamily& phi, const Target& t, int n) {
  Json samples = Json::array();
  const auto curves = t.k.curves();
  const double total = [&] {
    double s = 0;
    for (const Polyline* c : curves) s += c->length();
    return s;
  }();
  double offset = 0;
  for (const Polyline* c : curves) {
    const int m = std::max(8, static_cast<int>(kProfileSamples * c->length() / total));
    for (int i = 0; i <= m; ++i) {
      const double u = static_cast<double>(i) / m;
      const Complex z = c->at(c->closed ? std::min(u, 1.0 - 1e-12) : u);
      double err = NAN;
      try {
        err = std::abs(f(phi.apply(n, z)) - t.g(z));
      } catch (const Error&) {
      }
      samples.push_back({(offset + u * c->length()) / total, std::isfinite(err) ? Json(err) : Json(nullptr)});
    }
    offset += c->length();
  }
  return samples;
}

}  // namespace

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail:
    case Verdict::StructuralNo: return 2;
    case Verdict::Inconclusive: return 3;
  }
  return 1;
}

RunResult run_certify(const Scene& s) {
  const Domain& omega = s.omega_domain();
  const CertReport r = s.thin_g() ? certify_thin(s.map, s.g_curves(), omega, s.whole, s.config)
                                  : certify(s.map, s.g_domain(), omega, s.config);
  RunResult out;
  out.document = base_document(s, "certify");
  out.document["whole"] = s.whole;
  out.document["report"] = to_json(r);

  std::set<int> ns;
  for (const SampleRecord& w : r.witnesses)
    if (w.n) ns.insert(*w.n);
  if (r.obstruction) ns.insert({r.obstruction->n1, r.obstruction->n2, r.obstruction->n3});
  std::vector<std::string> notes;
  try {
    out.document["geometry"]["images"] = images_json(s.map, g_compact(s), drawn_indices(ns, s.map, s.config.n_max), notes);
  } catch (const Error& e) {
    notes.push_back(std::string("images not drawn: ") + e.what());
  }
  out.document["render_notes"] = notes;

  out.exit_code = exit_code(r.verdict);
  std::ostringstream msg;
  msg << (s.name.empty() ? "scene" : s.name) << ": " << to_string(r.verdict);
  if (!r.condition.empty()) msg << " (" << r.condition << ")";
  if (r.obstruction) msg << ", obstruction at n = " << r.obstruction->n1 << ", " << r.obstruction->n2 << ", " << r.obstruction->n3;
  out.summary = msg.str();
  return out;
}

RunResult run_construct(const Scene& s) {
  ConstructConfig cfg = s.construct;
  cfg.cert = s.config;
  const Domain& omega = s.omega_domain();
  const UniversalCertificate c = s.thin_g() ? build_thin_universal(s.map, s.g_curves(), omega, s.targets, cfg)
                                            : build_universal(s.map, s.g_domain(), omega, s.targets, cfg);
  RunResult out;
  out.document = base_document(s, "construct");
  out.document["eps0"] = cfg.eps0;
  out.document["certificate"] = to_json(c);

  Json targets = Json::array();
  Json profiles = Json::array();
  Json images = Json::array();
  std::vector<std::string> notes;
  for (const Target& t : s.targets) {
    targets.push_back({{"id", t.id}, {"curves", curves_json(t.k)}});
    for (const FinalError& fe : c.finals) {
      if (fe.target_id != t.id) continue;
      profiles.push_back({{"target", t.id}, {"n", fe.n}, {"bound", fe.bound}, {"error", fe.error},
                          {"samples", error_profile(c.f, s.map, t, fe.n)}});
      for (const Json& im : images_json(s.map, t.k, {fe.n}, notes)) images.push_back(im);
    }
  }
  out.document["geometry"]["targets"] = targets;
  out.document["geometry"]["images"] = images;
  out.document["profiles"] = profiles;
  out.document["render_notes"] = notes;

  switch (c.status) {
    case UniversalCertificate::Status::Complete: out.exit_code = c.drift_bound_holds() ? 0 : 1; break;
    case UniversalCertificate::Status::Refused: out.exit_code = 2; break;
    case UniversalCertificate::Status::Aborted: out.exit_code = 1; break;
  }
  std::ostringstream msg;
  msg << (s.name.empty() ? "scene" : s.name) << ": " << to_string(c.status) << ", " << c.steps.size() << " steps";
  double worst = 0;
  for (const FinalError& fe : c.finals) worst = std::max(worst, fe.error);
  if (!c.finals.empty()) msg << ", worst final error " << std::setprecision(3) << worst;
  if (!c.reason.empty()) msg << " (" << c.reason << ")";
  out.summary = msg.str();
  return out;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

struct View {
  Box box;
  double width = 640, height = 640;
  double ox = 0, oy = 0;  // panel offset in the page

  double x(Complex z) const { return ox + (z.real() - box.xmin) / box.width() * width; }
  double y(Complex z) const { return oy + (box.ymax - z.imag()) / box.height() * height; }
};

std::vector<Complex> points_of(const Json& polyline) {
  std::vector<Complex> out;
  for (const Json& p : polyline.at("points")) out.emplace_back(p[0].get<double>(), p[1].get<double>());
  return out;
}

void add_box(Box& b, const Json& polyline) {
  for (Complex z : points_of(polyline)) b.add(z);
}

std::string path_of(const View& v, const Json& polyline) {
  const auto pts = points_of(polyline);
  std::ostringstream d;
  d << std::fixed << std::setprecision(2);
  for (std::size_t i = 0; i < pts.size(); ++i) d << (i ? " L" : "M") << v.x(pts[i]) << "," << v.y(pts[i]);
  if (polyline.value("closed", false)) d << " Z";
  return d.str();
}

// Red through green to violet.
std::string hue(int i, int count) {
  const double h = count > 1 ? 5.0 * i / (count - 1) : 0;  // sextant of the colour wheel
  const double x = 1 - std::abs(std::fmod(h, 2.0) - 1);
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h)) {
    case 0: r = 1, g = x; break;
    case 1: r = x, g = 1; break;
    case 2: g = 1, b = x; break;
    case 3: g = x, b = 1; break;
    default: r = x, b = 1; break;
  }
  std::ostringstream s;
  s << "rgb(" << static_cast<int>(200 * r) << "," << static_cast<int>(200 * g) << "," << static_cast<int>(200 * b) << ")";
  return s.str();
}

std::string heat(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(255 * std::min(1.0, 2 * t));
  const int b = static_cast<int>(255 * std::min(1.0, 2 * (1 - t)));
  const int g = static_cast<int>(255 * (1 - std::abs(2 * t - 1)));
  std::ostringstream s;
  s << "rgb(" << r << "," << g << "," << b << ")";
  return s.str();
}

Box document_box(const Json& geo) {
  Box b = Box::empty();
  const Json& omega = geo.at("omega");
  if (!omega.at("outer").is_null()) add_box(b, omega.at("outer"));
  for (const Json& o : omega.at("obstacles")) {
    if (o.contains("outline")) add_box(b, o.at("outline"));
    else b.add(Complex(o.at("at")[0].get<double>(), o.at("at")[1].get<double>()));
  }
  const Json& g = geo.at("g");
  if (g.value("thin", false)) {
    for (const Json& c : g.at("curves")) add_box(b, c);
  } else if (!g.at("outer").is_null()) {
    add_box(b, g.at("outer"));
  }
  for (const char* key : {"images", "targets"})
    if (geo.contains(key))
      for (const Json& item : geo.at(key))
        for (const Json& c : item.at("curves")) add_box(b, c);
  if (b.is_empty()) b.add(Complex(0, 0));
  const double pad = std::max(0.05 * std::max(b.width(), b.height()), 0.25);
  b = b.expanded(pad);
  // Square aspect.
  const double side = std::max(b.width(), b.height());
  const Complex c = b.center();
  return {c.real() - side / 2, c.imag() - side / 2, c.real() + side / 2, c.imag() + side / 2};
}

void underlay(std::ostringstream& svg, const View& v, const RationalFunction& f) {
  constexpr int kCells = 96;
  std::vector<double> vals(kCells * kCells, NAN);
  double lo = INFINITY, hi = -INFINITY;
  for (int iy = 0; iy < kCells; ++iy)
    for (int ix = 0; ix < kCells; ++ix) {
      const Complex z(v.box.xmin + (ix + 0.5) * v.box.width() / kCells, v.box.ymax - (iy + 0.5) * v.box.height() / kCells);
      const double a = std::log10(std::abs(f(z)));
      if (!std::isfinite(a)) continue;
      vals[iy * kCells + ix] = a;
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
  if (!(hi > lo)) return;
  // Clip the extremes so poles do not wash out the picture.
  std::vector<double> sorted;
  for (double a : vals)
    if (std::isfinite(a)) sorted.push_back(a);
  std::sort(sorted.begin(), sorted.end());
  lo = sorted[sorted.size() / 50];
  hi = sorted[sorted.size() - 1 - sorted.size() / 50];
  if (!(hi > lo)) hi = lo + 1;
  const double cw = v.width / kCells, ch = v.height / kCells;
  svg << "<g opacity=\"0.35\">\n";
  for (int iy = 0; iy < kCells; ++iy)
    for (int ix = 0; ix < kCells; ++ix) {
      const double a = vals[iy * kCells + ix];
      if (!std::isfinite(a)) continue;
      svg << "<rect x=\"" << v.ox + ix * cw << "\" y=\"" << v.oy + iy * ch << "\" width=\"" << cw + 0.1 << "\" height=\""
          << ch + 0.1 << "\" fill=\"" << heat((a - lo) / (hi - lo)) << "\"/>\n";
    }
  svg << "</g>\n";
  svg << "<text x=\"" << v.ox + 4 << "\" y=\"" << v.oy + v.height - 6 << "\" font-size=\"11\">log10|f| in [" << std::setprecision(3)
      << lo << ", " << hi << "]</text>\n";
}

void error_panel(std::ostringstream& svg, const Json& profiles, double ox, double oy, double w, double h) {
  double lo = INFINITY, hi = -INFINITY;
  for (const Json& p : profiles) {
    for (const Json& s : p.at("samples"))
      if (!s[1].is_null() && s[1].get<double>() > 0) {
        lo = std::min(lo, std::log10(s[1].get<double>()));
        hi = std::max(hi, std::log10(s[1].get<double>()));
      }
    if (p.at("bound").get<double>() > 0) hi = std::max(hi, std::log10(p.at("bound").get<double>()));
  }
  svg << "<rect x=\"" << ox << "\" y=\"" << oy << "\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << ox + 4 << "\" y=\"" << oy + 14 << "\" font-size=\"12\">log10 |f o phi_n - g| along K (dashed: bound)</text>\n";
  if (!(hi >= lo)) return;
  lo = std::floor(lo);
  hi = std::ceil(hi + 1e-9);
  if (hi <= lo) hi = lo + 1;
  auto px = [&](double t) { return ox + 40 + t * (w - 50); };
  auto py = [&](double a) { return oy + 20 + (hi - a) / (hi - lo) * (h - 30); };
  for (int k = static_cast<int>(lo); k <= static_cast<int>(hi); ++k)
    svg << "<text x=\"" << ox + 4 << "\" y=\"" << py(k) + 4 << "\" font-size=\"10\">1e" << k << "</text>\n";
  const int count = static_cast<int>(profiles.size());
  for (int i = 0; i < count; ++i) {
    const Json& p = profiles[i];
    std::ostringstream d;
    d << std::fixed << std::setprecision(2);
    bool pen = false;
    for (const Json& s : p.at("samples")) {
      if (s[1].is_null() || !(s[1].get<double>() > 0)) {
        pen = false;
        continue;
      }
      d << (pen ? " L" : " M") << px(s[0].get<double>()) << "," << py(std::log10(s[1].get<double>()));
      pen = true;
    }
    const std::string colour = hue(i, count);
    svg << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\"/>\n";
    const double b = std::log10(p.at("bound").get<double>());
    svg << "<line x1=\"" << px(0) << "\" x2=\"" << px(1) << "\" y1=\"" << py(b) << "\" y2=\"" << py(b) << "\" stroke=\""
        << colour << "\" stroke-dasharray=\"4,3\"/>\n";
    svg << "<text x=\"" << px(1) - 120 << "\" y=\"" << oy + 28 + 12 * i << "\" font-size=\"10\" fill=\"" << colour << "\">"
        << p.at("target").get<std::string>() << " (n = " << p.at("n").get<int>() << ")</text>\n";
  }
}

}  // namespace

namespace {

Box square(Box b, double pad) {
  b = b.expanded(pad);
  const double side = std::max(b.width(), b.height());
  const Complex c = b.center();
  return {c.real() - side / 2, c.imag() - side / 2, c.real() + side / 2, c.imag() + side / 2};
}

// Images and obstacles, when they sit in a small corner of the full frame.
std::optional<Box> zoom_box(const Json& geo, const Box& full) {
  Box b = Box::empty();
  for (const Json& o : geo.at("omega").at("obstacles")) {
    if (o.contains("outline")) add_box(b, o.at("outline"));
    else b.add(Complex(o.at("at")[0].get<double>(), o.at("at")[1].get<double>()));
  }
  if (geo.contains("images"))
    for (const Json& im : geo.at("images"))
      for (const Json& c : im.at("curves")) add_box(b, c);
  if (b.is_empty()) return std::nullopt;
  const Box z = square(b, 0.08 * std::max({b.width(), b.height(), 1e-6}));
  if (z.width() > 0.25 * full.width()) return std::nullopt;
  return z;
}

void draw_panel(std::ostringstream& svg, const View& v, const Json& doc, int id) {
  const Json& geo = doc.at("geometry");
  svg << "<clipPath id=\"panel" << id << "\"><rect x=\"" << v.ox << "\" y=\"" << v.oy << "\" width=\"" << v.width
      << "\" height=\"" << v.height << "\"/></clipPath>\n<g clip-path=\"url(#panel" << id << ")\">\n";
  if (doc.contains("certificate")) {
    try {
      underlay(svg, v, rational_from_json(doc["certificate"].at("f")));
    } catch (const Error&) {
    }
  }

  const Json& omega = geo.at("omega");
  for (const Json& o : omega.at("obstacles")) {
    const std::string kind = o.at("kind");
    if (kind == "point") {
      const Complex z(o.at("at")[0].get<double>(), o.at("at")[1].get<double>());
      svg << "<circle cx=\"" << v.x(z) << "\" cy=\"" << v.y(z) << "\" r=\"3\" fill=\"#444\"/>\n";
    } else {
      svg << "<path d=\"" << path_of(v, o.at("outline")) << "\" fill=\"" << (kind == "fat" ? "#bbb" : "none")
          << "\" stroke=\"#444\" stroke-width=\"" << (kind == "fat" ? 0.8 : 2) << "\"/>\n";
    }
  }
  if (!omega.at("outer").is_null())
    svg << "<path d=\"" << path_of(v, omega.at("outer")) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.2\"/>\n";

  const Json& g = geo.at("g");
  std::vector<Json> g_curves;
  if (g.value("thin", false)) {
    for (const Json& c : g.at("curves")) g_curves.push_back(c);
  } else {
    if (!g.at("outer").is_null()) g_curves.push_back(g.at("outer"));
    for (const Json& o : g.at("obstacles"))
      if (o.contains("outline")) g_curves.push_back(o.at("outline"));
  }
  for (const Json& c : g_curves)
    svg << "<path d=\"" << path_of(v, c) << "\" fill=\"none\" stroke=\"#1f4fd0\" stroke-width=\"1.6\" stroke-dasharray=\"6,3\"/>\n";

  if (geo.contains("targets"))
    for (const Json& t : geo.at("targets"))
      for (const Json& c : t.at("curves"))
        svg << "<path d=\"" << path_of(v, c) << "\" fill=\"none\" stroke=\"#108a30\" stroke-width=\"2.4\"/>\n";

  if (geo.contains("images")) {
    const int count = static_cast<int>(geo.at("images").size());
    int i = 0;
    for (const Json& im : geo.at("images")) {
      const std::string colour = hue(i, count);
      for (const Json& c : im.at("curves"))
        svg << "<path d=\"" << path_of(v, c) << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.3\"/>\n";
      svg << "<text x=\"" << v.ox + v.width - 70 << "\" y=\"" << v.oy + 14 + 12 * i << "\" font-size=\"10\" fill=\"" << colour
          << "\">n = " << im.at("n").get<int>() << "</text>\n";
      ++i;
    }
  }
  svg << "</g>\n<rect x=\"" << v.ox << "\" y=\"" << v.oy << "\" width=\"" << v.width << "\" height=\"" << v.height
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
}

}  // namespace

std::string render_svg(const Json& doc) {
  if (!doc.contains("geometry")) throw Error(ErrorKind::Schema, "document: no geometry block to plot");
  const Json& geo = doc.at("geometry");
  View main;
  main.box = document_box(geo);
  main.oy = 30;
  const std::optional<Box> zoom = zoom_box(geo, main.box);
  const bool has_profiles = doc.contains("profiles") && !doc.at("profiles").empty();
  double page_h = main.oy + main.height + 10;
  std::optional<View> inset;
  if (zoom) {
    inset = main;
    inset->box = *zoom;
    inset->oy = page_h + 20;
    page_h = inset->oy + inset->height + 10;
  }
  const double panel_y = page_h;
  if (has_profiles) page_h += 250;

  std::ostringstream svg;
  svg << std::setprecision(6);
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << main.width << "\" height=\"" << page_h
      << "\" viewBox=\"0 0 " << main.width << " " << page_h << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::string title = doc.value("scene", std::string());
  if (doc.contains("report")) title += "  certify: " + doc["report"].value("verdict", std::string());
  if (doc.contains("certificate")) title += "  construct: " + doc["certificate"].value("status", std::string());
  svg << "<text x=\"8\" y=\"20\" font-size=\"14\">" << title << "</text>\n";

  draw_panel(svg, main, doc, 0);
  if (inset) {
    svg << "<text x=\"8\" y=\"" << inset->oy - 6 << "\" font-size=\"12\">zoom: [" << inset->box.xmin << ", " << inset->box.xmax
        << "] x [" << inset->box.ymin << ", " << inset->box.ymax << "]</text>\n";
    draw_panel(svg, *inset, doc, 1);
  }
  if (has_profiles) error_panel(svg, doc.at("profiles"), 0, panel_y, main.width, 240);
  svg << "</svg>\n";
  return svg.str();
}

// ---------------------------------------------------------------------------
// Demo corpus

namespace {

const std::map<std::string, const char*>& demo_texts() {
  static const std::map<std::string, const char*> texts = {
      {"birkhoff", R"json({
  "name": "birkhoff",
  "domains": {"plane": {}},
  "maps": {"translations": {"kind": "Affine", "a": 1, "b": "4n"}},
  "g": "plane",
  "omega": "plane",
  "config": {"n_max": 16},
  "construct": {
    "eps0": 0.1,
    "targets": [
      {"id": "1", "compact": {"type": "disc", "centre": 0, "radius": 1}, "g": "1"},
      {"id": "z", "compact": {"type": "disc", "centre": 0, "radius": 1}, "g": "z"},
      {"id": "z^2", "compact": {"type": "disc", "centre": 0, "radius": 1}, "g": "z^2"}
    ]
  }
})json"},
      {"abel", R"json({
  "name": "abel",
  "domains": {"disc": {"outer": {"type": "circle", "centre": 0, "radius": 1}}},
  "curves": {"circle": [{"type": "circle", "centre": 0, "radius": 1}]},
  "maps": {"radial": {"kind": "RadialScale", "r": "1-2^(-n)"}},
  "g": "circle",
  "omega": "disc",
  "config": {"n_max": 16},
  "construct": {
    "eps0": 0.1,
    "targets": [
      {"id": "2", "compact": {"type": "arc", "centre": 0, "radius": 1, "from": "-3pi/4", "to": "3pi/4"}, "g": "2"},
      {"id": "conj", "compact": {"type": "arc", "centre": 0, "radius": 1, "from": "-3pi/4", "to": "3pi/4"}, "g": "conj(z)"},
      {"id": "re", "compact": {"type": "arc", "centre": 0, "radius": 1, "from": "-3pi/4", "to": "3pi/4"}, "g": "re(z)"}
    ]
  }
})json"},
      {"annulus-ladder", R"json({
  "name": "annulus-ladder",
  "domains": {
    "annulus": {"outer": {"type": "circle", "centre": 0, "radius": 4},
                "obstacles": [{"type": "disc", "centre": 0, "radius": 2}]},
    "ladder": {"obstacles": [{"type": "point", "at": 0}], "generator": {"id": "D_n", "cutoff": 8}}
  },
  "maps": {"ladder": {"kind": "AnnulusScale", "first_index": 1}},
  "g": "annulus",
  "omega": "ladder",
  "config": {"n_max": 8, "N_grid": [0, 2, 5]}
})json"},
      {"annulus-counter", R"json({
  "name": "annulus-counter",
  "domains": {
    "annulus": {"outer": {"type": "circle", "centre": 0, "radius": 4},
                "obstacles": [{"type": "disc", "centre": 0, "radius": 2}]},
    "outside": {"obstacles": [{"type": "point", "at": 0}], "generator": {"id": "B_n", "cutoff": 8}}
  },
  "maps": {"ladder": {"kind": "AnnulusScale", "first_index": 1}},
  "g": "annulus",
  "omega": "outside",
  "config": {"n_max": 8, "N_grid": [0, 2, 5]}
})json"},
      {"tangent-circles", R"json({
  "name": "tangent-circles",
  "domains": {"disc": {"outer": {"type": "circle", "centre": 0, "radius": 1}}},
  "curves": {"circle": [{"type": "circle", "centre": 0, "radius": 1}]},
  "maps": {"tangent": {"kind": "TangentCircles", "first_index": 2}},
  "g": "circle",
  "omega": "disc",
  "config": {"n_max": 64},
  "construct": {
    "eps0": 0.15,
    "plan_delta": 0.1,
    "targets": [
      {"id": "conj", "compact": {"type": "arc", "centre": 0, "radius": 1, "from": "-3pi/4", "to": "3pi/4"}, "g": "conj(z)"}
    ]
  }
})json"},
      {"normal-offset", R"json({
  "name": "normal-offset",
  "domains": {"ellipse": {"outer": {"type": "mapped", "of": {"type": "circle", "centre": 0, "radius": 1}, "by": "z+0.2conj(z)"}}},
  "curves": {"ellipse": [{"type": "mapped", "of": {"type": "circle", "centre": 0, "radius": 1}, "by": "z+0.2conj(z)"}]},
  "maps": {"offset": {"kind": "NormalOffset", "r": "1-2^(-n)", "boundary_of": "ellipse"}},
  "g": "ellipse",
  "omega": "ellipse",
  "config": {"n_max": 16}
})json"},
      {"jordan-radial", R"json({
  "name": "jordan-radial",
  "domains": {"jordan": {"outer": {"type": "mapped", "of": {"type": "circle", "centre": 0, "radius": 1}, "by": "z+0.1z^2"}}},
  "curves": {"circle": [{"type": "circle", "centre": 0, "radius": 1}]},
  "maps": {"psi": {"kind": "JordanRadial", "omega": "z+0.1z^2", "r": "1-2^(-n)"}},
  "g": "circle",
  "omega": "jordan",
  "config": {"n_max": 16}
})json"},
      {"slit-plane", R"json({
  "name": "slit-plane",
  "domains": {"slit": {"obstacles": [{"type": "segment", "from": 0, "to": 1}]}},
  "curves": {"unit": [{"type": "segment", "from": 0, "to": 1, "vertices": 64}]},
  "maps": {"shift": {"kind": "VerticalShift", "r": "1/n", "first_index": 1}},
  "g": "unit",
  "omega": "slit",
  "config": {"n_max": 16},
  "construct": {
    "eps0": 0.1,
    "targets": [
      {"id": "x(1-x)", "compact": {"type": "segment", "from": 0, "to": 1, "vertices": 64}, "g": "re(z)*(1-re(z))"}
    ]
  }
})json"},
      {"impossibility-outer", R"json({
  "name": "impossibility-outer",
  "domains": {"outside": {"obstacles": [{"type": "disc", "centre": 0, "radius": 1}]}},
  "curves": {"circle": [{"type": "circle", "centre": 0, "radius": 1}]},
  "maps": {"radial": {"kind": "RadialScale", "r": "1+2^(-n)"}},
  "g": "circle",
  "omega": "outside",
  "whole": true,
  "config": {"n_max": 16}
})json"},
  };
  return texts;
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = {"birkhoff",      "abel",          "annulus-ladder",
                                                 "annulus-counter", "tangent-circles", "normal-offset",
                                                 "jordan-radial", "slit-plane",    "impossibility-outer"};
  return names;
}

Json demo_scene(const std::string& name) {
  const auto& texts = demo_texts();
  auto it = texts.find(name);
  if (it == texts.end()) throw Error(ErrorKind::Schema, "demo: unknown name '" + name + "'");
  return Json::parse(it->second);
}

RunResult run_demo(const std::string& name) {
  const Scene s = parse_scene(demo_scene(name));
  if (s.targets.empty()) return run_certify(s);
  RunResult out = run_construct(s);
  out.document["demo"] = name;
  return out;
}

}  // namespace holo
