#include "holo/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace holo {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::Schema, (path.empty() ? std::string("scene") : path) + ": " + what);
}

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void object(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

const Json& need(const Json& j, const std::string& key, const std::string& path) {
  object(j, path);
  auto it = j.find(key);
  if (it == j.end()) fail(at(path, key), "missing field");
  return *it;
}

void only(const Json& j, std::initializer_list<const char*> keys, const std::string& path) {
  object(j, path);
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(at(path, it.key()), "unknown field");
}

Complex evaluate(const std::string& text, const std::string& path) {
  try {
    return Expression(text).at_n(0);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

double real(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const Complex v = evaluate(j.get<std::string>(), path);
    if (std::abs(v.imag()) > 1e-12) fail(path, "expected a real value");
    return v.real();
  }
  fail(path, "expected a number");
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Complex point(const Json& j, const std::string& path) {
  if (j.is_array()) {
    if (j.size() != 2) fail(path, "expected [x, y]");
    return {real(j[0], idx(path, 0)), real(j[1], idx(path, 1))};
  }
  if (j.is_string()) return evaluate(j.get<std::string>(), path);
  return real(j, path);
}

Expression expression(const Json& j, const std::string& path) {
  if (j.is_number()) return Expression::constant(j.get<double>());
  try {
    return Expression(text(j, path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    fail(path, e.what());
  }
}

struct Shape {
  enum class Kind { Curve, Face, Point } kind = Kind::Curve;
  Polyline curve;
  Face face;
  Complex point;
};

std::vector<Complex> vertex_list(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() < 2) fail(path, "expected a list of at least two points");
  std::vector<Complex> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(point(j[i], idx(path, i)));
  return v;
}

Polyline mapped(const Polyline& p, const Expression& e) {
  Polyline out = p;
  for (Complex& z : out.vertices) z = e(z);
  return out;
}

Shape shape(const Json& j, const std::string& path, int res) {
  const std::string type = text(need(j, "type", path), at(path, "type"));
  Shape s;
  auto centre = [&] { return point(need(j, "centre", path), at(path, "centre")); };
  auto radius = [&](const char* key) {
    const double r = real(need(j, key, path), at(path, key));
    if (!(r > 0)) fail(at(path, key), "must be positive");
    return r;
  };
  if (type == "circle") {
    only(j, {"type", "centre", "radius"}, path);
    s.curve = circle(centre(), radius("radius"), res);
  } else if (type == "arc") {
    only(j, {"type", "centre", "radius", "from", "to"}, path);
    const double from = real(need(j, "from", path), at(path, "from"));
    const double to = real(need(j, "to", path), at(path, "to"));
    if (!(to > from) || to - from >= 2 * kPi) fail(path, "arc needs from < to < from + 2 pi");
    s.curve = arc(centre(), radius("radius"), from, to, res);
  } else if (type == "segment") {
    only(j, {"type", "from", "to", "vertices"}, path);
    const int n = j.contains("vertices") ? integer(j["vertices"], at(path, "vertices")) : 64;
    s.curve = segment(point(need(j, "from", path), at(path, "from")), point(need(j, "to", path), at(path, "to")), n);
  } else if (type == "polyline") {
    only(j, {"type", "vertices", "closed"}, path);
    const bool closed = j.contains("closed") && boolean(j["closed"], at(path, "closed"));
    s.curve = Polyline(vertex_list(need(j, "vertices", path), at(path, "vertices")), closed);
  } else if (type == "polygon") {
    only(j, {"type", "vertices"}, path);
    s.kind = Shape::Kind::Face;
    s.face = polygon_face(vertex_list(need(j, "vertices", path), at(path, "vertices")));
  } else if (type == "disc") {
    only(j, {"type", "centre", "radius"}, path);
    s.kind = Shape::Kind::Face;
    s.face = disc(centre(), radius("radius"), res);
  } else if (type == "annulus") {
    only(j, {"type", "centre", "inner", "outer"}, path);
    const double ri = radius("inner"), ro = radius("outer");
    if (!(ri < ro)) fail(path, "annulus needs inner < outer");
    s.kind = Shape::Kind::Face;
    s.face = annulus(centre(), ri, ro, res);
  } else if (type == "point") {
    only(j, {"type", "at"}, path);
    s.kind = Shape::Kind::Point;
    s.point = point(need(j, "at", path), at(path, "at"));
  } else if (type == "mapped") {
    only(j, {"type", "of", "by"}, path);
    s = shape(need(j, "of", path), at(path, "of"), res);
    const Expression e = expression(need(j, "by", path), at(path, "by"));
    if (s.kind == Shape::Kind::Point) {
      s.point = e(s.point);
    } else if (s.kind == Shape::Kind::Curve) {
      s.curve = mapped(s.curve, e);
    } else {
      std::vector<Polyline> holes;
      for (const Polyline& h : s.face.holes) holes.push_back(mapped(h, e));
      s.face = make_face(mapped(s.face.outer, e), holes);
    }
  } else {
    fail(at(path, "type"), "unknown shape '" + type + "'");
  }
  try {
    if (s.kind == Shape::Kind::Curve) validate(s.curve);
    if (s.kind == Shape::Kind::Face) validate(s.face);
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return s;
}

Polyline curve_shape(const Json& j, const std::string& path, int res) {
  Shape s = shape(j, path, res);
  if (s.kind != Shape::Kind::Curve) fail(path, "expected a curve (circle, arc, segment, polyline)");
  return s.curve;
}

}  // namespace

Domain parse_domain(const Json& j, const std::string& path, int res) {
  only(j, {"outer", "obstacles", "generator"}, path);
  Domain d;
  if (j.contains("outer")) {
    Shape s = shape(j["outer"], at(path, "outer"), res);
    if (s.kind == Shape::Kind::Face && s.face.holes.empty()) s.curve = s.face.outer;
    else if (s.kind != Shape::Kind::Curve || !s.curve.closed) fail(at(path, "outer"), "expected a closed curve");
    d.outer = s.curve;
  }
  if (j.contains("obstacles")) {
    const Json& list = j["obstacles"];
    const std::string p = at(path, "obstacles");
    if (!list.is_array()) fail(p, "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      Shape s = shape(list[i], idx(p, i), res);
      if (s.kind == Shape::Kind::Face) d.obstacles.push_back(Obstacle::fat(s.face));
      else if (s.kind == Shape::Kind::Curve) d.obstacles.push_back(Obstacle::thin(s.curve));
      else d.obstacles.push_back(Obstacle::at(s.point));
    }
  }
  if (j.contains("generator")) {
    const Json& g = j["generator"];
    const std::string p = at(path, "generator");
    only(g, {"id", "cutoff"}, p);
    const std::string id = text(need(g, "id", p), at(p, "id"));
    const int cutoff = integer(need(g, "cutoff", p), at(p, "cutoff"));
    try {
      for (Obstacle& o : generate_obstacles(id, cutoff)) d.obstacles.push_back(std::move(o));
    } catch (const Error& e) {
      fail(p, e.what());
    }
    d.truncation = Truncation{id, cutoff};
  }
  try {
    validate(d);
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return d;
}

PolyCompact parse_compact(const Json& j, const std::string& path, int res) {
  object(j, path);
  if (j.contains("type")) {
    Shape s = shape(j, path, res);
    if (s.kind == Shape::Kind::Point) fail(path, "a compact cannot be a single point");
    return s.kind == Shape::Kind::Face ? PolyCompact::fat({s.face}) : PolyCompact::thin({s.curve});
  }
  only(j, {"faces", "pieces"}, path);
  PolyCompact k;
  for (const char* key : {"faces", "pieces"}) {
    if (!j.contains(key)) continue;
    const Json& list = j[key];
    const std::string p = at(path, key);
    if (!list.is_array()) fail(p, "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      Shape s = shape(list[i], idx(p, i), res);
      if (std::string(key) == "faces") {
        if (s.kind != Shape::Kind::Face) fail(idx(p, i), "expected a face (disc, annulus, polygon)");
        k.faces.push_back(s.face);
      } else {
        if (s.kind != Shape::Kind::Curve) fail(idx(p, i), "expected a curve");
        k.pieces.push_back(s.curve);
      }
    }
  }
  if (k.empty()) fail(path, "compact is empty");
  if (!k.faces.empty() && !k.pieces.empty()) fail(path, "a compact is either fat (faces) or thin (pieces)");
  try {
    validate(k);
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return k;
}

std::vector<Polyline> parse_curves(const Json& j, const std::string& path, int res) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of curves");
  std::vector<Polyline> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(curve_shape(j[i], idx(path, i), res));
  return out;
}

CertConfig parse_cert_config(const Json& j, const std::string& path) {
  only(j, {"n_max", "N_grid", "exhaustion_depth", "tolerance", "truncation_note_required", "injectivity_samples",
           "plan_delta"},
       path);
  CertConfig c;
  if (j.contains("n_max")) c.n_max = integer(j["n_max"], at(path, "n_max"));
  if (j.contains("N_grid")) {
    const Json& g = j["N_grid"];
    if (!g.is_array()) fail(at(path, "N_grid"), "expected a list of integers");
    c.N_grid.clear();
    for (std::size_t i = 0; i < g.size(); ++i) c.N_grid.push_back(integer(g[i], idx(at(path, "N_grid"), i)));
  }
  if (j.contains("exhaustion_depth")) c.exhaustion_depth = integer(j["exhaustion_depth"], at(path, "exhaustion_depth"));
  if (j.contains("tolerance")) c.tolerance = real(j["tolerance"], at(path, "tolerance"));
  if (j.contains("truncation_note_required"))
    c.truncation_note_required = boolean(j["truncation_note_required"], at(path, "truncation_note_required"));
  if (j.contains("injectivity_samples"))
    c.injectivity_samples = integer(j["injectivity_samples"], at(path, "injectivity_samples"));
  if (j.contains("plan_delta")) c.plan_delta = real(j["plan_delta"], at(path, "plan_delta"));
  try {
    c.validate();
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return c;
}

void parse_targets(const Json& j, const std::string& path, int res, ConstructConfig& cfg,
                   std::vector<Target>& targets) {
  only(j, {"eps0", "plan_delta", "max_poly_degree", "max_pole_degree", "targets"}, path);
  if (j.contains("eps0")) {
    cfg.eps0 = real(j["eps0"], at(path, "eps0"));
    if (!(cfg.eps0 > 0)) fail(at(path, "eps0"), "must be positive");
  }
  if (j.contains("plan_delta")) cfg.plan_delta = real(j["plan_delta"], at(path, "plan_delta"));
  if (j.contains("max_poly_degree")) cfg.max_poly_degree = integer(j["max_poly_degree"], at(path, "max_poly_degree"));
  if (j.contains("max_pole_degree")) cfg.max_pole_degree = integer(j["max_pole_degree"], at(path, "max_pole_degree"));
  const Json& list = need(j, "targets", path);
  const std::string p = at(path, "targets");
  if (!list.is_array()) fail(p, "expected a list");
  targets.clear();
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string q = idx(p, i);
    only(list[i], {"id", "compact", "g"}, q);
    Target t;
    t.id = text(need(list[i], "id", q), at(q, "id"));
    t.k = parse_compact(need(list[i], "compact", q), at(q, "compact"), res);
    const Expression e = expression(need(list[i], "g", q), at(q, "g"));
    t.g = [e](Complex z) { return e(z); };
    t.holomorphic = e.holomorphic();
    targets.push_back(std::move(t));
  }
}

namespace {

MapFamily parse_map(const Json& j, const std::string& path, const Scene& scene) {
  only(j, {"kind", "a", "b", "r", "k", "omega", "boundary_of", "first_index"}, path);
  MapFamily m;
  try {
    m.kind = map_kind_from_string(text(need(j, "kind", path), at(path, "kind")));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Schema) throw;
    fail(at(path, "kind"), e.what());
  }
  auto expr = [&](const char* key) { return expression(need(j, key, path), at(path, key)); };
  switch (m.kind) {
    case MapKind::Affine:
      m.a = expr("a");
      m.b = expr("b");
      break;
    case MapKind::PowerRadial:
      m.r = expr("r");
      if (need(j, "k", path).is_string()) {
        if (j["k"] != "n") fail(at(path, "k"), "expected an integer or \"n\"");
        m.k_is_n = true;
      } else {
        m.k = integer(j["k"], at(path, "k"));
      }
      break;
    case MapKind::JordanRadial:
      m.omega = expr("omega");
      m.r = expr("r");
      break;
    case MapKind::NormalOffset: {
      m.r = expr("r");
      const std::string name = text(need(j, "boundary_of", path), at(path, "boundary_of"));
      auto it = scene.domains.find(name);
      if (it == scene.domains.end()) fail(at(path, "boundary_of"), "unknown domain '" + name + "'");
      m.boundary = oriented_boundary(it->second);
      break;
    }
    case MapKind::TangentCircles: break;
    case MapKind::AnnulusScale:
      if (j.contains("r")) m.r = expr("r");
      else m = MapFamily::annulus_scale();
      break;
    default:
      m.r = expr("r");
      break;
  }
  if (j.contains("first_index")) m.first_index = integer(j["first_index"], at(path, "first_index"));
  return m;
}

}  // namespace

Scene parse_scene(const Json& j) {
  only(j, {"name", "curve_resolution", "domains", "curves", "compacts", "maps", "map", "g", "omega", "whole", "config",
           "construct", "flags"},
       "");
  Scene s;
  if (j.contains("name")) s.name = text(j["name"], "name");
  if (j.contains("curve_resolution")) {
    s.curve_resolution = integer(j["curve_resolution"], "curve_resolution");
    if (s.curve_resolution < kMinResolution) fail("curve_resolution", "too small");
  }
  const int res = s.curve_resolution;
  if (j.contains("domains")) {
    object(j["domains"], "domains");
    for (auto it = j["domains"].begin(); it != j["domains"].end(); ++it)
      s.domains[it.key()] = parse_domain(it.value(), at("domains", it.key()), res);
  }
  if (j.contains("curves")) {
    object(j["curves"], "curves");
    for (auto it = j["curves"].begin(); it != j["curves"].end(); ++it)
      s.curves[it.key()] = parse_curves(it.value(), at("curves", it.key()), res);
  }
  if (j.contains("compacts")) {
    object(j["compacts"], "compacts");
    for (auto it = j["compacts"].begin(); it != j["compacts"].end(); ++it)
      s.compacts[it.key()] = parse_compact(it.value(), at("compacts", it.key()), res);
  }
  const Json& maps = need(j, "maps", "");
  object(maps, "maps");
  if (maps.empty()) fail("maps", "no map family declared");
  std::string chosen = maps.begin().key();
  if (j.contains("map")) chosen = text(j["map"], "map");
  else if (maps.size() > 1) fail("map", "several map families declared; name one");
  if (!maps.contains(chosen)) fail("map", "unknown map family '" + chosen + "'");
  s.map = parse_map(maps[chosen], at("maps", chosen), s);

  s.g = text(need(j, "g", ""), "g");
  s.omega = text(need(j, "omega", ""), "omega");
  if (!s.domains.count(s.omega)) fail("omega", "'" + s.omega + "' is not a declared domain");
  if (!s.domains.count(s.g) && !s.curves.count(s.g)) fail("g", "'" + s.g + "' is neither a domain nor a curve set");
  if (j.contains("whole")) s.whole = boolean(j["whole"], "whole");
  if (j.contains("config")) s.config = parse_cert_config(j["config"], "config");
  s.construct.cert = s.config;
  if (j.contains("construct")) parse_targets(j["construct"], "construct", res, s.construct, s.targets);
  if (j.contains("flags")) {
    if (!j["flags"].is_array()) fail("flags", "expected a list of strings");
    for (std::size_t i = 0; i < j["flags"].size(); ++i) s.flags.push_back(text(j["flags"][i], idx("flags", i)));
  }
  return s;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Schema, path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Schema, path + ": " + e.what());
  }
}

Scene load_scene(const std::string& path) {
  Scene s = parse_scene(load_json(path));
  if (s.name.empty()) s.name = path;
  return s;
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Polyline& p) {
  Json pts = Json::array();
  for (const Complex& z : p.vertices) pts.push_back(to_json(z));
  return {{"closed", p.closed}, {"points", pts}};
}

Json to_json(const CertConfig& c) {
  return {{"n_max", c.n_max},
          {"N_grid", c.N_grid},
          {"exhaustion_depth", c.exhaustion_depth},
          {"tolerance", c.tolerance},
          {"truncation_note_required", c.truncation_note_required},
          {"injectivity_samples", c.injectivity_samples},
          {"plan_delta", c.plan_delta}};
}

namespace {

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const CertReport& r) {
  Json w = Json::array();
  for (const SampleRecord& s : r.witnesses)
    w.push_back({{"K", s.k_id},
                 {"L", s.l_id},
                 {"N", s.N},
                 {"n", optional_int(s.n)},
                 {"image_clause_n", optional_int(s.image_clause_n)},
                 {"checks", s.checks},
                 {"error", s.error}});
  Json out = {{"verdict", to_string(r.verdict)},
              {"condition", r.condition},
              {"anchor", r.anchor},
              {"probabilistic", r.probabilistic},
              {"topology",
               {{"holes_of_g", r.topology.holes_of_g},
                {"holes_of_omega", r.topology.holes_of_omega},
                {"omega_truncated", r.topology.omega_truncated},
                {"truncation_cutoff", r.topology.truncation_cutoff}}},
              {"witnesses", w},
              {"notes", r.notes}};
  out["obstruction"] = r.obstruction ? Json{{"n1", r.obstruction->n1}, {"n2", r.obstruction->n2}, {"n3", r.obstruction->n3}}
                                     : Json(nullptr);
  return out;
}

Json to_json(const RationalFunction& f) {
  Json terms = Json::array();
  for (const Expansion& e : f.terms()) {
    const int d = e.degree();
    Json h = Json::array();
    // Upper Hessenberg entries column by column.
    for (int k = 0; k < d; ++k)
      for (int j = 0; j <= k + 1; ++j) h.push_back(to_json(e.hessenberg(j, k)));
    Json c = Json::array();
    for (int k = 0; k <= d; ++k) c.push_back(to_json(e.coeffs(k)));
    terms.push_back({{"variable", e.variable == Expansion::Variable::Affine ? "affine" : "inverse"},
                     {"centre", to_json(e.centre)},
                     {"scale", e.scale},
                     {"degree", d},
                     {"hessenberg", h},
                     {"coeffs", c}});
  }
  Json poles = Json::array();
  for (const Complex& p : f.poles()) poles.push_back(to_json(p));
  return {{"polynomial_degree", f.polynomial_degree()}, {"poles", poles}, {"terms", terms}};
}

RationalFunction rational_from_json(const Json& j) {
  const std::string path = "f";
  std::vector<Expansion> terms;
  const Json& list = need(j, "terms", path);
  if (!list.is_array()) fail(at(path, "terms"), "expected a list");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = idx(at(path, "terms"), i);
    const Json& t = list[i];
    Expansion e;
    const std::string v = text(need(t, "variable", p), at(p, "variable"));
    if (v != "affine" && v != "inverse") fail(at(p, "variable"), "expected affine or inverse");
    e.variable = v == "affine" ? Expansion::Variable::Affine : Expansion::Variable::Inverse;
    e.centre = point(need(t, "centre", p), at(p, "centre"));
    e.scale = real(need(t, "scale", p), at(p, "scale"));
    const int d = integer(need(t, "degree", p), at(p, "degree"));
    const Json& h = need(t, "hessenberg", p);
    const Json& c = need(t, "coeffs", p);
    if (d < 0 || !c.is_array() || static_cast<int>(c.size()) != d + 1) fail(at(p, "coeffs"), "expected degree+1 values");
    if (!h.is_array() || static_cast<int>(h.size()) != d * (d + 3) / 2) fail(at(p, "hessenberg"), "wrong entry count");
    e.hessenberg = Eigen::MatrixXcd::Zero(d + 1, d);
    std::size_t n = 0;
    for (int k = 0; k < d; ++k)
      for (int r = 0; r <= k + 1; ++r, ++n) e.hessenberg(r, k) = point(h[n], idx(at(p, "hessenberg"), n));
    e.coeffs.resize(d + 1);
    for (int k = 0; k <= d; ++k) e.coeffs(k) = point(c[k], idx(at(p, "coeffs"), k));
    terms.push_back(std::move(e));
  }
  return RationalFunction(std::move(terms));
}

Json to_json(const UniversalCertificate& c) {
  Json steps = Json::array();
  for (const StepRecord& s : c.steps)
    steps.push_back({{"target", s.target_id},
                     {"n", s.n},
                     {"eps_target", s.eps_target},
                     {"eps_budget", s.eps_budget},
                     {"achieved", s.achieved},
                     {"drift", s.drift},
                     {"poly_degree", s.poly_degree},
                     {"pole_degree", s.pole_degree},
                     {"plan_l", s.plan_l}});
  Json finals = Json::array();
  for (const FinalError& f : c.finals)
    finals.push_back({{"target", f.target_id}, {"n", f.n}, {"error", f.error}, {"bound", f.bound}});
  return {{"status", to_string(c.status)},
          {"reason", c.reason},
          {"steps", steps},
          {"finals", finals},
          {"total_drift", c.total_drift},
          {"budget", c.budget},
          {"drift_bound_holds", c.drift_bound_holds()},
          {"notes", c.notes},
          {"f", to_json(c.f)}};
}

}  // namespace holo
