#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "holo/crosscheck.hpp"
#include "holo/run.hpp"

using namespace holo;

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Validation, "cannot write '" + path + "'");
  out << text;
}

int emit(RunResult r, const std::string& out, const std::string& svg, std::uint64_t seed) {
  r.document["seed"] = seed;
  if (out.empty()) std::cout << r.document.dump(2) << "\n";
  else write_file(out, r.document.dump(2) + "\n");
  if (!svg.empty()) write_file(svg, render_svg(r.document));
  std::cerr << r.summary << "\n";
  return r.exit_code;
}

// Seeded random Fat compacts and exhaustion compacts of omega against the raster oracle.
int oracle(const Scene& s, std::uint64_t seed, int samples, int resolution, const std::string& out) {
  const Domain& omega = s.omega_domain();
  std::mt19937_64 rng(seed);
  Json rows = Json::array();
  int agree = 0, total = 0;
  auto record = [&](const std::string& what, const PolyCompact& k) {
    const CrossCheck c = cross_check(k, omega, resolution);
    rows.push_back({{"compact", what},
                    {"holes", {c.holes_library, c.holes_oracle}},
                    {"omega_convex", {c.convex_library, c.convex_oracle}},
                    {"hull_idempotent", c.hull_idempotent},
                    {"agree", c.agree()}});
    agree += c.agree();
    ++total;
  };
  const auto ex = exhaustion(omega, 3);
  for (std::size_t i = 0; i < ex.size(); ++i) record("exhaustion[" + std::to_string(i) + "]", ex[i]);
  for (int i = 0; i < samples; ++i) record("random[" + std::to_string(i) + "]", random_fat_compact(rng, omega));
  for (const auto& [name, k] : s.compacts)
    if (k.kind() == CompactKind::Fat) record(name, k);
  const Json doc = {{"scene", s.name}, {"seed", seed}, {"resolution", resolution}, {"checks", rows},
                    {"agree", agree}, {"total", total}};
  if (out.empty()) std::cout << doc.dump(2) << "\n";
  else write_file(out, doc.dump(2) + "\n");
  std::cerr << s.name << ": oracle agreement " << agree << "/" << total << "\n";
  return agree == total ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holo: universal sequences of composition operators between planar domains"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "seed for every sampled quantity")->capture_default_str();

  std::string scene_path, out, svg, targets_path, name, doc_path;
  int n_max = 0, depth = 0, samples = 50, resolution = 1024;
  double eps = 0;
  bool emit_scene = false;

  auto* certify_cmd = app.add_subcommand("certify", "check the universality conditions on a scene");
  certify_cmd->add_option("scene", scene_path, "scene file")->required();
  certify_cmd->add_option("--n-max", n_max, "largest map index searched");
  certify_cmd->add_option("--depth", depth, "exhaustion compacts sampled per domain");
  certify_cmd->add_option("--out", out, "report file (stdout when omitted)");
  certify_cmd->add_option("--svg", svg, "also write a plot");

  auto* construct_cmd = app.add_subcommand("construct", "build a finite universal approximant");
  construct_cmd->add_option("scene", scene_path, "scene file")->required();
  construct_cmd->add_option("--targets", targets_path, "file with a construct block (defaults to the scene's own)");
  construct_cmd->add_option("--eps", eps, "eps0 of the schedule eps0 * 2^-i");
  construct_cmd->add_option("--out", out, "certificate file (stdout when omitted)");
  construct_cmd->add_option("--svg", svg, "also write a plot");

  auto* demo_cmd = app.add_subcommand("demo", "run a built-in scene");
  demo_cmd->add_option("name", name, "demo name")->required()->check(CLI::IsMember(demo_names()));
  demo_cmd->add_option("--out", out, "report or certificate file (stdout when omitted)");
  demo_cmd->add_option("--svg", svg, "plot file");
  demo_cmd->add_flag("--emit-scene", emit_scene, "print the scene file instead of running it");

  auto* plot_cmd = app.add_subcommand("plot", "render a report or certificate");
  plot_cmd->add_option("document", doc_path, "report or certificate file")->required();
  plot_cmd->add_option("--svg", svg, "plot file")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "cross-check topology predicates against the raster oracle");
  oracle_cmd->add_option("scene", scene_path, "scene file")->required();
  oracle_cmd->add_option("--samples", samples, "random compacts")->capture_default_str();
  oracle_cmd->add_option("--resolution", resolution, "raster side")->capture_default_str();
  oracle_cmd->add_option("--out", out, "result file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*certify_cmd) {
      Scene s = load_scene(scene_path);
      if (n_max > 0) s.config.n_max = n_max;
      if (depth > 0) s.config.exhaustion_depth = depth;
      s.config.validate();
      return emit(run_certify(s), out, svg, seed);
    }
    if (*construct_cmd) {
      Scene s = load_scene(scene_path);
      if (!targets_path.empty()) {
        Json j = load_json(targets_path);
        if (j.contains("construct")) j = j["construct"];
        parse_targets(j, targets_path, s.curve_resolution, s.construct, s.targets);
      }
      if (eps > 0) s.construct.eps0 = eps;
      if (s.targets.empty()) throw Error(ErrorKind::Schema, "construct.targets: no targets declared");
      return emit(run_construct(s), out, svg, seed);
    }
    if (*demo_cmd) {
      if (emit_scene) {
        const std::string text = demo_scene(name).dump(2) + "\n";
        if (out.empty()) std::cout << text;
        else write_file(out, text);
        return 0;
      }
      return emit(run_demo(name), out, svg, seed);
    }
    if (*plot_cmd) {
      write_file(svg, render_svg(load_json(doc_path)));
      return 0;
    }
    if (*oracle_cmd) return oracle(load_scene(scene_path), seed, samples, resolution, out);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
