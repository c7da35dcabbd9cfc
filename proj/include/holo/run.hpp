#pragma once

#include <string>
#include <vector>

#include "holo/io.hpp"

namespace holo {

struct RunResult {
  Json document;
  int exit_code = 0;  // 0 success, 2 Fail/StructuralNo/Obstruction, 3 Inconclusive, 1 error
  std::string summary;
};

int exit_code(Verdict v);

RunResult run_certify(const Scene& s);
// Uses the scene's construct block; thin G goes through build_thin_universal.
RunResult run_construct(const Scene& s);

// SVG 1.1: outlines coloured by role and n, a log|f| underlay and per-target
// error curves when the document is a certificate.
std::string render_svg(const Json& document);

const std::vector<std::string>& demo_names();
Json demo_scene(const std::string& name);
// Certify, or construct when the demo declares targets.
RunResult run_demo(const std::string& name);

}  // namespace holo
