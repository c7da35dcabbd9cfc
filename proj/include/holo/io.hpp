#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "holo/scene.hpp"

namespace holo {

using Json = nlohmann::json;

// Scene files. Schema errors name the offending field, e.g.
// "domains.omega.obstacles[1].radius: expected a number".
Scene parse_scene(const Json& j);
Scene load_scene(const std::string& path);
Json load_json(const std::string& path);

Domain parse_domain(const Json& j, const std::string& path, int resolution);
PolyCompact parse_compact(const Json& j, const std::string& path, int resolution);
std::vector<Polyline> parse_curves(const Json& j, const std::string& path, int resolution);
CertConfig parse_cert_config(const Json& j, const std::string& path);
// {"eps0", "plan_delta", "targets": [{"id", "compact", "g"}]}; merged into cfg and targets.
void parse_targets(const Json& j, const std::string& path, int resolution, ConstructConfig& cfg,
                   std::vector<Target>& targets);

Json to_json(Complex z);
Json to_json(const Polyline& p);
Json to_json(const CertConfig& c);
Json to_json(const CertReport& r);
Json to_json(const RationalFunction& f);
Json to_json(const UniversalCertificate& c);
RationalFunction rational_from_json(const Json& j);

}  // namespace holo
