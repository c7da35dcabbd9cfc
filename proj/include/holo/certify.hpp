#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holo/maps.hpp"

namespace holo {

enum class Verdict { Pass, Fail, StructuralNo, Inconclusive };
const char* to_string(Verdict v);

struct CertConfig {
  int n_max = 16;
  std::vector<int> N_grid{0, 2, 5};
  int exhaustion_depth = 3;
  double tolerance = 1e-9;
  bool truncation_note_required = true;
  int injectivity_samples = 1024;
  double plan_delta = 0.3;  // arc-length bound for suff-plus plans inside certify_thin

  void validate() const;
};

// Witness(n) when `n` is set, NotFound otherwise. NotFound only means the
// search up to n_max was exhausted.
struct Search {
  std::optional<int> n;
  std::vector<std::string> trace;
  bool probabilistic = false;  // some injectivity verdict was sampled

  explicit operator bool() const { return n.has_value(); }
};

Search condition_main(const MapFamily& phi, const Domain& g, const Domain& omega, const PolyCompact& k,
                      const PolyCompact& l, int N, const CertConfig& cfg);
Search condition_simply_connected(const MapFamily& phi, const Domain& g, const Domain& omega, const PolyCompact& k,
                                  const PolyCompact& l, int N, const CertConfig& cfg);
Search condition_two_holes(const MapFamily& phi, const Domain& g, const Domain& omega, const PolyCompact& k,
                           const PolyCompact& l, int N, const CertConfig& cfg);

// Injective on K, image disjoint from L, image ∪ L omega-convex; no membership
// preconditions on K and L.
Search induction_condition(const MapFamily& phi, const Domain& omega, const PolyCompact& k, const PolyCompact& l, int N,
                           const CertConfig& cfg);

struct Structural {
  bool no = false;
  std::string anchor;
  std::string caveat;
};
Structural structural_negative(const Domain& g, const Domain& omega);

struct Collision {
  int n = 0;
  Complex a, b;  // distinct points with equal images
};

struct Necessity {
  std::vector<int> witnesses;
  int violated_clause = 0;  // 0: none, 1: image(K) meets L, 2: image(I1) meets image(I2)
  std::vector<Collision> collisions;  // one per n failing clause 2, when a pair was located
};
Necessity necessity_probe_thin(const MapFamily& phi, const PolyCompact& k, const Polyline& i1, const Polyline& i2,
                               const PolyCompact& l, const CertConfig& cfg);

// Closed arc {e^{it} : alpha <= t <= beta} of the unit circle, beta - alpha < 2 pi.
struct Arc {
  double alpha = 0, beta = 0;

  double length() const { return beta - alpha; }
  Polyline polyline(int resolution = kCurveResolution) const;
  Complex at(double t) const { return std::polar(1.0, t); }
};

struct Plan {
  int n = 0;
  Arc k;
  std::vector<double> deltas;      // delta_1 <= delta_2 < delta_3 <= ... angles inside k
  std::vector<PolyCompact> hulls;  // filled hull of phi_n(I_m)
  std::vector<Arc> u;              // closures of the components of K minus the I_m

  int l() const { return static_cast<int>(deltas.size()) / 2; }
  Arc i(int m) const { return {deltas[2 * m], deltas[2 * m + 1]}; }
};

std::optional<Plan> suffplus_search(const MapFamily& phi, const Arc& k, const PolyCompact& l, double delta,
                                    const CertConfig& cfg, std::vector<std::string>* trace = nullptr);

struct Obstruction {
  int n1 = 0, n2 = 0, n3 = 0;  // outermost curve first
};

// Nested image curves Gamma_1 ⊃ Gamma_2 ⊃ Gamma_3 with the region between
// Gamma_1 and Gamma_3 inside omega. For Fat G the outer boundary of each image is used.
std::optional<Obstruction> impossibility_detector(const MapFamily& phi, const PolyCompact& g, const Domain& omega,
                                                  const CertConfig& cfg);

struct SampleRecord {
  int k_id = 0, l_id = 0, N = 0;
  std::optional<int> n;              // witness of the applied condition
  std::optional<int> image_clause_n;  // first n passing the per-image clauses
  std::vector<std::string> checks;
  std::string error;
};

struct TopologySummary {
  int holes_of_g = 0;
  int holes_of_omega = 0;
  bool omega_truncated = false;
  int truncation_cutoff = 0;
};

struct CertReport {
  Verdict verdict = Verdict::Inconclusive;
  std::string condition;
  std::string anchor;
  std::vector<SampleRecord> witnesses;
  TopologySummary topology;
  std::optional<Obstruction> obstruction;
  std::vector<std::string> notes;
  bool probabilistic = false;
};

CertReport certify(const MapFamily& phi, const Domain& g, const Domain& omega, const CertConfig& cfg);
// G a union of disjoint Jordan curves. With `whole` the family is {G};
// otherwise it is the proper compacts of G.
CertReport certify_thin(const MapFamily& phi, const std::vector<Polyline>& g, const Domain& omega, bool whole,
                        const CertConfig& cfg);

}  // namespace holo
