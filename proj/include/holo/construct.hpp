#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "holo/certify.hpp"

namespace holo {

struct Target {
  std::string id;
  PolyCompact k;
  std::function<Complex(Complex)> g;
  bool holomorphic = true;
};

struct ConstructConfig {
  double eps0 = 0.05;  // eps_i = eps0 * 2^-i
  CertConfig cert;
  FitConfig fit;
  int max_poly_degree = 256;
  int max_pole_degree = 64;
  int check_samples = 4096;  // dense net for measured errors
  int step_attempts = 4;     // witnesses tried per target before aborting
  double plan_delta = 0;     // suff-plus arc bound; 0 derives it from the target's modulus of continuity
};

struct StepResult {
  RationalFunction f_next;
  int n = 0;
  double achieved = 0;  // sup over K of |f_next∘phi_n - g|
  double drift = 0;     // sup over L of |f_next - f_cur|
  int poly_degree = 0, pole_degree = 0;
  std::vector<Complex> pole_sites;
};

// Values of the target on the image, as a function of the preimage point.
using PullbackTarget = std::function<Complex(Complex)>;

// One Birkhoff correction: fits kappa - f_cur on image(K) ∪ L (kappa = f_cur on L,
// g∘phi_n^{-1} on the image) with degree escalation until both errors are <= eps.
StepResult birkhoff_step(const RationalFunction& f_cur, const PolyCompact& l, const Target& target,
                         const MapFamily& phi, int n, const Domain& omega, double eps, const ConstructConfig& cfg);

struct StepRecord {
  std::string target_id;
  int n = 0;
  double eps_target = 0;
  double eps_budget = 0;
  double achieved = 0;
  double drift = 0;
  int poly_degree = 0, pole_degree = 0;
  int plan_l = -1;  // suff-plus plan size, -1 when the map was injective on K
};

struct FinalError {
  std::string target_id;
  int n = 0;
  double error = 0;
  double bound = 0;  // eps_i + sum_{j>i} eps_j
};

struct UniversalCertificate {
  enum class Status { Complete, Aborted, Refused };
  Status status = Status::Complete;
  RationalFunction f;
  std::vector<StepRecord> steps;
  std::vector<FinalError> finals;
  double total_drift = 0;
  double budget = 0;  // sum of eps_budget
  std::string reason;
  std::vector<std::string> notes;

  bool drift_bound_holds() const;
};
const char* to_string(UniversalCertificate::Status s);

UniversalCertificate build_universal(const MapFamily& phi, const Domain& g, const Domain& omega,
                                     const std::vector<Target>& targets, const ConstructConfig& cfg);

// Thin G: targets are continuous on arcs or curves of G. Non-injective maps on
// unit-circle arcs go through a suff-plus plan and a corridor target.
UniversalCertificate build_thin_universal(const MapFamily& phi, const std::vector<Polyline>& g, const Domain& omega,
                                          const std::vector<Target>& targets, const ConstructConfig& cfg);

struct CorridorTarget {
  PolyCompact fit_set;                      // hulls ∪ image(U) ∪ L
  std::function<Complex(double)> on_k;      // h~∘phi_n as a function of the angle on K
  std::vector<double> eta;                  // corridor widths
  double max_jump = 0;                      // adjacent-sample jump of on_k
  double deviation = 0;                     // sup over K of |h~∘phi_n - h|
  bool connected_complement = false;
  Sampler sampler;                          // samples of h~ - f_cur on the fit set, 0 on L
};

// delta: the uniform-continuity radius the plan was built for.
CorridorTarget corridor_target(const Plan& plan, const MapFamily& phi, const std::function<Complex(Complex)>& h,
                               const RationalFunction& f_cur, const PolyCompact& l, double delta);

// Largest delta in {d0, d0/2, ...} with |h(a) - h(b)| <= bound whenever |a - b| <= 2 delta on the arc.
double continuity_radius(const std::function<Complex(Complex)>& h, const Arc& k, double bound, double d0 = 0.5);

}  // namespace holo
