#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "holo/rational.hpp"
#include "holo/topology.hpp"

namespace holo {

struct Winding {
  int value = 0;
  double raw = 0;
  double residual = 0;
  double min_modulus = 0;
};

namespace detail {

// Increment of arg f between parameters, subdividing while a step turns by more than pi/8.
template <class F>
double arg_increment(const F& f, Complex a, Complex b, Complex fa, Complex fb, int depth, double& min_mod,
                     double tol) {
  const double d = std::arg(fb / fa);
  if (std::abs(d) <= kPi / 8 || depth >= 40) return d;
  const Complex m = 0.5 * (a + b);
  const Complex fm = f(m);
  min_mod = std::min(min_mod, std::abs(fm));
  if (std::abs(fm) <= tol) throw Error(ErrorKind::Nonvanishing, "function vanishes on the contour", m);
  return arg_increment(f, a, m, fa, fm, depth + 1, min_mod, tol) +
         arg_increment(f, m, b, fm, fb, depth + 1, min_mod, tol);
}

}  // namespace detail

// Winding number of f along a closed polyline by adaptive argument accumulation.
template <class F>
Winding winding_number(const F& f, const Polyline& gamma, double tol = 1e-12) {
  if (!gamma.closed) throw Error(ErrorKind::Validation, "winding number needs a closed curve");
  Winding w;
  std::vector<Complex> vals(gamma.vertices.size());
  w.min_modulus = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] = f(gamma.vertices[i]);
    w.min_modulus = std::min(w.min_modulus, std::abs(vals[i]));
    if (std::abs(vals[i]) <= tol)
      throw Error(ErrorKind::Nonvanishing, "function vanishes on the contour", gamma.vertices[i]);
  }
  double total = 0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const std::size_t j = (i + 1) % vals.size();
    total += detail::arg_increment(f, gamma.vertices[i], gamma.vertices[j], vals[i], vals[j], 0, w.min_modulus,
                                   tol);
  }
  w.raw = total / (2 * kPi);
  w.value = static_cast<int>(std::lround(w.raw));
  w.residual = std::abs(w.raw - w.value);
  if (w.residual >= 0.01) throw Error(ErrorKind::Indeterminate, "winding number residual too large");
  return w;
}

// m (z-b)^{p+1} / prod (z - lambda_i), p = lambdas.size().
RationalFunction build_g_m(int m, Complex b, const std::vector<Complex>& lambdas);

struct Sample {
  Complex z;
  Complex value;
};

// Produces `count` samples; `phase` in [0,1) shifts the net so that
// different phases give disjoint nets.
using Sampler = std::function<std::vector<Sample>(int count, double phase)>;

// Points spread by arc length over the curves of K (boundaries for Fat K).
std::vector<Complex> sample_compact(const PolyCompact& k, int count, double phase);
Sampler sampler_from_function(const PolyCompact& k, std::function<Complex(Complex)> fn);

struct FitConfig {
  int poly_degree = 16;
  int pole_degree = 8;
  int boundary_samples = 0;    // 0: eight times the basis size
  int validation_samples = 0;  // 0: four times boundary_samples
  bool column_scaling = true;
  double regularization = 1e-12;
};

struct FitResult {
  RationalFunction f;
  double sup_error = 0;
  double fit_residual = 0;
  double condition = 0;
  std::vector<Complex> pole_sites;
};

// Pole sites admissible for fitting on A: one per obstacle of omega lying in a
// hole of A, plus one beyond the outer boundary when omega is bounded.
std::vector<Complex> pole_sites(const PolyCompact& a, const Domain& omega);

FitResult runge_fit(const PolyCompact& a, const Domain& omega, const Sampler& target, const FitConfig& cfg);
// Same, with explicit pole sites and without the convexity precondition.
FitResult fit_with_sites(const std::vector<Complex>& sites, const Sampler& target, const FitConfig& cfg);

struct Injectivity {
  bool injective = true;
  bool exact = false;  // closed-form verdict rather than sampled
  std::optional<std::pair<Complex, Complex>> witness;
};

// Sampled collision search over the curves of K, refined near near-collisions.
// An Injective verdict is probabilistic.
Injectivity injectivity_probe(const std::function<Complex(Complex)>& phi, const PolyCompact& k, int samples = 1024);

}  // namespace holo
