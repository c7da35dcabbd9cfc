#pragma once

#include <Eigen/Dense>
#include <vector>

#include "holo/geometry.hpp"

namespace holo {

// One expansion sum_k c_k W_k(x) in an Arnoldi (Hessenberg) basis, where
// x = (z - centre)/scale (Affine) or x = scale/(z - centre) (Inverse).
// A monomial basis is the special case with unit subdiagonal.
struct Expansion {
  enum class Variable { Affine, Inverse };
  Variable variable = Variable::Affine;
  Complex centre;
  double scale = 1;
  Eigen::MatrixXcd hessenberg;  // (d+1) x d
  Eigen::VectorXcd coeffs;      // d+1

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Complex variable_at(Complex z) const;
  // d^m/dx^m of sum_k c_k W_k at x.
  Complex eval_x(Complex x, int m = 0) const;
  // Basis values W_0..W_d at x.
  Eigen::RowVectorXcd basis_row(Complex x) const;

  static Expansion monomial(Variable v, Complex centre, double scale, Eigen::VectorXcd coeffs);
};

class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(std::vector<Expansion> terms, int derivative_order = 0);

  // Polynomial coefficients (ascending, in z) plus principal parts at poles:
  // pole_coeffs[i][j] multiplies (z - poles[i])^{-(j+1)}.
  static RationalFunction from_partial_fractions(const std::vector<Complex>& poly,
                                                 const std::vector<Complex>& poles,
                                                 const std::vector<std::vector<Complex>>& pole_coeffs);
  static RationalFunction constant(Complex c);

  Complex operator()(Complex z) const { return eval(z); }
  Complex eval(Complex z) const;
  RationalFunction derivative() const;
  RationalFunction operator+(const RationalFunction& other) const;

  // Distinct pole locations.
  std::vector<Complex> poles() const;
  const std::vector<Expansion>& terms() const { return terms_; }
  int derivative_order() const { return derivative_order_; }
  bool is_zero() const { return terms_.empty(); }
  int polynomial_degree() const;

  static constexpr double kPoleTol = 1e-10;

 private:
  std::vector<Expansion> terms_;
  int derivative_order_ = 0;
};

// Arnoldi orthogonalisation of the Krylov basis of diag(x) on the sample
// points; returns Q (M x (d+1), columns of norm sqrt(M)) and fills H.
Eigen::MatrixXcd arnoldi(const Eigen::VectorXcd& x, int degree, Eigen::MatrixXcd& hessenberg);

}  // namespace holo
