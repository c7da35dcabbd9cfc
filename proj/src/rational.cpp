#include "holo/rational.hpp"

#include <algorithm>
#include <cmath>

namespace holo {

namespace {

// Unsigned Lah numbers L(m, k).
double lah(int m, int k) {
  if (k < 1 || k > m) return 0;
  // L(m,k) = C(m-1,k-1) m!/k!
  double c = 1;
  for (int i = 1; i <= k - 1; ++i) c = c * (m - k + i) / i;
  double f = 1;
  for (int i = k + 1; i <= m; ++i) f *= i;
  return c * f;
}

}  // namespace

Complex Expansion::variable_at(Complex z) const {
  if (variable == Variable::Affine) return (z - centre) / scale;
  return scale / (z - centre);
}

Expansion Expansion::monomial(Variable v, Complex centre, double scale, Eigen::VectorXcd coeffs) {
  Expansion e;
  e.variable = v;
  e.centre = centre;
  e.scale = scale;
  const int d = static_cast<int>(coeffs.size()) - 1;
  e.hessenberg = Eigen::MatrixXcd::Zero(d + 1, std::max(d, 0));
  for (int k = 0; k < d; ++k) e.hessenberg(k + 1, k) = 1;
  e.coeffs = std::move(coeffs);
  return e;
}

Eigen::RowVectorXcd Expansion::basis_row(Complex x) const {
  const int d = degree();
  Eigen::RowVectorXcd w(d + 1);
  w(0) = 1;
  for (int k = 0; k < d; ++k) {
    Complex v = x * w(k);
    for (int j = 0; j <= k; ++j) v -= hessenberg(j, k) * w(j);
    w(k + 1) = v / hessenberg(k + 1, k);
  }
  return w;
}

Complex Expansion::eval_x(Complex x, int m) const {
  const int d = degree();
  if (d < 0) return 0;
  // Row r holds the r-th x-derivative of the basis.
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(m + 1, d + 1);
  w(0, 0) = 1;
  for (int k = 0; k < d; ++k) {
    for (int r = 0; r <= m; ++r) {
      Complex v = x * w(r, k);
      if (r > 0) v += static_cast<double>(r) * w(r - 1, k);
      for (int j = 0; j <= k; ++j) v -= hessenberg(j, k) * w(r, j);
      w(r, k + 1) = v / hessenberg(k + 1, k);
    }
  }
  return (w.row(m) * coeffs)(0);
}

RationalFunction::RationalFunction(std::vector<Expansion> terms, int derivative_order)
    : terms_(std::move(terms)), derivative_order_(derivative_order) {}

RationalFunction RationalFunction::constant(Complex c) {
  Eigen::VectorXcd v(1);
  v(0) = c;
  return RationalFunction({Expansion::monomial(Expansion::Variable::Affine, 0, 1, v)});
}

RationalFunction RationalFunction::from_partial_fractions(
    const std::vector<Complex>& poly, const std::vector<Complex>& poles,
    const std::vector<std::vector<Complex>>& pole_coeffs) {
  if (poles.size() != pole_coeffs.size())
    throw Error(ErrorKind::Validation, "pole list and principal parts differ in length");
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = i + 1; j < poles.size(); ++j)
      if (std::abs(poles[i] - poles[j]) <= kPoleTol)
        throw Error(ErrorKind::Validation, "coincident poles", poles[i]);
  std::vector<Expansion> terms;
  if (!poly.empty()) {
    Eigen::VectorXcd c = Eigen::Map<const Eigen::VectorXcd>(poly.data(), poly.size());
    terms.push_back(Expansion::monomial(Expansion::Variable::Affine, 0, 1, c));
  }
  for (std::size_t i = 0; i < poles.size(); ++i) {
    Eigen::VectorXcd c(pole_coeffs[i].size() + 1);
    c(0) = 0;
    for (std::size_t j = 0; j < pole_coeffs[i].size(); ++j) c(j + 1) = pole_coeffs[i][j];
    terms.push_back(Expansion::monomial(Expansion::Variable::Inverse, poles[i], 1, c));
  }
  return RationalFunction(std::move(terms));
}

Complex RationalFunction::eval(Complex z) const {
  const int m = derivative_order_;
  Complex sum = 0;
  for (const Expansion& e : terms_) {
    if (e.variable == Expansion::Variable::Affine) {
      sum += e.eval_x(e.variable_at(z), m) / std::pow(e.scale, m);
      continue;
    }
    if (std::abs(z - e.centre) <= kPoleTol * std::max(1.0, e.scale))
      throw Error(ErrorKind::PoleProximity, "evaluation too close to a pole", z);
    const Complex v = e.variable_at(z);
    if (m == 0) {
      sum += e.eval_x(v);
      continue;
    }
    // d^m/dz^m F(s/(z-c)) = (-1)^m sum_k L(m,k) v^{m+k} s^{-m} F^{(k)}(v).
    Complex acc = 0;
    for (int k = 1; k <= m; ++k) acc += lah(m, k) * std::pow(v, m + k) * e.eval_x(v, k);
    sum += (m % 2 ? -1.0 : 1.0) * acc / std::pow(e.scale, m);
  }
  return sum;
}

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(terms_, derivative_order_ + 1);
}

RationalFunction RationalFunction::operator+(const RationalFunction& other) const {
  if (derivative_order_ != other.derivative_order_)
    throw Error(ErrorKind::Internal, "adding rational functions with different derivative orders");
  std::vector<Expansion> t = terms_;
  t.insert(t.end(), other.terms_.begin(), other.terms_.end());
  return RationalFunction(std::move(t), derivative_order_);
}

std::vector<Complex> RationalFunction::poles() const {
  std::vector<Complex> out;
  for (const Expansion& e : terms_) {
    if (e.variable != Expansion::Variable::Inverse) continue;
    if (e.coeffs.tail(e.coeffs.size() - 1).cwiseAbs().maxCoeff() == 0) continue;
    bool seen = false;
    for (Complex p : out) seen = seen || std::abs(p - e.centre) <= kPoleTol;
    if (!seen) out.push_back(e.centre);
  }
  return out;
}

int RationalFunction::polynomial_degree() const {
  int d = -1;
  for (const Expansion& e : terms_)
    if (e.variable == Expansion::Variable::Affine) d = std::max(d, e.degree());
  return d;
}

Eigen::MatrixXcd arnoldi(const Eigen::VectorXcd& x, int degree, Eigen::MatrixXcd& hessenberg) {
  const Eigen::Index m = x.size();
  const double sm = std::sqrt(static_cast<double>(m));
  Eigen::MatrixXcd q(m, degree + 1);
  hessenberg = Eigen::MatrixXcd::Zero(degree + 1, degree);
  q.col(0).setOnes();
  for (int k = 0; k < degree; ++k) {
    Eigen::VectorXcd v = x.cwiseProduct(q.col(k));
    // Two passes of classical Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j <= k; ++j) {
        const Complex h = q.col(j).dot(v) / static_cast<double>(m);
        hessenberg(j, k) += h;
        v -= h * q.col(j);
      }
    }
    const double nrm = v.norm() / sm;
    if (!(nrm > 0))
      throw Error(ErrorKind::Conditioning, "Arnoldi breakdown: too few distinct sample points");
    hessenberg(k + 1, k) = nrm;
    q.col(k + 1) = v / nrm;
  }
  return q;
}

}  // namespace holo
