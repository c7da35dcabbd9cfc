#pragma once

#include <memory>
#include <string>

#include "holo/geometry.hpp"

namespace holo {

// Arithmetic expression in the index n and the point z, e.g. "1 - 2^(-n)",
// "3*2^(-2n-2)", "conj(z)/0.81". Constants: i, pi, e. Functions: conj, re,
// im, abs, arg, exp, log, sqrt, sin, cos. A number directly followed by a
// name or parenthesis multiplies it ("2n").
class Expression {
 public:
  Expression() = default;
  explicit Expression(const std::string& text);
  static Expression constant(Complex c);

  Complex operator()(Complex z, double n = 0) const;
  Complex at_n(double n) const { return (*this)(0, n); }
  const std::string& text() const { return text_; }
  bool empty() const { return !root_; }
  bool uses_z() const;
  // False when conj, re, im, abs or arg is applied to something depending on z.
  bool holomorphic() const;

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace holo
