#include "holo/expression.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

namespace holo {

struct Expression::Node {
  enum class Op { Number, VarN, VarZ, Add, Sub, Mul, Div, Pow, Neg, Call };
  Op op = Op::Number;
  Complex value;
  std::string fn;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

const char* const kFunctions[] = {"conj", "re", "im", "abs", "arg", "exp", "log", "sqrt", "sin", "cos"};

NodePtr make(Op op, std::vector<NodePtr> args = {}, Complex value = 0, std::string fn = {}) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->args = std::move(args);
  n->value = value;
  n->fn = std::move(fn);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Schema, "expression '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool starts_operand() {
    skip();
    return pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(');
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) lhs = make(Op::Add, {lhs, term()});
      else if (eat('-')) lhs = make(Op::Sub, {lhs, term()});
      else return lhs;
    }
  }
  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*')) lhs = make(Op::Mul, {lhs, unary()});
      else if (eat('/')) lhs = make(Op::Div, {lhs, unary()});
      else return lhs;
    }
  }
  NodePtr unary() {
    if (eat('-')) return make(Op::Neg, {unary()});
    if (eat('+')) return unary();
    return power();
  }
  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make(Op::Pow, {base, unary()});
    return base;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      const double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      NodePtr num = make(Op::Number, {}, v);
      // Implicit product such as 2n or 3(z+1); binds like '*'.
      if (starts_operand()) return make(Op::Mul, {num, power()});
      return num;
    }
    if (eat('(')) {
      NodePtr e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "n") return make(Op::VarN);
      if (name == "z") return make(Op::VarZ);
      if (name == "i") return make(Op::Number, {}, Complex(0, 1));
      if (name == "pi") return make(Op::Number, {}, kPi);
      if (name == "e") return make(Op::Number, {}, std::exp(1.0));
      for (const char* f : kFunctions) {
        if (name != f) continue;
        if (!eat('(')) fail("expected '(' after " + name);
        NodePtr arg = expr();
        if (!eat(')')) fail("missing ')'");
        return make(Op::Call, {arg}, 0, name);
      }
      fail("unknown name '" + name + "'");
    }
    fail("unexpected character");
  }
};

Complex power(Complex b, Complex x) {
  if (x.imag() == 0 && x.real() == std::round(x.real()) && std::abs(x.real()) <= 1024)
    return std::pow(b, static_cast<int>(x.real()));
  if (b.imag() == 0 && b.real() > 0 && x.imag() == 0) return std::pow(b.real(), x.real());
  return std::pow(b, x);
}

Complex eval(const Expression::Node& e, Complex z, double n) {
  switch (e.op) {
    case Op::Number: return e.value;
    case Op::VarN: return n;
    case Op::VarZ: return z;
    case Op::Add: return eval(*e.args[0], z, n) + eval(*e.args[1], z, n);
    case Op::Sub: return eval(*e.args[0], z, n) - eval(*e.args[1], z, n);
    case Op::Mul: return eval(*e.args[0], z, n) * eval(*e.args[1], z, n);
    case Op::Div: return eval(*e.args[0], z, n) / eval(*e.args[1], z, n);
    case Op::Pow: return power(eval(*e.args[0], z, n), eval(*e.args[1], z, n));
    case Op::Neg: return -eval(*e.args[0], z, n);
    case Op::Call: {
      const Complex a = eval(*e.args[0], z, n);
      if (e.fn == "conj") return std::conj(a);
      if (e.fn == "re") return a.real();
      if (e.fn == "im") return a.imag();
      if (e.fn == "abs") return std::abs(a);
      if (e.fn == "arg") return std::arg(a);
      if (e.fn == "exp") return std::exp(a);
      if (e.fn == "log") return std::log(a);
      if (e.fn == "sqrt") return std::sqrt(a);
      if (e.fn == "sin") return std::sin(a);
      return std::cos(a);
    }
  }
  return 0;
}

bool depends_on_z(const Expression::Node& e) {
  if (e.op == Op::VarZ) return true;
  for (const auto& a : e.args)
    if (depends_on_z(*a)) return true;
  return false;
}

bool holomorphic_in_z(const Expression::Node& e) {
  if (e.op == Op::Call && (e.fn == "conj" || e.fn == "re" || e.fn == "im" || e.fn == "abs" || e.fn == "arg") &&
      depends_on_z(*e.args[0]))
    return false;
  for (const auto& a : e.args)
    if (!holomorphic_in_z(*a)) return false;
  return true;
}

}  // namespace

Expression::Expression(const std::string& text) : text_(text), root_(Parser(text_).parse()) {}

Expression Expression::constant(Complex c) {
  Expression e;
  std::ostringstream os;
  os.precision(17);
  if (c.imag() == 0) os << c.real();
  else os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  e.text_ = os.str();
  e.root_ = make(Node::Op::Number, {}, c);
  return e;
}

Complex Expression::operator()(Complex z, double n) const {
  if (!root_) throw Error(ErrorKind::Internal, "evaluating an empty expression");
  return eval(*root_, z, n);
}

bool Expression::uses_z() const { return root_ && depends_on_z(*root_); }
bool Expression::holomorphic() const { return !root_ || holomorphic_in_z(*root_); }

}  // namespace holo
