#include "hybrid/expr.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

#include "hybrid/errors.hpp"

namespace hybrid {

enum class Op { Add, Sub, Mul, Div, Pow };
enum class Fn { Sin, Cos, Exp, Sqrt, Abs, Min, Max };

struct Expr::Node {
  enum class Kind { Constant, Variable, Neg, Binary, Call } kind;
  double value = 0.0;  // Constant
  int var = 0;         // Variable (0-based)
  Op op = Op::Add;     // Binary
  Fn fn = Fn::Sin;     // Call
  std::shared_ptr<const Node> a, b;
};

using NodePtr = std::shared_ptr<const Expr::Node>;

namespace {

NodePtr mk_const(double v) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Node::Kind::Constant;
  n->value = v;
  return n;
}

NodePtr mk_var(int i) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Node::Kind::Variable;
  n->var = i;
  return n;
}

NodePtr mk_neg(NodePtr a) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Node::Kind::Neg;
  n->a = std::move(a);
  return n;
}

NodePtr mk_bin(Op op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Node::Kind::Binary;
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr mk_call(Fn fn, NodePtr a, NodePtr b = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = Expr::Node::Kind::Call;
  n->fn = fn;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

const std::map<std::string, std::pair<Fn, int>> kFunctions = {
    {"sin", {Fn::Sin, 1}}, {"cos", {Fn::Cos, 1}},   {"exp", {Fn::Exp, 1}},
    {"sqrt", {Fn::Sqrt, 1}}, {"abs", {Fn::Abs, 1}}, {"min", {Fn::Min, 2}},
    {"max", {Fn::Max, 2}}};

class Parser {
 public:
  Parser(const std::string& text, int dim) : text_(text), dim_(dim) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("empty expression", 0);
    NodePtr e = parse_sum();
    skip_ws();
    if (pos_ < text_.size())
      throw SyntaxError("unexpected trailing input", pos_);
    return e;
  }

 private:
  NodePtr parse_sum() {
    NodePtr e = parse_term();
    for (;;) {
      skip_ws();
      if (accept('+'))
        e = mk_bin(Op::Add, e, parse_term());
      else if (accept('-'))
        e = mk_bin(Op::Sub, e, parse_term());
      else
        return e;
    }
  }

  NodePtr parse_term() {
    NodePtr e = parse_unary();
    for (;;) {
      skip_ws();
      if (accept('*'))
        e = mk_bin(Op::Mul, e, parse_unary());
      else if (accept('/'))
        e = mk_bin(Op::Div, e, parse_unary());
      else
        return e;
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    if (accept('-')) return mk_neg(parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    skip_ws();
    if (accept('^')) return mk_bin(Op::Pow, base, parse_unary());
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size())
      throw SyntaxError("unexpected end of expression", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    std::size_t start = pos_;
    std::size_t consumed = 0;
    double v;
    try {
      v = std::stod(text_.substr(start), &consumed);
    } catch (const std::exception&) {
      throw SyntaxError("malformed number", start);
    }
    pos_ = start + consumed;
    return mk_const(v);
  }

  NodePtr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (name.size() >= 2 && name[0] == 'x' &&
        std::isdigit(static_cast<unsigned char>(name[1]))) {
      int idx = 0;
      try {
        idx = std::stoi(name.substr(1));
      } catch (const std::exception&) {
        idx = 0;
      }
      if (idx < 1 || idx > dim_)
        throw UnknownVariable("variable '" + name + "' exceeds dimension " +
                              std::to_string(dim_));
      return mk_var(idx - 1);
    }
    auto it = kFunctions.find(name);
    if (it == kFunctions.end())
      throw UnknownFunction("unknown function or variable '" + name + "'");
    auto [fn, arity] = it->second;
    skip_ws();
    expect('(');
    NodePtr a = parse_sum();
    NodePtr b;
    if (arity == 2) {
      skip_ws();
      expect(',');
      b = parse_sum();
    }
    expect(')');
    return mk_call(fn, a, b);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!accept(c))
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
  }

  const std::string& text_;
  int dim_;
  std::size_t pos_ = 0;
};

double eval_node(const Expr::Node& n, const Eigen::VectorXd& x) {
  double v = 0.0;
  switch (n.kind) {
    case Expr::Node::Kind::Constant:
      v = n.value;
      break;
    case Expr::Node::Kind::Variable:
      v = x[n.var];
      break;
    case Expr::Node::Kind::Neg:
      v = -eval_node(*n.a, x);
      break;
    case Expr::Node::Kind::Binary: {
      double a = eval_node(*n.a, x);
      double b = eval_node(*n.b, x);
      switch (n.op) {
        case Op::Add: v = a + b; break;
        case Op::Sub: v = a - b; break;
        case Op::Mul: v = a * b; break;
        case Op::Div: v = a / b; break;
        case Op::Pow: v = std::pow(a, b); break;
      }
      break;
    }
    case Expr::Node::Kind::Call: {
      double a = eval_node(*n.a, x);
      switch (n.fn) {
        case Fn::Sin: v = std::sin(a); break;
        case Fn::Cos: v = std::cos(a); break;
        case Fn::Exp: v = std::exp(a); break;
        case Fn::Sqrt: v = std::sqrt(a); break;
        case Fn::Abs: v = std::abs(a); break;
        case Fn::Min: v = std::min(a, eval_node(*n.b, x)); break;
        case Fn::Max: v = std::max(a, eval_node(*n.b, x)); break;
      }
      break;
    }
  }
  if (!std::isfinite(v)) throw NonFiniteValue("non-finite subexpression value");
  return v;
}

NodePtr substitute_node(const NodePtr& n, const std::vector<NodePtr>& repl) {
  switch (n->kind) {
    case Expr::Node::Kind::Constant:
      return n;
    case Expr::Node::Kind::Variable:
      return repl.at(static_cast<std::size_t>(n->var));
    case Expr::Node::Kind::Neg:
      return mk_neg(substitute_node(n->a, repl));
    case Expr::Node::Kind::Binary:
      return mk_bin(n->op, substitute_node(n->a, repl),
                    substitute_node(n->b, repl));
    case Expr::Node::Kind::Call:
      return mk_call(n->fn, substitute_node(n->a, repl),
                     n->b ? substitute_node(n->b, repl) : nullptr);
  }
  return n;
}

// (is syntactically constant, is affine in the variables)
std::pair<bool, bool> affine_node(const Expr::Node& n) {
  switch (n.kind) {
    case Expr::Node::Kind::Constant:
      return {true, true};
    case Expr::Node::Kind::Variable:
      return {false, true};
    case Expr::Node::Kind::Neg:
      return affine_node(*n.a);
    case Expr::Node::Kind::Binary: {
      auto [ca, aa] = affine_node(*n.a);
      auto [cb, ab] = affine_node(*n.b);
      switch (n.op) {
        case Op::Add:
        case Op::Sub:
          return {ca && cb, aa && ab};
        case Op::Mul:
          return {ca && cb, (ca && ab) || (cb && aa)};
        case Op::Div:
          return {ca && cb, aa && cb};
        case Op::Pow:
          return {ca && cb, ca && cb};
      }
      return {false, false};
    }
    case Expr::Node::Kind::Call: {
      auto [ca, aa] = affine_node(*n.a);
      (void)aa;
      bool cb = !n.b || affine_node(*n.b).first;
      return {ca && cb, ca && cb};
    }
  }
  return {false, false};
}

void print_node(const Expr::Node& n, std::ostream& os) {
  switch (n.kind) {
    case Expr::Node::Kind::Constant: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << n.value;
      os << tmp.str();
      break;
    }
    case Expr::Node::Kind::Variable:
      os << "x" << (n.var + 1);
      break;
    case Expr::Node::Kind::Neg:
      os << "(-";
      print_node(*n.a, os);
      os << ")";
      break;
    case Expr::Node::Kind::Binary: {
      const char* sym = "+";
      switch (n.op) {
        case Op::Add: sym = "+"; break;
        case Op::Sub: sym = "-"; break;
        case Op::Mul: sym = "*"; break;
        case Op::Div: sym = "/"; break;
        case Op::Pow: sym = "^"; break;
      }
      os << "(";
      print_node(*n.a, os);
      os << sym;
      print_node(*n.b, os);
      os << ")";
      break;
    }
    case Expr::Node::Kind::Call: {
      const char* name = "sin";
      switch (n.fn) {
        case Fn::Sin: name = "sin"; break;
        case Fn::Cos: name = "cos"; break;
        case Fn::Exp: name = "exp"; break;
        case Fn::Sqrt: name = "sqrt"; break;
        case Fn::Abs: name = "abs"; break;
        case Fn::Min: name = "min"; break;
        case Fn::Max: name = "max"; break;
      }
      os << name << "(";
      print_node(*n.a, os);
      if (n.b) {
        os << ",";
        print_node(*n.b, os);
      }
      os << ")";
      break;
    }
  }
}

}  // namespace

Expr Expr::parse(const std::string& text, int dim) {
  Parser p(text, dim);
  return Expr(p.parse(), dim);
}

Expr Expr::constant(double value) { return Expr(mk_const(value), 0); }

Expr Expr::variable(int index, int dim) {
  if (index < 0 || index >= dim)
    throw UnknownVariable("variable index out of range");
  return Expr(mk_var(index), dim);
}

double Expr::eval(const Eigen::VectorXd& x) const {
  if (x.size() < dim_)
    throw DimensionMismatch("point has fewer coordinates than expression dim");
  return eval_node(*root_, x);
}

Expr Expr::substitute(const std::vector<Expr>& components) const {
  if (static_cast<int>(components.size()) < dim_)
    throw DimensionMismatch("not enough substitution components");
  int new_dim = components.empty() ? 0 : components.front().dim_;
  std::vector<NodePtr> repl;
  for (const auto& c : components) repl.push_back(c.root_);
  return Expr(substitute_node(root_, repl), new_dim);
}

bool Expr::is_affine() const { return affine_node(*root_).second; }

std::string Expr::to_string() const {
  std::ostringstream os;
  print_node(*root_, os);
  return os.str();
}

}  // namespace hybrid
