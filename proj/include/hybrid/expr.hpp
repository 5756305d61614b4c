#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

namespace hybrid {

/// Arithmetic expression over variables x1..xn: real literals, + - * / ^,
/// unary minus, and the functions sin cos exp sqrt abs min max.
/// Immutable; nodes are shared, so copies are cheap and thread-safe.
class Expr {
 public:
  /// Recursive-descent parse with precedence ^ > unary - > * / > + -.
  /// Throws SyntaxError, UnknownVariable, UnknownFunction.
  static Expr parse(const std::string& text, int dim);

  static Expr constant(double value);
  static Expr variable(int index, int dim);  // 0-based index

  /// Throws NonFiniteValue if any subexpression evaluates non-finite.
  double eval(const Eigen::VectorXd& x) const;

  /// Substitutes components[i] for variable x(i+1). All components must
  /// share a common variable count, which becomes the result's dim.
  Expr substitute(const std::vector<Expr>& components) const;

  /// True if the expression is syntactically affine in its variables.
  bool is_affine() const;

  std::string to_string() const;

  int dim() const { return dim_; }

  struct Node;  // AST node; defined in expr.cpp

 private:
  Expr(std::shared_ptr<const Node> root, int dim)
      : root_(std::move(root)), dim_(dim) {}
  std::shared_ptr<const Node> root_;
  int dim_ = 0;
};

}  // namespace hybrid
