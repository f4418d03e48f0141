#pragma once

// Small expression language for inline maps and metrics:
//   numbers, pi, e, two variables, + - * / ^ (right associative), unary minus,
//   exp log sin cos tan sqrt abs sinh cosh.
// Expressions are evaluated on jets, so every derivative is exact.

#include <memory>
#include <string>

#include "biharm/field.hpp"
#include "biharm/geometry.hpp"
#include "biharm/map_calculus.hpp"

namespace biharm {

class Expression {
 public:
  struct Node;

  /// Parses `src` over the variable names var0, var1. Throws ParseError.
  static Expression parse(const std::string& src, const std::string& var0 = "x", const std::string& var1 = "y");

  RealJet operator()(const RealJet& a, const RealJet& b) const;
  double operator()(double a, double b) const;

  const std::string& source() const { return src_; }
  ScalarField2 field() const;

 private:
  Expression(std::shared_ptr<const Node> root, std::string src) : root_(std::move(root)), src_(std::move(src)) {}
  std::shared_ptr<const Node> root_;
  std::string src_;
};

/// "f1; f2" over x, y.
SmoothMap2 parse_map(const std::string& spec);

/// Metric specs, over x, y for a domain and u, v for a target:
///   flat | sphere | hyperbolic
///   conformal:<rho>   warped:<sigma^2 in the first variable>   general:<g11>;<g12>;<g22>
Metric2 parse_metric(const std::string& spec, bool target, Rect domain = {-100.0, 100.0, -100.0, 100.0});

}  // namespace biharm
