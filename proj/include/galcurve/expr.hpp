#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "galcurve/jet.hpp"

namespace galcurve {

/// Values for the named constants of an expression.
using ParamMap = std::map<std::string, double, std::less<>>;

enum class NodeKind { Number, Variable, Parameter, Negate, Add, Sub, Mul, Div, Pow, Call };
enum class Function { Sin, Cos, Exp, Sqrt };

const char* function_name(Function fn) noexcept;

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable AST node. Only the fields relevant to `kind` are meaningful.
struct Node {
  NodeKind kind = NodeKind::Number;
  double number = 0.0;     // Number
  std::string name;        // Variable, Parameter
  Function fn = Function::Sin;  // Call
  int exponent = 0;        // Pow
  NodePtr lhs;             // unary operand, Pow base, Call argument
  NodePtr rhs;

  static NodePtr make_number(double v);
  static NodePtr make_variable(std::string name);
  static NodePtr make_parameter(std::string name);
  static NodePtr make_unary(NodeKind kind, NodePtr operand);
  static NodePtr make_binary(NodeKind kind, NodePtr lhs, NodePtr rhs);
  static NodePtr make_pow(NodePtr base, int exponent);
  static NodePtr make_call(Function fn, NodePtr arg);
};

/// Structural equality; numbers compare with ==.
bool same_tree(const Node& a, const Node& b);

/// An expression in a single variable (`t` or `s`) and any number of named
/// parameters.
///
/// Grammar (whitespace is insignificant):
///
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := atom ('^' integer)?
///   atom   := number | ident | ident '(' expr ')' | '(' expr ')' | '-' factor
///
/// '^' binds tighter than unary minus and only takes a non-negative integer
/// literal. Callable identifiers are sin, cos, exp and sqrt; `t` and `s` both
/// name the variable (an expression may use only one of them); every other
/// identifier is a parameter.
class Expr {
 public:
  static Expr parse(std::string_view text);
  static Expr from_tree(NodePtr root);

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  const std::set<std::string, std::less<>>& free_params() const { return params_; }

  /// True when the whole expression is the bare variable.
  bool is_variable() const { return root_->kind == NodeKind::Variable; }

  /// Text that parses back to an identical tree.
  std::string str() const;

  friend bool operator==(const Expr& a, const Expr& b) { return same_tree(*a.root_, *b.root_); }

 private:
  explicit Expr(NodePtr root);

  NodePtr root_;
  std::set<std::string, std::less<>> params_;
};

/// Jet of the expression with the variable bound to `t`; parameters are
/// constants. Throws UnboundParameter or the jet arithmetic errors.
Jet3 eval_jet(const Expr& e, const Jet3& t, const ParamMap& params);

/// Plain scalar evaluation, same operation order as eval_jet's value part.
double eval(const Expr& e, double t, const ParamMap& params);

bool is_reserved_identifier(std::string_view ident);

}  // namespace galcurve
