#include "galcurve/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <system_error>
#include <vector>

#include "galcurve/error.hpp"

namespace galcurve {

const char* function_name(Function fn) noexcept {
  switch (fn) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Exp: return "exp";
    case Function::Sqrt: return "sqrt";
  }
  return "?";
}

namespace {

std::optional<Function> lookup_function(std::string_view name) {
  if (name == "sin") return Function::Sin;
  if (name == "cos") return Function::Cos;
  if (name == "exp") return Function::Exp;
  if (name == "sqrt") return Function::Sqrt;
  return std::nullopt;
}

bool is_variable_name(std::string_view name) { return name == "t" || name == "s"; }

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

}  // namespace

NodePtr Node::make_number(double v) {
  Node n;
  n.kind = NodeKind::Number;
  n.number = v;
  return make(std::move(n));
}

NodePtr Node::make_variable(std::string name) {
  Node n;
  n.kind = NodeKind::Variable;
  n.name = std::move(name);
  return make(std::move(n));
}

NodePtr Node::make_parameter(std::string name) {
  Node n;
  n.kind = NodeKind::Parameter;
  n.name = std::move(name);
  return make(std::move(n));
}

NodePtr Node::make_unary(NodeKind kind, NodePtr operand) {
  Node n;
  n.kind = kind;
  n.lhs = std::move(operand);
  return make(std::move(n));
}

NodePtr Node::make_binary(NodeKind kind, NodePtr lhs, NodePtr rhs) {
  Node n;
  n.kind = kind;
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return make(std::move(n));
}

NodePtr Node::make_pow(NodePtr base, int exponent) {
  Node n;
  n.kind = NodeKind::Pow;
  n.lhs = std::move(base);
  n.exponent = exponent;
  return make(std::move(n));
}

NodePtr Node::make_call(Function fn, NodePtr arg) {
  Node n;
  n.kind = NodeKind::Call;
  n.fn = fn;
  n.lhs = std::move(arg);
  return make(std::move(n));
}

bool same_tree(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Number: return a.number == b.number;
    case NodeKind::Variable:
    case NodeKind::Parameter: return a.name == b.name;
    case NodeKind::Negate: return same_tree(*a.lhs, *b.lhs);
    case NodeKind::Pow: return a.exponent == b.exponent && same_tree(*a.lhs, *b.lhs);
    case NodeKind::Call: return a.fn == b.fn && same_tree(*a.lhs, *b.lhs);
    default: return same_tree(*a.lhs, *b.lhs) && same_tree(*a.rhs, *b.rhs);
  }
}

bool is_reserved_identifier(std::string_view ident) {
  return is_variable_name(ident) || lookup_function(ident).has_value();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) {
      fail({"operator", "end of input"}, "unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& what) {
    throw SyntaxError(pos_, std::move(expected), what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Node::make_binary(NodeKind::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Node::make_binary(NodeKind::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = Node::make_binary(NodeKind::Mul, lhs, parse_factor());
      } else if (accept('/')) {
        lhs = Node::make_binary(NodeKind::Div, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    if (accept('-')) {
      // '-' applies to a whole factor so that -t^2 is -(t^2).
      return Node::make_unary(NodeKind::Negate, parse_factor());
    }
    NodePtr base = parse_atom();
    if (accept('^')) {
      return Node::make_pow(base, parse_exponent());
    }
    return base;
  }

  int parse_exponent() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) {
      fail({"integer"}, "exponent must be a non-negative integer literal");
    }
    int k = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, k);
    if (ec != std::errc{}) {
      pos_ = start;
      fail({"integer"}, "exponent out of range");
    }
    return k;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) {
      fail({"number", "identifier", "'('", "'-'"}, "unexpected end of input");
    }
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      if (!accept(')')) fail({"')'"}, "unbalanced parenthesis");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      return parse_identifier();
    }
    fail({"number", "identifier", "'('", "'-'"}, "unexpected '" + std::string(1, c) + "'");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = start;
      fail({"number"}, "malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        pos_ = mark;
        fail({"exponent digits"}, "malformed number exponent");
      }
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_ || !std::isfinite(value)) {
      pos_ = start;
      fail({"number"}, "number out of range");
    }
    return Node::make_number(value);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    if (peek('(')) {
      const auto fn = lookup_function(name);
      if (!fn) {
        throw Error(ErrorKind::UnknownFunction,
                    "unknown function '" + name + "' at byte " + std::to_string(start));
      }
      ++pos_;
      NodePtr arg = parse_expr();
      if (!accept(')')) fail({"')'"}, "unbalanced parenthesis in call to " + name);
      return Node::make_call(*fn, arg);
    }
    if (lookup_function(name)) {
      fail({"'('"}, "function '" + name + "' requires parenthesised argument");
    }
    if (is_variable_name(name)) {
      if (!variable_.empty() && variable_ != name) {
        pos_ = start;
        fail({"'" + variable_ + "'"}, "expression mixes variables '" + variable_ + "' and '" + name + "'");
      }
      variable_ = name;
      return Node::make_variable(std::move(name));
    }
    return Node::make_parameter(std::move(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::string variable_;
};

void collect_params(const Node& n, std::set<std::string, std::less<>>& out) {
  if (n.kind == NodeKind::Parameter) out.insert(n.name);
  if (n.lhs) collect_params(*n.lhs, out);
  if (n.rhs) collect_params(*n.rhs, out);
}

// ---------------------------------------------------------------------------
// Printer

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    default: return 3;
  }
}

bool is_binary(NodeKind k) { return precedence(k) < 3; }

bool is_primary(NodeKind k) {
  return k == NodeKind::Number || k == NodeKind::Variable || k == NodeKind::Parameter ||
         k == NodeKind::Call;
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void print(const Node& n, std::string& out) {
  auto wrapped = [&](const Node& child, bool parens) {
    if (parens) out += '(';
    print(child, out);
    if (parens) out += ')';
  };
  switch (n.kind) {
    case NodeKind::Number: out += format_number(n.number); return;
    case NodeKind::Variable:
    case NodeKind::Parameter: out += n.name; return;
    case NodeKind::Call:
      out += function_name(n.fn);
      wrapped(*n.lhs, true);
      return;
    case NodeKind::Negate:
      out += '-';
      wrapped(*n.lhs, is_binary(n.lhs->kind));
      return;
    case NodeKind::Pow:
      wrapped(*n.lhs, !is_primary(n.lhs->kind));
      out += '^';
      out += std::to_string(n.exponent);
      return;
    default: {
      const int p = precedence(n.kind);
      wrapped(*n.lhs, precedence(n.lhs->kind) < p);
      switch (n.kind) {
        case NodeKind::Add: out += '+'; break;
        case NodeKind::Sub: out += '-'; break;
        case NodeKind::Mul: out += '*'; break;
        default: out += '/'; break;
      }
      wrapped(*n.rhs, precedence(n.rhs->kind) <= p);
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Evaluation

double lookup(const ParamMap& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) {
    throw Error(ErrorKind::UnboundParameter, "parameter '" + name + "' is not bound");
  }
  return it->second;
}

Jet3 eval_jet_node(const Node& n, const Jet3& t, const ParamMap& params) {
  switch (n.kind) {
    case NodeKind::Number: return jet_const(n.number);
    case NodeKind::Variable: return t;
    case NodeKind::Parameter: return jet_const(lookup(params, n.name));
    case NodeKind::Negate: return -eval_jet_node(*n.lhs, t, params);
    case NodeKind::Add: return eval_jet_node(*n.lhs, t, params) + eval_jet_node(*n.rhs, t, params);
    case NodeKind::Sub: return eval_jet_node(*n.lhs, t, params) - eval_jet_node(*n.rhs, t, params);
    case NodeKind::Mul: return eval_jet_node(*n.lhs, t, params) * eval_jet_node(*n.rhs, t, params);
    case NodeKind::Div: return eval_jet_node(*n.lhs, t, params) / eval_jet_node(*n.rhs, t, params);
    case NodeKind::Pow: return pow_int(eval_jet_node(*n.lhs, t, params), n.exponent);
    case NodeKind::Call: {
      const Jet3 a = eval_jet_node(*n.lhs, t, params);
      switch (n.fn) {
        case Function::Sin: return sin(a);
        case Function::Cos: return cos(a);
        case Function::Exp: return exp(a);
        case Function::Sqrt: return sqrt(a);
      }
    }
  }
  raise(ErrorKind::Usage, "corrupt expression tree");
}

double eval_node(const Node& n, double t, const ParamMap& params) {
  switch (n.kind) {
    case NodeKind::Number: return n.number;
    case NodeKind::Variable: return t;
    case NodeKind::Parameter: return lookup(params, n.name);
    case NodeKind::Negate: return -eval_node(*n.lhs, t, params);
    case NodeKind::Add: return eval_node(*n.lhs, t, params) + eval_node(*n.rhs, t, params);
    case NodeKind::Sub: return eval_node(*n.lhs, t, params) - eval_node(*n.rhs, t, params);
    case NodeKind::Mul: return eval_node(*n.lhs, t, params) * eval_node(*n.rhs, t, params);
    case NodeKind::Div: {
      const double den = eval_node(*n.rhs, t, params);
      if (den == 0.0) raise(ErrorKind::DivisionByZero, "division by zero");
      return eval_node(*n.lhs, t, params) / den;
    }
    case NodeKind::Pow: return pow_int(eval_node(*n.lhs, t, params), n.exponent);
    case NodeKind::Call: {
      const double a = eval_node(*n.lhs, t, params);
      switch (n.fn) {
        case Function::Sin: return std::sin(a);
        case Function::Cos: return std::cos(a);
        case Function::Exp: return std::exp(a);
        case Function::Sqrt:
          if (!(a > 0.0)) {
            raise(ErrorKind::DomainError, "sqrt of non-positive value " + std::to_string(a));
          }
          return std::sqrt(a);
      }
    }
  }
  raise(ErrorKind::Usage, "corrupt expression tree");
}

}  // namespace

Expr::Expr(NodePtr root) : root_(std::move(root)) { collect_params(*root_, params_); }

Expr Expr::parse(std::string_view text) { return Expr(Parser(text).parse_all()); }

Expr Expr::from_tree(NodePtr root) {
  if (!root) raise(ErrorKind::Usage, "empty expression tree");
  return Expr(std::move(root));
}

std::string Expr::str() const {
  std::string out;
  print(*root_, out);
  return out;
}

Jet3 eval_jet(const Expr& e, const Jet3& t, const ParamMap& params) {
  return eval_jet_node(e.root(), t, params);
}

double eval(const Expr& e, double t, const ParamMap& params) {
  return eval_node(e.root(), t, params);
}

}  // namespace galcurve
