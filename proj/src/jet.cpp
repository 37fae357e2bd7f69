#include "galcurve/jet.hpp"

#include <cmath>
#include <string>

#include "galcurve/error.hpp"

namespace galcurve {

std::ostream& operator<<(std::ostream& os, const Jet3& j) {
  return os << '(' << j.v << ", " << j.d1 << ", " << j.d2 << ", " << j.d3 << ')';
}

Jet3 chain(const Jet3& u, double f0, double f1, double f2, double f3) {
  const double u1 = u.d1;
  const double u2 = u.d2;
  const double u3 = u.d3;
  return {f0,
          f1 * u1,
          f2 * u1 * u1 + f1 * u2,
          f3 * u1 * u1 * u1 + 3.0 * f2 * u1 * u2 + f1 * u3};
}

Jet3 operator+(const Jet3& a, const Jet3& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

Jet3 operator-(const Jet3& a, const Jet3& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

Jet3 operator-(const Jet3& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }

Jet3 operator*(const Jet3& a, const Jet3& b) {
  return {a.v * b.v,
          a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
          a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}

Jet3 operator*(double k, const Jet3& a) { return {k * a.v, k * a.d1, k * a.d2, k * a.d3}; }

Jet3 operator/(const Jet3& a, const Jet3& b) {
  if (b.v == 0.0) {
    raise(ErrorKind::DivisionByZero, "division by zero");
  }
  // q = a/b solves q*b = a; differentiate and solve order by order.
  const double q0 = a.v / b.v;
  const double q1 = (a.d1 - q0 * b.d1) / b.v;
  const double q2 = (a.d2 - 2.0 * q1 * b.d1 - q0 * b.d2) / b.v;
  const double q3 = (a.d3 - 3.0 * q2 * b.d1 - 3.0 * q1 * b.d2 - q0 * b.d3) / b.v;
  return {q0, q1, q2, q3};
}

Jet3 sin(const Jet3& a) {
  const double s = std::sin(a.v);
  const double c = std::cos(a.v);
  return chain(a, s, c, -s, -c);
}

Jet3 cos(const Jet3& a) {
  const double s = std::sin(a.v);
  const double c = std::cos(a.v);
  return chain(a, c, -s, -c, s);
}

Jet3 exp(const Jet3& a) {
  const double e = std::exp(a.v);
  return chain(a, e, e, e, e);
}

Jet3 sqrt(const Jet3& a) {
  if (!(a.v > 0.0)) {
    raise(ErrorKind::DomainError, "sqrt of non-positive value " + std::to_string(a.v));
  }
  const double r = std::sqrt(a.v);
  const double f1 = 0.5 / r;
  const double f2 = -0.5 * f1 / a.v;
  const double f3 = -1.5 * f2 / a.v;
  return chain(a, r, f1, f2, f3);
}

Jet3 log(const Jet3& a) {
  if (!(a.v > 0.0)) {
    raise(ErrorKind::DomainError, "log of non-positive value " + std::to_string(a.v));
  }
  const double inv = 1.0 / a.v;
  return chain(a, std::log(a.v), inv, -inv * inv, 2.0 * inv * inv * inv);
}

double pow_int(double a, int k) {
  if (k < 0 || k > kPowIntMultiplyMax) {
    if (!(a > 0.0)) {
      raise(ErrorKind::DomainError,
            "integer power " + std::to_string(k) + " of non-positive value " + std::to_string(a));
    }
    return std::exp(static_cast<double>(k) * std::log(a));
  }
  double r = 1.0;
  for (int i = 0; i < k; ++i) {
    r = i == 0 ? a : r * a;
  }
  return r;
}

Jet3 pow_int(const Jet3& a, int k) {
  if (k < 0 || k > kPowIntMultiplyMax) {
    if (!(a.v > 0.0)) {
      raise(ErrorKind::DomainError,
            "integer power " + std::to_string(k) + " of non-positive value " + std::to_string(a.v));
    }
    return exp(static_cast<double>(k) * log(a));
  }
  Jet3 r = jet_const(1.0);
  for (int i = 0; i < k; ++i) {
    r = i == 0 ? a : r * a;
  }
  return r;
}

Jet3 jet_apply(JetOp op, std::span<const Jet3> args, int exponent) {
  const bool binary = op == JetOp::Add || op == JetOp::Sub || op == JetOp::Mul || op == JetOp::Div;
  if (args.size() != (binary ? 2u : 1u)) {
    raise(ErrorKind::Usage, "jet_apply: wrong number of arguments");
  }
  switch (op) {
    case JetOp::Add: return args[0] + args[1];
    case JetOp::Sub: return args[0] - args[1];
    case JetOp::Mul: return args[0] * args[1];
    case JetOp::Div: return args[0] / args[1];
    case JetOp::Neg: return -args[0];
    case JetOp::PowInt: return pow_int(args[0], exponent);
    case JetOp::Sin: return sin(args[0]);
    case JetOp::Cos: return cos(args[0]);
    case JetOp::Exp: return exp(args[0]);
    case JetOp::Sqrt: return sqrt(args[0]);
  }
  raise(ErrorKind::Usage, "jet_apply: unknown op");
}

}  // namespace galcurve
