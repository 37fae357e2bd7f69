#pragma once

#include <ostream>
#include <span>

namespace galcurve {

/// Value of a scalar function together with its first three derivatives with
/// respect to the curve parameter. Arithmetic is truncated at order three,
/// which is exactly what curvature (r'') and torsion (r''') need.
struct Jet3 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;

  friend constexpr bool operator==(const Jet3&, const Jet3&) = default;
};

std::ostream& operator<<(std::ostream& os, const Jet3& j);

/// Seeded independent variable (t0, 1, 0, 0).
constexpr Jet3 jet_var(double t0) { return {t0, 1.0, 0.0, 0.0}; }
constexpr Jet3 jet_const(double c) { return {c, 0.0, 0.0, 0.0}; }

/// Composes an outer function with derivatives (f0, f1, f2, f3) at inner.v
/// onto the inner jet (Faa di Bruno through order three).
Jet3 chain(const Jet3& inner, double f0, double f1, double f2, double f3);

Jet3 operator+(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a);
Jet3 operator*(const Jet3& a, const Jet3& b);
Jet3 operator*(double k, const Jet3& a);
/// Throws DivisionByZero when b.v == 0.
Jet3 operator/(const Jet3& a, const Jet3& b);

Jet3 sin(const Jet3& a);
Jet3 cos(const Jet3& a);
Jet3 exp(const Jet3& a);
/// Throws DomainError unless a.v > 0.
Jet3 sqrt(const Jet3& a);
/// Throws DomainError unless a.v > 0.
Jet3 log(const Jet3& a);

/// Exponents 0..8 use repeated multiplication; anything else goes through
/// exp(k log a) and therefore requires a.v > 0.
Jet3 pow_int(const Jet3& a, int k);
double pow_int(double a, int k);

/// The largest exponent evaluated by repeated multiplication.
inline constexpr int kPowIntMultiplyMax = 8;

enum class JetOp { Add, Sub, Mul, Div, Neg, PowInt, Sin, Cos, Exp, Sqrt };

/// Applies op to args (two for the binary ops, one otherwise). exponent is
/// only read by PowInt.
Jet3 jet_apply(JetOp op, std::span<const Jet3> args, int exponent = 0);

}  // namespace galcurve
