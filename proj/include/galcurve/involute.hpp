#pragma once

#include "galcurve/curve.hpp"
#include "galcurve/expr.hpp"

namespace galcurve {

/// Points with |c - s| below this are excluded from involute checks.
inline constexpr double kLambdaMin = 1e-2;

/// A base curve together with its involute alpha* = alpha + (c - s) T, which
/// lies in the plane x = c.
struct InvolutePair {
  AdmissibleCurve base;
  double c = 0.0;
  PlanarCurve involute;
  /// Part of the base domain with s <= c - kLambdaMin.
  Interval check_domain;
};

/// Throws FrameUndefined when the base curvature drops below kKappaEps on
/// the check domain, EmptyDomain when no part of the base domain lies below
/// c - kLambdaMin.
///
/// The involute's coordinates are y + (c - s) y' and z + (c - s) z', so its
/// jets are exact through order two. Its third derivative would need the
/// fourth derivative of the base and is reported as NaN.
InvolutePair make_involute(const AdmissibleCurve& base, double c);

struct InvoluteFrame {
  GVec3 T_star;
  GVec3 N_star;
  /// Non-negative; the sign of tau moves into N_star.
  double kappa_star = 0.0;
  double dsstar_ds = 0.0;
};

/// T* = N, ds*/ds = (c - s) kappa, kappa* = |tau| / ((c - s) kappa) and
/// N* = sign(tau) B.
InvoluteFrame involute_frame(const InvolutePair& pair, double s);

/// Reconstructs a curve whose involute (with the target's plane coordinate
/// as c) is the target curve, traversed through the correspondence u(s).
struct EvoluteProblem {
  PlanarCurve target;
  Expr correspondence;
  ParamMap params;
  double y0 = 0.0;
  double z0 = 0.0;
  double s_start = 0.0;
  double s_end = 0.0;
  double step = 1e-3;
};

struct Evolute {
  AdmissibleCurve curve;
  EvoluteProblem problem;
};

/// Integrates y' = (Y(u(s)) - y)/(c - s), z' = (Z(u(s)) - z)/(c - s) with
/// classical RK4 and interpolates the nodes by cubic Hermite segments whose
/// node slopes are the right-hand side. The step is shrunk to the largest
/// value <= problem.step that lands exactly on s_end.
///
/// Throws SingularLambda unless s_end < c, OutOfDomain when u(s) leaves the
/// target's domain and Usage for a non-positive step or empty interval.
Evolute make_evolute(const EvoluteProblem& problem);

}  // namespace galcurve
