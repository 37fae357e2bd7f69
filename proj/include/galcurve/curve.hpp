#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "galcurve/error.hpp"
#include "galcurve/expr.hpp"
#include "galcurve/galilean.hpp"
#include "galcurve/jet.hpp"

namespace galcurve {

/// Curvature below this leaves N, B and tau undefined.
inline constexpr double kKappaEps = 1e-9;
/// Planar speed at or below this has no unit tangent.
inline constexpr double kSpeedEps = 1e-9;
/// |x'(t)| below this rejects a raw curve as not admissible.
inline constexpr double kAdmitEps = 1e-8;
/// Number of points of the admissibility scan of x'(t).
inline constexpr int kAdmitScanPoints = 256;

/// Closed parameter interval. Bounds may be infinite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  /// Membership with a relative slack of 1e-12 on finite bounds so that grid
  /// endpoints computed in floating point are accepted.
  bool contains(double s) const;
  double width() const { return hi - lo; }
};

/// n equally spaced samples covering both endpoints. Requires n >= 2.
std::vector<double> linspace(const Interval& iv, int n);

/// Jets of the two Euclidean coordinates of a curve.
struct CoordJets {
  Jet3 y;
  Jet3 z;
};

/// Maps a parameter jet to the coordinate jets. Receiving a jet (rather than
/// a number) lets curves compose with reparametrizations.
using CoordFn = std::function<CoordJets(const Jet3& param)>;

/// Curve of the form s -> (s, y(s), z(s)); in G3 the x coordinate is the arc
/// length, so T always has first component 1.
class AdmissibleCurve {
 public:
  AdmissibleCurve(CoordFn fn, Interval domain);

  const Interval& domain() const { return domain_; }

  /// Throws OutOfDomain when s is outside the domain.
  CoordJets jets(double s) const { return jets(jet_var(s)); }
  CoordJets jets(const Jet3& s) const;
  GVec3 point(double s) const;

 private:
  std::shared_ptr<const CoordFn> fn_;
  Interval domain_;
};

/// Curve lying in the Euclidean plane x = c, given by y*(s), z*(s) over the
/// parameter s of whatever curve it was built from.
class PlanarCurve {
 public:
  PlanarCurve(double plane_x, CoordFn fn, Interval domain);

  double plane_x() const { return plane_x_; }
  const Interval& domain() const { return domain_; }

  CoordJets jets(double s) const { return jets(jet_var(s)); }
  CoordJets jets(const Jet3& s) const;
  GVec3 point(double s) const;

  /// Copies of the same curve share an identity; independently built curves
  /// never do.
  bool same_curve(const PlanarCurve& other) const { return fn_ == other.fn_; }

 private:
  double plane_x_;
  std::shared_ptr<const CoordFn> fn_;
  Interval domain_;
};

/// Position and first three parameter derivatives.
struct CurveSample {
  GVec3 position;
  GVec3 r1;
  GVec3 r2;
  GVec3 r3;
};

CurveSample eval3(const AdmissibleCurve& curve, double s);
CurveSample eval3(const PlanarCurve& curve, double s);

enum class CurveKind { Raw, Admissible };

/// Three coordinate expressions over one parameter, with bound constants and
/// a parameter domain.
struct CurveSpec {
  std::array<Expr, 3> coords;
  ParamMap params;
  Interval domain;
  CurveKind kind = CurveKind::Raw;

  /// Validates the invariants: lo < hi, every parameter bound and, for
  /// Admissible, x_expr being the bare variable (Usage error otherwise).
  static CurveSpec make(std::array<Expr, 3> coords, ParamMap params, Interval domain,
                        CurveKind kind);

  /// Parses "x;y;z". Without an explicit kind the result is Admissible exactly
  /// when the x expression is the bare variable.
  static CurveSpec parse(std::string_view text, ParamMap params, Interval domain,
                         std::optional<CurveKind> kind = std::nullopt);
};

/// Reparametrizes a raw curve by its x coordinate (the Galilean arc length).
/// Decreasing x(t) is reversed so the new parameter always increases.
AdmissibleCurve reparametrize(const CurveSpec& spec);

/// reparametrize for Raw specs; direct evaluation for Admissible ones.
AdmissibleCurve to_admissible(const CurveSpec& spec);

struct FrenetFrame {
  GVec3 T;
  GVec3 N;
  GVec3 B;
  double kappa = 0.0;
  double tau = 0.0;
};

/// Raised where kappa < kKappaEps. The parts of the frame that remain defined
/// travel with the error.
class FrameUndefined : public Error {
 public:
  FrameUndefined(double s, double kappa, const GVec3& tangent);

  double s() const noexcept { return s_; }
  double kappa() const noexcept { return kappa_; }
  const GVec3& tangent() const noexcept { return tangent_; }

 private:
  double s_;
  double kappa_;
  GVec3 tangent_;
};

FrenetFrame frenet(const AdmissibleCurve& curve, double s);

/// Euclidean Frenet data of a planar curve with respect to its parent
/// parameter.
struct PlanarFrenet {
  GVec3 T_star;
  double speed = 0.0;
  double kappa_euclid = 0.0;
};

PlanarFrenet planar_frenet(const PlanarCurve& curve, double s);

/// Image of the curve under a B6 isometry, re-expressed with x as parameter
/// (a shift by a11). Throws NotAnIsometry for non-B6 parameters.
AdmissibleCurve transform_curve(const AdmissibleCurve& curve, const IsometryParams& iso);

}  // namespace galcurve
