#include "galcurve/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "galcurve/format.hpp"

namespace galcurve {

namespace {

// Re-raises jet arithmetic failures with the offending parameter value.
template <typename F>
auto annotated(double s, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DivisionByZero || e.kind() == ErrorKind::DomainError) {
      throw Error(e.kind(), std::string(e.what()) + " at parameter " + format_double(s));
    }
    throw;
  }
}

void require_in(const Interval& domain, double s) {
  if (!domain.contains(s)) {
    throw Error(ErrorKind::OutOfDomain, "parameter " + format_double(s) + " outside [" +
                                            format_double(domain.lo) + ", " +
                                            format_double(domain.hi) + "]");
  }
}

}  // namespace

bool Interval::contains(double s) const {
  double scale = 1.0;
  if (std::isfinite(lo)) scale = std::max(scale, std::abs(lo));
  if (std::isfinite(hi)) scale = std::max(scale, std::abs(hi));
  const double slack = 1e-12 * scale;
  return s >= lo - slack && s <= hi + slack;
}

std::vector<double> linspace(const Interval& iv, int n) {
  if (n < 2) raise(ErrorKind::Usage, "a sample grid needs at least 2 points");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double step = (iv.hi - iv.lo) / (n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = iv.lo + i * step;
  out.back() = iv.hi;
  return out;
}

// ---------------------------------------------------------------------------

AdmissibleCurve::AdmissibleCurve(CoordFn fn, Interval domain)
    : fn_(std::make_shared<const CoordFn>(std::move(fn))), domain_(domain) {}

CoordJets AdmissibleCurve::jets(const Jet3& s) const {
  require_in(domain_, s.v);
  return annotated(s.v, [&] { return (*fn_)(s); });
}

GVec3 AdmissibleCurve::point(double s) const {
  const CoordJets j = jets(jet_const(s));
  return {s, j.y.v, j.z.v};
}

PlanarCurve::PlanarCurve(double plane_x, CoordFn fn, Interval domain)
    : plane_x_(plane_x), fn_(std::make_shared<const CoordFn>(std::move(fn))), domain_(domain) {}

CoordJets PlanarCurve::jets(const Jet3& s) const {
  require_in(domain_, s.v);
  return annotated(s.v, [&] { return (*fn_)(s); });
}

GVec3 PlanarCurve::point(double s) const {
  const CoordJets j = jets(jet_const(s));
  return {plane_x_, j.y.v, j.z.v};
}

CurveSample eval3(const AdmissibleCurve& curve, double s) {
  const CoordJets j = curve.jets(s);
  return {{s, j.y.v, j.z.v}, {1.0, j.y.d1, j.z.d1}, {0.0, j.y.d2, j.z.d2}, {0.0, j.y.d3, j.z.d3}};
}

CurveSample eval3(const PlanarCurve& curve, double s) {
  const CoordJets j = curve.jets(s);
  return {{curve.plane_x(), j.y.v, j.z.v},
          {0.0, j.y.d1, j.z.d1},
          {0.0, j.y.d2, j.z.d2},
          {0.0, j.y.d3, j.z.d3}};
}

// ---------------------------------------------------------------------------

CurveSpec CurveSpec::make(std::array<Expr, 3> coords, ParamMap params, Interval domain,
                          CurveKind kind) {
  if (!(domain.lo < domain.hi)) {
    raise(ErrorKind::Usage, "curve domain needs lo < hi, got [" + format_double(domain.lo) +
                                ", " + format_double(domain.hi) + "]");
  }
  for (const Expr& e : coords) {
    for (const std::string& p : e.free_params()) {
      if (!params.contains(p)) {
        raise(ErrorKind::UnboundParameter, "parameter '" + p + "' is not bound");
      }
    }
  }
  if (kind == CurveKind::Admissible && !coords[0].is_variable()) {
    raise(ErrorKind::Usage,
          "admissible curve needs the x expression to be the parameter itself, got '" +
              coords[0].str() + "'");
  }
  return CurveSpec{std::move(coords), std::move(params), domain, kind};
}

CurveSpec CurveSpec::parse(std::string_view text, ParamMap params, Interval domain,
                           std::optional<CurveKind> kind) {
  std::array<std::string_view, 3> parts;
  std::size_t count = 0;
  std::size_t start = 0;
  for (;;) {
    const std::size_t cut = text.find(';', start);
    if (count == 3) {
      raise(ErrorKind::Usage, "curve needs exactly three ';'-separated expressions");
    }
    parts[count++] = text.substr(start, cut == std::string_view::npos ? cut : cut - start);
    if (cut == std::string_view::npos) break;
    start = cut + 1;
  }
  if (count != 3) raise(ErrorKind::Usage, "curve needs exactly three ';'-separated expressions");
  std::array<Expr, 3> coords{Expr::parse(parts[0]), Expr::parse(parts[1]), Expr::parse(parts[2])};
  const CurveKind k =
      kind.value_or(coords[0].is_variable() ? CurveKind::Admissible : CurveKind::Raw);
  return make(std::move(coords), std::move(params), domain, k);
}

namespace {

struct Reparametrization {
  CurveSpec spec;
  bool increasing = true;
  double x_at_lo = 0.0;
  double x_at_hi = 0.0;

  Jet3 x_jet(double t) const { return eval_jet(spec.coords[0], jet_var(t), spec.params); }

  // Safeguarded Newton on x(t) = s over the bracket [t_lo, t_hi].
  double solve(double s) const {
    const double tol = std::max(1e-12, 8.0 * std::numeric_limits<double>::epsilon() * std::abs(s));
    double a = spec.domain.lo;
    double b = spec.domain.hi;
    const double xa = x_at_lo;
    const double xb = x_at_hi;
    if (std::abs(xa - s) <= tol) return a;
    if (std::abs(xb - s) <= tol) return b;
    double t = a + (s - xa) / (xb - xa) * (b - a);
    for (int iter = 0; iter < 100; ++iter) {
      const Jet3 xj = x_jet(t);
      const double f = xj.v - s;
      if (std::abs(f) <= tol) return t;
      // Keep a bracket with x(a) <= s <= x(b) in the increasing orientation.
      if ((f < 0.0) == increasing) {
        a = t;
      } else {
        b = t;
      }
      double next = t - f / xj.d1;
      if (!(next > a && next < b)) next = 0.5 * (a + b);
      if (next == t) break;
      t = next;
    }
    throw Error(ErrorKind::NoConvergence,
                "inverting x(t) = " + format_double(s) + " did not converge in 100 iterations");
  }

  CoordJets operator()(const Jet3& s) const {
    const double t0 = solve(std::clamp(s.v, std::min(x_at_lo, x_at_hi), std::max(x_at_lo, x_at_hi)));
    const Jet3 xj = x_jet(t0);
    const double x1 = xj.d1;
    const double x2 = xj.d2;
    const double x3 = xj.d3;
    // Derivatives of the inverse function t(s).
    const double g1 = 1.0 / x1;
    const double g2 = -x2 / (x1 * x1 * x1);
    const double g3 = (3.0 * x2 * x2 - x1 * x3) / (x1 * x1 * x1 * x1 * x1);
    const Jet3 t = chain(s, t0, g1, g2, g3);
    return {eval_jet(spec.coords[1], t, spec.params), eval_jet(spec.coords[2], t, spec.params)};
  }
};

// Locates a sign change of x' between t0 and t1 by bisection.
double bisect_derivative_root(const Expr& x, const ParamMap& params, double t0, double t1) {
  double d0 = eval_jet(x, jet_var(t0), params).d1;
  for (int i = 0; i < 200 && t1 - t0 > 0.0; ++i) {
    const double mid = 0.5 * (t0 + t1);
    if (mid == t0 || mid == t1) break;
    const double dm = eval_jet(x, jet_var(mid), params).d1;
    if ((dm > 0.0) == (d0 > 0.0)) {
      t0 = mid;
      d0 = dm;
    } else {
      t1 = mid;
    }
  }
  return 0.5 * (t0 + t1);
}

}  // namespace

AdmissibleCurve reparametrize(const CurveSpec& spec) {
  const Expr& x = spec.coords[0];
  const std::vector<double> scan = linspace(spec.domain, kAdmitScanPoints);
  double prev_t = scan.front();
  double prev_d = 0.0;
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const double t = scan[i];
    const double d = annotated(t, [&] { return eval_jet(x, jet_var(t), spec.params).d1; });
    if (!(std::abs(d) >= kAdmitEps)) throw NotAdmissible(t);
    if (i > 0 && (d > 0.0) != (prev_d > 0.0)) {
      throw NotAdmissible(bisect_derivative_root(x, spec.params, prev_t, t));
    }
    prev_t = t;
    prev_d = d;
  }

  Reparametrization r{spec, prev_d > 0.0, eval(x, spec.domain.lo, spec.params),
                      eval(x, spec.domain.hi, spec.params)};
  const Interval s_domain{std::min(r.x_at_lo, r.x_at_hi), std::max(r.x_at_lo, r.x_at_hi)};
  return AdmissibleCurve(std::move(r), s_domain);
}

AdmissibleCurve to_admissible(const CurveSpec& spec) {
  if (spec.kind == CurveKind::Raw) return reparametrize(spec);
  return AdmissibleCurve(
      [y = spec.coords[1], z = spec.coords[2], params = spec.params](const Jet3& s) {
        return CoordJets{eval_jet(y, s, params), eval_jet(z, s, params)};
      },
      spec.domain);
}

// ---------------------------------------------------------------------------

FrameUndefined::FrameUndefined(double s, double kappa, const GVec3& tangent)
    : Error(ErrorKind::FrameUndefined, "Frenet frame undefined at s = " + format_double(s) +
                                           " (curvature " + format_double(kappa) + ")"),
      s_(s),
      kappa_(kappa),
      tangent_(tangent) {}

FrenetFrame frenet(const AdmissibleCurve& curve, double s) {
  const CurveSample r = eval3(curve, s);
  const double y2 = r.r2.y;
  const double z2 = r.r2.z;
  const double kappa = std::hypot(y2, z2);
  if (!(kappa >= kKappaEps)) throw FrameUndefined(s, kappa, r.r1);

  // det(r', r'', r''') reduces to the 2x2 minor because r'' and r''' are
  // isotropic.
  const double det = y2 * r.r3.z - z2 * r.r3.y;
  FrenetFrame f;
  f.T = r.r1;
  f.N = {0.0, y2 / kappa, z2 / kappa};
  f.B = {0.0, -z2 / kappa, y2 / kappa};
  f.kappa = kappa;
  f.tau = det / (kappa * kappa);
  return f;
}

PlanarFrenet planar_frenet(const PlanarCurve& curve, double s) {
  const CurveSample r = eval3(curve, s);
  const double speed = std::hypot(r.r1.y, r.r1.z);
  if (!(speed > kSpeedEps)) {
    throw Error(ErrorKind::DegenerateSpeed,
                "planar curve has vanishing speed at s = " + format_double(s));
  }
  const double cross = r.r1.y * r.r2.z - r.r1.z * r.r2.y;
  return {{0.0, r.r1.y / speed, r.r1.z / speed}, speed,
          std::abs(cross) / (speed * speed * speed)};
}

AdmissibleCurve transform_curve(const AdmissibleCurve& curve, const IsometryParams& iso) {
  if (!iso.is_b6()) {
    raise(ErrorKind::NotAnIsometry, "transform needs a12 = a23 = 1 (B6), got a12 = " +
                                        format_double(iso.a12) + ", a23 = " +
                                        format_double(iso.a23));
  }
  const double c = std::cos(iso.phi);
  const double sn = std::sin(iso.phi);
  const Interval domain{curve.domain().lo + iso.a11, curve.domain().hi + iso.a11};
  return AdmissibleCurve(
      [curve, iso, c, sn](const Jet3& s) {
        const Jet3 x{s.v - iso.a11, s.d1, s.d2, s.d3};
        const CoordJets j = curve.jets(x);
        return CoordJets{jet_const(iso.a21) + iso.a22 * x + c * j.y + sn * j.z,
                         jet_const(iso.a31) + iso.a32 * x - sn * j.y + c * j.z};
      },
      domain);
}

}  // namespace galcurve
