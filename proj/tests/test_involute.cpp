#include <cmath>
#include <random>

#include "doctest.h"
#include "galcurve/checks.hpp"
#include "galcurve/involute.hpp"
#include "galcurve/numerics.hpp"
#include "oracles.hpp"

using namespace galcurve;

namespace {

AdmissibleCurve curve(std::string_view text, Interval domain, ParamMap params = {}) {
  return to_admissible(CurveSpec::parse(text, std::move(params), domain));
}

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Usage;
}

double field(const SampleRecord& r, std::string_view name) {
  for (const auto& [key, value] : r.fields) {
    if (key == name) return value;
  }
  FAIL("missing field ", name);
  return 0.0;
}

PlanarCurve circle_target(double plane_x) {
  return PlanarCurve(plane_x, [](const Jet3& u) { return CoordJets{cos(u), sin(u)}; },
                     {-100, 100});
}

// Euclidean curvature of a plane curve from its first two derivatives.
double plane_curvature(double y1, double z1, double y2, double z2) {
  return std::abs(y1 * z2 - z1 * y2) / std::pow(y1 * y1 + z1 * z1, 1.5);
}

}  // namespace

TEST_CASE("make_involute") {
  const InvolutePair p = make_involute(curve("s;cos(s);sin(s)", {0, 1.5}), 2.0);
  CHECK(p.involute.plane_x() == 2.0);
  CHECK(p.involute.point(0.0) == GVec3{2, 1, 2});
  CHECK(p.check_domain.lo == 0.0);
  CHECK(p.check_domain.hi == 1.5);

  const InvolutePair q = make_involute(curve("s;cos(s);sin(s)", {0, 3}), 2.0);
  CHECK(q.check_domain.hi == 2.0 - kLambdaMin);
  const GVec3 at_c = q.involute.point(2.0);
  CHECK(at_c == GVec3{2, std::cos(2.0), std::sin(2.0)});

  CHECK(kind_of([] { (void)make_involute(curve("s;s;0", {0, 1}), 2.0); }) ==
        ErrorKind::FrameUndefined);
  CHECK(kind_of([] { (void)make_involute(curve("s;cos(s);sin(s)", {0, 1}), 0.0); }) ==
        ErrorKind::EmptyDomain);
}

TEST_CASE("involute_frame examples") {
  const InvolutePair helix = make_involute(curve("s;cos(s);sin(s)", {0, 1.5}), 2.0);
  const InvoluteFrame h = involute_frame(helix, 0.0);
  CHECK(h.T_star == GVec3{0, -1, 0});
  CHECK(h.dsstar_ds == 2.0);
  CHECK(h.kappa_star == 0.5);

  const InvolutePair cubic = make_involute(curve("s;s^2;s^3", {-0.5, 0.5}), 1.0);
  CHECK(std::abs(involute_frame(cubic, 0.0).kappa_star - 1.5) <= 1e-15);

  const InvolutePair wide = make_involute(curve("s;cos(s);sin(s)", {0, 3}), 2.0);
  CHECK(kind_of([&] { (void)involute_frame(wide, 2.0 - 1e-15); }) == ErrorKind::SingularLambda);
  CHECK(kind_of([&] { (void)involute_frame(wide, 2.5); }) == ErrorKind::OutOfDomain);
  CHECK(kind_of([&] { (void)involute_frame(wide, -1.0); }) == ErrorKind::OutOfDomain);
}

TEST_CASE("involute tangent is Galilean-orthogonal to the base tangent") {
  const InvolutePair p = make_involute(curve("s;s^2;s^3", {0, 1}), 2.0);
  for (double s : linspace(p.check_domain, 25)) {
    const FrenetFrame f = frenet(p.base, s);
    const InvoluteFrame inv = involute_frame(p, s);
    CHECK(g_dot(f.T, inv.T_star) == 0.0);
    const PlanarFrenet pf = planar_frenet(p.involute, s);
    CHECK(std::abs(pf.T_star.y - inv.T_star.y) <= 1e-14);
    CHECK(std::abs(pf.T_star.z - inv.T_star.z) <= 1e-14);
  }
}

TEST_CASE("involute of (s, s^2, s^3) against its closed form") {
  // y* = 2cs - s^2, z* = 3cs^2 - 2s^3.
  const double c = 2.0;
  const InvolutePair p = make_involute(curve("s;s^2;s^3", {0, 1}), c);
  for (double s : linspace({0, 1}, 21)) {
    const CoordJets j = p.involute.jets(s);
    CHECK(std::abs(j.y.v - (2 * c * s - s * s)) <= 1e-14);
    CHECK(std::abs(j.z.v - (3 * c * s * s - 2 * s * s * s)) <= 1e-14);
    const double y1 = 2 * c - 2 * s, z1 = 6 * c * s - 6 * s * s;
    const double y2 = -2.0, z2 = 6 * c - 12 * s;
    CHECK(std::abs(j.y.d1 - y1) <= 1e-14);
    CHECK(std::abs(j.z.d2 - z2) <= 1e-14);
    const double oracle = plane_curvature(y1, z1, y2, z2);
    const double formula = involute_frame(p, s).kappa_star;
    CHECK(std::abs(formula - oracle) <= 1e-12 * std::max(1.0, oracle));
  }
}

TEST_CASE("check_thm31") {
  const CheckReport h = check_thm31(make_involute(curve("s;cos(s);sin(s)", {0, 1.5}), 2.0), 100);
  CHECK(h.pass);
  CHECK(h.max_abs_deviation < 1e-12);
  CHECK(h.grid.size() == 100);
  CHECK(h.theorem_id == "3.1");

  const InvolutePair cubic = make_involute(curve("s;s^2;s^3", {0, 0.9}), 1.0);
  CHECK(check_thm31(cubic, 100).pass);
  CHECK(kind_of([&] { (void)check_thm31(cubic, 1); }) == ErrorKind::Usage);
}

TEST_CASE("check_thm32") {
  const InvolutePair helix = make_involute(curve("s;cos(s);sin(s)", {0, 1.5}), 2.0);
  const CheckReport h = check_thm32(helix, 100);
  CHECK(h.pass);
  for (const SampleRecord& r : h.samples) {
    CHECK(field(r, "curvature_deviation") < 1e-9);
    CHECK(field(r, "speed_deviation") < 1e-9);
    CHECK(std::abs(field(r, "kappa_euclid") - 1.0 / (2.0 - r.s)) <= 1e-9);
    CHECK(std::abs(field(r, "speed") - (2.0 - r.s)) <= 1e-9);
  }

  const InvolutePair h2 = make_involute(
      curve("s;a*cos(w*s);a*sin(w*s)", {0, 2}, {{"a", 1}, {"w", 2}}), 3.0);
  const CheckReport r2 = check_thm32(h2, 50);
  CHECK(r2.pass);
  for (const SampleRecord& r : r2.samples) {
    CHECK(std::abs(field(r, "kappa_euclid") - 2.0 / ((3.0 - r.s) * 4.0)) <= 1e-9);
  }

  CHECK(check_thm32(make_involute(curve("s;s^2;s^3", {0, 1}), 2.0), 100).pass);
}

TEST_CASE("check_thm33") {
  const CheckReport h = check_thm33(make_involute(curve("s;cos(s);sin(s)", {0, 1.5}), 2.0), 100);
  CHECK(h.pass);
  CHECK(h.max_abs_deviation < 1e-12);
  for (const SampleRecord& r : h.samples) {
    CHECK(std::abs(std::abs(field(r, "f")) - 1.0) < 1e-12);
    CHECK(std::abs(field(r, "tau_over_kappa") - 1.0) < 1e-12);
  }

  const CheckReport p = check_thm33(make_involute(curve("s;s^2;s^3", {0, 1}), 2.0), 100);
  CHECK(p.pass);
  double spread = 0.0;
  for (const SampleRecord& r : p.samples) {
    CHECK(std::abs(std::abs(field(r, "f")) - 1.0) < 1e-12);
    spread = std::max(spread, field(r, "ratio_deviation"));
  }
  CHECK(spread > 0.1);

  CHECK(kind_of([] {
          (void)check_thm33(make_involute(curve("s;s^2;0", {0, 1}), 2.0), 20);
        }) == ErrorKind::PlanarBase);
}

TEST_CASE("evolute of a circle is inverted by make_involute") {
  const PlanarCurve target = circle_target(2.0);
  const Evolute ev = make_evolute({target, Expr::parse("s"), {}, 0.0, 0.0, 0.0, 1.0, 1e-3});
  CHECK(ev.curve.domain().lo == 0.0);
  CHECK(ev.curve.domain().hi == 1.0);
  const InvolutePair back = make_involute(ev.curve, 2.0);
  double worst = 0.0;
  for (double s : linspace({0, 1}, 501)) {
    const GVec3 d = back.involute.point(s) - target.point(s);
    worst = std::max({worst, std::abs(d.x), std::abs(d.y), std::abs(d.z)});
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("evolute recovers a helix from its involute") {
  const AdmissibleCurve helix = curve("s;cos(s);sin(s)", {0, 1.5});
  const InvolutePair p = make_involute(helix, 2.0);
  const Evolute ev = make_evolute({p.involute, Expr::parse("s"), {}, 1.0, 0.0, 0.0, 1.0, 1e-3});
  for (double s : linspace({0, 1}, 101)) {
    CHECK(std::abs(ev.curve.point(s).y - std::cos(s)) <= 1e-6);
    CHECK(std::abs(ev.curve.point(s).z - std::sin(s)) <= 1e-6);
  }
}

TEST_CASE("make_evolute preconditions") {
  const PlanarCurve target = circle_target(2.0);
  CHECK(kind_of([&] {
          (void)make_evolute({target, Expr::parse("s"), {}, 0, 0, 0.0, 2.0, 1e-3});
        }) == ErrorKind::SingularLambda);
  CHECK(kind_of([&] {
          (void)make_evolute({target, Expr::parse("s"), {}, 0, 0, 0.0, 1.0, 0.0});
        }) == ErrorKind::Usage);
  CHECK(kind_of([&] {
          (void)make_evolute({target, Expr::parse("s"), {}, 0, 0, 1.0, 1.0, 1e-3});
        }) == ErrorKind::Usage);
  CHECK(kind_of([&] {
          (void)make_evolute({target, Expr::parse("k*s"), {}, 0, 0, 0.0, 1.0, 1e-3});
        }) == ErrorKind::UnboundParameter);
  const PlanarCurve short_target(2.0, [](const Jet3& u) { return CoordJets{cos(u), sin(u)}; },
                                 {0, 0.5});
  CHECK(kind_of([&] {
          (void)make_evolute({short_target, Expr::parse("s"), {}, 0, 0, 0.0, 1.0, 1e-3});
        }) == ErrorKind::OutOfDomain);
}

TEST_CASE("step is shrunk to land on the end point") {
  const PlanarCurve target = circle_target(2.0);
  const Evolute coarse = make_evolute({target, Expr::parse("s"), {}, 0, 0, 0.0, 1.0, 0.3});
  CHECK(coarse.curve.domain().hi == 1.0);
  CHECK(std::isfinite(coarse.curve.point(1.0).y));
}

TEST_CASE("check_thm34") {
  const PlanarCurve target = circle_target(2.0);
  const Expr u = Expr::parse("s");
  const Evolute beta = make_evolute({target, u, {}, 0, 0, 0.0, 1.0, 1e-3});
  const Evolute gamma = make_evolute({target, u, {}, 1, 0, 0.0, 1.0, 1e-3});
  const CheckReport r = check_thm34(beta, gamma, target, 100);
  CHECK(r.pass);
  for (const SampleRecord& rec : r.samples) CHECK(field(rec, "f") == 1.0);
  CHECK(check_thm34(beta, beta, target, 100).pass);

  const Evolute other_u = make_evolute({target, Expr::parse("s+0"), {}, 1, 0, 0.0, 1.0, 1e-3});
  CHECK(kind_of([&] { (void)check_thm34(beta, other_u, target, 10); }) ==
        ErrorKind::MismatchedTargets);
  const PlanarCurve lookalike = circle_target(2.0);
  CHECK(kind_of([&] { (void)check_thm34(beta, gamma, lookalike, 10); }) ==
        ErrorKind::MismatchedTargets);
}

TEST_CASE("involute arc length matches the polyline length") {
  for (const char* text : {"s;cos(s);sin(s)", "s;s^2;s^3", "s;sin(2*s);s^2/2"}) {
    const InvolutePair p = make_involute(curve(text, {0, 1.5}), 2.0);
    const double integrated = involute_arc_length(p, 0.0, 1.5);
    const double chords = testing::polyline_length(
        [&](double s) {
          const GVec3 q = p.involute.point(s);
          return std::array<double, 2>{q.y, q.z};
        },
        0.0, 1.5, 4000);
    INFO(text, ": ", integrated, " vs ", chords);
    CHECK(std::abs(integrated - chords) <= 1e-8);
  }
}

TEST_CASE("involutes commute with B6 isometries") {
  const AdmissibleCurve base = curve("s;s^2;s^3", {0, 1});
  const InvolutePair p = make_involute(base, 2.0);
  std::mt19937_64 rng(21);
  for (int k = 0; k < 20; ++k) {
    const IsometryParams iso = random_b6(rng);
    const InvolutePair q = make_involute(transform_curve(base, iso), 2.0 + iso.a11);
    for (double s : linspace({0, 1}, 11)) {
      const GVec3 want = apply_point(iso, p.involute.point(s));
      const GVec3 got = q.involute.point(s + iso.a11);
      CHECK(std::abs(got.x - want.x) <= 1e-12);
      CHECK(std::abs(got.y - want.y) <= 1e-10);
      CHECK(std::abs(got.z - want.z) <= 1e-10);
      CHECK(std::abs(involute_frame(q, s + iso.a11).kappa_star -
                     involute_frame(p, s).kappa_star) <= 1e-9);
    }
  }
}

TEST_CASE("involute and report invariants") {
  for (const char* text : {"s;cos(s);sin(s)", "s;s^2;s^3", "s;exp(s/3);sin(2*s)"}) {
    const InvolutePair p = make_involute(curve(text, {0, 1.5}), 2.0);
    for (double s : linspace(p.check_domain, 40)) {
      const GVec3 want = p.base.point(s) + (2.0 - s) * frenet(p.base, s).T;
      const GVec3 got = p.involute.point(s);
      CHECK(got.x == 2.0);
      CHECK(std::abs(got.y - want.y) <= 1e-12);
      CHECK(std::abs(got.z - want.z) <= 1e-12);
    }
    for (double tol : {1e-300, 1e-13, 1e-9, 1.0}) {
      for (const CheckReport& r :
           {check_thm31(p, 20, tol), check_thm32(p, 20, tol), check_thm33(p, 20, tol)}) {
        CHECK(r.pass == (r.max_abs_deviation <= tol));
        CHECK(r.samples.size() == r.grid.size());
      }
    }
  }
}
