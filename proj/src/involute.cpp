#include "galcurve/involute.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "galcurve/format.hpp"

namespace galcurve {

InvolutePair make_involute(const AdmissibleCurve& base, double c) {
  const Interval& dom = base.domain();
  const Interval check{dom.lo, std::min(dom.hi, c - kLambdaMin)};
  if (!(check.lo < check.hi)) {
    throw Error(ErrorKind::EmptyDomain,
                "no part of [" + format_double(dom.lo) + ", " + format_double(dom.hi) +
                    "] lies below c - " + format_double(kLambdaMin) + " = " +
                    format_double(c - kLambdaMin));
  }
  for (double s : linspace(check, kAdmitScanPoints)) {
    (void)frenet(base, s);
  }

  auto fn = [base, c](const Jet3& sigma) {
    const double s = sigma.v;
    const CoordJets j = base.jets(s);
    const double lambda = c - s;
    constexpr double unknown = std::numeric_limits<double>::quiet_NaN();
    auto lift = [&](const Jet3& q) {
      return chain(sigma, q.v + lambda * q.d1, lambda * q.d2, -q.d2 + lambda * q.d3, unknown);
    };
    return CoordJets{lift(j.y), lift(j.z)};
  };
  return InvolutePair{base, c, PlanarCurve(c, std::move(fn), dom), check};
}

InvoluteFrame involute_frame(const InvolutePair& pair, double s) {
  const double lambda = pair.c - s;
  if (std::abs(lambda) < kLambdaMin) {
    throw Error(ErrorKind::SingularLambda,
                "s = " + format_double(s) + " is within " + format_double(kLambdaMin) +
                    " of c = " + format_double(pair.c));
  }
  if (!pair.check_domain.contains(s)) {
    throw Error(ErrorKind::OutOfDomain, "s = " + format_double(s) +
                                            " outside the involute check domain [" +
                                            format_double(pair.check_domain.lo) + ", " +
                                            format_double(pair.check_domain.hi) + "]");
  }
  const FrenetFrame f = frenet(pair.base, s);
  const double sign = f.tau < 0.0 ? -1.0 : 1.0;
  InvoluteFrame out;
  out.T_star = f.N;
  out.N_star = sign * f.B;
  out.dsstar_ds = lambda * f.kappa;
  out.kappa_star = std::abs(f.tau) / out.dsstar_ds;
  return out;
}

namespace {

struct HermiteNodes {
  double s0 = 0.0;
  double h = 0.0;
  std::vector<double> y, z, dy, dz;

  static Jet3 segment(const Jet3& sigma, double tau, double h, double p0, double m0, double p1,
                      double m1) {
    const double slope = (p1 - p0) / h;
    const double a = (3.0 * slope - 2.0 * m0 - m1) / h;
    const double b = (m0 + m1 - 2.0 * slope) / (h * h);
    return chain(sigma, p0 + tau * (m0 + tau * (a + tau * b)), m0 + tau * (2.0 * a + 3.0 * b * tau),
                 2.0 * a + 6.0 * b * tau, 6.0 * b);
  }

  CoordJets operator()(const Jet3& sigma) const {
    const std::size_t segments = y.size() - 1;
    const double u = (sigma.v - s0) / h;
    const std::size_t k =
        u <= 0.0 ? 0 : std::min(segments - 1, static_cast<std::size_t>(std::floor(u)));
    const double tau = sigma.v - (s0 + static_cast<double>(k) * h);
    return {segment(sigma, tau, h, y[k], dy[k], y[k + 1], dy[k + 1]),
            segment(sigma, tau, h, z[k], dz[k], z[k + 1], dz[k + 1])};
  }
};

}  // namespace

Evolute make_evolute(const EvoluteProblem& problem) {
  const double c = problem.target.plane_x();
  if (!(problem.step > 0.0)) raise(ErrorKind::Usage, "evolute step must be positive");
  if (!(problem.s_start < problem.s_end)) {
    raise(ErrorKind::Usage, "evolute interval needs s_start < s_end");
  }
  if (!(problem.s_end < c)) {
    throw Error(ErrorKind::SingularLambda,
                "evolute integration over [" + format_double(problem.s_start) + ", " +
                    format_double(problem.s_end) + "] reaches the plane coordinate c = " +
                    format_double(c));
  }
  for (const std::string& p : problem.correspondence.free_params()) {
    if (!problem.params.contains(p)) {
      raise(ErrorKind::UnboundParameter, "parameter '" + p + "' is not bound");
    }
  }

  auto target_at = [&](double s) {
    return problem.target.point(eval(problem.correspondence, s, problem.params));
  };
  auto rhs = [&](double s, double y, double z, double& dy, double& dz) {
    const GVec3 p = target_at(s);
    dy = (p.y - y) / (c - s);
    dz = (p.z - z) / (c - s);
  };

  const double span = problem.s_end - problem.s_start;
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(span / problem.step - 1e-9)));
  const double h = span / static_cast<double>(steps);

  HermiteNodes nodes;
  nodes.s0 = problem.s_start;
  nodes.h = h;
  nodes.y.reserve(steps + 1);
  double y = problem.y0;
  double z = problem.z0;
  for (std::size_t k = 0;; ++k) {
    const double s = k == steps ? problem.s_end : problem.s_start + static_cast<double>(k) * h;
    double k1y, k1z;
    rhs(s, y, z, k1y, k1z);
    nodes.y.push_back(y);
    nodes.z.push_back(z);
    nodes.dy.push_back(k1y);
    nodes.dz.push_back(k1z);
    if (k == steps) break;
    double k2y, k2z, k3y, k3z, k4y, k4z;
    rhs(s + 0.5 * h, y + 0.5 * h * k1y, z + 0.5 * h * k1z, k2y, k2z);
    rhs(s + 0.5 * h, y + 0.5 * h * k2y, z + 0.5 * h * k2z, k3y, k3z);
    rhs(s + h, y + h * k3y, z + h * k3z, k4y, k4z);
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
  }

  return Evolute{AdmissibleCurve(std::move(nodes), Interval{problem.s_start, problem.s_end}),
                 problem};
}

}  // namespace galcurve
