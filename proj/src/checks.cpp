#include "galcurve/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "galcurve/format.hpp"

namespace galcurve {

namespace {

void require_samples(int n) {
  if (n < 2) raise(ErrorKind::Usage, "checks need n >= 2 samples, got " + std::to_string(n));
}

CheckReport finish(std::string id, std::vector<double> grid, std::vector<SampleRecord> samples,
                   double tol, std::string notes) {
  CheckReport r;
  r.theorem_id = std::move(id);
  r.grid = std::move(grid);
  r.samples = std::move(samples);
  r.tolerance = tol;
  r.max_abs_deviation = 0.0;
  for (const SampleRecord& rec : r.samples) {
    // NaN must fail the check, so compare in the negated form.
    if (!(rec.deviation <= r.max_abs_deviation)) r.max_abs_deviation = rec.deviation;
  }
  r.pass = r.max_abs_deviation <= tol;
  r.notes = std::move(notes);
  return r;
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

CheckReport check_thm31(const InvolutePair& pair, int n, double tol) {
  require_samples(n);
  std::vector<double> grid = linspace(pair.check_domain, n);
  std::vector<SampleRecord> samples;
  samples.reserve(grid.size());
  for (double s : grid) {
    const double distance = g_norm(pair.involute.point(s) - pair.base.point(s));
    const double expected = std::abs(pair.c - s);
    samples.push_back({s, std::abs(distance - expected), {{"distance", distance}, {"abs_c_minus_s", expected}}});
  }
  return finish("3.1", std::move(grid), std::move(samples), tol,
                "distance ||alpha*(s) - alpha(s)|| against |c - s| with c = " +
                    format_double(pair.c));
}

CheckReport check_thm32(const InvolutePair& pair, int n, double tol) {
  require_samples(n);
  std::vector<double> grid = linspace(pair.check_domain, n);
  std::vector<SampleRecord> samples;
  samples.reserve(grid.size());
  for (double s : grid) {
    const FrenetFrame f = frenet(pair.base, s);
    const double lambda = pair.c - s;
    const double formula = std::abs(f.tau) / (lambda * f.kappa);
    const double rate = lambda * f.kappa;
    const PlanarFrenet oracle = planar_frenet(pair.involute, s);
    const double curv_dev = std::abs(oracle.kappa_euclid - formula) / std::max(1.0, std::abs(formula));
    const double speed_dev = std::abs(oracle.speed - rate);
    samples.push_back({s,
                       std::max(curv_dev, speed_dev),
                       {{"kappa_euclid", oracle.kappa_euclid},
                        {"kappa_star", formula},
                        {"speed", oracle.speed},
                        {"dsstar_ds", rate},
                        {"curvature_deviation", curv_dev},
                        {"speed_deviation", speed_dev}}});
  }
  return finish("3.2", std::move(grid), std::move(samples), tol,
                "Euclidean curvature of the involute against |tau|/((c - s) kappa); planar speed "
                "against (c - s) kappa; c = " +
                    format_double(pair.c));
}

CheckReport check_thm33(const InvolutePair& pair, int n, double tol) {
  require_samples(n);
  std::vector<double> grid = linspace(pair.check_domain, n);
  std::vector<double> f(grid.size());
  std::vector<double> ratio(grid.size());
  double max_tau = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid[i];
    const FrenetFrame fr = frenet(pair.base, s);
    const InvoluteFrame inv = involute_frame(pair, s);
    f[i] = g_dot(fr.T, g_cross(inv.T_star, inv.N_star));
    ratio[i] = fr.tau / fr.kappa;
    max_tau = std::max(max_tau, std::abs(fr.tau));
  }
  if (!(max_tau > kPlanarTauEps)) {
    throw Error(ErrorKind::PlanarBase, "base curve is planar (max |tau| = " +
                                           format_double(max_tau) +
                                           "); the helix statement needs a non-planar evolute");
  }
  const double f_mean = mean(f);
  const double ratio_mean = mean(ratio);
  double ratio_spread = 0.0;
  std::vector<SampleRecord> samples;
  samples.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ratio_dev = std::abs(ratio[i] - ratio_mean);
    ratio_spread = std::max(ratio_spread, ratio_dev);
    samples.push_back({grid[i],
                       std::abs(f[i] - f_mean),
                       {{"f", f[i]}, {"tau_over_kappa", ratio[i]}, {"ratio_deviation", ratio_dev}}});
  }
  return finish("3.3", std::move(grid), std::move(samples), tol,
                "f = <T, T* ^ N*>; mean f = " + format_double(f_mean) +
                    "; auxiliary tau/kappa mean = " + format_double(ratio_mean) +
                    ", max deviation = " + format_double(ratio_spread) + " (not part of pass)");
}

CheckReport check_thm34(const Evolute& beta, const Evolute& gamma,
                        const PlanarCurve& shared_target, int n, double tol) {
  require_samples(n);
  const EvoluteProblem& pb = beta.problem;
  const EvoluteProblem& pg = gamma.problem;
  if (!pb.target.same_curve(shared_target) || !pg.target.same_curve(shared_target)) {
    raise(ErrorKind::MismatchedTargets, "evolutes were not built against the shared target");
  }
  if (!(pb.correspondence == pg.correspondence) || pb.params != pg.params) {
    raise(ErrorKind::MismatchedTargets, "evolutes use different correspondences: '" +
                                            pb.correspondence.str() + "' vs '" +
                                            pg.correspondence.str() + "'");
  }
  const Interval common{std::max(beta.curve.domain().lo, gamma.curve.domain().lo),
                        std::min(beta.curve.domain().hi, gamma.curve.domain().hi)};
  if (!(common.lo < common.hi)) {
    raise(ErrorKind::EmptyDomain, "the two evolutes share no parameter interval");
  }
  std::vector<double> grid = linspace(common, n);
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    f[i] = g_dot(eval3(beta.curve, grid[i]).r1, eval3(gamma.curve, grid[i]).r1);
  }
  const double f_mean = mean(f);
  std::vector<SampleRecord> samples;
  samples.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    samples.push_back({grid[i], std::abs(f[i] - f_mean), {{"f", f[i]}}});
  }
  return finish("3.4", std::move(grid), std::move(samples), tol,
                "f = <T_beta, T_gamma>; mean f = " + format_double(f_mean));
}

CheckReport check_frenet_ode(const AdmissibleCurve& curve, int n, double tol, double h) {
  require_samples(n);
  const Interval inner{curve.domain().lo + h, curve.domain().hi - h};
  if (!(inner.lo < inner.hi)) {
    raise(ErrorKind::EmptyDomain, "domain too short for central differences");
  }
  std::vector<double> grid = linspace(inner, n);
  std::vector<SampleRecord> samples;
  samples.reserve(grid.size());
  for (double s : grid) {
    const FrenetFrame f = frenet(curve, s);
    const FrenetFrame fp = frenet(curve, s + h);
    const FrenetFrame fm = frenet(curve, s - h);
    const double inv2h = 1.0 / (2.0 * h);
    const GVec3 dT = inv2h * (fp.T - fm.T);
    const GVec3 dN = inv2h * (fp.N - fm.N);
    const GVec3 dB = inv2h * (fp.B - fm.B);
    const double rT = euclidean_norm(dT - f.kappa * f.N);
    const double rN = euclidean_norm(dN - f.tau * f.B);
    const double rB = euclidean_norm(dB + f.tau * f.N);
    samples.push_back({s,
                       std::max({rT, rN, rB}),
                       {{"kappa", f.kappa}, {"tau", f.tau}, {"residual_T", rT}, {"residual_N", rN},
                        {"residual_B", rB}}});
  }
  return finish("frenet-ode", std::move(grid), std::move(samples), tol,
                "central differences with step " + format_double(h) +
                    " against T' = kappa N, N' = tau B, B' = -tau N");
}

CheckReport check_isometry(const AdmissibleCurve& curve, int n, int count, std::uint64_t seed,
                           double tol) {
  require_samples(n);
  if (count < 1) raise(ErrorKind::Usage, "isometry check needs at least one isometry");
  std::vector<double> grid = linspace(curve.domain(), n);
  std::vector<FrenetFrame> reference;
  reference.reserve(grid.size());
  for (double s : grid) reference.push_back(frenet(curve, s));

  std::vector<double> kappa_dev(grid.size(), 0.0);
  std::vector<double> tau_dev(grid.size(), 0.0);
  std::mt19937_64 rng(seed);
  for (int k = 0; k < count; ++k) {
    const IsometryParams iso = random_b6(rng);
    const AdmissibleCurve image = transform_curve(curve, iso);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const FrenetFrame moved = frenet(image, grid[i] + iso.a11);
      kappa_dev[i] = std::max(kappa_dev[i], std::abs(moved.kappa - reference[i].kappa));
      tau_dev[i] = std::max(tau_dev[i], std::abs(moved.tau - reference[i].tau));
    }
  }

  IsometryParams scaled;
  scaled.a12 = 2.0;
  bool rejected = false;
  try {
    (void)transform_curve(curve, scaled);
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::NotAnIsometry;
  }

  std::vector<SampleRecord> samples;
  samples.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    samples.push_back({grid[i],
                       std::max(kappa_dev[i], tau_dev[i]),
                       {{"kappa", reference[i].kappa},
                        {"tau", reference[i].tau},
                        {"kappa_deviation", kappa_dev[i]},
                        {"tau_deviation", tau_dev[i]}}});
  }
  return finish("isometry", std::move(grid), std::move(samples), tol,
                         std::to_string(count) + " random B6 isometries (seed " +
                             std::to_string(seed) + "); non-B6 parameters " +
                             (rejected ? "rejected" : "NOT rejected"));
}

}  // namespace galcurve
