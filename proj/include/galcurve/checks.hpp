#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "galcurve/curve.hpp"
#include "galcurve/involute.hpp"

namespace galcurve {

struct SampleRecord {
  double s = 0.0;
  double deviation = 0.0;
  /// Extra named values recorded at this sample, in output order.
  std::vector<std::pair<std::string, double>> fields;
};

/// Outcome of sampling one identity over a grid. pass is
/// max_abs_deviation <= tolerance.
struct CheckReport {
  std::string theorem_id;
  std::vector<double> grid;
  std::vector<SampleRecord> samples;
  double max_abs_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string notes;
};

inline constexpr double kDefaultTolThm31 = 1e-9;
inline constexpr double kDefaultTolThm32 = 1e-6;
inline constexpr double kDefaultTolThm33 = 1e-9;
inline constexpr double kDefaultTolThm34 = 1e-9;
inline constexpr double kDefaultTolFrenetOde = 1e-5;
inline constexpr double kDefaultTolIsometry = 1e-9;
inline constexpr double kFrenetOdeStep = 1e-4;
/// Below this max |tau| the base counts as planar.
inline constexpr double kPlanarTauEps = 1e-9;

/// Distance between corresponding points equals |c - s|.
CheckReport check_thm31(const InvolutePair& pair, int n, double tol = kDefaultTolThm31);

/// Euclidean curvature of the involute against |tau| / ((c - s) kappa), and
/// the planar speed against (c - s) kappa.
CheckReport check_thm32(const InvolutePair& pair, int n, double tol = kDefaultTolThm32);

/// Constancy of f = <T, T* ^ N*>. Throws PlanarBase for a base with tau == 0.
/// The ratio tau/kappa is recorded per sample but does not affect pass.
CheckReport check_thm33(const InvolutePair& pair, int n, double tol = kDefaultTolThm33);

/// Constancy of f = <T_beta, T_gamma> for two evolutes of the same target.
/// Throws MismatchedTargets unless both were built against shared_target
/// with the same correspondence.
CheckReport check_thm34(const Evolute& beta, const Evolute& gamma,
                        const PlanarCurve& shared_target, int n,
                        double tol = kDefaultTolThm34);

/// Central differences of T, N, B (step h) against kappa N, tau B, -tau N.
/// Samples stay h away from the domain ends.
CheckReport check_frenet_ode(const AdmissibleCurve& curve, int n,
                             double tol = kDefaultTolFrenetOde, double h = kFrenetOdeStep);

/// Draws `count` random B6 isometries from a seeded generator and compares
/// kappa and tau of the transformed curve at s + a11 with the originals.
CheckReport check_isometry(const AdmissibleCurve& curve, int n, int count = 100,
                           std::uint64_t seed = 20240601, double tol = kDefaultTolIsometry);

/// Random B6 isometry: translations in [-5, 5], shear in [-2, 2], angle in
/// [0, 2 pi).
template <typename Rng>
IsometryParams random_b6(Rng& rng);

}  // namespace galcurve

#include <numbers>
#include <random>

namespace galcurve {

template <typename Rng>
IsometryParams random_b6(Rng& rng) {
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  std::uniform_real_distribution<double> shear(-2.0, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  IsometryParams iso;
  iso.a11 = shift(rng);
  iso.a21 = shift(rng);
  iso.a31 = shift(rng);
  iso.a22 = shear(rng);
  iso.a32 = shear(rng);
  iso.phi = angle(rng);
  return iso;
}

}  // namespace galcurve
