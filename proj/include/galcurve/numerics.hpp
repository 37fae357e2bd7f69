#pragma once

#include <functional>

#include "galcurve/involute.hpp"

namespace galcurve {

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
/// Recursion stops at depth 50.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

/// Arc length of the involute between s0 and s1 obtained by integrating
/// ds*/ds = (c - s) kappa(s) of the base.
double involute_arc_length(const InvolutePair& pair, double s0, double s1, double tol = 1e-10);

}  // namespace galcurve
