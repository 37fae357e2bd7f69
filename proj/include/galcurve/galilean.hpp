#pragma once

#include <ostream>

namespace galcurve {

/// |x| at or below this classifies a vector as isotropic.
inline constexpr double kIsoEps = 1e-12;

/// A vector of G3. x is the absolute (Galilean) coordinate; (y, z) span the
/// Euclidean planes x = const.
struct GVec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr GVec3& operator+=(const GVec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr GVec3& operator-=(const GVec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr GVec3& operator*=(double k) {
    x *= k;
    y *= k;
    z *= k;
    return *this;
  }

  friend constexpr GVec3 operator+(GVec3 a, const GVec3& b) { return a += b; }
  friend constexpr GVec3 operator-(GVec3 a, const GVec3& b) { return a -= b; }
  friend constexpr GVec3 operator-(const GVec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr GVec3 operator*(double k, GVec3 a) { return a *= k; }
  friend constexpr GVec3 operator*(GVec3 a, double k) { return a *= k; }
  friend constexpr bool operator==(const GVec3&, const GVec3&) = default;
};

std::ostream& operator<<(std::ostream& os, const GVec3& v);

enum class VectorClass { Isotropic, NonIsotropic };

VectorClass classify(const GVec3& u);

inline bool is_isotropic(const GVec3& u) {
  return classify(u) == VectorClass::Isotropic;
}

/// Degenerate Galilean scalar product: x1*x2 unless both vectors are
/// isotropic, in which case the Euclidean product of the (y, z) parts.
double g_dot(const GVec3& u, const GVec3& v);

/// |x| for non-isotropic u, Euclidean length of (y, z) otherwise.
double g_norm(const GVec3& u);

/// Galilean cross product. With a non-isotropic argument this is the
/// determinant with first row (0, e2, e3); two isotropic arguments fall back
/// to the Euclidean cross product.
GVec3 g_cross(const GVec3& u, const GVec3& v);

/// Euclidean length of all three components. Only used for residuals.
double euclidean_norm(const GVec3& u);

/// Parameters of the similarity group H8 acting on G3:
///
///   x' = a11 + a12 x
///   y' = a21 + a22 x + a23 y cos(phi) + a23 z sin(phi)
///   z' = a31 + a32 x - a23 y sin(phi) + a23 z cos(phi)
///
/// Defaults are the identity. a12 = a23 = 1 selects the isometry group B6.
struct IsometryParams {
  double a11 = 0.0;
  double a21 = 0.0;
  double a31 = 0.0;
  double a12 = 1.0;
  double a22 = 0.0;
  double a32 = 0.0;
  double a23 = 1.0;
  double phi = 0.0;

  bool is_b6() const noexcept { return a12 == 1.0 && a23 == 1.0; }
};

GVec3 apply_point(const IsometryParams& iso, const GVec3& p);

/// Linear part of apply_point (translations dropped), for tangent vectors.
GVec3 apply_vector(const IsometryParams& iso, const GVec3& v);

}  // namespace galcurve
