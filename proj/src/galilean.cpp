#include "galcurve/galilean.hpp"

#include <cmath>

namespace galcurve {

std::ostream& operator<<(std::ostream& os, const GVec3& v) {
  return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
}

VectorClass classify(const GVec3& u) {
  return std::abs(u.x) <= kIsoEps ? VectorClass::Isotropic
                                  : VectorClass::NonIsotropic;
}

double g_dot(const GVec3& u, const GVec3& v) {
  if (is_isotropic(u) && is_isotropic(v)) {
    return u.y * v.y + u.z * v.z;
  }
  return u.x * v.x;
}

double g_norm(const GVec3& u) {
  if (is_isotropic(u)) {
    return std::hypot(u.y, u.z);
  }
  return std::abs(u.x);
}

GVec3 g_cross(const GVec3& u, const GVec3& v) {
  if (is_isotropic(u) && is_isotropic(v)) {
    return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
  }
  return {0.0, v.x * u.z - u.x * v.z, u.x * v.y - v.x * u.y};
}

double euclidean_norm(const GVec3& u) {
  return std::sqrt(u.x * u.x + u.y * u.y + u.z * u.z);
}

GVec3 apply_point(const IsometryParams& iso, const GVec3& p) {
  const GVec3 lin = apply_vector(iso, p);
  return {iso.a11 + lin.x, iso.a21 + lin.y, iso.a31 + lin.z};
}

GVec3 apply_vector(const IsometryParams& iso, const GVec3& v) {
  const double c = std::cos(iso.phi);
  const double s = std::sin(iso.phi);
  return {iso.a12 * v.x,
          iso.a22 * v.x + iso.a23 * v.y * c + iso.a23 * v.z * s,
          iso.a32 * v.x - iso.a23 * v.y * s + iso.a23 * v.z * c};
}

}  // namespace galcurve
