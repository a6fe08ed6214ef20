#include "emscat/fields.hpp"

#include <cmath>

#include "emscat/green.hpp"

namespace emscat {

CVec3 cloud_field(const DipoleCloud& cloud, const Vec3& x) {
  CVec3 out;
  const std::vector<Vec3> targets{x};
  curl_field_sum(cloud.k, targets, cloud.sources, &out, 0.0);
  return out;
}

CVec3 cloud_radial_derivative(const DipoleCloud& cloud, const Vec3& x) {
  const Vec3 xh = normalized(x);
  CVec3 out;
  for (std::size_t m = 0; m < cloud.sources.size(); ++m) {
    const Vec3 y = cloud.sources.position(m);
    const CVec3 c = cloud.sources.amplitude(m);
    out += cross(hessian_apply(cloud.k, x, y, xh), c);
  }
  return out;
}

std::vector<Vec3> fibonacci_directions(int n) {
  std::vector<Vec3> dirs;
  dirs.reserve(n);
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * pi * std::fmod(i / golden, 1.0);
    dirs.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
  }
  return dirs;
}

double radiation_defect(const DipoleCloud& cloud, double radius, int n_dirs) {
  double worst = 0.0;
  const cplx ik(0.0, cloud.k);
  for (const Vec3& d : fibonacci_directions(n_dirs)) {
    const Vec3 x = radius * d;
    const CVec3 v = cloud_field(cloud, x);
    const CVec3 dv = cloud_radial_derivative(cloud, x);
    worst = std::max(worst, radius * norm(dv - ik * v));
  }
  return worst;
}

double relative_l2(const std::vector<CVec3>& test, const std::vector<CVec3>& ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    num += norm2(test[i] - ref[i]);
    den += norm2(ref[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace emscat
