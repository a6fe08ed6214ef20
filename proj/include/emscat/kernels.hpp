#pragma once

#include <cstddef>
#include <vector>

#include "emscat/vec3.hpp"

namespace emscat {

// Structure-of-arrays point-source cloud for the pairwise field sums that
// dominate the many-body and continuum solvers.  Amplitudes are stored with
// any weights premultiplied, so the kernels only evaluate geometry factors.
struct SourceCloud {
  std::vector<double> px, py, pz;                    // positions
  std::vector<double> ax_re, ax_im, ay_re, ay_im, az_re, az_im;  // amplitudes

  std::size_t size() const { return px.size(); }

  void reserve(std::size_t n);
  void push_back(const Vec3& p, const CVec3& a);
  void set_amplitude(std::size_t i, const CVec3& a);
  CVec3 amplitude(std::size_t i) const;
  Vec3 position(std::size_t i) const;
};

enum class SimdKind { scalar, avx2 };

const char* simd_name(SimdKind kind);

// Runtime implementation choice: AVX2 when compiled in and supported by the
// CPU, overridable through the environment variable EMSCAT_SIMD=scalar|avx2.
SimdKind active_simd();
bool simd_available(SimdKind kind);

// out[t] += sum_s [ s1(r) A_s + s2(r) (rh.A_s) rh ],  r = |x_t - y_s|,
// skipping pairs with r <= excl.  This is curl curl sum_s g(x,y_s) A_s.
void dipole_field_sum(double k, const std::vector<Vec3>& targets,
                      const SourceCloud& sources, CVec3* out, double excl,
                      SimdKind kind);

// out[t] += sum_s grad_x g(x_t, y_s) x A_s, skipping pairs with r <= excl.
void curl_field_sum(double k, const std::vector<Vec3>& targets,
                    const SourceCloud& sources, CVec3* out, double excl,
                    SimdKind kind);

inline void dipole_field_sum(double k, const std::vector<Vec3>& targets,
                             const SourceCloud& sources, CVec3* out, double excl) {
  dipole_field_sum(k, targets, sources, out, excl, active_simd());
}

inline void curl_field_sum(double k, const std::vector<Vec3>& targets,
                           const SourceCloud& sources, CVec3* out, double excl) {
  curl_field_sum(k, targets, sources, out, excl, active_simd());
}

namespace detail {
void dipole_field_sum_scalar(double k, const std::vector<Vec3>& targets,
                             const SourceCloud& sources, CVec3* out, double excl);
void curl_field_sum_scalar(double k, const std::vector<Vec3>& targets,
                           const SourceCloud& sources, CVec3* out, double excl);
void dipole_field_sum_avx2(double k, const std::vector<Vec3>& targets,
                           const SourceCloud& sources, CVec3* out, double excl);
void curl_field_sum_avx2(double k, const std::vector<Vec3>& targets,
                         const SourceCloud& sources, CVec3* out, double excl);
bool avx2_compiled_in();
}  // namespace detail

}  // namespace emscat
