#include <cstdlib>
#include <string>

#include "emscat/errors.hpp"
#include "emscat/kernels.hpp"

namespace emscat {

const char* simd_name(SimdKind kind) {
  return kind == SimdKind::avx2 ? "avx2" : "scalar";
}

bool simd_available(SimdKind kind) {
  if (kind == SimdKind::scalar) return true;
#if defined(__x86_64__) || defined(_M_X64)
  return detail::avx2_compiled_in() && __builtin_cpu_supports("avx2") &&
         __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

SimdKind active_simd() {
  static const SimdKind chosen = [] {
    if (const char* env = std::getenv("EMSCAT_SIMD")) {
      const std::string v(env);
      if (v == "scalar") return SimdKind::scalar;
      if (v == "avx2") {
        if (!simd_available(SimdKind::avx2)) {
          throw ValidationError(
              "EMSCAT_SIMD=avx2 requested but AVX2+FMA is unavailable");
        }
        return SimdKind::avx2;
      }
      throw ValidationError("EMSCAT_SIMD must be 'scalar' or 'avx2', got '" +
                            v + "'");
    }
    return simd_available(SimdKind::avx2) ? SimdKind::avx2 : SimdKind::scalar;
  }();
  return chosen;
}

void dipole_field_sum(double k, const std::vector<Vec3>& targets,
                      const SourceCloud& sources, CVec3* out, double excl,
                      SimdKind kind) {
  if (kind == SimdKind::avx2) {
    detail::dipole_field_sum_avx2(k, targets, sources, out, excl);
  } else {
    detail::dipole_field_sum_scalar(k, targets, sources, out, excl);
  }
}

void curl_field_sum(double k, const std::vector<Vec3>& targets,
                    const SourceCloud& sources, CVec3* out, double excl,
                    SimdKind kind) {
  if (kind == SimdKind::avx2) {
    detail::curl_field_sum_avx2(k, targets, sources, out, excl);
  } else {
    detail::curl_field_sum_scalar(k, targets, sources, out, excl);
  }
}

}  // namespace emscat
