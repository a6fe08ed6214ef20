#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

namespace emscat {

using cplx = std::complex<double>;

// Small value types used throughout: a real 3-vector and a complex 3-vector.
// Only the operations the solvers actually need are provided.

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

constexpr double norm2(const Vec3& v) { return dot(v, v); }

inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }

inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

struct CVec3 {
  cplx x{0.0, 0.0}, y{0.0, 0.0}, z{0.0, 0.0};

  CVec3() = default;
  CVec3(cplx xx, cplx yy, cplx zz) : x(xx), y(yy), z(zz) {}
  explicit CVec3(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

  cplx operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

  CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  CVec3 operator*(cplx s) const { return {x * s, y * s, z * s}; }
  CVec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  CVec3 operator-() const { return {-x, -y, -z}; }
  CVec3& operator+=(const CVec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  CVec3& operator-=(const CVec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  CVec3& operator*=(cplx s) { x *= s; y *= s; z *= s; return *this; }
};

inline CVec3 operator*(cplx s, const CVec3& v) { return v * s; }
inline CVec3 operator*(double s, const CVec3& v) { return v * s; }

inline cplx dot(const Vec3& a, const CVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline cplx dot(const CVec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Unconjugated bilinear product; callers that need the Hermitian inner
// product take conjugates explicitly.
inline cplx dot(const CVec3& a, const CVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline CVec3 cross(const Vec3& a, const CVec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline CVec3 cross(const CVec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline CVec3 cross(const CVec3& a, const CVec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm2(const CVec3& v) {
  return std::norm(v.x) + std::norm(v.y) + std::norm(v.z);
}

inline double norm(const CVec3& v) { return std::sqrt(norm2(v)); }

inline Vec3 real(const CVec3& v) { return {v.x.real(), v.y.real(), v.z.real()}; }
inline Vec3 imag(const CVec3& v) { return {v.x.imag(), v.y.imag(), v.z.imag()}; }
inline CVec3 conj(const CVec3& v) { return {std::conj(v.x), std::conj(v.y), std::conj(v.z)}; }

}  // namespace emscat
