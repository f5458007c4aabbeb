#pragma once

#include <cmath>

namespace devsurf {

/// Three-component vector over a scalar type; the scalar may be double or a Jet.
template <class T>
struct Vec3 {
  T x{}, y{}, z{};

  constexpr Vec3() = default;
  constexpr Vec3(T x_, T y_, T z_) : x(x_), y(y_), z(z_) {}

  template <class U>
  explicit constexpr Vec3(const Vec3<U>& o) : x(T(o.x)), y(T(o.y)), z(T(o.z)) {}

  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }

  template <class S>
  friend Vec3 operator*(const Vec3& a, const S& s) { return {a.x * s, a.y * s, a.z * s}; }
  template <class S>
  friend Vec3 operator*(const S& s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  template <class S>
  friend Vec3 operator/(const Vec3& a, const S& s) { return {a.x / s, a.y / s, a.z / s}; }

  friend bool operator==(const Vec3&, const Vec3&) = default;

  T& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  const T& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

using Point3 = Vec3<double>;
using Vector3 = Vec3<double>;

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// det(a, b, c) with a, b, c as columns.
template <class T>
T det(const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& c) {
  return dot(a, cross(b, c));
}

template <class T>
T norm2(const Vec3<T>& a) {
  return dot(a, a);
}

template <class T>
T norm(const Vec3<T>& a) {
  using std::sqrt;
  return sqrt(norm2(a));
}

template <class T>
Vec3<T> normalized(const Vec3<T>& a) {
  return a / norm(a);
}

inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }

}  // namespace devsurf
