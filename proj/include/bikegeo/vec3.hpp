#ifndef BIKEGEO_VEC3_HPP
#define BIKEGEO_VEC3_HPP

#include <cmath>
#include <ostream>

namespace bikegeo {

// Plain value-type 3-vector.  Lengths are dimensionless, the bike frame
// has unit length throughout.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  constexpr double norm_sq() const { return x * x + y * y + z * z; }
  Vec3 normalized() const { return *this / norm(); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Scalar triple product a . (b x c).
constexpr double triple(const Vec3& a, const Vec3& b, const Vec3& c) {
  return dot(a, cross(b, c));
}

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

// Angle between two vectors, in [0, pi].  Robust near 0 and pi.
inline double angle_between(const Vec3& a, const Vec3& b) {
  return 2.0 * std::atan2((a * b.norm() - b * a.norm()).norm(),
                          (a * b.norm() + b * a.norm()).norm());
}

// Any unit vector perpendicular to u (|u| > 0).
inline Vec3 any_perpendicular(const Vec3& u) {
  const Vec3 trial = std::abs(u.x) < 0.9 * u.norm() ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  return cross(u, trial).normalized();
}

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

// Column-major-free tiny 3x3 matrix, used for rigid motions.
struct Mat3 {
  // m[row][col]
  double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  static Mat3 identity() { return Mat3{}; }

  Vec3 operator*(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }

  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        r.m[i][j] = 0.0;
        for (int k = 0; k < 3; ++k) r.m[i][j] += m[i][k] * o.m[k][j];
      }
    return r;
  }

  Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }

  double trace() const { return m[0][0] + m[1][1] + m[2][2]; }

  double det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }
};

// Rotation by angle about a unit axis (Rodrigues).
inline Mat3 rotation_about(const Vec3& axis, double angle) {
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  const double ux = axis.x, uy = axis.y, uz = axis.z;
  Mat3 r;
  r.m[0][0] = c + ux * ux * t;
  r.m[0][1] = ux * uy * t - uz * s;
  r.m[0][2] = ux * uz * t + uy * s;
  r.m[1][0] = uy * ux * t + uz * s;
  r.m[1][1] = c + uy * uy * t;
  r.m[1][2] = uy * uz * t - ux * s;
  r.m[2][0] = uz * ux * t - uy * s;
  r.m[2][1] = uz * uy * t + ux * s;
  r.m[2][2] = c + uz * uz * t;
  return r;
}

}  // namespace bikegeo

#endif  // BIKEGEO_VEC3_HPP
