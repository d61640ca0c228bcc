#pragma once
/*
geometry.hpp
------------
Geometric kernel: vectors, bisector normals, spherical angles, specular
reflection, tile rotation and ray/rectangle intersection.

All functions are pure; lengths are meters, angles radians.
*/

#include <array>
#include <cmath>
#include <optional>
#include <string>

namespace lfr {

struct Vector3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vector3() = default;
    constexpr Vector3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vector3 operator+(const Vector3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vector3 operator-(const Vector3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vector3 operator-() const { return {-x, -y, -z}; }
    constexpr Vector3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vector3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vector3& operator+=(const Vector3& o) {
        x += o.x; y += o.y; z += o.z;
        return *this;
    }
    constexpr Vector3& operator-=(const Vector3& o) {
        x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    constexpr Vector3& operator*=(double s) {
        x *= s; y *= s; z *= s;
        return *this;
    }

    constexpr double dot(const Vector3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vector3 cross(const Vector3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    constexpr double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }

    /// Throws ZeroVector for the zero vector.
    Vector3 normalized() const;

    bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

    constexpr bool operator==(const Vector3&) const = default;
};

constexpr Vector3 operator*(double s, const Vector3& v) { return v * s; }

inline double distance(const Vector3& a, const Vector3& b) { return (a - b).norm(); }

/// Component-wise comparison with an absolute tolerance.
bool approx_equal(const Vector3& a, const Vector3& b, double tol);

/// r >= 0, theta in [0, pi] measured from +z, phi in (-pi, pi].
struct SphericalAngles {
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

struct Ray {
    Vector3 origin;
    Vector3 direction;  // unit length
};

/// Row-major 3x3 matrix; used for tile orientations.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return {}; }
    static Mat3 rotation_y(double angle);
    static Mat3 rotation_z(double angle);

    double operator()(int row, int col) const { return m[static_cast<std::size_t>(row * 3 + col)]; }
    double& operator()(int row, int col) { return m[static_cast<std::size_t>(row * 3 + col)]; }

    Mat3 operator*(const Mat3& o) const;
    Vector3 operator*(const Vector3& v) const;
    Mat3 transposed() const;
    double determinant() const;

    Vector3 column(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }
};

/// Planar rectangle spanned by two orthogonal edges from `corner`.
struct Rect3 {
    Vector3 corner;
    Vector3 edge_u;
    Vector3 edge_v;
    std::string material_id;

    Vector3 normal() const { return edge_u.cross(edge_v).normalized(); }
    Vector3 center() const { return corner + 0.5 * edge_u + 0.5 * edge_v; }
    double area() const { return edge_u.cross(edge_v).norm(); }
    std::array<Vector3, 4> corners() const {
        return {corner, corner + edge_u, corner + edge_u + edge_v, corner + edge_v};
    }
};

struct Hit {
    double t = 0.0;
    Vector3 point;
    double cos_incidence = 0.0;
};

/// Minimum accepted hit distance after leaving a surface.
inline constexpr double kSelfIntersectEps = 1e-6;

/// Unit normal that mirrors the ray b->a into a->c at pivot `a`:
/// normalize(AB/|AB| + AC/|AC|).
/// Throws CoincidentPoint when b == a or c == a, DegenerateBisector when the
/// two unit directions cancel.
Vector3 bisector_normal(const Vector3& a, const Vector3& b, const Vector3& c);

/// Throws ZeroVector on the zero vector. On the z-axis phi is 0; on the
/// negative x half-axis phi is pi.
SphericalAngles cartesian_to_spherical(const Vector3& v);
Vector3 spherical_to_cartesian(const SphericalAngles& s);

/// Wraps an azimuth into (-pi, pi].
double wrap_azimuth(double phi);

/// d - 2 (d.n) n
Vector3 reflect_direction(const Vector3& d, const Vector3& n);

/// Rz(phi) * Ry(theta): takes the flat, +z facing tile to an orientation
/// whose normal has elevation theta and azimuth phi.
Mat3 tile_rotation(double theta, double phi);

/// Nearest hit with t > kSelfIntersectEps. Points on the rectangle boundary
/// count as hits.
std::optional<Hit> ray_rect_intersect(const Ray& ray, const Rect3& rect);

/// Image of `p` mirrored through the plane containing `rect`.
Vector3 mirror_point(const Vector3& p, const Rect3& rect);

}  // namespace lfr
