#include "lfr/geometry.hpp"

#include <algorithm>
#include <numbers>

#include "lfr/errors.hpp"

namespace lfr {

namespace {

constexpr double kDegenerateHalfSum = 1e-12;
constexpr double kOnAxis2 = 1e-18;
constexpr double kParallel = 1e-12;
// Parametric slack on the rectangle boundary so shared wall edges stay closed.
constexpr double kEdgeSlack = 1e-9;

}  // namespace

Vector3 Vector3::normalized() const {
    const double n = norm();
    if (n == 0.0 || !std::isfinite(n)) {
        throw ZeroVector();
    }
    return *this / n;
}

bool approx_equal(const Vector3& a, const Vector3& b, double tol) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol && std::abs(a.z - b.z) <= tol;
}

Mat3 Mat3::rotation_y(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Mat3 r;
    r.m = {c, 0, s, 0, 1, 0, -s, 0, c};
    return r;
}

Mat3 Mat3::rotation_z(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Mat3 r;
    r.m = {c, -s, 0, s, c, 0, 0, 0, 1};
    return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 3; ++k) acc += (*this)(i, k) * o(k, j);
            r(i, j) = acc;
        }
    }
    return r;
}

Vector3 Mat3::operator*(const Vector3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
}

Mat3 Mat3::transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
}

double Mat3::determinant() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

Vector3 bisector_normal(const Vector3& a, const Vector3& b, const Vector3& c) {
    const Vector3 ab = b - a;
    const Vector3 ac = c - a;
    if (ab.norm2() == 0.0 || ac.norm2() == 0.0) {
        throw CoincidentPoint();
    }
    const Vector3 half_sum = 0.5 * (ab / ab.norm() + ac / ac.norm());
    const double len = half_sum.norm();
    if (len < kDegenerateHalfSum) {
        throw DegenerateBisector();
    }
    return half_sum / len;
}

double wrap_azimuth(double phi) {
    constexpr double pi = std::numbers::pi;
    double w = std::remainder(phi, 2.0 * pi);  // [-pi, pi]
    if (w <= -pi) w += 2.0 * pi;
    return w;
}

SphericalAngles cartesian_to_spherical(const Vector3& v) {
    const double r = v.norm();
    if (r == 0.0) {
        throw ZeroVector();
    }
    const double rho2 = v.x * v.x + v.y * v.y;
    // atan2 forms equal arccos(z/r) and sgn(y) arccos(x/rho) but keep full
    // precision near the poles and near y = 0.
    const double theta = std::atan2(std::sqrt(rho2), v.z);
    double phi = 0.0;
    if (rho2 >= kOnAxis2) {
        phi = std::atan2(v.y, v.x);
        if (phi <= -std::numbers::pi) phi = std::numbers::pi;  // y == -0.0, x < 0
    }
    return {r, theta, phi};
}

Vector3 spherical_to_cartesian(const SphericalAngles& s) {
    const double st = std::sin(s.theta);
    return {s.r * st * std::cos(s.phi), s.r * st * std::sin(s.phi), s.r * std::cos(s.theta)};
}

Vector3 reflect_direction(const Vector3& d, const Vector3& n) {
    return d - 2.0 * d.dot(n) * n;
}

Mat3 tile_rotation(double theta, double phi) {
    return Mat3::rotation_z(phi) * Mat3::rotation_y(theta);
}

std::optional<Hit> ray_rect_intersect(const Ray& ray, const Rect3& rect) {
    const Vector3 n = rect.edge_u.cross(rect.edge_v);
    const double denom = ray.direction.dot(n);
    const double n_len = n.norm();
    if (std::abs(denom) <= kParallel * n_len) {
        return std::nullopt;
    }
    const double t = (rect.corner - ray.origin).dot(n) / denom;
    if (!(t > kSelfIntersectEps)) {
        return std::nullopt;
    }
    const Vector3 p = ray.origin + t * ray.direction;
    const Vector3 rel = p - rect.corner;
    const double u = rel.dot(rect.edge_u) / rect.edge_u.norm2();
    const double v = rel.dot(rect.edge_v) / rect.edge_v.norm2();
    if (u < -kEdgeSlack || u > 1.0 + kEdgeSlack || v < -kEdgeSlack || v > 1.0 + kEdgeSlack) {
        return std::nullopt;
    }
    return Hit{t, p, std::abs(denom) / n_len};
}

Vector3 mirror_point(const Vector3& p, const Rect3& rect) {
    const Vector3 n = rect.normal();
    return p - 2.0 * (p - rect.corner).dot(n) * n;
}

}  // namespace lfr
