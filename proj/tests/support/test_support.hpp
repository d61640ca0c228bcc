#pragma once

#include <cmath>
#include <random>

#include <numbers>
#include <string>

#include "lfr/geometry.hpp"
#include "lfr/scene.hpp"

namespace lfr::testing {

inline Vector3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        const Vector3 v{g(rng), g(rng), g(rng)};
        if (v.norm2() > 1e-6) return v.normalized();
    }
}

inline Vector3 random_point(std::mt19937_64& rng, double half_extent) {
    std::uniform_real_distribution<double> u(-half_extent, half_extent);
    return {u(rng), u(rng), u(rng)};
}

/// Angle between two unit vectors, robust near 0 and pi.
inline double angle_between(const Vector3& a, const Vector3& b) { return std::atan2(a.cross(b).norm(), a.dot(b)); }

/// Random valid scene: box enclosure, optional extra material, 0-2 arrays
/// with arbitrary tile orientations, AP and 1-9 UEs inside the box.
inline Scene random_scene(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto uni = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };

    Scene s;
    s.frequency_ghz = uni(1.0, 100.0);
    s.tx_power_dbm = uni(0.0, 50.0);
    if (pick(2) == 0) {
        s.materials["glass"] = MaterialSpec{"glass", uni(1.0, 8.0), uni(-0.5, 0.5), uni(0.0, 0.1), uni(0.0, 1.5),
                                            1.0, 100.0};
    }
    std::vector<std::string> names;
    for (const auto& [name, m] : s.materials) names.push_back(name);
    auto material = [&] { return names[static_cast<std::size_t>(pick(static_cast<int>(names.size())))]; };

    const double lx = uni(4.0, 30.0), ly = uni(4.0, 30.0), h = uni(2.6, 5.0);
    const Vector3 o{uni(-50.0, 50.0), uni(-50.0, 50.0), 0.0};
    s.surfaces = {
        Rect3{o, {lx, 0, 0}, {0, ly, 0}, material()},
        Rect3{o + Vector3{0, 0, h}, {lx, 0, 0}, {0, ly, 0}, material()},
        Rect3{o, {lx, 0, 0}, {0, 0, h}, material()},
        Rect3{o + Vector3{0, ly, 0}, {lx, 0, 0}, {0, 0, h}, material()},
        Rect3{o, {0, ly, 0}, {0, 0, h}, material()},
        Rect3{o + Vector3{lx, 0, 0}, {0, ly, 0}, {0, 0, h}, material()},
    };
    auto inside = [&] { return o + Vector3{uni(0.1, 0.9) * lx, uni(0.1, 0.9) * ly, uni(0.1, 0.9) * h}; };

    const int n_arrays = pick(3);
    for (int a = 0; a < n_arrays; ++a) {
        ReflectorArray arr = build_array(inside(), random_unit(rng), 1 + pick(10), 1 + pick(7), uni(0.05, 0.3),
                                         uni(0.05, 0.4), pick(2) == 0 ? "metal" : material());
        for (Tile& t : arr.tiles) {
            t.theta = uni(0.0, std::numbers::pi);
            t.phi = uni(-std::numbers::pi, std::numbers::pi);
        }
        s.arrays.push_back(std::move(arr));
    }
    s.ap = inside();
    const int n_ue = 1 + pick(9);
    for (int k = 0; k < n_ue; ++k) s.ue_positions.push_back(inside());
    s.measurement = MeasurementPlane{uni(0.5, 2.0), uni(0.1, 1.0), o.x, o.x + lx, o.y, o.y + ly};
    return s;
}

}  // namespace lfr::testing
