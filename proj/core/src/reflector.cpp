#include "lfr/reflector.hpp"

#include <algorithm>

#include "lfr/errors.hpp"

namespace lfr {

namespace {

void set_normal(Tile& tile, const Vector3& n) {
    const SphericalAngles s = cartesian_to_spherical(n);
    tile.theta = s.theta;
    tile.phi = s.phi;
}

// Distance from `target` to the ray origin + t * dir, t >= 0.
double ray_point_distance(const Vector3& origin, const Vector3& dir, const Vector3& target) {
    const double t = std::max(0.0, (target - origin).dot(dir));
    return distance(origin + t * dir, target);
}

bool segment_blocked(const Vector3& a, const Vector3& b, std::span<const Rect3> obstacles) {
    const Vector3 d = b - a;
    const double len = d.norm();
    const Ray ray{a, d / len};
    for (const Rect3& r : obstacles) {
        if (const auto hit = ray_rect_intersect(ray, r); hit && hit->t < len - kSelfIntersectEps) return true;
    }
    return false;
}

}  // namespace

ReflectorArray reset_to_mounting(const ReflectorArray& array) {
    ReflectorArray out = array;
    const SphericalAngles flush = array.mounting_orientation();
    for (Tile& t : out.tiles) {
        t.theta = flush.theta;
        t.phi = flush.phi;
    }
    return out;
}

ReflectorArray configure_simple(const ReflectorArray& array, double yaw) {
    ReflectorArray out = array;
    for (Tile& t : out.tiles) t.phi = wrap_azimuth(t.phi + yaw);
    return out;
}

ReflectorArray configure_beamfocus(const ReflectorArray& array, const Vector3& ap, const Vector3& ue) {
    ReflectorArray out = array;
    for (std::size_t i = 0; i < out.tiles.size(); ++i) {
        Tile& t = out.tiles[i];
        try {
            set_normal(t, bisector_normal(t.center, ap, ue));
        } catch (const DegenerateBisector&) {
            throw DegenerateBisector(i);
        }
    }
    return out;
}

std::pair<ReflectorArray, ReflectorArray> configure_chained(const ReflectorArray& first, const ReflectorArray& second,
                                                            const Vector3& ap, const Vector3& ue,
                                                            std::span<const Rect3> obstacles) {
    if (first.tiles.size() != second.tiles.size()) {
        throw TileCountMismatch(first.tiles.size(), second.tiles.size());
    }
    ReflectorArray a = first;
    ReflectorArray b = second;
    for (std::size_t i = 0; i < a.tiles.size(); ++i) {
        const Vector3 p1 = a.tiles[i].center;
        const Vector3 p2 = b.tiles[i].center;
        if (!obstacles.empty() && segment_blocked(p1, p2, obstacles)) throw OccludedPair(i);
        try {
            set_normal(a.tiles[i], bisector_normal(p1, ap, p2));
            set_normal(b.tiles[i], bisector_normal(p2, p1, ue));
        } catch (const DegenerateBisector&) {
            throw DegenerateBisector(i);
        }
    }
    return {std::move(a), std::move(b)};
}

double specular_miss_distance(const Tile& tile, const Vector3& from, const Vector3& target) {
    const Vector3 in = (tile.center - from).normalized();
    const Vector3 out = reflect_direction(in, tile.normal());
    return ray_point_distance(tile.center, out, target);
}

double chained_miss_distance(const Tile& a, const Tile& b, const Vector3& from, const Vector3& target) {
    const Vector3 in = (a.center - from).normalized();
    const Vector3 mid = reflect_direction(in, a.normal());
    // The reflected ray must land on b's center before bouncing again.
    const double miss_b = ray_point_distance(a.center, mid, b.center);
    const Vector3 out = reflect_direction(mid, b.normal());
    return std::max(miss_b, ray_point_distance(b.center, out, target));
}

std::string to_string(ReflectorMode m) {
    switch (m) {
        case ReflectorMode::none: return "none";
        case ReflectorMode::simple: return "simple";
        case ReflectorMode::beamfocus: return "beamfocus";
        case ReflectorMode::chained: return "chained";
    }
    return "none";
}

ReflectorMode parse_reflector_mode(const std::string& s) {
    if (s == "none") return ReflectorMode::none;
    if (s == "simple") return ReflectorMode::simple;
    if (s == "beamfocus") return ReflectorMode::beamfocus;
    if (s == "chained") return ReflectorMode::chained;
    throw ParamError("unknown reflector mode '" + s + "'");
}

Scene configure_scene(const Scene& scene, ReflectorMode mode, int ue_number, double yaw) {
    Scene out = scene;
    auto target = [&]() -> const Vector3& {
        if (ue_number < 1 || static_cast<std::size_t>(ue_number) > scene.ue_positions.size()) {
            throw ParamError("UE number " + std::to_string(ue_number) + " outside [1, " +
                             std::to_string(scene.ue_positions.size()) + "]");
        }
        return scene.ue_positions[static_cast<std::size_t>(ue_number - 1)];
    };
    switch (mode) {
        case ReflectorMode::none:
            out.arrays.clear();
            break;
        case ReflectorMode::simple:
            for (auto& a : out.arrays) a = configure_simple(reset_to_mounting(a), yaw);
            break;
        case ReflectorMode::beamfocus: {
            if (out.arrays.empty()) throw ParamError("beamfocus needs at least one array");
            const Vector3 ue = target();
            for (auto& a : out.arrays) a = configure_beamfocus(a, scene.ap, ue);
            break;
        }
        case ReflectorMode::chained: {
            if (out.arrays.size() != 2) {
                throw ParamError("chained mode needs exactly two arrays, scene has " + std::to_string(out.arrays.size()));
            }
            const Vector3 ue = target();
            auto [a, b] = configure_chained(out.arrays[0], out.arrays[1], scene.ap, ue, scene.surfaces);
            out.arrays[0] = std::move(a);
            out.arrays[1] = std::move(b);
            break;
        }
    }
    return out;
}

}  // namespace lfr
