#include "lfr/raytrace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "walk.hpp"

namespace lfr {

std::string to_string(Terminal t) {
    switch (t) {
        case Terminal::reached_max_bounces: return "reached-max-bounces";
        case Terminal::escaped: return "escaped";
        case Terminal::absorbed: return "absorbed";
        case Terminal::reached_target: return "reached-target";
    }
    return "escaped";
}

std::complex<double> TracedPath::total_coefficient() const {
    std::complex<double> acc{1.0, 0.0};
    for (const auto& c : coefficients) acc *= c;
    return acc;
}

SceneGeometry::SceneGeometry(const Scene& scene) : wavelength_(scene.wavelength()) {
    auto eta_of = [&](const std::string& id) { return complex_permittivity(scene.material(id), scene.frequency_ghz); };

    for (const Rect3& r : scene.surfaces) {
        facets_.push_back(Facet{r, r.normal(), eta_of(r.material_id), -1, -1});
    }
    wall_count_ = facets_.size();
    for (int i = 0; i < static_cast<int>(wall_count_); ++i) {
        Group g{i, i + 1, {}, {}};
        groups_.push_back(g);
    }

    for (std::size_t a = 0; a < scene.arrays.size(); ++a) {
        const ReflectorArray& arr = scene.arrays[a];
        Group g;
        g.begin = static_cast<int>(facets_.size());
        constexpr double inf = std::numeric_limits<double>::infinity();
        g.lo = {inf, inf, inf};
        g.hi = {-inf, -inf, -inf};
        for (std::size_t t = 0; t < arr.tiles.size(); ++t) {
            const Rect3 r = arr.tiles[t].rect();
            facets_.push_back(Facet{r, r.normal(), eta_of(arr.tiles[t].material_id), static_cast<int>(a),
                                    static_cast<int>(t)});
            for (const Vector3& c : r.corners()) {
                g.lo = {std::min(g.lo.x, c.x), std::min(g.lo.y, c.y), std::min(g.lo.z, c.z)};
                g.hi = {std::max(g.hi.x, c.x), std::max(g.hi.y, c.y), std::max(g.hi.z, c.z)};
            }
        }
        g.end = static_cast<int>(facets_.size());
        const Vector3 pad{1e-6, 1e-6, 1e-6};
        g.lo -= pad;
        g.hi += pad;
        groups_.push_back(g);
    }
}

namespace {

// Slab test; true when the ray may reach the box before t_max.
bool ray_hits_box(const Ray& ray, const Vector3& lo, const Vector3& hi, double t_max) {
    double t0 = 0.0, t1 = t_max;
    const double o[3] = {ray.origin.x, ray.origin.y, ray.origin.z};
    const double d[3] = {ray.direction.x, ray.direction.y, ray.direction.z};
    const double l[3] = {lo.x, lo.y, lo.z};
    const double h[3] = {hi.x, hi.y, hi.z};
    for (int k = 0; k < 3; ++k) {
        if (d[k] == 0.0) {
            if (o[k] < l[k] || o[k] > h[k]) return false;
            continue;
        }
        double a = (l[k] - o[k]) / d[k];
        double b = (h[k] - o[k]) / d[k];
        if (a > b) std::swap(a, b);
        t0 = std::max(t0, a);
        t1 = std::min(t1, b);
        if (t0 > t1) return false;
    }
    return true;
}

}  // namespace

std::optional<std::pair<int, Hit>> SceneGeometry::nearest_hit(const Ray& ray) const {
    std::optional<std::pair<int, Hit>> best;
    double best_t = std::numeric_limits<double>::infinity();
    for (const Group& g : groups_) {
        if (g.end - g.begin > 1 && !ray_hits_box(ray, g.lo, g.hi, best_t)) continue;
        for (int i = g.begin; i < g.end; ++i) {
            const auto h = ray_rect_intersect(ray, facets_[static_cast<std::size_t>(i)].rect);
            if (h && h->t < best_t) {
                best_t = h->t;
                best = std::make_pair(i, *h);
            }
        }
    }
    return best;
}

bool SceneGeometry::segment_blocked(const Vector3& a, const Vector3& b) const {
    const Vector3 d = b - a;
    const double len = d.norm();
    if (len <= 2.0 * kSelfIntersectEps) return false;
    const auto hit = nearest_hit(Ray{a, d / len});
    return hit && hit->second.t < len - kSelfIntersectEps;
}

Vector3 fibonacci_direction(std::size_t i, std::size_t n) {
    // Golden-angle spiral with z stratified at the centers of n equal bands.
    static const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(i);
    return {r * std::cos(phi), r * std::sin(phi), z};
}

std::vector<Vector3> launch_directions(std::size_t n) {
    std::vector<Vector3> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(fibonacci_direction(i, n));
    return out;
}

TracedPath trace(const SceneGeometry& geometry, const Ray& ray, const TraceOptions& options) {
    TracedPath path;
    std::vector<int> seq;
    path.terminal = detail::walk_ray(geometry, ray, options, seq, [](const detail::Segment&) {}, &path);
    return path;
}

TracedPath trace(const Scene& scene, const Ray& ray, int max_bounces, double min_amplitude) {
    const SceneGeometry g(scene);
    TraceOptions opt;
    opt.max_bounces = max_bounces;
    opt.min_amplitude = min_amplitude;
    return trace(g, ray, opt);
}

double friis_gain(double wavelength, double distance) {
    const double f = wavelength / (4.0 * std::numbers::pi * distance);
    return f * f;
}

}  // namespace lfr
