#pragma once
// Internal: segment-by-segment walk of one specular ray.

#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "lfr/raytrace.hpp"

namespace lfr::detail {

struct Segment {
    Vector3 start;
    Vector3 direction;
    double length;               // +inf when the ray escapes
    double unfolded_before;      // path length up to `start`
    double power;                // |prod gamma|^2 so far
    std::span<const int> sequence;  // surfaces hit before `start`
};

/// Calls on_segment(const Segment&) for each straight piece of the ray,
/// including the last one that ends on the terminating surface. Returns the
/// terminal state and fills `path` when non-null.
template <typename OnSegment>
Terminal walk_ray(const SceneGeometry& g, const Ray& ray, const TraceOptions& opt, std::vector<int>& seq,
                  OnSegment&& on_segment, TracedPath* path = nullptr) {
    seq.clear();
    Vector3 pos = ray.origin;
    Vector3 dir = ray.direction;
    double unfolded = 0.0;
    std::complex<double> amp{1.0, 0.0};
    if (path) {
        path->origin = ray.origin;
        path->final_direction = dir;
    }
    for (;;) {
        const auto hit = g.nearest_hit(Ray{pos, dir});
        const double len = hit ? hit->second.t : std::numeric_limits<double>::infinity();
        on_segment(Segment{pos, dir, len, unfolded, std::norm(amp), seq});
        if (!hit) return Terminal::escaped;
        if (static_cast<int>(seq.size()) >= opt.max_bounces) return Terminal::reached_max_bounces;

        const auto& [id, h] = *hit;
        const SceneGeometry::Facet& f = g.facet(id);
        const std::complex<double> gamma = bounce_coefficient(f.eta, h.cos_incidence, opt.polarization);
        amp *= gamma;
        unfolded += h.t;
        pos = h.point;
        dir = reflect_direction(dir, f.unit_normal);
        seq.push_back(id);
        if (path) {
            path->bounce_points.push_back(h.point);
            path->surface_ids.push_back(id);
            path->coefficients.push_back(gamma);
            path->unfolded_length = unfolded;
            path->final_direction = dir;
        }
        if (std::abs(amp) < opt.min_amplitude) return Terminal::absorbed;
    }
}

}  // namespace lfr::detail
