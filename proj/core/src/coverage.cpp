#include <algorithm>
#include <cmath>
#include <numbers>

#include "lfr/raytrace.hpp"
#include "parallel.hpp"
#include "walk.hpp"

namespace lfr {

double CoverageMap::gain_db(int ix, int iy) const {
    const double g = at(ix, iy);
    return g > 0.0 ? 10.0 * std::log10(g) : -std::numeric_limits<double>::infinity();
}

std::optional<std::pair<int, int>> CoverageMap::cell_of(const Vector3& p) const {
    const int k = plane.cell_index(p.x, p.y);
    if (k < 0) return std::nullopt;
    return std::make_pair(k % nx, k / nx);
}

double CoverageMap::gain_at(const Vector3& p) const {
    const auto c = cell_of(p);
    return c ? at(c->first, c->second) : 0.0;
}

double CoverageMap::neighborhood_max(const Vector3& p) const {
    const auto c = cell_of(p);
    if (!c) return 0.0;
    double best = 0.0;
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            const int ix = c->first + dx, iy = c->second + dy;
            if (ix >= 0 && ix < nx && iy >= 0 && iy < ny) best = std::max(best, at(ix, iy));
        }
    }
    return best;
}

CoverageMap coverage_map(const Scene& scene, const CoverageOptions& options) {
    const SceneGeometry geometry(scene);
    CoverageMap map;
    map.plane = scene.measurement;
    map.nx = map.plane.nx();
    map.ny = map.plane.ny();
    map.ray_count = options.n_rays;
    const std::size_t n_cells = static_cast<std::size_t>(map.nx) * static_cast<std::size_t>(map.ny);
    map.cells.assign(n_cells, 0.0);
    if (options.n_rays == 0) return map;

    const double lambda = geometry.wavelength();
    const double height = map.plane.height;
    // lambda^2 / (4 pi N A): the (lambda / 4 pi d)^2 spreading factor times the
    // 4 pi d^2 / (N A |cos|) inverse ray density; d cancels.
    const double base = lambda * lambda /
                        (4.0 * std::numbers::pi * static_cast<double>(options.n_rays) * map.plane.cell_area());
    const double cos_floor = options.min_crossing_cos;

    const std::size_t n_batches = detail::batch_count(options.n_rays);
    std::vector<std::vector<double>> partial(n_batches);

    detail::run_batches(n_batches, options.threads, [&](std::size_t b) {
        std::vector<double> grid(n_cells, 0.0);
        std::vector<int> seq;
        const std::size_t first = b * detail::kRaysPerBatch;
        const std::size_t last = std::min(options.n_rays, first + detail::kRaysPerBatch);
        auto on_segment = [&](const detail::Segment& s) {
            if (s.direction.z == 0.0) return;
            const double t = (height - s.start.z) / s.direction.z;
            if (!(t > 0.0) || !(t < s.length)) return;
            const Vector3 x = s.start + t * s.direction;
            const int k = map.plane.cell_index(x.x, x.y);
            if (k < 0) return;
            const double c = std::max(std::abs(s.direction.z), cos_floor);
            grid[static_cast<std::size_t>(k)] += base * s.power / c;
        };
        for (std::size_t i = first; i < last; ++i) {
            const Ray ray{scene.ap, fibonacci_direction(i, options.n_rays)};
            detail::walk_ray(geometry, ray, options.trace, seq, on_segment);
        }
        partial[b] = std::move(grid);
    });

    for (const auto& grid : partial) {
        for (std::size_t k = 0; k < n_cells; ++k) map.cells[k] += grid[k];
    }
    return map;
}

}  // namespace lfr
