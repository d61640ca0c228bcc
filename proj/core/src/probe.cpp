#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "lfr/raytrace.hpp"
#include "parallel.hpp"
#include "walk.hpp"

namespace lfr {

namespace {

constexpr double kFacetSlack = 1e-9;
constexpr double kCancellation = 1e-9;

using Sequence = std::vector<int>;

bool inside_facet(const Rect3& r, const Vector3& p) {
    const Vector3 rel = p - r.corner;
    const double u = rel.dot(r.edge_u) / r.edge_u.norm2();
    const double v = rel.dot(r.edge_v) / r.edge_v.norm2();
    return u >= -kFacetSlack && u <= 1.0 + kFacetSlack && v >= -kFacetSlack && v <= 1.0 + kFacetSlack;
}

}  // namespace

std::optional<TracedPath> solve_specular_path(const SceneGeometry& g, const Vector3& source, const Vector3& target,
                                              std::span<const int> sequence, Polarization polarization) {
    const std::size_t k = sequence.size();
    for (std::size_t j = 1; j < k; ++j) {
        if (sequence[j] == sequence[j - 1]) return std::nullopt;
    }

    // images[j] is the source mirrored through the first j facets.
    std::vector<Vector3> images{source};
    for (const int id : sequence) images.push_back(mirror_point(images.back(), g.facet(id).rect));

    std::vector<Vector3> points(k);
    Vector3 next = target;
    for (std::size_t j = k; j-- > 0;) {
        const SceneGeometry::Facet& f = g.facet(sequence[j]);
        const Vector3& img = images[j + 1];
        const Vector3 d = next - img;
        const double denom = d.dot(f.unit_normal);
        if (std::abs(denom) < 1e-15) return std::nullopt;
        const double s = (f.rect.corner - img).dot(f.unit_normal) / denom;
        if (!(s > 0.0 && s < 1.0)) return std::nullopt;
        const Vector3 b = img + s * d;
        if (!inside_facet(f.rect, b)) return std::nullopt;
        points[j] = b;
        next = b;
    }

    TracedPath path;
    path.origin = source;
    path.endpoint = target;
    path.terminal = Terminal::reached_target;
    Vector3 prev = source;
    for (std::size_t j = 0; j < k; ++j) {
        if (g.segment_blocked(prev, points[j])) return std::nullopt;
        const SceneGeometry::Facet& f = g.facet(sequence[j]);
        const Vector3 in = points[j] - prev;
        const double len = in.norm();
        if (len == 0.0) return std::nullopt;
        const double cos_i = std::abs(in.dot(f.unit_normal)) / len;
        path.bounce_points.push_back(points[j]);
        path.surface_ids.push_back(sequence[j]);
        path.coefficients.push_back(bounce_coefficient(f.eta, cos_i, polarization));
        path.unfolded_length += len;
        prev = points[j];
    }
    if (g.segment_blocked(prev, target)) return std::nullopt;
    const double last = distance(prev, target);
    if (last == 0.0) return std::nullopt;
    path.unfolded_length += last;
    path.final_direction = (target - prev) / last;
    return path;
}

std::vector<std::vector<TracedPath>> point_paths(const Scene& scene, const Vector3& source,
                                                 std::span<const Vector3> targets, const ProbeOptions& options) {
    const SceneGeometry geometry(scene);
    const std::size_t n_targets = targets.size();
    std::vector<std::vector<TracedPath>> out(n_targets);
    if (options.n_rays == 0 || n_targets == 0 || !(options.capture_radius > 0.0)) return out;

    const double r2 = options.capture_radius * options.capture_radius;
    const std::size_t n_batches = detail::batch_count(options.n_rays);
    std::vector<std::vector<std::set<Sequence>>> found(n_batches);

    detail::run_batches(n_batches, options.threads, [&](std::size_t b) {
        std::vector<std::set<Sequence>> keys(n_targets);
        std::vector<int> seq;
        auto on_segment = [&](const detail::Segment& s) {
            for (std::size_t t = 0; t < n_targets; ++t) {
                const Vector3 w = targets[t] - s.start;
                const double along = std::clamp(w.dot(s.direction), 0.0, s.length);
                if ((s.start + along * s.direction - targets[t]).norm2() <= r2) {
                    keys[t].emplace(s.sequence.begin(), s.sequence.end());
                }
            }
        };
        const std::size_t first = b * detail::kRaysPerBatch;
        const std::size_t last = std::min(options.n_rays, first + detail::kRaysPerBatch);
        for (std::size_t i = first; i < last; ++i) {
            const Ray ray{source, fibonacci_direction(i, options.n_rays)};
            detail::walk_ray(geometry, ray, options.trace, seq, on_segment);
        }
        found[b] = std::move(keys);
    });

    for (std::size_t t = 0; t < n_targets; ++t) {
        std::set<Sequence> merged;
        for (const auto& batch : found) merged.insert(batch[t].begin(), batch[t].end());
        for (const Sequence& key : merged) {
            if (auto p = solve_specular_path(geometry, source, targets[t], key, options.trace.polarization)) {
                out[t].push_back(std::move(*p));
            }
        }
    }
    return out;
}

std::vector<TracedPath> point_paths(const Scene& scene, const Vector3& target, const ProbeOptions& options) {
    const Vector3 targets[] = {target};
    return std::move(point_paths(scene, scene.ap, targets, options).front());
}

std::string to_string(SumMode m) { return m == SumMode::coherent ? "coherent" : "incoherent"; }

SumMode parse_sum_mode(const std::string& s) {
    if (s == "coherent") return SumMode::coherent;
    if (s == "incoherent") return SumMode::incoherent;
    throw std::invalid_argument("unknown summation mode '" + s + "'");
}

PathGainResult point_rss(std::span<const TracedPath> paths, double wavelength, double tx_power_dbm, SumMode mode) {
    PathGainResult r;
    r.path_count = paths.size();
    if (paths.empty()) return r;

    if (mode == SumMode::incoherent) {
        for (const TracedPath& p : paths) {
            r.gain_linear += friis_gain(wavelength, p.unfolded_length) * std::norm(p.total_coefficient());
        }
    } else {
        std::complex<double> field{0.0, 0.0};
        double magnitude_sum = 0.0;
        for (const TracedPath& p : paths) {
            const double cycles = p.unfolded_length / wavelength;
            const double phase = 2.0 * std::numbers::pi * (cycles - std::floor(cycles));
            const std::complex<double> a = wavelength / (4.0 * std::numbers::pi * p.unfolded_length) *
                                           p.total_coefficient() * std::polar(1.0, -phase);
            field += a;
            magnitude_sum += std::abs(a);
        }
        const double mag = std::abs(field);
        r.gain_linear = mag <= kCancellation * magnitude_sum ? 0.0 : mag * mag;
    }

    if (r.gain_linear > 0.0) {
        r.gain_db = 10.0 * std::log10(r.gain_linear);
        r.rss_dbm = tx_power_dbm + r.gain_db;
    }
    return r;
}

PathGainResult point_rss(std::span<const TracedPath> paths, const Scene& scene, SumMode mode) {
    return point_rss(paths, scene.wavelength(), scene.tx_power_dbm, mode);
}

}  // namespace lfr
