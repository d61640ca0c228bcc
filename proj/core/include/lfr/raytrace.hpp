#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lfr/geometry.hpp"
#include "lfr/materials.hpp"
#include "lfr/scene.hpp"

namespace lfr {

enum class Terminal { reached_max_bounces, escaped, absorbed, reached_target };

std::string to_string(Terminal t);

struct TracedPath {
    Vector3 origin;
    std::vector<Vector3> bounce_points;
    std::vector<int> surface_ids;
    std::vector<std::complex<double>> coefficients;
    /// Receiver position for probe paths; empty for free traces.
    std::optional<Vector3> endpoint;
    /// Direction after the last bounce (free traces only).
    Vector3 final_direction;
    /// Length from origin through every bounce point (and the endpoint, if any).
    double unfolded_length = 0.0;
    Terminal terminal = Terminal::escaped;

    std::size_t bounce_count() const { return bounce_points.size(); }
    std::complex<double> total_coefficient() const;
};

struct TraceOptions {
    int max_bounces = 5;
    double min_amplitude = 1e-4;
    Polarization polarization = Polarization::te;
};

/// Flattened scene used by the tracer: surface ids [0, wall_count) are the
/// scene surfaces, followed by the tiles of each array in order.
class SceneGeometry {
public:
    struct Facet {
        Rect3 rect;
        Vector3 unit_normal;
        ComplexPermittivity eta;
        int array = -1;  // -1 for walls
        int tile = -1;
    };

    explicit SceneGeometry(const Scene& scene);

    std::optional<std::pair<int, Hit>> nearest_hit(const Ray& ray) const;
    /// True when something lies strictly between a and b.
    bool segment_blocked(const Vector3& a, const Vector3& b) const;

    const Facet& facet(int id) const { return facets_[static_cast<std::size_t>(id)]; }
    std::size_t facet_count() const { return facets_.size(); }
    std::size_t wall_count() const { return wall_count_; }
    double wavelength() const { return wavelength_; }

private:
    struct Group {
        int begin = 0;
        int end = 0;
        Vector3 lo;
        Vector3 hi;
    };

    std::vector<Facet> facets_;
    std::vector<Group> groups_;
    std::size_t wall_count_ = 0;
    double wavelength_ = 0.0;
};

/// Deterministic Fibonacci-sphere lattice of n unit directions.
std::vector<Vector3> launch_directions(std::size_t n);
Vector3 fibonacci_direction(std::size_t i, std::size_t n);

/// Nearest-hit specular trace. Stops on escape, after max_bounces
/// reflections (when the next surface is reached), or once the cumulative
/// reflection magnitude drops below min_amplitude.
TracedPath trace(const SceneGeometry& geometry, const Ray& ray, const TraceOptions& options = {});
TracedPath trace(const Scene& scene, const Ray& ray, int max_bounces, double min_amplitude = 1e-4);

/// Free-space path gain (lambda / 4 pi d)^2, linear.
double friis_gain(double wavelength, double distance);

// ---- coverage -------------------------------------------------------------

struct CoverageOptions {
    std::size_t n_rays = 1'000'000;
    TraceOptions trace;
    /// 0 means one worker per hardware thread.
    unsigned threads = 0;
    /// Lower clamp on |cos| of the plane crossing.
    double min_crossing_cos = 0.05;
};

struct CoverageMap {
    MeasurementPlane plane;
    int nx = 0;
    int ny = 0;
    /// Row-major, index iy * nx + ix; accumulated linear path gain.
    std::vector<double> cells;
    std::size_t ray_count = 0;

    double at(int ix, int iy) const { return cells[static_cast<std::size_t>(iy * nx + ix)]; }
    double gain_db(int ix, int iy) const;
    /// Cell containing (p.x, p.y), if inside the extent.
    std::optional<std::pair<int, int>> cell_of(const Vector3& p) const;
    /// Linear gain of the cell containing p (0 when outside).
    double gain_at(const Vector3& p) const;
    /// Maximum linear gain over the 3x3 neighbourhood of the cell containing p.
    double neighborhood_max(const Vector3& p) const;
};

/// Monte Carlo estimate of path gain on the measurement plane. Every
/// crossing of a traced segment through a cell adds
/// lambda^2 |prod gamma|^2 / (4 pi N A_cell max(|cos|, clamp)), the
/// (lambda / 4 pi d)^2 spreading factor times the inverse expected lattice
/// ray density at that crossing. Reduction order is fixed, so the result does
/// not depend on the worker count.
CoverageMap coverage_map(const Scene& scene, const CoverageOptions& options = {});

// ---- point probes ---------------------------------------------------------

struct ProbeOptions {
    std::size_t n_rays = 1'000'000;
    double capture_radius = 0.3;
    TraceOptions trace;
    unsigned threads = 0;
};

/// Specular paths from scene.ap to `target`: lattice rays passing within
/// capture_radius seed bounce sequences, which are deduplicated and then
/// solved exactly with image sources. Sequences whose exact solution leaves a
/// facet or is blocked are dropped. Sorted by bounce sequence.
std::vector<TracedPath> point_paths(const Scene& scene, const Vector3& target, const ProbeOptions& options = {});

/// Same, for several targets sharing one set of traced rays.
std::vector<std::vector<TracedPath>> point_paths(const Scene& scene, const Vector3& source,
                                                 std::span<const Vector3> targets, const ProbeOptions& options);

/// Exact specular path source -> facets[sequence] -> target, if one exists.
std::optional<TracedPath> solve_specular_path(const SceneGeometry& geometry, const Vector3& source,
                                              const Vector3& target, std::span<const int> sequence,
                                              Polarization polarization = Polarization::te);

enum class SumMode { coherent, incoherent };

std::string to_string(SumMode m);
/// Accepts "coherent" and "incoherent"; throws std::invalid_argument otherwise.
SumMode parse_sum_mode(const std::string& s);

struct PathGainResult {
    double gain_linear = 0.0;
    double gain_db = -std::numeric_limits<double>::infinity();
    double rss_dbm = -std::numeric_limits<double>::infinity();
    std::size_t path_count = 0;
};

/// Incoherent: sum_k (lambda / 4 pi d_k)^2 |prod gamma_k|^2.
/// Coherent: |sum_k (lambda / 4 pi d_k) prod gamma_k exp(-j 2 pi d_k / lambda)|^2.
/// A coherent sum that cancels to within 1e-9 of the amplitude total is
/// reported as exactly zero gain (-inf dB).
PathGainResult point_rss(std::span<const TracedPath> paths, double wavelength, double tx_power_dbm, SumMode mode);
PathGainResult point_rss(std::span<const TracedPath> paths, const Scene& scene, SumMode mode);

}  // namespace lfr
