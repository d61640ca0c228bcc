#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lfr/errors.hpp"
#include "lfr/scene.hpp"

namespace lfr {

namespace {

constexpr double kMountHeight = 1.5;    // array center and AP/UE height
constexpr double kStandoff = 0.15;      // array plane distance from its wall
constexpr double kApWallGap = 1.0;      // AP distance from the far wall of its leg
constexpr double kFirstUeMinDepth = 2.0;
constexpr double kLastUeWallGap = 0.5;
// UEs run 0.6 m from the side wall opposite the array that makes the last
// bounce, so tile departure angles stay well clear of the array plane.
constexpr double kUeSideGap = 0.6;
// T-shape: second array sits this far below the junction on the near wall.
constexpr double kSecondArrayDrop = 3.5;
constexpr int kUeCount = 9;

struct Point2 {
    double x;
    double y;
};

void check_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw ParamError(std::string(name) + " must be positive, got " + std::to_string(v));
    }
}

// Vertical walls along a closed rectilinear outline plus floor and ceiling
// slabs covering the same footprint.
void add_enclosure(Scene& s, const std::vector<Point2>& outline, const std::vector<std::array<double, 4>>& slabs,
                   double height) {
    for (std::size_t i = 0; i < outline.size(); ++i) {
        const Point2 p = outline[i];
        const Point2 q = outline[(i + 1) % outline.size()];
        s.surfaces.push_back(Rect3{{p.x, p.y, 0.0}, {q.x - p.x, q.y - p.y, 0.0}, {0.0, 0.0, height}, "concrete"});
    }
    for (const auto& [x0, y0, x1, y1] : slabs) {
        s.surfaces.push_back(Rect3{{x0, y0, 0.0}, {x1 - x0, 0.0, 0.0}, {0.0, y1 - y0, 0.0}, "concrete"});
        s.surfaces.push_back(Rect3{{x0, y0, height}, {x1 - x0, 0.0, 0.0}, {0.0, y1 - y0, 0.0}, "concrete"});
    }
}

// UEs on the line x = ue_x running from the inner corner (x = corner_x,
// y = corner_y) toward y = 0. The first UE sits deep enough that the segment
// from an AP at (kApWallGap, corner_y + width / 2) crosses the inner wall.
std::vector<Vector3> nlos_ue_line(double corner_x, double corner_y, double width, double ue_x) {
    const double ap_x = kApWallGap;
    // Depth below the AP centerline at which the AP->UE segment grazes the
    // inner corner.
    const double grazing_depth = (ue_x - ap_x) * (0.5 * width) / (corner_x - ap_x);
    const double first_depth = std::max(kFirstUeMinDepth, 1.5 * grazing_depth - 0.5 * width);
    const double y_first = corner_y - first_depth;
    const double y_last = kLastUeWallGap;
    if (y_first - y_last < 1.0) {
        throw ParamError("NLOS leg too short to host nine UE positions");
    }
    const double step = (y_first - y_last) / (kUeCount - 1);
    std::vector<Vector3> ue;
    for (int k = 0; k < kUeCount; ++k) ue.push_back({ue_x, y_first - k * step, kMountHeight});
    return ue;
}

void check_cross_section(double width, double height) {
    check_positive(width, "width");
    check_positive(height, "height");
    if (width < 2.0) throw ParamError("width must be at least 2 m to host a 1.4 m array");
    if (height < 2.6) throw ParamError("height must be at least 2.6 m to host a 2.0 m array at 1.5 m");
}

}  // namespace

ReflectorArray build_array(const Vector3& origin, const Vector3& mounting_normal, int rows, int cols, double tile_size,
                           double pitch, const std::string& material) {
    if (rows < 1 || cols < 1) throw ParamError("array needs at least one row and one column");
    check_positive(tile_size, "tile_size");
    check_positive(pitch, "pitch");
    if (!origin.is_finite()) throw ParamError("array origin must be finite");
    if (!mounting_normal.is_finite() || mounting_normal.norm2() == 0.0) throw ParamError("mounting normal must be nonzero");

    ReflectorArray arr;
    arr.origin = origin;
    arr.mounting_normal = mounting_normal.normalized();
    arr.rows = rows;
    arr.cols = cols;
    arr.tile_size = tile_size;
    arr.tile_pitch = pitch;
    arr.material_id = material;
    const SphericalAngles flush = arr.mounting_orientation();
    arr.tiles.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            arr.tiles.push_back(Tile{arr.tile_center(r, c), 0.5 * tile_size, flush.theta, flush.phi, material});
        }
    }
    return arr;
}

Scene build_hallway_L(const HallwayLParams& p) {
    check_positive(p.leg_length, "leg_length");
    check_cross_section(p.width, p.height);
    const double len = p.leg_length;
    const double w = p.width;
    if (len - w < 4.0) throw ParamError("leg_length must exceed width by at least 4 m");

    // LOS leg: x in [0, len], y in [len - w, len]. NLOS leg: x in [len - w, len], y in [0, len].
    const double inner = len - w;
    Scene s;
    add_enclosure(s, {{0, inner}, {inner, inner}, {inner, 0}, {len, 0}, {len, len}, {0, len}},
                  {{{0, inner, inner, len}}, {{inner, 0, len, len}}}, p.height);

    const double leg_center = inner + 0.5 * w;
    s.ap = {kApWallGap, leg_center, kMountHeight};
    s.ue_positions = nlos_ue_line(inner, inner, w, inner + kUeSideGap);
    s.arrays.push_back(build_array({len - kStandoff, leg_center, kMountHeight}, {-1.0, 0.0, 0.0}));

    s.measurement = MeasurementPlane{kMountHeight, 0.25, 0.0, len, 0.0, len};
    validate_scene(s);
    return s;
}

Scene build_hallway_T(const HallwayTParams& p) {
    check_positive(p.stem_length, "stem_length");
    check_positive(p.bar_length, "bar_length");
    check_cross_section(p.width, p.height);
    const double stem = p.stem_length;
    const double bar = p.bar_length;
    const double w = p.width;
    if (stem < 4.0) throw ParamError("stem_length must be at least 4 m");
    if (bar < w + 12.0) throw ParamError("bar_length must exceed width by at least 12 m");

    const double mid = 0.5 * bar;
    const double lo = mid - 0.5 * w;
    const double hi = mid + 0.5 * w;
    const double far = stem + w;
    Scene s;
    add_enclosure(s, {{0, lo}, {stem, lo}, {stem, 0}, {far, 0}, {far, bar}, {stem, bar}, {stem, hi}, {0, hi}},
                  {{{0, lo, stem, hi}}, {{stem, 0, far, bar}}}, p.height);

    s.ap = {kApWallGap, mid, kMountHeight};
    s.ue_positions = nlos_ue_line(stem, lo, w, far - kUeSideGap);
    // Corner array on the far wall facing the stem; second array on the near
    // wall of the lower arm, facing across the bar toward the UE line.
    s.arrays.push_back(build_array({far - kStandoff, mid, kMountHeight}, {-1.0, 0.0, 0.0}));
    s.arrays.push_back(build_array({stem + kStandoff, lo - kSecondArrayDrop, kMountHeight}, {1.0, 0.0, 0.0}));

    s.measurement = MeasurementPlane{kMountHeight, 0.25, 0.0, far, 0.0, bar};
    validate_scene(s);
    return s;
}

}  // namespace lfr
