#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "lfr/geometry.hpp"
#include "lfr/materials.hpp"

namespace lfr {

inline constexpr double kSpeedOfLight = 299792458.0;

/// One square metal facet. The orientation (theta, phi) is the spherical
/// direction of the tile normal; the facet itself is tile_rotation(theta, phi)
/// applied to a flat square in the xy-plane.
struct Tile {
    Vector3 center;
    double half_size = 0.1;
    double theta = 0.0;
    double phi = 0.0;
    std::string material_id = "metal";

    Mat3 rotation() const { return tile_rotation(theta, phi); }
    Vector3 normal() const { return spherical_to_cartesian({1.0, theta, phi}); }
    Rect3 rect() const;
    std::array<Vector3, 4> corners() const { return rect().corners(); }
};

/// rows x cols grid of tiles on a plane through `origin` with normal
/// `mounting_normal`. Tile (r, c) has index r * cols + c; rows run along the
/// in-plane "up" axis and columns along the in-plane horizontal axis.
struct ReflectorArray {
    Vector3 origin;
    Vector3 mounting_normal{0.0, 0.0, 1.0};
    int rows = 10;
    int cols = 7;
    double tile_size = 0.2;
    double tile_pitch = 0.2;
    std::string material_id = "metal";
    std::vector<Tile> tiles;

    std::size_t tile_count() const { return tiles.size(); }
    /// Horizontal in-plane axis (column direction).
    Vector3 column_axis() const;
    /// Second in-plane axis (row direction), perpendicular to column_axis().
    Vector3 row_axis() const;
    Vector3 tile_center(int row, int col) const;
    /// Orientation of a tile lying flush with the mounting plane.
    SphericalAngles mounting_orientation() const;
};

struct MeasurementPlane {
    double height = 1.5;
    double cell_size = 0.25;
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;

    int nx() const;
    int ny() const;
    double cell_area() const { return cell_size * cell_size; }
    Vector3 cell_center(int ix, int iy) const;
    /// -1 when (x, y) lies outside the extent.
    int cell_index(double x, double y) const;
};

struct Scene {
    double frequency_ghz = 28.0;
    double tx_power_dbm = 40.0;
    std::map<std::string, MaterialSpec> materials = materials::builtin_table();
    std::vector<Rect3> surfaces;
    std::vector<ReflectorArray> arrays;
    Vector3 ap;
    std::vector<Vector3> ue_positions;
    MeasurementPlane measurement;

    double wavelength() const { return kSpeedOfLight / (frequency_ghz * 1e9); }
    /// Throws ValidationError for unknown ids.
    const MaterialSpec& material(const std::string& id) const;
};

/// Throws ValidationError describing the first violated invariant.
void validate_scene(const Scene& scene);

/// Structural equality with numeric fields compared within `tol`.
bool scenes_equal(const Scene& a, const Scene& b, double tol = 1e-12);

/// Parses the JSON scene document. Throws SchemaError for missing, unknown
/// or ill-typed fields and ValidationError for invariant violations.
Scene parse_scene(const std::string& text);

/// Canonical JSON document (sorted keys, fixed indentation, shortest
/// round-trip number formatting).
std::string serialize_scene(const Scene& scene);

Scene load_scene_file(const std::string& path);
void save_scene_file(const Scene& scene, const std::string& path);

// ---- builders -------------------------------------------------------------

/// tile_size and tile_pitch in meters. Tiles start flush with the mounting
/// plane. Throws ParamError for empty grids or non-positive sizes.
ReflectorArray build_array(const Vector3& origin, const Vector3& mounting_normal, int rows = 10, int cols = 7,
                           double tile_size = 0.2, double pitch = 0.2, const std::string& material = "metal");

struct HallwayLParams {
    double leg_length = 20.0;
    double width = 3.0;
    double height = 3.0;
};

struct HallwayTParams {
    double stem_length = 20.0;
    double bar_length = 30.0;
    double width = 3.0;
    double height = 3.0;
};

/// Closed concrete L-shaped corridor: the AP sits in the LOS leg (along +x),
/// nine UEs run down the NLOS leg (along -y) starting at the corner, and one
/// flush 10x7 array hangs on the corner wall facing the AP.
Scene build_hallway_L(const HallwayLParams& params = {});

/// Closed concrete T-shaped corridor: the AP sits in the stem, the bar runs
/// along y. Array 0 hangs on the far bar wall facing the stem; array 1 hangs
/// on the near bar wall in the upper arm facing across the bar. Nine UEs run
/// down the lower arm.
Scene build_hallway_T(const HallwayTParams& params = {});

}  // namespace lfr
