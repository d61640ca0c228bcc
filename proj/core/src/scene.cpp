#include "lfr/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lfr/errors.hpp"

namespace lfr {

Rect3 Tile::rect() const {
    const Mat3 r = rotation();
    const Vector3 eu = r.column(0) * half_size;
    const Vector3 ev = r.column(1) * half_size;
    return Rect3{center - eu - ev, 2.0 * eu, 2.0 * ev, material_id};
}

Vector3 ReflectorArray::column_axis() const {
    const Vector3 n = mounting_normal.normalized();
    // Horizontal mounting planes fall back to +x as the reference.
    const Vector3 up = std::abs(n.z) > 0.999 ? Vector3{1.0, 0.0, 0.0} : Vector3{0.0, 0.0, 1.0};
    return n.cross(up).normalized();
}

Vector3 ReflectorArray::row_axis() const { return column_axis().cross(mounting_normal.normalized()); }

Vector3 ReflectorArray::tile_center(int row, int col) const {
    const double dc = (static_cast<double>(col) - 0.5 * (cols - 1)) * tile_pitch;
    const double dr = (static_cast<double>(row) - 0.5 * (rows - 1)) * tile_pitch;
    return origin + dc * column_axis() + dr * row_axis();
}

SphericalAngles ReflectorArray::mounting_orientation() const {
    return cartesian_to_spherical(mounting_normal.normalized());
}

int MeasurementPlane::nx() const {
    return std::max(1, static_cast<int>(std::ceil((x_max - x_min) / cell_size - 1e-9)));
}

int MeasurementPlane::ny() const {
    return std::max(1, static_cast<int>(std::ceil((y_max - y_min) / cell_size - 1e-9)));
}

Vector3 MeasurementPlane::cell_center(int ix, int iy) const {
    return {x_min + (ix + 0.5) * cell_size, y_min + (iy + 0.5) * cell_size, height};
}

int MeasurementPlane::cell_index(double x, double y) const {
    if (!(x >= x_min) || !(y >= y_min)) return -1;
    int ix = static_cast<int>((x - x_min) / cell_size);
    int iy = static_cast<int>((y - y_min) / cell_size);
    // The extent is closed: its upper edge belongs to the last cell.
    if (x <= x_max) ix = std::min(ix, nx() - 1);
    if (y <= y_max) iy = std::min(iy, ny() - 1);
    if (ix >= nx() || iy >= ny()) return -1;
    return iy * nx() + ix;
}

const MaterialSpec& Scene::material(const std::string& id) const {
    const auto it = materials.find(id);
    if (it == materials.end()) {
        throw ValidationError("unknown material '" + id + "'");
    }
    return it->second;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

void check_material_ref(const Scene& s, const std::string& id, const std::string& where) {
    const auto it = s.materials.find(id);
    require(it != s.materials.end(), where + ": unknown material '" + id + "'");
    require(it->second.covers(s.frequency_ghz),
            where + ": frequency " + std::to_string(s.frequency_ghz) + " GHz outside the validity range of '" + id +
                "' [" + std::to_string(it->second.f_min_ghz) + ", " + std::to_string(it->second.f_max_ghz) + "]");
}

struct Box {
    Vector3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
               std::numeric_limits<double>::infinity()};
    Vector3 hi = -lo;

    void add(const Vector3& p) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    bool strictly_inside(const Vector3& p) const {
        return p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y && p.z > lo.z && p.z < hi.z;
    }
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

void validate_scene(const Scene& s) {
    require(std::isfinite(s.frequency_ghz) && s.frequency_ghz > 0.0, "frequency_ghz must be positive");
    require(std::isfinite(s.tx_power_dbm), "tx_power_dbm must be finite");

    for (const auto& [name, m] : s.materials) {
        require(m.name == name, "material key '" + name + "' does not match its name '" + m.name + "'");
        require(m.a > 0.0, "material '" + name + "': a must be positive");
        require(m.c >= 0.0, "material '" + name + "': c must be non-negative");
        require(m.f_min_ghz > 0.0 && m.f_min_ghz <= m.f_max_ghz, "material '" + name + "': invalid frequency range");
    }

    Box box;
    for (std::size_t i = 0; i < s.surfaces.size(); ++i) {
        const Rect3& r = s.surfaces[i];
        const std::string where = "surfaces[" + std::to_string(i) + "]";
        require(r.corner.is_finite() && r.edge_u.is_finite() && r.edge_v.is_finite(), where + ": non-finite geometry");
        const double lu = r.edge_u.norm(), lv = r.edge_v.norm();
        require(lu > 0.0 && lv > 0.0, where + ": zero-length edge");
        require(std::abs(r.edge_u.dot(r.edge_v)) <= 1e-9 * lu * lv, where + ": edges are not orthogonal");
        check_material_ref(s, r.material_id, where);
        for (const auto& c : r.corners()) box.add(c);
    }

    for (std::size_t a = 0; a < s.arrays.size(); ++a) {
        const ReflectorArray& arr = s.arrays[a];
        const std::string where = "arrays[" + std::to_string(a) + "]";
        require(arr.rows >= 1 && arr.cols >= 1, where + ": rows and cols must be >= 1");
        require(arr.tile_size > 0.0 && arr.tile_pitch > 0.0, where + ": tile size and pitch must be positive");
        require(near(arr.mounting_normal.norm(), 1.0, 1e-9), where + ": normal must be unit length");
        require(arr.tiles.size() == static_cast<std::size_t>(arr.rows) * static_cast<std::size_t>(arr.cols),
                where + ": tile count does not equal rows * cols");
        check_material_ref(s, arr.material_id, where);
        for (int r = 0; r < arr.rows; ++r) {
            for (int c = 0; c < arr.cols; ++c) {
                const Tile& t = arr.tiles[static_cast<std::size_t>(r * arr.cols + c)];
                const std::string tw = where + ".tiles[" + std::to_string(r * arr.cols + c) + "]";
                require(approx_equal(t.center, arr.tile_center(r, c), 1e-9), tw + ": center off the array grid");
                require(t.half_size > 0.0, tw + ": half size must be positive");
                require(t.theta >= 0.0 && t.theta <= std::numbers::pi, tw + ": theta outside [0, pi]");
                require(t.phi > -std::numbers::pi && t.phi <= std::numbers::pi, tw + ": phi outside (-pi, pi]");
                check_material_ref(s, t.material_id, tw);
            }
        }
    }

    require(s.ap.is_finite(), "ap must be finite");
    require(!s.ue_positions.empty(), "at least one UE position is required");
    if (!s.surfaces.empty()) {
        require(box.strictly_inside(s.ap), "ap lies outside the enclosure");
        for (std::size_t i = 0; i < s.ue_positions.size(); ++i) {
            require(box.strictly_inside(s.ue_positions[i]), "ue[" + std::to_string(i) + "] lies outside the enclosure");
        }
    }

    const MeasurementPlane& m = s.measurement;
    require(std::isfinite(m.cell_size) && m.cell_size > 0.0, "measurement.cell_m must be positive");
    require(std::isfinite(m.height), "measurement.height_m must be finite");
    require(m.x_max > m.x_min && m.y_max > m.y_min, "measurement extent is empty");
    for (std::size_t i = 0; i < s.ue_positions.size(); ++i) {
        const Vector3& u = s.ue_positions[i];
        require(u.is_finite(), "ue[" + std::to_string(i) + "] must be finite");
        require(u.x >= m.x_min && u.x <= m.x_max && u.y >= m.y_min && u.y <= m.y_max,
                "ue[" + std::to_string(i) + "] lies outside the measurement extent");
    }
}

namespace {

bool rect_equal(const Rect3& a, const Rect3& b, double tol) {
    return approx_equal(a.corner, b.corner, tol) && approx_equal(a.edge_u, b.edge_u, tol) &&
           approx_equal(a.edge_v, b.edge_v, tol) && a.material_id == b.material_id;
}

bool material_equal(const MaterialSpec& a, const MaterialSpec& b, double tol) {
    return a.name == b.name && near(a.a, b.a, tol) && near(a.b, b.b, tol) && near(a.c, b.c, tol * std::max(1.0, std::abs(a.c))) &&
           near(a.d, b.d, tol) && near(a.f_min_ghz, b.f_min_ghz, tol) && near(a.f_max_ghz, b.f_max_ghz, tol);
}

bool array_equal(const ReflectorArray& a, const ReflectorArray& b, double tol) {
    if (!approx_equal(a.origin, b.origin, tol) || !approx_equal(a.mounting_normal, b.mounting_normal, tol) ||
        a.rows != b.rows || a.cols != b.cols || !near(a.tile_size, b.tile_size, tol) ||
        !near(a.tile_pitch, b.tile_pitch, tol) || a.material_id != b.material_id || a.tiles.size() != b.tiles.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.tiles.size(); ++i) {
        const Tile& x = a.tiles[i];
        const Tile& y = b.tiles[i];
        if (!approx_equal(x.center, y.center, tol) || !near(x.half_size, y.half_size, tol) ||
            !near(x.theta, y.theta, tol) || !near(x.phi, y.phi, tol) || x.material_id != y.material_id) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool scenes_equal(const Scene& a, const Scene& b, double tol) {
    if (!near(a.frequency_ghz, b.frequency_ghz, tol) || !near(a.tx_power_dbm, b.tx_power_dbm, tol)) return false;
    if (a.materials.size() != b.materials.size()) return false;
    for (const auto& [k, m] : a.materials) {
        const auto it = b.materials.find(k);
        if (it == b.materials.end() || !material_equal(m, it->second, tol)) return false;
    }
    if (a.surfaces.size() != b.surfaces.size() || a.arrays.size() != b.arrays.size() ||
        a.ue_positions.size() != b.ue_positions.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.surfaces.size(); ++i)
        if (!rect_equal(a.surfaces[i], b.surfaces[i], tol)) return false;
    for (std::size_t i = 0; i < a.arrays.size(); ++i)
        if (!array_equal(a.arrays[i], b.arrays[i], tol)) return false;
    if (!approx_equal(a.ap, b.ap, tol)) return false;
    for (std::size_t i = 0; i < a.ue_positions.size(); ++i)
        if (!approx_equal(a.ue_positions[i], b.ue_positions[i], tol)) return false;
    const MeasurementPlane& p = a.measurement;
    const MeasurementPlane& q = b.measurement;
    return near(p.height, q.height, tol) && near(p.cell_size, q.cell_size, tol) && near(p.x_min, q.x_min, tol) &&
           near(p.x_max, q.x_max, tol) && near(p.y_min, q.y_min, tol) && near(p.y_max, q.y_max, tol);
}

}  // namespace lfr
