// JSON scene documents. Unknown keys are rejected.
#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include "lfr/errors.hpp"
#include "lfr/scene.hpp"

namespace lfr {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : obj.items()) {
        if (!ok.contains(item.key())) {
            throw SchemaError(path + "." + item.key(), "unknown field");
        }
    }
}

const json& field(const json& obj, const std::string& path, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path + "." + key, "missing field");
    return *it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    const auto v = j.get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw SchemaError(path, "integer out of range");
    }
    return static_cast<int>(v);
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

const json& as_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    return j;
}

const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    return j;
}

Vector3 as_vec3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) throw SchemaError(path, "expected [x, y, z]");
    return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]"), as_number(j[2], path + "[2]")};
}

json vec3_json(const Vector3& v) { return json::array({v.x, v.y, v.z}); }

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

MaterialSpec parse_material(const std::string& name, const json& j, const std::string& path) {
    as_object(j, path);
    reject_unknown(j, path, {"a", "b", "c", "d", "f_min_ghz", "f_max_ghz"});
    MaterialSpec m;
    m.name = name;
    m.a = as_number(field(j, path, "a"), path + ".a");
    m.b = as_number(field(j, path, "b"), path + ".b");
    m.c = as_number(field(j, path, "c"), path + ".c");
    m.d = as_number(field(j, path, "d"), path + ".d");
    m.f_min_ghz = as_number(field(j, path, "f_min_ghz"), path + ".f_min_ghz");
    m.f_max_ghz = as_number(field(j, path, "f_max_ghz"), path + ".f_max_ghz");
    return m;
}

Rect3 parse_surface(const json& j, const std::string& path) {
    as_object(j, path);
    reject_unknown(j, path, {"corner", "edge_u", "edge_v", "material"});
    Rect3 r;
    r.corner = as_vec3(field(j, path, "corner"), path + ".corner");
    r.edge_u = as_vec3(field(j, path, "edge_u"), path + ".edge_u");
    r.edge_v = as_vec3(field(j, path, "edge_v"), path + ".edge_v");
    r.material_id = as_string(field(j, path, "material"), path + ".material");
    return r;
}

ReflectorArray parse_array(const json& j, const std::string& path) {
    as_object(j, path);
    reject_unknown(j, path, {"origin", "normal", "rows", "cols", "tile_m", "pitch_m", "material", "tiles"});
    const Vector3 origin = as_vec3(field(j, path, "origin"), path + ".origin");
    const Vector3 normal = as_vec3(field(j, path, "normal"), path + ".normal");
    const int rows = as_int(field(j, path, "rows"), path + ".rows");
    const int cols = as_int(field(j, path, "cols"), path + ".cols");
    const double tile = as_number(field(j, path, "tile_m"), path + ".tile_m");
    const double pitch = as_number(field(j, path, "pitch_m"), path + ".pitch_m");
    const std::string material = as_string(field(j, path, "material"), path + ".material");

    ReflectorArray arr;
    try {
        arr = build_array(origin, normal, rows, cols, tile, pitch, material);
    } catch (const ParamError& e) {
        throw ValidationError(path + ": " + e.what());
    } catch (const GeometryError& e) {
        throw ValidationError(path + ": " + e.what());
    }
    // The builder normalizes; keep the stored normal so validation sees it.
    arr.mounting_normal = normal;

    if (const auto it = j.find("tiles"); it != j.end()) {
        const std::string tp = path + ".tiles";
        as_array(*it, tp);
        if (it->size() != arr.tiles.size()) {
            throw ValidationError(tp + ": expected " + std::to_string(arr.tiles.size()) + " entries, got " +
                                  std::to_string(it->size()));
        }
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& t = (*it)[i];
            const std::string p = idx(tp, i);
            as_object(t, p);
            reject_unknown(t, p, {"theta_rad", "phi_rad"});
            arr.tiles[i].theta = as_number(field(t, p, "theta_rad"), p + ".theta_rad");
            arr.tiles[i].phi = as_number(field(t, p, "phi_rad"), p + ".phi_rad");
        }
    }
    return arr;
}

MeasurementPlane parse_measurement(const json& j, const std::string& path) {
    as_object(j, path);
    reject_unknown(j, path, {"height_m", "cell_m", "x_min", "x_max", "y_min", "y_max"});
    MeasurementPlane m;
    m.height = as_number(field(j, path, "height_m"), path + ".height_m");
    m.cell_size = as_number(field(j, path, "cell_m"), path + ".cell_m");
    m.x_min = as_number(field(j, path, "x_min"), path + ".x_min");
    m.x_max = as_number(field(j, path, "x_max"), path + ".x_max");
    m.y_min = as_number(field(j, path, "y_min"), path + ".y_min");
    m.y_max = as_number(field(j, path, "y_max"), path + ".y_max");
    return m;
}

// Default extent: bounding box of the surfaces, or of AP and UEs padded by
// one meter when the scene has no surfaces.
MeasurementPlane default_measurement(const Scene& s) {
    MeasurementPlane m;
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    auto add = [&](const Vector3& p) {
        x0 = std::min(x0, p.x); y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x); y1 = std::max(y1, p.y);
    };
    if (!s.surfaces.empty()) {
        for (const auto& r : s.surfaces)
            for (const auto& c : r.corners()) add(c);
    } else {
        add(s.ap);
        for (const auto& u : s.ue_positions) add(u);
        x0 -= 1.0; y0 -= 1.0; x1 += 1.0; y1 += 1.0;
    }
    m.x_min = x0; m.x_max = x1; m.y_min = y0; m.y_max = y1;
    return m;
}

}  // namespace

Scene parse_scene(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("$", std::string("malformed JSON: ") + e.what());
    }
    const std::string root = "$";
    as_object(doc, root);
    reject_unknown(doc, root, {"frequency_ghz", "tx_power_dbm", "materials", "surfaces", "arrays", "ap", "ue", "measurement"});

    Scene s;
    s.frequency_ghz = as_number(field(doc, root, "frequency_ghz"), "$.frequency_ghz");
    if (const auto it = doc.find("tx_power_dbm"); it != doc.end()) {
        s.tx_power_dbm = as_number(*it, "$.tx_power_dbm");
    }
    if (const auto it = doc.find("materials"); it != doc.end()) {
        as_object(*it, "$.materials");
        for (const auto& item : it->items()) {
            s.materials[item.key()] = parse_material(item.key(), item.value(), "$.materials." + item.key());
        }
    }
    if (const auto it = doc.find("surfaces"); it != doc.end()) {
        as_array(*it, "$.surfaces");
        for (std::size_t i = 0; i < it->size(); ++i) s.surfaces.push_back(parse_surface((*it)[i], idx("$.surfaces", i)));
    }
    if (const auto it = doc.find("arrays"); it != doc.end()) {
        as_array(*it, "$.arrays");
        for (std::size_t i = 0; i < it->size(); ++i) s.arrays.push_back(parse_array((*it)[i], idx("$.arrays", i)));
    }
    s.ap = as_vec3(field(doc, root, "ap"), "$.ap");
    const json& ue = as_array(field(doc, root, "ue"), "$.ue");
    for (std::size_t i = 0; i < ue.size(); ++i) s.ue_positions.push_back(as_vec3(ue[i], idx("$.ue", i)));

    if (const auto it = doc.find("measurement"); it != doc.end()) {
        s.measurement = parse_measurement(*it, "$.measurement");
    } else {
        s.measurement = default_measurement(s);
    }

    validate_scene(s);
    return s;
}

std::string serialize_scene(const Scene& s) {
    json doc = json::object();
    doc["frequency_ghz"] = s.frequency_ghz;
    doc["tx_power_dbm"] = s.tx_power_dbm;

    json mats = json::object();
    for (const auto& [name, m] : s.materials) {
        mats[name] = {{"a", m.a}, {"b", m.b}, {"c", m.c}, {"d", m.d}, {"f_min_ghz", m.f_min_ghz}, {"f_max_ghz", m.f_max_ghz}};
    }
    doc["materials"] = mats;

    json surfaces = json::array();
    for (const auto& r : s.surfaces) {
        surfaces.push_back({{"corner", vec3_json(r.corner)},
                            {"edge_u", vec3_json(r.edge_u)},
                            {"edge_v", vec3_json(r.edge_v)},
                            {"material", r.material_id}});
    }
    doc["surfaces"] = surfaces;

    json arrays = json::array();
    for (const auto& a : s.arrays) {
        json tiles = json::array();
        for (const auto& t : a.tiles) tiles.push_back({{"theta_rad", t.theta}, {"phi_rad", t.phi}});
        arrays.push_back({{"origin", vec3_json(a.origin)},
                          {"normal", vec3_json(a.mounting_normal)},
                          {"rows", a.rows},
                          {"cols", a.cols},
                          {"tile_m", a.tile_size},
                          {"pitch_m", a.tile_pitch},
                          {"material", a.material_id},
                          {"tiles", tiles}});
    }
    doc["arrays"] = arrays;

    doc["ap"] = vec3_json(s.ap);
    json ue = json::array();
    for (const auto& u : s.ue_positions) ue.push_back(vec3_json(u));
    doc["ue"] = ue;

    const MeasurementPlane& m = s.measurement;
    doc["measurement"] = {{"height_m", m.height}, {"cell_m", m.cell_size}, {"x_min", m.x_min},
                          {"x_max", m.x_max},     {"y_min", m.y_min},      {"y_max", m.y_max}};
    return doc.dump(2) + "\n";
}

Scene load_scene_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open scene file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str());
}

void save_scene_file(const Scene& scene, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write scene file '" + path + "'");
    out << serialize_scene(scene);
    if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace lfr
