#include "lfr/sweep.hpp"

#include <cmath>

#include "lfr/errors.hpp"

namespace lfr {

namespace {

bool same_ue_list(const Scene& a, const Scene& b) {
    if (a.ue_positions.size() != b.ue_positions.size()) return false;
    for (std::size_t i = 0; i < a.ue_positions.size(); ++i) {
        if (!approx_equal(a.ue_positions[i], b.ue_positions[i], 1e-12)) return false;
    }
    return true;
}

}  // namespace

RssTable rss_sweep(const Scene& base, std::span<const RssColumn> columns, int first_ue, int last_ue, SumMode mode,
                   const ProbeOptions& options) {
    const int n_ue = static_cast<int>(base.ue_positions.size());
    if (first_ue < 1 || last_ue > n_ue || first_ue > last_ue) {
        throw ParamError("UE range " + std::to_string(first_ue) + ".." + std::to_string(last_ue) + " outside 1.." +
                         std::to_string(n_ue));
    }
    for (const RssColumn& c : columns) {
        if (!same_ue_list(base, c.scene)) throw ValidationError("column '" + c.label + "' has a different UE list");
    }

    RssTable table;
    table.columns.push_back("free_space");
    for (const RssColumn& c : columns) table.columns.push_back(c.label);

    std::vector<Vector3> targets;
    for (int u = first_ue; u <= last_ue; ++u) {
        table.ue_numbers.push_back(u);
        targets.push_back(base.ue_positions[static_cast<std::size_t>(u - 1)]);
        const double d = distance(base.ap, targets.back());
        table.rss_dbm.push_back({base.tx_power_dbm + 10.0 * std::log10(friis_gain(base.wavelength(), d))});
        table.path_counts.push_back({0});
    }

    for (const RssColumn& c : columns) {
        if (c.refocus == ReflectorMode::beamfocus || c.refocus == ReflectorMode::chained) {
            for (std::size_t row = 0; row < targets.size(); ++row) {
                const Scene focused = configure_scene(c.scene, c.refocus, table.ue_numbers[row]);
                const auto paths = point_paths(focused, targets[row], options);
                const PathGainResult r = point_rss(paths, focused, mode);
                table.rss_dbm[row].push_back(r.rss_dbm);
                table.path_counts[row].push_back(r.path_count);
            }
        } else {
            const auto per_target = point_paths(c.scene, c.scene.ap, targets, options);
            for (std::size_t row = 0; row < targets.size(); ++row) {
                const PathGainResult r = point_rss(per_target[row], c.scene, mode);
                table.rss_dbm[row].push_back(r.rss_dbm);
                table.path_counts[row].push_back(r.path_count);
            }
        }
    }
    return table;
}

}  // namespace lfr
