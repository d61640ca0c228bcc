#pragma once

#include <span>
#include <string>
#include <vector>

#include "lfr/raytrace.hpp"
#include "lfr/reflector.hpp"

namespace lfr {

/// One column of an RSS table. When `refocus` is beamfocus or chained the
/// arrays are re-aimed at each UE before probing it.
struct RssColumn {
    std::string label;
    Scene scene;
    ReflectorMode refocus = ReflectorMode::none;
};

struct RssTable {
    std::vector<std::string> columns;        // "free_space" followed by the column labels
    std::vector<int> ue_numbers;             // 1-based
    std::vector<std::vector<double>> rss_dbm;  // [row][column]
    std::vector<std::vector<std::size_t>> path_counts;  // [row][column]; 0 for free space
};

/// RSS at UEs first_ue..last_ue (1-based, inclusive). The first column is the
/// analytic free-space value over the direct AP->UE distance; the others use
/// point_paths + point_rss on each column's scene. Throws ValidationError when
/// the columns' UE lists differ from `base`, ParamError on a bad UE range.
RssTable rss_sweep(const Scene& base, std::span<const RssColumn> columns, int first_ue, int last_ue, SumMode mode,
                   const ProbeOptions& options = {});

}  // namespace lfr
