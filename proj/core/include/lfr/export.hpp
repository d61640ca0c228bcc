#pragma once

#include <string>
#include <vector>

#include "lfr/raytrace.hpp"
#include "lfr/sweep.hpp"

namespace lfr {

/// dB window mapped linearly onto grey levels 0..255; values outside clamp.
struct DbWindow {
    double lo = -160.0;
    double hi = -60.0;
};

/// "-inf" for non-positive gains, otherwise fixed two-decimal dB.
std::string format_db(double db);

/// Header row "y\x,<x centers>", then one row per y (ascending) with the y
/// center followed by per-cell dB values.
std::string coverage_csv(const CoverageMap& map);

/// Plain (P2) PGM, north (max y) at the top.
std::string coverage_pgm(const CoverageMap& map, DbWindow window = {});

std::string rss_table_csv(const RssTable& table);

struct CsvGrid {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<std::vector<double>> db;  // [row][col]
};

struct PgmImage {
    int width = 0;
    int height = 0;
    int max_value = 0;
    std::vector<int> pixels;  // row-major, top row first
};

/// Throws Error on malformed input.
CsvGrid parse_coverage_csv(const std::string& text);
PgmImage parse_pgm(const std::string& text);
RssTable parse_rss_table_csv(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace lfr
