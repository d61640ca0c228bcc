#include "lfr/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "lfr/errors.hpp"

namespace lfr {

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_db(const std::string& s) {
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw Error("bad numeric field '" + s + "'");
    }
    if (used != s.size()) throw Error("bad numeric field '" + s + "'");
    return v;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

}  // namespace

std::string format_db(double db) {
    if (!std::isfinite(db)) return db < 0 ? "-inf" : "inf";
    return fixed(db, 2);
}

std::string coverage_csv(const CoverageMap& map) {
    std::string out = "y\\x";
    for (int ix = 0; ix < map.nx; ++ix) out += "," + fixed(map.plane.cell_center(ix, 0).x, 4);
    out += "\n";
    for (int iy = 0; iy < map.ny; ++iy) {
        out += fixed(map.plane.cell_center(0, iy).y, 4);
        for (int ix = 0; ix < map.nx; ++ix) out += "," + format_db(map.gain_db(ix, iy));
        out += "\n";
    }
    return out;
}

std::string coverage_pgm(const CoverageMap& map, DbWindow window) {
    std::string out = "P2\n# path gain dB window [" + fixed(window.lo, 1) + ", " + fixed(window.hi, 1) + "]\n";
    out += std::to_string(map.nx) + " " + std::to_string(map.ny) + "\n255\n";
    const double span = window.hi - window.lo;
    for (int iy = map.ny - 1; iy >= 0; --iy) {
        std::string line;
        for (int ix = 0; ix < map.nx; ++ix) {
            const double db = map.gain_db(ix, iy);
            int level = 0;
            if (std::isfinite(db)) {
                level = static_cast<int>(std::lround(std::clamp((db - window.lo) / span, 0.0, 1.0) * 255.0));
            }
            std::string px = std::to_string(level);
            // Plain PGM lines stay under 70 characters.
            if (!line.empty() && line.size() + 1 + px.size() > 70) {
                out += line + "\n";
                line.clear();
            }
            line += (line.empty() ? "" : " ") + px;
        }
        out += line + "\n";
    }
    return out;
}

std::string rss_table_csv(const RssTable& table) {
    std::string out = "ue";
    for (const auto& c : table.columns) out += "," + c;
    out += "\n";
    for (std::size_t r = 0; r < table.ue_numbers.size(); ++r) {
        out += std::to_string(table.ue_numbers[r]);
        for (double v : table.rss_dbm[r]) out += "," + format_db(v);
        out += "\n";
    }
    return out;
}

CsvGrid parse_coverage_csv(const std::string& text) {
    const auto lines = lines_of(text);
    if (lines.empty()) throw Error("empty coverage CSV");
    CsvGrid g;
    const auto header = split(lines[0], ',');
    if (header.empty() || header[0] != "y\\x") throw Error("coverage CSV header must start with 'y\\x'");
    for (std::size_t i = 1; i < header.size(); ++i) g.x.push_back(parse_db(header[i]));
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto f = split(lines[r], ',');
        if (f.size() != header.size()) throw Error("coverage CSV row " + std::to_string(r) + " has wrong width");
        g.y.push_back(parse_db(f[0]));
        std::vector<double> row;
        for (std::size_t i = 1; i < f.size(); ++i) row.push_back(parse_db(f[i]));
        g.db.push_back(std::move(row));
    }
    return g;
}

PgmImage parse_pgm(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
    }
    if (tokens.size() < 4 || tokens[0] != "P2") throw Error("not a plain PGM (P2) image");
    auto to_int = [](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw Error("bad PGM token '" + s + "'");
        }
        if (used != s.size()) throw Error("bad PGM token '" + s + "'");
        return v;
    };
    PgmImage img;
    img.width = to_int(tokens[1]);
    img.height = to_int(tokens[2]);
    img.max_value = to_int(tokens[3]);
    if (img.width <= 0 || img.height <= 0 || img.max_value <= 0 || img.max_value > 65535) throw Error("bad PGM header");
    const std::size_t n = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
    if (tokens.size() != 4 + n) throw Error("PGM pixel count does not match its header");
    for (std::size_t i = 0; i < n; ++i) {
        const int v = to_int(tokens[4 + i]);
        if (v < 0 || v > img.max_value) throw Error("PGM pixel out of range");
        img.pixels.push_back(v);
    }
    return img;
}

RssTable parse_rss_table_csv(const std::string& text) {
    const auto lines = lines_of(text);
    if (lines.empty()) throw Error("empty RSS table");
    const auto header = split(lines[0], ',');
    if (header.size() < 2 || header[0] != "ue") throw Error("RSS table header must start with 'ue'");
    RssTable t;
    t.columns.assign(header.begin() + 1, header.end());
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto f = split(lines[r], ',');
        if (f.size() != header.size()) throw Error("RSS table row " + std::to_string(r) + " has wrong width");
        t.ue_numbers.push_back(static_cast<int>(parse_db(f[0])));
        std::vector<double> row;
        for (std::size_t i = 1; i < f.size(); ++i) row.push_back(parse_db(f[i]));
        t.path_counts.emplace_back(row.size(), 0);
        t.rss_dbm.push_back(std::move(row));
    }
    return t;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
    if (!out) throw Error("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace lfr
