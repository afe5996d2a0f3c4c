#include "splx/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace splx {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) fields.push_back(field);
    return fields;
}

bool parse_double(const std::string& text, double& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r'))
        --end;
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && begin != end;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::vector<double>> read_numeric_csv(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    bool header_allowed = true;
    size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        std::vector<double> row;
        row.reserve(fields.size());
        bool numeric = true;
        for (size_t c = 0; c < fields.size(); ++c) {
            double v;
            if (!parse_double(fields[c], v)) {
                if (header_allowed) {
                    numeric = false;
                    break;
                }
                throw Error(ErrorCode::ParseError,
                            path.string() + ": row " + std::to_string(line_no) +
                                ", column " + std::to_string(c + 1) +
                                ": not a number: '" + fields[c] + "'");
            }
            row.push_back(v);
        }
        header_allowed = false;
        if (!numeric) continue;  // header line
        if (width == 0) {
            width = row.size();
        } else if (row.size() != width) {
            throw Error(ErrorCode::ParseError,
                        path.string() + ": row " + std::to_string(line_no) +
                            ": expected " + std::to_string(width) +
                            " columns, got " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw Error(ErrorCode::ParseError,
                    path.string() + ": no data rows");
    }
    return rows;
}

}  // namespace

std::vector<BarycentricPoint> ingest_csv(const std::filesystem::path& path,
                                         BarycentricPoint::Policy policy) {
    auto rows = read_numeric_csv(path);
    std::vector<BarycentricPoint> points;
    points.reserve(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
        try {
            points.push_back(BarycentricPoint::validate(rows[r], policy));
        } catch (const Error& e) {
            throw Error(ErrorCode::ValidationError,
                        path.string() + ": row " + std::to_string(r + 1) + ": " +
                            e.what());
        }
    }
    return points;
}

void write_points_csv(const std::filesystem::path& path,
                      const std::vector<BarycentricPoint>& points) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    if (!points.empty()) {
        for (int k = 1; k <= points.front().dim(); ++k)
            out << (k > 1 ? "," : "") << "c" << k;
        out << "\n";
    }
    for (const auto& p : points) {
        const auto& w = p.weights();
        for (size_t c = 0; c < w.size(); ++c)
            out << (c ? "," : "") << format_double(w[c]);
        out << "\n";
    }
}

void write_projection_run(const std::filesystem::path& dir,
                          const UnlabeledFacetSets& sets, std::uint64_t seed,
                          bool shuffled) {
    std::filesystem::create_directories(dir);
    nlohmann::json manifest;
    manifest["dim"] = sets.dim;
    manifest["count"] = sets.count;
    manifest["seed"] = seed;
    manifest["shuffled"] = shuffled;
    auto files = nlohmann::json::array();
    for (int j = 1; j <= sets.dim; ++j) {
        std::string name = "facet_" + std::to_string(j) + ".csv";
        files.push_back(name);
        std::ofstream out(dir / name);
        if (!out) {
            throw Error(ErrorCode::IoError, "cannot write " + (dir / name).string());
        }
        const auto& facet = sets.per_facet[static_cast<size_t>(j - 1)];
        bool first = true;
        for (int k : facet.front().labels()) {
            out << (first ? "" : ",") << "c" << k;
            first = false;
        }
        out << "\n";
        for (const auto& proj : facet) {
            for (size_t c = 0; c < proj.weights.size(); ++c)
                out << (c ? "," : "") << format_double(proj.weights[c]);
            out << "\n";
        }
    }
    manifest["facet_files"] = files;
    std::ofstream out(dir / "manifest.json");
    if (!out) {
        throw Error(ErrorCode::IoError,
                    "cannot write " + (dir / "manifest.json").string());
    }
    out << manifest.dump(2) << "\n";
}

ProjectionRunManifest read_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + manifest_path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
        ProjectionRunManifest m;
        m.dim = doc.at("dim").get<int>();
        m.count = doc.at("count").get<int>();
        m.seed = doc.at("seed").get<std::uint64_t>();
        m.shuffled = doc.at("shuffled").get<bool>();
        m.facet_files = doc.at("facet_files").get<std::vector<std::string>>();
        return m;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::ParseError,
                    manifest_path.string() + ": " + e.what());
    }
}

UnlabeledFacetSets read_projection_run(
    const std::filesystem::path& manifest_path) {
    auto m = read_manifest(manifest_path);
    if (static_cast<int>(m.facet_files.size()) != m.dim) {
        throw Error(ErrorCode::ParseError,
                    manifest_path.string() + ": facet file count != dim");
    }
    UnlabeledFacetSets sets;
    sets.dim = m.dim;
    sets.count = m.count;
    sets.per_facet.resize(static_cast<size_t>(m.dim));
    const auto dir = manifest_path.parent_path();
    for (int j = 1; j <= m.dim; ++j) {
        auto rows = read_numeric_csv(dir / m.facet_files[static_cast<size_t>(j - 1)]);
        auto& facet = sets.per_facet[static_cast<size_t>(j - 1)];
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != m.dim - 1) {
                throw Error(ErrorCode::ParseError,
                            m.facet_files[static_cast<size_t>(j - 1)] +
                                ": wrong column count for dim " +
                                std::to_string(m.dim));
            }
            FacetProjection proj;
            proj.dim = m.dim;
            proj.dropped = j;
            proj.weights = row;
            facet.push_back(std::move(proj));
        }
        if (static_cast<int>(facet.size()) != m.count) {
            throw Error(ErrorCode::ParseError,
                        m.facet_files[static_cast<size_t>(j - 1)] +
                            ": expected " + std::to_string(m.count) + " rows");
        }
    }
    return sets;
}

}  // namespace splx
