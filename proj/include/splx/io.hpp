#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "splx/set_matching.hpp"

namespace splx {

/// Rows of J comma-separated reals, optional header line. Every row is
/// validated under `policy`; parse and validation errors report the row.
std::vector<BarycentricPoint> ingest_csv(const std::filesystem::path& path,
                                         BarycentricPoint::Policy policy);

void write_points_csv(const std::filesystem::path& path,
                      const std::vector<BarycentricPoint>& points);

/// Per-facet projection files plus the manifest tying them to one run.
/// facet_<j>.csv holds the projections with dropped == j, columns labeled by
/// the surviving component indices; row orders are independent when
/// shuffled.
struct ProjectionRunManifest {
    int dim = 0;
    int count = 0;
    std::uint64_t seed = 0;
    bool shuffled = false;
    std::vector<std::string> facet_files;  // [j-1]
};

void write_projection_run(const std::filesystem::path& dir,
                          const UnlabeledFacetSets& sets, std::uint64_t seed,
                          bool shuffled);

ProjectionRunManifest read_manifest(const std::filesystem::path& manifest_path);

UnlabeledFacetSets read_projection_run(
    const std::filesystem::path& manifest_path);

}  // namespace splx
