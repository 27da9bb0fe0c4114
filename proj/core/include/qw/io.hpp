#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qw/analysis.hpp"
#include "qw/config.hpp"
#include "qw/matrix.hpp"

namespace qw::io {

// Malformed or schema-violating input file.
struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Doubles are serialized with 17 significant digits so every value
// round-trips exactly and reruns are byte-comparable.
std::string format_double(double v);

// Long form: header "t,x,p", rows sorted by (t, x).
std::string distributions_csv_long(const RealMatrix& pbar);

// Wide form: header "t,x0,...,x{d-1}", one row per time step.
std::string distributions_csv_wide(const RealMatrix& pbar);

// Header "t,mean_displacement,variance".
std::string moments_csv(const MomentSeries& series);

// Accepts either distributions form; the header decides. Rows must cover
// t = 0..T and x = 0..d-1 completely and in order.
RealMatrix read_distributions_csv(const std::filesystem::path& path);

MomentSeries read_moments_csv(const std::filesystem::path& path);

// Write via a temp file in the same directory, then rename over the target.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

inline constexpr std::string_view kArtifactName = "qwalk";
inline constexpr std::string_view kArtifactVersion = "0.1.0";

std::string field_to_string(FieldKind f);
FieldKind field_from_string(std::string_view s);

// Run manifest: config echo, version, wall-clock duration, output file list.
std::string manifest_json(const WalkConfig& config, double duration_seconds,
                          const std::vector<std::string>& outputs);

// Re-parse the "config" object of a manifest; round-trips to an equal WalkConfig.
WalkConfig config_from_manifest_json(const std::string& text);

}  // namespace qw::io
