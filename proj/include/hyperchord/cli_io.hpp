#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperchord/uniformity.hpp"

namespace hyperchord {

// Malformed or inconsistent external input (files, CLI parameters).
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

extern const char* const library_version;

enum class PointFormat { csv, latlon_csv };

// Provenance block embedded in every artifact a command writes.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::string library_version;
  std::string timestamp;
};

RunManifest make_manifest(std::string command,
                          std::map<std::string, std::string> parameters);

// Points CSV: one `# dim=N radius=R` header line, then one row of N
// comma-separated coordinates per point. Points are renormalized onto the
// sphere; rows further than 1e-6 relative from it are reported as errors.
PointSet read_points(const std::filesystem::path& path, PointFormat format,
                     double min_size = 0.0);
void write_points_csv(const std::filesystem::path& path, const PointSet& set,
                      const RunManifest& manifest);

void write_labels(const std::filesystem::path& path, const std::vector<int>& labels);
std::vector<int> read_labels(const std::filesystem::path& path);

// d,pdf,cdf rows, `samples` points evenly spaced over [0, 2R]. The spec
// only matters for hemisphere geometry, whose cdf is built by quadrature.
void write_distribution_curves_csv(const std::filesystem::path& path, int dimension,
                                   double radius, Geometry geometry, std::size_t samples,
                                   const RunManifest& manifest,
                                   const QuadratureSpec& spec = default_hemisphere_quadrature());

std::string geometry_name(Geometry geometry);
Geometry geometry_from_name(const std::string& name);
std::string mode_name(DistanceMode::Kind kind);
DistanceMode::Kind mode_from_name(const std::string& name);

nlohmann::json to_json(const RunManifest& manifest);
nlohmann::json to_json(const CalibrationTable& table);
CalibrationTable calibration_from_json(const nlohmann::json& j);

nlohmann::json report_json(const UniformityReport& report, const CalibrationTable& table,
                           const RunManifest& manifest);
nlohmann::json extraction_json(const ExtractionResult& result, const RunManifest& manifest);
nlohmann::json detection_json(const DetectionResult& result, const RunManifest& manifest);
nlohmann::json doubling_json(const DoublingTrace& trace, const RunManifest& manifest);

// Small structural checker: types, required properties, items and enums.
bool validate_against_schema(const nlohmann::json& value, const nlohmann::json& schema,
                             std::string* error = nullptr);

}  // namespace hyperchord
