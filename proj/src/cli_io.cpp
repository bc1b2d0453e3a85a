#include "hyperchord/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace hyperchord {

const char* const library_version = "0.1.0";

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string iso_timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

bool parse_strict_double(const std::string& field, double& out) {
  const char* begin = field.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0' && std::isfinite(out);
}

std::string offending_lines_message(const std::string& what,
                                    const std::vector<std::size_t>& lines) {
  std::ostringstream os;
  os << what << " on line";
  if (lines.size() > 1) os << 's';
  os << ' ';
  const std::size_t shown = std::min<std::size_t>(lines.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i > 0) os << ", ";
    os << lines[i];
  }
  if (lines.size() > shown) os << ", ... (" << lines.size() << " total)";
  return os.str();
}

PointSet read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path.string());

  std::string line;
  std::size_t line_no = 0;
  int dim = 0;
  double radius = 0.0;
  bool header_seen = false;

  PointSet set;
  std::vector<std::size_t> malformed;
  std::vector<std::size_t> off_sphere;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (line[0] == '#') {
      if (!header_seen &&
          std::sscanf(line.c_str(), "# dim=%d radius=%lf", &dim, &radius) == 2) {
        if (dim < 1 || !(radius > 0.0))
          throw validation_error("bad header values in " + path.string());
        header_seen = true;
        set.dimension = dim;
        set.radius = radius;
      }
      continue;
    }
    if (!header_seen)
      throw validation_error("missing `# dim=N radius=R` header in " + path.string());

    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != static_cast<std::size_t>(dim)) {
      malformed.push_back(line_no);
      continue;
    }
    std::vector<double> row(static_cast<std::size_t>(dim));
    bool ok = true;
    for (std::size_t k = 0; k < row.size(); ++k)
      ok = ok && parse_strict_double(fields[k], row[k]);
    if (!ok) {
      malformed.push_back(line_no);
      continue;
    }
    double norm2 = 0.0;
    for (double v : row) norm2 += v * v;
    const double norm = std::sqrt(norm2);
    if (std::fabs(norm - radius) > 1e-6 * radius) {
      off_sphere.push_back(line_no);
      continue;
    }
    // Rescaling a point that is already on the sphere to machine precision
    // would only inject rounding noise, so read(write(set)) stays an identity.
    if (std::fabs(norm - radius) > 1e-12 * radius) {
      const double scale = radius / norm;
      for (double& v : row) v *= scale;
    }
    for (double v : row) set.coords.push_back(v);
  }

  if (!header_seen)
    throw validation_error("missing `# dim=N radius=R` header in " + path.string());
  if (!malformed.empty())
    throw validation_error(offending_lines_message("malformed row", malformed) + " in " +
                           path.string());
  if (!off_sphere.empty())
    throw validation_error(
        offending_lines_message("point off the sphere (|norm - R| > 1e-6 R)", off_sphere) +
        " in " + path.string());
  return set;
}

constexpr double deg = 3.14159265358979323846 / 180.0;

PointSet read_points_latlon(const std::filesystem::path& path, double min_size) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path.string());

  PointSet set;
  set.dimension = 3;
  set.radius = 1.0;

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::size_t> malformed;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 2 && fields.size() != 3) {
      malformed.push_back(line_no);
      continue;
    }
    double lat = 0.0, lon = 0.0, size = 0.0;
    bool ok = parse_strict_double(fields[0], lat) && parse_strict_double(fields[1], lon);
    if (ok && fields.size() == 3) ok = parse_strict_double(fields[2], size);
    if (!ok || lat < -90.0 || lat > 90.0) {
      malformed.push_back(line_no);
      continue;
    }
    if (fields.size() == 3 && size < min_size) continue;
    const double clat = std::cos(lat * deg);
    set.coords.push_back(clat * std::cos(lon * deg));
    set.coords.push_back(clat * std::sin(lon * deg));
    set.coords.push_back(std::sin(lat * deg));
  }
  if (!malformed.empty())
    throw validation_error(offending_lines_message("malformed row", malformed) + " in " +
                           path.string());
  return set;
}

}  // namespace

RunManifest make_manifest(std::string command, std::map<std::string, std::string> parameters) {
  RunManifest m;
  m.command = std::move(command);
  m.parameters = std::move(parameters);
  m.library_version = library_version;
  m.timestamp = iso_timestamp_utc();
  return m;
}

PointSet read_points(const std::filesystem::path& path, PointFormat format, double min_size) {
  return format == PointFormat::csv ? read_points_csv(path)
                                    : read_points_latlon(path, min_size);
}

void write_points_csv(const std::filesystem::path& path, const PointSet& set,
                      const RunManifest& manifest) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write " + path.string());
  out << "# dim=" << set.dimension << " radius=" << format_double(set.radius) << '\n';
  out << "# manifest " << to_json(manifest).dump() << '\n';
  const std::size_t m = set.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto p = set.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k > 0) out << ',';
      out << format_double(p[k]);
    }
    out << '\n';
  }
}

void write_labels(const std::filesystem::path& path, const std::vector<int>& labels) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write " + path.string());
  for (int v : labels) out << v << '\n';
}

std::vector<int> read_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path.string());
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    double v = 0.0;
    if (!parse_strict_double(line, v) || v != std::floor(v))
      throw validation_error(offending_lines_message("malformed label", {line_no}) + " in " +
                             path.string());
    labels.push_back(static_cast<int>(v));
  }
  return labels;
}

void write_distribution_curves_csv(const std::filesystem::path& path, int dimension,
                                   double radius, Geometry geometry, std::size_t samples,
                                   const RunManifest& manifest, const QuadratureSpec& spec) {
  if (samples < 2) throw validation_error("curves need at least two samples");
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write " + path.string());
  out << "# dim=" << dimension << " radius=" << format_double(radius)
      << " geometry=" << geometry_name(geometry) << '\n';
  out << "# manifest " << to_json(manifest).dump() << '\n';
  out << "d,pdf,cdf\n";
  for (std::size_t i = 0; i < samples; ++i) {
    const double d = 2.0 * radius * static_cast<double>(i) /
                     static_cast<double>(samples - 1);
    double pdf = 0.0;
    double cdf = 0.0;
    if (geometry == Geometry::sphere) {
      const SphereChordDistribution dist(dimension, radius);
      pdf = sphere_pdf(dist, d);
      cdf = sphere_cdf(dist, d);
    } else {
      const HemisphereChordDistribution dist(dimension, radius);
      pdf = hemisphere_pdf(dist, d, spec);
      cdf = hemisphere_cdf(dist, d, spec);
    }
    out << format_double(d) << ',' << format_double(pdf) << ',' << format_double(cdf)
        << '\n';
  }
}

std::string geometry_name(Geometry geometry) {
  return geometry == Geometry::sphere ? "sphere" : "hemisphere";
}

Geometry geometry_from_name(const std::string& name) {
  if (name == "sphere") return Geometry::sphere;
  if (name == "hemisphere") return Geometry::hemisphere;
  throw validation_error("unknown geometry: " + name);
}

std::string mode_name(DistanceMode::Kind kind) {
  switch (kind) {
    case DistanceMode::Kind::all_pairs:
      return "all-pairs";
    case DistanceMode::Kind::fixed_point:
      return "fixed-point";
    default:
      return "pair-list";
  }
}

DistanceMode::Kind mode_from_name(const std::string& name) {
  if (name == "all-pairs") return DistanceMode::Kind::all_pairs;
  if (name == "fixed-point") return DistanceMode::Kind::fixed_point;
  if (name == "pair-list") return DistanceMode::Kind::pair_list;
  throw validation_error("unknown distance mode: " + name);
}

nlohmann::json to_json(const RunManifest& manifest) {
  return {{"command", manifest.command},
          {"parameters", manifest.parameters},
          {"library_version", manifest.library_version},
          {"timestamp", manifest.timestamp}};
}

nlohmann::json to_json(const CalibrationTable& table) {
  return {{"dimension", table.dimension},
          {"radius", table.radius},
          {"geometry", geometry_name(table.geometry)},
          {"mode", mode_name(table.mode)},
          {"target_size", table.target_size},
          {"reference_size", table.reference_size},
          {"bin_count", table.bin_count},
          {"replicate_count", table.replicate_count},
          {"alpha_percent", table.alpha_percent},
          {"median_l1", table.median_l1},
          {"quantile_l1", table.quantile_l1},
          {"seed", table.seed.seed},
          {"stream_id", table.seed.stream_id}};
}

CalibrationTable calibration_from_json(const nlohmann::json& j) {
  try {
    CalibrationTable table;
    table.dimension = j.at("dimension").get<int>();
    table.radius = j.at("radius").get<double>();
    table.geometry = geometry_from_name(j.at("geometry").get<std::string>());
    table.mode = mode_from_name(j.at("mode").get<std::string>());
    table.target_size = j.at("target_size").get<std::size_t>();
    table.reference_size = j.at("reference_size").get<std::size_t>();
    table.bin_count = j.at("bin_count").get<std::size_t>();
    table.replicate_count = j.at("replicate_count").get<std::size_t>();
    table.alpha_percent = j.at("alpha_percent").get<double>();
    table.median_l1 = j.at("median_l1").get<double>();
    table.quantile_l1 = j.at("quantile_l1").get<double>();
    table.seed.seed = j.at("seed").get<std::uint64_t>();
    table.seed.stream_id = j.at("stream_id").get<std::uint64_t>();
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("bad calibration table: ") + e.what());
  }
}

nlohmann::json report_json(const UniformityReport& report, const CalibrationTable& table,
                           const RunManifest& manifest) {
  return {{"l1", report.l1},
          {"threshold", report.threshold},
          {"verdict", report.non_uniform ? "non-uniform" : "uniform-compatible"},
          {"confidence_percent", report.confidence_percent},
          {"geometry", geometry_name(report.geometry)},
          {"mode", mode_name(report.mode)},
          {"anchor_index", report.anchor_index},
          {"set_size", report.set_size},
          {"pair_count", report.pair_count},
          {"bin_count", report.bin_count},
          {"bound_available", report.bound_available},
          {"max_uniform_fraction", report.max_uniform_fraction},
          {"max_uniform_count", report.max_uniform_count},
          {"notes", report.notes},
          {"calibration", to_json(table)},
          {"manifest", to_json(manifest)}};
}

nlohmann::json extraction_json(const ExtractionResult& result, const RunManifest& manifest) {
  std::uint64_t total_votes = 0;
  for (auto v : result.vote_state.votes) total_votes += v;
  return {{"l1", result.l1},
          {"set_size", result.set_size},
          {"selected", result.selected},
          {"rounds", result.vote_state.rounds},
          {"per_round_count", result.vote_state.per_round_count},
          {"total_votes", total_votes},
          {"votes", result.vote_state.votes},
          {"notes", result.notes},
          {"manifest", to_json(manifest)}};
}

nlohmann::json detection_json(const DetectionResult& result, const RunManifest& manifest) {
  nlohmann::json j{{"selected", result.selected},
                   {"ranking", result.ranking},
                   {"per_point_l1", result.per_point_l1},
                   {"has_ground_truth", result.has_ground_truth},
                   {"manifest", to_json(manifest)}};
  if (result.has_ground_truth) j["detection_rate"] = result.detection_rate;
  return j;
}

nlohmann::json doubling_json(const DoublingTrace& trace, const RunManifest& manifest) {
  const char* verdict = trace.verdict == DoublingVerdict::validated      ? "validated"
                        : trace.verdict == DoublingVerdict::bug_detected ? "bug-detected"
                                                                         : "inconclusive";
  return {{"sizes", trace.sizes},
          {"l1_values", trace.l1_values},
          {"verdict", verdict},
          {"manifest", to_json(manifest)}};
}

namespace {

bool type_matches(const nlohmann::json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

bool check_schema(const nlohmann::json& value, const nlohmann::json& schema,
                  const std::string& where, std::string* error) {
  const auto fail = [&](const std::string& msg) {
    if (error) *error = where + ": " + msg;
    return false;
  };
  if (schema.contains("type") &&
      !type_matches(value, schema.at("type").get<std::string>()))
    return fail("expected type " + schema.at("type").get<std::string>());
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& candidate : schema.at("enum")) found = found || candidate == value;
    if (!found) return fail("value not in enum");
  }
  if (schema.contains("required")) {
    for (const auto& key : schema.at("required")) {
      if (!value.contains(key.get<std::string>()))
        return fail("missing required property " + key.get<std::string>());
    }
  }
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [key, sub] : schema.at("properties").items()) {
      if (value.contains(key) &&
          !check_schema(value.at(key), sub, where + "/" + key, error))
        return false;
    }
  }
  if (schema.contains("items") && value.is_array()) {
    std::size_t i = 0;
    for (const auto& element : value) {
      if (!check_schema(element, schema.at("items"), where + "[" + std::to_string(i) + "]",
                        error))
        return false;
      ++i;
    }
  }
  return true;
}

}  // namespace

bool validate_against_schema(const nlohmann::json& value, const nlohmann::json& schema,
                             std::string* error) {
  return check_schema(value, schema, "$", error);
}

}  // namespace hyperchord
