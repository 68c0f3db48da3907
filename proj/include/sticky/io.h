#ifndef STICKY_IO_H_
#define STICKY_IO_H_

#include <optional>
#include <string>

#include "json.hpp"
#include "sticky/enumeration.h"
#include "sticky/geometry.h"
#include "sticky/manifold.h"
#include "sticky/symmetry.h"

namespace sticky {

inline constexpr int kSchemaVersion = 1;

struct ClusterInput {
  Cluster cluster;
  std::optional<Partition> colors;
};

// {"positions": [[x,y,z],...], "radii": [...], "colors": [...]}.  Radii
// default to 0.5 when absent.  Throws Error(kIo) on malformed input.
ClusterInput ParseClusterJson(const std::string& text);
ClusterInput ReadClusterFile(const std::string& path);
nlohmann::json ClusterToJson(const Cluster& cluster);

nlohmann::json ConfigToJson(const SymmetryOptions& options);
nlohmann::json ReportToJson(const SymmetryReport& report);
// Inverse of ReportToJson (per-element path statistics are not restored).
SymmetryReport ReportFromJson(const nlohmann::json& j);

nlohmann::json SurveyToJson(const SurveyResult& result, const SurveyOptions& options);
// One row per entry: d, sigma, n, |G|, |P|, seed, contacts.
std::string SurveyCsv(const SurveyResult& result);

nlohmann::json PathToJson(const PathResult& result, const PathConfig& config);
// Coordinates plus a step-type column.  Uses the trace when present,
// otherwise the accepted points.
std::string PathCsv(const PathResult& result);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace sticky

#endif  // STICKY_IO_H_
