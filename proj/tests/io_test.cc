#include "sticky/io.h"

#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>

#include <gtest/gtest.h>

#include "sticky/error.h"
#include "test_util.h"

namespace sticky {
namespace {

std::optional<ErrorCode> CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

TEST(ClusterJsonTest, RoundTrip) {
  const Cluster c = AlternatingRadiiLoop(6, 0.6, 0.4);
  const ClusterInput in = ParseClusterJson(ClusterToJson(c).dump());
  EXPECT_EQ(in.cluster.positions(), c.positions());
  EXPECT_EQ(in.cluster.radii(), c.radii());
  EXPECT_FALSE(in.colors);
}

TEST(ClusterJsonTest, DefaultsAndColors) {
  const ClusterInput in = ParseClusterJson(
      R"({"positions": [[0,0,0],[1,0,0],[2,0,0]], "colors": [1, 1, 2]})");
  EXPECT_EQ(in.cluster.size(), 3);
  EXPECT_DOUBLE_EQ(in.cluster.radii()[2], 0.5);
  ASSERT_TRUE(in.colors);
  EXPECT_EQ(in.colors->num_classes(), 2);
  EXPECT_EQ(in.colors->label(0), in.colors->label(1));
}

TEST(ClusterJsonTest, MalformedInput) {
  EXPECT_EQ(CodeOf([] { ParseClusterJson("{"); }), ErrorCode::kIo);
  EXPECT_EQ(CodeOf([] { ParseClusterJson(R"({"radii": [0.5]})"); }), ErrorCode::kIo);
  EXPECT_EQ(CodeOf([] { ParseClusterJson(R"({"positions": [[0,0]]})"); }), ErrorCode::kIo);
  EXPECT_EQ(CodeOf([] {
              ParseClusterJson(R"({"positions": [[0,0,0],[1,0,0]], "radii": [0.5]})");
            }),
            ErrorCode::kIo);
  EXPECT_EQ(CodeOf([] { ReadClusterFile("/nonexistent/cluster.json"); }), ErrorCode::kIo);
}

TEST(ReportJsonTest, RoundTripAndSchema) {
  SymmetryOptions o;
  o.path.nmax = 20000;
  o.path.retries = 1;
  const SymmetryReport r = StickySymmetryGroup(SymmetricTwoBondCluster(), o);
  const nlohmann::json j = ReportToJson(r);
  EXPECT_EQ(j.at("version"), kSchemaVersion);
  EXPECT_EQ(j.at("sigma"), 8);
  EXPECT_EQ(j.at("counting_number"), 180);
  EXPECT_EQ(j.at("automorphism_group").at("order"), 16);
  EXPECT_EQ(j.at("sticky_group").at("elements").size(), 8u);
  EXPECT_EQ(j.at("contacts").size(), 10u);
  // Contacts are reported with 1-based labels.
  for (const auto& c : j.at("contacts")) EXPECT_GE(c[0].get<int>(), 1);

  const SymmetryReport back = ReportFromJson(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.sigma, r.sigma);
  EXPECT_EQ(back.counting_number, r.counting_number);
  EXPECT_EQ(back.sticky_group.elements(), r.sticky_group.elements());
  EXPECT_EQ(back.point_group.elements(), r.point_group.elements());
  EXPECT_EQ(back.adjacency, r.adjacency);
  EXPECT_EQ(back.automorphisms, r.automorphisms);
  EXPECT_EQ(back.options.path.nmax, 20000);
  EXPECT_NO_THROW(CheckReport(back));

  const SymmetryReport colored =
      ColoredSymmetry(back, Partition({0, 0, 1, 1, 2, 2}));
  EXPECT_EQ(colored.sigma, 4u);
}

TEST(PathJsonTest, ToyPath) {
  PathConfig cfg;
  cfg.tol = cfg.sigma = 0.2;
  cfg.nr = 50;
  cfg.record_trace = true;
  const PathResult r =
      FindPath(ToyDomain(), Eigen::Vector2d(-2.9, 12.5), Eigen::Vector2d(2.9, 12.5), cfg);
  const nlohmann::json j = PathToJson(r, cfg);
  EXPECT_EQ(j.at("status"), r.found() ? "found" : "not-found");
  EXPECT_EQ(j.at("stats").at("total_points"), r.stats.total_points);
  const std::string csv = PathCsv(r);
  const auto lines = std::count(csv.begin(), csv.end(), '\n');
  EXPECT_EQ(static_cast<std::size_t>(lines), r.trace.size() + 1);
  EXPECT_NE(csv.find("step"), std::string::npos);
}

TEST(FileTest, WriteAndRead) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "sticky_io_test.json").string();
  WriteTextFile(path, ClusterToJson(CanonicalChain(3)).dump());
  EXPECT_EQ(ReadClusterFile(path).cluster.size(), 3);
  std::remove(path.c_str());
}

}  // namespace
}  // namespace sticky
