// Command-line front end: symmetry, color, survey and path subcommands.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sticky/constraints.h"
#include "sticky/enumeration.h"
#include "sticky/error.h"
#include "sticky/geometry.h"
#include "sticky/io.h"
#include "sticky/manifold.h"
#include "sticky/symmetry.h"

namespace {

using sticky::Error;
using sticky::ErrorCode;

enum ExitCode {
  kOk = 0,
  kOther = 1,
  kUsage = 2,
  kIoError = 3,
  kOverlapError = 4,
  kRankError = 5,
  kInfeasible = 6,
  kColorConflict = 7,
};

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return kIoError;
    case ErrorCode::kOverlap: return kOverlapError;
    case ErrorCode::kRankDeficient: return kRankError;
    case ErrorCode::kInfeasibleEndpoint: return kInfeasible;
    case ErrorCode::kColorRadiiConflict: return kColorConflict;
    case ErrorCode::kInvalidArgument: return kUsage;
    default: return kOther;
  }
}

struct CommonFlags {
  double tol = 0.1;
  double sigma = 0.1;
  double beta = -0.1;
  int nr = 20;
  std::int64_t nmax = 100000;
  double tol_n = 1e-3;
  std::string mode = "sample";
  std::uint64_t seed = 1;
  int retries = 3;
  int jobs = 0;
  std::string output;
};

struct SymmetryFlags {
  bool no_inversions = false;
  bool fix_com = true;
  std::string strategy = "cosets";
  bool reverify = false;
  double eps_contact = sticky::kDefaultContactTolerance;
  double eps_d = 1e-6;
};

void AddCommon(CLI::App* app, CommonFlags* f) {
  app->add_option("--tol", f->tol, "descent step bound and arrival radius")
      ->capture_default_str();
  app->add_option("--sigma", f->sigma, "random step scale")->capture_default_str();
  app->add_option("--beta", f->beta, "inverse temperature of sample mode")
      ->capture_default_str();
  app->add_option("--nr", f->nr, "random steps per burst")->capture_default_str();
  app->add_option("--nmax", f->nmax, "point budget per attempt")->capture_default_str();
  app->add_option("--toln", f->tol_n, "stagnation threshold")->capture_default_str();
  app->add_option("--mode", f->mode, "random step mode")
      ->check(CLI::IsMember({"gaussian", "sample"}))
      ->capture_default_str();
  app->add_option("--seed", f->seed, "run seed")->capture_default_str();
  app->add_option("--retries", f->retries, "seeded attempts per search")
      ->capture_default_str();
  app->add_option("--jobs", f->jobs, "concurrent searches (0 = all cores)")
      ->capture_default_str();
  app->add_option("-o,--output", f->output, "output file (default stdout)");
}

void AddSymmetryFlags(CLI::App* app, SymmetryFlags* f) {
  app->add_flag("--no-inversions", f->no_inversions,
                "work in G alone (distinguish mirror images)");
  app->add_flag("--fix-com,!--no-fix-com", f->fix_com,
                "fix the center of mass during path searches")
      ->capture_default_str();
  app->add_option("--strategy", f->strategy, "element search strategy")
      ->check(CLI::IsMember({"cosets", "exhaustive"}))
      ->capture_default_str();
  app->add_flag("--reverify", f->reverify,
                "re-search closure-inferred elements with fresh seeds");
  app->add_option("--eps-contact", f->eps_contact, "contact tolerance")
      ->capture_default_str();
  app->add_option("--eps-d", f->eps_d, "distance-matrix tolerance")
      ->capture_default_str();
}

sticky::PathConfig ToPathConfig(const CommonFlags& f) {
  sticky::PathConfig c;
  c.tol = f.tol;
  c.sigma = f.sigma;
  c.beta = f.beta;
  c.nr = f.nr;
  c.nmax = f.nmax;
  c.tol_n = f.tol_n;
  c.mode = sticky::ParseRandomMode(f.mode);
  c.seed = f.seed;
  c.retries = f.retries;
  c.Validate();
  return c;
}

sticky::SymmetryOptions ToOptions(const CommonFlags& c, const SymmetryFlags& s) {
  sticky::SymmetryOptions o;
  o.path = ToPathConfig(c);
  o.include_inversions = !s.no_inversions;
  o.fix_com = s.fix_com;
  o.strategy = sticky::ParseSearchStrategy(s.strategy);
  o.reverify_closure = s.reverify;
  o.eps_contact = s.eps_contact;
  o.eps_d = s.eps_d;
  o.jobs = c.jobs;
  return o;
}

int ParseSize(const std::string& text, const std::string& name) {
  try {
    std::size_t used = 0;
    const int n = std::stoi(text, &used);
    if (used == text.size()) return n;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kInvalidArgument, "bad size in builtin '" + name + "'");
}

// loop:N, chain:N, radii-loop:N, octahedron, polytetrahedron, two-bond.
sticky::Cluster Builtin(const std::string& name) {
  const auto colon = name.find(':');
  const std::string kind = name.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (kind == "loop") return sticky::CanonicalLoop(ParseSize(arg, name));
  if (kind == "chain") return sticky::CanonicalChain(ParseSize(arg, name));
  if (kind == "radii-loop") {
    return sticky::AlternatingRadiiLoop(ParseSize(arg, name), 0.4, 0.6);
  }
  if (name == "octahedron") return sticky::Octahedron();
  if (name == "polytetrahedron") return sticky::Polytetrahedron();
  if (name == "two-bond") return sticky::SymmetricTwoBondCluster();
  throw Error(ErrorCode::kInvalidArgument, "unknown builtin '" + name + "'");
}

std::vector<int> ParseLabels(const std::string& text) {
  std::vector<int> labels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      labels.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad color label '" + item + "'");
    }
  }
  return labels;
}

Eigen::VectorXd ParsePoint(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad coordinate '" + item + "'");
    }
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<int>(values.size()));
}

void Emit(const std::string& path, const nlohmann::json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
  } else {
    sticky::WriteTextFile(path, text);
  }
}

// Loads the input cluster (file or builtin) and optionally randomizes it.
sticky::ClusterInput LoadCluster(const std::string& input, const std::string& builtin,
                                 int sample_steps, double sigma, std::uint64_t seed) {
  sticky::ClusterInput in;
  if (!builtin.empty()) {
    in.cluster = Builtin(builtin);
  } else if (!input.empty()) {
    in = sticky::ReadClusterFile(input);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "give an input file or --builtin");
  }
  if (sample_steps > 0) {
    const auto a = sticky::DetectContacts(in.cluster);
    const sticky::Cluster snapped = sticky::SnapToContacts(in.cluster, a);
    const auto cs = sticky::BuildConstraintSystem(a, snapped.radii(), true);
    in.cluster = sticky::Cluster::FromFlat(
        sticky::SampleConfiguration(cs, snapped.Flattened(), sample_steps, sigma,
                                    sticky::DeriveSeed(seed, 0x73616d70)),
        snapped.radii());
  }
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sticky symmetry groups, symmetry numbers and counting numbers of "
               "hard-sphere clusters"};
  app.require_subcommand(1);

  CommonFlags sym_common;
  SymmetryFlags sym_flags;
  std::string sym_input, sym_builtin, sym_colors;
  int sym_sample = 0;
  auto* sym = app.add_subcommand("symmetry", "compute the sticky symmetry group");
  sym->add_option("input", sym_input, "cluster JSON file");
  sym->add_option("--builtin", sym_builtin,
                  "loop:N, chain:N, radii-loop:N, octahedron, polytetrahedron, two-bond");
  sym->add_option("--colors", sym_colors, "comma-separated color labels");
  sym->add_option("--sample-steps", sym_sample,
                  "randomize the embedding with this many sampling steps first")
      ->capture_default_str();
  AddCommon(sym, &sym_common);
  AddSymmetryFlags(sym, &sym_flags);

  std::string color_report, color_labels, color_output;
  auto* color = app.add_subcommand("color", "restrict a report to a coloring");
  color->add_option("report", color_report, "symmetry report JSON")->required();
  color->add_option("--colors", color_labels, "comma-separated color labels")
      ->required();
  color->add_option("-o,--output", color_output, "output file (default stdout)");

  CommonFlags survey_common;
  SymmetryFlags survey_flags;
  int max_d = 7;
  std::string survey_csv;
  auto* survey = app.add_subcommand("survey", "all connected N = 6 clusters");
  survey->add_option("--max-d", max_d, "largest number of broken contacts")
      ->check(CLI::Range(0, 12))
      ->capture_default_str();
  survey->add_option("--csv", survey_csv, "also write a CSV table");
  AddCommon(survey, &survey_common);
  AddSymmetryFlags(survey, &survey_flags);

  CommonFlags path_common;
  std::string path_input, path_builtin = "toy2d", path_from, path_to, path_op = "E*",
                          path_csv;
  bool path_fix_com = true;
  auto* path = app.add_subcommand("path", "search one deformation path");
  path->add_option("input", path_input, "cluster JSON file");
  path->add_option("--builtin", path_builtin, "toy2d or a cluster builtin")
      ->capture_default_str();
  path->add_option("--from", path_from, "start point x,y (toy2d)");
  path->add_option("--to", path_to, "end point x,y (toy2d)");
  path->add_option("--op", path_op, "target PI operation for clusters, e.g. (12)*")
      ->capture_default_str();
  path->add_option("--csv", path_csv, "write every generated point as CSV");
  path->add_flag("--fix-com,!--no-fix-com", path_fix_com, "fix the center of mass")
      ->capture_default_str();
  AddCommon(path, &path_common);
  path_common.tol = 0.2;
  path_common.sigma = 0.2;
  path_common.nr = 50;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sym) {
      const auto options = ToOptions(sym_common, sym_flags);
      auto in = LoadCluster(sym_input, sym_builtin, sym_sample, options.path.sigma,
                            options.path.seed);
      if (!sym_colors.empty()) in.colors = sticky::Partition(ParseLabels(sym_colors));
      sticky::SymmetryReport report = sticky::StickySymmetryGroup(in.cluster, options);
      if (in.colors) report = sticky::ColoredSymmetry(report, *in.colors);
      Emit(sym_common.output, sticky::ReportToJson(report));
    } else if (*color) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(sticky::ReadTextFile(color_report));
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kIo, std::string("malformed report JSON: ") + e.what());
      }
      const auto report = sticky::ReportFromJson(j);
      const auto colored =
          sticky::ColoredSymmetry(report, sticky::Partition(ParseLabels(color_labels)));
      Emit(color_output, sticky::ReportToJson(colored));
    } else if (*survey) {
      sticky::SurveyOptions options;
      options.symmetry = ToOptions(survey_common, survey_flags);
      options.max_d = max_d;
      options.jobs = survey_common.jobs;
      const auto result = sticky::Survey(options);
      Emit(survey_common.output, sticky::SurveyToJson(result, options));
      if (!survey_csv.empty()) sticky::WriteTextFile(survey_csv, sticky::SurveyCsv(result));
    } else if (*path) {
      sticky::PathConfig config = ToPathConfig(path_common);
      config.record_trace = !path_csv.empty();
      sticky::PathResult result;
      if (path_input.empty() && path_builtin == "toy2d") {
        const auto cs = sticky::ToyDomain();
        const Eigen::VectorXd x0 =
            path_from.empty() ? Eigen::VectorXd(Eigen::Vector2d(-2.9, 12.5)) : ParsePoint(path_from);
        const Eigen::VectorXd x1 =
            path_to.empty() ? Eigen::VectorXd(Eigen::Vector2d(2.9, 12.5)) : ParsePoint(path_to);
        if (x0.size() != 2 || x1.size() != 2) {
          throw Error(ErrorCode::kInvalidArgument, "toy2d endpoints are 2-vectors");
        }
        result = sticky::FindPath(cs, x0, x1, config);
      } else {
        const auto in = LoadCluster(path_input, path_input.empty() ? path_builtin : "",
                                    0, config.sigma, config.seed);
        const auto a = sticky::DetectContacts(in.cluster);
        const sticky::Cluster x = sticky::SnapToContacts(in.cluster, a);
        const auto cs = sticky::BuildConstraintSystem(a, x.radii(), path_fix_com);
        const auto op = sticky::ParsePiOperation(path_op, x.size());
        result = sticky::FindPath(cs, x.Flattened(),
                                  sticky::ApplyPi(x.Flattened(), op), config);
      }
      Emit(path_common.output, sticky::PathToJson(result, config));
      if (!path_csv.empty()) sticky::WriteTextFile(path_csv, sticky::PathCsv(result));
    }
  } catch (const Error& e) {
    std::cerr << "error (" << sticky::ErrorCodeName(e.code()) << "): " << e.what() << "\n";
    return ExitFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOk;
}
