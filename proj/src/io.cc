#include "sticky/io.h"

#include <fstream>
#include <sstream>

#include "sticky/error.h"

namespace sticky {

using nlohmann::json;

namespace {

json Labels(const Partition& p) { return p.labels(); }

json GroupToJson(const PiGroup& g) {
  json elements = json::array();
  for (const auto& op : g.elements()) elements.push_back(ToCycleString(op));
  return {{"order", g.order()}, {"elements", elements}};
}

json StatsToJson(const PathStats& s) {
  return {{"total_points", s.total_points},
          {"descent_steps", s.descent_steps},
          {"random_steps", s.random_steps},
          {"boundary_rejections", s.boundary_rejections},
          {"projection_failures", s.projection_failures},
          {"stagnations", s.stagnations},
          {"metropolis_rejections", s.metropolis_rejections},
          {"max_descent_step", s.max_descent_step},
          {"max_random_step", s.max_random_step},
          {"attempts", s.attempts}};
}

ElementStatus ParseStatus(const std::string& s) {
  for (auto st : {ElementStatus::kRotation, ElementStatus::kPath, ElementStatus::kProduct,
                  ElementStatus::kClosure, ElementStatus::kNotFound}) {
    if (ElementStatusName(st) == s) return st;
  }
  throw Error(ErrorCode::kIo, "unknown element status '" + s + "'");
}

Provenance ToProvenance(ElementStatus s) {
  switch (s) {
    case ElementStatus::kRotation: return Provenance::kRotation;
    case ElementStatus::kPath: return Provenance::kPath;
    case ElementStatus::kProduct: return Provenance::kProduct;
    default: return Provenance::kClosure;
  }
}

Cluster ClusterFromJson(const json& j) {
  const auto& pos = j.at("positions");
  const int n = static_cast<int>(pos.size());
  Positions p(n, 3);
  for (int i = 0; i < n; ++i) {
    if (pos[i].size() != 3) throw Error(ErrorCode::kIo, "positions must be 3-vectors");
    for (int k = 0; k < 3; ++k) p(i, k) = pos[i][k].get<double>();
  }
  Eigen::VectorXd radii = Eigen::VectorXd::Constant(n, 0.5);
  if (j.contains("radii")) {
    const auto& r = j.at("radii");
    if (static_cast<int>(r.size()) != n) {
      throw Error(ErrorCode::kIo, "radii and positions differ in length");
    }
    for (int i = 0; i < n; ++i) radii[i] = r[i].get<double>();
  }
  return Cluster(std::move(p), std::move(radii));
}

}  // namespace

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

ClusterInput ParseClusterJson(const std::string& text) {
  ClusterInput input;
  try {
    const json j = json::parse(text);
    input.cluster = ClusterFromJson(j);
    if (j.contains("colors")) {
      auto colors = j.at("colors").get<std::vector<int>>();
      if (static_cast<int>(colors.size()) != input.cluster.size()) {
        throw Error(ErrorCode::kIo, "colors and positions differ in length");
      }
      input.colors = Partition(std::move(colors));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("malformed cluster JSON: ") + e.what());
  }
  return input;
}

ClusterInput ReadClusterFile(const std::string& path) {
  return ParseClusterJson(ReadTextFile(path));
}

json ClusterToJson(const Cluster& cluster) {
  json pos = json::array();
  for (int i = 0; i < cluster.size(); ++i) {
    pos.push_back({cluster.positions()(i, 0), cluster.positions()(i, 1),
                   cluster.positions()(i, 2)});
  }
  json radii = json::array();
  for (int i = 0; i < cluster.size(); ++i) radii.push_back(cluster.radii()[i]);
  return {{"positions", pos}, {"radii", radii}};
}

json ConfigToJson(const SymmetryOptions& o) {
  const PathConfig& p = o.path;
  return {{"tol", p.tol},
          {"sigma", p.sigma},
          {"beta", p.beta},
          {"nr", p.nr},
          {"nmax", p.nmax},
          {"toln", p.tol_n},
          {"tolq", p.tol_q},
          {"newton_max_iters", p.newton_max_iters},
          {"mode", RandomModeName(p.mode)},
          {"seed", p.seed},
          {"retries", p.retries},
          {"include_inversions", o.include_inversions},
          {"fix_com", o.fix_com},
          {"eps_contact", o.eps_contact},
          {"eps_d", o.eps_d},
          {"strategy", SearchStrategyName(o.strategy)},
          {"jobs", o.jobs},
          {"reverify_closure", o.reverify_closure}};
}

namespace {

SymmetryOptions ConfigFromJson(const json& j) {
  SymmetryOptions o;
  PathConfig& p = o.path;
  p.tol = j.at("tol").get<double>();
  p.sigma = j.at("sigma").get<double>();
  p.beta = j.at("beta").get<double>();
  p.nr = j.at("nr").get<int>();
  p.nmax = j.at("nmax").get<std::int64_t>();
  p.tol_n = j.at("toln").get<double>();
  p.tol_q = j.at("tolq").get<double>();
  p.newton_max_iters = j.at("newton_max_iters").get<int>();
  p.mode = ParseRandomMode(j.at("mode").get<std::string>());
  p.seed = j.at("seed").get<std::uint64_t>();
  p.retries = j.at("retries").get<int>();
  o.include_inversions = j.at("include_inversions").get<bool>();
  o.fix_com = j.at("fix_com").get<bool>();
  o.eps_contact = j.at("eps_contact").get<double>();
  o.eps_d = j.at("eps_d").get<double>();
  o.strategy = ParseSearchStrategy(j.at("strategy").get<std::string>());
  o.jobs = j.at("jobs").get<int>();
  o.reverify_closure = j.at("reverify_closure").get<bool>();
  return o;
}

}  // namespace

json ReportToJson(const SymmetryReport& r) {
  json contacts = json::array();
  for (const auto& [i, j] : r.adjacency.edges()) contacts.push_back({i + 1, j + 1});
  json autos = json::array();
  for (const auto& p : r.automorphisms) autos.push_back(ToCycleString(p));
  json sticky = json::array();
  for (int i = 0; i < r.sticky_group.order(); ++i) {
    sticky.push_back({{"op", ToCycleString(r.sticky_group.element(i))},
                      {"status", ProvenanceName(r.sticky_group.provenance(i))}});
  }
  json elements = json::array();
  for (const auto& e : r.elements) {
    json rec = {{"op", ToCycleString(e.op)},
                {"status", ElementStatusName(e.status)},
                {"searched", e.searched},
                {"inferred", e.inferred}};
    if (e.searched) {
      rec["seed"] = e.seed;
      rec["path_length"] = e.path_length;
      rec["final_distance"] = e.final_distance;
      rec["stats"] = StatsToJson(e.stats);
    }
    if (e.reverified != 0) rec["reverified"] = e.reverified > 0;
    elements.push_back(std::move(rec));
  }
  return {{"version", kSchemaVersion},
          {"kind", "symmetry_report"},
          {"n_spheres", r.cluster.size()},
          {"cluster", ClusterToJson(r.cluster)},
          {"contacts", contacts},
          {"radii_partition", Labels(r.radii_partition)},
          {"partition", Labels(r.partition)},
          {"automorphism_group", {{"order", r.automorphisms.size()}, {"elements", autos}}},
          {"point_group", GroupToJson(r.point_group)},
          {"sticky_group", {{"order", r.sticky_group.order()}, {"elements", sticky}}},
          {"sigma", r.sigma},
          {"counting_number", r.counting_number},
          {"include_inversions", r.include_inversions},
          {"closure_inferred", r.closure_count()},
          {"path_searches", r.path_searches},
          {"elements", elements},
          {"config", ConfigToJson(r.options)}};
}

SymmetryReport ReportFromJson(const json& j) {
  try {
    if (j.at("version").get<int>() != kSchemaVersion) {
      throw Error(ErrorCode::kIo, "unsupported report version");
    }
    SymmetryReport r;
    r.cluster = ClusterFromJson(j.at("cluster"));
    const int n = r.cluster.size();
    r.adjacency = AdjacencyMatrix(n);
    for (const auto& c : j.at("contacts")) {
      r.adjacency.Set(c[0].get<int>() - 1, c[1].get<int>() - 1, true);
    }
    r.radii_partition = Partition(j.at("radii_partition").get<std::vector<int>>());
    r.partition = Partition(j.at("partition").get<std::vector<int>>());
    for (const auto& s : j.at("automorphism_group").at("elements")) {
      r.automorphisms.push_back(ParsePiOperation(s.get<std::string>(), n).perm);
    }
    std::vector<std::pair<PiOperation, Provenance>> pg;
    for (const auto& s : j.at("point_group").at("elements")) {
      pg.emplace_back(ParsePiOperation(s.get<std::string>(), n), Provenance::kRotation);
    }
    r.point_group = PiGroup(n, std::move(pg));
    std::vector<std::pair<PiOperation, Provenance>> tg;
    for (const auto& e : j.at("sticky_group").at("elements")) {
      tg.emplace_back(ParsePiOperation(e.at("op").get<std::string>(), n),
                      ToProvenance(ParseStatus(e.at("status").get<std::string>())));
    }
    r.sticky_group = PiGroup(n, std::move(tg));
    for (const auto& e : j.at("elements")) {
      ElementRecord rec;
      rec.op = ParsePiOperation(e.at("op").get<std::string>(), n);
      rec.status = ParseStatus(e.at("status").get<std::string>());
      rec.searched = e.at("searched").get<bool>();
      rec.inferred = e.at("inferred").get<bool>();
      r.elements.push_back(std::move(rec));
    }
    r.sigma = j.at("sigma").get<std::uint64_t>();
    r.counting_number = j.at("counting_number").get<std::uint64_t>();
    r.include_inversions = j.at("include_inversions").get<bool>();
    r.path_searches = j.at("path_searches").get<int>();
    r.options = ConfigFromJson(j.at("config"));
    CheckReport(r);
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("malformed report JSON: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(ErrorCode::kIo, std::string("inconsistent report: ") + e.what());
  }
}

json SurveyToJson(const SurveyResult& result, const SurveyOptions& options) {
  json entries = json::array();
  for (const auto& e : result.entries) {
    json contacts = json::array();
    for (const auto& [i, j] : e.adjacency.edges()) contacts.push_back({i + 1, j + 1});
    json broken = json::array();
    for (const auto& [i, j] : e.broken) broken.push_back({i + 1, j + 1});
    json item = {{"d", e.d},
                 {"canonical_form", e.canonical_form},
                 {"contacts", contacts},
                 {"seed_cluster", e.seed_name},
                 {"broken_seed_contacts", broken},
                 {"representative", ClusterToJson(e.representative)}};
    if (e.error.empty()) {
      item["automorphism_order"] = e.automorphism_order;
      item["point_group_order"] = e.point_group_order;
      item["sigma"] = e.sigma;
      item["counting_number"] = e.counting_number;
      item["closure_inferred"] = e.closure_count;
      item["path_searches"] = e.path_searches;
      json group = json::array();
      for (const auto& op : e.report->sticky_group.elements()) {
        group.push_back(ToCycleString(op));
      }
      item["sticky_group"] = group;
    } else {
      item["error"] = e.error;
    }
    entries.push_back(std::move(item));
  }
  json counts = json::object();
  int total = 0;
  for (const auto& [d, c] : result.counts) {
    counts[std::to_string(d)] = c;
    total += c;
  }
  json hist = json::object();
  for (const auto& [d, h] : result.sigma_histogram) {
    json row = json::object();
    for (const auto& [s, c] : h) row[std::to_string(s)] = c;
    hist[std::to_string(d)] = row;
  }
  return {{"version", kSchemaVersion},
          {"kind", "survey"},
          {"n_spheres", 6},
          {"max_d", options.max_d},
          {"config", ConfigToJson(options.symmetry)},
          {"summary", {{"counts", counts}, {"total", total}, {"sigma_histogram", hist}}},
          {"entries", entries}};
}

std::string SurveyCsv(const SurveyResult& result) {
  std::ostringstream out;
  out << "d,sigma,counting_number,automorphism_order,point_group_order,seed_cluster,"
         "contacts,error\n";
  for (const auto& e : result.entries) {
    std::string contacts;
    for (const auto& [i, j] : e.adjacency.edges()) {
      if (!contacts.empty()) contacts += ' ';
      contacts += std::to_string(i + 1) + "-" + std::to_string(j + 1);
    }
    out << e.d << ',' << e.sigma << ',' << e.counting_number << ','
        << e.automorphism_order << ',' << e.point_group_order << ',' << e.seed_name
        << ',' << contacts << ',' << e.error << '\n';
  }
  return out.str();
}

json PathToJson(const PathResult& result, const PathConfig& config) {
  json points = json::array();
  for (const auto& p : result.points) {
    points.push_back(std::vector<double>(p.data(), p.data() + p.size()));
  }
  return {{"version", kSchemaVersion},
          {"kind", "path"},
          {"status", result.found() ? "found" : "not-found"},
          {"seed", result.seed},
          {"final_distance", result.final_distance},
          {"stats", StatsToJson(result.stats)},
          {"config",
           {{"tol", config.tol},
            {"sigma", config.sigma},
            {"beta", config.beta},
            {"nr", config.nr},
            {"nmax", config.nmax},
            {"toln", config.tol_n},
            {"tolq", config.tol_q},
            {"mode", RandomModeName(config.mode)},
            {"seed", config.seed},
            {"retries", config.retries}}},
          {"points", points}};
}

std::string PathCsv(const PathResult& result) {
  std::ostringstream out;
  out.precision(17);
  auto row = [&](const Eigen::VectorXd& p, std::string_view kind) {
    for (int k = 0; k < p.size(); ++k) out << p[k] << ',';
    out << kind << '\n';
  };
  const int dim = !result.trace.empty()    ? static_cast<int>(result.trace[0].point.size())
                  : !result.points.empty() ? static_cast<int>(result.points[0].size())
                                           : 0;
  for (int k = 0; k < dim; ++k) out << 'x' << k << ',';
  out << "step\n";
  if (!result.trace.empty()) {
    for (const auto& t : result.trace) row(t.point, PointKindName(t.kind));
  } else {
    for (std::size_t i = 0; i < result.points.size(); ++i) {
      row(result.points[i], i == 0 ? "start" : "accepted");
    }
  }
  return out.str();
}

}  // namespace sticky
