#include "sticky/symmetry.h"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "sticky/constraints.h"
#include "sticky/error.h"
#include "sticky/parallel.h"

namespace sticky {

namespace {

using OpSet = std::unordered_set<PiOperation, PiOperationHash>;

// Salt separating re-verification seeds from the first-pass seeds.
constexpr std::uint64_t kReverifySalt = 0x7265766572696679ull;

void RunSearch(const ConstraintSystem& cs, const Eigen::VectorXd& x,
               const PathConfig& base, std::uint64_t seed, ElementRecord* rec) {
  PathConfig cfg = base;
  cfg.seed = seed;
  cfg.record_trace = false;
  const PathResult res = FindPath(cs, x, ApplyPi(x, rec->op), cfg);
  rec->searched = true;
  rec->seed = res.seed;
  rec->stats = res.stats;
  rec->final_distance = res.final_distance;
  rec->path_length = static_cast<int>(res.points.size());
  rec->status = res.found() ? ElementStatus::kPath : ElementStatus::kNotFound;
}

ElementStatus FromProvenance(Provenance p) {
  switch (p) {
    case Provenance::kRotation: return ElementStatus::kRotation;
    case Provenance::kPath: return ElementStatus::kPath;
    case Provenance::kProduct: return ElementStatus::kProduct;
    case Provenance::kClosure: return ElementStatus::kClosure;
  }
  return ElementStatus::kNotFound;
}

// Closure whose newly generated elements count as products.
PiGroup ProductClosure(int n, const std::vector<std::pair<PiOperation, Provenance>>& found) {
  const PiGroup closed = Closure(n, found);
  std::vector<std::pair<PiOperation, Provenance>> tagged;
  for (int i = 0; i < closed.order(); ++i) {
    const Provenance p = closed.provenance(i);
    tagged.emplace_back(closed.element(i),
                        p == Provenance::kClosure ? Provenance::kProduct : p);
  }
  return PiGroup(n, std::move(tagged));
}

}  // namespace

std::string_view SearchStrategyName(SearchStrategy s) {
  return s == SearchStrategy::kExhaustive ? "exhaustive" : "cosets";
}

SearchStrategy ParseSearchStrategy(std::string_view name) {
  if (name == "exhaustive") return SearchStrategy::kExhaustive;
  if (name == "cosets") return SearchStrategy::kCosets;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown search strategy '" + std::string(name) + "'");
}

std::string_view ElementStatusName(ElementStatus s) {
  switch (s) {
    case ElementStatus::kRotation: return "rotation";
    case ElementStatus::kPath: return "path";
    case ElementStatus::kProduct: return "product";
    case ElementStatus::kClosure: return "closure";
    case ElementStatus::kNotFound: return "not-found";
  }
  return "unknown";
}

Cluster SnapToContacts(const Cluster& cluster, const AdjacencyMatrix& adjacency,
                       double tol_q) {
  const ConstraintSystem cs = BuildConstraintSystem(adjacency, cluster.radii(), true);
  const Eigen::VectorXd y = cluster.Centered().Flattened();
  TangentBasis(cs, y);  // rank check
  const auto w = ProjectToManifold(cs, y, y, tol_q, 50);
  if (!w) {
    throw Error(ErrorCode::kRankDeficient,
                "could not project the cluster onto its contact set");
  }
  const Eigen::VectorXd snapped = y + *w;
  if (!cs.SatisfiesInequalities(snapped)) {
    throw Error(ErrorCode::kOverlap, "snapped cluster violates a non-contact");
  }
  return Cluster::FromFlat(snapped, cluster.radii());
}

SymmetryReport StickySymmetryGroup(const Cluster& cluster,
                                   const SymmetryOptions& options) {
  options.path.Validate();
  const int n = cluster.size();
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "empty cluster");

  SymmetryReport report;
  report.options = options;
  report.include_inversions = options.include_inversions;
  report.adjacency = DetectContacts(cluster, options.eps_contact);
  report.cluster = SnapToContacts(cluster, report.adjacency);
  report.radii_partition = Partition::FromRadii(cluster.radii(), 1e-9);
  report.partition = report.radii_partition;

  const ConstraintSystem cs =
      BuildConstraintSystem(report.adjacency, cluster.radii(), options.fix_com);
  const Eigen::VectorXd x = report.cluster.Flattened();
  TangentBasis(cs, x);

  report.automorphisms = RestrictPermutations(AutomorphismGroup(report.adjacency),
                                              report.radii_partition);
  report.point_group = PointGroup(report.cluster, report.automorphisms,
                                  options.eps_d, options.include_inversions);

  auto& records = report.elements;
  for (const Permutation& p : report.automorphisms) {
    for (int sign : {1, -1}) {
      if (sign < 0 && !options.include_inversions) continue;
      ElementRecord rec;
      rec.op = PiOperation{p, sign};
      if (report.point_group.Contains(rec.op)) rec.status = ElementStatus::kRotation;
      records.push_back(std::move(rec));
    }
  }
  auto seed_for = [&](std::size_t index) {
    return DeriveSeed(options.path.seed, index);
  };

  std::vector<std::pair<PiOperation, Provenance>> found;
  for (int i = 0; i < report.point_group.order(); ++i) {
    found.emplace_back(report.point_group.element(i), Provenance::kRotation);
  }

  if (options.strategy == SearchStrategy::kExhaustive) {
    std::vector<int> todo;
    for (int i = 0; i < static_cast<int>(records.size()); ++i) {
      if (records[i].status != ElementStatus::kRotation) todo.push_back(i);
    }
    ParallelFor(static_cast<int>(todo.size()), options.jobs, [&](int k) {
      const int i = todo[k];
      RunSearch(cs, x, options.path, seed_for(i), &records[i]);
    });
    report.path_searches = static_cast<int>(todo.size());
    for (int i : todo) {
      if (records[i].status == ElementStatus::kPath) {
        found.emplace_back(records[i].op, Provenance::kPath);
      }
    }
    report.sticky_group = Closure(n, found);
  } else {
    PiGroup current = report.point_group;
    OpSet members(current.elements().begin(), current.elements().end());
    std::vector<PiOperation> rejected;
    for (std::size_t i = 0; i < records.size(); ++i) {
      ElementRecord& rec = records[i];
      if (rec.status == ElementStatus::kRotation) continue;
      if (members.count(rec.op)) {
        rec.inferred = true;
        continue;
      }
      // rec.op ∈ f r g with f, g ∈ F  <=>  r^-1 f^-1 op ∈ F for some f.
      bool excluded = false;
      for (const auto& r : rejected) {
        const PiOperation r_inv = r.Inverse();
        for (const auto& f : current.elements()) {
          if (members.count(r_inv.Compose(f.Inverse()).Compose(rec.op))) {
            excluded = true;
            break;
          }
        }
        if (excluded) break;
      }
      if (excluded) {
        rec.inferred = true;
        rec.status = ElementStatus::kNotFound;
        continue;
      }
      RunSearch(cs, x, options.path, seed_for(i), &rec);
      ++report.path_searches;
      if (rec.status == ElementStatus::kPath) {
        found.emplace_back(rec.op, Provenance::kPath);
        current = ProductClosure(n, found);
        members = OpSet(current.elements().begin(), current.elements().end());
      } else {
        rejected.push_back(rec.op);
      }
    }
    report.sticky_group = ProductClosure(n, found);
  }

  for (auto& rec : records) {
    const auto prov = report.sticky_group.ProvenanceOf(rec.op);
    rec.status = prov ? FromProvenance(*prov) : ElementStatus::kNotFound;
  }

  if (options.reverify_closure) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      ElementRecord& rec = records[i];
      if (rec.status != ElementStatus::kClosure) continue;
      ElementRecord probe = rec;
      RunSearch(cs, x, options.path, DeriveSeed(kReverifySalt ^ options.path.seed, i),
                &probe);
      ++report.path_searches;
      rec.reverified = probe.status == ElementStatus::kPath ? 1 : -1;
    }
  }

  report.sigma = static_cast<std::uint64_t>(report.sticky_group.order());
  report.counting_number =
      CountingNumber(report.sigma, report.partition, options.include_inversions);
  CheckReport(report);
  return report;
}

SymmetryReport ColoredSymmetry(const SymmetryReport& report, const Partition& colors) {
  if (colors.size() != report.cluster.size()) {
    throw Error(ErrorCode::kInvalidArgument, "coloring size does not match cluster");
  }
  if (!colors.Refines(report.radii_partition)) {
    throw Error(ErrorCode::kColorRadiiConflict,
                "a color class contains spheres of different radii");
  }
  SymmetryReport out = report;
  out.partition = colors;
  out.automorphisms = RestrictPermutations(report.automorphisms, colors);
  out.point_group = RestrictGroup(report.point_group, colors);
  out.sticky_group = RestrictGroup(report.sticky_group, colors);
  out.elements.clear();
  for (const auto& rec : report.elements) {
    if (PreservesPartition(rec.op.perm, colors)) out.elements.push_back(rec);
  }
  out.path_searches = 0;
  out.sigma = static_cast<std::uint64_t>(out.sticky_group.order());
  out.counting_number = CountingNumber(out.sigma, colors, out.include_inversions);
  CheckReport(out);
  return out;
}

void CheckReport(const SymmetryReport& report) {
  report.point_group.CheckGroup();
  report.sticky_group.CheckGroup();
  if (!report.point_group.IsSubsetOf(report.sticky_group)) {
    throw Error(ErrorCode::kNotAGroup, "point group is not inside the sticky group");
  }
  for (const auto& op : report.sticky_group.elements()) {
    const bool in_g = std::binary_search(report.automorphisms.begin(),
                                         report.automorphisms.end(), op.perm);
    if (!in_g || (op.sign < 0 && !report.include_inversions)) {
      throw Error(ErrorCode::kNotAGroup,
                  "element " + ToCycleString(op) + " is outside G x C2");
    }
  }
  if (report.sigma != static_cast<std::uint64_t>(report.sticky_group.order())) {
    throw Error(ErrorCode::kNotAGroup, "sigma differs from the group order");
  }
  const std::uint64_t n =
      CountingNumber(report.sigma, report.partition, report.include_inversions);
  if (n != report.counting_number) {
    throw Error(ErrorCode::kNotDivisible, "counting number inconsistent with sigma");
  }
}

}  // namespace sticky
