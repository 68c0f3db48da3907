#include "sticky/enumeration.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "sticky/constraints.h"
#include "sticky/error.h"
#include "sticky/groups.h"
#include "sticky/manifold.h"
#include "sticky/parallel.h"

namespace sticky {

namespace {

std::uint64_t PackUpper(const AdjacencyMatrix& a, const std::vector<int>& p) {
  // Bit index of entry (p[i], p[j]) in the packed upper triangle.
  const int n = a.size();
  std::uint64_t bits = 0;
  for (const auto& [i, j] : a.edges()) {
    int u = p[i], v = p[j];
    if (u > v) std::swap(u, v);
    const int index = u * n - u * (u + 1) / 2 + (v - u - 1);
    bits |= std::uint64_t{1} << index;
  }
  return bits;
}

}  // namespace

std::optional<Permutation> GraphsIsomorphic(const AdjacencyMatrix& a,
                                            const AdjacencyMatrix& b) {
  if (a.size() > 10) throw Error(ErrorCode::kTooLarge, "isomorphism test limited to N <= 10");
  return FindIsomorphism(a, b);
}

bool IsConnected(const AdjacencyMatrix& a) {
  const int n = a.size();
  if (n == 0) return false;
  std::uint32_t seen = 1u, frontier = 1u;
  while (frontier) {
    std::uint32_t next = 0;
    for (int v = 0; v < n; ++v) {
      if ((frontier >> v) & 1u) next |= a.row(v);
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (n == 32 ? ~0u : (1u << n) - 1u);
}

Permutation CanonicalLabeling(const AdjacencyMatrix& a) {
  const int n = a.size();
  if (n > 8) throw Error(ErrorCode::kTooLarge, "canonical form limited to N <= 8");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<int> best = p;
  std::uint64_t best_bits = PackUpper(a, p);
  while (std::next_permutation(p.begin(), p.end())) {
    const std::uint64_t bits = PackUpper(a, p);
    if (bits < best_bits) {
      best_bits = bits;
      best = p;
    }
  }
  return Permutation(best);
}

std::uint64_t CanonicalForm(const AdjacencyMatrix& a) {
  const Permutation p = CanonicalLabeling(a);
  return PackUpper(a, p.images());
}

Cluster RelaxOffBoundary(const Cluster& seed, const AdjacencyMatrix& a,
                         const RelaxOptions& options) {
  const ConstraintSystem cs = BuildConstraintSystem(a, seed.radii(), true);
  Eigen::VectorXd y = seed.Centered().Flattened();
  if (cs.MaxEqualityResidual(y) > 1e-8) {
    throw Error(ErrorCode::kRelaxationFailed, "seed does not satisfy the contacts");
  }
  const auto& seps = cs.separations();
  const double gap_goal = 3.0 * options.eps_gap;
  for (int iter = 0; iter < options.max_iters; ++iter) {
    std::vector<int> active;
    bool done = true;
    for (int k = 0; k < static_cast<int>(seps.size()); ++k) {
      const PairTerm& t = seps[k];
      const double gap = (y.segment<3>(3 * t.i) - y.segment<3>(3 * t.j)).norm() -
                         std::sqrt(t.target_sq);
      if (gap < options.eps_gap) done = false;
      if (gap < 2.0 * options.eps_gap) active.push_back(k);
    }
    if (done) return Cluster::FromFlat(y, seed.radii());

    // Minimum-norm tangent move raising every active gap toward gap_goal.
    const TangentProjector proj(cs, y);
    Eigen::MatrixXd m(active.size(), y.size());
    Eigen::VectorXd c(active.size());
    for (std::size_t r = 0; r < active.size(); ++r) {
      const PairTerm& t = seps[active[r]];
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(y.size());
      const Eigen::Vector3d diff = 2.0 * (y.segment<3>(3 * t.i) - y.segment<3>(3 * t.j));
      grad.segment<3>(3 * t.i) = diff;
      grad.segment<3>(3 * t.j) = -diff;
      m.row(r) = proj.Project(grad).transpose();
      const double dist = 0.5 * diff.norm();
      const double reach = std::sqrt(t.target_sq);
      c[r] = std::max(0.0, (reach + gap_goal) * (reach + gap_goal) - dist * dist);
    }
    Eigen::VectorXd v = m.completeOrthogonalDecomposition().solve(c);
    v = proj.Project(v);
    if (!v.allFinite() || v.norm() == 0.0) break;
    if (v.norm() > 0.05) v *= 0.05 / v.norm();

    bool moved = false;
    for (int halving = 0; halving < 12 && !moved; ++halving, v *= 0.5) {
      const Eigen::VectorXd z = y + v;
      const auto w = ProjectToManifold(cs, proj.jacobian(), z, options.tol_q, 30);
      if (w && cs.SatisfiesInequalities(z + *w)) {
        y = z + *w;
        moved = true;
      }
    }
    if (!moved) break;
  }
  throw Error(ErrorCode::kRelaxationFailed,
              "could not move the embedding off the boundary");
}

std::vector<SurveyEntry> EnumerateN6Graphs(int max_d, const RelaxOptions& relax) {
  struct Seed {
    std::string name;
    Cluster cluster;
  };
  const Seed seeds[] = {{"octahedron", Octahedron()},
                        {"polytetrahedron", Polytetrahedron()}};
  std::map<std::uint64_t, SurveyEntry> found;
  for (const Seed& seed : seeds) {
    const AdjacencyMatrix full = DetectContacts(seed.cluster);
    const auto edges = full.edges();
    const int m = static_cast<int>(edges.size());
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      const int d = std::popcount(mask);
      if (d > max_d) continue;
      AdjacencyMatrix a = full;
      std::vector<std::pair<int, int>> broken;
      for (int e = 0; e < m; ++e) {
        if ((mask >> e) & 1u) {
          a.Set(edges[e].first, edges[e].second, false);
          broken.push_back(edges[e]);
        }
      }
      if (!IsConnected(a)) continue;
      const Permutation label = CanonicalLabeling(a);
      const std::uint64_t form = PackUpper(a, label.images());
      if (found.count(form)) continue;
      SurveyEntry entry;
      entry.d = d;
      entry.canonical_form = form;
      entry.seed_name = seed.name;
      entry.broken = broken;
      entry.adjacency = a.Permuted(label);
      const Cluster relaxed = RelaxOffBoundary(seed.cluster, a, relax);
      entry.representative = ApplyPi(relaxed, PiOperation{label, 1});
      found.emplace(form, std::move(entry));
    }
  }
  std::vector<SurveyEntry> out;
  for (auto& [form, entry] : found) out.push_back(std::move(entry));
  std::stable_sort(out.begin(), out.end(), [](const SurveyEntry& l, const SurveyEntry& r) {
    if (l.d != r.d) return l.d < r.d;
    return l.canonical_form < r.canonical_form;
  });
  return out;
}

SurveyResult Survey(const SurveyOptions& options) {
  SurveyResult result;
  result.entries = EnumerateN6Graphs(options.max_d, options.relax);
  SymmetryOptions sym = options.symmetry;
  sym.jobs = 1;  // parallelism is across entries
  ParallelFor(static_cast<int>(result.entries.size()), options.jobs, [&](int i) {
    SurveyEntry& e = result.entries[i];
    SymmetryOptions local = sym;
    local.path.seed = DeriveSeed(sym.path.seed, e.canonical_form);
    try {
      SymmetryReport report = StickySymmetryGroup(e.representative, local);
      if (!(report.adjacency == e.adjacency)) {
        throw Error(ErrorCode::kRelaxationFailed,
                    "representative contacts differ from the entry graph");
      }
      e.automorphism_order = static_cast<int>(report.automorphisms.size());
      e.point_group_order = report.point_group.order();
      e.sigma = report.sigma;
      e.counting_number = report.counting_number;
      e.closure_count = report.closure_count();
      e.path_searches = report.path_searches;
      e.report = std::move(report);
    } catch (const Error& err) {
      e.error = std::string(ErrorCodeName(err.code())) + ": " + err.what();
    }
  });
  for (const auto& e : result.entries) {
    ++result.counts[e.d];
    if (e.error.empty()) ++result.sigma_histogram[e.d][e.sigma];
  }
  return result;
}

}  // namespace sticky
