#include "sticky/groups.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <unordered_set>

#include "sticky/error.h"

namespace sticky {

namespace {

// Degree followed by the sorted neighbor degrees.
std::vector<std::vector<int>> Signatures(const AdjacencyMatrix& a) {
  const int n = a.size();
  std::vector<std::vector<int>> sig(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> nb;
    for (int u = 0; u < n; ++u) {
      if (a(v, u)) nb.push_back(a.degree(u));
    }
    std::sort(nb.begin(), nb.end());
    sig[v].push_back(a.degree(v));
    sig[v].insert(sig[v].end(), nb.begin(), nb.end());
  }
  return sig;
}

// Enumerates maps p with A(i, j) == B(p[i], p[j]) in lexicographic order.
// `visit` returns false to stop.
template <typename Visit>
void SearchMaps(const AdjacencyMatrix& a, const AdjacencyMatrix& b, Visit visit) {
  const int n = a.size();
  const auto sig_a = Signatures(a);
  const auto sig_b = Signatures(b);
  std::vector<std::vector<int>> candidates(n);
  for (int i = 0; i < n; ++i) {
    for (int u = 0; u < n; ++u) {
      if (sig_a[i] == sig_b[u]) candidates[i].push_back(u);
    }
    if (candidates[i].empty()) return;
  }
  std::vector<int> p(n, -1);
  std::uint32_t used = 0;
  bool stop = false;
  auto recurse = [&](auto&& self, int i) -> void {
    if (i == n) {
      if (!visit(p)) stop = true;
      return;
    }
    for (int u : candidates[i]) {
      if ((used >> u) & 1u) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = a(i, j) == b(u, p[j]);
      if (!ok) continue;
      p[i] = u;
      used |= 1u << u;
      self(self, i + 1);
      used &= ~(1u << u);
      if (stop) return;
    }
  };
  recurse(recurse, 0);
}

}  // namespace

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kRotation: return "rotation";
    case Provenance::kPath: return "path";
    case Provenance::kProduct: return "product";
    case Provenance::kClosure: return "closure";
  }
  return "unknown";
}

PiGroup::PiGroup(int degree,
                 std::vector<std::pair<PiOperation, Provenance>> elements)
    : degree_(degree) {
  for (const auto& [op, prov] : elements) {
    if (op.size() != degree) {
      throw Error(ErrorCode::kInvalidArgument, "element degree mismatch");
    }
  }
  std::sort(elements.begin(), elements.end(), [](const auto& l, const auto& r) {
    if (l.first != r.first) return l.first < r.first;
    return l.second < r.second;
  });
  for (auto& [op, prov] : elements) {
    if (!elements_.empty() && elements_.back() == op) continue;
    elements_.push_back(std::move(op));
    provenance_.push_back(prov);
  }
}

PiGroup PiGroup::Trivial(int degree) {
  return PiGroup(degree, {{PiOperation::Identity(degree), Provenance::kRotation}});
}

int PiGroup::IndexOf(const PiOperation& op) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), op);
  if (it == elements_.end() || *it != op) return -1;
  return static_cast<int>(it - elements_.begin());
}

bool PiGroup::Contains(const PiOperation& op) const { return IndexOf(op) >= 0; }

std::optional<Provenance> PiGroup::ProvenanceOf(const PiOperation& op) const {
  const int i = IndexOf(op);
  if (i < 0) return std::nullopt;
  return provenance_[i];
}

int PiGroup::Count(Provenance p) const {
  return static_cast<int>(std::count(provenance_.begin(), provenance_.end(), p));
}

bool PiGroup::IsSubsetOf(const PiGroup& other) const {
  for (const auto& op : elements_) {
    if (!other.Contains(op)) return false;
  }
  return true;
}

bool PiGroup::IsGroup() const {
  if (elements_.empty() || !Contains(PiOperation::Identity(degree_))) return false;
  std::unordered_set<PiOperation, PiOperationHash> set(elements_.begin(),
                                                       elements_.end());
  for (const auto& g : elements_) {
    if (!set.count(g.Inverse())) return false;
    for (const auto& h : elements_) {
      if (!set.count(g.Compose(h))) return false;
    }
  }
  return true;
}

void PiGroup::CheckGroup() const {
  if (!IsGroup()) {
    throw Error(ErrorCode::kNotAGroup,
                "set of " + std::to_string(order()) + " elements is not a group");
  }
}

std::vector<Permutation> AutomorphismGroup(const AdjacencyMatrix& a, int max_n) {
  if (a.size() > max_n) {
    throw Error(ErrorCode::kTooLarge, "automorphism search limited to N <= " +
                                          std::to_string(max_n));
  }
  std::vector<Permutation> out;
  SearchMaps(a, a, [&](const std::vector<int>& p) {
    out.emplace_back(p);
    return true;
  });
  return out;
}

std::optional<Permutation> FindIsomorphism(const AdjacencyMatrix& a,
                                           const AdjacencyMatrix& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return std::nullopt;
  auto sa = Signatures(a);
  auto sb = Signatures(b);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;
  std::optional<Permutation> found;
  SearchMaps(a, b, [&](const std::vector<int>& p) {
    found.emplace(p);
    return false;
  });
  return found;
}

ProcrustesResult ProcrustesFit(const Positions& x, const Positions& y) {
  const Eigen::Matrix3d h = x.transpose() * y;
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix3d u = svd.matrixU();
  const Eigen::Matrix3d v = svd.matrixV();
  Eigen::Vector3d diag(1.0, 1.0, (v * u.transpose()).determinant() < 0 ? -1.0 : 1.0);
  ProcrustesResult result;
  result.rotation = v * diag.asDiagonal() * u.transpose();
  const Positions fitted = x * result.rotation.transpose();
  const int n = static_cast<int>(x.rows());
  result.residual = n == 0 ? 0.0 : std::sqrt((y - fitted).squaredNorm() / n);
  return result;
}

PiGroup PointGroup(const Cluster& cluster, const std::vector<Permutation>& auts,
                   double eps_d, bool include_inversions) {
  const int n = cluster.size();
  const Cluster x = cluster.Centered();
  const DistanceMatrix d = ComputeDistanceMatrix(x);
  std::vector<std::pair<PiOperation, Provenance>> found;
  for (const Permutation& p : auts) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        worst = std::max(worst, std::abs(d(p[i], p[j]) - d(i, j)));
      }
    }
    if (worst > eps_d) continue;
    for (int sign : {1, -1}) {
      if (sign < 0 && !include_inversions) continue;
      const PiOperation op{p, sign};
      const Cluster image = ApplyPi(x, op);
      if (ProcrustesFit(x.positions(), image.positions()).residual <= eps_d) {
        found.emplace_back(op, Provenance::kRotation);
      }
    }
  }
  PiGroup group(n, std::move(found));
  group.CheckGroup();
  return group;
}

PiGroup Closure(int degree,
                const std::vector<std::pair<PiOperation, Provenance>>& elements) {
  std::vector<std::pair<PiOperation, Provenance>> all = elements;
  std::unordered_set<PiOperation, PiOperationHash> seen;
  std::vector<PiOperation> generators;
  for (const auto& [op, prov] : elements) {
    if (seen.insert(op).second) generators.push_back(op);
  }
  const PiOperation identity = PiOperation::Identity(degree);
  if (seen.insert(identity).second) all.emplace_back(identity, Provenance::kClosure);
  std::deque<PiOperation> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    const PiOperation g = queue.front();
    queue.pop_front();
    for (const auto& s : generators) {
      PiOperation h = g.Compose(s);
      if (seen.insert(h).second) {
        all.emplace_back(h, Provenance::kClosure);
        queue.push_back(std::move(h));
      }
    }
  }
  return PiGroup(degree, std::move(all));
}

bool PreservesPartition(const Permutation& p, const Partition& part) {
  if (p.size() != part.size()) {
    throw Error(ErrorCode::kInvalidArgument, "partition size mismatch");
  }
  for (int i = 0; i < p.size(); ++i) {
    if (part.label(p[i]) != part.label(i)) return false;
  }
  return true;
}

PiGroup RestrictGroup(const PiGroup& group, const Partition& part) {
  std::vector<std::pair<PiOperation, Provenance>> kept;
  for (int i = 0; i < group.order(); ++i) {
    if (PreservesPartition(group.element(i).perm, part)) {
      kept.emplace_back(group.element(i), group.provenance(i));
    }
  }
  return PiGroup(group.degree(), std::move(kept));
}

std::vector<Permutation> RestrictPermutations(const std::vector<Permutation>& perms,
                                              const Partition& part) {
  std::vector<Permutation> kept;
  for (const auto& p : perms) {
    if (PreservesPartition(p, part)) kept.push_back(p);
  }
  return kept;
}

std::uint64_t CountingNumber(std::uint64_t sigma, const Partition& part,
                             bool with_inversions) {
  if (sigma == 0) throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  if (part.size() > 20) throw Error(ErrorCode::kTooLarge, "N! overflows for N > 20");
  std::uint64_t total = with_inversions ? 2 : 1;
  for (const auto& cls : part.classes()) {
    for (std::uint64_t k = 2; k <= cls.size(); ++k) total *= k;
  }
  if (total % sigma != 0) {
    throw Error(ErrorCode::kNotDivisible,
                "sigma = " + std::to_string(sigma) + " does not divide " +
                    std::to_string(total));
  }
  return total / sigma;
}

}  // namespace sticky
