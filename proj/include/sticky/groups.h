#ifndef STICKY_GROUPS_H_
#define STICKY_GROUPS_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sticky/geometry.h"
#include "sticky/permutation.h"

namespace sticky {

// How membership of an element in a group was established.
enum class Provenance {
  kRotation,  // realized by a rigid rotation of the embedding
  kPath,      // a deformation path to its image was found
  kProduct,   // product of already established elements
  kClosure,   // added when completing the found set to a group
};

std::string_view ProvenanceName(Provenance p);

// Finite set of permutation-inversion operations kept in canonical order,
// each with a provenance tag.  Construction does not check the group axioms;
// call IsGroup()/CheckGroup() for that.
class PiGroup {
 public:
  PiGroup() = default;
  // Sorts and removes duplicates; a duplicate keeps the smallest tag.
  PiGroup(int degree, std::vector<std::pair<PiOperation, Provenance>> elements);
  static PiGroup Trivial(int degree);

  int degree() const { return degree_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<PiOperation>& elements() const { return elements_; }
  const PiOperation& element(int i) const { return elements_[i]; }
  Provenance provenance(int i) const { return provenance_[i]; }
  std::optional<Provenance> ProvenanceOf(const PiOperation& op) const;
  bool Contains(const PiOperation& op) const;
  int IndexOf(const PiOperation& op) const;  // -1 if absent
  int Count(Provenance p) const;
  bool IsSubsetOf(const PiGroup& other) const;

  // Identity present, closed under composition, inverses present.
  bool IsGroup() const;
  // Throws Error(kNotAGroup) unless IsGroup().
  void CheckGroup() const;

 private:
  int degree_ = 0;
  std::vector<PiOperation> elements_;
  std::vector<Provenance> provenance_;
};

// All permutations P with P A P^T = A, in lexicographic order.  Depth-first
// assignment with degree and neighbor-degree pruning.  Throws
// Error(kTooLarge) when N > max_n.
std::vector<Permutation> AutomorphismGroup(const AdjacencyMatrix& a, int max_n = 16);

// A witness P with P A P^T = B, if the graphs are isomorphic.
std::optional<Permutation> FindIsomorphism(const AdjacencyMatrix& a,
                                           const AdjacencyMatrix& b);

struct ProcrustesResult {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  // sqrt(mean_i |Y_i - R X_i|^2).
  double residual = 0.0;
};

// Rotation R in SO(3) minimizing sum_i |Y_i - R X_i|^2 (Kabsch construction
// with determinant correction).  Both inputs should be centered.
ProcrustesResult ProcrustesFit(const Positions& x, const Positions& y);

// Elements (P, δ), P in `auts`, realized by a rotation of the embedding:
// P D P^T = D within eps_d, then the Procrustes fit of δ (P ⊗ I3) x against x
// decides δ.  The cluster is centered internally.  Throws Error(kNotAGroup)
// if the result is not closed.
PiGroup PointGroup(const Cluster& cluster, const std::vector<Permutation>& auts,
                   double eps_d = 1e-6, bool include_inversions = true);

// Smallest group containing `elements`.  Tags of the inputs are kept; new
// elements are tagged kClosure.
PiGroup Closure(int degree,
                const std::vector<std::pair<PiOperation, Provenance>>& elements);

bool PreservesPartition(const Permutation& p, const Partition& part);
// Elements whose permutation maps every class onto itself.
PiGroup RestrictGroup(const PiGroup& group, const Partition& part);
std::vector<Permutation> RestrictPermutations(const std::vector<Permutation>& perms,
                                              const Partition& part);

// 2 prod_i |C_i|! / sigma (or prod_i |C_i|! / sigma when inversions are not
// counted).  Throws Error(kNotDivisible) if sigma does not divide it.
std::uint64_t CountingNumber(std::uint64_t sigma, const Partition& part,
                             bool with_inversions = true);

}  // namespace sticky

#endif  // STICKY_GROUPS_H_
