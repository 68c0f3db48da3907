#ifndef STICKY_GEOMETRY_H_
#define STICKY_GEOMETRY_H_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sticky/permutation.h"

namespace sticky {

// Default tolerance (diameter units) for deciding that two spheres touch.
inline constexpr double kDefaultContactTolerance = 1e-8;

using Positions = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;
// Squared center distances, N x N.
using DistanceMatrix = Eigen::MatrixXd;

// Sphere centers plus radii.  Lengths are in units of the sphere diameter.
class Cluster {
 public:
  Cluster() = default;
  // Throws Error(kInvalidArgument) on size mismatch or non-positive radii.
  Cluster(Positions positions, Eigen::VectorXd radii);
  // All radii 0.5 (unit diameter).
  static Cluster Uniform(Positions positions);
  // Inverse of Flattened().
  static Cluster FromFlat(const Eigen::VectorXd& flat, Eigen::VectorXd radii);

  int size() const { return static_cast<int>(radii_.size()); }
  const Positions& positions() const { return positions_; }
  const Eigen::VectorXd& radii() const { return radii_; }
  Eigen::RowVector3d position(int i) const { return positions_.row(i); }

  // (x_1, y_1, z_1, x_2, ...) as a point of R^{3N}.
  Eigen::VectorXd Flattened() const;
  Eigen::RowVector3d CenterOfMass() const;
  // Same cluster translated so its centroid is at the origin.
  Cluster Centered() const;
  bool HasUniformRadii(double tol = 1e-12) const;

 private:
  Positions positions_;
  Eigen::VectorXd radii_;
};

// Symmetric 0/1 contact matrix with zero diagonal, stored as one neighbor
// bitmask per vertex (N <= 32).
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(int n);
  static AdjacencyMatrix FromEdges(int n, const std::vector<std::pair<int, int>>& edges);
  // Validates symmetry, zero diagonal and 0/1 entries.
  static AdjacencyMatrix FromMatrix(const Eigen::MatrixXi& a);

  int size() const { return n_; }
  bool operator()(int i, int j) const { return (rows_[i] >> j) & 1u; }
  void Set(int i, int j, bool value);
  std::uint32_t row(int i) const { return rows_[i]; }
  int degree(int i) const;
  // Number of contacts m (1-entries above the diagonal).
  int edge_count() const;
  // Contacts (i, j) with i < j in lexicographic order.
  std::vector<std::pair<int, int>> edges() const;
  // Adjacency of the relabeled cluster, P A P^T: entry (p[i], p[j]) = A(i, j).
  AdjacencyMatrix Permuted(const Permutation& p) const;
  Eigen::MatrixXi ToMatrix() const;

  bool operator==(const AdjacencyMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<std::uint32_t> rows_;
};

// Assignment of sphere indices to class labels (colors or radii classes).
class Partition {
 public:
  Partition() = default;
  // Labels are arbitrary integers; classes are ordered by first appearance.
  explicit Partition(std::vector<int> labels);
  static Partition SingleClass(int n);
  static Partition Singletons(int n);
  // Groups spheres whose radii agree to within `tol`.
  static Partition FromRadii(const Eigen::VectorXd& radii, double tol = 1e-12);

  int size() const { return static_cast<int>(labels_.size()); }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  int label(int i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  // True iff every class of *this is contained in a class of `coarser`.
  bool Refines(const Partition& coarser) const;

 private:
  std::vector<int> labels_;
  std::vector<std::vector<int>> classes_;
};

// Contacts are pairs whose center distance is within `eps_contact` of
// r_i + r_j.  Throws Error(kOverlap) naming the first overlapping pair.
AdjacencyMatrix DetectContacts(const Cluster& cluster,
                               double eps_contact = kDefaultContactTolerance);

DistanceMatrix ComputeDistanceMatrix(const Cluster& cluster);
// G = B B^T with B the N x 3 matrix of centers.
Eigen::MatrixXd GramMatrix(const Cluster& cluster);

// δ (P ⊗ I3) x: sphere i moves to label op.perm[i] and coordinates flip sign
// when op.sign < 0; radii travel with their spheres.  Throws
// Error(kRadiiMismatch) if the permutation exchanges spheres of different
// radii.
Cluster ApplyPi(const Cluster& cluster, const PiOperation& op);
// Same action on a flattened 3N vector.
Eigen::VectorXd ApplyPi(const Eigen::VectorXd& flat, const PiOperation& op);

// Matrix form of a permutation: P(p[i], i) = 1, so (P A P^T) matches
// AdjacencyMatrix::Permuted.
Eigen::MatrixXd PermutationMatrix(const Permutation& p);

// Builders for the reference clusters.  All use unit diameter spheres and
// return strictly feasible embeddings with zero center of mass.
//
// Regular N-gon of side 1 (N >= 3) with a small deterministic out-of-plane
// perturbation, projected back onto the contact manifold.
Cluster CanonicalLoop(int n);
// Unit-spaced, slightly zig-zagged chain (N >= 2), projected likewise.
Cluster CanonicalChain(int n);
Cluster Octahedron();
// Loop of even length n with radii alternating r_a, r_b (r_a + r_b = 1 so
// every side is 1), perturbed and projected like CanonicalLoop.
Cluster AlternatingRadiiLoop(int n, double r_a, double r_b);
// Octahedron with the opposite edges 1-4 and 2-3 (1-based) opened: spheres
// 1..4 on a circle around the 5-6 axis with mirror symmetry (12)(34)*.
// Ten contacts.
Cluster SymmetricTwoBondCluster();
// Three face-sharing unit tetrahedra, built by successive three-contact
// placements.  Throws Error(kConstructionFailed) if a placement fails.
Cluster Polytetrahedron();

// Places a unit-diameter sphere touching the three given centers on the side
// selected by `side` (+1/-1 relative to the triangle normal).
std::optional<Eigen::RowVector3d> PlaceTouchingThree(
    const Eigen::RowVector3d& a, const Eigen::RowVector3d& b,
    const Eigen::RowVector3d& c, double distance, int side);

}  // namespace sticky

#endif  // STICKY_GEOMETRY_H_
