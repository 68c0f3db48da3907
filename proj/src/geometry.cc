#include "sticky/geometry.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "sticky/error.h"

namespace sticky {

Cluster::Cluster(Positions positions, Eigen::VectorXd radii)
    : positions_(std::move(positions)), radii_(std::move(radii)) {
  if (positions_.rows() != radii_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "positions and radii have different lengths");
  }
  for (int i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "radius of sphere " + std::to_string(i + 1) +
                      " is not strictly positive");
    }
  }
  if (!positions_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite coordinate");
  }
}

Cluster Cluster::Uniform(Positions positions) {
  const auto n = positions.rows();
  return Cluster(std::move(positions), Eigen::VectorXd::Constant(n, 0.5));
}

Cluster Cluster::FromFlat(const Eigen::VectorXd& flat, Eigen::VectorXd radii) {
  if (flat.size() != 3 * radii.size()) {
    throw Error(ErrorCode::kInvalidArgument, "flat vector is not 3N long");
  }
  Positions p(radii.size(), 3);
  for (int i = 0; i < radii.size(); ++i) p.row(i) = flat.segment<3>(3 * i);
  return Cluster(std::move(p), std::move(radii));
}

Eigen::VectorXd Cluster::Flattened() const {
  Eigen::VectorXd flat(3 * size());
  for (int i = 0; i < size(); ++i) flat.segment<3>(3 * i) = positions_.row(i);
  return flat;
}

Eigen::RowVector3d Cluster::CenterOfMass() const {
  if (size() == 0) return Eigen::RowVector3d::Zero();
  return positions_.colwise().mean();
}

Cluster Cluster::Centered() const {
  Positions shifted = positions_.rowwise() - CenterOfMass();
  return Cluster(std::move(shifted), radii_);
}

bool Cluster::HasUniformRadii(double tol) const {
  if (size() == 0) return true;
  return (radii_.array() - radii_[0]).abs().maxCoeff() <= tol;
}

AdjacencyMatrix::AdjacencyMatrix(int n) : n_(n), rows_(n, 0u) {
  if (n < 0 || n > 32) {
    throw Error(ErrorCode::kTooLarge, "adjacency matrices support N <= 32");
  }
}

AdjacencyMatrix AdjacencyMatrix::FromEdges(
    int n, const std::vector<std::pair<int, int>>& edges) {
  AdjacencyMatrix a(n);
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
      throw Error(ErrorCode::kInvalidArgument, "invalid edge");
    }
    a.Set(i, j, true);
  }
  return a;
}

AdjacencyMatrix AdjacencyMatrix::FromMatrix(const Eigen::MatrixXi& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "adjacency matrix is not square");
  }
  const int n = static_cast<int>(m.rows());
  AdjacencyMatrix a(n);
  for (int i = 0; i < n; ++i) {
    if (m(i, i) != 0) {
      throw Error(ErrorCode::kInvalidArgument, "nonzero diagonal entry");
    }
    for (int j = 0; j < n; ++j) {
      if ((m(i, j) != 0 && m(i, j) != 1) || m(i, j) != m(j, i)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "adjacency matrix must be symmetric with 0/1 entries");
      }
      if (m(i, j) == 1) a.rows_[i] |= 1u << j;
    }
  }
  return a;
}

void AdjacencyMatrix::Set(int i, int j, bool value) {
  if (value) {
    rows_[i] |= 1u << j;
    rows_[j] |= 1u << i;
  } else {
    rows_[i] &= ~(1u << j);
    rows_[j] &= ~(1u << i);
  }
}

int AdjacencyMatrix::degree(int i) const { return std::popcount(rows_[i]); }

int AdjacencyMatrix::edge_count() const {
  int total = 0;
  for (std::uint32_t r : rows_) total += std::popcount(r);
  return total / 2;
}

std::vector<std::pair<int, int>> AdjacencyMatrix::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if ((*this)(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

AdjacencyMatrix AdjacencyMatrix::Permuted(const Permutation& p) const {
  AdjacencyMatrix out(n_);
  for (int i = 0; i < n_; ++i) {
    std::uint32_t row = 0;
    for (std::uint32_t bits = rows_[i]; bits != 0; bits &= bits - 1) {
      row |= 1u << p[std::countr_zero(bits)];
    }
    out.rows_[p[i]] = row;
  }
  return out;
}

Eigen::MatrixXi AdjacencyMatrix::ToMatrix() const {
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j) ? 1 : 0;
  }
  return m;
}

Partition::Partition(std::vector<int> labels) : labels_(std::move(labels)) {
  std::map<int, int> index;
  for (int i = 0; i < size(); ++i) {
    auto [it, inserted] =
        index.emplace(labels_[i], static_cast<int>(classes_.size()));
    if (inserted) classes_.emplace_back();
    classes_[it->second].push_back(i);
  }
}

Partition Partition::SingleClass(int n) { return Partition(std::vector<int>(n, 0)); }

Partition Partition::Singletons(int n) {
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i;
  return Partition(std::move(labels));
}

Partition Partition::FromRadii(const Eigen::VectorXd& radii, double tol) {
  std::vector<double> distinct;
  std::vector<int> labels(radii.size());
  for (int i = 0; i < radii.size(); ++i) {
    int found = -1;
    for (size_t k = 0; k < distinct.size(); ++k) {
      if (std::abs(distinct[k] - radii[i]) <= tol) {
        found = static_cast<int>(k);
        break;
      }
    }
    if (found < 0) {
      found = static_cast<int>(distinct.size());
      distinct.push_back(radii[i]);
    }
    labels[i] = found;
  }
  return Partition(std::move(labels));
}

bool Partition::Refines(const Partition& coarser) const {
  if (coarser.size() != size()) return false;
  for (const auto& cls : classes_) {
    for (int v : cls) {
      if (coarser.label(v) != coarser.label(cls.front())) return false;
    }
  }
  return true;
}

AdjacencyMatrix DetectContacts(const Cluster& cluster, double eps_contact) {
  if (!(eps_contact > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "eps_contact must be positive");
  }
  const int n = cluster.size();
  AdjacencyMatrix a(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dist = (cluster.position(i) - cluster.position(j)).norm();
      const double reach = cluster.radii()[i] + cluster.radii()[j];
      if (dist < reach - eps_contact) {
        throw Error(ErrorCode::kOverlap,
                    "spheres " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " overlap");
      }
      if (std::abs(dist - reach) <= eps_contact) a.Set(i, j, true);
    }
  }
  return a;
}

DistanceMatrix ComputeDistanceMatrix(const Cluster& cluster) {
  const int n = cluster.size();
  DistanceMatrix d = DistanceMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = (cluster.position(i) - cluster.position(j)).squaredNorm();
    }
  }
  return d;
}

Eigen::MatrixXd GramMatrix(const Cluster& cluster) {
  return cluster.positions() * cluster.positions().transpose();
}

Cluster ApplyPi(const Cluster& cluster, const PiOperation& op) {
  const int n = cluster.size();
  if (op.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "permutation size does not match cluster");
  }
  for (int i = 0; i < n; ++i) {
    if (std::abs(cluster.radii()[i] - cluster.radii()[op.perm[i]]) > 1e-12) {
      throw Error(ErrorCode::kRadiiMismatch,
                  "permutation maps sphere " + std::to_string(i + 1) +
                      " onto a sphere of different radius");
    }
  }
  Positions p(n, 3);
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) {
    p.row(op.perm[i]) = op.sign * cluster.positions().row(i);
    r[op.perm[i]] = cluster.radii()[i];
  }
  return Cluster(std::move(p), std::move(r));
}

Eigen::VectorXd ApplyPi(const Eigen::VectorXd& flat, const PiOperation& op) {
  const int n = op.size();
  if (flat.size() != 3 * n) {
    throw Error(ErrorCode::kInvalidArgument,
                "permutation size does not match point");
  }
  Eigen::VectorXd out(flat.size());
  for (int i = 0; i < n; ++i) {
    out.segment<3>(3 * op.perm[i]) = op.sign * flat.segment<3>(3 * i);
  }
  return out;
}

Eigen::MatrixXd PermutationMatrix(const Permutation& p) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p.size(), p.size());
  for (int i = 0; i < p.size(); ++i) m(p[i], i) = 1.0;
  return m;
}

std::optional<Eigen::RowVector3d> PlaceTouchingThree(
    const Eigen::RowVector3d& a, const Eigen::RowVector3d& b,
    const Eigen::RowVector3d& c, double distance, int side) {
  // Trilateration in the frame spanned by the triangle, then a few Newton
  // iterations on the three contact equations to clean up rounding.
  const Eigen::RowVector3d ex = (b - a).normalized();
  const Eigen::RowVector3d ac = c - a;
  const double i = ex.dot(ac);
  const Eigen::RowVector3d ey_raw = ac - i * ex;
  if (ey_raw.norm() < 1e-12) return std::nullopt;
  const Eigen::RowVector3d ey = ey_raw.normalized();
  const Eigen::RowVector3d ez = ex.cross(ey);
  const double d = (b - a).norm();
  const double j = ey.dot(ac);
  const double r2 = distance * distance;
  const double x = d / 2.0;
  const double y = (i * i + j * j - 2.0 * i * x) / (2.0 * j);
  const double z2 = r2 - x * x - y * y;
  if (z2 <= 0.0) return std::nullopt;
  Eigen::RowVector3d p = a + x * ex + y * ey + side * std::sqrt(z2) * ez;

  const Eigen::RowVector3d anchors[3] = {a, b, c};
  for (int iter = 0; iter < 20; ++iter) {
    Eigen::Vector3d residual;
    Eigen::Matrix3d jac;
    for (int k = 0; k < 3; ++k) {
      const Eigen::RowVector3d diff = p - anchors[k];
      residual[k] = diff.squaredNorm() - r2;
      jac.row(k) = 2.0 * diff;
    }
    if (residual.cwiseAbs().maxCoeff() < 1e-15) break;
    p -= jac.partialPivLu().solve(residual).transpose();
  }
  for (const auto& anchor : anchors) {
    if (std::abs((p - anchor).norm() - distance) > 1e-12) return std::nullopt;
  }
  return p;
}

Cluster Octahedron() {
  const double s = 1.0 / std::sqrt(2.0);
  Positions p(6, 3);
  p << s, 0, 0,  //
      -s, 0, 0,  //
      0, s, 0,   //
      0, -s, 0,  //
      0, 0, s,   //
      0, 0, -s;
  return Cluster::Uniform(std::move(p));
}

Cluster Polytetrahedron() {
  Positions p(6, 3);
  p.row(0) << 0.0, 0.0, 0.0;
  p.row(1) << 1.0, 0.0, 0.0;
  p.row(2) << 0.5, std::sqrt(3.0) / 2.0, 0.0;
  struct Step {
    int target, a, b, c;
  };
  // Tetrahedra {0,1,2,3}, {0,1,3,4}, {0,1,4,5}: three around the edge 0-1.
  const Step steps[] = {{3, 0, 1, 2}, {4, 0, 1, 3}, {5, 0, 1, 4}};
  for (const Step& s : steps) {
    std::optional<Eigen::RowVector3d> placed;
    for (int side : {1, -1}) {
      auto candidate = PlaceTouchingThree(p.row(s.a), p.row(s.b), p.row(s.c),
                                          1.0, side);
      if (!candidate) continue;
      bool clear = true;
      for (int k = 0; k < s.target; ++k) {
        if (k == s.a || k == s.b || k == s.c) continue;
        if ((*candidate - p.row(k)).norm() < 1.0 + 1e-3) clear = false;
      }
      if (clear) {
        placed = candidate;
        break;
      }
    }
    if (!placed) {
      throw Error(ErrorCode::kConstructionFailed,
                  "could not place sphere " + std::to_string(s.target + 1));
    }
    p.row(s.target) = *placed;
  }
  return Cluster::Uniform(std::move(p)).Centered();
}

}  // namespace sticky
