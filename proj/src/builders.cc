#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "sticky/constraints.h"
#include "sticky/error.h"
#include "sticky/geometry.h"
#include "sticky/manifold.h"

namespace sticky {

namespace {

constexpr double kPerturbation = 1e-3;

// Adds a fixed-seed tangent perturbation of size ~kPerturbation to a
// centered embedding and projects it back onto its contact manifold.
Cluster PerturbOnManifold(const Cluster& base, const AdjacencyMatrix& adjacency) {
  const ConstraintSystem cs = BuildConstraintSystem(adjacency, base.radii(), true);
  const Eigen::VectorXd y = base.Flattened();
  std::mt19937_64 rng(0x5eed + base.size());
  std::normal_distribution<double> normal(0.0, kPerturbation);
  Eigen::VectorXd noise(y.size());
  for (int k = 0; k < noise.size(); ++k) noise[k] = normal(rng);
  const TangentProjector proj(cs, y);
  const Eigen::VectorXd z = y + proj.Project(noise);
  const auto w = ProjectToManifold(cs, proj.jacobian(), z, 1e-13, 50);
  if (!w || !cs.SatisfiesInequalities(z + *w)) {
    throw Error(ErrorCode::kConstructionFailed,
                "perturbed embedding could not be projected");
  }
  return Cluster::FromFlat(z + *w, base.radii());
}

}  // namespace

Cluster CanonicalLoop(int n) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "a loop needs N >= 3");
  const double radius = 1.0 / (2.0 * std::sin(std::numbers::pi / n));
  Positions p(n, 3);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    p.row(i) << radius * std::cos(t), radius * std::sin(t), 0.0;
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  const Cluster base = Cluster::Uniform(std::move(p)).Centered();
  if (n == 3) return base;
  return PerturbOnManifold(base, AdjacencyMatrix::FromEdges(n, edges));
}

Cluster CanonicalChain(int n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "a chain needs N >= 2");
  Positions p(n, 3);
  for (int i = 0; i < n; ++i) p.row(i) << i, 0.0, 0.0;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  const Cluster base = Cluster::Uniform(std::move(p)).Centered();
  return PerturbOnManifold(base, AdjacencyMatrix::FromEdges(n, edges));
}

}  // namespace sticky

namespace sticky {

Cluster AlternatingRadiiLoop(int n, double r_a, double r_b) {
  if (n < 4 || n % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "alternating loop needs even N >= 4");
  }
  if (!(r_a > 0.0) || !(r_b > 0.0) || std::abs(r_a + r_b - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "alternating radii must sum to 1");
  }
  const Cluster loop = CanonicalLoop(n);
  Eigen::VectorXd radii(n);
  for (int i = 0; i < n; ++i) radii[i] = i % 2 == 0 ? r_a : r_b;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  const Cluster base(loop.positions(), radii);
  DetectContacts(base);  // overlap check
  return PerturbOnManifold(base, AdjacencyMatrix::FromEdges(n, edges));
}

Cluster SymmetricTwoBondCluster() {
  const double rho = 0.8, h = 0.6;
  const double contact = 2.0 * std::asin(0.5 / rho);
  const double quarter = std::numbers::pi / 2.0;
  // Angular order around the axis: 1, 3, 4, 2.
  const double angle[4] = {0.0, 2.0 * contact + quarter, contact, contact + quarter};
  Positions p(6, 3);
  for (int i = 0; i < 4; ++i) {
    p.row(i) << rho * std::cos(angle[i]), rho * std::sin(angle[i]), 0.0;
  }
  p.row(4) << 0.0, 0.0, h;
  p.row(5) << 0.0, 0.0, -h;
  return Cluster::Uniform(std::move(p)).Centered();
}

}  // namespace sticky
