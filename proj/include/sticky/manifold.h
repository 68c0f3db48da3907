#ifndef STICKY_MANIFOLD_H_
#define STICKY_MANIFOLD_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sticky/constraints.h"

namespace sticky {

enum class RandomMode { kGaussian, kSample };

std::string_view RandomModeName(RandomMode mode);
// Accepts "gaussian" or "sample"; throws Error(kInvalidArgument) otherwise.
RandomMode ParseRandomMode(std::string_view name);

struct PathConfig {
  // Upper bound on a descent step, and the arrival radius around the target.
  double tol = 0.1;
  // Scale of the tangent-space Gaussian used by both random modes.
  double sigma = 0.1;
  // Inverse temperature of the sampling mode; negative values push away from
  // the target.
  double beta = -0.1;
  // Random steps per escape burst.
  int nr = 20;
  // Budget of generated points (accepted and rejected) per attempt.
  std::int64_t nmax = 100000;
  // Projected-descent length below which the descent counts as stalled.
  double tol_n = 1e-3;
  double tol_q = 1e-10;
  int newton_max_iters = 20;
  RandomMode mode = RandomMode::kSample;
  std::uint64_t seed = 1;
  int retries = 3;
  // Keep every generated point (including rejected ones) for dumps.
  bool record_trace = false;

  // Throws Error(kInvalidArgument) if a field is out of range.
  void Validate() const;
};

// Orthonormal basis (d x (d - m)) of the kernel of the equality Jacobian at
// y, from a full-pivoting QR factorization.  Throws Error(kRankDeficient) if
// the equality gradients are linearly dependent at y.
Eigen::MatrixXd TangentBasis(const ConstraintSystem& cs, const Eigen::VectorXd& y);

// Orthogonal projector onto the tangent space at a point, built from the
// Cholesky factorization of the Gram matrix J J^T of the constraint
// gradients.  Reused for every projection done at that point.
class TangentProjector {
 public:
  // Throws Error(kRankDeficient) if J J^T is not positive definite.
  TangentProjector(const ConstraintSystem& cs, const Eigen::VectorXd& y);

  // Rows are the equality gradients at the base point.
  const Eigen::MatrixXd& jacobian() const { return jacobian_; }
  Eigen::VectorXd Project(const Eigen::VectorXd& v) const;

 private:
  Eigen::MatrixXd jacobian_;
  Eigen::LLT<Eigen::MatrixXd> gram_;
};

// Finds w = sum_j a_j grad q_j(y_base) with max_i |q_i(z + w)| <= tol_q by
// Newton iteration on the coefficients a, starting from a = 0.  Returns
// std::nullopt if the iteration does not converge within `max_iters`.
// Inequalities are not checked.
std::optional<Eigen::VectorXd> ProjectToManifold(const ConstraintSystem& cs,
                                                 const Eigen::MatrixXd& base_jacobian,
                                                 const Eigen::VectorXd& z,
                                                 double tol_q, int max_iters);
std::optional<Eigen::VectorXd> ProjectToManifold(const ConstraintSystem& cs,
                                                 const Eigen::VectorXd& y_base,
                                                 const Eigen::VectorXd& z,
                                                 double tol_q, int max_iters);

enum class StepOutcome {
  kAccepted,
  // (a) the new point violates an inequality.
  kOutsideBoundary,
  // (b) Newton projection back to the manifold failed.
  kProjectionFailed,
  // (c) the projected descent direction is shorter than tol_n.
  kStagnated,
  // Random step refused by the Metropolis test or the reverse check.
  kRejected,
};

struct StepResult {
  StepOutcome outcome = StepOutcome::kAccepted;
  // The new point when accepted, otherwise the proposal (if one was formed)
  // or the unchanged input.
  Eigen::VectorXd point;
  // |P_k (x1 - y_k)| for descent steps.
  double projected_length = 0.0;
  // Euclidean length of the move, zero when not accepted.
  double step_length = 0.0;
};

// y_{k+1} = y_k + Δs u_k + w_k with u_k the normalized tangent projection of
// x1 - y_k and Δs = min(tol, |P_k (x1 - y_k)|).
StepResult DescentStep(const ConstraintSystem& cs, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& x1, const PathConfig& config);

// Isotropic Gaussian tangent step of scale sigma, projected back; rejected
// (point returned unchanged) on projection failure or inequality violation.
StepResult RandomGaussianStep(const ConstraintSystem& cs, const Eigen::VectorXd& y,
                              const PathConfig& config, std::mt19937_64& rng);

// Metropolis step targeting exp(-beta |y - x1|^2) on the manifold, with a
// reverse-projection check.
StepResult MetropolisStep(const ConstraintSystem& cs, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& x1, const PathConfig& config,
                          std::mt19937_64& rng);

enum class PathStatus { kFound, kNotFound };

enum class PointKind { kStart, kDescent, kGaussian, kSample, kRejected };
std::string_view PointKindName(PointKind kind);

struct TracePoint {
  Eigen::VectorXd point;
  PointKind kind;
};

struct PathStats {
  std::int64_t total_points = 0;
  std::int64_t descent_steps = 0;
  std::int64_t random_steps = 0;
  std::int64_t boundary_rejections = 0;
  std::int64_t projection_failures = 0;
  std::int64_t stagnations = 0;
  std::int64_t metropolis_rejections = 0;
  double max_descent_step = 0.0;
  double max_random_step = 0.0;
  int attempts = 0;

  PathStats& operator+=(const PathStats& other);
};

struct PathResult {
  PathStatus status = PathStatus::kNotFound;
  // Accepted points of the successful attempt, from x0 to the point within
  // tol of x1.  Empty when not found.
  std::vector<Eigen::VectorXd> points;
  // Every generated point of the last attempt when config.record_trace.
  std::vector<TracePoint> trace;
  PathStats stats;
  // Seed of the successful (or last) attempt.
  std::uint64_t seed = 0;
  // |last point - x1|.
  double final_distance = 0.0;

  bool found() const { return status == PathStatus::kFound; }
};

// Alternates projected steepest descent toward x1 with bursts of config.nr
// random steps whenever the descent leaves the domain, fails to project, or
// stalls.  Stops with kFound once within tol of x1, or gives up after nmax
// generated points; up to config.retries independently seeded attempts.
// Throws Error(kInfeasibleEndpoint) if x0 or x1 is not in the set.
PathResult FindPath(const ConstraintSystem& cs, const Eigen::VectorXd& x0,
                    const Eigen::VectorXd& x1, const PathConfig& config);

// Runs n_steps Metropolis steps with beta = 0 from x0 and returns the final
// point.
Eigen::VectorXd SampleConfiguration(const ConstraintSystem& cs,
                                    const Eigen::VectorXd& x0, int n_steps,
                                    double sigma, std::uint64_t seed,
                                    double tol_q = 1e-10);

// Child seed for (parent, salt...) via splitmix64 mixing; used so that
// parallel searches are reproducible regardless of scheduling.
std::uint64_t DeriveSeed(std::uint64_t parent, std::uint64_t salt);

}  // namespace sticky

#endif  // STICKY_MANIFOLD_H_
