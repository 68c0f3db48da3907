#include "sticky/manifold.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sticky/error.h"

namespace sticky {

namespace {

// Reverse moves must land back on the starting point to this accuracy.
constexpr double kReverseTolerance = 1e-8;
// Newton corrections larger than this (in coefficient norm times gradient
// scale) are treated as divergence.
constexpr double kMaxCorrection = 1e3;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

Eigen::VectorXd TangentGaussian(const TangentProjector& proj, int dim,
                                double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, sigma);
  Eigen::VectorXd xi(dim);
  for (int k = 0; k < dim; ++k) xi[k] = normal(rng);
  return proj.Project(xi);
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t parent, std::uint64_t salt) {
  return SplitMix64(parent ^ SplitMix64(salt + 0x632be59bd9b4e019ull));
}

std::string_view RandomModeName(RandomMode mode) {
  return mode == RandomMode::kGaussian ? "gaussian" : "sample";
}

RandomMode ParseRandomMode(std::string_view name) {
  if (name == "gaussian") return RandomMode::kGaussian;
  if (name == "sample") return RandomMode::kSample;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown random mode '" + std::string(name) + "'");
}

std::string_view PointKindName(PointKind kind) {
  switch (kind) {
    case PointKind::kStart: return "start";
    case PointKind::kDescent: return "descent";
    case PointKind::kGaussian: return "gaussian";
    case PointKind::kSample: return "sample";
    case PointKind::kRejected: return "rejected";
  }
  return "unknown";
}

void PathConfig::Validate() const {
  if (!(tol > 0.0) || !(sigma > 0.0) || !(tol_q > 0.0) || !(tol_n >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "tol, sigma and tol_q must be positive");
  }
  if (nr < 1 || nmax < 1 || retries < 1 || newton_max_iters < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "nr, nmax, retries and newton_max_iters must be >= 1");
  }
  if (!std::isfinite(beta)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must be finite");
  }
}

PathStats& PathStats::operator+=(const PathStats& other) {
  total_points += other.total_points;
  descent_steps += other.descent_steps;
  random_steps += other.random_steps;
  boundary_rejections += other.boundary_rejections;
  projection_failures += other.projection_failures;
  stagnations += other.stagnations;
  metropolis_rejections += other.metropolis_rejections;
  max_descent_step = std::max(max_descent_step, other.max_descent_step);
  max_random_step = std::max(max_random_step, other.max_random_step);
  attempts += other.attempts;
  return *this;
}

Eigen::MatrixXd TangentBasis(const ConstraintSystem& cs, const Eigen::VectorXd& y) {
  const int d = cs.dimension();
  const int m = cs.num_equalities();
  if (m == 0) return Eigen::MatrixXd::Identity(d, d);
  if (m > d) {
    throw Error(ErrorCode::kRankDeficient, "more equalities than coordinates");
  }
  const Eigen::MatrixXd jt = cs.EqualityJacobian(y).transpose();
  Eigen::FullPivHouseholderQR<Eigen::MatrixXd> qr(jt);
  qr.setThreshold(1e-10);
  if (qr.rank() < m) {
    throw Error(ErrorCode::kRankDeficient,
                "equality gradients are linearly dependent (rank " +
                    std::to_string(qr.rank()) + " < " + std::to_string(m) + ")");
  }
  const Eigen::MatrixXd q = qr.matrixQ();
  return q.rightCols(d - m);
}

TangentProjector::TangentProjector(const ConstraintSystem& cs,
                                   const Eigen::VectorXd& y) {
  cs.EqualityJacobian(y, &jacobian_);
  if (jacobian_.rows() == 0) return;
  gram_.compute(jacobian_ * jacobian_.transpose());
  if (gram_.info() != Eigen::Success || !(gram_.rcond() > 1e-14)) {
    throw Error(ErrorCode::kRankDeficient,
                "equality gradients are linearly dependent");
  }
}

Eigen::VectorXd TangentProjector::Project(const Eigen::VectorXd& v) const {
  if (jacobian_.rows() == 0) return v;
  const Eigen::VectorXd coeffs = gram_.solve(jacobian_ * v);
  return v - jacobian_.transpose() * coeffs;
}

std::optional<Eigen::VectorXd> ProjectToManifold(const ConstraintSystem& cs,
                                                 const Eigen::MatrixXd& base_jacobian,
                                                 const Eigen::VectorXd& z,
                                                 double tol_q, int max_iters) {
  const int m = cs.num_equalities();
  if (m == 0) return Eigen::VectorXd::Zero(z.size());
  const Eigen::MatrixXd q = base_jacobian.transpose();  // d x m
  Eigen::VectorXd a = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd point = z;
  Eigen::VectorXd residual;
  Eigen::MatrixXd jac;
  for (int iter = 0;; ++iter) {
    cs.Equalities(point, &residual);
    if (!residual.allFinite()) return std::nullopt;
    if (residual.cwiseAbs().maxCoeff() <= tol_q) return point - z;
    if (iter >= max_iters) return std::nullopt;
    cs.EqualityJacobian(point, &jac);
    const Eigen::MatrixXd newton = jac * q;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(newton);
    const Eigen::VectorXd delta = lu.solve(-residual);
    if (!delta.allFinite()) return std::nullopt;
    a += delta;
    point = z + q * a;
    if (!(point - z).allFinite() || (point - z).norm() > kMaxCorrection) {
      return std::nullopt;
    }
  }
}

std::optional<Eigen::VectorXd> ProjectToManifold(const ConstraintSystem& cs,
                                                 const Eigen::VectorXd& y_base,
                                                 const Eigen::VectorXd& z,
                                                 double tol_q, int max_iters) {
  return ProjectToManifold(cs, cs.EqualityJacobian(y_base), z, tol_q, max_iters);
}

StepResult DescentStep(const ConstraintSystem& cs, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& x1, const PathConfig& config) {
  StepResult result;
  result.point = y;
  std::optional<TangentProjector> proj;
  try {
    proj.emplace(cs, y);
  } catch (const Error&) {
    result.outcome = StepOutcome::kProjectionFailed;
    return result;
  }
  const Eigen::VectorXd direction = proj->Project(x1 - y);
  const double length = direction.norm();
  result.projected_length = length;
  if (!(length >= config.tol_n) || length == 0.0) {
    result.outcome = StepOutcome::kStagnated;
    return result;
  }
  const double ds = std::min(config.tol, length);
  const Eigen::VectorXd z = y + (ds / length) * direction;
  const auto w = ProjectToManifold(cs, proj->jacobian(), z, config.tol_q,
                                   config.newton_max_iters);
  if (!w) {
    result.outcome = StepOutcome::kProjectionFailed;
    result.point = z;
    return result;
  }
  result.point = z + *w;
  if (!cs.SatisfiesInequalities(result.point)) {
    result.outcome = StepOutcome::kOutsideBoundary;
    return result;
  }
  result.outcome = StepOutcome::kAccepted;
  result.step_length = (result.point - y).norm();
  return result;
}

StepResult RandomGaussianStep(const ConstraintSystem& cs, const Eigen::VectorXd& y,
                              const PathConfig& config, std::mt19937_64& rng) {
  StepResult result;
  result.point = y;
  std::optional<TangentProjector> proj;
  try {
    proj.emplace(cs, y);
  } catch (const Error&) {
    result.outcome = StepOutcome::kProjectionFailed;
    return result;
  }
  const Eigen::VectorXd z =
      y + TangentGaussian(*proj, cs.dimension(), config.sigma, rng);
  const auto w = ProjectToManifold(cs, proj->jacobian(), z, config.tol_q,
                                   config.newton_max_iters);
  if (!w) {
    result.outcome = StepOutcome::kProjectionFailed;
    result.point = z;
    return result;
  }
  const Eigen::VectorXd proposal = z + *w;
  if (!cs.SatisfiesInequalities(proposal)) {
    result.outcome = StepOutcome::kOutsideBoundary;
    result.point = proposal;
    return result;
  }
  result.outcome = StepOutcome::kAccepted;
  result.point = proposal;
  result.step_length = (proposal - y).norm();
  return result;
}

StepResult MetropolisStep(const ConstraintSystem& cs, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& x1, const PathConfig& config,
                          std::mt19937_64& rng) {
  StepResult result;
  result.point = y;
  std::optional<TangentProjector> proj;
  try {
    proj.emplace(cs, y);
  } catch (const Error&) {
    result.outcome = StepOutcome::kProjectionFailed;
    return result;
  }
  const Eigen::VectorXd z =
      y + TangentGaussian(*proj, cs.dimension(), config.sigma, rng);
  // Drawn unconditionally so the random stream does not depend on which
  // branch is taken below.
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const auto w = ProjectToManifold(cs, proj->jacobian(), z, config.tol_q,
                                   config.newton_max_iters);
  if (!w) {
    result.outcome = StepOutcome::kProjectionFailed;
    result.point = z;
    return result;
  }
  const Eigen::VectorXd proposal = z + *w;
  result.point = proposal;
  if (!cs.SatisfiesInequalities(proposal)) {
    result.outcome = StepOutcome::kOutsideBoundary;
    return result;
  }

  // Reverse move: the tangent component of y - proposal at the proposal must
  // project back onto y.
  if (cs.num_equalities() > 0) {
    std::optional<TangentProjector> back;
    try {
      back.emplace(cs, proposal);
    } catch (const Error&) {
      result.outcome = StepOutcome::kRejected;
      return result;
    }
    const Eigen::VectorXd z_back = proposal + back->Project(y - proposal);
    const auto w_back = ProjectToManifold(cs, back->jacobian(), z_back,
                                          config.tol_q, config.newton_max_iters);
    if (!w_back || (z_back + *w_back - y).norm() > kReverseTolerance) {
      result.outcome = StepOutcome::kRejected;
      return result;
    }
  }

  const double log_ratio =
      -config.beta * ((proposal - x1).squaredNorm() - (y - x1).squaredNorm());
  if (!(std::log(u) < log_ratio)) {
    result.outcome = StepOutcome::kRejected;
    return result;
  }
  result.outcome = StepOutcome::kAccepted;
  result.step_length = (proposal - y).norm();
  return result;
}

namespace {

// One seeded attempt of the path search.
bool RunAttempt(const ConstraintSystem& cs, const Eigen::VectorXd& x0,
                const Eigen::VectorXd& x1, const PathConfig& config,
                std::uint64_t seed, PathResult* out) {
  std::mt19937_64 rng(seed);
  PathStats& stats = out->stats;
  std::vector<Eigen::VectorXd>& points = out->points;
  points.clear();
  out->trace.clear();
  points.push_back(x0);
  if (config.record_trace) out->trace.push_back({x0, PointKind::kStart});
  Eigen::VectorXd y = x0;
  std::int64_t total = 1;
  stats.total_points += 1;

  auto arrived = [&]() { return (y - x1).norm() < config.tol; };
  auto record = [&](const Eigen::VectorXd& p, PointKind kind) {
    if (config.record_trace) out->trace.push_back({p, kind});
  };
  const PointKind random_kind = config.mode == RandomMode::kGaussian
                                    ? PointKind::kGaussian
                                    : PointKind::kSample;

  if (arrived()) {
    out->final_distance = (y - x1).norm();
    return true;
  }
  while (total < config.nmax) {
    const StepResult step = DescentStep(cs, y, x1, config);
    if (step.outcome == StepOutcome::kAccepted) {
      ++total;
      ++stats.total_points;
      ++stats.descent_steps;
      stats.max_descent_step = std::max(stats.max_descent_step, step.step_length);
      y = step.point;
      points.push_back(y);
      record(y, PointKind::kDescent);
      if (arrived()) {
        out->final_distance = (y - x1).norm();
        return true;
      }
      continue;
    }
    switch (step.outcome) {
      case StepOutcome::kOutsideBoundary:
        ++total;
        ++stats.total_points;
        ++stats.boundary_rejections;
        record(step.point, PointKind::kRejected);
        break;
      case StepOutcome::kProjectionFailed:
        ++total;
        ++stats.total_points;
        ++stats.projection_failures;
        break;
      default:
        ++stats.stagnations;
        break;
    }
    for (int k = 0; k < config.nr && total < config.nmax; ++k) {
      const StepResult r = config.mode == RandomMode::kGaussian
                               ? RandomGaussianStep(cs, y, config, rng)
                               : MetropolisStep(cs, y, x1, config, rng);
      ++total;
      ++stats.total_points;
      ++stats.random_steps;
      switch (r.outcome) {
        case StepOutcome::kAccepted:
          stats.max_random_step = std::max(stats.max_random_step, r.step_length);
          y = r.point;
          points.push_back(y);
          record(y, random_kind);
          if (arrived()) {
            out->final_distance = (y - x1).norm();
            return true;
          }
          break;
        case StepOutcome::kOutsideBoundary:
          ++stats.boundary_rejections;
          record(r.point, PointKind::kRejected);
          break;
        case StepOutcome::kProjectionFailed:
          ++stats.projection_failures;
          break;
        default:
          ++stats.metropolis_rejections;
          record(r.point, PointKind::kRejected);
          break;
      }
    }
  }
  out->final_distance = (y - x1).norm();
  return false;
}

}  // namespace

PathResult FindPath(const ConstraintSystem& cs, const Eigen::VectorXd& x0,
                    const Eigen::VectorXd& x1, const PathConfig& config) {
  config.Validate();
  if (x0.size() != cs.dimension() || x1.size() != cs.dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint dimension mismatch");
  }
  if (!cs.IsFeasible(x0, config.tol_q)) {
    throw Error(ErrorCode::kInfeasibleEndpoint, "start point is not in the set");
  }
  if (!cs.IsFeasible(x1, config.tol_q)) {
    throw Error(ErrorCode::kInfeasibleEndpoint, "end point is not in the set");
  }
  PathResult result;
  for (int attempt = 0; attempt < config.retries; ++attempt) {
    const std::uint64_t seed =
        attempt == 0 ? config.seed : DeriveSeed(config.seed, attempt);
    result.seed = seed;
    ++result.stats.attempts;
    if (RunAttempt(cs, x0, x1, config, seed, &result)) {
      result.status = PathStatus::kFound;
      return result;
    }
  }
  result.status = PathStatus::kNotFound;
  result.points.clear();
  return result;
}

Eigen::VectorXd SampleConfiguration(const ConstraintSystem& cs,
                                    const Eigen::VectorXd& x0, int n_steps,
                                    double sigma, std::uint64_t seed,
                                    double tol_q) {
  PathConfig config;
  config.sigma = sigma;
  config.beta = 0.0;
  config.tol_q = tol_q;
  std::mt19937_64 rng(seed);
  Eigen::VectorXd y = x0;
  for (int k = 0; k < n_steps; ++k) {
    const StepResult r = MetropolisStep(cs, y, x0, config, rng);
    if (r.outcome == StepOutcome::kAccepted) y = r.point;
  }
  return y;
}

}  // namespace sticky
