#include "sticky/constraints.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sticky/error.h"

namespace sticky {

namespace {

inline double PairValue(const PairTerm& t, const Eigen::VectorXd& y) {
  const double dx = y[3 * t.i] - y[3 * t.j];
  const double dy = y[3 * t.i + 1] - y[3 * t.j + 1];
  const double dz = y[3 * t.i + 2] - y[3 * t.j + 2];
  return dx * dx + dy * dy + dz * dz - t.target_sq;
}

// Writes the gradient of a pair term into `row` (assumed zeroed).
template <typename Row>
inline void PairGradient(const PairTerm& t, const Eigen::VectorXd& y, Row row) {
  for (int k = 0; k < 3; ++k) {
    const double diff = 2.0 * (y[3 * t.i + k] - y[3 * t.j + k]);
    row[3 * t.i + k] = diff;
    row[3 * t.j + k] = -diff;
  }
}

}  // namespace

void ConstraintSystem::FixCenterOfMass(int num_spheres) {
  if (3 * num_spheres != dimension_) {
    throw Error(ErrorCode::kInvalidArgument,
                "center-of-mass constraint needs d = 3N");
  }
  com_spheres_ = num_spheres;
}

int ConstraintSystem::num_equalities() const {
  return static_cast<int>(contacts_.size()) + (com_spheres_ > 0 ? 3 : 0) +
         static_cast<int>(equalities_.size());
}

int ConstraintSystem::num_inequalities() const {
  return static_cast<int>(separations_.size() + inequalities_.size());
}

void ConstraintSystem::Equalities(const Eigen::VectorXd& y,
                                  Eigen::VectorXd* out) const {
  out->resize(num_equalities());
  int row = 0;
  for (const PairTerm& t : contacts_) (*out)[row++] = PairValue(t, y);
  if (com_spheres_ > 0) {
    for (int k = 0; k < 3; ++k) {
      double sum = 0.0;
      for (int i = 0; i < com_spheres_; ++i) sum += y[3 * i + k];
      (*out)[row++] = sum;
    }
  }
  for (const ScalarConstraint& c : equalities_) (*out)[row++] = c.value(y);
}

Eigen::VectorXd ConstraintSystem::Equalities(const Eigen::VectorXd& y) const {
  Eigen::VectorXd out;
  Equalities(y, &out);
  return out;
}

void ConstraintSystem::EqualityJacobian(const Eigen::VectorXd& y,
                                        Eigen::MatrixXd* out) const {
  out->setZero(num_equalities(), dimension_);
  int row = 0;
  for (const PairTerm& t : contacts_) PairGradient(t, y, out->row(row++));
  if (com_spheres_ > 0) {
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < com_spheres_; ++i) (*out)(row, 3 * i + k) = 1.0;
      ++row;
    }
  }
  for (const ScalarConstraint& c : equalities_) {
    out->row(row++) = c.gradient(y).transpose();
  }
}

Eigen::MatrixXd ConstraintSystem::EqualityJacobian(
    const Eigen::VectorXd& y) const {
  Eigen::MatrixXd out;
  EqualityJacobian(y, &out);
  return out;
}

Eigen::VectorXd ConstraintSystem::Inequalities(const Eigen::VectorXd& y) const {
  Eigen::VectorXd out(num_inequalities());
  int row = 0;
  for (const PairTerm& t : separations_) out[row++] = PairValue(t, y);
  for (const ScalarConstraint& c : inequalities_) out[row++] = c.value(y);
  return out;
}

Eigen::MatrixXd ConstraintSystem::InequalityJacobian(
    const Eigen::VectorXd& y) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(num_inequalities(), dimension_);
  int row = 0;
  for (const PairTerm& t : separations_) PairGradient(t, y, out.row(row++));
  for (const ScalarConstraint& c : inequalities_) {
    out.row(row++) = c.gradient(y).transpose();
  }
  return out;
}

double ConstraintSystem::MaxEqualityResidual(const Eigen::VectorXd& y) const {
  if (num_equalities() == 0) return 0.0;
  return Equalities(y).cwiseAbs().maxCoeff();
}

bool ConstraintSystem::SatisfiesInequalities(const Eigen::VectorXd& y) const {
  for (const PairTerm& t : separations_) {
    if (!(PairValue(t, y) > 0.0)) return false;
  }
  for (const ScalarConstraint& c : inequalities_) {
    if (!(c.value(y) > 0.0)) return false;
  }
  return true;
}

double ConstraintSystem::MinInequality(const Eigen::VectorXd& y) const {
  if (num_inequalities() == 0) return std::numeric_limits<double>::infinity();
  return Inequalities(y).minCoeff();
}

bool ConstraintSystem::IsFeasible(const Eigen::VectorXd& y, double tol_q) const {
  if (y.size() != dimension_ || !y.allFinite()) return false;
  return MaxEqualityResidual(y) <= tol_q && SatisfiesInequalities(y);
}

ConstraintSystem BuildConstraintSystem(const AdjacencyMatrix& adjacency,
                                       const Eigen::VectorXd& radii,
                                       bool fix_com) {
  const int n = adjacency.size();
  if (radii.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "radii size does not match graph");
  }
  ConstraintSystem cs(3 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double reach = radii[i] + radii[j];
      PairTerm term{i, j, reach * reach};
      if (adjacency(i, j)) {
        cs.AddContact(term);
      } else {
        cs.AddSeparation(term);
      }
    }
  }
  if (fix_com) cs.FixCenterOfMass(n);
  return cs;
}

ConstraintSystem ToyDomain() {
  ConstraintSystem cs(2);
  // 3 - x > 0
  cs.AddInequality({[](const Eigen::VectorXd& p) { return 3.0 - p[0]; },
                    [](const Eigen::VectorXd&) {
                      return Eigen::VectorXd(Eigen::Vector2d(-1.0, 0.0));
                    }});
  // x + 3 > 0
  cs.AddInequality({[](const Eigen::VectorXd& p) { return p[0] + 3.0; },
                    [](const Eigen::VectorXd&) {
                      return Eigen::VectorXd(Eigen::Vector2d(1.0, 0.0));
                    }});
  // y > 0
  cs.AddInequality({[](const Eigen::VectorXd& p) { return p[1]; },
                    [](const Eigen::VectorXd&) {
                      return Eigen::VectorXd(Eigen::Vector2d(0.0, 1.0));
                    }});
  // x^2 + 5 - y > 0
  cs.AddInequality(
      {[](const Eigen::VectorXd& p) { return p[0] * p[0] + 5.0 - p[1]; },
       [](const Eigen::VectorXd& p) {
         return Eigen::VectorXd(Eigen::Vector2d(2.0 * p[0], -1.0));
       }});
  return cs;
}

}  // namespace sticky
