#ifndef STICKY_CONSTRAINTS_H_
#define STICKY_CONSTRAINTS_H_

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sticky/geometry.h"

namespace sticky {

// q(y) = |y_i - y_j|^2 - target_sq.  As an equality it pins a contact; as an
// inequality (q > 0) it keeps a non-contact pair apart.
struct PairTerm {
  int i = 0;
  int j = 0;
  double target_sq = 1.0;
};

// A smooth scalar constraint given by callbacks, for sets that are not sphere
// clusters (e.g. the planar test domain).
struct ScalarConstraint {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
};

// The implicitly defined set
//   M = { y in R^d : q_i(y) = 0 (i < m), h_j(y) > 0 (j < l) }.
// Equalities are ordered: pair contacts, then center-of-mass rows (if any),
// then custom equalities.  Inequalities: pair separations, then custom.
class ConstraintSystem {
 public:
  explicit ConstraintSystem(int dimension) : dimension_(dimension) {}

  void AddContact(PairTerm term) { contacts_.push_back(term); }
  void AddSeparation(PairTerm term) { separations_.push_back(term); }
  // Adds sum_i y_i = 0 over `num_spheres` 3-vectors (three rows).
  void FixCenterOfMass(int num_spheres);
  void AddEquality(ScalarConstraint c) { equalities_.push_back(std::move(c)); }
  void AddInequality(ScalarConstraint c) { inequalities_.push_back(std::move(c)); }

  int dimension() const { return dimension_; }
  int num_equalities() const;
  int num_inequalities() const;
  // d - m.
  int manifold_dimension() const { return dimension_ - num_equalities(); }
  bool fixes_center_of_mass() const { return com_spheres_ > 0; }
  const std::vector<PairTerm>& contacts() const { return contacts_; }
  const std::vector<PairTerm>& separations() const { return separations_; }

  void Equalities(const Eigen::VectorXd& y, Eigen::VectorXd* out) const;
  Eigen::VectorXd Equalities(const Eigen::VectorXd& y) const;
  // m x d matrix whose rows are the equality gradients.
  void EqualityJacobian(const Eigen::VectorXd& y, Eigen::MatrixXd* out) const;
  Eigen::MatrixXd EqualityJacobian(const Eigen::VectorXd& y) const;
  Eigen::VectorXd Inequalities(const Eigen::VectorXd& y) const;
  // l x d matrix of inequality gradients.
  Eigen::MatrixXd InequalityJacobian(const Eigen::VectorXd& y) const;

  double MaxEqualityResidual(const Eigen::VectorXd& y) const;
  // Every h_j(y) > 0.  Short-circuits on the first violation.
  bool SatisfiesInequalities(const Eigen::VectorXd& y) const;
  double MinInequality(const Eigen::VectorXd& y) const;
  // max |q_i| <= tol_q and every h_j > 0.
  bool IsFeasible(const Eigen::VectorXd& y, double tol_q) const;

 private:
  int dimension_;
  std::vector<PairTerm> contacts_;
  std::vector<PairTerm> separations_;
  int com_spheres_ = 0;
  std::vector<ScalarConstraint> equalities_;
  std::vector<ScalarConstraint> inequalities_;
};

// One equality per contact of `adjacency` (target (r_i + r_j)^2), one strict
// inequality per non-contact pair, plus the three center-of-mass rows when
// `fix_com` is set.
ConstraintSystem BuildConstraintSystem(const AdjacencyMatrix& adjacency,
                                       const Eigen::VectorXd& radii,
                                       bool fix_com);

// The planar test domain D = {(x, y) : |x| < 3, 0 < y < x^2 + 5}.
ConstraintSystem ToyDomain();

}  // namespace sticky

#endif  // STICKY_CONSTRAINTS_H_
