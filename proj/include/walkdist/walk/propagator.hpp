#pragma once

#include <Eigen/Dense>

#include "walkdist/walk/hamiltonian.hpp"

namespace walkdist::walk {

/// e^{-itH} for a fixed real symmetric H. The eigendecomposition H = Q L Q^T
/// is computed once and reused for every time.
class Propagator {
 public:
  explicit Propagator(const Eigen::MatrixXd& h);

  Eigen::MatrixXcd unitary(double t) const;
  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
  const Eigen::MatrixXd& eigenvectors() const noexcept { return vectors_; }

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
};

Eigen::MatrixXcd unitary(const Hamiltonian& h, double t);

/// max |(U^dagger U - I)_{ij}|
double unitarity_defect(const Eigen::MatrixXcd& u);

}  // namespace walkdist::walk
