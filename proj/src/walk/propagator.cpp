#include "walkdist/walk/propagator.hpp"

#include <cmath>

namespace walkdist::walk {

Propagator::Propagator(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols()) throw ArgumentError("Hamiltonian must be square");
  if (!(h == h.transpose())) throw ArgumentError("Hamiltonian must be exactly symmetric");
  if (!h.allFinite()) throw NumericalError("Hamiltonian has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    throw NumericalError("symmetric eigensolver did not converge (dimension " + std::to_string(h.rows()) +
                         ", max |H_ij| " + std::to_string(h.cwiseAbs().maxCoeff()) + ")");
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Eigen::MatrixXcd Propagator::unitary(double t) const {
  if (!std::isfinite(t)) throw ArgumentError("time must be finite");
  // Q diag(e^{-it l}) Q^T = Q diag(cos) Q^T - i Q diag(sin) Q^T, two real products.
  const Eigen::ArrayXd phase = values_.array() * t;
  const Eigen::MatrixXd c = vectors_ * phase.cos().matrix().asDiagonal() * vectors_.transpose();
  const Eigen::MatrixXd s = vectors_ * phase.sin().matrix().asDiagonal() * vectors_.transpose();
  Eigen::MatrixXcd u(c.rows(), c.cols());
  u.real() = c;
  u.imag() = -s;
  return u;
}

Eigen::MatrixXcd unitary(const Hamiltonian& h, double t) { return Propagator(h.matrix).unitary(t); }

double unitarity_defect(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd d = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

}  // namespace walkdist::walk
