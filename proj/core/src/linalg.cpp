#include "nvholo/linalg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nvholo {

double hermiticity_defect(const ComplexMatrix& h) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index j = 0; j < h.cols(); ++j)
      worst = std::max(worst, std::abs(h(i, j) - std::conj(h(j, i))));
  return worst;
}

double unitarity_defect(const ComplexMatrix& u) {
  ComplexMatrix gram = u.adjoint() * u;
  gram.diagonal().array() -= 1.0;
  return gram.cwiseAbs().maxCoeff();
}

void require_hermitian(const ComplexMatrix& h, double tolerance, const char* context) {
  if (h.rows() != h.cols()) {
    std::ostringstream msg;
    msg << context << ": matrix is " << h.rows() << "x" << h.cols() << ", not square";
    throw std::invalid_argument(msg.str());
  }
  double worst = 0.0;
  Eigen::Index wi = 0, wj = 0;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      const double d = std::abs(h(i, j) - std::conj(h(j, i)));
      if (d > worst) {
        worst = d;
        wi = i;
        wj = j;
      }
    }
  }
  if (worst > tolerance) {
    std::ostringstream msg;
    msg << context << ": input not Hermitian; |H(" << wi << "," << wj << ") - conj(H(" << wj
        << "," << wi << "))| = " << worst << " exceeds tolerance " << tolerance;
    throw std::invalid_argument(msg.str());
  }
}

ComplexMatrix hermitian_exp(const ComplexMatrix& h, double dt, double hermiticity_tolerance) {
  require_hermitian(h, hermiticity_tolerance);
  if (!std::isfinite(dt)) throw std::invalid_argument("hermitian_exp: dt is not finite");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_exp: eigendecomposition failed");
  const Eigen::VectorXcd phases =
      (cd(0.0, -dt) * es.eigenvalues().array()).exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

StateVector basis_state(int dim, int k) {
  if (dim < 1 || k < 0 || k >= dim)
    throw std::invalid_argument("basis_state: index out of range");
  StateVector v = StateVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace nvholo
