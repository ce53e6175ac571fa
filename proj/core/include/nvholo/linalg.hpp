#pragma once

// Dense complex linear algebra for small (dim <= 9) quantum systems:
// Hermitian propagator steps exp(-i H dt) and the unitarity / hermiticity
// defect measures every other module leans on.

#include <Eigen/Dense>
#include <complex>

namespace nvholo {

using cd = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

namespace tol {
// module defaults; callers may pass overrides where a tolerance parameter exists
inline constexpr double hermiticity = 1e-12;
inline constexpr double unitarity = 1e-10;
}  // namespace tol

// largest |H(i,j) - conj(H(j,i))| over all entries
double hermiticity_defect(const ComplexMatrix& h);

// largest |(U^dag U - I)(i,j)| over all entries
double unitarity_defect(const ComplexMatrix& u);

// throws std::invalid_argument naming the worst entry if h is not Hermitian
// within `tolerance`; `context` prefixes the diagnostic
void require_hermitian(const ComplexMatrix& h, double tolerance = tol::hermiticity,
                       const char* context = "hermitian_exp");

// exp(-i h dt) for Hermitian h, via eigendecomposition; the result is unitary
// to ~1e-15.  Rejects non-Hermitian input and non-finite dt.
ComplexMatrix hermitian_exp(const ComplexMatrix& h, double dt,
                            double hermiticity_tolerance = tol::hermiticity);

// |k> in a dim-dimensional space
StateVector basis_state(int dim, int k);

}  // namespace nvholo
