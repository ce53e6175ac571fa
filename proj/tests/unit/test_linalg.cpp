#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "nvholo/linalg.hpp"
#include "support/oracles.hpp"

using namespace nvholo;

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix random_hermitian(int dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  ComplexMatrix h(dim, dim);
  for (int i = 0; i < dim; ++i) {
    h(i, i) = cd(uni(rng), 0.0);
    for (int j = i + 1; j < dim; ++j) {
      h(i, j) = cd(uni(rng), uni(rng));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

oracle::Mat to_oracle(const ComplexMatrix& m) {
  oracle::Mat out(static_cast<int>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) = m(i, j);
  return out;
}

}  // namespace

TEST_CASE("hermiticity defect measures the worst asymmetric entry") {
  ComplexMatrix h = random_hermitian(4, 11);
  CHECK(hermiticity_defect(h) == 0.0);
  h(1, 3) += cd(0.0, 2.5e-7);
  CHECK(hermiticity_defect(h) == doctest::Approx(2.5e-7).epsilon(1e-6));
}

TEST_CASE("unitarity defect is zero for a unitary and grows with scaling") {
  ComplexMatrix u = hermitian_exp(random_hermitian(5, 7), 0.8);
  CHECK(unitarity_defect(u) < 1e-14);
  CHECK(unitarity_defect(1.1 * u) == doctest::Approx(0.21).epsilon(1e-10));
}

TEST_CASE("require_hermitian names the context in its diagnostic") {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 1) = cd(1.0, 0.0);  // missing conjugate partner
  CHECK_THROWS_WITH_AS(require_hermitian(h, 1e-12, "unit-test generator"),
                       doctest::Contains("unit-test generator"), std::invalid_argument);
}

TEST_CASE("hermitian_exp of a diagonal generator gives pure phases") {
  // eigenphases 0, 2pi, pi, 3pi at dt = pi/10 -> diag(1, 1, -1, -1)
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  h(1, 1) = 20.0;
  h(2, 2) = 10.0;
  h(3, 3) = 30.0;
  const ComplexMatrix u = hermitian_exp(h, kPi / 10.0);
  const double expected[] = {1.0, 1.0, -1.0, -1.0};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(u(i, i) - cd(expected[i], 0.0)) < 1e-12);
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(u(i, j)) < 1e-14);
  }
}

TEST_CASE("hermitian_exp reproduces the closed-form Pauli-x rotation") {
  // exp(-i theta sigma_x) = cos(theta) I - i sin(theta) sigma_x
  const double theta = 0.4321;
  ComplexMatrix sx = ComplexMatrix::Zero(2, 2);
  sx(0, 1) = sx(1, 0) = 1.0;
  const ComplexMatrix u = hermitian_exp(sx, theta);
  CHECK(std::abs(u(0, 0) - cd(std::cos(theta), 0.0)) < 1e-14);
  CHECK(std::abs(u(1, 1) - cd(std::cos(theta), 0.0)) < 1e-14);
  CHECK(std::abs(u(0, 1) - cd(0.0, -std::sin(theta))) < 1e-14);
  CHECK(std::abs(u(1, 0) - cd(0.0, -std::sin(theta))) < 1e-14);
}

TEST_CASE("hermitian_exp agrees with the independent Jacobi oracle") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const ComplexMatrix h = 5.0 * random_hermitian(9, seed);
    const double dt = 0.37;
    const ComplexMatrix u = hermitian_exp(h, dt);
    const oracle::Mat ref = oracle::expm_minus_i(to_oracle(h), dt);
    double worst = 0.0;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) worst = std::max(worst, std::abs(u(i, j) - ref.at(i, j)));
    CHECK(worst < 1e-9);
    CHECK(unitarity_defect(u) < 1e-13);
  }
}

TEST_CASE("hermitian_exp rejects bad input") {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(0, 1) = cd(0.3, 0.1);  // not Hermitian
  CHECK_THROWS_AS(hermitian_exp(h, 0.1), std::invalid_argument);

  const ComplexMatrix ok = random_hermitian(3, 4);
  CHECK_THROWS_AS(hermitian_exp(ok, std::nan("")), std::invalid_argument);
}

TEST_CASE("basis_state is a unit coordinate vector") {
  const StateVector e2 = basis_state(4, 2);
  CHECK(e2.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(e2(i) - (i == 2 ? 1.0 : 0.0)) == 0.0);
}
