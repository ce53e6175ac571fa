#include "nvholo/propagate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace nvholo {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double infinity_norm(const ComplexMatrix& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

// 2x2 polar projection: nearest unitary in Frobenius norm, plus the size of
// the correction that was applied
Eigen::Matrix2cd polar_unitary(const Eigen::Matrix2cd& m, double* defect) {
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (defect) {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) worst = std::max(worst, std::abs(svd.singularValues()(i) - 1.0));
    *defect = worst;
  }
  return svd.matrixU() * svd.matrixV().adjoint();
}

// one midpoint substep applied in eigenbasis form; es is reused across calls
struct Stepper {
  explicit Stepper(const HamiltonianModel& model, double hermiticity_tolerance)
      : model_(model),
        tolerance_(hermiticity_tolerance),
        h_(model.dim, model.dim) {}

  void factor(double t_mid) {
    model_.eval(t_mid, h_);
    require_hermitian(h_, tolerance_,
                      ("propagation step at t = " + std::to_string(t_mid)).c_str());
    es_.compute(h_);
    if (es_.info() != Eigen::Success)
      throw std::runtime_error("propagation: eigendecomposition failed at t = " +
                               std::to_string(t_mid));
  }

  // psi <- exp(-i H dt) psi using the last factorization
  void apply(StateVector& psi, double dt) const {
    Eigen::VectorXcd coeffs = es_.eigenvectors().adjoint() * psi;
    coeffs.array() *= (cd(0.0, -dt) * es_.eigenvalues().array()).exp();
    psi = es_.eigenvectors() * coeffs;
  }

  void apply(ComplexMatrix& u, double dt) const {
    const Eigen::VectorXcd phases =
        (cd(0.0, -dt) * es_.eigenvalues().array()).exp().matrix();
    u = es_.eigenvectors() * (phases.asDiagonal() * (es_.eigenvectors().adjoint() * u));
  }

  const HamiltonianModel& model_;
  double tolerance_;
  ComplexMatrix h_;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es_;
};

void check_grid_and_model(const HamiltonianModel& model, const TimeGrid& grid) {
  grid.validate();
  require(model.dim >= 2, "propagation: model dimension must be >= 2");
  require(static_cast<bool>(model.eval), "propagation: model has no generator callback");
}

}  // namespace

void TimeGrid::validate() const {
  require(std::isfinite(t0) && std::isfinite(tf), "TimeGrid: endpoints must be finite");
  require(tf > t0, "TimeGrid: requires tf > t0");
  require(steps >= 2, "TimeGrid: requires steps >= 2");
  require(substeps >= 1, "TimeGrid: requires substeps >= 1");
}

int stability_suggested_steps(const HamiltonianModel& model, const TimeGrid& grid,
                              double threshold) {
  const int samples = std::min(grid.steps, 1000);
  ComplexMatrix h(model.dim, model.dim);
  double hmax = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double t = grid.t0 + (grid.tf - grid.t0) * k / samples;
    model.eval(t, h);
    hmax = std::max(hmax, infinity_norm(h));
  }
  if (hmax * grid.dt_integration() <= threshold) return 0;
  const double dt_needed = threshold / hmax;
  const double integration_steps = std::ceil((grid.tf - grid.t0) / dt_needed);
  return static_cast<int>(std::ceil(integration_steps / grid.substeps));
}

namespace {

// shared stability preamble: returns suggested steps (0 when fine) and warns
int stability_preamble(const HamiltonianModel& model, const TimeGrid& grid,
                       const PropagationOptions& options) {
  if (!options.check_stability) return 0;
  const int suggested = stability_suggested_steps(model, grid, options.stability_threshold);
  if (suggested > 0) {
    std::cerr << "[nvholo] warning: time step too coarse for " << model.label
              << " generator (dt * max||H|| > " << options.stability_threshold
              << "); results may be inaccurate. Suggested steps: " << suggested
              << " (at substeps = " << grid.substeps << ")\n";
  }
  return suggested;
}

}  // namespace

Trajectory propagate_state(const HamiltonianModel& model, const StateVector& initial,
                           const TimeGrid& grid, const PropagationOptions& options) {
  check_grid_and_model(model, grid);
  require(initial.size() == model.dim, "propagate_state: state dimension mismatch");
  const double norm0 = initial.norm();
  require(norm0 > 0.0, "propagate_state: initial state has zero norm");

  Trajectory out;
  const int suggested = stability_preamble(model, grid, options);
  out.stability_warning = suggested > 0;
  out.suggested_steps = suggested;

  out.times.reserve(grid.steps + 1);
  out.states.reserve(grid.steps + 1);
  out.amplitude_norms.reserve(grid.steps + 1);

  Stepper stepper(model, options.hermiticity_tolerance);
  StateVector psi = initial;
  const double dt_int = grid.dt_integration();

  auto record = [&](int k) {
    out.times.push_back(grid.node(k));
    out.states.push_back(psi);
    std::vector<double> norms(model.dim);
    for (int i = 0; i < model.dim; ++i) norms[i] = std::abs(psi(i));
    out.amplitude_norms.push_back(std::move(norms));
    const double drift = std::abs(psi.norm() - norm0);
    out.max_norm_drift = std::max(out.max_norm_drift, drift);
    if (drift > options.norm_drift_tolerance) {
      std::ostringstream msg;
      msg << "propagate_state: norm drift " << drift << " exceeds tolerance "
          << options.norm_drift_tolerance << " at t = " << grid.node(k);
      throw std::runtime_error(msg.str());
    }
  };

  record(0);
  for (int k = 0; k < grid.steps; ++k) {
    const double t_step = grid.node(k);
    for (int s = 0; s < grid.substeps; ++s) {
      stepper.factor(t_step + (s + 0.5) * dt_int);
      stepper.apply(psi, dt_int);
    }
    record(k + 1);
  }
  return out;
}

UnitaryResult propagate_unitary(const HamiltonianModel& model, const TimeGrid& grid,
                                const PropagationOptions& options) {
  check_grid_and_model(model, grid);

  UnitaryResult out;
  const int suggested = stability_preamble(model, grid, options);
  out.stability_warning = suggested > 0;
  out.suggested_steps = suggested;

  Stepper stepper(model, options.hermiticity_tolerance);
  ComplexMatrix u = ComplexMatrix::Identity(model.dim, model.dim);
  const ComplexMatrix eye = ComplexMatrix::Identity(model.dim, model.dim);
  const double dt_int = grid.dt_integration();

  for (int k = 0; k < grid.steps; ++k) {
    const double t_step = grid.node(k);
    for (int s = 0; s < grid.substeps; ++s) {
      stepper.factor(t_step + (s + 0.5) * dt_int);
      stepper.apply(u, dt_int);
    }
    const double defect = infinity_norm(u * u.adjoint() - eye);
    out.max_unitarity_defect = std::max(out.max_unitarity_defect, defect);
    if (defect > options.unitarity_tolerance) {
      std::ostringstream msg;
      msg << "propagate_unitary: unitarity defect " << defect << " exceeds tolerance "
          << options.unitarity_tolerance << " at t = " << grid.node(k + 1);
      throw std::runtime_error(msg.str());
    }
  }
  out.propagator = std::move(u);
  return out;
}

// ---------------------------------------------------------------------------
// dark-subspace transport
// ---------------------------------------------------------------------------

namespace {

// 4x2 frame of instantaneous dark states at time t
Eigen::Matrix<cd, 4, 2> dark_frame(const FourLevelParams& params, double t) {
  const auto [wp1, wp2, ws1, ws2] = params.rabi(t);
  (void)wp2;
  (void)ws2;
  const double omega0 = 0.5 * (params.delta1 + params.delta2);
  const DarkPair pair = dark_states(wp1, ws1, omega0);
  Eigen::Matrix<cd, 4, 2> f;
  f.col(0) = pair.d1;
  f.col(1) = pair.d2;
  return f;
}

}  // namespace

DarkHolonomy dark_subspace_propagator(const FourLevelParams& params, const TimeGrid& grid,
                                      double step_defect_limit) {
  params.validate();
  grid.validate();
  if (!params.dark_state_regime(1e-9))
    throw std::invalid_argument(
        "dark_subspace_propagator: requires the dark-state regime (equal detunings, "
        "pairwise-equal tone scales)");

  DarkHolonomy out;
  Eigen::Matrix<cd, 4, 2> f_prev = dark_frame(params, grid.t0);
  const Eigen::Matrix<cd, 4, 2> f_first = f_prev;
  Eigen::Matrix2cd transport = Eigen::Matrix2cd::Identity();

  for (int k = 0; k < grid.steps; ++k) {
    const Eigen::Matrix<cd, 4, 2> f_next = dark_frame(params, grid.node(k + 1));
    const Eigen::Matrix2cd overlap = f_next.adjoint() * f_prev;
    double defect = 0.0;
    const Eigen::Matrix2cd step = polar_unitary(overlap, &defect);
    out.max_step_defect = std::max(out.max_step_defect, defect);
    if (defect > step_defect_limit) {
      std::ostringstream msg;
      msg << "dark_subspace_propagator: frame overlap defect " << defect
          << " exceeds limit " << step_defect_limit << " near t = " << grid.node(k + 1)
          << "; increase the step count";
      throw std::runtime_error(msg.str());
    }
    transport = step * transport;
    f_prev = f_next;
  }

  // express the transport in the bare qubit basis via the endpoint ground
  // blocks (rows |1>, |2>), polar-corrected for their tiny excited content
  double defect_start = 0.0;
  double defect_end = 0.0;
  const Eigen::Matrix2cd q0 = polar_unitary(f_first.topRows<2>(), &defect_start);
  const Eigen::Matrix2cd qf = polar_unitary(f_prev.topRows<2>(), &defect_end);
  out.endpoint_defect = std::max(defect_start, defect_end);
  out.gate = polar_unitary(qf * transport * q0.adjoint(), nullptr);
  return out;
}

cd nonadiabatic_coupling(const FourLevelParams& params, double t, double h) {
  params.validate();
  require(h > 0.0 && std::isfinite(h), "nonadiabatic_coupling: requires h > 0");

  const Eigen::Matrix<cd, 4, 2> f0 = dark_frame(params, t);
  Eigen::Matrix<cd, 4, 2> f_minus = dark_frame(params, t - h);
  Eigen::Matrix<cd, 4, 2> f_plus = dark_frame(params, t + h);

  // gauge: rotate each neighbor column so its overlap with the center column
  // is real and positive, removing the arbitrary phase slope of the frame
  for (int i = 0; i < 2; ++i) {
    for (auto* f : {&f_minus, &f_plus}) {
      const cd overlap = f0.col(i).dot(f->col(i));
      const double mag = std::abs(overlap);
      if (mag > 0.0) f->col(i) *= std::conj(overlap) / mag;
    }
  }
  const Eigen::Vector4cd derivative = (f_plus.col(0) - f_minus.col(0)) / (2.0 * h);
  return f0.col(1).dot(derivative);
}

}  // namespace nvholo
