// dynamics.hpp — Pauli master equation over eigenstate populations:
// fixed-step RK4 integration, stationary distributions, and the observables
// tracked in the decay scenarios.

#pragma once

#include "spinbath/bath_rates.hpp"
#include "spinbath/eigensolver.hpp"

#include <vector>

namespace spinbath::dyn {

struct Trajectory {
    std::vector<double> times;
    Eigen::MatrixXd populations;  // column k = populations at times[k], clamped >= 0
};

struct ObservableSeries {
    std::vector<double> logical0;       // population of the logical state
    std::vector<double> sector_pop;     // total population carrying the sector label
    std::vector<double> reference_exp;  // e^{-gamma t}
};

// Integrate dp_j/dt = sum_i w(j,i) p_i - (sum_i w(i,j)) p_j from p0 at times[0]
// over the ascending output grid. Internal step: h = min(0.01/gamma_max,
// span/1000) with gamma_max the largest total out-rate; `step_override` (> 0)
// replaces h, for convergence self-tests. Probability is conserved to 1e-9 at
// every output point; populations below -1e-12 abort (integrator failure),
// smaller negatives clamp to 0 on output.
Trajectory evolve(const bath::RateMatrix& rates, const Eigen::VectorXd& p0,
                  const std::vector<double>& times, double step_override = 0.0);

// Normalized null vector of the generator, found by deterministic Gaussian
// elimination with partial pivoting. Throws if the null space has dimension
// other than one (multiple stationary distributions are reported, not guessed).
Eigen::VectorXd steady_state(const bath::RateMatrix& rates);

// 0.5 * sum_i |p_i - q_i|.
double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

// logical0(t), population of the sector labeled `sector_label`, and e^{-gamma t}.
// Requires d.sector_labels.
ObservableSeries observables(const Trajectory& traj, const eig::EigenDecomposition& d,
                             int logical_index, const std::vector<double>& sector_label,
                             double gamma, double label_tol = 1e-6);

}  // namespace spinbath::dyn
