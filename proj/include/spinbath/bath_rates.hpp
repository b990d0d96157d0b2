// bath_rates.hpp — Golden-rule transition rates between system eigenstates for
// qubit-bath couplings, in the lab frame and in interaction frames where the
// bath modes acquire an effective shift of +-nu.
//
// Rate convention: for a coupling channel with operator A, carrier shift s and
// system transition frequency w_ji = E_j - E_i,
//   emission   resonance at w = s - w_ji: 2pi a(w)^2 rho(w) (n(w,T)+1) |<j|A|i>|^2
//   absorption resonance at w = w_ji - s: 2pi a(w)^2 rho(w)  n(w,T)    |<j|A|i>|^2
// and w <= 0 contributes nothing (pure dephasing, no population transfer).
// Transition frequencies between states of the same degeneracy group are exactly
// zero, so n(w,T) is never evaluated at a spurious near-zero frequency.

#pragma once

#include "spinbath/eigensolver.hpp"

#include <utility>
#include <vector>

namespace spinbath::bath {

// A nonnegative function of frequency, evaluated only at omega > 0. Used both
// for the spectral density rho(omega) and the per-axis coupling amplitudes
// alpha(omega).
struct Profile {
    enum class Kind { Flat, Ohmic, Cubic, Tabulated };

    Kind kind = Kind::Flat;
    double value = 1.0;      // Flat level
    double amplitude = 1.0;  // Ohmic / Cubic prefactor A
    double cutoff = 1.0;     // Ohmic cutoff omega_c
    std::vector<std::pair<double, double>> table;  // Tabulated (omega, value), omega ascending

    static Profile flat(double level);
    static Profile ohmic(double a, double omega_c);          // A w exp(-w/omega_c)
    static Profile cubic(double a);                          // A w^3
    static Profile tabulated(std::vector<std::pair<double, double>> points);

    // Evaluate at omega > 0; tabulated profiles interpolate linearly and clamp
    // to the endpoint values outside the table range.
    double operator()(double omega) const;
};

struct CouplingProfile {
    Profile x = Profile::flat(1.0);
    Profile y = Profile::flat(1.0);
    Profile z = Profile::flat(1.0);
};

enum class Frame { Lab, Interaction };

// Everything the golden rule needs to know about the environment.
struct BathSpec {
    double temperature = 0.0;
    Profile spectral = Profile::flat(1.0);
    CouplingProfile coupling;
    Frame frame = Frame::Lab;
    double nu = 0.0;  // frame shift; required > 0 when frame == Interaction
};

// Classical transition-rate matrix between system eigenstates:
// w(j, i) = rate i -> j, diagonal zero, off-diagonals >= 0.
struct RateMatrix {
    Eigen::MatrixXd w;

    Eigen::Index size() const { return w.rows(); }
    double rate(int from, int to) const { return w(to, from); }
    double total_out_rate(int i) const { return w.col(i).sum(); }
    // Generator of dp/dt = G p (off-diagonals w(j,i), diagonal -column sums).
    Eigen::MatrixXd generator() const;
};

// Bose-Einstein occupation n(omega, T); exactly 0 at T = 0. Requires omega > 0.
double occupation(double omega, double temperature);

// Golden-rule rates between all eigenstate pairs of `d` for `n_qubits` qubits,
// each coupled to its own bath along x, y, z.
//   Lab frame:           channels Z_k, X_k, Y_k, carrier s = 0.
//   Interaction frame:   channel Z_k with s = 0; emission-type channel L_k
//                        (|1><0| on qubit k, strength alpha_x^2 + alpha_y^2)
//                        with s = +nu, and its adjoint with s = -nu.
RateMatrix golden_rule_matrix(const eig::EigenDecomposition& d, const BathSpec& bath,
                              int n_qubits);

// Closed-form total rate out of the xy-pair ground state, lab frame:
// 4pi a_z(2J)^2 rho(2J) n(2J,T) + 4pi (a_x(J)^2 + a_y(J)^2) rho(J) n(J,T).
double two_qubit_lab_rate(double j, double temperature, const CouplingProfile& alpha,
                          const Profile& rho);

// Same, interaction frame with shift nu (requires 0 < J < nu):
// 4pi a_z(2J)^2 rho(2J) n(2J,T) + 2pi (a_x(nu+J)^2 + a_y(nu+J)^2) rho(nu+J) n(nu+J,T)
//   + 2pi (a_x(nu-J)^2 + a_y(nu-J)^2) rho(nu-J) (n(nu-J,T) + 1).
double two_qubit_interaction_rate(double j, double nu, double temperature,
                                  const CouplingProfile& alpha, const Profile& rho);

// Zero-temperature limit of the above:
// 2pi (a_x(nu-J)^2 + a_y(nu-J)^2) rho(nu-J).
double two_qubit_interaction_rate_t0(double j, double nu, const CouplingProfile& alpha,
                                     const Profile& rho);

// Spontaneous-emission rates between eigenstates of the effective Hamiltonian:
//   w(j,i) = gamma * F_ji * [ (1-c) sum_k |m_k|^2 + c |sum_k m_k|^2 ],
//   m_k = <psi_j| L_k |psi_i>,  F_ji = ((nu - w_ji)/nu)^5 if fifth_power else 1.
// c = 1 is the fully coherent (same photon mode) sum, c = 0 independent emission;
// gamma is the measured single-qubit rate (the nu^5 prefactor is absorbed into it).
RateMatrix emission_rate_matrix(const eig::EigenDecomposition& d, double gamma,
                                double cross_coeff, double nu, bool fifth_power);

}  // namespace spinbath::bath
