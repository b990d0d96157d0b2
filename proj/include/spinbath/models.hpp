// models.hpp — The model Hamiltonians and trapped-ion parameter translation.
//
// H_xy      = (J/2)(X1 X2 + Y1 Y2)                      spectrum {-J, 0, 0, +J}
// H_compass = J (X1 X3 + X2 X4 + Y1 Y2 + Y3 Y4)         commutes with X1X2, X3X4
// H_bare    = (nu/2) sum_i Z_i                           physical-qubit reference

#pragma once

#include "spinbath/operator_algebra.hpp"

#include <vector>

namespace spinbath::models {

enum class ModelKind { XyPair, Compass4, BareQubits };

struct ModelSpec {
    ModelKind kind = ModelKind::XyPair;
    double coupling = 0.0;  // J (rad/s) for the coupled models
    double nu = 0.0;        // qubit Bohr frequency (rad/s) for BareQubits
    int n_qubits = 2;       // fixed to 2 / 4 for XyPair / Compass4
};

// Drive and atomic constants of one ion species (all angular frequencies, rad/s).
struct IonParams {
    double eta = 0.0;      // Lamb-Dicke parameter (dimensionless)
    double omega_rabi = 0.0;
    double delta = 0.0;    // sideband detuning
    double omega_s = 0.0;  // trap motional frequency
    double nu = 0.0;       // qubit Bohr frequency
    double gamma = 0.0;    // spontaneous emission rate
};

Matrix build_xy_pair(double j);
Matrix build_compass4(double j);
Matrix build_bare_qubits(double nu, int n_qubits);
Matrix build_model(const ModelSpec& spec);

// The two commuting symmetry operators (X1X2, X3X4) whose eigenvalues label the
// compass model's four four-dimensional sectors.
std::vector<ops::PauliString> compass_symmetry_sectors();

// Effective spin-spin coupling J = 2 eta^2 Omega^2 / delta from a virtually
// excited motional mode. Rejects drives with J >= omega_s (unphysical: the
// coupling is limited by the trap motional frequency).
double ms_coupling(const IonParams& p);

// 40Ca+ optical-qubit constants (nu/2pi = 411 THz, gamma/2pi = 0.16 Hz) with
// documented default drive parameters: eta = 0.1, Omega = 2pi*100 kHz,
// delta = 2pi*10 kHz, omega_s = 2pi*2 MHz.
IonParams ca40_preset();

}  // namespace spinbath::models
