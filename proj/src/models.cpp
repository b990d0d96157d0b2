#include "spinbath/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spinbath::models {

using ops::Axis;
using ops::PauliString;

namespace {

Matrix two_string(int n, int qa, Axis a, int qb, Axis b) {
    return ops::string_matrix(PauliString{n, {{qa, a}, {qb, b}}, Complex{1.0, 0.0}});
}

void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw std::invalid_argument(std::string("models: ") + name + " must be > 0");
    }
}

}  // namespace

Matrix build_xy_pair(double j) {
    require_positive(j, "J");
    return 0.5 * j * (two_string(2, 0, Axis::X, 1, Axis::X) + two_string(2, 0, Axis::Y, 1, Axis::Y));
}

Matrix build_compass4(double j) {
    require_positive(j, "J");
    return j * (two_string(4, 0, Axis::X, 2, Axis::X) + two_string(4, 1, Axis::X, 3, Axis::X) +
                two_string(4, 0, Axis::Y, 1, Axis::Y) + two_string(4, 2, Axis::Y, 3, Axis::Y));
}

Matrix build_bare_qubits(double nu, int n_qubits) {
    require_positive(nu, "nu");
    if (n_qubits < 1 || n_qubits > 6) {
        throw std::invalid_argument("build_bare_qubits: n_qubits must be in [1, 6]");
    }
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Matrix h = Matrix::Zero(dim, dim);
    for (int k = 0; k < n_qubits; ++k) {
        h += ops::embed(ops::pauli_matrix(Axis::Z), k, n_qubits);
    }
    return 0.5 * nu * h;
}

Matrix build_model(const ModelSpec& spec) {
    switch (spec.kind) {
        case ModelKind::XyPair:
            return build_xy_pair(spec.coupling);
        case ModelKind::Compass4:
            return build_compass4(spec.coupling);
        case ModelKind::BareQubits:
            return build_bare_qubits(spec.nu, spec.n_qubits);
    }
    throw std::invalid_argument("build_model: unknown model kind");
}

std::vector<PauliString> compass_symmetry_sectors() {
    return {PauliString{4, {{0, Axis::X}, {1, Axis::X}}, Complex{1.0, 0.0}},
            PauliString{4, {{2, Axis::X}, {3, Axis::X}}, Complex{1.0, 0.0}}};
}

double ms_coupling(const IonParams& p) {
    require_positive(p.eta, "eta");
    require_positive(p.omega_rabi, "Omega");
    require_positive(p.delta, "delta");
    require_positive(p.omega_s, "omega_s");
    require_positive(p.nu, "nu");
    require_positive(p.gamma, "gamma");
    if (!(p.delta < p.omega_s)) {
        throw std::invalid_argument("ms_coupling: delta must be smaller than omega_s");
    }
    const double j = 2.0 * p.eta * p.eta * p.omega_rabi * p.omega_rabi / p.delta;
    if (j >= p.omega_s) {
        throw std::invalid_argument(
            "ms_coupling: drive gives J >= omega_s (coupling is limited by the trap "
            "motional frequency)");
    }
    return j;
}

IonParams ca40_preset() {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    IonParams p;
    p.eta = 0.1;
    p.omega_rabi = two_pi * 1e5;
    p.delta = two_pi * 1e4;
    p.omega_s = two_pi * 2e6;
    p.nu = two_pi * 411e12;
    p.gamma = two_pi * 0.16;
    return p;
}

}  // namespace spinbath::models
