#include "spinbath/bath_rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinbath::bath {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_bath(const BathSpec& bath) {
    if (!(bath.temperature >= 0.0)) {
        throw std::invalid_argument("BathSpec: temperature must be >= 0");
    }
    if (bath.frame == Frame::Interaction && !(bath.nu > 0.0)) {
        throw std::invalid_argument("BathSpec: interaction frame requires nu > 0");
    }
}

void validate_decomposition(const eig::EigenDecomposition& d) {
    const Eigen::Index n = d.dim();
    if (n < 1 || d.eigenvectors.rows() != n || d.eigenvectors.cols() != n) {
        throw std::invalid_argument("bath_rates: malformed eigendecomposition");
    }
}

// Group id per state; pairs within the same group have transition frequency 0.
std::vector<int> group_ids(const eig::EigenDecomposition& d) {
    std::vector<int> ids(static_cast<size_t>(d.dim()), 0);
    for (size_t g = 0; g < d.groups.size(); ++g) {
        for (int i : d.groups[g]) {
            ids[static_cast<size_t>(i)] = static_cast<int>(g);
        }
    }
    return ids;
}

struct Channel {
    Matrix op_eigen;  // operator in the eigenbasis, V^H A V
    double carrier = 0.0;
    // Squared coupling amplitude at the resonance frequency.
    enum class Strength { Ax, Ay, Az, Sigma } strength = Strength::Az;
};

double strength_sq(Channel::Strength s, const CouplingProfile& alpha, double omega) {
    switch (s) {
        case Channel::Strength::Ax: {
            const double a = alpha.x(omega);
            return a * a;
        }
        case Channel::Strength::Ay: {
            const double a = alpha.y(omega);
            return a * a;
        }
        case Channel::Strength::Az: {
            const double a = alpha.z(omega);
            return a * a;
        }
        case Channel::Strength::Sigma: {
            const double ax = alpha.x(omega);
            const double ay = alpha.y(omega);
            return ax * ax + ay * ay;
        }
    }
    return 0.0;
}

}  // namespace

Profile Profile::flat(double level) {
    if (!(level >= 0.0)) {
        throw std::invalid_argument("Profile::flat: level must be >= 0");
    }
    Profile p;
    p.kind = Kind::Flat;
    p.value = level;
    return p;
}

Profile Profile::ohmic(double a, double omega_c) {
    if (!(a >= 0.0) || !(omega_c > 0.0)) {
        throw std::invalid_argument("Profile::ohmic: require A >= 0 and omega_c > 0");
    }
    Profile p;
    p.kind = Kind::Ohmic;
    p.amplitude = a;
    p.cutoff = omega_c;
    return p;
}

Profile Profile::cubic(double a) {
    if (!(a >= 0.0)) {
        throw std::invalid_argument("Profile::cubic: require A >= 0");
    }
    Profile p;
    p.kind = Kind::Cubic;
    p.amplitude = a;
    return p;
}

Profile Profile::tabulated(std::vector<std::pair<double, double>> points) {
    if (points.empty()) {
        throw std::invalid_argument("Profile::tabulated: table must be nonempty");
    }
    for (size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].first > 0.0) || !(points[i].second >= 0.0)) {
            throw std::invalid_argument(
                "Profile::tabulated: require omega > 0 and value >= 0 at every point");
        }
        if (i > 0 && !(points[i].first > points[i - 1].first)) {
            throw std::invalid_argument("Profile::tabulated: omega must be strictly ascending");
        }
    }
    Profile p;
    p.kind = Kind::Tabulated;
    p.table = std::move(points);
    return p;
}

double Profile::operator()(double omega) const {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("Profile: evaluated at omega <= 0");
    }
    switch (kind) {
        case Kind::Flat:
            return value;
        case Kind::Ohmic:
            return amplitude * omega * std::exp(-omega / cutoff);
        case Kind::Cubic:
            return amplitude * omega * omega * omega;
        case Kind::Tabulated: {
            if (omega <= table.front().first) {
                return table.front().second;
            }
            if (omega >= table.back().first) {
                return table.back().second;
            }
            auto hi = std::upper_bound(
                table.begin(), table.end(), omega,
                [](double w, const std::pair<double, double>& p) { return w < p.first; });
            auto lo = hi - 1;
            const double t = (omega - lo->first) / (hi->first - lo->first);
            return lo->second + t * (hi->second - lo->second);
        }
    }
    return 0.0;
}

Eigen::MatrixXd RateMatrix::generator() const {
    Eigen::MatrixXd g = w;
    g.diagonal() -= w.colwise().sum();
    return g;
}

double occupation(double omega, double temperature) {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("occupation: omega must be > 0");
    }
    if (!(temperature >= 0.0)) {
        throw std::invalid_argument("occupation: temperature must be >= 0");
    }
    if (temperature == 0.0) {
        return 0.0;
    }
    return 1.0 / std::expm1(omega / temperature);  // overflow -> 1/inf = 0
}

RateMatrix golden_rule_matrix(const eig::EigenDecomposition& d, const BathSpec& bath,
                              int n_qubits) {
    validate_bath(bath);
    validate_decomposition(d);
    const Eigen::Index n = d.dim();
    if (ops::qubit_count(n) != n_qubits) {
        throw std::invalid_argument("golden_rule_matrix: n_qubits does not match dimension");
    }

    std::vector<Channel> channels;
    const Matrix& v = d.eigenvectors;
    for (int k = 0; k < n_qubits; ++k) {
        const Matrix zk = v.adjoint() * ops::embed(ops::pauli_matrix(ops::Axis::Z), k, n_qubits) * v;
        channels.push_back({zk, 0.0, Channel::Strength::Az});
        if (bath.frame == Frame::Lab) {
            const Matrix xk =
                v.adjoint() * ops::embed(ops::pauli_matrix(ops::Axis::X), k, n_qubits) * v;
            const Matrix yk =
                v.adjoint() * ops::embed(ops::pauli_matrix(ops::Axis::Y), k, n_qubits) * v;
            channels.push_back({xk, 0.0, Channel::Strength::Ax});
            channels.push_back({yk, 0.0, Channel::Strength::Ay});
        } else {
            const Matrix lk = v.adjoint() * ops::lowering(k, n_qubits) * v;
            channels.push_back({lk, bath.nu, Channel::Strength::Sigma});
            channels.push_back({lk.adjoint(), -bath.nu, Channel::Strength::Sigma});
        }
    }

    const auto ids = group_ids(d);
    RateMatrix rates;
    rates.w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            const bool degenerate =
                ids[static_cast<size_t>(i)] == ids[static_cast<size_t>(j)];
            const double w_ji = degenerate ? 0.0 : d.eigenvalues(j) - d.eigenvalues(i);
            double total = 0.0;
            for (const auto& ch : channels) {
                const double me2 = std::norm(ch.op_eigen(j, i));
                if (me2 == 0.0) {
                    continue;
                }
                const double w_emit = ch.carrier - w_ji;
                if (w_emit > 0.0) {
                    total += kTwoPi * strength_sq(ch.strength, bath.coupling, w_emit) *
                             bath.spectral(w_emit) *
                             (occupation(w_emit, bath.temperature) + 1.0) * me2;
                }
                const double w_absorb = w_ji - ch.carrier;
                if (w_absorb > 0.0) {
                    total += kTwoPi * strength_sq(ch.strength, bath.coupling, w_absorb) *
                             bath.spectral(w_absorb) *
                             occupation(w_absorb, bath.temperature) * me2;
                }
            }
            rates.w(j, i) = total;
        }
    }
    return rates;
}

double two_qubit_lab_rate(double j, double temperature, const CouplingProfile& alpha,
                       const Profile& rho) {
    if (!(j > 0.0)) {
        throw std::invalid_argument("two_qubit_lab_rate: J must be > 0");
    }
    if (!(temperature >= 0.0)) {
        throw std::invalid_argument("two_qubit_lab_rate: temperature must be >= 0");
    }
    const double az = alpha.z(2.0 * j);
    const double ax = alpha.x(j);
    const double ay = alpha.y(j);
    return 2.0 * kTwoPi * az * az * rho(2.0 * j) * occupation(2.0 * j, temperature) +
           2.0 * kTwoPi * (ax * ax + ay * ay) * rho(j) * occupation(j, temperature);
}

double two_qubit_interaction_rate(double j, double nu, double temperature, const CouplingProfile& alpha,
                       const Profile& rho) {
    if (!(j > 0.0) || !(j < nu)) {
        throw std::invalid_argument("two_qubit_interaction_rate: require 0 < J < nu");
    }
    if (!(temperature >= 0.0)) {
        throw std::invalid_argument("two_qubit_interaction_rate: temperature must be >= 0");
    }
    const double az = alpha.z(2.0 * j);
    const double axp = alpha.x(nu + j);
    const double ayp = alpha.y(nu + j);
    const double axm = alpha.x(nu - j);
    const double aym = alpha.y(nu - j);
    return 2.0 * kTwoPi * az * az * rho(2.0 * j) * occupation(2.0 * j, temperature) +
           kTwoPi * (axp * axp + ayp * ayp) * rho(nu + j) *
               occupation(nu + j, temperature) +
           kTwoPi * (axm * axm + aym * aym) * rho(nu - j) *
               (occupation(nu - j, temperature) + 1.0);
}

double two_qubit_interaction_rate_t0(double j, double nu, const CouplingProfile& alpha, const Profile& rho) {
    if (!(j > 0.0) || !(j < nu)) {
        throw std::invalid_argument("two_qubit_interaction_rate_t0: require 0 < J < nu");
    }
    const double axm = alpha.x(nu - j);
    const double aym = alpha.y(nu - j);
    return kTwoPi * (axm * axm + aym * aym) * rho(nu - j);
}

RateMatrix emission_rate_matrix(const eig::EigenDecomposition& d, double gamma,
                                double cross_coeff, double nu, bool fifth_power) {
    validate_decomposition(d);
    if (!(gamma >= 0.0)) {
        throw std::invalid_argument("emission_rate_matrix: gamma must be >= 0");
    }
    if (!(cross_coeff >= 0.0) || !(cross_coeff <= 1.0)) {
        throw std::invalid_argument("emission_rate_matrix: cross_coeff must be in [0, 1]");
    }
    if (fifth_power && !(nu > 0.0)) {
        throw std::invalid_argument("emission_rate_matrix: fifth_power requires nu > 0");
    }
    const Eigen::Index n = d.dim();
    const int n_qubits = ops::qubit_count(n);
    const Matrix& v = d.eigenvectors;

    std::vector<Matrix> lowering_eigen;
    lowering_eigen.reserve(static_cast<size_t>(n_qubits));
    for (int k = 0; k < n_qubits; ++k) {
        lowering_eigen.push_back(v.adjoint() * ops::lowering(k, n_qubits) * v);
    }

    const auto ids = group_ids(d);
    RateMatrix rates;
    rates.w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            const bool degenerate =
                ids[static_cast<size_t>(i)] == ids[static_cast<size_t>(j)];
            const double w_ji = degenerate ? 0.0 : d.eigenvalues(j) - d.eigenvalues(i);

            double factor = 1.0;
            if (fifth_power) {
                const double reduced = (nu - w_ji) / nu;
                if (reduced < 0.0) {
                    throw std::invalid_argument(
                        "emission_rate_matrix: (nu - w_ji)^5 negative; nu too small for "
                        "fifth_power");
                }
                factor = std::pow(reduced, 5);
            }

            double incoherent = 0.0;
            Complex coherent{0.0, 0.0};
            for (const auto& lk : lowering_eigen) {
                const Complex m = lk(j, i);
                incoherent += std::norm(m);
                coherent += m;
            }
            rates.w(j, i) = gamma * factor *
                            ((1.0 - cross_coeff) * incoherent +
                             cross_coeff * std::norm(coherent));
        }
    }
    return rates;
}

}  // namespace spinbath::bath
