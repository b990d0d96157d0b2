#include "spinbath/bath_rates.hpp"

#include "spinbath/models.hpp"

#include "doctest.h"
#include "test_helpers.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace spinbath;
using bath::BathSpec;
using bath::CouplingProfile;
using bath::Frame;
using bath::Profile;

namespace {

constexpr double kPi = std::numbers::pi;

BathSpec flat_bath(Frame frame, double temperature, double nu = 0.0) {
    BathSpec spec;
    spec.temperature = temperature;
    spec.spectral = Profile::flat(1.0);
    spec.frame = frame;
    spec.nu = nu;
    return spec;
}

Profile random_profile(std::mt19937& rng) {
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_real_distribution<double> level(0.1, 2.0);
    switch (kind(rng)) {
        case 0:
            return Profile::flat(level(rng));
        case 1:
            return Profile::ohmic(level(rng),
                                  std::uniform_real_distribution<double>(1.0, 100.0)(rng));
        case 2:
            return Profile::cubic(std::uniform_real_distribution<double>(1e-4, 1e-2)(rng));
        default: {
            std::vector<std::pair<double, double>> pts;
            for (double w : {0.05, 1.0, 10.0, 120.0}) {
                pts.emplace_back(w, level(rng));
            }
            return Profile::tabulated(std::move(pts));
        }
    }
}

}  // namespace

TEST_CASE("occupation: Bose factor with exact zero-temperature limit") {
    CHECK(bath::occupation(1.0, 0.0) == 0.0);
    CHECK(bath::occupation(1e9, 0.0) == 0.0);
    CHECK(std::abs(bath::occupation(std::log(2.0), 1.0) - 1.0) <= 1e-14);
    CHECK(std::abs(bath::occupation(1.0, 1.0) - 0.5819767068693262) <= 1e-13);
    CHECK(bath::occupation(1e306, 1.0) == 0.0);  // overflow-safe tail
    CHECK_THROWS_AS(bath::occupation(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bath::occupation(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bath::occupation(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("profiles evaluate their closed forms and reject omega <= 0") {
    CHECK(Profile::flat(2.5)(0.3) == 2.5);
    CHECK(std::abs(Profile::ohmic(2.0, 5.0)(3.0) - 2.0 * 3.0 * std::exp(-0.6)) <= 1e-15);
    CHECK(std::abs(Profile::cubic(0.5)(2.0) - 4.0) <= 1e-15);

    const auto tab = Profile::tabulated({{1.0, 1.0}, {3.0, 5.0}});
    CHECK(std::abs(tab(2.0) - 3.0) <= 1e-15);  // midpoint
    CHECK(tab(0.5) == 1.0);                    // clamped left
    CHECK(tab(10.0) == 5.0);                   // clamped right

    CHECK_THROWS_AS(Profile::flat(1.0)(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Profile::flat(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(Profile::ohmic(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Profile::tabulated({}), std::invalid_argument);
    CHECK_THROWS_AS(Profile::tabulated({{2.0, 1.0}, {1.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("closed forms: printed examples and limits") {
    const CouplingProfile flat_alpha;
    const Profile flat_rho = Profile::flat(1.0);

    // T = 0 kills every lab-frame absorption.
    CHECK(bath::two_qubit_lab_rate(1.0, 0.0, flat_alpha, flat_rho) == 0.0);

    // J = 1, T = 1, flat unit profiles: 4pi (n(2,1) + 2 n(1,1)).
    const double lab_cf = bath::two_qubit_lab_rate(1.0, 1.0, flat_alpha, flat_rho);
    CHECK(std::abs(lab_cf - 16.593528681366614) <= 1e-12 * lab_cf);

    // Linear in the spectral density level.
    const double lab_cf_doubled = bath::two_qubit_lab_rate(1.0, 1.0, flat_alpha, Profile::flat(2.0));
    CHECK(std::abs(lab_cf_doubled - 2.0 * lab_cf) <= 1e-12 * lab_cf);

    // Zero-temperature interaction rate: flat profiles give 4 pi rho0 for any J, nu.
    const double int_cf_t0_a = bath::two_qubit_interaction_rate_t0(1.0, 10.0, flat_alpha, flat_rho);
    const double int_cf_t0_b = bath::two_qubit_interaction_rate_t0(0.01, 500.0, flat_alpha, flat_rho);
    CHECK(std::abs(int_cf_t0_a - 4.0 * kPi) <= 1e-12 * int_cf_t0_a);
    CHECK(std::abs(int_cf_t0_b - 4.0 * kPi) <= 1e-12 * int_cf_t0_b);

    // The thermal interaction form reduces to its T = 0 limit.
    const double int_cf = bath::two_qubit_interaction_rate(1.0, 10.0, 0.0, flat_alpha, flat_rho);
    CHECK(std::abs(int_cf - int_cf_t0_a) <= 1e-15 * int_cf);

    CHECK_THROWS_AS(bath::two_qubit_lab_rate(0.0, 1.0, flat_alpha, flat_rho),
                    std::invalid_argument);
    CHECK_THROWS_AS(bath::two_qubit_interaction_rate(2.0, 1.0, 1.0, flat_alpha, flat_rho),
                    std::invalid_argument);
    CHECK_THROWS_AS(bath::two_qubit_interaction_rate_t0(2.0, 2.0, flat_alpha, flat_rho),
                    std::invalid_argument);
}

TEST_CASE("engine reproduces the closed forms over random parameters") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> j_dist(0.1, 2.0);
    std::uniform_real_distribution<double> nu_dist(5.0, 50.0);
    std::uniform_real_distribution<double> t_dist(0.2, 5.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double j = j_dist(rng);
        const double nu = nu_dist(rng);
        const double temperature = (trial % 5 == 0) ? 0.0 : t_dist(rng);

        BathSpec spec;
        spec.temperature = temperature;
        spec.spectral = random_profile(rng);
        spec.coupling = CouplingProfile{random_profile(rng), random_profile(rng),
                                        random_profile(rng)};

        const auto d = eig::diagonalize_hermitian(models::build_xy_pair(j));

        spec.frame = Frame::Lab;
        const double lab_rate = bath::golden_rule_matrix(d, spec, 2).total_out_rate(0);
        const double lab_cf = bath::two_qubit_lab_rate(j, temperature, spec.coupling, spec.spectral);
        CHECK(std::abs(lab_rate - lab_cf) <= 1e-9 * std::max(lab_cf, 1e-300));

        spec.frame = Frame::Interaction;
        spec.nu = nu;
        const double int_rate = bath::golden_rule_matrix(d, spec, 2).total_out_rate(0);
        const double int_cf =
            bath::two_qubit_interaction_rate(j, nu, temperature, spec.coupling, spec.spectral);
        CHECK(std::abs(int_rate - int_cf) <= 1e-9 * int_cf);
        if (temperature == 0.0) {
            const double int_cf_t0 = bath::two_qubit_interaction_rate_t0(j, nu, spec.coupling, spec.spectral);
            CHECK(std::abs(int_rate - int_cf_t0) <= 1e-9 * int_cf_t0);
        }
    }
}

TEST_CASE("zero temperature: lab frame protects the ground state, interaction frame does not") {
    const auto d = eig::diagonalize_hermitian(models::build_xy_pair(1.0));

    const auto lab = bath::golden_rule_matrix(d, flat_bath(Frame::Lab, 0.0), 2);
    CHECK(lab.total_out_rate(0) == 0.0);
    // All upward (absorption) rates vanish identically at T = 0.
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (d.eigenvalues(j) > d.eigenvalues(i)) {
                CHECK(lab.w(j, i) == 0.0);
            }
        }
    }

    const auto inter = bath::golden_rule_matrix(d, flat_bath(Frame::Interaction, 0.0, 20.0), 2);
    const double out = inter.total_out_rate(0);
    CHECK(out > 0.0);
    const double int_cf_t0 = bath::two_qubit_interaction_rate_t0(1.0, 20.0, CouplingProfile{}, Profile::flat(1.0));
    CHECK(std::abs(out - int_cf_t0) <= 1e-12 * int_cf_t0);
}

TEST_CASE("lab-frame rates obey detailed balance at T > 0") {
    std::mt19937 rng(67);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index dim = (trial % 2 == 0) ? 4 : 8;
        const int n_qubits = (dim == 4) ? 2 : 3;
        const Matrix h = spinbath::testing::random_hermitian(dim, rng);
        const auto d = eig::diagonalize_hermitian(h);

        BathSpec spec;
        spec.temperature = std::uniform_real_distribution<double>(0.5, 3.0)(rng);
        spec.spectral = random_profile(rng);
        spec.coupling =
            CouplingProfile{random_profile(rng), random_profile(rng), random_profile(rng)};
        spec.frame = Frame::Lab;

        const auto rates = bath::golden_rule_matrix(d, spec, n_qubits);
        for (Eigen::Index i = 0; i < dim; ++i) {
            for (Eigen::Index j = 0; j < dim; ++j) {
                const double up = rates.w(j, i);
                const double down = rates.w(i, j);
                const double w_ji = d.eigenvalues(j) - d.eigenvalues(i);
                if (w_ji <= 0.0 || up == 0.0 || down == 0.0) {
                    continue;
                }
                const double expected = std::exp(-w_ji / spec.temperature);
                CHECK(std::abs(up / down - expected) <= 1e-9 * expected);
            }
        }
    }
}

TEST_CASE("rates are nonnegative and finite for random models and baths") {
    std::mt19937 rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix h = spinbath::testing::random_hermitian(4, rng);
        const auto d = eig::diagonalize_hermitian(h);
        BathSpec spec;
        spec.temperature = (trial % 3 == 0) ? 0.0 : 1.3;
        spec.spectral = random_profile(rng);
        spec.coupling =
            CouplingProfile{random_profile(rng), random_profile(rng), random_profile(rng)};
        spec.frame = (trial % 2 == 0) ? Frame::Lab : Frame::Interaction;
        spec.nu = 25.0;
        const auto rates = bath::golden_rule_matrix(d, spec, 2);
        for (Eigen::Index i = 0; i < 4; ++i) {
            CHECK(rates.w(i, i) == 0.0);
            for (Eigen::Index j = 0; j < 4; ++j) {
                CHECK(std::isfinite(rates.w(j, i)));
                CHECK(rates.w(j, i) >= 0.0);
            }
        }
    }
}

TEST_CASE("summed rate into a degenerate group is basis invariant") {
    std::mt19937 rng(73);
    const auto d = eig::diagonalize_hermitian(models::build_xy_pair(1.0));
    REQUIRE(d.groups.size() == 3);
    const auto& group = d.groups[1];  // E = 0 pair

    const BathSpec spec = flat_bath(Frame::Interaction, 0.8, 20.0);
    const auto base = bath::golden_rule_matrix(d, spec, 2);
    double base_in_from_ground = 0.0;
    for (int j : group) {
        base_in_from_ground += base.w(j, 0);
    }

    for (int trial = 0; trial < 5; ++trial) {
        auto remixed = d;
        const Matrix u = spinbath::testing::random_unitary(2, rng);
        Matrix cols(4, 2);
        cols.col(0) = d.eigenvectors.col(group[0]);
        cols.col(1) = d.eigenvectors.col(group[1]);
        cols = cols * u;
        remixed.eigenvectors.col(group[0]) = cols.col(0);
        remixed.eigenvectors.col(group[1]) = cols.col(1);

        const auto rates = bath::golden_rule_matrix(remixed, spec, 2);
        double in_from_ground = 0.0;
        for (int j : group) {
            in_from_ground += rates.w(j, 0);
        }
        CHECK(std::abs(in_from_ground - base_in_from_ground) <= 1e-9 * base_in_from_ground);
    }
}

TEST_CASE("bare qubit in the interaction frame decays at gamma = 2pi (ax^2 + ay^2) rho(nu)") {
    const auto d = eig::diagonalize_hermitian(Matrix::Zero(2, 2));
    const auto rates = bath::golden_rule_matrix(d, flat_bath(Frame::Interaction, 0.0, 30.0), 1);
    // |0> (index 0) decays to |1>; nothing comes back at T = 0.
    CHECK(std::abs(rates.w(1, 0) - 4.0 * kPi) <= 1e-12 * 4.0 * kPi);
    CHECK(rates.w(0, 1) == 0.0);
}

TEST_CASE("Gamma approaches gamma when J is small compared to nu") {
    const double nu = 1.0;
    const double j = 1e-8 * nu;

    const auto d_pair = eig::diagonalize_hermitian(models::build_xy_pair(j));
    const double big_gamma =
        bath::golden_rule_matrix(d_pair, flat_bath(Frame::Interaction, 0.0, nu), 2)
            .total_out_rate(0);

    const auto d_single = eig::diagonalize_hermitian(Matrix::Zero(2, 2));
    const double gamma =
        bath::golden_rule_matrix(d_single, flat_bath(Frame::Interaction, 0.0, nu), 1)
            .total_out_rate(0);

    CHECK(gamma > 0.0);
    CHECK(std::abs(big_gamma / gamma - 1.0) <= 1e-9);
}

TEST_CASE("emission rates: Dicke subradiance of the two-ion singlet") {
    const auto d = eig::diagonalize_hermitian(models::build_xy_pair(1.0));

    // Fully coherent sum: destructive interference keeps the singlet dark.
    const auto coherent = bath::emission_rate_matrix(d, 1.0, 1.0, 0.0, false);
    CHECK(coherent.total_out_rate(0) <= 1e-12);

    // Independent emission: the singlet decays at gamma.
    const auto independent = bath::emission_rate_matrix(d, 1.0, 0.0, 0.0, false);
    CHECK(std::abs(independent.total_out_rate(0) - 1.0) <= 1e-12);

    // Weak cross coupling: gamma_sub = 0.99 gamma.
    const auto weak = bath::emission_rate_matrix(d, 1.0, 0.01, 0.0, false);
    CHECK(std::abs(weak.total_out_rate(0) - 0.99) <= 1e-9 * 0.99);

    // |11> is an eigenstate and never emits, for any cross coefficient.
    for (double c : {0.0, 0.3, 1.0}) {
        const auto rates = bath::emission_rate_matrix(d, 1.0, c, 0.0, false);
        CHECK(rates.total_out_rate(2) == 0.0);  // eigenvalue order: singlet, |00>, |11>, triplet
    }
}

TEST_CASE("emission rates: the all-ground product state of bare qubits never emits") {
    const auto d = eig::diagonalize_hermitian(models::build_bare_qubits(1.0, 4));
    const auto rates = bath::emission_rate_matrix(d, 1.0, 0.0, 0.0, false);
    CHECK(rates.total_out_rate(0) == 0.0);  // ground state = |1111>
}

TEST_CASE("emission rates: single qubit is insensitive to the cross coefficient") {
    const auto d = eig::diagonalize_hermitian(models::build_bare_qubits(1.0, 1));
    const auto c0 = bath::emission_rate_matrix(d, 2.0, 0.0, 0.0, false);
    const auto c1 = bath::emission_rate_matrix(d, 2.0, 1.0, 0.0, false);
    CHECK((c0.w - c1.w).norm() == 0.0);
}

TEST_CASE("fifth-power factor is a small relative correction when nu >> J") {
    std::vector<Matrix> symmetries;
    for (const auto& s : models::compass_symmetry_sectors()) {
        symmetries.push_back(ops::string_matrix(s));
    }
    const auto d = eig::resolve_sectors(
        eig::diagonalize_hermitian(models::build_compass4(1.0)), symmetries);
    const double nu = 1e8;
    const auto flat = bath::emission_rate_matrix(d, 1.0, 0.0, nu, false);
    const auto fifth = bath::emission_rate_matrix(d, 1.0, 0.0, nu, true);
    for (Eigen::Index i = 0; i < 16; ++i) {
        for (Eigen::Index j = 0; j < 16; ++j) {
            if (flat.w(j, i) <= 0.0) {
                continue;
            }
            const double rel = std::abs(fifth.w(j, i) / flat.w(j, i) - 1.0);
            const double w_ji = std::abs(d.eigenvalues(j) - d.eigenvalues(i));
            CHECK(rel <= 5.001 * w_ji / nu + 1e-14);
        }
    }
}

TEST_CASE("rate engine rejects invalid inputs") {
    const auto d = eig::diagonalize_hermitian(models::build_xy_pair(1.0));

    BathSpec bad_t = flat_bath(Frame::Lab, -1.0);
    CHECK_THROWS_AS(bath::golden_rule_matrix(d, bad_t, 2), std::invalid_argument);

    BathSpec no_nu = flat_bath(Frame::Interaction, 0.0, 0.0);
    CHECK_THROWS_AS(bath::golden_rule_matrix(d, no_nu, 2), std::invalid_argument);

    CHECK_THROWS_AS(bath::golden_rule_matrix(d, flat_bath(Frame::Lab, 0.0), 3),
                    std::invalid_argument);

    CHECK_THROWS_AS(bath::emission_rate_matrix(d, 1.0, -0.1, 0.0, false), std::invalid_argument);
    CHECK_THROWS_AS(bath::emission_rate_matrix(d, 1.0, 1.1, 0.0, false), std::invalid_argument);
    CHECK_THROWS_AS(bath::emission_rate_matrix(d, -1.0, 0.0, 0.0, false), std::invalid_argument);
    // nu below the spectral span makes (nu - w_ji)^5 negative.
    CHECK_THROWS_AS(bath::emission_rate_matrix(d, 1.0, 0.0, 1.0, true), std::invalid_argument);
    CHECK_THROWS_AS(bath::emission_rate_matrix(d, 1.0, 0.0, 0.0, true), std::invalid_argument);
}
