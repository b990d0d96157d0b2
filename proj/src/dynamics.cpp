#include "spinbath/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinbath::dyn {

namespace {

void validate_rates(const bath::RateMatrix& rates) {
    const Eigen::Index n = rates.size();
    if (n < 1 || rates.w.cols() != n) {
        throw std::invalid_argument("dynamics: rate matrix must be square");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double r = rates.w(i, j);
            if (!std::isfinite(r)) {
                throw std::invalid_argument("dynamics: rate matrix contains a non-finite entry");
            }
            if (i != j && r < 0.0) {
                throw std::invalid_argument("dynamics: negative off-diagonal rate");
            }
        }
    }
}

void validate_population(const Eigen::VectorXd& p) {
    if (p.minCoeff() < -1e-12) {
        throw std::invalid_argument("dynamics: population vector has a negative entry");
    }
    if (std::abs(p.sum() - 1.0) > 1e-9) {
        throw std::invalid_argument("dynamics: population vector is not normalized");
    }
}

Eigen::VectorXd clamp_output(const Eigen::VectorXd& p) {
    Eigen::VectorXd out = p;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (out(i) < 0.0) {
            if (out(i) < -1e-12) {
                throw std::runtime_error(
                    "evolve: population went below -1e-12 (integrator failure)");
            }
            out(i) = 0.0;
        }
    }
    if (std::abs(out.sum() - 1.0) > 1e-9) {
        throw std::runtime_error("evolve: probability conservation violated beyond 1e-9");
    }
    return out;
}

}  // namespace

Trajectory evolve(const bath::RateMatrix& rates, const Eigen::VectorXd& p0,
                  const std::vector<double>& times, double step_override) {
    validate_rates(rates);
    if (p0.size() != rates.size()) {
        throw std::invalid_argument("evolve: p0 size does not match rate matrix");
    }
    validate_population(p0);
    if (times.empty()) {
        throw std::invalid_argument("evolve: empty time grid");
    }
    if (times.front() < 0.0) {
        throw std::invalid_argument("evolve: negative time");
    }
    for (size_t k = 1; k < times.size(); ++k) {
        if (times[k] < times[k - 1]) {
            throw std::invalid_argument("evolve: times must be ascending");
        }
    }

    const Eigen::MatrixXd gen = rates.generator();
    const double gamma_max = rates.size() > 0 ? rates.w.colwise().sum().maxCoeff() : 0.0;
    const double span = times.back() - times.front();

    double h = std::numeric_limits<double>::infinity();
    if (gamma_max > 0.0) {
        h = 0.01 / gamma_max;
    }
    if (span > 0.0) {
        h = std::min(h, span / 1000.0);
    }
    if (step_override > 0.0) {
        h = step_override;
    }

    Trajectory traj;
    traj.times = times;
    traj.populations.resize(p0.size(), static_cast<Eigen::Index>(times.size()));

    Eigen::VectorXd p = p0;
    traj.populations.col(0) = clamp_output(p);
    for (size_t k = 1; k < times.size(); ++k) {
        const double dt = times[k] - times[k - 1];
        if (dt > 0.0) {
            const auto steps = std::isfinite(h)
                                   ? static_cast<long>(std::ceil(dt / h))
                                   : 1L;
            const double hh = dt / static_cast<double>(std::max(steps, 1L));
            for (long s = 0; s < std::max(steps, 1L); ++s) {
                const Eigen::VectorXd k1 = gen * p;
                const Eigen::VectorXd k2 = gen * (p + 0.5 * hh * k1);
                const Eigen::VectorXd k3 = gen * (p + 0.5 * hh * k2);
                const Eigen::VectorXd k4 = gen * (p + hh * k3);
                p += (hh / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
        }
        traj.populations.col(static_cast<Eigen::Index>(k)) = clamp_output(p);
    }
    return traj;
}

Eigen::VectorXd steady_state(const bath::RateMatrix& rates) {
    validate_rates(rates);
    const Eigen::Index n = rates.size();
    Eigen::MatrixXd a = rates.generator();
    const double scale = a.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
        if (n == 1) {
            return Eigen::VectorXd::Ones(1);
        }
        throw std::runtime_error(
            "steady_state: multiple stationary distributions (zero generator)");
    }
    const double pivot_tol = 1e-12 * scale * static_cast<double>(n);

    // Reduced row echelon form with partial pivoting; free columns span the
    // null space.
    std::vector<Eigen::Index> pivot_row_of_col(static_cast<size_t>(n), -1);
    std::vector<Eigen::Index> free_cols;
    Eigen::Index next_row = 0;
    for (Eigen::Index col = 0; col < n && next_row < n; ++col) {
        Eigen::Index best = next_row;
        double best_mag = std::abs(a(next_row, col));
        for (Eigen::Index r = next_row + 1; r < n; ++r) {
            const double mag = std::abs(a(r, col));
            if (mag > best_mag) {
                best_mag = mag;
                best = r;
            }
        }
        if (best_mag <= pivot_tol) {
            free_cols.push_back(col);
            continue;
        }
        a.row(next_row).swap(a.row(best));
        a.row(next_row) /= a(next_row, col);
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r != next_row && a(r, col) != 0.0) {
                a.row(r) -= a(r, col) * a.row(next_row);
            }
        }
        pivot_row_of_col[static_cast<size_t>(col)] = next_row;
        ++next_row;
    }
    // Columns never assigned a pivot (including any past the last consumed
    // pivot row) are free.
    for (Eigen::Index col = 0; col < n; ++col) {
        if (pivot_row_of_col[static_cast<size_t>(col)] < 0 &&
            std::find(free_cols.begin(), free_cols.end(), col) == free_cols.end()) {
            free_cols.push_back(col);
        }
    }

    if (free_cols.empty()) {
        throw std::runtime_error(
            "steady_state: no null vector found (generator numerically nonsingular)");
    }
    if (free_cols.size() > 1) {
        throw std::runtime_error("steady_state: multiple stationary distributions detected "
                                 "(null space dimension > 1)");
    }

    const Eigen::Index f = free_cols.front();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    x(f) = 1.0;
    for (Eigen::Index col = 0; col < n; ++col) {
        const Eigen::Index r = pivot_row_of_col[static_cast<size_t>(col)];
        if (r >= 0) {
            x(col) = -a(r, f);
        }
    }

    double sum = x.sum();
    if (sum < 0.0) {
        x = -x;
        sum = -sum;
    }
    if (!(sum > 0.0)) {
        throw std::runtime_error("steady_state: degenerate null vector (zero total mass)");
    }
    x /= sum;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (x(i) < 0.0) {
            if (x(i) < -1e-10) {
                throw std::runtime_error("steady_state: stationary vector has a negative entry");
            }
            x(i) = 0.0;
        }
        x(i) += 0.0;  // -0.0 -> +0.0 so serialized output carries no signed zeros
    }

    const double residual = (rates.generator() * x).cwiseAbs().maxCoeff();
    if (residual > 1e-10 * std::max(1.0, scale)) {
        throw std::runtime_error("steady_state: residual exceeds tolerance");
    }
    return x;
}

double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("total_variation: size mismatch");
    }
    return 0.5 * (p - q).cwiseAbs().sum();
}

ObservableSeries observables(const Trajectory& traj, const eig::EigenDecomposition& d,
                             int logical_index, const std::vector<double>& sector_label,
                             double gamma, double label_tol) {
    if (!d.sector_labels) {
        throw std::invalid_argument("observables: decomposition carries no sector labels");
    }
    if (logical_index < 0 || logical_index >= traj.populations.rows()) {
        throw std::invalid_argument("observables: logical index out of range");
    }
    const auto& labels = *d.sector_labels;
    std::vector<int> members;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].size() != sector_label.size()) {
            throw std::invalid_argument("observables: label arity mismatch");
        }
        bool match = true;
        for (size_t k = 0; k < sector_label.size(); ++k) {
            if (std::abs(labels[i][k] - sector_label[k]) > label_tol) {
                match = false;
                break;
            }
        }
        if (match) {
            members.push_back(static_cast<int>(i));
        }
    }
    if (members.empty()) {
        throw std::invalid_argument("observables: no state carries the requested sector label");
    }

    ObservableSeries series;
    const size_t n_times = traj.times.size();
    series.logical0.reserve(n_times);
    series.sector_pop.reserve(n_times);
    series.reference_exp.reserve(n_times);
    for (size_t k = 0; k < n_times; ++k) {
        const auto col = traj.populations.col(static_cast<Eigen::Index>(k));
        series.logical0.push_back(col(logical_index));
        double sector = 0.0;
        for (int i : members) {
            sector += col(i);
        }
        series.sector_pop.push_back(sector);
        series.reference_exp.push_back(std::exp(-gamma * traj.times[k]));
    }
    return series;
}

}  // namespace spinbath::dyn
