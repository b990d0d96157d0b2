#include "spinbath/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spinbath::eig {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalScale = 1e-14;  // threshold = 1e-14 * ||H||_F

int largest_component_index(const Vector& v) {
    int best = 0;
    double best_mag = std::abs(v(0));
    for (int i = 1; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    return best;
}

// Multiply the column by a unit phase so its largest-magnitude component is
// real positive.
void fix_phase(Eigen::Ref<Vector> v) {
    const int k = largest_component_index(v);
    const double mag = std::abs(v(k));
    if (mag == 0.0) {
        return;
    }
    const Complex phase = v(k) / mag;
    v *= std::conj(phase);
}

// Cyclic Jacobi for Hermitian `a`; on return `a` is (near-)diagonal with real
// diagonal and `v` holds the accumulated unitary (columns = eigenvectors of the
// input). Deterministic: fixed sweep order, no pivot searching.
void jacobi_hermitian(Matrix& a, Matrix& v) {
    const Eigen::Index n = a.rows();
    v = Matrix::Identity(n, n);
    if (n < 2) {
        return;
    }
    const double threshold = kOffDiagonalScale * a.norm();

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double max_off = 0.0;
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                max_off = std::max(max_off, std::abs(a(p, q)));
            }
        }
        if (max_off <= threshold) {
            for (Eigen::Index i = 0; i < n; ++i) {
                a(i, i) = Complex(a(i, i).real(), 0.0);
            }
            return;
        }

        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex b = a(p, q);
                const double babs = std::abs(b);
                if (babs <= threshold) {
                    continue;
                }
                // Factor the phase so the rotation angle comes from the real
                // symmetric 2x2 block [[a_pp, |b|], [|b|, a_qq]].
                const Complex f = std::conj(b) / babs;  // e^{-i phi}
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * babs);
                const double t =
                    (tau == 0.0) ? 1.0
                                 : std::copysign(1.0, tau) /
                                       (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // A <- U^H A U with U e_p = c e_p - s f e_q, U e_q = s e_p + c f e_q.
                for (Eigen::Index r = 0; r < n; ++r) {
                    const Complex arp = a(r, p);
                    const Complex arq = a(r, q);
                    a(r, p) = c * arp - s * (f * arq);
                    a(r, q) = s * arp + c * (f * arq);
                }
                const Complex fc = std::conj(f);  // e^{+i phi}
                for (Eigen::Index col = 0; col < n; ++col) {
                    const Complex apc = a(p, col);
                    const Complex aqc = a(q, col);
                    a(p, col) = c * apc - s * (fc * aqc);
                    a(q, col) = s * apc + c * (fc * aqc);
                }
                a(p, q) = Complex(0.0, 0.0);
                a(q, p) = Complex(0.0, 0.0);
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);

                for (Eigen::Index r = 0; r < n; ++r) {
                    const Complex vrp = v(r, p);
                    const Complex vrq = v(r, q);
                    v(r, p) = c * vrp - s * (f * vrq);
                    v(r, q) = s * vrp + c * (f * vrq);
                }
            }
        }
    }
    throw std::runtime_error("jacobi_hermitian: failed to converge within 100 sweeps");
}

std::vector<std::vector<int>> group_indices(const Eigen::VectorXd& values, double tol) {
    std::vector<std::vector<int>> groups;
    std::vector<int> current{0};
    for (int i = 1; i < values.size(); ++i) {
        if (values(i) - values(i - 1) > tol) {
            groups.push_back(std::move(current));
            current.clear();
        }
        current.push_back(i);
    }
    groups.push_back(std::move(current));
    return groups;
}

double frob(const Matrix& m) { return m.norm(); }

}  // namespace

EigenDecomposition diagonalize_hermitian(const Matrix& h, double group_tol) {
    if (h.rows() != h.cols() || h.rows() < 1) {
        throw std::invalid_argument("diagonalize_hermitian: matrix must be square");
    }
    const double scale = frob(h);
    if (!ops::is_hermitian(h, 1e-10 * scale)) {
        throw std::invalid_argument("diagonalize_hermitian: input is not Hermitian");
    }
    const Eigen::Index n = h.rows();

    Matrix a = (h + h.adjoint()) / 2.0;  // symmetrize roundoff before rotating
    Matrix v;
    jacobi_hermitian(a, v);

    // Ascending eigenvalue order; stable so bit-equal values keep diagonal order.
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition d;
    d.eigenvalues.resize(n);
    d.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d.eigenvalues(i) = a(order[static_cast<size_t>(i)], order[static_cast<size_t>(i)]).real();
        d.eigenvectors.col(i) = v.col(order[static_cast<size_t>(i)]);
        fix_phase(d.eigenvectors.col(i));
    }

    const double lambda_scale =
        std::max(std::abs(d.eigenvalues(0)), std::abs(d.eigenvalues(n - 1)));
    d.groups = group_indices(d.eigenvalues, group_tol * lambda_scale);

    // Post-conditions; a violation signals a solver bug, not a user error.
    const double residual =
        (h * d.eigenvectors - d.eigenvectors * d.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>())
            .colwise()
            .norm()
            .maxCoeff();
    if (residual > 1e-10 * scale) {
        throw std::runtime_error("diagonalize_hermitian: residual exceeds 1e-10*||H||");
    }
    const double ortho = (d.eigenvectors.adjoint() * d.eigenvectors - Matrix::Identity(n, n))
                             .cwiseAbs()
                             .maxCoeff();
    if (ortho > 1e-10) {
        throw std::runtime_error("diagonalize_hermitian: eigenvectors lost orthonormality");
    }
    return d;
}

EigenDecomposition resolve_sectors(const EigenDecomposition& d,
                                   const std::vector<Matrix>& symmetries) {
    const Eigen::Index n = d.dim();
    if (d.eigenvectors.rows() != n || d.eigenvectors.cols() != n) {
        throw std::invalid_argument("resolve_sectors: malformed decomposition");
    }

    const Matrix h_rec = d.eigenvectors *
                         d.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                         d.eigenvectors.adjoint();
    const double h_scale = frob(h_rec);
    const double sqrt_dim = std::sqrt(static_cast<double>(n));
    for (size_t k = 0; k < symmetries.size(); ++k) {
        const Matrix& s = symmetries[k];
        if (s.rows() != n || s.cols() != n) {
            throw std::invalid_argument("resolve_sectors: symmetry dimension mismatch");
        }
        if (!ops::is_hermitian(s, 1e-9 * frob(s))) {
            throw std::invalid_argument("resolve_sectors: symmetry is not Hermitian");
        }
        if (frob(ops::commutator(h_rec, s)) > 1e-9 * h_scale * frob(s) / sqrt_dim) {
            throw std::invalid_argument(
                "resolve_sectors: symmetry does not commute with the Hamiltonian");
        }
        for (size_t l = 0; l < k; ++l) {
            if (frob(ops::commutator(symmetries[l], s)) >
                1e-9 * frob(symmetries[l]) * frob(s) / sqrt_dim) {
                throw std::invalid_argument("resolve_sectors: symmetries do not commute");
            }
        }
    }

    EigenDecomposition out = d;
    out.sector_labels = std::vector<std::vector<double>>(
        static_cast<size_t>(n), std::vector<double>(symmetries.size(), 0.0));
    if (symmetries.empty()) {
        return out;
    }

    for (const auto& group : d.groups) {
        const int g = static_cast<int>(group.size());
        Matrix basis(n, g);
        for (int i = 0; i < g; ++i) {
            basis.col(i) = d.eigenvectors.col(group[static_cast<size_t>(i)]);
        }
        std::vector<std::vector<double>> labels(static_cast<size_t>(g),
                                                std::vector<double>(symmetries.size(), 0.0));

        // Refine the group by each symmetry in turn; parts hold local column runs
        // that share all labels assigned so far.
        std::vector<std::vector<int>> parts{std::vector<int>(static_cast<size_t>(g))};
        std::iota(parts[0].begin(), parts[0].end(), 0);

        for (size_t si = 0; si < symmetries.size(); ++si) {
            std::vector<std::vector<int>> next_parts;
            for (const auto& part : parts) {
                const int p = static_cast<int>(part.size());
                Matrix sub(n, p);
                for (int i = 0; i < p; ++i) {
                    sub.col(i) = basis.col(part[static_cast<size_t>(i)]);
                }
                Matrix m = sub.adjoint() * symmetries[si] * sub;
                m = (m + m.adjoint()) / 2.0;
                Matrix u;
                jacobi_hermitian(m, u);

                Eigen::VectorXd w(p);
                for (int i = 0; i < p; ++i) {
                    w(i) = m(i, i).real();
                }
                std::vector<int> order(static_cast<size_t>(p));
                std::iota(order.begin(), order.end(), 0);
                std::stable_sort(order.begin(), order.end(),
                                 [&](int i, int j) { return w(i) < w(j); });

                Matrix rotated = sub * u;
                Eigen::VectorXd w_sorted(p);
                for (int i = 0; i < p; ++i) {
                    basis.col(part[static_cast<size_t>(i)]) =
                        rotated.col(order[static_cast<size_t>(i)]);
                    w_sorted(i) = w(order[static_cast<size_t>(i)]);
                }

                const double w_tol = 1e-8 * std::max(1.0, w_sorted.cwiseAbs().maxCoeff());
                auto runs = group_indices(w_sorted, w_tol);
                for (const auto& run : runs) {
                    std::vector<int> global_run;
                    const double snapped = w_sorted(run.front());
                    for (int idx : run) {
                        labels[static_cast<size_t>(part[static_cast<size_t>(idx)])][si] = snapped;
                        global_run.push_back(part[static_cast<size_t>(idx)]);
                    }
                    next_parts.push_back(std::move(global_run));
                }
            }
            parts = std::move(next_parts);
        }

        // Deterministic order within the group: label tuple, then index of the
        // largest-magnitude component; phases fixed afterwards.
        std::vector<int> local(static_cast<size_t>(g));
        std::iota(local.begin(), local.end(), 0);
        std::vector<int> largest(static_cast<size_t>(g));
        for (int i = 0; i < g; ++i) {
            largest[static_cast<size_t>(i)] = largest_component_index(basis.col(i));
        }
        std::stable_sort(local.begin(), local.end(), [&](int i, int j) {
            const auto& li = labels[static_cast<size_t>(i)];
            const auto& lj = labels[static_cast<size_t>(j)];
            if (li != lj) {
                return li < lj;
            }
            return largest[static_cast<size_t>(i)] < largest[static_cast<size_t>(j)];
        });

        for (int i = 0; i < g; ++i) {
            const int src = local[static_cast<size_t>(i)];
            const int dst = group[static_cast<size_t>(i)];
            out.eigenvectors.col(dst) = basis.col(src);
            fix_phase(out.eigenvectors.col(dst));
            (*out.sector_labels)[static_cast<size_t>(dst)] = labels[static_cast<size_t>(src)];
        }
    }
    return out;
}

int ground_state_of_sector(const EigenDecomposition& d, const std::vector<double>& label,
                           double label_tol) {
    if (!d.sector_labels) {
        throw std::invalid_argument("ground_state_of_sector: sector labels not populated");
    }
    const auto& labels = *d.sector_labels;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].size() != label.size()) {
            throw std::invalid_argument("ground_state_of_sector: label arity mismatch");
        }
        bool match = true;
        for (size_t k = 0; k < label.size(); ++k) {
            if (std::abs(labels[i][k] - label[k]) > label_tol) {
                match = false;
                break;
            }
        }
        if (match) {
            return static_cast<int>(i);  // eigenvalues ascend, so first match is minimal
        }
    }
    throw std::invalid_argument("ground_state_of_sector: no state carries the requested label");
}

}  // namespace spinbath::eig
