// eigensolver.hpp — Exact diagonalization of Hermitian matrices (dim <= 64) with
// deterministic resolution of degenerate subspaces via symmetry operators.
//
// Determinism contract: bit-identical input produces bit-identical output. The
// solver is cyclic Jacobi (no external solver), eigenvalues ascending, each
// eigenvector phase-fixed so its largest-magnitude component is real positive.

#pragma once

#include "spinbath/operator_algebra.hpp"

#include <optional>
#include <vector>

namespace spinbath::eig {

struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;            // ascending
    Matrix eigenvectors;                    // orthonormal columns, column i <-> eigenvalues[i]
    std::vector<std::vector<int>> groups;   // runs of near-degenerate indices
    // Per-state symmetry eigenvalue tuples, populated by resolve_sectors.
    std::optional<std::vector<std::vector<double>>> sector_labels;

    Eigen::Index dim() const { return eigenvalues.size(); }
};

// Full decomposition of a Hermitian matrix. `group_tol` is the relative degeneracy
// grouping tolerance (scaled by max |eigenvalue|). Throws on non-Hermitian input
// or (never observed in practice) failure to converge within the sweep cap.
EigenDecomposition diagonalize_hermitian(const Matrix& h, double group_tol = 1e-9);

// Rotate each degeneracy group so every eigenvector is also an eigenvector of each
// (mutually commuting, H-commuting) symmetry; populate sector_labels. Within a
// group, states are ordered by label tuple, then by largest-magnitude component
// index, and phase-fixed. Throws if a symmetry fails the commutation checks.
EigenDecomposition resolve_sectors(const EigenDecomposition& d,
                                   const std::vector<Matrix>& symmetries);

// Index of the minimum-eigenvalue state whose label tuple matches `label` to
// `label_tol` componentwise. Requires sector_labels; throws if the label is absent.
int ground_state_of_sector(const EigenDecomposition& d, const std::vector<double>& label,
                           double label_tol = 1e-6);

}  // namespace spinbath::eig
