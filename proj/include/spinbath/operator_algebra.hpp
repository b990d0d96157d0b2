// operator_algebra.hpp — Dense complex operators on n-qubit Hilbert spaces (n <= 6):
// Pauli strings, tensor embeddings, products, adjoints, matrix elements.
//
// Conventions (used everywhere in this project):
//   - qubit 0 is the leftmost tensor factor and the most significant bit of the
//     computational-basis index; Z|0> = +|0>.
//   - natural units hbar = k_b = 1; all frequencies are angular.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>

namespace spinbath {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace ops {

enum class Axis { X, Y, Z };

// A product of single-qubit Paulis times a scalar; unlisted qubits carry identity.
struct PauliString {
    int n_qubits = 1;
    std::map<int, Axis> factors;  // qubit index -> axis
    Complex coefficient{1.0, 0.0};
};

// Standard 2x2 Pauli matrix in the (|0>, |1>) basis.
Matrix pauli_matrix(Axis axis);

// I (x) ... (x) op (x) ... (x) I with `op` (2x2) at position `qubit`.
Matrix embed(const Matrix& op, int qubit, int n_qubits);

// coefficient * ordered tensor product of the string's factors.
Matrix string_matrix(const PauliString& s);

// Embedding of |1><0| on `qubit`: takes the excited qubit state |0> to the
// ground state |1> (the physical de-excitation operator).
Matrix lowering(int qubit, int n_qubits);

// AB - BA.
Matrix commutator(const Matrix& a, const Matrix& b);

// <bra|op|ket>, conjugation on the bra.
Complex matrix_element(const Vector& bra, const Matrix& op, const Vector& ket);

// max_ij |A_ij - conj(A_ji)| <= tol. Tolerance is absolute; callers scale by ||A||.
bool is_hermitian(const Matrix& a, double tol);

// Number of qubits for a Hilbert-space dimension; rejects dims that are not a
// power of two in [2, 64].
int qubit_count(Eigen::Index dim);

}  // namespace ops
}  // namespace spinbath
