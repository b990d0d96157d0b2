#include "spinbath/operator_algebra.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinbath::ops {

namespace {

constexpr int kMaxQubits = 6;

void check_qubit_index(int qubit, int n_qubits, const char* where) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument(std::string(where) + ": n_qubits must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(n_qubits));
    }
    if (qubit < 0 || qubit >= n_qubits) {
        throw std::invalid_argument(std::string(where) + ": qubit index " +
                                    std::to_string(qubit) + " out of range for " +
                                    std::to_string(n_qubits) + " qubits");
    }
}

Matrix embed_site(const Matrix& op, int qubit, int n_qubits) {
    Matrix m = Matrix::Identity(1, 1);
    for (int k = 0; k < n_qubits; ++k) {
        const Matrix& factor = (k == qubit) ? op : Matrix(Matrix::Identity(2, 2));
        m = Eigen::kroneckerProduct(m, factor).eval();
    }
    return m;
}

}  // namespace

Matrix pauli_matrix(Axis axis) {
    Matrix m(2, 2);
    switch (axis) {
        case Axis::X:
            m << 0, 1, 1, 0;
            break;
        case Axis::Y:
            m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
            break;
        case Axis::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

Matrix embed(const Matrix& op, int qubit, int n_qubits) {
    check_qubit_index(qubit, n_qubits, "embed");
    if (op.rows() != 2 || op.cols() != 2) {
        throw std::invalid_argument("embed: operator must be 2x2");
    }
    return embed_site(op, qubit, n_qubits);
}

Matrix string_matrix(const PauliString& s) {
    if (s.n_qubits < 1 || s.n_qubits > kMaxQubits) {
        throw std::invalid_argument("string_matrix: n_qubits must be in [1, 6]");
    }
    for (const auto& [qubit, axis] : s.factors) {
        check_qubit_index(qubit, s.n_qubits, "string_matrix");
        (void)axis;
    }
    Matrix m = Matrix::Identity(1, 1);
    for (int k = 0; k < s.n_qubits; ++k) {
        auto it = s.factors.find(k);
        const Matrix factor =
            (it == s.factors.end()) ? Matrix(Matrix::Identity(2, 2)) : pauli_matrix(it->second);
        m = Eigen::kroneckerProduct(m, factor).eval();
    }
    return s.coefficient * m;
}

Matrix lowering(int qubit, int n_qubits) {
    check_qubit_index(qubit, n_qubits, "lowering");
    Matrix l = Matrix::Zero(2, 2);
    l(1, 0) = 1.0;  // |1><0|
    return embed_site(l, qubit, n_qubits);
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument("commutator: dimension mismatch");
    }
    return a * b - b * a;
}

Complex matrix_element(const Vector& bra, const Matrix& op, const Vector& ket) {
    if (op.rows() != op.cols() || bra.size() != op.rows() || ket.size() != op.cols()) {
        throw std::invalid_argument("matrix_element: dimension mismatch");
    }
    return bra.dot(op * ket);  // Eigen dot conjugates the first argument
}

bool is_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) {
        return false;
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

int qubit_count(Eigen::Index dim) {
    for (int n = 1; n <= kMaxQubits; ++n) {
        if (dim == (Eigen::Index{1} << n)) {
            return n;
        }
    }
    throw std::invalid_argument("qubit_count: dimension " + std::to_string(dim) +
                                " is not a power of two in [2, 64]");
}

}  // namespace spinbath::ops
