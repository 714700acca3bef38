#pragma once

#include <initializer_list>
#include <vector>

#include "idde/errors.hpp"

namespace idde {

/// Small dense row-major matrix; sized for the certificate computations
/// (n <= a few dozen), not for large-scale linear algebra.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0);
    /// Row-major nested initializer: Matrix{{a, b}, {c, d}}.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

    Matrix transpose() const;

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(double s, const Matrix& a);

    /// y = A x
    std::vector<double> apply(const std::vector<double>& x) const;

    bool finite() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
/// ascending. Throws ParameterError on non-square input and StructuralError
/// if the sweep limit is hit before off-diagonal annihilation.
std::vector<double> jacobi_eigenvalues(const Matrix& symmetric, int max_sweeps = 64);

double lambda_max_symmetric(const Matrix& symmetric);

/// Spectral norm sqrt(lambda_max(A^T A)).
double spectral_norm(const Matrix& a);

} // namespace idde
