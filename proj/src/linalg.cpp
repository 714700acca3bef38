#include "idde/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace idde {

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {
    if (rows <= 0 || cols <= 0) throw ParameterError("Matrix: dimensions must be positive");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    if (rows_ == 0 || cols_ == 0) throw ParameterError("Matrix: empty initializer");
    data_.reserve(static_cast<std::size_t>(rows_ * cols_));
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_)
            throw StructuralError("Matrix: ragged initializer rows");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw StructuralError("Matrix: shape mismatch in +");
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw StructuralError("Matrix: shape mismatch in -");
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
    return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw StructuralError("Matrix: shape mismatch in *");
    Matrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const double aik = a(i, k);
            for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = s * a.data_[i];
    return r;
}

std::vector<double> Matrix::apply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != cols_)
        throw StructuralError("Matrix::apply: dimension mismatch");
    std::vector<double> y(static_cast<std::size_t>(rows_), 0.0);
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

bool Matrix::finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double v) { return std::isfinite(v); });
}

std::vector<double> jacobi_eigenvalues(const Matrix& symmetric, int max_sweeps) {
    if (symmetric.rows() != symmetric.cols())
        throw ParameterError("jacobi_eigenvalues: matrix must be square");
    if (!symmetric.finite())
        throw ParameterError("jacobi_eigenvalues: matrix has non-finite entries");
    const int n = symmetric.rows();
    Matrix a = symmetric;

    auto off_diag = [&]() {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += std::abs(a(p, q));
        return s;
    };

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diag() == 0.0) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                // skip rotations already at the round-off floor
                if (std::abs(apq) <= 1e-300 ||
                    std::abs(apq) < 1e-17 * (std::abs(app) + std::abs(aqq)))
                {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double theta = 0.5 * (aqq - app) / apq;
                double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = arp - s * (arq + tau * arp);
                    a(p, r) = a(r, p);
                    a(r, q) = arq + s * (arp - tau * arq);
                    a(q, r) = a(r, q);
                }
            }
        }
        if (sweep + 1 == max_sweeps && off_diag() > 1e-10)
            throw StructuralError("jacobi_eigenvalues: no convergence within the sweep limit");
    }

    std::vector<double> ev(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

double lambda_max_symmetric(const Matrix& symmetric) {
    return jacobi_eigenvalues(symmetric).back();
}

double spectral_norm(const Matrix& a) {
    const Matrix ata = a.transpose() * a;
    double lm = lambda_max_symmetric(ata);
    return std::sqrt(std::max(0.0, lm));
}

} // namespace idde
