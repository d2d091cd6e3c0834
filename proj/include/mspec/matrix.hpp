#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace mspec {

// Dense square matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int n, double fill = 0.0)
        : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {}

    int dim() const { return n_; }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * n_ + j];
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    double trace() const {
        double t = 0.0;
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    bool is_symmetric(double tol) const {
        for (int i = 0; i < n_; ++i) {
            for (int j = i + 1; j < n_; ++j) {
                if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
            }
        }
        return true;
    }

private:
    int n_ = 0;
    std::vector<double> data_;
};

// C = A * B, cache-friendly i-k-j ordering.
Matrix matmul(const Matrix& a, const Matrix& b);

}  // namespace mspec
