#pragma once

// Exact linear algebra over the scalar field: dense matrices for
// representation images, and rank / nullspace of sparse column systems.
// Sparse systems are split into connected components of their sparsity
// pattern first, which keeps the dense eliminations small.

#include <cstddef>
#include <map>
#include <vector>

#include "qcl/scalar.hpp"

namespace qcl {

using SparseVector = std::map<std::size_t, Scalar>;

class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(const Scalar& c);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& c) { return a *= c; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

   private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

/// Rank of the span of the given column vectors.
std::size_t rank(const std::vector<SparseVector>& columns);
std::size_t rank(const Matrix& m);

/// A basis of {x : sum_c x_c * columns[c] = 0}; each vector is indexed by column.
std::vector<SparseVector> nullspace(const std::vector<SparseVector>& columns);

}  // namespace qcl
