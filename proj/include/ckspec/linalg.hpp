#pragma once

#include "ckspec/scalar.hpp"

#include <map>
#include <vector>

namespace ckspec {

// Dense matrix over the Gaussian rationals, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(size_t n);
    static Matrix scalar(size_t n, const Gauss& c);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Gauss& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const Gauss& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    Matrix conj() const;       // entrywise
    Matrix transpose() const;
    Matrix adjoint() const;
    Gauss trace() const;
    bool is_zero() const;
    bool is_real() const;
    // Returns true and sets c when the matrix equals c * Id.
    bool is_scalar(Gauss* c = nullptr) const;
    const std::vector<Gauss>& entries() const { return data_; }

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Gauss& c);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) { return a *= Gauss(-1); }
    friend Matrix operator*(const Gauss& c, Matrix a) { return a *= c; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Gauss> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
// Throws when the matrix is singular.
Matrix inverse(const Matrix& m);
Gauss determinant(const Matrix& m);

using SparseRow = std::map<size_t, Gauss>;

// Incremental reduced row echelon form over the Gaussian rationals. Rows are
// equations (or vectors); rank() is the dimension of their span and nullspace() a basis
// of the common solution set in `unknowns` variables.
class RowReducer {
public:
    explicit RowReducer(size_t unknowns) : n_(unknowns) {}

    // Returns true when the row was independent of those already added.
    bool add(SparseRow row);
    size_t rank() const { return rows_.size(); }
    size_t unknowns() const { return n_; }
    std::vector<SparseRow> nullspace() const;

private:
    size_t n_;
    std::map<size_t, SparseRow> rows_;  // pivot column -> row with 1 at the pivot
};

// Dense convenience wrappers.
std::vector<std::vector<Gauss>> nullspace(const Matrix& m);
size_t rank(const std::vector<std::vector<Gauss>>& vectors);

}  // namespace ckspec
