#include "ckspec/linalg.hpp"

namespace ckspec {

Matrix Matrix::identity(size_t n) { return scalar(n, Gauss(1)); }

Matrix Matrix::scalar(size_t n, const Gauss& c) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        m(i, i) = c;
    return m;
}

Matrix Matrix::conj() const {
    Matrix m = *this;
    for (auto& z : m.data_)
        z = z.conj();
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c)
            m(c, r) = (*this)(r, c);
    return m;
}

Matrix Matrix::adjoint() const { return transpose().conj(); }

Gauss Matrix::trace() const {
    Gauss t;
    for (size_t i = 0; i < std::min(rows_, cols_); ++i)
        t += (*this)(i, i);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& z : data_)
        if (!z.is_zero())
            return false;
    return true;
}

bool Matrix::is_real() const {
    for (const auto& z : data_)
        if (!z.is_real())
            return false;
    return true;
}

bool Matrix::is_scalar(Gauss* c) const {
    if (rows_ != cols_ || rows_ == 0)
        return false;
    Gauss d = (*this)(0, 0);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t col = 0; col < cols_; ++col)
            if ((*this)(r, col) != (r == col ? d : Gauss()))
                return false;
    if (c)
        *c = d;
    return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error(Error::Kind::Precondition, "matrix shape mismatch");
    for (size_t i = 0; i < data_.size(); ++i)
        data_[i] += o.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error(Error::Kind::Precondition, "matrix shape mismatch");
    for (size_t i = 0; i < data_.size(); ++i)
        data_[i] -= o.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(const Gauss& c) {
    for (auto& z : data_)
        z *= c;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
        throw Error(Error::Kind::Precondition, "matrix shape mismatch");
    Matrix m(a.rows_, b.cols_);
    for (size_t r = 0; r < a.rows_; ++r)
        for (size_t k = 0; k < a.cols_; ++k) {
            const Gauss& x = a(r, k);
            if (x.is_zero())
                continue;
            for (size_t c = 0; c < b.cols_; ++c)
                if (!b(k, c).is_zero())
                    m(r, c) += x * b(k, c);
        }
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero())
                continue;
            for (size_t k = 0; k < b.rows(); ++k)
                for (size_t l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return m;
}

Matrix inverse(const Matrix& m) {
    size_t n = m.rows();
    if (m.cols() != n)
        throw Error(Error::Kind::Precondition, "inverse of a non-square matrix");
    Matrix a = m, inv = Matrix::identity(n);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a(p, c).is_zero())
            ++p;
        if (p == n)
            throw Error(Error::Kind::Precondition, "singular matrix");
        for (size_t j = 0; j < n; ++j) {
            std::swap(a(p, j), a(c, j));
            std::swap(inv(p, j), inv(c, j));
        }
        Gauss f = Gauss(1) / a(c, c);
        for (size_t j = 0; j < n; ++j) {
            a(c, j) *= f;
            inv(c, j) *= f;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c).is_zero())
                continue;
            Gauss g = a(r, c);
            for (size_t j = 0; j < n; ++j) {
                a(r, j) -= g * a(c, j);
                inv(r, j) -= g * inv(c, j);
            }
        }
    }
    return inv;
}

Gauss determinant(const Matrix& m) {
    size_t n = m.rows();
    if (m.cols() != n)
        throw Error(Error::Kind::Precondition, "determinant of a non-square matrix");
    Matrix a = m;
    Gauss det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a(p, c).is_zero())
            ++p;
        if (p == n)
            return Gauss(0);
        if (p != c) {
            for (size_t j = 0; j < n; ++j)
                std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        Gauss inv = Gauss(1) / a(c, c);
        for (size_t r = c + 1; r < n; ++r) {
            if (a(r, c).is_zero())
                continue;
            Gauss f = a(r, c) * inv;
            for (size_t j = c; j < n; ++j)
                a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

namespace {

// row -= factor * other
void axpy(SparseRow& row, const Gauss& factor, const SparseRow& other) {
    for (const auto& [col, v] : other) {
        auto [it, inserted] = row.emplace(col, -(factor * v));
        if (!inserted) {
            it->second -= factor * v;
            if (it->second.is_zero())
                row.erase(it);
        }
    }
}

}  // namespace

bool RowReducer::add(SparseRow row) {
    for (auto it = row.begin(); it != row.end();) {
        if (it->second.is_zero())
            it = row.erase(it);
        else
            ++it;
    }
    for (auto it = row.begin(); it != row.end();) {
        auto piv = rows_.find(it->first);
        if (piv == rows_.end()) {
            ++it;
            continue;
        }
        Gauss f = it->second;
        size_t col = it->first;
        axpy(row, f, piv->second);
        it = row.upper_bound(col);
    }
    if (row.empty())
        return false;
    size_t pivot = row.begin()->first;
    Gauss inv = Gauss(1) / row.begin()->second;
    for (auto& [c, v] : row)
        v *= inv;
    for (auto& [p, other] : rows_) {
        auto hit = other.find(pivot);
        if (hit != other.end()) {
            Gauss f = hit->second;
            axpy(other, f, row);
        }
    }
    rows_.emplace(pivot, std::move(row));
    return true;
}

std::vector<SparseRow> RowReducer::nullspace() const {
    std::vector<SparseRow> basis;
    for (size_t f = 0; f < n_; ++f) {
        if (rows_.count(f))
            continue;
        SparseRow v;
        v[f] = Gauss(1);
        for (const auto& [p, row] : rows_) {
            auto hit = row.find(f);
            if (hit != row.end())
                v[p] = -hit->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<Gauss>> nullspace(const Matrix& m) {
    RowReducer red(m.cols());
    for (size_t r = 0; r < m.rows(); ++r) {
        SparseRow row;
        for (size_t c = 0; c < m.cols(); ++c)
            if (!m(r, c).is_zero())
                row[c] = m(r, c);
        red.add(std::move(row));
    }
    std::vector<std::vector<Gauss>> out;
    for (const auto& v : red.nullspace()) {
        std::vector<Gauss> dense(m.cols());
        for (const auto& [c, z] : v)
            dense[c] = z;
        out.push_back(std::move(dense));
    }
    return out;
}

size_t rank(const std::vector<std::vector<Gauss>>& vectors) {
    if (vectors.empty())
        return 0;
    RowReducer red(vectors.front().size());
    for (const auto& v : vectors) {
        SparseRow row;
        for (size_t c = 0; c < v.size(); ++c)
            if (!v[c].is_zero())
                row[c] = v[c];
        red.add(std::move(row));
    }
    return red.rank();
}

}  // namespace ckspec
