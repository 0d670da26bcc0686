#include "qcl/linalg.hpp"

#include <numeric>

namespace qcl {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_) {
        if (!x.is_zero()) return false;
    }
    return true;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DomainError("matrix shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DomainError("matrix shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& c) {
    for (auto& x : data_) x *= c;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t l = 0; l < a.cols_; ++l) {
            const Scalar& x = a(i, l);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (!b(l, j).is_zero()) r(i, j) += x * b(l, j);
            }
        }
    }
    return r;
}

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct Component {
    std::vector<std::size_t> cols;
    std::vector<std::size_t> rows;
};

// Groups columns that share a nonzero row, transitively.
std::vector<Component> components(const std::vector<SparseVector>& columns) {
    const std::size_t nc = columns.size();
    DisjointSets sets(nc);
    std::map<std::size_t, std::size_t> owner;  // row -> first column touching it
    for (std::size_t c = 0; c < nc; ++c) {
        for (const auto& [r, x] : columns[c]) {
            auto [it, inserted] = owner.try_emplace(r, c);
            if (!inserted) sets.unite(c, it->second);
        }
    }
    std::map<std::size_t, Component> groups;
    for (std::size_t c = 0; c < nc; ++c) groups[sets.find(c)].cols.push_back(c);
    for (const auto& [r, c] : owner) groups[sets.find(c)].rows.push_back(r);
    std::vector<Component> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    return out;
}

// Reduced row echelon form of a dense block; returns the pivot column of each pivot row.
std::vector<std::size_t> rref(std::vector<std::vector<Scalar>>& a, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    const std::size_t nrows = a.size();
    for (std::size_t c = 0; c < ncols && row < nrows; ++c) {
        std::size_t best = nrows;
        std::size_t best_size = 0;
        for (std::size_t r = row; r < nrows; ++r) {
            if (a[r][c].is_zero()) continue;
            const std::size_t size = a[r][c].complexity();
            if (best == nrows || size < best_size) {
                best = r;
                best_size = size;
            }
        }
        if (best == nrows) continue;
        std::swap(a[row], a[best]);
        const Scalar inv = a[row][c].inverse();
        for (std::size_t j = c; j < ncols; ++j) {
            if (!a[row][j].is_zero()) a[row][j] *= inv;
        }
        for (std::size_t r = 0; r < nrows; ++r) {
            if (r == row || a[r][c].is_zero()) continue;
            const Scalar factor = a[r][c];
            for (std::size_t j = c; j < ncols; ++j) {
                if (!a[row][j].is_zero()) a[r][j] -= factor * a[row][j];
            }
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<Scalar>> dense_block(const std::vector<SparseVector>& columns, const Component& comp) {
    std::map<std::size_t, std::size_t> row_index;
    for (std::size_t i = 0; i < comp.rows.size(); ++i) row_index[comp.rows[i]] = i;
    std::vector<std::vector<Scalar>> a(comp.rows.size(), std::vector<Scalar>(comp.cols.size()));
    for (std::size_t j = 0; j < comp.cols.size(); ++j) {
        for (const auto& [r, x] : columns[comp.cols[j]]) a[row_index[r]][j] = x;
    }
    return a;
}

}  // namespace

std::size_t rank(const std::vector<SparseVector>& columns) {
    std::size_t total = 0;
    for (const Component& comp : components(columns)) {
        if (comp.rows.empty()) continue;
        auto a = dense_block(columns, comp);
        total += rref(a, comp.cols.size()).size();
    }
    return total;
}

std::size_t rank(const Matrix& m) {
    std::vector<SparseVector> columns(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (!m(r, c).is_zero()) columns[c].emplace(r, m(r, c));
        }
    }
    return rank(columns);
}

std::vector<SparseVector> nullspace(const std::vector<SparseVector>& columns) {
    std::vector<SparseVector> basis;
    for (const Component& comp : components(columns)) {
        const std::size_t nc = comp.cols.size();
        if (comp.rows.empty()) {
            for (std::size_t c : comp.cols) basis.push_back({{c, Scalar(1)}});
            continue;
        }
        auto a = dense_block(columns, comp);
        const auto pivots = rref(a, nc);
        std::vector<bool> is_pivot(nc, false);
        for (std::size_t c : pivots) is_pivot[c] = true;
        for (std::size_t f = 0; f < nc; ++f) {
            if (is_pivot[f]) continue;
            SparseVector v;
            v.emplace(comp.cols[f], Scalar(1));
            for (std::size_t i = 0; i < pivots.size(); ++i) {
                if (!a[i][f].is_zero()) v.emplace(comp.cols[pivots[i]], -a[i][f]);
            }
            basis.push_back(std::move(v));
        }
    }
    return basis;
}

}  // namespace qcl
