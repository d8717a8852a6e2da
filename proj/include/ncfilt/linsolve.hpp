#pragma once

// Dense exact linear algebra over a scalar field, with fixed column order and
// first-nonzero pivoting so solutions and kernels reproduce bit-exactly.

#include <optional>
#include <vector>

#include "ncfilt/scalar.hpp"

namespace ncfilt {

class ExactMatrix {
public:
    ExactMatrix(std::size_t rows, std::size_t cols, const ScalarDomain& dom)
        : rows_(rows), cols_(cols), dom_(dom),
          data_(rows * cols, Scalar::zero(dom)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const ScalarDomain& domain() const { return dom_; }

    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
    std::size_t rows_, cols_;
    ScalarDomain dom_;
    std::vector<Scalar> data_;
};

namespace linalg {

// Gauss-Jordan elimination in place. Columns are processed left to right;
// the pivot for each column is the first unused row with a nonzero entry.
// Returns the pivot column list (echelon structure).
inline std::vector<std::size_t> echelonize(ExactMatrix& m) {
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr = row;
        while (pr < m.rows() && m.at(pr, col).is_zero()) ++pr;
        if (pr == m.rows()) continue;
        if (pr != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(pr, c), m.at(row, c));
        const Scalar inv = m.at(row, col).inverse();
        for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) = inv * m.at(row, c);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            const Scalar f = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                m.at(r, c) = m.at(r, c) - f * m.at(row, c);
        }
        pivot_cols.push_back(col);
        ++row;
    }
    return pivot_cols;
}

// Particular solution of A x = b with free variables set to zero, or nullopt
// when inconsistent. Deterministic in the column order of A.
inline std::optional<std::vector<Scalar>> solve(const ExactMatrix& a,
                                                const std::vector<Scalar>& b) {
    ExactMatrix aug(a.rows(), a.cols() + 1, a.domain());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    std::vector<std::size_t> pivots = echelonize(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<Scalar> x(a.cols(), Scalar::zero(a.domain()));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, a.cols());
    return x;
}

// Echelonized kernel basis; one vector per free column, in column order.
inline std::vector<std::vector<Scalar>> kernel_basis(const ExactMatrix& a) {
    ExactMatrix m(a.rows(), a.cols(), a.domain());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m.at(r, c) = a.at(r, c);
    std::vector<std::size_t> pivots = echelonize(m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free_col = 0; free_col < a.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Scalar> v(a.cols(), Scalar::zero(a.domain()));
        v[free_col] = Scalar::one(a.domain());
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -m.at(i, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::size_t rank(const ExactMatrix& a) {
    ExactMatrix m(a.rows(), a.cols(), a.domain());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m.at(r, c) = a.at(r, c);
    return echelonize(m).size();
}

// Determinant of a square matrix by elimination.
inline Scalar determinant(const ExactMatrix& a) {
    ExactMatrix m(a.rows(), a.cols(), a.domain());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m.at(r, c) = a.at(r, c);
    Scalar det = Scalar::one(a.domain());
    for (std::size_t col = 0; col < m.cols(); ++col) {
        std::size_t pr = col;
        while (pr < m.rows() && m.at(pr, col).is_zero()) ++pr;
        if (pr == m.rows()) return Scalar::zero(a.domain());
        if (pr != col) {
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(pr, c), m.at(col, c));
            det = -det;
        }
        det = det * m.at(col, col);
        const Scalar inv = m.at(col, col).inverse();
        for (std::size_t r = col + 1; r < m.rows(); ++r) {
            if (m.at(r, col).is_zero()) continue;
            const Scalar f = inv * m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                m.at(r, c) = m.at(r, c) - f * m.at(col, c);
        }
    }
    return det;
}

// Incremental echelon span over coordinate vectors; records which inserted
// vectors were independent. Used for basis extraction and growth series.
class SpanBuilder {
public:
    explicit SpanBuilder(const ScalarDomain& dom) : dom_(dom) {}

    // Reduces v against the span; if a residue remains, adds it (normalized
    // so its leading coordinate is 1) and returns true.
    bool insert(std::vector<Scalar> v) {
        reduce(v);
        std::size_t lead = leading(v);
        if (lead == v.size()) return false;
        const Scalar inv = v[lead].inverse();
        for (auto& x : v) x = inv * x;
        rows_.push_back(std::move(v));
        leads_.push_back(lead);
        // keep rows sorted by leading coordinate for deterministic reduction
        for (std::size_t i = rows_.size(); i-- > 1;) {
            if (leads_[i - 1] <= leads_[i]) break;
            std::swap(rows_[i - 1], rows_[i]);
            std::swap(leads_[i - 1], leads_[i]);
        }
        return true;
    }

    bool contains(std::vector<Scalar> v) const {
        reduce(v);
        return leading(v) == v.size();
    }

    std::size_t dim() const { return rows_.size(); }
    const std::vector<std::vector<Scalar>>& rows() const { return rows_; }
    const std::vector<std::size_t>& leading_coords() const { return leads_; }

private:
    void reduce(std::vector<Scalar>& v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const std::size_t l = leads_[i];
            if (l >= v.size() || v[l].is_zero()) continue;
            const Scalar f = v[l];
            for (std::size_t c = l; c < v.size(); ++c)
                v[c] = v[c] - f * rows_[i][c];
        }
    }
    std::size_t leading(const std::vector<Scalar>& v) const {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) return i;
        return v.size();
    }

    ScalarDomain dom_;
    std::vector<std::vector<Scalar>> rows_;
    std::vector<std::size_t> leads_;
};

} // namespace linalg
} // namespace ncfilt
