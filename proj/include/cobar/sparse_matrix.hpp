#pragma once

// Sparse matrices and vectors over Q. Zero entries are never stored, so
// iteration over entries() visits exactly the nonzero support.

#include <initializer_list>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cobar/rational.hpp"

namespace cobar {

/// Sparse column vector: index -> nonzero coefficient.
using SparseVector = std::map<int, Rational>;

inline void vec_add_scaled(SparseVector& target, const Rational& scale, const SparseVector& other) {
    if (scale == 0)
        return;
    for (const auto& [idx, coeff] : other) {
        auto it = target.find(idx);
        if (it == target.end()) {
            target.emplace(idx, scale * coeff);
        } else {
            it->second += scale * coeff;
            if (it->second == 0)
                target.erase(it);
        }
    }
}

inline bool vec_is_zero(const SparseVector& v) { return v.empty(); }

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0)
            throw std::invalid_argument("SparseMatrix: negative dimension");
    }

    static SparseMatrix identity(int n) {
        SparseMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            m.set(i, i, Rational(1));
        return m;
    }

    /// Row-major dense initializer, mostly for tests.
    static SparseMatrix from_dense(std::initializer_list<std::initializer_list<int>> data) {
        const int r = static_cast<int>(data.size());
        const int c = r == 0 ? 0 : static_cast<int>(data.begin()->size());
        SparseMatrix m(r, c);
        int i = 0;
        for (const auto& row : data) {
            if (static_cast<int>(row.size()) != c)
                throw std::invalid_argument("from_dense: ragged rows");
            int j = 0;
            for (int v : row)
                m.set(i, j++, Rational(v));
            ++i;
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const Rational& value) {
        check_index(r, c);
        if (value == 0)
            entries_.erase({r, c});
        else
            entries_[{r, c}] = value;
    }

    void add(int r, int c, const Rational& value) {
        check_index(r, c);
        if (value == 0)
            return;
        auto key = std::make_pair(r, c);
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            entries_.emplace(key, value);
        } else {
            it->second += value;
            if (it->second == 0)
                entries_.erase(it);
        }
    }

    Rational get(int r, int c) const {
        check_index(r, c);
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Rational(0) : it->second;
    }

    const std::map<std::pair<int, int>, Rational>& entries() const { return entries_; }

    bool is_zero() const { return entries_.empty(); }

    bool operator==(const SparseMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
    }

    SparseMatrix operator*(const SparseMatrix& other) const {
        if (cols_ != other.rows_)
            throw std::invalid_argument("SparseMatrix: dimension mismatch in product");
        SparseMatrix result(rows_, other.cols_);
        // Group the right factor by row once, then accumulate.
        std::vector<std::vector<std::pair<int, Rational>>> right_rows(other.rows_);
        for (const auto& [rc, v] : other.entries_)
            right_rows[rc.first].emplace_back(rc.second, v);
        for (const auto& [rc, v] : entries_) {
            const auto& [i, k] = rc;
            for (const auto& [j, w] : right_rows[k])
                result.add(i, j, v * w);
        }
        return result;
    }

    SparseMatrix operator+(const SparseMatrix& other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw std::invalid_argument("SparseMatrix: dimension mismatch in sum");
        SparseMatrix result = *this;
        for (const auto& [rc, v] : other.entries_)
            result.add(rc.first, rc.second, v);
        return result;
    }

    SparseMatrix operator-() const {
        SparseMatrix result(rows_, cols_);
        for (const auto& [rc, v] : entries_)
            result.set(rc.first, rc.second, -v);
        return result;
    }

    SparseMatrix transpose() const {
        SparseMatrix result(cols_, rows_);
        for (const auto& [rc, v] : entries_)
            result.set(rc.second, rc.first, v);
        return result;
    }

    /// Matrix times column vector.
    SparseVector apply(const SparseVector& v) const {
        SparseVector result;
        for (const auto& [rc, coeff] : entries_) {
            auto it = v.find(rc.second);
            if (it == v.end())
                continue;
            auto [pos, inserted] = result.emplace(rc.first, coeff * it->second);
            if (!inserted) {
                pos->second += coeff * it->second;
                if (pos->second == 0)
                    result.erase(pos);
            }
        }
        return result;
    }

    SparseVector column(int c) const {
        SparseVector result;
        for (auto it = entries_.lower_bound({0, 0}); it != entries_.end(); ++it)
            if (it->first.second == c)
                result[it->first.first] = it->second;
        return result;
    }

    std::vector<SparseVector> to_rows() const {
        std::vector<SparseVector> rows(rows_);
        for (const auto& [rc, v] : entries_)
            rows[rc.first][rc.second] = v;
        return rows;
    }

    static SparseMatrix from_rows(const std::vector<SparseVector>& rows, int cols) {
        SparseMatrix m(static_cast<int>(rows.size()), cols);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i)
            for (const auto& [j, v] : rows[i])
                m.set(i, j, v);
        return m;
    }

    static SparseMatrix from_columns(const std::vector<SparseVector>& columns, int rows) {
        SparseMatrix m(rows, static_cast<int>(columns.size()));
        for (int j = 0; j < static_cast<int>(columns.size()); ++j)
            for (const auto& [i, v] : columns[j])
                m.set(i, j, v);
        return m;
    }

private:
    void check_index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("SparseMatrix: index out of range");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::map<std::pair<int, int>, Rational> entries_;
};

}  // namespace cobar
