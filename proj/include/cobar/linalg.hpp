#pragma once

// Exact linear algebra over Q: reduced row echelon form, kernels, and
// subquotient (homology) bases. Everything is deterministic: pivots are
// chosen leftmost-column-first, lowest row index first, so identical
// inputs give bit-identical outputs.

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cobar/sparse_matrix.hpp"

namespace cobar {

struct RrefResult {
    SparseMatrix matrix;
    std::vector<int> pivot_cols;
    int rank = 0;
};

namespace detail {

/// Incrementally echelonized span with coordinate tracking. Each stored row
/// is a vector of the span together with the combination of the original
/// generators producing it.
class Span {
public:
    /// Returns true if the vector enlarged the span. tag is the index of the
    /// generator in the caller's list (used by solve()).
    bool insert(SparseVector v, int tag) {
        SparseVector combo;
        if (tag >= 0)
            combo[tag] = Rational(1);
        reduce_against_rows(v, combo);
        if (vec_is_zero(v))
            return false;
        const int pivot = v.begin()->first;
        const Rational lead = v.begin()->second;
        scale(v, Rational(1) / lead);
        scale(combo, Rational(1) / lead);
        // Back-eliminate the new pivot from existing rows to stay fully reduced.
        for (auto& row : rows_) {
            auto it = row.vec.find(pivot);
            if (it == row.vec.end())
                continue;
            const Rational factor = -it->second;
            vec_add_scaled(row.vec, factor, v);
            vec_add_scaled(row.combo, factor, combo);
        }
        std::size_t at = 0;
        while (at < rows_.size() && rows_[at].pivot < pivot)
            ++at;
        rows_.insert(rows_.begin() + static_cast<long>(at), Row{pivot, std::move(v), std::move(combo)});
        return true;
    }

    bool contains(SparseVector v) const {
        SparseVector combo;
        reduce_against_rows(v, combo);
        return vec_is_zero(v);
    }

    /// Express target as a combination of the inserted generators; nullopt if
    /// the target is outside the span. Coordinates are indexed by tag.
    std::optional<SparseVector> solve(SparseVector target) const {
        SparseVector combo;
        if (!reduce_against_rows(target, combo))
            return std::nullopt;
        if (!vec_is_zero(target))
            return std::nullopt;
        SparseVector coords;
        for (auto& [tag, c] : combo)
            coords[tag] = -c;  // target - sum == 0, so target == -sum of residual combo
        return coords;
    }

    int rank() const { return static_cast<int>(rows_.size()); }

private:
    struct Row {
        int pivot;
        SparseVector vec;
        SparseVector combo;
    };

    static void scale(SparseVector& v, const Rational& s) {
        for (auto& [idx, c] : v)
            c *= s;
    }

    // Reduces v in place; combo accumulates the generator combination of the
    // eliminated part (so v_original = v_residue - combo·gens ... see solve).
    bool reduce_against_rows(SparseVector& v, SparseVector& combo) const {
        for (const auto& row : rows_) {
            auto it = v.find(row.pivot);
            if (it == v.end())
                continue;
            const Rational factor = -it->second;
            vec_add_scaled(v, factor, row.vec);
            vec_add_scaled(combo, factor, row.combo);
        }
        return true;
    }

    std::vector<Row> rows_;
};

}  // namespace detail

/// Reduced row echelon form with deterministic pivoting (leftmost column,
/// then lowest row index). Returns the canonical RREF, pivot columns, rank.
inline RrefResult rref(const SparseMatrix& m) {
    std::vector<SparseVector> rows = m.to_rows();
    std::vector<bool> used(rows.size(), false);
    std::vector<std::pair<int, int>> pivots;  // (col, row)

    for (int col = 0; col < m.cols(); ++col) {
        int pivot_row = -1;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r])
                continue;
            auto it = rows[r].find(col);
            if (it != rows[r].end()) {
                pivot_row = static_cast<int>(r);
                break;
            }
        }
        if (pivot_row < 0)
            continue;
        used[pivot_row] = true;
        pivots.emplace_back(col, pivot_row);
        SparseVector& p = rows[pivot_row];
        const Rational inv = Rational(1) / p.at(col);
        for (auto& [idx, c] : p)
            c *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == pivot_row)
                continue;
            auto it = rows[r].find(col);
            if (it == rows[r].end())
                continue;
            vec_add_scaled(rows[r], -it->second, p);
        }
    }

    RrefResult result;
    result.rank = static_cast<int>(pivots.size());
    std::vector<SparseVector> ordered;
    ordered.reserve(rows.size());
    for (const auto& [col, row] : pivots) {
        result.pivot_cols.push_back(col);
        ordered.push_back(rows[row]);
    }
    ordered.resize(rows.size());  // zero rows last
    result.matrix = SparseMatrix::from_rows(ordered, m.cols());
    return result;
}

/// Basis of the null space of m, one vector per free column, ordered by
/// free column index. Size is cols - rank.
inline std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
    const RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivot_cols)
        is_pivot[c] = true;

    std::vector<SparseVector> basis;
    const auto rows = r.matrix.to_rows();
    for (int free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col])
            continue;
        SparseVector v;
        v[free_col] = Rational(1);
        for (int i = 0; i < r.rank; ++i) {
            auto it = rows[i].find(free_col);
            if (it != rows[i].end())
                v[r.pivot_cols[i]] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Basis data for a homology group ker(d_out)/im(d_in) of an ambient space.
struct SubquotientBasis {
    int ambient_dim = 0;
    std::vector<SparseVector> cycle_basis;
    std::vector<SparseVector> boundary_basis;
    std::vector<SparseVector> representatives;

    int dimension() const { return static_cast<int>(representatives.size()); }
};

/// Homology at the middle of  C_in --d_in--> C --d_out--> C_low.
/// Requires d_out∘d_in = 0 and rejects inputs violating it.
inline SubquotientBasis homology_at(const SparseMatrix& d_in, const SparseMatrix& d_out) {
    if (d_in.rows() != d_out.cols())
        throw std::invalid_argument("homology_at: ambient dimension mismatch");
    if (!(d_out * d_in).is_zero())
        throw std::invalid_argument("homology_at: d_out ∘ d_in != 0 (broken differential upstream)");

    SubquotientBasis result;
    result.ambient_dim = d_out.cols();
    result.cycle_basis = kernel_basis(d_out);

    detail::Span boundary_span;
    for (int j = 0; j < d_in.cols(); ++j) {
        SparseVector col = d_in.column(j);
        if (boundary_span.insert(col, -1))
            result.boundary_basis.push_back(std::move(col));
    }

    detail::Span mod_boundaries = boundary_span;
    for (const auto& cycle : result.cycle_basis)
        if (mod_boundaries.insert(cycle, -1))
            result.representatives.push_back(cycle);
    return result;
}

/// Matrix of the map induced on homology by a chain map f, in the
/// representative bases. Rejects f that does not preserve cycles or
/// boundaries on the given bases.
inline SparseMatrix induced_map_on_homology(const SparseMatrix& f, const SubquotientBasis& src,
                                            const SubquotientBasis& dst) {
    if (f.cols() != src.ambient_dim || f.rows() != dst.ambient_dim)
        throw std::invalid_argument("induced_map_on_homology: shape mismatch");

    detail::Span dst_cycles;
    for (const auto& c : dst.cycle_basis)
        dst_cycles.insert(c, -1);
    detail::Span dst_boundaries;
    for (const auto& b : dst.boundary_basis)
        dst_boundaries.insert(b, -1);

    for (const auto& c : src.cycle_basis)
        if (!dst_cycles.contains(f.apply(c)))
            throw std::invalid_argument("induced_map_on_homology: map does not send cycles to cycles");
    for (const auto& b : src.boundary_basis)
        if (!dst_boundaries.contains(f.apply(b)))
            throw std::invalid_argument("induced_map_on_homology: map does not send boundaries to boundaries");

    // Coordinates of f(rep) against [representatives | boundaries]; the
    // boundary part is discarded.
    detail::Span solver;
    const int n_reps = static_cast<int>(dst.representatives.size());
    for (int i = 0; i < n_reps; ++i)
        solver.insert(dst.representatives[i], i);
    for (std::size_t i = 0; i < dst.boundary_basis.size(); ++i)
        solver.insert(dst.boundary_basis[i], n_reps + static_cast<int>(i));

    SparseMatrix matrix(n_reps, static_cast<int>(src.representatives.size()));
    for (std::size_t j = 0; j < src.representatives.size(); ++j) {
        auto coords = solver.solve(f.apply(src.representatives[j]));
        if (!coords)
            throw std::invalid_argument("induced_map_on_homology: image escapes target homology basis");
        for (const auto& [tag, value] : *coords)
            if (tag < n_reps)
                matrix.set(tag, static_cast<int>(j), value);
    }
    return matrix;
}

}  // namespace cobar
