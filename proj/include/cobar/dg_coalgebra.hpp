#pragma once

// Connected dg coalgebras over Q with an explicitly stored reduced
// coproduct. Degree 0 is one-dimensional (the coaugmentation); the counit
// is implicit. The stored data is the coaugmentation ideal together with
// the differential matrices per degree and the reduced coproduct triples
// per basis element.
//
// Sign conventions, fixed once for the whole library:
//   - boundary of a simplex: sum of (-1)^i d_i, degenerate faces dropped;
//   - Alexander-Whitney without extra signs: front face tensor back face;
//   - co-Leibniz: del(x (x) y) = del x (x) y + (-1)^{|x|} x (x) del y.

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cobar/linalg.hpp"
#include "cobar/simplicial_set.hpp"
#include "cobar/sparse_matrix.hpp"

namespace cobar {

struct BasisRef {
    int degree = 0;
    int index = 0;

    auto operator<=>(const BasisRef&) const = default;
};

struct CoproductTerm {
    Rational coeff;
    BasisRef left;
    BasisRef right;
};

struct DgCoalgebra {
    // names[n] = ordered basis of C_n; names[0] has exactly one entry.
    std::vector<std::vector<std::string>> names;
    // diff[n]: C_n -> C_{n-1} for 1 <= n <= degree_cap; diff[0] unused.
    std::vector<SparseMatrix> diff;
    // coproduct[n][i] = terms of the reduced coproduct of names[n][i];
    // degrees of each term pair sum to n with both factors >= 1.
    std::vector<std::vector<std::vector<CoproductTerm>>> coproduct;

    int degree_cap() const { return static_cast<int>(names.size()) - 1; }

    int dim(int n) const {
        if (n < 0 || n > degree_cap())
            return 0;
        return static_cast<int>(names[static_cast<std::size_t>(n)].size());
    }

    const std::string& name_of(BasisRef ref) const {
        return names[static_cast<std::size_t>(ref.degree)][static_cast<std::size_t>(ref.index)];
    }

    const std::vector<CoproductTerm>& coproduct_of(BasisRef ref) const {
        static const std::vector<CoproductTerm> empty;
        if (ref.degree < 1 || ref.degree >= static_cast<int>(coproduct.size()))
            return empty;
        return coproduct[static_cast<std::size_t>(ref.degree)][static_cast<std::size_t>(ref.index)];
    }

    /// Differential of a single basis element as a sparse column.
    SparseVector diff_of(BasisRef ref) const {
        if (ref.degree < 1 || ref.degree > degree_cap())
            return {};
        SparseVector unit;
        unit[ref.index] = Rational(1);
        return diff[static_cast<std::size_t>(ref.degree)].apply(unit);
    }

    SparseMatrix diff_at(int n) const {
        if (n < 1 || n > degree_cap())
            return SparseMatrix(dim(n - 1), dim(n));
        return diff[static_cast<std::size_t>(n)];
    }
};

// ---------------------------------------------------------------------------
// Axioms.

struct CoalgebraReport {
    bool ok = true;
    std::vector<std::string> problems;

    void fail(std::string message) {
        ok = false;
        problems.push_back(std::move(message));
    }
};

/// Verifies the shape constraints, del^2 = 0, reduced coassociativity and
/// the co-Leibniz rule, degrewise up to the degree cap. Reports the first
/// violating basis element per axiom.
inline CoalgebraReport check_axioms(const DgCoalgebra& c) {
    CoalgebraReport report;
    if (c.names.empty() || c.names[0].size() != 1) {
        report.fail("degree 0 must be one-dimensional (connected)");
        return report;
    }
    const int cap = c.degree_cap();
    if (static_cast<int>(c.diff.size()) <= cap || static_cast<int>(c.coproduct.size()) <= cap) {
        report.fail("differential/coproduct tables shorter than the basis");
        return report;
    }
    for (int n = 1; n <= cap; ++n) {
        const auto& d = c.diff[static_cast<std::size_t>(n)];
        if (d.rows() != c.dim(n - 1) || d.cols() != c.dim(n)) {
            report.fail("differential at degree " + std::to_string(n) + " has wrong shape");
            return report;
        }
    }

    // Coaugmentation: the differential never hits degree 0.
    if (cap >= 1 && !c.diff[1].is_zero())
        report.fail("differential from degree 1 into the coaugmentation must vanish");

    for (int n = 2; n <= cap; ++n)
        if (!(c.diff[static_cast<std::size_t>(n - 1)] * c.diff[static_cast<std::size_t>(n)]).is_zero()) {
            report.fail("del^2 != 0 from degree " + std::to_string(n));
            break;
        }

    // Term shape of the reduced coproduct.
    for (int n = 1; n <= cap; ++n) {
        for (int i = 0; i < c.dim(n); ++i) {
            for (const auto& t : c.coproduct[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]) {
                if (t.left.degree < 1 || t.right.degree < 1 || t.left.degree + t.right.degree != n ||
                    t.left.index < 0 || t.left.index >= c.dim(t.left.degree) || t.right.index < 0 ||
                    t.right.index >= c.dim(t.right.degree)) {
                    report.fail("coproduct term of '" + c.names[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] +
                                "' is malformed");
                    return report;
                }
            }
        }
    }

    // Reduced coassociativity: (delta (x) 1) delta == (1 (x) delta) delta.
    for (int n = 1; n <= cap; ++n) {
        for (int i = 0; i < c.dim(n); ++i) {
            std::map<std::tuple<BasisRef, BasisRef, BasisRef>, Rational> acc;
            const BasisRef x{n, i};
            for (const auto& t : c.coproduct_of(x)) {
                for (const auto& u : c.coproduct_of(t.left)) {
                    auto key = std::make_tuple(u.left, u.right, t.right);
                    acc[key] += t.coeff * u.coeff;
                    if (acc[key] == 0)
                        acc.erase(key);
                }
                for (const auto& u : c.coproduct_of(t.right)) {
                    auto key = std::make_tuple(t.left, u.left, u.right);
                    acc[key] -= t.coeff * u.coeff;
                    if (acc[key] == 0)
                        acc.erase(key);
                }
            }
            if (!acc.empty()) {
                report.fail("reduced coassociativity fails at '" +
                            c.names[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] + "'");
                n = cap + 1;
                break;
            }
        }
    }

    // Co-Leibniz: delta(del x) == (del (x) 1 + 1 (x) del) delta(x).
    for (int n = 1; n <= cap; ++n) {
        for (int i = 0; i < c.dim(n); ++i) {
            std::map<std::pair<BasisRef, BasisRef>, Rational> acc;
            auto put = [&acc](BasisRef l, BasisRef r, const Rational& v) {
                auto key = std::make_pair(l, r);
                acc[key] += v;
                if (acc[key] == 0)
                    acc.erase(key);
            };
            const BasisRef x{n, i};
            for (const auto& [j, coeff] : c.diff_of(x))
                for (const auto& t : c.coproduct_of(BasisRef{n - 1, j}))
                    put(t.left, t.right, coeff * t.coeff);
            for (const auto& t : c.coproduct_of(x)) {
                for (const auto& [j, coeff] : c.diff_of(t.left))
                    put(BasisRef{t.left.degree - 1, j}, t.right, -t.coeff * coeff);
                const Rational sign = (t.left.degree % 2 == 0) ? Rational(1) : Rational(-1);
                for (const auto& [j, coeff] : c.diff_of(t.right))
                    put(t.left, BasisRef{t.right.degree - 1, j}, -sign * t.coeff * coeff);
            }
            if (!acc.empty()) {
                report.fail("co-Leibniz fails at '" +
                            c.names[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] + "'");
                n = cap + 1;
                break;
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Pointed normalized chains of a reduced simplicial set.

namespace detail {

/// Iterated front face (drop last vertices) of a named simplex; Unknown or
/// Degenerate results mean the chain-level term vanishes or is unknowable.
inline FaceValue front_face(const SimplicialSet& s, const std::string& name, int from_degree, int to_degree) {
    FaceValue v = FaceValue::named(name);
    for (int d = from_degree; d > to_degree; --d)
        v = face_of(s, v, d, d - 1);
    return v;
}

inline FaceValue back_face(const SimplicialSet& s, const std::string& name, int from_degree, int to_degree) {
    FaceValue v = FaceValue::named(name);
    for (int d = from_degree; d > to_degree; --d)
        v = face_of(s, v, 0, d - 1);
    return v;
}

}  // namespace detail

/// Pointed normalized chains with the Alexander-Whitney reduced coproduct.
/// Basis in degree n is the list of nondegenerate n-simplices in input
/// order; degenerate faces contribute zero.
inline DgCoalgebra normalized_chains(const SimplicialSet& s) {
    const auto report = validate(s);
    if (!report.ok)
        throw std::invalid_argument("normalized_chains: input does not validate: " + report.problems.front());

    const int cap = s.dimension_cap();
    DgCoalgebra c;
    c.names.resize(static_cast<std::size_t>(cap) + 1);
    c.diff.resize(static_cast<std::size_t>(cap) + 1);
    c.coproduct.resize(static_cast<std::size_t>(cap) + 1);
    c.names[0] = {"pt"};

    std::map<std::string, int> index_in_degree;
    for (int n = 1; n <= cap; ++n) {
        if (n < static_cast<int>(s.simplices.size()))
            c.names[static_cast<std::size_t>(n)] = s.simplices[static_cast<std::size_t>(n)];
        for (int i = 0; i < c.dim(n); ++i)
            index_in_degree[c.names[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]] = i;
    }

    for (int n = 1; n <= cap; ++n) {
        SparseMatrix d(c.dim(n - 1), c.dim(n));
        c.coproduct[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(c.dim(n)));
        for (int i = 0; i < c.dim(n); ++i) {
            const std::string& name = c.names[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
            const auto& faces = s.faces.at(name);
            if (n >= 2) {
                for (int k = 0; k <= n; ++k) {
                    const std::string& entry = faces[static_cast<std::size_t>(k)];
                    if (entry == kDegenerate)
                        continue;
                    d.add(index_in_degree.at(entry), i, (k % 2 == 0) ? Rational(1) : Rational(-1));
                }
            }
            // degree 1: both faces are the base vertex, so del = 0 on C-bar.

            auto& terms = c.coproduct[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
            for (int p = 1; p <= n - 1; ++p) {
                const auto front = detail::front_face(s, name, n, p);
                if (front.kind != detail::FaceValue::Kind::Name)
                    continue;
                const auto back = detail::back_face(s, name, n, n - p);
                if (back.kind != detail::FaceValue::Kind::Name)
                    continue;
                terms.push_back(CoproductTerm{Rational(1),
                                              BasisRef{p, index_in_degree.at(front.name)},
                                              BasisRef{n - p, index_in_degree.at(back.name)}});
            }
        }
        c.diff[static_cast<std::size_t>(n)] = std::move(d);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Maps of dg coalgebras.

struct DgCoalgebraMap {
    DgCoalgebra source;
    DgCoalgebra target;
    // maps[n]: C_n -> C'_n; degree 0 is the identity on the coaugmentation.
    std::vector<SparseMatrix> maps;

    SparseMatrix map_at(int n) const {
        if (n < 0 || n >= static_cast<int>(maps.size()))
            return SparseMatrix(target.dim(n), source.dim(n));
        return maps[static_cast<std::size_t>(n)];
    }
};

/// Checks compatibility with differentials and reduced coproducts.
inline CoalgebraReport check(const DgCoalgebraMap& f) {
    CoalgebraReport report;
    const int cap = std::max(f.source.degree_cap(), f.target.degree_cap());
    for (int n = 0; n <= cap; ++n) {
        const auto m = f.map_at(n);
        if (m.rows() != f.target.dim(n) || m.cols() != f.source.dim(n)) {
            report.fail("map at degree " + std::to_string(n) + " has wrong shape");
            return report;
        }
    }
    if (f.map_at(0) != SparseMatrix::identity(1))
        report.fail("map must be the identity on the coaugmentation");

    for (int n = 1; n <= cap; ++n) {
        const auto lhs = f.target.diff_at(n) * f.map_at(n);
        const auto rhs = f.map_at(n - 1) * f.source.diff_at(n);
        if (!(lhs + (-rhs)).is_zero()) {
            report.fail("map does not commute with the differential at degree " + std::to_string(n));
            break;
        }
    }

    for (int n = 1; n <= f.source.degree_cap(); ++n) {
        for (int i = 0; i < f.source.dim(n); ++i) {
            std::map<std::pair<BasisRef, BasisRef>, Rational> acc;
            auto put = [&acc](BasisRef l, BasisRef r, const Rational& v) {
                auto key = std::make_pair(l, r);
                acc[key] += v;
                if (acc[key] == 0)
                    acc.erase(key);
            };
            // delta'(f x)
            SparseVector unit;
            unit[i] = Rational(1);
            for (const auto& [j, coeff] : f.map_at(n).apply(unit))
                for (const auto& t : f.target.coproduct_of(BasisRef{n, j}))
                    put(t.left, t.right, coeff * t.coeff);
            // (f (x) f) delta(x)
            for (const auto& t : f.source.coproduct_of(BasisRef{n, i})) {
                SparseVector ul, ur;
                ul[t.left.index] = Rational(1);
                ur[t.right.index] = Rational(1);
                for (const auto& [a, ca] : f.map_at(t.left.degree).apply(ul))
                    for (const auto& [b, cb] : f.map_at(t.right.degree).apply(ur))
                        put(BasisRef{t.left.degree, a}, BasisRef{t.right.degree, b}, -t.coeff * ca * cb);
            }
            if (!acc.empty()) {
                report.fail("map does not commute with the reduced coproduct at '" +
                            f.source.names[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] + "'");
                return report;
            }
        }
    }
    return report;
}

/// Chain-level map of a simplicial map: simplices go to their images,
/// degenerate images go to zero.
inline DgCoalgebraMap chains_map(const SimplicialMap& f) {
    const auto map_report = validate(f);
    if (!map_report.ok)
        throw std::invalid_argument("chains_map: simplicial map does not validate: " + map_report.problems.front());

    DgCoalgebraMap result;
    result.source = normalized_chains(f.source);
    result.target = normalized_chains(f.target);
    const int cap = std::max(result.source.degree_cap(), result.target.degree_cap());
    result.maps.resize(static_cast<std::size_t>(cap) + 1);
    result.maps[0] = SparseMatrix::identity(1);

    std::map<std::string, std::pair<int, int>> target_index;
    for (int n = 1; n <= result.target.degree_cap(); ++n)
        for (int i = 0; i < result.target.dim(n); ++i)
            target_index[result.target.names[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]] = {n, i};

    for (int n = 1; n <= cap; ++n) {
        SparseMatrix m(result.target.dim(n), result.source.dim(n));
        for (int i = 0; i < result.source.dim(n); ++i) {
            const std::string image =
                f.image_of(result.source.names[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]);
            if (image == kDegenerate)
                continue;
            const auto it = target_index.find(image);
            if (it == target_index.end() || it->second.first != n)
                throw std::invalid_argument("chains_map: image simplex missing in target chains");
            m.set(it->second.second, i, Rational(1));
        }
        result.maps[static_cast<std::size_t>(n)] = std::move(m);
    }

    const auto chain_report = check(result);
    if (!chain_report.ok)
        throw std::invalid_argument("chains_map: induced map fails checks: " + chain_report.problems.front());
    return result;
}

// ---------------------------------------------------------------------------
// Homology of the underlying complex and the quasi-isomorphism verdict.

inline SubquotientBasis coalgebra_homology(const DgCoalgebra& c, int n) {
    if (n < 0)
        throw std::invalid_argument("coalgebra_homology: negative degree");
    if (n > c.degree_cap()) {
        SubquotientBasis empty;
        empty.ambient_dim = 0;
        return empty;
    }
    const SparseMatrix d_out = n == 0 ? SparseMatrix(0, c.dim(0)) : c.diff_at(n);
    return homology_at(c.diff_at(n + 1), d_out);
}

struct QisDegreeResult {
    int degree = 0;
    int dim_src = 0;
    int dim_dst = 0;
    bool iso = false;
};

struct QisVerdict {
    std::vector<QisDegreeResult> degrees;
    bool all_iso = true;
};

/// Per-degree homology comparison of a coalgebra map, through max_degree
/// (defaults to the larger degree cap). Degrees above a side's cap are
/// treated as zero; the caller owns the interpretation when the inputs are
/// truncations of larger complexes.
inline QisVerdict is_quasi_isomorphism(const DgCoalgebraMap& f, int max_degree = -1) {
    const auto map_report = check(f);
    if (!map_report.ok)
        throw std::invalid_argument("is_quasi_isomorphism: not a coalgebra map: " + map_report.problems.front());
    if (max_degree < 0)
        max_degree = std::max(f.source.degree_cap(), f.target.degree_cap());

    QisVerdict verdict;
    for (int n = 0; n <= max_degree; ++n) {
        const auto h_src = coalgebra_homology(f.source, n);
        const auto h_dst = coalgebra_homology(f.target, n);
        QisDegreeResult result;
        result.degree = n;
        result.dim_src = h_src.dimension();
        result.dim_dst = h_dst.dimension();
        if (result.dim_src != result.dim_dst) {
            result.iso = false;
        } else {
            const auto induced = induced_map_on_homology(f.map_at(n), h_src, h_dst);
            result.iso = rref(induced).rank == result.dim_src;
        }
        verdict.all_iso = verdict.all_iso && result.iso;
        verdict.degrees.push_back(result);
    }
    return verdict;
}

}  // namespace cobar
