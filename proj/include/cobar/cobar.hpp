#pragma once

// The cobar construction on a connected dg coalgebra: the tensor algebra
// on the desuspended coaugmentation ideal, with the derivation differential
//
//   D(s c) = -s(del c) + sum over the reduced coproduct of c of
//            (-1)^{|left|} s(left) . s(right)
//
// where s lowers degree by one and the Koszul sign comes from moving the
// desuspension past the left factor. Words are graded by the sum of
// (degree - 1) over their letters. Degree-zero letters (from C_1) have
// D = 0: their boundary is zero in the coaugmentation ideal and the reduced
// coproduct of a degree-1 element is empty. That fact makes the degree-zero
// part of the homology finitely presented: generators are the degree-zero
// letters and relations are the D-images of the degree-one letters.
//
// Truncations are quotient complexes: basis words keep at most L letters,
// and D is followed by the projection that drops longer words. Degrees
// where the projection actually dropped something, or where words above
// the length bound exist at all, are flagged.

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cobar/dg_coalgebra.hpp"
#include "cobar/groebner.hpp"
#include "cobar/ncpoly.hpp"

namespace cobar {

struct CobarTruncation {
    DgCoalgebra source;
    int degree_bound = 0;      // N
    int wordlength_bound = 0;  // L

    // Letters: the basis of the coaugmentation ideal in (degree, index)
    // order. letter_degree[i] is the cobar degree (source degree - 1).
    std::vector<BasisRef> letters;
    std::vector<int> letter_degree;
    std::map<BasisRef, int> letter_index;
    // Cached formal differential of each letter (unprojected).
    std::vector<std::map<Word, Rational>> letter_d;

    // words[d] for 0 <= d <= N, each word a sequence of letter indices in
    // (length, lexicographic) order. words[0] holds only the unit word; the
    // degree-zero part is handled through the finite presentation instead.
    std::vector<std::vector<Word>> words;
    std::vector<std::map<Word, int>> index;

    // d_matrices[n]: words[n] -> words[n-1] for n >= 2, after projection.
    std::vector<SparseMatrix> d_matrices;
    // Degree 1 -> degree 0 with lazily indexed rows (the full degree-zero
    // word basis is not enumerated).
    SparseMatrix d1;
    std::vector<Word> degree0_rows;

    // Per degree 0..N: whether words above the length bound exist at all
    // (missing from the basis), and whether D dropped terms.
    std::vector<bool> truncated;
    std::vector<bool> escape;

    int letter_of(BasisRef ref) const {
        auto it = letter_index.find(ref);
        if (it == letter_index.end())
            throw std::invalid_argument("cobar: no letter for basis element");
        return it->second;
    }

    std::string word_name(const Word& w) const {
        if (w.empty())
            return "1";
        std::ostringstream out;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i)
                out << ".";
            out << source.name_of(letters[static_cast<std::size_t>(w[i])]);
        }
        return out.str();
    }

    SparseMatrix d_at(int n) const {
        if (n == 1)
            return d1;
        if (n < 1 || n > degree_bound)
            return SparseMatrix(n - 1 == 0 ? 0 : dim(n - 1), dim(n));
        return d_matrices[static_cast<std::size_t>(n)];
    }

    int dim(int n) const {
        if (n < 0 || n > degree_bound)
            return 0;
        return static_cast<int>(words[static_cast<std::size_t>(n)].size());
    }
};

struct CobarBudgetExceeded : std::runtime_error {
    explicit CobarBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

/// Formal differential of a single letter: letter words with coefficients,
/// no length projection.
inline std::map<Word, Rational> letter_differential(const CobarTruncation& t, int letter) {
    std::map<Word, Rational> result;
    const BasisRef c = t.letters[static_cast<std::size_t>(letter)];
    if (c.degree >= 2) {
        for (const auto& [j, coeff] : t.source.diff_of(c)) {
            const int target = t.letter_of(BasisRef{c.degree - 1, j});
            result[Word{target}] -= coeff;
        }
    }
    for (const auto& term : t.source.coproduct_of(c)) {
        const int l = t.letter_of(term.left);
        const int r = t.letter_of(term.right);
        const Rational sign = (term.left.degree % 2 == 0) ? Rational(1) : Rational(-1);
        Word w{l, r};
        auto it = result.find(w);
        if (it == result.end())
            result.emplace(std::move(w), sign * term.coeff);
        else {
            it->second += sign * term.coeff;
            if (it->second == 0)
                result.erase(it);
        }
    }
    return result;
}

/// Formal D on a word: derivation extension with Koszul signs from the
/// cobar degrees of the prefixes. No length projection.
inline std::map<Word, Rational> formal_differential(const CobarTruncation& t, const Word& w) {
    std::map<Word, Rational> result;
    int prefix_degree = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Rational sign = (prefix_degree % 2 == 0) ? Rational(1) : Rational(-1);
        const auto& letter_terms = t.letter_d[static_cast<std::size_t>(w[i])];
        for (const auto& [mid, coeff] : letter_terms) {
            Word out(w.begin(), w.begin() + static_cast<long>(i));
            out.insert(out.end(), mid.begin(), mid.end());
            out.insert(out.end(), w.begin() + static_cast<long>(i) + 1, w.end());
            auto it = result.find(out);
            if (it == result.end()) {
                result.emplace(std::move(out), sign * coeff);
            } else {
                it->second += sign * coeff;
                if (it->second == 0)
                    result.erase(it);
            }
        }
        prefix_degree += t.letter_degree[static_cast<std::size_t>(w[i])];
    }
    return result;
}

}  // namespace detail

/// Builds the truncated cobar construction: all words of cobar degree <= N
/// with at most L letters (degree zero keeps only the unit word), and the
/// projected differential matrices. Deterministic basis order: (length,
/// lexicographic by letter index) within each degree.
inline CobarTruncation cobar_complex(const DgCoalgebra& c, int degree_bound, int wordlength_bound,
                             long long max_words_per_degree = 200000) {
    if (degree_bound < 0 || wordlength_bound < 1)
        throw std::invalid_argument("cobar: bounds must satisfy N >= 0, L >= 1");
    const auto axioms = check_axioms(c);
    if (!axioms.ok)
        throw std::invalid_argument("cobar: source fails coalgebra axioms: " + axioms.problems.front());

    CobarTruncation t;
    t.source = c;
    t.degree_bound = degree_bound;
    t.wordlength_bound = wordlength_bound;
    for (int n = 1; n <= c.degree_cap(); ++n)
        for (int i = 0; i < c.dim(n); ++i) {
            t.letter_index.emplace(BasisRef{n, i}, static_cast<int>(t.letters.size()));
            t.letters.push_back(BasisRef{n, i});
            t.letter_degree.push_back(n - 1);
        }
    t.letter_d.resize(t.letters.size());
    for (int i = 0; i < static_cast<int>(t.letters.size()); ++i)
        t.letter_d[static_cast<std::size_t>(i)] = detail::letter_differential(t, i);

    t.words.assign(static_cast<std::size_t>(degree_bound) + 1, {});
    t.index.assign(static_cast<std::size_t>(degree_bound) + 1, {});
    t.truncated.assign(static_cast<std::size_t>(degree_bound) + 1, false);
    t.escape.assign(static_cast<std::size_t>(degree_bound) + 1, false);
    t.words[0].push_back(Word{});
    t.index[0].emplace(Word{}, 0);

    const bool has_degree0_letters =
        std::find(t.letter_degree.begin(), t.letter_degree.end(), 0) != t.letter_degree.end();

    // Enumerate words of positive degree, shortest first then lexicographic.
    std::vector<std::pair<Word, int>> frontier = {{Word{}, 0}};
    for (int len = 1; len <= wordlength_bound; ++len) {
        std::vector<std::pair<Word, int>> current;
        for (const auto& [w, degree] : frontier) {
            for (int letter = 0; letter < static_cast<int>(t.letters.size()); ++letter) {
                const int d = degree + t.letter_degree[static_cast<std::size_t>(letter)];
                if (d > degree_bound)
                    continue;
                Word grown = w;
                grown.push_back(letter);
                current.emplace_back(std::move(grown), d);
                if (static_cast<long long>(current.size()) > max_words_per_degree)
                    throw CobarBudgetExceeded("cobar: word enumeration at length " + std::to_string(len) +
                                              " exceeds the budget; lower L or raise the budget");
            }
        }
        for (const auto& [w, degree] : current) {
            if (degree >= 1) {
                auto& bucket = t.words[static_cast<std::size_t>(degree)];
                t.index[static_cast<std::size_t>(degree)].emplace(w, static_cast<int>(bucket.size()));
                bucket.push_back(w);
                if (static_cast<long long>(bucket.size()) > max_words_per_degree)
                    throw CobarBudgetExceeded("cobar: basis at degree " + std::to_string(degree) +
                                              " exceeds the word budget; lower L or raise the budget");
            }
        }
        frontier = std::move(current);
    }

    // Length-truncation flags. With degree-zero letters any nonempty degree
    // admits arbitrarily long words. Without them, check by reachability
    // whether the degree needs more than L letters.
    if (has_degree0_letters) {
        for (int d = 0; d <= degree_bound; ++d)
            t.truncated[static_cast<std::size_t>(d)] = true;
    } else {
        // exists[d][l]: a word of degree d with exactly l letters exists
        const int cap_len = degree_bound;  // letters have degree >= 1
        std::vector<std::vector<bool>> exists(
            static_cast<std::size_t>(degree_bound) + 1,
            std::vector<bool>(static_cast<std::size_t>(cap_len) + 1, false));
        exists[0][0] = true;
        for (int l = 1; l <= cap_len; ++l)
            for (int d = 1; d <= degree_bound; ++d)
                for (int delta : t.letter_degree)
                    if (delta >= 1 && d - delta >= 0 && exists[static_cast<std::size_t>(d - delta)]
                                                              [static_cast<std::size_t>(l - 1)])
                        exists[static_cast<std::size_t>(d)][static_cast<std::size_t>(l)] = true;
        for (int d = 1; d <= degree_bound; ++d)
            for (int l = wordlength_bound + 1; l <= cap_len; ++l)
                if (exists[static_cast<std::size_t>(d)][static_cast<std::size_t>(l)])
                    t.truncated[static_cast<std::size_t>(d)] = true;
    }

    // Differential matrices with projection to the truncation.
    t.d_matrices.assign(static_cast<std::size_t>(degree_bound) + 1, SparseMatrix());
    std::map<Word, int> degree0_index;
    std::vector<std::pair<std::pair<int, int>, Rational>> d1_entries;
    for (int n = 1; n <= degree_bound; ++n) {
        SparseMatrix m(t.dim(n - 1), t.dim(n));
        for (int col = 0; col < t.dim(n); ++col) {
            const Word& w = t.words[static_cast<std::size_t>(n)][static_cast<std::size_t>(col)];
            for (const auto& [out, coeff] : detail::formal_differential(t, w)) {
                if (static_cast<int>(out.size()) > wordlength_bound) {
                    t.escape[static_cast<std::size_t>(n)] = true;
                    continue;
                }
                if (n == 1) {
                    auto it = degree0_index.find(out);
                    if (it == degree0_index.end())
                        it = degree0_index.emplace(out, static_cast<int>(degree0_index.size())).first;
                    d1_entries.push_back({{it->second, col}, coeff});
                } else {
                    m.add(t.index[static_cast<std::size_t>(n - 1)].at(out), col, coeff);
                }
            }
        }
        if (n >= 2)
            t.d_matrices[static_cast<std::size_t>(n)] = std::move(m);
    }
    t.degree0_rows.resize(degree0_index.size());
    for (const auto& [w, i] : degree0_index)
        t.degree0_rows[static_cast<std::size_t>(i)] = w;
    if (degree_bound >= 1) {
        t.d1 = SparseMatrix(static_cast<int>(degree0_index.size()), t.dim(1));
        for (const auto& [rc, coeff] : d1_entries)
            t.d1.add(rc.first, rc.second, coeff);
    }
    return t;
}

// ---------------------------------------------------------------------------
// D^2 = 0, checked formally (no projection, so the verdict is exact on
// every basis word regardless of the length bound).

struct DSquaredReport {
    bool ok = true;
    long long words_checked = 0;
    std::string first_failure;  // word name
};

inline DSquaredReport check_d_squared(const CobarTruncation& t) {
    DSquaredReport report;
    for (int n = 2; n <= t.degree_bound; ++n) {
        for (const auto& w : t.words[static_cast<std::size_t>(n)]) {
            std::map<Word, Rational> acc;
            for (const auto& [mid, coeff] : detail::formal_differential(t, w))
                for (const auto& [out, c2] : detail::formal_differential(t, mid)) {
                    auto it = acc.find(out);
                    if (it == acc.end()) {
                        acc.emplace(out, coeff * c2);
                        if (acc[out] == 0)
                            acc.erase(out);
                    } else {
                        it->second += coeff * c2;
                        if (it->second == 0)
                            acc.erase(it);
                    }
                }
            ++report.words_checked;
            if (!acc.empty()) {
                report.ok = false;
                report.first_failure = t.word_name(w);
                return report;
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Finite presentation of the degree-zero homology.

struct H0Presentation {
    std::vector<std::string> generators;         // degree-1 basis names
    std::vector<NcPoly> relations;               // D-image of each degree-2 letter
    std::vector<std::string> relation_sources;   // degree-2 basis names
};

/// Generators: the degree-one basis of the coaugmentation ideal. Relations:
/// the degree-zero component of D on each degree-two letter, i.e.
/// -s(del c) - sum of the (1,1) part of the reduced coproduct. D vanishes
/// on degree-zero letters, so these generate the whole boundary ideal in
/// degree zero.
inline H0Presentation h0_presentation(const DgCoalgebra& c) {
    const auto axioms = check_axioms(c);
    if (!axioms.ok)
        throw std::invalid_argument("h0_presentation: source fails coalgebra axioms: " + axioms.problems.front());

    H0Presentation p;
    for (int i = 0; i < c.dim(1); ++i) {
        const std::string& name = c.names[1][static_cast<std::size_t>(i)];
        check_generator_name(name);
        p.generators.push_back(name);
    }
    for (int i = 0; i < c.dim(2); ++i) {
        NcPoly r;
        for (const auto& [j, coeff] : c.diff_of(BasisRef{2, i}))
            poly_add_term(r, Word{j}, -coeff);
        for (const auto& term : c.coproduct_of(BasisRef{2, i})) {
            // both factors have degree 1; the Koszul sign is (-1)^1
            poly_add_term(r, Word{term.left.index, term.right.index}, -term.coeff);
        }
        if (!r.empty()) {
            p.relations.push_back(std::move(r));
            p.relation_sources.push_back(c.names[2][static_cast<std::size_t>(i)]);
        }
    }
    return p;
}

inline FpAlgebra h0_algebra(const H0Presentation& p, int groebner_bound, std::ostream* trace = nullptr) {
    return groebner(p.generators, p.relations, groebner_bound, trace);
}

// ---------------------------------------------------------------------------
// Degree-zero coproduct: every degree-zero letter x is the reduced part of
// a group-like, so nabla(x) = x(x)1 + 1(x)x + x(x)x, extended as an algebra
// map. On the quotient this must send every relation into the ideal; the
// check below verifies that with normal forms on both tensor factors.

struct CoproductDescent {
    bool descends = true;
    std::vector<std::string> failing_relations;
};

inline TensorPoly nabla_on_generator(int gen) {
    TensorPoly t;
    tensor_add(t, Word{gen}, Word{}, Rational(1));
    tensor_add(t, Word{}, Word{gen}, Rational(1));
    tensor_add(t, Word{gen}, Word{gen}, Rational(1));
    return t;
}

inline CoproductDescent degree0_coproduct_descends(const FpAlgebra& a) {
    CoproductDescent result;
    for (const auto& r : a.relations) {
        if (!degree0_coproduct_of(a, r).empty()) {
            result.descends = false;
            result.failing_relations.push_back(poly_to_string(r, a.gens));
        }
    }
    return result;
}

/// Seeds 1 + x for every degree-zero letter x, ready for grouplike_closure.
inline std::vector<NcPoly> grouplike_seeds(const FpAlgebra& a) {
    std::vector<NcPoly> seeds;
    for (int i = 0; i < static_cast<int>(a.gens.size()); ++i) {
        NcPoly s = poly_one();
        poly_add_term(s, Word{i}, Rational(1));
        seeds.push_back(std::move(s));
    }
    return seeds;
}

}  // namespace cobar
