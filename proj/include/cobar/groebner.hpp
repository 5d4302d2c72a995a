#pragma once

// Finitely presented associative algebras over Q with degree-bounded
// noncommutative Groebner bases (Buchberger-Mora completion). Bases need
// not be finite in general; every verdict therefore carries the bound it
// was computed under and the completeness flag. The reduced basis computed
// here is canonical for the ideal and the monomial order, so identical
// inputs give identical results.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "cobar/linalg.hpp"
#include "cobar/ncpoly.hpp"

namespace cobar {

struct FpAlgebra {
    std::vector<std::string> gens;
    std::vector<NcPoly> relations;  // input relations, zero entries dropped
    int groebner_bound = 0;
    std::vector<NcPoly> basis;  // reduced and monic; tip = begin() of each
    bool complete_flag = false;

    const Word& tip(std::size_t i) const { return basis[i].begin()->first; }
};

namespace detail {

inline bool is_subword_at(const Word& word, const Word& sub, std::size_t pos) {
    if (pos + sub.size() > word.size())
        return false;
    for (std::size_t i = 0; i < sub.size(); ++i)
        if (word[pos + i] != sub[i])
            return false;
    return true;
}

/// First (leftmost position, then lowest rule index) tip occurrence in w.
struct TipHit {
    std::size_t rule;
    std::size_t pos;
};

inline std::optional<TipHit> find_tip(const Word& w, const std::vector<NcPoly>& rules) {
    for (std::size_t pos = 0; pos <= w.size(); ++pos)
        for (std::size_t r = 0; r < rules.size(); ++r) {
            const Word& t = rules[r].begin()->first;
            if (t.size() <= w.size() - pos && is_subword_at(w, t, pos))
                return TipHit{r, pos};
        }
    return std::nullopt;
}

inline NcPoly reduce_full(NcPoly p, const std::vector<NcPoly>& rules) {
    NcPoly result;
    while (!p.empty()) {
        const Word w = p.begin()->first;
        const Rational c = p.begin()->second;
        p.erase(p.begin());
        const auto hit = find_tip(w, rules);
        if (!hit) {
            poly_add_term(result, w, c);
            continue;
        }
        const NcPoly& rule = rules[hit->rule];
        const Word left(w.begin(), w.begin() + static_cast<long>(hit->pos));
        const Word right(w.begin() + static_cast<long>(hit->pos + rule.begin()->first.size()), w.end());
        // w == left * tip * right; replace tip by -(tail of the monic rule)
        bool leading = true;
        for (const auto& [u, cu] : rule) {
            if (leading) {
                leading = false;
                continue;
            }
            Word replaced = left;
            replaced.insert(replaced.end(), u.begin(), u.end());
            replaced.insert(replaced.end(), right.begin(), right.end());
            poly_add_term(p, replaced, -c * cu);
        }
    }
    return result;
}

inline NcPoly make_monic(NcPoly p) {
    if (p.empty())
        return p;
    return poly_scale(std::move(p), Rational(1) / p.begin()->second);
}

/// Mutual reduction to the unique reduced set with pairwise indivisible tips.
inline std::vector<NcPoly> interreduce(std::vector<NcPoly> rules) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < rules.size(); ++i) {
            std::vector<NcPoly> others;
            others.reserve(rules.size() - 1);
            for (std::size_t j = 0; j < rules.size(); ++j)
                if (j != i)
                    others.push_back(rules[j]);
            NcPoly q = make_monic(reduce_full(rules[i], others));
            if (q.empty()) {
                rules.erase(rules.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
            if (!(q == rules[i])) {
                rules[i] = std::move(q);
                changed = true;
            }
        }
    }
    std::sort(rules.begin(), rules.end(), [](const NcPoly& a, const NcPoly& b) {
        return DegLexGreater()(b.begin()->first, a.begin()->first);  // ascending tips
    });
    return rules;
}

}  // namespace detail

/// Buchberger-Mora completion bounded at overlap-word degree D_g. The
/// complete_flag records whether any overlap had to be skipped for lying
/// above the bound. An optional trace stream receives one JSON line per
/// completion event.
inline FpAlgebra groebner(std::vector<std::string> gens, std::vector<NcPoly> relations, int bound,
                          std::ostream* trace = nullptr) {
    for (const auto& name : gens)
        check_generator_name(name);
    FpAlgebra algebra;
    algebra.gens = std::move(gens);
    algebra.groebner_bound = bound;
    for (auto& r : relations) {
        for (const auto& [w, c] : r)
            for (int letter : w)
                if (letter < 0 || letter >= static_cast<int>(algebra.gens.size()))
                    throw std::invalid_argument("groebner: relation uses an unknown generator index");
        if (!r.empty())
            algebra.relations.push_back(r);
    }
    for (const auto& r : algebra.relations)
        if (poly_degree(r) > bound)
            throw std::invalid_argument("groebner: bound is smaller than a relation degree");

    std::vector<NcPoly> basis;
    for (const auto& r : algebra.relations)
        basis.push_back(detail::make_monic(r));
    basis = detail::interreduce(std::move(basis));

    bool skipped_overlap = false;
    while (true) {
        skipped_overlap = false;
        std::vector<NcPoly> fresh;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const Word& u = basis[i].begin()->first;
                const Word& v = basis[j].begin()->first;
                if (u.empty() || v.empty())
                    continue;  // unit rule: the whole algebra collapses
                // proper overlaps: a nonempty proper suffix of u equals a
                // prefix of v; the overlap word is u glued to the rest of v.
                const std::size_t max_k = std::min(u.size(), v.size()) - 1;
                for (std::size_t k = 1; k <= max_k; ++k) {
                    bool match = true;
                    for (std::size_t t = 0; t < k && match; ++t)
                        if (u[u.size() - k + t] != v[t])
                            match = false;
                    if (!match)
                        continue;
                    const std::size_t overlap_degree = u.size() + v.size() - k;
                    if (static_cast<int>(overlap_degree) > bound) {
                        skipped_overlap = true;
                        continue;
                    }
                    // s-poly: (rule_i) * suffix(v) - prefix(u) * (rule_j)
                    const Word right(v.begin() + static_cast<long>(k), v.end());
                    const Word left(u.begin(), u.end() - static_cast<long>(k));
                    NcPoly s = word_poly_word(Word{}, basis[i], right);
                    poly_add_scaled(s, Rational(-1), word_poly_word(left, basis[j], Word{}));
                    NcPoly reduced = detail::reduce_full(std::move(s), basis);
                    if (!reduced.empty()) {
                        if (trace)
                            (*trace) << "{\"event\":\"new-rule\",\"from\":[" << i << "," << j
                                     << "],\"degree\":" << poly_degree(reduced) << "}\n";
                        fresh.push_back(detail::make_monic(std::move(reduced)));
                    }
                }
            }
        }
        if (fresh.empty())
            break;
        for (auto& p : fresh)
            basis.push_back(std::move(p));
        basis = detail::interreduce(std::move(basis));
    }

    algebra.basis = std::move(basis);
    algebra.complete_flag = !skipped_overlap;
    if (trace)
        (*trace) << "{\"event\":\"done\",\"rules\":" << algebra.basis.size()
                 << ",\"complete\":" << (algebra.complete_flag ? "true" : "false") << "}\n";
    return algebra;
}

/// Confluent reduction against the stored basis; canonical when the basis
/// is complete (or the polynomial stays within the bound).
inline NcPoly normal_form(const FpAlgebra& a, NcPoly p) { return detail::reduce_full(std::move(p), a.basis); }

// ---------------------------------------------------------------------------
// Dimension counting.

struct DimensionReport {
    enum class Kind { Finite, AtLeast, UpperEstimate } kind = Kind::Finite;
    std::vector<long long> counts;  // irreducible words per word-degree; may
                                    // stop early when the budget is hit
    long long total = 0;
    int bound = 0;
    bool truncated_by_budget = false;

    bool finite() const { return kind == Kind::Finite; }
};

/// Irreducible-word counts per degree through d <= groebner_bound. With a
/// complete basis the words are a basis of the algebra: verdict Finite when
/// the counts reach 0, AtLeast otherwise. With an incomplete basis the
/// counts only bound the dimension from above (UpperEstimate).
inline DimensionReport dimension(const FpAlgebra& a, int through_degree,
                                 long long enumeration_budget = 2'000'000) {
    if (through_degree > a.groebner_bound)
        throw std::invalid_argument("dimension: degree exceeds the Groebner bound");
    DimensionReport report;
    report.bound = through_degree;

    bool unit_reducible = false;
    for (std::size_t i = 0; i < a.basis.size(); ++i)
        if (a.tip(i).empty())
            unit_reducible = true;

    std::vector<Word> frontier;
    if (!unit_reducible) {
        frontier.push_back(Word{});
        report.counts.push_back(1);
        report.total = 1;
    } else {
        report.counts.push_back(0);
    }

    for (int d = 1; d <= through_degree && !frontier.empty(); ++d) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            for (int g = 0; g < static_cast<int>(a.gens.size()); ++g) {
                Word grown = w;
                grown.push_back(g);
                bool reducible = false;
                for (std::size_t i = 0; i < a.basis.size() && !reducible; ++i) {
                    const Word& t = a.tip(i);
                    if (t.size() <= grown.size() &&
                        detail::is_subword_at(grown, t, grown.size() - t.size()))
                        reducible = true;
                }
                if (!reducible)
                    next.push_back(std::move(grown));
            }
        }
        frontier = std::move(next);
        report.counts.push_back(static_cast<long long>(frontier.size()));
        report.total += static_cast<long long>(frontier.size());
        if (report.total > enumeration_budget) {
            report.truncated_by_budget = true;
            break;
        }
    }
    if (!report.truncated_by_budget)
        while (static_cast<int>(report.counts.size()) <= through_degree)
            report.counts.push_back(0);

    if (!a.complete_flag)
        report.kind = DimensionReport::Kind::UpperEstimate;
    else if (!report.truncated_by_budget &&
             std::find(report.counts.begin(), report.counts.end(), 0) != report.counts.end())
        report.kind = DimensionReport::Kind::Finite;
    else
        report.kind = DimensionReport::Kind::AtLeast;
    return report;
}

/// Irreducible words through the given degree, in (degree, lex) order.
inline std::vector<Word> irreducible_words(const FpAlgebra& a, int through_degree) {
    std::vector<Word> words;
    bool unit_reducible = false;
    for (std::size_t i = 0; i < a.basis.size(); ++i)
        if (a.tip(i).empty())
            unit_reducible = true;
    if (unit_reducible)
        return words;
    std::vector<Word> frontier = {Word{}};
    words.push_back(Word{});
    for (int d = 1; d <= through_degree && !frontier.empty(); ++d) {
        std::vector<Word> next;
        for (const auto& w : frontier)
            for (int g = 0; g < static_cast<int>(a.gens.size()); ++g) {
                Word grown = w;
                grown.push_back(g);
                bool reducible = false;
                for (std::size_t i = 0; i < a.basis.size() && !reducible; ++i) {
                    const Word& t = a.tip(i);
                    if (t.size() <= grown.size() &&
                        detail::is_subword_at(grown, t, grown.size() - t.size()))
                        reducible = true;
                }
                if (!reducible)
                    next.push_back(std::move(grown));
            }
        for (const auto& w : next)
            words.push_back(w);
        frontier = std::move(next);
    }
    return words;
}

// ---------------------------------------------------------------------------
// Map checking between finitely presented algebras.

struct MapCheckReport {
    bool well_defined = true;
    std::string violating_relation;
    bool surjective_up_to_bound = false;
    bool injective_up_to_bound = false;
    int bound = 0;
    bool bound_certified = true;  // both bases complete and images in range

    bool isomorphism_verdict() const {
        return well_defined && surjective_up_to_bound && injective_up_to_bound;
    }
};

/// Checks a generator assignment source -> target: well-definedness (each
/// relation maps to 0), and surjectivity/injectivity up to the common
/// bound by exact rank computations on normal forms.
inline MapCheckReport map_check(const FpAlgebra& source, const FpAlgebra& target,
                                const std::vector<NcPoly>& assignment) {
    if (assignment.size() != source.gens.size())
        throw std::invalid_argument("map_check: assignment size mismatch");
    MapCheckReport report;
    report.bound = std::min(source.groebner_bound, target.groebner_bound);
    report.bound_certified = source.complete_flag && target.complete_flag;

    auto apply = [&](const NcPoly& p) {
        NcPoly image;
        for (const auto& [w, c] : p) {
            NcPoly term = poly_one();
            for (int letter : w)
                term = poly_mul(term, assignment[static_cast<std::size_t>(letter)]);
            poly_add_scaled(image, c, term);
        }
        return normal_form(target, image);
    };

    for (const auto& r : source.relations) {
        if (!apply(r).empty()) {
            report.well_defined = false;
            report.violating_relation = poly_to_string(r, source.gens);
            return report;
        }
    }

    const auto source_words = irreducible_words(source, report.bound);
    const auto target_words = irreducible_words(target, report.bound);

    std::map<Word, int> coord;
    auto coord_of = [&coord](const Word& w) {
        auto it = coord.find(w);
        if (it == coord.end())
            it = coord.emplace(w, static_cast<int>(coord.size())).first;
        return it->second;
    };

    detail::Span image_span;
    bool all_independent = true;
    for (const auto& w : source_words) {
        NcPoly p = poly_one();
        for (int letter : w)
            p = poly_mul(p, assignment[static_cast<std::size_t>(letter)]);
        const NcPoly nf = normal_form(target, p);
        if (poly_degree(nf) > report.bound)
            report.bound_certified = false;
        SparseVector v;
        for (const auto& [word, c] : nf)
            v[coord_of(word)] = c;
        if (!image_span.insert(v, -1))
            all_independent = false;
    }
    report.injective_up_to_bound = all_independent;

    bool surjective = true;
    for (const auto& w : target_words) {
        SparseVector v;
        v[coord_of(w)] = Rational(1);
        if (!image_span.contains(v)) {
            surjective = false;
            break;
        }
    }
    report.surjective_up_to_bound = surjective;
    return report;
}

// ---------------------------------------------------------------------------
// Group-like elements for the degree-zero coproduct (each generator x is
// the reduced part of a group-like 1 + x, so the coproduct is the algebra
// map x -> x(x)1 + 1(x)x + x(x)x).

using TensorPoly = std::map<std::pair<Word, Word>, Rational>;

inline void tensor_add(TensorPoly& t, const Word& l, const Word& r, const Rational& c) {
    if (c == 0)
        return;
    auto key = std::make_pair(l, r);
    auto it = t.find(key);
    if (it == t.end()) {
        t.emplace(key, c);
    } else {
        it->second += c;
        if (it->second == 0)
            t.erase(it);
    }
}

/// Degree-zero coproduct of a polynomial, both tensor factors in normal
/// form with respect to the given algebra.
inline TensorPoly degree0_coproduct_of(const FpAlgebra& a, const NcPoly& p) {
    TensorPoly total;
    for (const auto& [w, c] : p) {
        // product over the letters of (x(x)1 + 1(x)x + x(x)x)
        TensorPoly acc;
        tensor_add(acc, Word{}, Word{}, Rational(1));
        for (int letter : w) {
            TensorPoly next;
            for (const auto& [lr, coeff] : acc) {
                Word l0 = lr.first, r0 = lr.second;
                Word lx = l0, rx = r0;
                lx.push_back(letter);
                rx.push_back(letter);
                tensor_add(next, lx, r0, coeff);
                tensor_add(next, l0, rx, coeff);
                tensor_add(next, lx, rx, coeff);
            }
            acc = std::move(next);
        }
        for (const auto& [lr, coeff] : acc)
            tensor_add(total, lr.first, lr.second, c * coeff);
    }
    // normal forms on both factors
    TensorPoly reduced;
    for (const auto& [lr, coeff] : total) {
        NcPoly l;
        l.emplace(lr.first, Rational(1));
        NcPoly r;
        r.emplace(lr.second, Rational(1));
        const NcPoly ln = normal_form(a, l);
        const NcPoly rn = normal_form(a, r);
        for (const auto& [lw, lc] : ln)
            for (const auto& [rw, rc] : rn)
                tensor_add(reduced, lw, rw, coeff * lc * rc);
    }
    return reduced;
}

/// Exact group-like test: coproduct(g) == g(x)g and counit(g) == 1.
inline bool is_grouplike(const FpAlgebra& a, const NcPoly& g) {
    if (constant_term(g) != 1)
        return false;
    TensorPoly lhs = degree0_coproduct_of(a, g);
    const NcPoly gn = normal_form(a, g);
    for (const auto& [lw, lc] : gn)
        for (const auto& [rw, rc] : gn)
            tensor_add(lhs, lw, rw, -lc * rc);
    return lhs.empty();
}

struct GrouplikeClosure {
    enum class Verdict { Group, Monoid, Unbounded } verdict = Verdict::Monoid;
    std::vector<NcPoly> elements;  // normal forms, discovery order; [0] is 1
    std::vector<int> inverse;      // index of the inverse, -1 when none found
    bool closed = false;
    bool all_verified_grouplike = true;
    std::string verification_witness;
    std::vector<std::vector<int>> mult;  // filled when closed

    bool is_group() const { return verdict == Verdict::Group; }
};

/// Closes {1} united with the seeds under normal-form multiplication, up to
/// element_bound elements. Each member is verified group-like exactly; the
/// verdict distinguishes a finite group, a finite monoid without inverses,
/// and a closure that did not terminate within the bound.
inline GrouplikeClosure grouplike_closure(const FpAlgebra& a, const std::vector<NcPoly>& seeds,
                                          int element_bound = 64) {
    GrouplikeClosure result;
    std::map<std::vector<std::pair<Word, Rational>>, int> seen;
    auto key_of = [](const NcPoly& p) {
        return std::vector<std::pair<Word, Rational>>(p.begin(), p.end());
    };
    auto add_element = [&](const NcPoly& p) -> int {
        const auto key = key_of(p);
        auto it = seen.find(key);
        if (it != seen.end())
            return it->second;
        const int index = static_cast<int>(result.elements.size());
        seen.emplace(key, index);
        result.elements.push_back(p);
        return index;
    };

    add_element(normal_form(a, poly_one()));
    for (const auto& s : seeds)
        add_element(normal_form(a, s));

    bool hit_bound = false;
    while (true) {
        const std::size_t count = result.elements.size();
        if (static_cast<int>(count) > element_bound) {
            hit_bound = true;
            break;
        }
        bool grew = false;
        for (std::size_t i = 0; i < count && !grew; ++i)
            for (std::size_t j = 0; j < count && !grew; ++j) {
                const NcPoly product = normal_form(a, poly_mul(result.elements[i], result.elements[j]));
                if (seen.find(key_of(product)) == seen.end()) {
                    add_element(product);
                    grew = true;
                }
            }
        if (!grew)
            break;
    }
    result.closed = !hit_bound;

    for (std::size_t i = 0; i < result.elements.size(); ++i) {
        if (!is_grouplike(a, result.elements[i])) {
            result.all_verified_grouplike = false;
            result.verification_witness = poly_to_string(result.elements[i], a.gens);
            break;
        }
    }

    const NcPoly one = normal_form(a, poly_one());
    result.inverse.assign(result.elements.size(), -1);
    for (std::size_t i = 0; i < result.elements.size(); ++i)
        for (std::size_t j = 0; j < result.elements.size(); ++j) {
            if (normal_form(a, poly_mul(result.elements[i], result.elements[j])) == one &&
                normal_form(a, poly_mul(result.elements[j], result.elements[i])) == one) {
                result.inverse[i] = static_cast<int>(j);
                break;
            }
        }

    const bool all_invertible =
        std::find(result.inverse.begin(), result.inverse.end(), -1) == result.inverse.end();
    if (!result.closed)
        result.verdict = GrouplikeClosure::Verdict::Unbounded;
    else if (all_invertible)
        result.verdict = GrouplikeClosure::Verdict::Group;
    else
        result.verdict = GrouplikeClosure::Verdict::Monoid;

    if (result.closed) {
        const std::size_t n = result.elements.size();
        result.mult.assign(n, std::vector<int>(n, -1));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const auto product = normal_form(a, poly_mul(result.elements[i], result.elements[j]));
                auto it = seen.find(key_of(product));
                result.mult[i][j] = it == seen.end() ? -1 : it->second;
            }
    }
    return result;
}

}  // namespace cobar
