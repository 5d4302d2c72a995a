#pragma once

// Noncommutative polynomials over Q in a fixed ordered list of generators.
// Words are sequences of generator indices; the monomial order is
// degree-lexicographic on (length, letter sequence), with the generator
// order giving the letter order. Polynomials are maps ordered descending,
// so begin() is the leading term.

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cobar/rational.hpp"

namespace cobar {

using Word = std::vector<int>;

struct DegLexGreater {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size())
            return a.size() > b.size();
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

/// Term map ordered with the leading (deglex-largest) word first.
using NcPoly = std::map<Word, Rational, DegLexGreater>;

inline void poly_add_term(NcPoly& p, const Word& w, const Rational& c) {
    if (c == 0)
        return;
    auto it = p.find(w);
    if (it == p.end()) {
        p.emplace(w, c);
    } else {
        it->second += c;
        if (it->second == 0)
            p.erase(it);
    }
}

inline void poly_add_scaled(NcPoly& p, const Rational& scale, const NcPoly& q) {
    if (scale == 0)
        return;
    for (const auto& [w, c] : q)
        poly_add_term(p, w, scale * c);
}

inline NcPoly poly_scale(NcPoly p, const Rational& scale) {
    if (scale == 0)
        return {};
    for (auto& [w, c] : p)
        c *= scale;
    return p;
}

inline NcPoly poly_mul(const NcPoly& a, const NcPoly& b) {
    NcPoly result;
    for (const auto& [u, cu] : a)
        for (const auto& [v, cv] : b) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            poly_add_term(result, w, cu * cv);
        }
    return result;
}

/// left * p * right with words as scalars-free monomial factors.
inline NcPoly word_poly_word(const Word& left, const NcPoly& p, const Word& right) {
    NcPoly result;
    for (const auto& [w, c] : p) {
        Word u = left;
        u.insert(u.end(), w.begin(), w.end());
        u.insert(u.end(), right.begin(), right.end());
        result.emplace(std::move(u), c);
    }
    return result;
}

inline NcPoly poly_one() {
    NcPoly p;
    p.emplace(Word{}, Rational(1));
    return p;
}

inline NcPoly poly_gen(int index) {
    NcPoly p;
    p.emplace(Word{index}, Rational(1));
    return p;
}

inline Rational constant_term(const NcPoly& p) {
    auto it = p.find(Word{});
    return it == p.end() ? Rational(0) : it->second;
}

inline int word_degree(const Word& w) { return static_cast<int>(w.size()); }

inline int poly_degree(const NcPoly& p) {
    return p.empty() ? -1 : word_degree(p.begin()->first);
}

// ---------------------------------------------------------------------------
// Text form: terms "c*g1.g2.g3" joined by "+" / "-"; a bare rational is a
// constant term; a term without "c*" has coefficient 1.

inline void check_generator_name(const std::string& name) {
    if (name.empty())
        throw std::invalid_argument("generator name must be nonempty");
    for (char ch : name)
        if (ch == '.' || ch == '*' || ch == '+' || ch == '-' || ch == '/' || ch == ' ' || ch == '\t')
            throw std::invalid_argument("generator name '" + name + "' contains a reserved character");
    if (name.find_first_not_of("0123456789") == std::string::npos)
        throw std::invalid_argument("generator name '" + name + "' looks like a number");
}

inline std::string poly_to_string(const NcPoly& p, const std::vector<std::string>& gens) {
    if (p.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, c] : p) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative)
                out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        if (w.empty()) {
            out << mag.str();
            continue;
        }
        if (mag != 1)
            out << mag.str() << "*";
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i)
                out << ".";
            out << gens[static_cast<std::size_t>(w[i])];
        }
    }
    return out.str();
}

inline NcPoly parse_poly(const std::string& text, const std::vector<std::string>& gens) {
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(gens.size()); ++i)
        index[gens[static_cast<std::size_t>(i)]] = i;

    NcPoly result;
    std::string term;
    Rational sign(1);
    auto flush = [&]() {
        std::string t;
        for (char ch : term)
            if (ch != ' ' && ch != '\t')
                t.push_back(ch);
        term.clear();
        if (t.empty())
            return;
        Rational coeff(1);
        std::string words = t;
        const auto star = t.find('*');
        if (star != std::string::npos) {
            coeff = parse_rational(t.substr(0, star));
            words = t.substr(star + 1);
        } else if (t.find_first_not_of("0123456789/") == std::string::npos) {
            poly_add_term(result, Word{}, sign * parse_rational(t));
            return;
        }
        Word w;
        std::size_t start = 0;
        while (start <= words.size()) {
            const auto dot = words.find('.', start);
            const std::string name = words.substr(start, dot == std::string::npos ? dot : dot - start);
            auto it = index.find(name);
            if (it == index.end())
                throw std::invalid_argument("parse_poly: unknown generator '" + name + "'");
            w.push_back(it->second);
            if (dot == std::string::npos)
                break;
            start = dot + 1;
        }
        poly_add_term(result, w, sign * coeff);
    };

    bool expecting_term_start = true;
    for (char ch : text) {
        if (ch == '+' && !expecting_term_start) {
            flush();
            sign = Rational(1);
            expecting_term_start = true;
        } else if (ch == '-' && !expecting_term_start) {
            flush();
            sign = Rational(-1);
            expecting_term_start = true;
        } else if (ch == '-' && expecting_term_start && term.find_first_not_of(" \t") == std::string::npos) {
            sign = -sign;
        } else {
            term.push_back(ch);
            if (ch != ' ' && ch != '\t')
                expecting_term_start = false;
        }
    }
    flush();
    return result;
}

}  // namespace cobar
