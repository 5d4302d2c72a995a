#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cobar/cobar.hpp"

using namespace cobar;

TEST_CASE("cobar of the minimal 2-sphere is a polynomial-size tensor algebra") {
    const auto t = cobar_complex(normalized_chains(minimal_sphere(2)), 5, 5);
    REQUIRE(t.letters.size() == 1);
    CHECK(t.letter_degree[0] == 1);
    for (int d = 0; d <= 5; ++d) {
        CHECK(t.dim(d) == 1);  // the single word u^d
        CHECK_FALSE(t.truncated[static_cast<std::size_t>(d)]);
        CHECK_FALSE(t.escape[static_cast<std::size_t>(d)]);
    }
    for (int n = 2; n <= 5; ++n)
        CHECK(t.d_at(n).is_zero());
    CHECK(t.d1.is_zero());
}

TEST_CASE("cobar of the point is the unit word alone") {
    const auto t = cobar_complex(normalized_chains(point()), 3, 3);
    CHECK(t.dim(0) == 1);
    for (int d = 1; d <= 3; ++d)
        CHECK(t.dim(d) == 0);
}

TEST_CASE("cobar differential of the Z/2 nerve matches the hand expansion") {
    // Letters: x = s[1] (degree 0), w = s[1|1] (degree 1).
    // D(w) = -s(del [1|1]) - (s (x) s)(AW) = -2 x - x.x
    const auto t = cobar_complex(normalized_chains(nerve(cyclic_group(2), 2)), 2, 6);
    REQUIRE(t.letters.size() == 2);
    const int x = t.letter_of(BasisRef{1, 0});
    const int w = t.letter_of(BasisRef{2, 0});
    const auto& dw = t.letter_d[static_cast<std::size_t>(w)];
    REQUIRE(dw.size() == 2);
    CHECK(dw.at(Word{x}) == -2);
    CHECK(dw.at(Word{x, x}) == -1);
    CHECK(t.letter_d[static_cast<std::size_t>(x)].empty());
    // with degree-zero letters every degree is length-truncated
    CHECK(t.truncated[0]);
    CHECK(t.truncated[1]);
}

TEST_CASE("D squared vanishes on corpus inputs") {
    const std::vector<SimplicialSet> corpus = {
        minimal_sphere(1), minimal_sphere(2), minimal_sphere(3),
        nerve(cyclic_group(2), 3), nerve(cyclic_group(3), 3),
    };
    for (const auto& s : corpus) {
        const auto t = cobar_complex(normalized_chains(s), 2, 4);
        const auto report = check_d_squared(t);
        CHECK(report.ok);
    }
    // a bigger group at tighter length bounds
    const auto t = cobar_complex(normalized_chains(nerve(symmetric_group(3), 2)), 2, 2);
    CHECK(check_d_squared(t).ok);
}

TEST_CASE("a flipped coproduct sign inside the cobar differential is caught") {
    auto t = cobar_complex(normalized_chains(nerve(cyclic_group(2), 3)), 3, 5);
    const int v = t.letter_of(BasisRef{3, 0});
    auto& dv = t.letter_d[static_cast<std::size_t>(v)];
    REQUIRE_FALSE(dv.empty());
    dv.begin()->second = -dv.begin()->second;
    const auto report = check_d_squared(t);
    CHECK_FALSE(report.ok);
    CHECK_FALSE(report.first_failure.empty());
}

TEST_CASE("D is a derivation for the Koszul sign") {
    const auto t = cobar_complex(normalized_chains(nerve(cyclic_group(3), 3)), 4, 6);
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<int> letter(0, static_cast<int>(t.letters.size()) - 1);
    std::uniform_int_distribution<int> len(0, 2);
    auto random_word = [&]() {
        Word w;
        const int l = len(rng);
        for (int i = 0; i < l; ++i)
            w.push_back(letter(rng));
        return w;
    };
    auto degree_of = [&](const Word& w) {
        int d = 0;
        for (int l : w)
            d += t.letter_degree[static_cast<std::size_t>(l)];
        return d;
    };
    for (int trial = 0; trial < 60; ++trial) {
        const Word a = random_word();
        const Word b = random_word();
        Word ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        auto lhs = detail::formal_differential(t, ab);
        // D(a).b + (-1)^{|a|} a.D(b)
        std::map<Word, Rational> rhs;
        for (const auto& [u, c] : detail::formal_differential(t, a)) {
            Word w = u;
            w.insert(w.end(), b.begin(), b.end());
            rhs[w] += c;
            if (rhs[w] == 0)
                rhs.erase(w);
        }
        const Rational sign = degree_of(a) % 2 == 0 ? Rational(1) : Rational(-1);
        for (const auto& [u, c] : detail::formal_differential(t, b)) {
            Word w = a;
            w.insert(w.end(), u.begin(), u.end());
            rhs[w] += sign * c;
            if (rhs[w] == 0)
                rhs.erase(w);
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("h0 presentation of the Z/2 nerve") {
    const auto p = h0_presentation(normalized_chains(nerve(cyclic_group(2), 2)));
    REQUIRE(p.generators == std::vector<std::string>{"[1]"});
    REQUIRE(p.relations.size() == 1);
    // -x.x - 2x, i.e. monically x^2 + 2x
    CHECK(p.relations[0].at(Word{0, 0}) == -1);
    CHECK(p.relations[0].at(Word{0}) == -2);

    const auto a = h0_algebra(p, 8);
    CHECK(a.complete_flag);
    const auto dims = dimension(a, 8);
    CHECK(dims.finite());
    CHECK(dims.total == 2);
    // (1+x)^2 = 1 in the quotient: the group-like has order 2
    NcPoly one_plus_x = poly_one();
    poly_add_term(one_plus_x, Word{0}, Rational(1));
    CHECK(normal_form(a, poly_mul(one_plus_x, one_plus_x)) == poly_one());
}

TEST_CASE("h0 presentation of the minimal circle is free on one generator") {
    const auto p = h0_presentation(normalized_chains(minimal_sphere(1)));
    CHECK(p.generators.size() == 1);
    CHECK(p.relations.empty());
}

TEST_CASE("h0 presentation of the minimal 2-sphere is the scalars") {
    const auto p = h0_presentation(normalized_chains(minimal_sphere(2)));
    CHECK(p.generators.empty());
    CHECK(p.relations.empty());
}

TEST_CASE("h0 dimension equals the group order for nerves of small groups") {
    const std::vector<GroupTable> tables = {cyclic_group(2), cyclic_group(3), cyclic_group(4),
                                            direct_product(cyclic_group(2), cyclic_group(2)),
                                            cyclic_group(5), cyclic_group(6), symmetric_group(3)};
    for (const auto& g : tables) {
        const auto p = h0_presentation(normalized_chains(nerve(g, 2)));
        const auto a = h0_algebra(p, 8);
        const auto dims = dimension(a, 8);
        CHECK(dims.finite());
        CHECK(dims.total == g.order);
    }
}

TEST_CASE("degree-zero coproduct descends for nerves and pins the sign") {
    const auto p = h0_presentation(normalized_chains(nerve(cyclic_group(2), 2)));
    const auto a = h0_algebra(p, 8);
    CHECK(degree0_coproduct_descends(a).descends);

    // With the opposite quadratic sign (relation x^2 - 2x) the coproduct
    // does not descend; this is what fixes the convention.
    const auto wrong = groebner(p.generators, {parse_poly("[1].[1] - 2*[1]", p.generators)}, 8);
    CHECK_FALSE(degree0_coproduct_descends(wrong).descends);
}

TEST_CASE("group-like closure through the cobar pipeline recovers Z/3") {
    const auto p = h0_presentation(normalized_chains(nerve(cyclic_group(3), 2)));
    const auto a = h0_algebra(p, 8);
    const auto closure = grouplike_closure(a, grouplike_seeds(a));
    REQUIRE(closure.is_group());
    GroupTable recovered{static_cast<int>(closure.elements.size()), closure.mult, 0};
    CHECK(tables_isomorphic(recovered, cyclic_group(3)));
}

TEST_CASE("simply connected truncations are exact when L covers the degrees") {
    const auto t = cobar_complex(normalized_chains(minimal_sphere(3)), 6, 4);
    for (int d = 0; d <= 6; ++d) {
        CHECK_FALSE(t.truncated[static_cast<std::size_t>(d)]);
        CHECK_FALSE(t.escape[static_cast<std::size_t>(d)]);
    }
    // dims: words in one letter of cobar degree 2
    for (int d = 0; d <= 6; ++d)
        CHECK(t.dim(d) == (d % 2 == 0 ? 1 : 0));
}

TEST_CASE("the word budget guards runaway enumerations") {
    const auto c = normalized_chains(nerve(symmetric_group(3), 2));
    CHECK_THROWS_AS(cobar_complex(c, 4, 8, 1000), CobarBudgetExceeded);
}
