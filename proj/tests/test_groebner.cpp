#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cobar/groebner.hpp"
#include "cobar/simplicial_set.hpp"

using namespace cobar;

namespace {

NcPoly P(const std::string& text, const std::vector<std::string>& gens) { return parse_poly(text, gens); }

/// Presentation of the group algebra Q[G] on generators x_g (g != e) with
/// relations x_g.x_h - x_{gh} + x_g + x_h (x_e read as 0). This is the
/// degree-zero cobar presentation of the nerve; used here as a convenient
/// source of finite-dimensional algebras.
FpAlgebra group_algebra_presentation(const GroupTable& g, int bound) {
    std::vector<std::string> gens;
    std::vector<int> gen_of(static_cast<std::size_t>(g.order), -1);
    for (int x = 0; x < g.order; ++x) {
        if (x == g.identity)
            continue;
        gen_of[static_cast<std::size_t>(x)] = static_cast<int>(gens.size());
        gens.push_back("g" + std::to_string(x));
    }
    std::vector<NcPoly> rels;
    for (int x = 0; x < g.order; ++x) {
        if (x == g.identity)
            continue;
        for (int y = 0; y < g.order; ++y) {
            if (y == g.identity)
                continue;
            NcPoly r;
            poly_add_term(r, Word{gen_of[static_cast<std::size_t>(x)], gen_of[static_cast<std::size_t>(y)]},
                          Rational(1));
            poly_add_term(r, Word{gen_of[static_cast<std::size_t>(x)]}, Rational(1));
            poly_add_term(r, Word{gen_of[static_cast<std::size_t>(y)]}, Rational(1));
            const int product = g.product(x, y);
            if (product != g.identity)
                poly_add_term(r, Word{gen_of[static_cast<std::size_t>(product)]}, Rational(-1));
            rels.push_back(std::move(r));
        }
    }
    return groebner(gens, rels, bound);
}

}  // namespace

TEST_CASE("polynomial text round trip") {
    const std::vector<std::string> gens = {"x", "y"};
    const auto p = P("x.x - 2*x + 3/4", gens);
    CHECK(p.size() == 3);
    CHECK(p.at(Word{0, 0}) == 1);
    CHECK(p.at(Word{0}) == -2);
    CHECK(constant_term(p) == Rational(3, 4));
    CHECK(parse_poly(poly_to_string(p, gens), gens) == p);
    CHECK(poly_to_string(NcPoly{}, gens) == "0");
}

TEST_CASE("single quadratic relation is already a basis") {
    const std::vector<std::string> gens = {"x"};
    const auto a = groebner(gens, {P("x.x - 2*x", gens)}, 8);
    CHECK(a.complete_flag);
    REQUIRE(a.basis.size() == 1);
    CHECK(poly_to_string(a.basis[0], gens) == "x.x - 2*x");
    CHECK(normal_form(a, P("x.x", gens)) == P("2*x", gens));
    CHECK(normal_form(a, P("1", gens)) == poly_one());
    CHECK(normal_form(a, P("x.x.x", gens)) == P("4*x", gens));

    const auto dims = dimension(a, 6);
    CHECK(dims.finite());
    CHECK(dims.total == 2);
    CHECK(dims.counts[0] == 1);
    CHECK(dims.counts[1] == 1);
    CHECK(dims.counts[2] == 0);
}

TEST_CASE("no relations gives the free algebra") {
    const std::vector<std::string> gens = {"x"};
    const auto a = groebner(gens, {}, 8);
    CHECK(a.complete_flag);
    const auto dims = dimension(a, 6);
    CHECK(dims.kind == DimensionReport::Kind::AtLeast);
    for (int d = 0; d <= 6; ++d)
        CHECK(dims.counts[static_cast<std::size_t>(d)] == 1);
}

TEST_CASE("Laurent relations xy = yx = 1") {
    const std::vector<std::string> gens = {"x", "y"};
    const auto a = groebner(gens, {P("x.y - 1", gens), P("y.x - 1", gens)}, 8);
    CHECK(a.complete_flag);
    const auto dims = dimension(a, 6);
    CHECK(dims.kind == DimensionReport::Kind::AtLeast);
    CHECK(dims.counts[0] == 1);
    for (int d = 1; d <= 6; ++d)
        CHECK(dims.counts[static_cast<std::size_t>(d)] == 2);  // x^d and y^d
}

TEST_CASE("commutative relations count like polynomial algebras") {
    // x_i x_j = x_j x_i: irreducible words per degree must match monomial
    // counts C(n + d - 1, d).
    for (int n = 2; n <= 3; ++n) {
        std::vector<std::string> gens;
        for (int i = 0; i < n; ++i)
            gens.push_back("x" + std::to_string(i));
        std::vector<NcPoly> rels;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) {
                NcPoly r;
                poly_add_term(r, Word{i, j}, Rational(1));
                poly_add_term(r, Word{j, i}, Rational(-1));
                rels.push_back(std::move(r));
            }
        const auto a = groebner(gens, rels, 7);
        CHECK(a.complete_flag);
        const auto dims = dimension(a, 6);
        auto binom = [](long long a_, long long b_) {
            long long r = 1;
            for (long long k = 1; k <= b_; ++k)
                r = r * (a_ - b_ + k) / k;
            return r;
        };
        for (int d = 0; d <= 6; ++d)
            CHECK(dims.counts[static_cast<std::size_t>(d)] == binom(n + d - 1, d));
    }
}

TEST_CASE("group algebra presentations have dimension |G|") {
    const std::vector<GroupTable> tables = {
        cyclic_group(2), cyclic_group(3), cyclic_group(4),
        direct_product(cyclic_group(2), cyclic_group(2)),
        cyclic_group(5), cyclic_group(6), symmetric_group(3)};
    for (const auto& g : tables) {
        const auto a = group_algebra_presentation(g, 8);
        CHECK(a.complete_flag);
        const auto dims = dimension(a, 8);
        CHECK(dims.finite());
        CHECK(dims.total == g.order);
    }
}

TEST_CASE("normal form is confluent within the bound") {
    const auto a = group_algebra_presentation(cyclic_group(3), 8);
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> len(0, 3);
    std::uniform_int_distribution<int> letter(0, 1);
    auto random_poly = [&]() {
        NcPoly p;
        for (int t = 0; t < 4; ++t) {
            Word w;
            const int l = len(rng);
            for (int i = 0; i < l; ++i)
                w.push_back(letter(rng));
            poly_add_term(p, w, Rational(coeff(rng)));
        }
        return p;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random_poly();
        const auto q = random_poly();
        const auto lhs = normal_form(a, poly_mul(p, q));
        const auto rhs = normal_form(a, poly_mul(normal_form(a, p), normal_form(a, q)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("map check: identity is an isomorphism") {
    const auto a = group_algebra_presentation(cyclic_group(3), 8);
    std::vector<NcPoly> id;
    for (int i = 0; i < 2; ++i)
        id.push_back(poly_gen(i));
    const auto report = map_check(a, a, id);
    CHECK(report.well_defined);
    CHECK(report.surjective_up_to_bound);
    CHECK(report.injective_up_to_bound);
    CHECK(report.isomorphism_verdict());
}

TEST_CASE("map check: collapse to the scalars is surjective but not injective") {
    const std::vector<std::string> gens = {"x"};
    const auto a = groebner(gens, {P("x.x - 2*x", gens)}, 8);
    const auto scalars = groebner({}, {}, 8);
    const auto report = map_check(a, scalars, {NcPoly{}});
    CHECK(report.well_defined);
    CHECK(report.surjective_up_to_bound);
    CHECK_FALSE(report.injective_up_to_bound);
}

TEST_CASE("map check: Z/2 into Z/4 is injective but not surjective") {
    const auto a = group_algebra_presentation(cyclic_group(2), 8);
    const auto b = group_algebra_presentation(cyclic_group(4), 8);
    // generator of Z/2 goes to the square h^2, which is generator index 1
    const auto report = map_check(a, b, {poly_gen(1)});
    CHECK(report.well_defined);
    CHECK(report.injective_up_to_bound);
    CHECK_FALSE(report.surjective_up_to_bound);
    CHECK_FALSE(report.isomorphism_verdict());
}

TEST_CASE("map check: ill-defined assignments are reported") {
    const auto a = group_algebra_presentation(cyclic_group(2), 8);
    const auto free_target = groebner({"y"}, {}, 8);
    const auto report = map_check(a, free_target, {poly_gen(0)});
    CHECK_FALSE(report.well_defined);
    CHECK_FALSE(report.violating_relation.empty());
}

TEST_CASE("group-like closure of a group algebra recovers the group") {
    const std::vector<GroupTable> tables = {cyclic_group(2), cyclic_group(3), cyclic_group(4),
                                            direct_product(cyclic_group(2), cyclic_group(2)),
                                            cyclic_group(5), cyclic_group(6), symmetric_group(3)};
    for (const auto& g : tables) {
        const auto a = group_algebra_presentation(g, 8);
        std::vector<NcPoly> seeds;
        for (int i = 0; i < static_cast<int>(a.gens.size()); ++i) {
            NcPoly s = poly_one();
            poly_add_term(s, Word{i}, Rational(1));
            seeds.push_back(std::move(s));
        }
        const auto closure = grouplike_closure(a, seeds);
        REQUIRE(closure.is_group());
        CHECK(closure.all_verified_grouplike);
        CHECK(static_cast<int>(closure.elements.size()) == g.order);
        GroupTable recovered;
        recovered.order = static_cast<int>(closure.elements.size());
        recovered.mult = closure.mult;
        recovered.identity = 0;
        CHECK(validate(recovered).ok);
        CHECK(tables_isomorphic(recovered, g));
    }
}

TEST_CASE("group-like closure of the free algebra is an inverse-free monoid") {
    const auto a = groebner({"x"}, {}, 8);
    NcPoly seed = poly_one();
    poly_add_term(seed, Word{0}, Rational(1));
    const auto closure = grouplike_closure(a, {seed}, 12);
    CHECK(closure.verdict == GrouplikeClosure::Verdict::Unbounded);
    CHECK_FALSE(closure.closed);
    CHECK(closure.all_verified_grouplike);
    // 1 + x has no inverse in a free algebra
    CHECK(closure.inverse[1] == -1);
}

TEST_CASE("group-like closure of the scalars is the trivial group") {
    const auto a = groebner({}, {}, 4);
    const auto closure = grouplike_closure(a, {});
    CHECK(closure.is_group());
    CHECK(closure.elements.size() == 1);
}
