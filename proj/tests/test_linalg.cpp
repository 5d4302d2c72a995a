#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "cobar/linalg.hpp"

using namespace cobar;

namespace {

SparseMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 5);
    std::uniform_int_distribution<int> fill(0, 2);
    SparseMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (fill(rng) != 0)
                m.set(i, j, Rational(num(rng), den(rng)));
    return m;
}

}  // namespace

TEST_CASE("rref of the identity is the identity") {
    const auto m = SparseMatrix::identity(2);
    const auto r = rref(m);
    CHECK(r.matrix == m);
    CHECK(r.pivot_cols == std::vector<int>{0, 1});
    CHECK(r.rank == 2);
}

TEST_CASE("rref of the zero matrix") {
    const SparseMatrix m(3, 3);
    const auto r = rref(m);
    CHECK(r.matrix.is_zero());
    CHECK(r.pivot_cols.empty());
    CHECK(r.rank == 0);
}

TEST_CASE("rref eliminates a dependent row") {
    const auto m = SparseMatrix::from_dense({{1, 2}, {2, 4}});
    const auto r = rref(m);
    CHECK(r.rank == 1);
    CHECK(r.matrix == SparseMatrix::from_dense({{1, 2}, {0, 0}}));
}

TEST_CASE("rref is idempotent") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = random_matrix(rng, 5, 7);
        const auto once = rref(m);
        const auto twice = rref(once.matrix);
        CHECK(once.matrix == twice.matrix);
        CHECK(once.rank == twice.rank);
    }
}

TEST_CASE("kernel of identity is empty") {
    CHECK(kernel_basis(SparseMatrix::identity(4)).empty());
}

TEST_CASE("kernel of the zero map is the standard basis") {
    const auto basis = kernel_basis(SparseMatrix(2, 3));
    REQUIRE(basis.size() == 3);
    for (int i = 0; i < 3; ++i) {
        REQUIRE(basis[i].size() == 1);
        CHECK(basis[i].at(i) == 1);
    }
}

TEST_CASE("kernel of a rank-one row") {
    const auto basis = kernel_basis(SparseMatrix::from_dense({{1, 1}}));
    REQUIRE(basis.size() == 1);
    // (1, -1) up to scale
    const auto& v = basis[0];
    CHECK(v.at(0) * Rational(-1) == v.at(1));
}

TEST_CASE("rank plus nullity equals column count") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = random_matrix(rng, 4, 6);
        const auto r = rref(m);
        CHECK(r.rank + static_cast<int>(kernel_basis(m).size()) == m.cols());
    }
}

TEST_CASE("homology of the zero complex is the whole space") {
    const SparseMatrix d_in(3, 0);
    const SparseMatrix d_out(0, 3);
    const auto h = homology_at(d_in, d_out);
    CHECK(h.dimension() == 3);
    CHECK(h.boundary_basis.empty());
}

TEST_CASE("homology vanishes when the outgoing differential is injective") {
    const SparseMatrix d_in(2, 0);
    const auto d_out = SparseMatrix::from_dense({{1, 0}, {0, 1}, {1, 1}});
    CHECK(homology_at(d_in, d_out).dimension() == 0);
}

TEST_CASE("multiplication by 2 has full rank over Q") {
    const auto d_in = SparseMatrix::from_dense({{2}});
    const SparseMatrix d_out(0, 1);
    const auto h = homology_at(d_in, d_out);
    CHECK(h.dimension() == 0);
    CHECK(h.cycle_basis.size() == 1);
}

TEST_CASE("homology rejects a broken differential") {
    const auto d_in = SparseMatrix::from_dense({{1}, {0}});
    const auto d_out = SparseMatrix::from_dense({{1, 0}});
    CHECK_THROWS_AS(homology_at(d_in, d_out), std::invalid_argument);
}

TEST_CASE("homology dimension matches the rank computation") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        // Build d_out first, then a d_in whose columns are random cycles.
        const auto d_out = random_matrix(rng, 3, 5);
        const auto cycles = kernel_basis(d_out);
        if (cycles.empty())
            continue;
        std::uniform_int_distribution<int> pick(-2, 2);
        std::vector<SparseVector> cols;
        for (int j = 0; j < 4; ++j) {
            SparseVector col;
            for (const auto& c : cycles)
                vec_add_scaled(col, Rational(pick(rng)), c);
            cols.push_back(std::move(col));
        }
        const auto d_in = SparseMatrix::from_columns(cols, 5);
        const auto h = homology_at(d_in, d_out);
        const int expected = static_cast<int>(cycles.size()) - rref(d_in).rank;
        CHECK(h.dimension() == expected);
    }
}

TEST_CASE("induced map of the identity is the identity") {
    const auto d_out = SparseMatrix::from_dense({{0, 0, 0}});
    const SparseMatrix d_in(3, 0);
    const auto h = homology_at(d_in, d_out);
    const auto m = induced_map_on_homology(SparseMatrix::identity(3), h, h);
    CHECK(m == SparseMatrix::identity(3));
}

TEST_CASE("induced map of the zero map is zero") {
    const SparseMatrix d_in(2, 0);
    const SparseMatrix d_out(0, 2);
    const auto h = homology_at(d_in, d_out);
    const auto m = induced_map_on_homology(SparseMatrix(2, 2), h, h);
    CHECK(m.is_zero());
    CHECK(m.rows() == 2);
}

TEST_CASE("induced map sees multiplication by 3 on a one-dimensional homology") {
    const SparseMatrix d_in(1, 0);
    const SparseMatrix d_out(0, 1);
    const auto h = homology_at(d_in, d_out);
    const auto m = induced_map_on_homology(SparseMatrix::from_dense({{3}}), h, h);
    CHECK(m == SparseMatrix::from_dense({{3}}));
}

TEST_CASE("induced map rejects a non-chain map") {
    // Boundary space is spanned by e0; a map sending it off the boundary
    // space of the target must be refused.
    const auto d_in = SparseMatrix::from_dense({{1}, {0}});
    const SparseMatrix d_out(0, 2);
    const auto h = homology_at(d_in, d_out);
    const auto swap = SparseMatrix::from_dense({{0, 1}, {1, 0}});
    CHECK_THROWS_AS(induced_map_on_homology(swap, h, h), std::invalid_argument);
}

TEST_CASE("rational products agree with integer cross-multiplication") {
    using BigInt = boost::multiprecision::cpp_int;
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_matrix(rng, 3, 4);
        const auto b = random_matrix(rng, 4, 3);
        const auto c = a * b;
        // Independent route: clear denominators, multiply with cpp_int.
        Integer da = 1, db = 1;
        for (const auto& [rc, v] : a.entries())
            da = lcm(da, denominator(v));
        for (const auto& [rc, v] : b.entries())
            db = lcm(db, denominator(v));
        std::vector<std::vector<BigInt>> ia(3, std::vector<BigInt>(4)), ib(4, std::vector<BigInt>(3));
        for (const auto& [rc, v] : a.entries())
            ia[rc.first][rc.second] = BigInt((numerator(v) * (da / denominator(v))).str());
        for (const auto& [rc, v] : b.entries())
            ib[rc.first][rc.second] = BigInt((numerator(v) * (db / denominator(v))).str());
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                BigInt acc = 0;
                for (int k = 0; k < 4; ++k)
                    acc += ia[i][k] * ib[k][j];
                const Rational expected = Rational(Integer(acc.str())) / (Rational(da) * Rational(db));
                CHECK(c.get(i, j) == expected);
            }
        }
    }
}
