#include <catch2/catch_amalgamated.hpp>

#include "cobar/simplicial_set.hpp"

using namespace cobar;

TEST_CASE("minimal spheres validate") {
    for (int n = 1; n <= 4; ++n) {
        const auto s = minimal_sphere(n);
        CHECK(validate(s).ok);
        CHECK(s.dimension_cap() == n);
        CHECK(s.simplex_count(n) == 1);
    }
    CHECK_THROWS_AS(minimal_sphere(0), std::invalid_argument);
}

TEST_CASE("a constructed identity violation is reported with the simplex name") {
    // Two 2-simplices with different non-degenerate faces, glued into a
    // 3-simplex whose face data breaks d_0 d_1 = d_0 d_0.
    SimplicialSet s;
    s.simplices.resize(4);
    s.simplices[1] = {"a", "b"};
    s.simplices[2] = {"p", "q"};
    s.simplices[3] = {"t"};
    s.faces["a"] = {"*", "*"};
    s.faces["b"] = {"*", "*"};
    s.faces["p"] = {"a", "a", "b"};
    s.faces["q"] = {"b", "b", "a"};
    s.faces["t"] = {"p", "q", "p", "q"};
    const auto report = validate(s);
    CHECK_FALSE(report.ok);
    bool names_t = false;
    for (const auto& msg : report.problems)
        if (msg.find("'t'") != std::string::npos)
            names_t = true;
    CHECK(names_t);
}

TEST_CASE("missing face data is reported") {
    SimplicialSet s;
    s.simplices.resize(2);
    s.simplices[1] = {"a"};
    CHECK_FALSE(validate(s).ok);
}

TEST_CASE("nerve of the trivial group is the point") {
    const auto s = nerve(cyclic_group(1), 3);
    CHECK(validate(s).ok);
    CHECK(s.dimension_cap() == 0);
}

TEST_CASE("nerve of Z/2 truncated at 2") {
    const auto s = nerve(cyclic_group(2), 2);
    REQUIRE(validate(s).ok);
    CHECK(s.simplex_count(1) == 1);
    CHECK(s.simplex_count(2) == 1);
    // the single 2-simplex [1|1] has degenerate middle face [1*1] = [e]
    const auto& faces = s.faces.at("[1|1]");
    CHECK(faces[0] == "[1]");
    CHECK(faces[1] == "*");
    CHECK(faces[2] == "[1]");
}

TEST_CASE("nerve of Z/3 truncated at 3 has the expected counts") {
    const auto s = nerve(cyclic_group(3), 3);
    REQUIRE(validate(s).ok);
    CHECK(s.simplex_count(1) == 2);
    CHECK(s.simplex_count(2) == 4);
    CHECK(s.simplex_count(3) == 8);
}

TEST_CASE("nerves of every group of order at most 8 validate") {
    std::vector<GroupTable> tables;
    for (int n = 1; n <= 8; ++n)
        tables.push_back(cyclic_group(n));
    tables.push_back(direct_product(cyclic_group(2), cyclic_group(2)));
    tables.push_back(direct_product(cyclic_group(2), cyclic_group(4)));
    tables.push_back(direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2))));
    tables.push_back(symmetric_group(3));
    tables.push_back(dihedral_group(4));
    tables.push_back(quaternion_group());
    for (const auto& g : tables) {
        REQUIRE(validate(g).ok);
        CHECK(validate(nerve(g, 3)).ok);
    }
}

TEST_CASE("group table validation rejects broken tables") {
    GroupTable g = cyclic_group(3);
    g.mult[1][1] = 1;  // 1+1 = 1 breaks cancellation
    CHECK_FALSE(validate(g).ok);

    GroupTable h = cyclic_group(2);
    h.identity = 1;
    CHECK_FALSE(validate(h).ok);
}

TEST_CASE("collapse map validates") {
    for (const auto& s : {minimal_sphere(2), nerve(cyclic_group(2), 3)}) {
        const auto f = collapse_map(s);
        CHECK(validate(f).ok);
    }
    const auto id = identity_map(nerve(cyclic_group(3), 2));
    CHECK(validate(id).ok);
}

TEST_CASE("nerve map of an injective homomorphism validates") {
    // Z/2 -> Z/4 sending the generator to the square.
    const auto f = nerve_map(cyclic_group(2), cyclic_group(4), {0, 2}, 2);
    REQUIRE(validate(f).ok);
    CHECK(f.image_of("[1]") == "[2]");
    CHECK(f.image_of("[1|1]") == "[2|2]");
}

TEST_CASE("nerve map to the trivial group collapses everything") {
    const auto f = nerve_map(cyclic_group(2), cyclic_group(1), {0, 0}, 2);
    CHECK(validate(f).ok);
    CHECK(f.image_of("[1|1]") == "*");
}

TEST_CASE("nerve map rejects non-homomorphisms and mixed degeneracies") {
    CHECK_THROWS_AS(nerve_map(cyclic_group(2), cyclic_group(4), {0, 1}, 2), std::invalid_argument);
    // Z/4 -> Z/2 is a homomorphism but degenerates [1|2] onto a
    // non-basepoint simplex.
    CHECK_THROWS_AS(nerve_map(cyclic_group(4), cyclic_group(2), {0, 1, 0, 1}, 2), std::invalid_argument);
}

TEST_CASE("a broken simplicial map is rejected") {
    SimplicialMap f = identity_map(nerve(cyclic_group(3), 2));
    f.assignment["[1|1]"] = "[1|2]";  // faces no longer commute
    CHECK_FALSE(validate(f).ok);
}

TEST_CASE("table isomorphism testing distinguishes the two groups of order 4") {
    const auto z4 = cyclic_group(4);
    const auto klein = direct_product(cyclic_group(2), cyclic_group(2));
    CHECK(tables_isomorphic(z4, z4));
    CHECK(tables_isomorphic(klein, klein));
    CHECK_FALSE(tables_isomorphic(z4, klein));
    CHECK(tables_isomorphic(symmetric_group(3), dihedral_group(3)));
}
