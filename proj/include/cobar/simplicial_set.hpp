#pragma once

// Finite reduced simplicial sets, given by their nondegenerate simplices
// and face data. There is exactly one vertex; degeneracies are never
// materialized. A face entry is either the name of a nondegenerate simplex
// one degree down or the marker "*", meaning the face is degenerate (an
// iterated degeneracy; in degree 0 it is the base vertex itself). Faces of
// 1-simplices are always "*".
//
// Because a marker erases which simplex the face degenerates from, iterated
// faces through a marker are unknowable; validation and map checks compare
// composite faces only along marker-free paths.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cobar/rational.hpp"

namespace cobar {

inline const std::string kDegenerate = "*";

struct SimplicialSet {
    // simplices[n] = ordered names of nondegenerate n-simplices, n >= 1.
    // simplices[0] is kept empty; the unique vertex is implicit.
    std::vector<std::vector<std::string>> simplices;
    // name -> (n+1) face entries, each a name one degree down or "*".
    std::map<std::string, std::vector<std::string>> faces;

    int dimension_cap() const {
        for (int n = static_cast<int>(simplices.size()) - 1; n >= 1; --n)
            if (!simplices[n].empty())
                return n;
        return 0;
    }

    int degree_of(const std::string& name) const {
        for (int n = 1; n < static_cast<int>(simplices.size()); ++n)
            for (const auto& s : simplices[n])
                if (s == name)
                    return n;
        return -1;
    }

    int simplex_count(int degree) const {
        if (degree < 1 || degree >= static_cast<int>(simplices.size()))
            return 0;
        return static_cast<int>(simplices[degree].size());
    }
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> problems;

    void fail(std::string message) {
        ok = false;
        problems.push_back(std::move(message));
    }
};

namespace detail {

// Result of evaluating an iterated face: a concrete simplex name, a face
// known to be degenerate, or unknowable (path crossed a marker).
struct FaceValue {
    enum class Kind { Name, Degenerate, Unknown } kind;
    std::string name;

    static FaceValue named(std::string n) { return {Kind::Name, std::move(n)}; }
    static FaceValue degenerate() { return {Kind::Degenerate, {}}; }
    static FaceValue unknown() { return {Kind::Unknown, {}}; }
};

inline FaceValue face_of(const SimplicialSet& s, const FaceValue& v, int i, int result_degree) {
    if (v.kind != FaceValue::Kind::Name)
        return FaceValue::unknown();
    auto it = s.faces.find(v.name);
    if (it == s.faces.end() || i >= static_cast<int>(it->second.size()))
        return FaceValue::unknown();
    (void)result_degree;
    const std::string& entry = it->second[static_cast<std::size_t>(i)];
    if (entry == kDegenerate)
        return FaceValue::degenerate();
    return FaceValue::named(entry);
}

}  // namespace detail

/// Checks structural integrity and the simplicial identities
/// d_i d_j = d_{j-1} d_i (i < j) wherever both composites avoid markers.
inline ValidationReport validate(const SimplicialSet& s) {
    ValidationReport report;

    std::set<std::string> seen;
    for (int n = 1; n < static_cast<int>(s.simplices.size()); ++n) {
        for (const auto& name : s.simplices[n]) {
            if (name == kDegenerate || name.empty()) {
                report.fail("simplex name '" + name + "' is reserved or empty");
                continue;
            }
            if (!seen.insert(name).second)
                report.fail("duplicate simplex name '" + name + "'");
            auto it = s.faces.find(name);
            if (it == s.faces.end()) {
                report.fail("simplex '" + name + "' has no face data");
                continue;
            }
            if (static_cast<int>(it->second.size()) != n + 1) {
                report.fail("simplex '" + name + "' has " + std::to_string(it->second.size()) +
                            " faces, expected " + std::to_string(n + 1));
                continue;
            }
            for (int i = 0; i <= n; ++i) {
                const std::string& entry = it->second[static_cast<std::size_t>(i)];
                if (entry == kDegenerate)
                    continue;
                if (n == 1) {
                    report.fail("face " + std::to_string(i) + " of 1-simplex '" + name +
                                "' must be '*' (the base vertex)");
                    continue;
                }
                const auto& lower = s.simplices[n - 1];
                if (std::find(lower.begin(), lower.end(), entry) == lower.end())
                    report.fail("face " + std::to_string(i) + " of '" + name +
                                "' names unknown " + std::to_string(n - 1) + "-simplex '" + entry + "'");
            }
        }
    }
    for (const auto& [name, f] : s.faces) {
        (void)f;
        if (!seen.count(name))
            report.fail("face data for unknown simplex '" + name + "'");
    }
    if (!report.ok)
        return report;

    // Simplicial identities, meaningful from degree 3 up (below that the
    // composites land in the unique vertex).
    using detail::FaceValue;
    for (int n = 3; n < static_cast<int>(s.simplices.size()); ++n) {
        for (const auto& name : s.simplices[n]) {
            const FaceValue top = FaceValue::named(name);
            for (int j = 1; j <= n; ++j) {
                for (int i = 0; i < j; ++i) {
                    const FaceValue lhs = detail::face_of(s, detail::face_of(s, top, j, n - 1), i, n - 2);
                    const FaceValue rhs = detail::face_of(s, detail::face_of(s, top, i, n - 1), j - 1, n - 2);
                    if (lhs.kind == FaceValue::Kind::Unknown || rhs.kind == FaceValue::Kind::Unknown)
                        continue;
                    const bool equal = lhs.kind == rhs.kind && lhs.name == rhs.name;
                    if (!equal)
                        report.fail("simplicial identity d_" + std::to_string(i) + " d_" +
                                    std::to_string(j) + " = d_" + std::to_string(j - 1) + " d_" +
                                    std::to_string(i) + " fails on '" + name + "'");
                }
            }
        }
    }
    return report;
}

/// The one-point simplicial set.
inline SimplicialSet point() { return SimplicialSet{}; }

/// Minimal model of the n-sphere: one vertex, one nondegenerate n-simplex,
/// every face degenerate.
inline SimplicialSet minimal_sphere(int n) {
    if (n < 1)
        throw std::invalid_argument("minimal_sphere: n must be >= 1");
    SimplicialSet s;
    s.simplices.resize(static_cast<std::size_t>(n) + 1);
    const std::string name = "sigma" + std::to_string(n);
    s.simplices[static_cast<std::size_t>(n)].push_back(name);
    s.faces[name] = std::vector<std::string>(static_cast<std::size_t>(n) + 1, kDegenerate);
    return s;
}

// ---------------------------------------------------------------------------
// Finite groups by multiplication table.

struct GroupTable {
    int order = 0;
    std::vector<std::vector<int>> mult;
    int identity = 0;

    int product(int a, int b) const { return mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
};

inline ValidationReport validate(const GroupTable& g) {
    ValidationReport report;
    if (g.order <= 0) {
        report.fail("group order must be positive");
        return report;
    }
    if (static_cast<int>(g.mult.size()) != g.order) {
        report.fail("multiplication table has wrong row count");
        return report;
    }
    for (const auto& row : g.mult)
        if (static_cast<int>(row.size()) != g.order) {
            report.fail("multiplication table has a ragged row");
            return report;
        }
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            if (g.product(a, b) < 0 || g.product(a, b) >= g.order) {
                report.fail("table entry out of range at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
                return report;
            }
    if (g.identity < 0 || g.identity >= g.order) {
        report.fail("identity index out of range");
        return report;
    }
    for (int a = 0; a < g.order; ++a)
        if (g.product(g.identity, a) != a || g.product(a, g.identity) != a)
            report.fail("identity axiom fails at element " + std::to_string(a));
    for (int a = 0; a < g.order && report.ok; ++a) {
        bool has_inverse = false;
        for (int b = 0; b < g.order; ++b)
            if (g.product(a, b) == g.identity && g.product(b, a) == g.identity)
                has_inverse = true;
        if (!has_inverse)
            report.fail("element " + std::to_string(a) + " has no inverse");
    }
    for (int a = 0; a < g.order && report.ok; ++a)
        for (int b = 0; b < g.order && report.ok; ++b)
            for (int c = 0; c < g.order; ++c)
                if (g.product(g.product(a, b), c) != g.product(a, g.product(b, c))) {
                    report.fail("associativity fails at (" + std::to_string(a) + ", " + std::to_string(b) +
                                ", " + std::to_string(c) + ")");
                    break;
                }
    return report;
}

inline GroupTable cyclic_group(int n) {
    if (n < 1)
        throw std::invalid_argument("cyclic_group: order must be >= 1");
    GroupTable g;
    g.order = n;
    g.identity = 0;
    g.mult.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            g.mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    return g;
}

inline GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
    GroupTable g;
    g.order = a.order * b.order;
    g.identity = a.identity * b.order + b.identity;
    g.mult.assign(static_cast<std::size_t>(g.order), std::vector<int>(static_cast<std::size_t>(g.order)));
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y) {
            const int ax = x / b.order, bx = x % b.order;
            const int ay = y / b.order, by = y % b.order;
            g.mult[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
                a.product(ax, ay) * b.order + b.product(bx, by);
        }
    return g;
}

/// Symmetric group on n letters; elements are permutations in lexicographic
/// order, so index 0 is the identity.
inline GroupTable symmetric_group(int n) {
    if (n < 1 || n > 5)
        throw std::invalid_argument("symmetric_group: supported range is 1..5");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    std::map<std::vector<int>, int> index;
    for (int i = 0; i < static_cast<int>(perms.size()); ++i)
        index[perms[i]] = i;

    GroupTable g;
    g.order = static_cast<int>(perms.size());
    g.identity = 0;
    g.mult.assign(static_cast<std::size_t>(g.order), std::vector<int>(static_cast<std::size_t>(g.order)));
    for (int i = 0; i < g.order; ++i)
        for (int j = 0; j < g.order; ++j) {
            std::vector<int> composite(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k)
                composite[static_cast<std::size_t>(k)] =
                    perms[static_cast<std::size_t>(i)][static_cast<std::size_t>(
                        perms[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)])];
            g.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = index.at(composite);
        }
    return g;
}

/// Dihedral group of order 2n: elements r^k and r^k s, indices k and n + k.
inline GroupTable dihedral_group(int n) {
    if (n < 1)
        throw std::invalid_argument("dihedral_group: n must be >= 1");
    GroupTable g;
    g.order = 2 * n;
    g.identity = 0;
    g.mult.assign(static_cast<std::size_t>(g.order), std::vector<int>(static_cast<std::size_t>(g.order)));
    auto idx = [n](int rot, int flip) { return flip ? n + rot : rot; };
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b) {
            const int ra = a % n, fa = a / n;
            const int rb = b % n, fb = b / n;
            // (r^ra s^fa)(r^rb s^fb): s r^k = r^{-k} s
            const int rot = fa ? ((ra - rb) % n + n) % n : (ra + rb) % n;
            g.mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = idx(rot, fa ^ fb);
        }
    return g;
}

inline GroupTable quaternion_group() {
    // Elements 1, -1, i, -i, j, -j, k, -k.
    const int e = 0, m = 1, i = 2, mi = 3, j = 4, mj = 5, k = 6, mk = 7;
    auto neg = [&](int x) { return x ^ 1; };
    GroupTable g;
    g.order = 8;
    g.identity = e;
    g.mult.assign(8, std::vector<int>(8));
    auto base = [&](int x) { return x & ~1; };
    auto sign = [&](int x) { return x & 1; };
    auto mul_base = [&](int a, int b) -> int {
        if (a == e) return b;
        if (b == e) return a;
        if (a == b) return m;  // i*i = j*j = k*k = -1
        if (a == i && b == j) return k;
        if (a == j && b == k) return i;
        if (a == k && b == i) return j;
        if (a == j && b == i) return neg(k);
        if (a == k && b == j) return neg(i);
        if (a == i && b == k) return neg(j);
        throw std::logic_error("quaternion_group: unreachable");
    };
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int r = mul_base(base(a), base(b));
            if (sign(a) ^ sign(b))
                r = neg(r);
            // note -1 * -1 = 1 handled by sign xor with base product e
            g.mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = r;
        }
    return g;
}

/// True if some identity-preserving bijection turns table a into table b.
/// Brute force; intended for desk-scale orders.
inline bool tables_isomorphic(const GroupTable& a, const GroupTable& b) {
    if (a.order != b.order)
        return false;
    std::vector<int> others;
    for (int x = 0; x < a.order; ++x)
        if (x != a.identity)
            others.push_back(x);
    std::vector<int> targets;
    for (int x = 0; x < b.order; ++x)
        if (x != b.identity)
            targets.push_back(x);
    std::sort(targets.begin(), targets.end());
    do {
        std::vector<int> phi(static_cast<std::size_t>(a.order));
        phi[static_cast<std::size_t>(a.identity)] = b.identity;
        for (std::size_t t = 0; t < others.size(); ++t)
            phi[static_cast<std::size_t>(others[t])] = targets[t];
        bool good = true;
        for (int x = 0; x < a.order && good; ++x)
            for (int y = 0; y < a.order && good; ++y)
                if (phi[static_cast<std::size_t>(a.product(x, y))] !=
                    b.product(phi[static_cast<std::size_t>(x)], phi[static_cast<std::size_t>(y)]))
                    good = false;
        if (good)
            return true;
    } while (std::next_permutation(targets.begin(), targets.end()));
    return false;
}

// ---------------------------------------------------------------------------
// Nerve of a group, truncated.

namespace detail {

inline std::string bar_name(const std::vector<int>& tuple) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i)
            out << "|";
        out << tuple[i];
    }
    out << "]";
    return out.str();
}

}  // namespace detail

/// Nerve of a finite group, truncated at the given dimension (>= 2):
/// n-simplices are the n-tuples of non-identity elements [g1|...|gn], with
/// the bar-construction faces. A face whose inner product hits the identity
/// is degenerate.
inline SimplicialSet nerve(const GroupTable& g, int truncation) {
    const auto group_report = validate(g);
    if (!group_report.ok)
        throw std::invalid_argument("nerve: invalid group table: " + group_report.problems.front());
    if (truncation < 2)
        throw std::invalid_argument("nerve: truncation dimension must be >= 2");

    SimplicialSet s;
    s.simplices.resize(static_cast<std::size_t>(truncation) + 1);

    std::vector<int> nonidentity;
    for (int x = 0; x < g.order; ++x)
        if (x != g.identity)
            nonidentity.push_back(x);

    std::vector<std::vector<int>> tuples = {{}};
    for (int n = 1; n <= truncation; ++n) {
        std::vector<std::vector<int>> next;
        for (const auto& t : tuples)
            for (int x : nonidentity) {
                auto grown = t;
                grown.push_back(x);
                next.push_back(std::move(grown));
            }
        tuples = std::move(next);
        for (const auto& t : tuples) {
            const std::string name = detail::bar_name(t);
            s.simplices[static_cast<std::size_t>(n)].push_back(name);
            std::vector<std::string> face_list;
            for (int i = 0; i <= n; ++i) {
                std::vector<int> face;
                if (i == 0) {
                    face.assign(t.begin() + 1, t.end());
                } else if (i == n) {
                    face.assign(t.begin(), t.end() - 1);
                } else {
                    face.assign(t.begin(), t.end());
                    face[static_cast<std::size_t>(i - 1)] = g.product(t[static_cast<std::size_t>(i - 1)],
                                                                      t[static_cast<std::size_t>(i)]);
                    face.erase(face.begin() + i);
                }
                const bool degenerate =
                    face.empty() ||
                    std::find(face.begin(), face.end(), g.identity) != face.end();
                face_list.push_back(degenerate ? kDegenerate : detail::bar_name(face));
            }
            s.faces[name] = std::move(face_list);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Simplicial maps.

struct SimplicialMap {
    SimplicialSet source;
    SimplicialSet target;
    // per nondegenerate source simplex: target simplex of the same degree,
    // or "*" when the image is degenerate.
    std::map<std::string, std::string> assignment;

    std::string image_of(const std::string& name) const {
        auto it = assignment.find(name);
        return it == assignment.end() ? kDegenerate : it->second;
    }
};

/// Checks that the assignment commutes with faces wherever the composites
/// are determined (see the marker discussion at the top of this header).
inline ValidationReport validate(const SimplicialMap& f) {
    ValidationReport report;
    const auto src_report = validate(f.source);
    const auto dst_report = validate(f.target);
    if (!src_report.ok)
        report.fail("source does not validate: " + src_report.problems.front());
    if (!dst_report.ok)
        report.fail("target does not validate: " + dst_report.problems.front());
    if (!report.ok)
        return report;

    using detail::FaceValue;
    for (int n = 1; n < static_cast<int>(f.source.simplices.size()); ++n) {
        for (const auto& name : f.source.simplices[n]) {
            const std::string image = f.image_of(name);
            if (image == kDegenerate)
                continue;  // faces of an unidentified degeneracy are unknowable
            const auto& lower = f.target.simplices;
            if (n >= static_cast<int>(lower.size()) ||
                std::find(lower[n].begin(), lower[n].end(), image) == lower[n].end()) {
                report.fail("image of '" + name + "' is not a " + std::to_string(n) + "-simplex of the target");
                continue;
            }
            if (n == 1)
                continue;  // faces on both sides are the base vertex
            const auto& src_faces = f.source.faces.at(name);
            const auto& dst_faces = f.target.faces.at(image);
            for (int i = 0; i <= n; ++i) {
                // m(d_i sigma) vs d_i(m(sigma))
                const std::string& src_face = src_faces[static_cast<std::size_t>(i)];
                const std::string lhs = src_face == kDegenerate ? kDegenerate : f.image_of(src_face);
                const std::string& rhs = dst_faces[static_cast<std::size_t>(i)];
                if (lhs != rhs)
                    report.fail("face map does not commute on '" + name + "' at face " + std::to_string(i));
            }
        }
    }
    return report;
}

/// The unique map to the one-point simplicial set.
inline SimplicialMap collapse_map(const SimplicialSet& s) {
    SimplicialMap f;
    f.source = s;
    f.target = point();
    for (const auto& level : s.simplices)
        for (const auto& name : level)
            f.assignment[name] = kDegenerate;
    return f;
}

inline SimplicialMap identity_map(const SimplicialSet& s) {
    SimplicialMap f;
    f.source = s;
    f.target = s;
    for (const auto& level : s.simplices)
        for (const auto& name : level)
            f.assignment[name] = name;
    return f;
}

/// Simplicial map of nerves induced by a group homomorphism phi (given as
/// the image index of every source element). Only homomorphisms that send
/// non-identity tuples to all-identity or all-non-identity tuples are
/// representable here (injective ones always are); anything else is
/// rejected.
inline SimplicialMap nerve_map(const GroupTable& src, const GroupTable& dst, const std::vector<int>& phi,
                               int truncation) {
    if (static_cast<int>(phi.size()) != src.order)
        throw std::invalid_argument("nerve_map: homomorphism table has wrong size");
    for (int a = 0; a < src.order; ++a)
        for (int b = 0; b < src.order; ++b)
            if (phi[static_cast<std::size_t>(src.product(a, b))] !=
                dst.product(phi[static_cast<std::size_t>(a)], phi[static_cast<std::size_t>(b)]))
                throw std::invalid_argument("nerve_map: table is not a homomorphism");

    SimplicialMap f;
    f.source = nerve(src, truncation);
    f.target = nerve(dst, truncation);

    std::vector<int> nonidentity;
    for (int x = 0; x < src.order; ++x)
        if (x != src.identity)
            nonidentity.push_back(x);
    std::vector<std::vector<int>> tuples = {{}};
    for (int n = 1; n <= truncation; ++n) {
        std::vector<std::vector<int>> next;
        for (const auto& t : tuples)
            for (int x : nonidentity) {
                auto grown = t;
                grown.push_back(x);
                next.push_back(std::move(grown));
            }
        tuples = std::move(next);
        for (const auto& t : tuples) {
            std::vector<int> image(t.size());
            for (std::size_t i = 0; i < t.size(); ++i)
                image[i] = phi[static_cast<std::size_t>(t[i])];
            const int hits = static_cast<int>(
                std::count(image.begin(), image.end(), dst.identity));
            if (hits == 0) {
                f.assignment[detail::bar_name(t)] = detail::bar_name(image);
            } else if (hits == static_cast<int>(image.size())) {
                f.assignment[detail::bar_name(t)] = kDegenerate;
            } else {
                throw std::invalid_argument(
                    "nerve_map: homomorphism degenerates '" + detail::bar_name(t) +
                    "' onto a non-basepoint simplex; not representable with face data");
            }
        }
    }
    return f;
}

}  // namespace cobar
