#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polyring.hpp"
#include "ring_fixtures.hpp"

using namespace kres::poly;
using kres::lin::Field;
using kres::lin::Scalar;

namespace {
const std::vector<std::string> XYZW = {"x", "y", "z", "w"};

Monomial mono(std::vector<uint32_t> e) { return Monomial{std::move(e)}; }
}  // namespace

TEST_CASE("monomial enumeration is lex-descending") {
    auto deg2 = monomials_of_degree(4, 2);
    REQUIRE(deg2.size() == 10);
    CHECK(deg2.front() == mono({2, 0, 0, 0}));
    CHECK(deg2[1] == mono({1, 1, 0, 0}));
    CHECK(deg2[4] == mono({0, 2, 0, 0}));
    CHECK(deg2.back() == mono({0, 0, 0, 2}));
    for (size_t i = 0; i + 1 < deg2.size(); ++i) CHECK(deg2[i + 1] < deg2[i]);
}

TEST_CASE("parse_polynomial grammar") {
    Field QQ = Field::rationals();
    Polynomial p = parse_polynomial("z^3 - x*y^2", XYZW, QQ);
    REQUIRE(p.terms().size() == 2);
    CHECK(p.terms().at(mono({0, 0, 3, 0})) == Scalar::from_int(QQ, 1));
    CHECK(p.terms().at(mono({1, 2, 0, 0})) == Scalar::from_int(QQ, -1));

    Polynomial x = parse_polynomial("x", XYZW, QQ);
    REQUIRE(x.terms().size() == 1);
    CHECK(x.terms().at(mono({1, 0, 0, 0})) == Scalar::from_int(QQ, 1));

    Polynomial q = parse_polynomial("3/2*x*y - y^2", XYZW, QQ);
    REQUIRE(q.terms().size() == 2);
    CHECK(q.terms().at(mono({1, 1, 0, 0})).str() == "3/2");
    CHECK(q.terms().at(mono({0, 2, 0, 0})).str() == "-1");

    // cancelling terms vanish; repeated factors multiply out
    CHECK(parse_polynomial("x*y - y*x", XYZW, QQ).is_zero());
    Polynomial cube = parse_polynomial("x*x*x", XYZW, QQ);
    CHECK(cube.terms().count(mono({3, 0, 0, 0})) == 1);

    CHECK_THROWS_WITH_AS(parse_polynomial("a^2", XYZW, QQ),
                         doctest::Contains("column 1"), kres::Error);
    CHECK_THROWS_WITH_AS(parse_polynomial("x^", XYZW, QQ),
                         doctest::Contains("column"), kres::Error);
    CHECK_THROWS_AS(parse_polynomial("", XYZW, QQ), kres::Error);
    CHECK_THROWS_AS(parse_polynomial("3*", XYZW, QQ), kres::Error);
    CHECK_THROWS_AS(parse_polynomial("3", XYZW, QQ), kres::Error);
    CHECK_THROWS_AS(parse_polynomial("x +", XYZW, QQ), kres::Error);
}

TEST_CASE("variables are matched longest-first") {
    Field QQ = Field::rationals();
    std::vector<std::string> vars = {"x", "x1"};
    Polynomial p = parse_polynomial("x1*x^2", vars, QQ);
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms().count(mono({2, 1})) == 1);
}

TEST_CASE("massey4 ring dimensions and normal monomials") {
    auto R = fixtures::massey4();
    CHECK(R.artinian());
    CHECK(R.socle_degree() == 5);
    CHECK(R.codepth() == 4);
    std::vector<size_t> dims;
    for (int j = 0; j <= 6; ++j) dims.push_back(R.dim(j));
    CHECK(dims == std::vector<size_t>{1, 4, 9, 12, 9, 2, 0});
    CHECK(R.dim(9) == 0);

    // degree-3 normal-form monomial basis, in chart order
    const auto& d3 = R.degree_data(3);
    std::vector<std::string> names;
    for (size_t c : d3.normal_cols) names.push_back(d3.monomials[c].str(XYZW));
    CHECK(names == std::vector<std::string>{"x^2*y", "x^2*z", "x^2*w", "x*y*z", "x*y*w",
                                            "x*z^2", "x*z*w", "y^2*z", "y*z^2", "y*z*w", "z^3",
                                            "z^2*w"});

    // degree-5 basis
    const auto& d5 = R.degree_data(5);
    std::vector<std::string> top;
    for (size_t c : d5.normal_cols) top.push_back(d5.monomials[c].str(XYZW));
    CHECK(top == std::vector<std::string>{"x^2*y*z*w", "x*z^4"});
}

TEST_CASE("build_quotient rejects invalid input") {
    Field QQ = Field::rationals();
    CHECK_THROWS_AS(GradedQuotientRing::build({"x"}, QQ, {"x^2 + x"}, {}), kres::Error);  // inhomogeneous
    CHECK_THROWS_AS(GradedQuotientRing::build({"x", "y"}, QQ, {"x"}, {}), kres::Error);   // degree < 2
    CHECK_THROWS_AS(GradedQuotientRing::build({"x"}, QQ, {"x - x"}, {}), kres::Error);    // zero
    CHECK_THROWS_AS(GradedQuotientRing::build({"x", "x"}, QQ, {"x^2"}, {}), kres::Error); // dup var
    // non-artinian without a cutoff
    CHECK_THROWS_AS(GradedQuotientRing::build({"x", "y"}, QQ, {"x^2", "x*y"}, {}), kres::Error);
}

TEST_CASE("trivial artinian rings") {
    auto R = fixtures::ci1();
    CHECK(R.dim(0) == 1);
    CHECK(R.dim(1) == 1);
    CHECK(R.dim(2) == 0);
    CHECK(R.socle_degree() == 1);

    auto G = fixtures::golod2();
    CHECK(G.dim(1) == 2);
    CHECK(G.socle_degree() == 1);
}

TEST_CASE("multiplication reduces to normal form") {
    auto R = fixtures::massey4();
    Field QQ = Field::rationals();

    RingElement one = R.one();
    RingElement z3 = R.element_from(parse_polynomial("z^3", XYZW, QQ));
    CHECK(R.multiply(one, z3) == z3);

    // z^3 = x*y^2 in R since z^3 - x*y^2 lies in the ideal
    RingElement xy2 = R.element_from(parse_polynomial("x*y^2", XYZW, QQ));
    CHECK(z3 == xy2);
    CHECK(!z3.is_zero());

    RingElement z = R.element_from(parse_polynomial("z", XYZW, QQ));
    RingElement z2 = R.element_from(parse_polynomial("z^2", XYZW, QQ));
    CHECK(R.multiply(z, R.multiply(z, z)) == z3);
    CHECK(R.multiply(z2, z) == z3);

    auto C = fixtures::ci1();
    RingElement x = C.element_from(parse_polynomial("x", {"x"}, QQ));
    CHECK(C.multiply(x, x).is_zero());
}

TEST_CASE("multiplication is associative and commutative on random elements") {
    auto R = fixtures::massey4();
    Field QQ = Field::rationals();
    std::mt19937_64 rng(314159);
    std::uniform_int_distribution<int> cdist(-3, 3);
    auto random_element = [&](int maxdeg) {
        RingElement e;
        for (int j = 1; j <= maxdeg; ++j) {
            kres::lin::Vec v(R.dim(j), Scalar::zero(QQ));
            for (auto& s : v) s = Scalar::from_int(QQ, cdist(rng));
            e.comp[j] = v;
        }
        e.prune();
        return e;
    };
    for (int trial = 0; trial < 8; ++trial) {
        RingElement a = random_element(2), b = random_element(2), c = random_element(1);
        CHECK(R.multiply(a, b) == R.multiply(b, a));
        CHECK(R.multiply(R.multiply(a, b), c) == R.multiply(a, R.multiply(b, c)));
    }
}

TEST_CASE("ideal membership: random monomial multiples of generators vanish") {
    auto R = fixtures::massey4();
    Field QQ = Field::rationals();
    std::mt19937_64 rng(2718);
    const auto& gens = R.generators();
    for (int trial = 0; trial < 32; ++trial) {
        const Polynomial& g = gens[rng() % gens.size()];
        int dg = *g.homogeneous_degree();
        int extra = static_cast<int>(rng() % 3);
        if (dg + extra > R.socle_degree()) extra = 0;
        auto monos = monomials_of_degree(4, extra);
        const Monomial& mu = monos[rng() % monos.size()];
        Polynomial prod(QQ, 4);
        for (const auto& [m, c] : g.terms()) prod.add_term(mu.times(m), c);
        CHECK(R.element_from(prod).is_zero());
    }
}

TEST_CASE("normal forms are linear") {
    auto R = fixtures::massey4();
    Field QQ = Field::rationals();
    Polynomial a = parse_polynomial("x*y + 2*z^2", XYZW, QQ);
    Polynomial b = parse_polynomial("z^2 - 3*x*w", XYZW, QQ);
    Polynomial sum = a;
    for (const auto& [m, c] : b.terms()) sum.add_term(m, c * Scalar::from_int(QQ, 5));
    RingElement lhs = R.element_from(sum);
    RingElement rhs = R.element_from(a);
    rhs += R.element_from(b) * Scalar::from_int(QQ, 5);
    CHECK(lhs == rhs);
}

TEST_CASE("hilbert function values") {
    auto R = fixtures::massey4();
    CHECK(R.dim(3) == 12);
    CHECK(R.dim(0) == 1);
    CHECK(fixtures::golod2().dim(1) == 2);
}

TEST_CASE("non-artinian ring with cutoff") {
    auto R = fixtures::nonart2(6);
    CHECK(!R.artinian());
    CHECK(R.cutoff() == 6);
    CHECK(R.codepth() == 2);
    std::vector<size_t> dims;
    for (int j = 0; j <= 6; ++j) dims.push_back(R.dim(j));
    CHECK(dims == std::vector<size_t>{1, 2, 1, 1, 1, 1, 1});
    CHECK_THROWS_AS(R.dim(7), kres::Error);

    // multiplication past the cutoff is an error, not silently wrong
    Field QQ = Field::rationals();
    RingElement y6 = R.element_from(parse_polynomial("y^6", {"x", "y"}, QQ));
    RingElement y = R.element_from(parse_polynomial("y", {"x", "y"}, QQ));
    CHECK_THROWS_AS(R.multiply(y6, y), kres::Error);
}

TEST_CASE("cubic6 rings have the expected low-degree Hilbert function") {
    auto R = fixtures::cubic6(1, 6);
    CHECK(!R.artinian());
    CHECK(R.dim(0) == 1);
    CHECK(R.dim(1) == 4);
    CHECK(R.dim(2) == 10);
    CHECK(R.dim(3) == 14);  // 20 monomials minus 6 independent cubics
    CHECK(R.codepth() == 4);
}

TEST_CASE("prime field quotient") {
    Field F5 = Field::prime(5);
    auto R = GradedQuotientRing::build({"x", "y"}, F5, {"x^2 + 2*y^2", "x*y"}, {});
    CHECK(R.artinian());
    CHECK(R.dim(1) == 2);
    // x^2 = -2 y^2 = 3 y^2, and x*y = 0, so y^3 spans degree 3? y^3 = y*y^2;
    // x^2*y = 3y^3 and x^3 = 3 x y^2 = 0. The ring is k[x,y]/(x^2+2y^2, xy).
    CHECK(R.dim(2) == 1);
}
