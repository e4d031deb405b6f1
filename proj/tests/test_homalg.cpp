#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "homalg.hpp"
#include "ring_fixtures.hpp"

using namespace kres::homalg;
using kres::koszul::KoszulComplex;
using kres::koszul::KoszulElement;
using kres::lin::Scalar;
using kres::lin::Vec;
using kres::poly::parse_polynomial;

namespace {

KoszulElement elem(const KoszulComplex& K, int hdeg, uint32_t mask, const std::string& coeff) {
    return K.from_polynomial_coeff(hdeg, mask,
                                   parse_polynomial(coeff, K.ring().vars(), K.ring().field()));
}

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

struct Massey4 {
    kres::poly::GradedQuotientRing R = fixtures::massey4();
    KoszulComplex K{R};
    HomologyAlgebra H{K};
};

}  // namespace

TEST_CASE("homology ranks of the flagship ring") {
    Massey4 fx;
    CHECK(fx.H.rank(0) == 1);
    CHECK(fx.H.rank(1) == 7);
    CHECK(fx.H.rank(2) == 15);
    CHECK(fx.H.rank(3) == 14);
    CHECK(fx.H.rank(4) == 5);

    // degree distribution of A_1 and membership of [w T_4]
    const auto& A1 = fx.H.piece(1);
    CHECK(A1.degrees == std::vector<int>{2, 3, 3, 3, 3, 4, 4});
    Vec cls = fx.H.class_of(1, elem(fx.K, 1, 0b1000, "w"));
    CHECK(!vec_is_zero(cls));
    // the degree-two part of A_1 is one-dimensional, so the class sits there
    for (size_t k = 1; k < cls.size(); ++k) CHECK(cls[k].is_zero());
    CHECK(!cls[0].is_zero());
}

TEST_CASE("small-ring homology ranks") {
    auto C = fixtures::ci1();
    KoszulComplex KC(C);
    HomologyAlgebra HC(KC);
    CHECK(HC.rank(1) == 1);

    auto G = fixtures::golod2();
    KoszulComplex KG(G);
    HomologyAlgebra HG(KG);
    CHECK(HG.rank(1) == 3);
    CHECK(HG.rank(2) == 2);
}

TEST_CASE("class_of: boundaries vanish, basis classes are unit vectors") {
    Massey4 fx;
    // x^2 y^2 T_12 = d(x z^2 T_123) is a boundary
    CHECK(fx.H.class_vanishes(2, elem(fx.K, 2, 0b0011, "x^2*y^2")));

    for (int i = 1; i <= 4; ++i) {
        const auto& p = fx.H.piece(i);
        for (size_t k = 0; k < p.rank; ++k) {
            Vec cls = fx.H.class_of(i, p.reps[k]);
            for (size_t m = 0; m < p.rank; ++m)
                CHECK(cls[m] == (m == k ? Scalar::one(fx.R.field())
                                        : Scalar::zero(fx.R.field())));
        }
    }

    KoszulElement notcycle = elem(fx.K, 1, 0b0001, "x");  // d = x^2 != 0
    CHECK_THROWS_AS(fx.H.class_of(1, notcycle), kres::Error);
}

TEST_CASE("product ranks of the flagship ring") {
    Massey4 fx;
    CHECK(fx.H.q(1, 1) == 7);
    CHECK(fx.H.q(1, 2) == 10);
    CHECK(fx.H.q(1, 3) == 0);
    CHECK(fx.H.q(2, 2) == 2);
    CHECK(fx.H.z2_indices().size() == 8);
    CHECK(fx.H.z3_indices().size() == 4);
}

TEST_CASE("products vanish on the Golod ring") {
    auto G = fixtures::golod2();
    KoszulComplex K(G);
    HomologyAlgebra H(K);
    CHECK(H.q(1, 1) == 0);
    CHECK(H.q(1, 2) == 0);
    // brute force: all pairwise wedges of basis reps are boundaries
    for (const auto& u : H.piece(1).reps)
        for (const auto& v : H.piece(1).reps) CHECK(H.class_vanishes(2, K.wedge(u, v)));
}

TEST_CASE("graded commutativity on all basis pairs") {
    Massey4 fx;
    for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {1, 3}, {2, 2}}) {
        const auto& pi = fx.H.piece(i);
        const auto& pj = fx.H.piece(j);
        for (const auto& u : pi.reps)
            for (const auto& v : pj.reps) {
                Vec uv = fx.H.class_of(i + j, fx.K.wedge(u, v));
                Vec vu = fx.H.class_of(i + j, fx.K.wedge(v, u));
                int sign = (i * j) % 2 == 0 ? 1 : -1;
                for (size_t m = 0; m < uv.size(); ++m) {
                    Scalar expect = sign == 1 ? vu[m] : -vu[m];
                    CHECK(uv[m] == expect);
                }
            }
    }
}

TEST_CASE("completing classes stay independent from the products (z1z2 scalar check)") {
    Massey4 fx;
    // columns: all product classes [z_i z_j] followed by the z^2 unit classes;
    // any vanishing combination must have zero coefficients on the z^2 part
    const auto& A1 = fx.H.piece(1);
    size_t a1 = A1.rank;
    const auto& z2 = fx.H.z2_indices();
    size_t cols = a1 * a1 + z2.size();
    kres::lin::Matrix m(fx.R.field(), fx.H.rank(2), cols);
    for (size_t i = 0; i < a1; ++i)
        for (size_t j = 0; j < a1; ++j) {
            Vec cls = fx.H.class_of(2, fx.K.wedge(A1.reps[i], A1.reps[j]));
            for (size_t r = 0; r < cls.size(); ++r) m.at(r, i * a1 + j) = cls[r];
        }
    for (size_t l = 0; l < z2.size(); ++l) m.at(z2[l], a1 * a1 + l) = Scalar::one(fx.R.field());
    auto ker = kres::lin::kernel_basis(m);
    for (const Vec& v : ker.basis())
        for (size_t l = 0; l < z2.size(); ++l) CHECK(v[a1 * a1 + l].is_zero());
}

TEST_CASE("kernel of phi_1 and the pi~3 lifts") {
    Massey4 fx;
    const P1Family& fam = fx.H.p1();
    CHECK(fam.count == 42);  // a_1^2 - q_11
    const auto& lifts = fx.H.pi3();
    REQUIRE(lifts.size() == 42);

    const auto& A1 = fx.H.piece(1);
    bool some_nonzero = false;
    for (size_t s = 0; s < fam.count; ++s) {
        KoszulElement sum = fx.K.zero(2);
        for (size_t i = 0; i < A1.rank; ++i) sum += fx.K.wedge(A1.reps[i], fam.reps[s][i]);
        CHECK(fx.K.differential(lifts[s]) == sum);
        if (sum.is_zero()) CHECK(lifts[s].is_zero());  // deterministic zero lift
        some_nonzero = some_nonzero || !sum.is_zero();
        CHECK(lifts[s].in_mk(1));
    }
    CHECK(some_nonzero);  // this ring has nontrivial K_2-level products
}

TEST_CASE("kernel of phi_1 is everything when q_11 = 0") {
    auto G = fixtures::golod2();
    KoszulComplex K(G);
    HomologyAlgebra H(K);
    CHECK(H.p1().count == 9);  // a_1^2
}

TEST_CASE("phi_2 splitting and both routes to b") {
    Massey4 fx;
    const Phi2Split& split = fx.H.phi2_split();
    CHECK(split.b == 0);
    CHECK(split.b_vectors.size() == 46);
    CHECK(fx.H.coker_psi_rank() == 0);
    CHECK(split.b == fx.H.coker_psi_rank());

    // q_11 = 0 forces Span(A) = 0 and b = 0
    auto G = fixtures::golod2();
    KoszulComplex KG(G);
    HomologyAlgebra HG(KG);
    const Phi2Split& gs = HG.phi2_split();
    CHECK(gs.span_A.rank() == 0);
    CHECK(gs.b == 0);
    CHECK(HG.coker_psi_rank() == 0);
    CHECK(gs.b_vectors.size() == HG.rank(1) * HG.rank(2));

    // complete intersection k[x,y]/(x^2,y^2): q_11 = 1 and psi is onto
    auto C2 = fixtures::ci2();
    KoszulComplex KC(C2);
    HomologyAlgebra HC(KC);
    CHECK(HC.q(1, 1) == 1);
    CHECK(HC.coker_psi_rank() == 0);
    CHECK(HC.phi2_split().b == 0);
}

TEST_CASE("pi~4 lifts satisfy their defining identity") {
    Massey4 fx;
    const Phi2Split& split = fx.H.phi2_split();
    const auto& lifts = fx.H.pi4();
    REQUIRE(lifts.size() == split.b_vectors.size());
    const auto& A1 = fx.H.piece(1);
    for (size_t u = 0; u < lifts.size(); ++u) {
        KoszulElement sum = fx.K.zero(3);
        for (size_t i = 0; i < A1.rank; ++i) sum += fx.K.wedge(A1.reps[i], split.p2_reps[u][i]);
        CHECK(fx.K.differential(lifts[u]) == sum);
        if (sum.is_zero()) CHECK(lifts[u].is_zero());
        CHECK(lifts[u].in_mk(1));
    }
}

TEST_CASE("triple Massey product of the flagship ring") {
    Massey4 fx;
    KoszulElement x = elem(fx.K, 1, 0b0001, "x^2");  // z^1_2 of the published basis
    KoszulElement y = elem(fx.K, 1, 0b0010, "y^2");  // z^1_4
    KoszulElement z = elem(fx.K, 1, 0b1000, "w");    // z^1_1

    MasseyTriple t = fx.H.massey_triple(x, y, z);
    CHECK(t.indeterminacy.rank() == 0);  // A_1 · A_3 = 0 here
    Vec expected = fx.H.class_of(4, elem(fx.K, 4, 0b1111, "x*z^2*w"));
    CHECK(t.cls == expected);
    CHECK(!vec_is_zero(t.cls));

    // not inside A_1·A_3 + A_2·A_2
    auto products = kres::lin::subspace_sum(fx.H.product_subspace(1, 3),
                                            fx.H.product_subspace(2, 2));
    CHECK(!products.contains(t.cls));

    // different lift choices move the representative inside the indeterminacy
    // (here: not at all)
    KoszulElement xy = fx.K.wedge(x, y);
    KoszulElement lift = fx.K.lift_boundary(3, xy);
    KoszulElement cycle = fx.H.piece(3).reps[2];  // any cycle perturbation
    KoszulElement perturbed = lift;
    perturbed += cycle;
    KoszulElement rep2 = fx.K.wedge(perturbed, z);
    rep2 += fx.K.wedge(x, fx.K.lift_boundary(3, fx.K.wedge(y, z)));
    Vec cls2 = fx.H.class_of(4, rep2);
    Vec diff = cls2;
    for (size_t m = 0; m < diff.size(); ++m) diff[m] -= t.cls[m];
    Vec reduced = fx.H.massey_span().accumulated.reduce(diff);
    CHECK(vec_is_zero(reduced));

    // zero input gives the zero class
    MasseyTriple zt = fx.H.massey_triple(fx.K.zero(1), y, z);
    CHECK(vec_is_zero(zt.cls));

    // rejected when the pairwise products do not vanish
    KoszulElement z5 = elem(fx.K, 1, 0b0001, "y^2");
    z5 += elem(fx.K, 1, 0b0100, "z^2") * Scalar::from_int(fx.R.field(), -1);
    CHECK_THROWS_AS(fx.H.massey_triple(z, elem(fx.K, 1, 0b0100, "x^2"), z5), kres::Error);
}

TEST_CASE("massey span and the degree-four decomposition") {
    Massey4 fx;
    const MasseySpan& ms = fx.H.massey_span();
    CHECK(ms.a == 3);
    Vec massey_cls = fx.H.class_of(4, elem(fx.K, 4, 0b1111, "x*z^2*w"));
    CHECK(ms.accumulated.contains(massey_cls));
    CHECK(ms.span.contains(massey_cls));
    CHECK(fx.H.z4_indices().size() == 2);  // a_4 - a

    // every span generator of this ring is exhibited by a basis triple
    for (bool flag : ms.exhibited_by_basis_triple) CHECK(flag);
}

TEST_CASE("trivial span for trivial rings") {
    auto C = fixtures::ci1();
    KoszulComplex K(C);
    HomologyAlgebra H(K);
    const MasseySpan& ms = H.massey_span();
    CHECK(ms.a == 0);
    CHECK(ms.span.rank() == 0);
}

TEST_CASE("stored distinguished elements live in mK") {
    Massey4 fx;
    for (int i = 1; i <= 4; ++i)
        for (const auto& rep : fx.H.piece(i).reps) CHECK(rep.in_mk(1));
    for (const auto& e : fx.H.pi3()) CHECK(e.in_mk(1));
    for (const auto& e : fx.H.pi4()) CHECK(e.in_mk(1));
}

TEST_CASE("non-artinian rings: ranks, products, and the massey span") {
    for (int variant : {1, 2}) {
        auto R = fixtures::cubic6(variant);
        KoszulComplex K(R);
        HomologyAlgebra H(K);
        CHECK(H.rank(1) == 6);
        CHECK(H.rank(2) == 10 + variant);
        CHECK(H.rank(3) == 7 + variant);
        CHECK(H.rank(4) == 2);
        CHECK(H.q(1, 1) == 0);
        CHECK(H.q(1, 2) == 0);
        CHECK(H.q(1, 3) == 0);
        CHECK(H.q(2, 2) == 0);
        CHECK(H.coker_psi_rank() == 0);
        CHECK(H.phi2_split().b == 0);
        const MasseySpan& ms = H.massey_span();
        CHECK(ms.span.rank() == 1);
        CHECK(ms.a == 1);
    }
}
