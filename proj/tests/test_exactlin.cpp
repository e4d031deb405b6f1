#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "exactlin.hpp"

using namespace kres::lin;

namespace {

Scalar q(long long n, long long d = 1) {
    Scalar s = Scalar::from_int(Field::rationals(), n);
    return s / Scalar::from_int(Field::rationals(), d);
}

Matrix mat(size_t rows, size_t cols, std::vector<long long> vals) {
    Matrix m(Field::rationals(), rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) m.at(r, c) = q(vals[r * cols + c]);
    return m;
}

Vec vec(std::vector<long long> vals) {
    Vec v;
    for (long long x : vals) v.push_back(q(x));
    return v;
}

Matrix random_matrix(std::mt19937_64& rng, size_t rows, size_t cols) {
    std::uniform_int_distribution<int> d(-4, 4);
    Matrix m(Field::rationals(), rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) m.at(r, c) = q(d(rng));
    return m;
}

}  // namespace

TEST_CASE("scalar arithmetic over QQ and GF(p)") {
    Field QQ = Field::rationals();
    CHECK((q(1, 3) + q(2, 5)).str() == "11/15");
    CHECK((q(-4, 6)).str() == "-2/3");
    CHECK(Scalar::parse(QQ, "3/2").str() == "3/2");
    CHECK(Scalar::parse(QQ, "-7").str() == "-7");
    CHECK_THROWS_AS(Scalar::parse(QQ, "x"), kres::Error);

    Field F7 = Field::prime(7);
    Scalar a = Scalar::from_int(F7, 5), b = Scalar::from_int(F7, 4);
    CHECK((a * b).residue() == 6);
    CHECK((a / b).residue() == 3);  // 5 * 4^{-1} = 5*2 = 10 = 3
    CHECK((-a).residue() == 2);
    CHECK(Scalar::parse(F7, "1/2").residue() == 4);
    CHECK_THROWS_AS(Field::prime(6), kres::Error);
}

TEST_CASE("rref forced examples") {
    // rank-1 forced
    Rref r1 = rref(mat(2, 2, {1, 2, 2, 4}));
    CHECK(r1.pivots == std::vector<size_t>{0});
    CHECK(r1.reduced.at(0, 1) == q(2));
    CHECK(r1.reduced.at(1, 0).is_zero());
    CHECK(r1.reduced.at(1, 1).is_zero());

    // identity case
    Matrix id = Matrix::identity(Field::rationals(), 3);
    Rref r2 = rref(id);
    CHECK(r2.reduced == id);
    CHECK(r2.pivots == std::vector<size_t>{0, 1, 2});

    // row swap forced
    Rref r3 = rref(mat(2, 2, {0, 1, 1, 0}));
    CHECK(r3.reduced == Matrix::identity(Field::rationals(), 2));
}

TEST_CASE("rref is idempotent and rank+nullity holds on random matrices") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 40; ++trial) {
        size_t rows = 1 + rng() % 6, cols = 1 + rng() % 7;
        Matrix m = random_matrix(rng, rows, cols);
        Rref rr = rref(m);
        CHECK(rref(rr.reduced).reduced == rr.reduced);
        Subspace ker = kernel_basis(m);
        CHECK(rr.pivots.size() + ker.rank() == cols);
        for (const Vec& v : ker.basis()) {
            Vec image = m.apply(v);
            for (const Scalar& s : image) CHECK(s.is_zero());
        }
    }
}

TEST_CASE("kernel_basis forced examples") {
    CHECK(kernel_basis(mat(2, 3, {0, 0, 0, 0, 0, 0})).rank() == 3);
    CHECK(kernel_basis(Matrix::identity(Field::rationals(), 4)).rank() == 0);
    Subspace k = kernel_basis(mat(1, 2, {1, 1}));
    CHECK(k.rank() == 1);
    CHECK(k.contains(vec({1, -1})));
    CHECK(!k.contains(vec({1, 1})));
}

TEST_CASE("solve returns the deterministic particular solution") {
    Matrix id = Matrix::identity(Field::rationals(), 3);
    CHECK(*solve(id, vec({5, -1, 2})) == vec({5, -1, 2}));

    auto x = solve(mat(1, 2, {1, 1}), vec({2}));
    REQUIRE(x.has_value());
    CHECK(*x == vec({2, 0}));  // non-pivot coordinate zeroed

    CHECK(!solve(mat(1, 1, {0}), vec({1})).has_value());
}

TEST_CASE("solve(m, m*v) round-trips on random data") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        size_t rows = 1 + rng() % 5, cols = 1 + rng() % 6;
        Matrix m = random_matrix(rng, rows, cols);
        Matrix vsrc = random_matrix(rng, cols, 1);
        Vec v = vsrc.col(0);
        Vec rhs = m.apply(v);
        auto x = solve(m, rhs);
        REQUIRE(x.has_value());
        CHECK(m.apply(*x) == rhs);
    }
}

TEST_CASE("subspace operations") {
    Field QQ = Field::rationals();
    Subspace e1 = Subspace::from_span(QQ, 3, {vec({1, 0, 0})});
    Subspace e2 = Subspace::from_span(QQ, 3, {vec({0, 1, 0})});
    CHECK(subspace_sum(e1, e2).rank() == 2);
    CHECK(subspace_sum(e1, Subspace::zero(QQ, 3)) == e1);

    Subspace v = Subspace::from_span(QQ, 3, {vec({1, 1, 0}), vec({0, 0, 1})});
    CHECK(intersect(v, v) == v);
    CHECK(intersect(e1, e2).rank() == 0);
    Subspace w = Subspace::from_span(QQ, 3, {vec({1, 1, 0}), vec({1, 0, 0})});
    Subspace meet = intersect(v, w);
    CHECK(meet.rank() == 1);
    CHECK(meet.contains(vec({1, 1, 0})));
}

TEST_CASE("complement_basis") {
    Field QQ = Field::rationals();
    Subspace full = Subspace::full(QQ, 4);
    Subspace zero = Subspace::zero(QQ, 4);
    CHECK(complement_basis(zero, full).size() == 4);
    CHECK(complement_basis(full, full).empty());

    Subspace sub = Subspace::from_span(QQ, 4, {vec({1, 2, 0, 0})});
    auto comp = complement_basis(sub, full);
    CHECK(comp.size() == 3);
    std::vector<Vec> all = sub.basis();
    all.insert(all.end(), comp.begin(), comp.end());
    CHECK(Subspace::from_span(QQ, 4, all).rank() == 4);

    Subspace outside = Subspace::from_span(QQ, 4, {vec({0, 0, 0, 1})});
    Subspace small = Subspace::from_span(QQ, 4, {vec({1, 0, 0, 0}), vec({0, 1, 0, 0})});
    CHECK_THROWS_AS(complement_basis(outside, small), kres::Error);
}

TEST_CASE("complement output joined with sub spans within (random)") {
    std::mt19937_64 rng(99);
    Field QQ = Field::rationals();
    for (int trial = 0; trial < 25; ++trial) {
        size_t ambient = 2 + rng() % 5;
        Matrix big = random_matrix(rng, 1 + rng() % 5, ambient);
        std::vector<Vec> wspan;
        for (size_t r = 0; r < big.rows(); ++r) wspan.push_back(big.row(r));
        Subspace within = Subspace::from_span(QQ, ambient, wspan);
        // carve a sub-span out of `within`
        std::vector<Vec> sspan;
        for (size_t r = 0; r + 1 < within.rank(); r += 2) {
            Vec sum(ambient, Scalar::zero(QQ));
            for (size_t c = 0; c < ambient; ++c)
                sum[c] = within.basis()[r][c] + within.basis()[r + 1][c];
            sspan.push_back(sum);
        }
        Subspace sub = Subspace::from_span(QQ, ambient, sspan);
        auto comp = complement_basis(sub, within);
        CHECK(sub.rank() + comp.size() == within.rank());
        std::vector<Vec> all = sub.basis();
        all.insert(all.end(), comp.begin(), comp.end());
        CHECK(Subspace::from_span(QQ, ambient, all).rank() == within.rank());
    }
}

TEST_CASE("sparse rank engines agree with dense rank") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 30; ++trial) {
        size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
        Matrix m = random_matrix(rng, rows, cols);
        SparseMatrix sm;
        sm.cols = cols;
        for (size_t r = 0; r < rows; ++r) {
            std::vector<std::pair<size_t, Scalar>> row;
            for (size_t c = 0; c < cols; ++c)
                if (!m.at(r, c).is_zero()) row.emplace_back(c, m.at(r, c));
            sm.add_row(std::move(row));
        }
        size_t dense = rank(m);
        CHECK(sparse_rank_exact(sm) == dense);
        CHECK(sparse_rank_mod_p(sm, kRankPrime) == dense);
    }
}

TEST_CASE("sparse rref and kernel agree with the dense routines") {
    std::mt19937_64 rng(515151);
    for (int trial = 0; trial < 30; ++trial) {
        size_t rows = 1 + rng() % 6, cols = 1 + rng() % 8;
        Matrix m = random_matrix(rng, rows, cols);
        SparseMatrix sm;
        sm.cols = cols;
        for (size_t r = 0; r < rows; ++r) {
            std::vector<std::pair<size_t, Scalar>> row;
            for (size_t c = 0; c < cols; ++c)
                if (!m.at(r, c).is_zero()) row.emplace_back(c, m.at(r, c));
            sm.add_row(std::move(row));
        }
        Rref dense = rref(m);
        SparseRref sparse = sparse_rref(sm);
        CHECK(sparse.pivots == dense.pivots);
        for (size_t r = 0; r < sparse.rows.size(); ++r) {
            Vec full(cols, q(0));
            for (const auto& [c, v] : sparse.rows[r]) full[c] = v;
            CHECK(full == dense.reduced.row(r));
        }
        auto kern = sparse_kernel(sparse);
        Subspace dense_kern = kernel_basis(m);
        REQUIRE(kern.size() == dense_kern.rank());
        for (size_t k = 0; k < kern.size(); ++k) {
            Vec full(cols, q(0));
            for (const auto& [c, v] : kern[k]) full[c] = v;
            CHECK(full == dense_kern.basis()[k]);
        }
    }
}

TEST_CASE("sparse echelon insert tracks rank growth") {
    Field QQ = Field::rationals();
    SparseEchelon ech(QQ, 3);
    CHECK(ech.insert({{0, q(1, 2)}, {2, q(2)}}));
    CHECK(!ech.insert({{0, q(2)}, {2, q(8)}}));  // multiple of the first
    CHECK(ech.insert({{1, q(5)}}));
    CHECK(ech.rank() == 2);
}

TEST_CASE("sparse rank over rationals with denominators") {
    SparseMatrix sm;
    sm.cols = 2;
    sm.add_row({{0, q(1, 2)}, {1, q(1, 3)}});
    sm.add_row({{0, q(3)}, {1, q(2)}});  // 6 * first row
    CHECK(sparse_rank_exact(sm) == 1);
    CHECK(sparse_rank_mod_p(sm, kRankPrime) == 1);
}
