#pragma once

// Exact field arithmetic and deterministic dense linear algebra.
//
// Scalars are either arbitrary-precision rationals (GMP) or residues modulo a
// prime p < 2^31. Every operation here is deterministic: the same inputs give
// bit-identical outputs, which pins down all basis choices made downstream.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace kres::lin {

class Field {
public:
    Field() = default;  // rationals
    static Field rationals() { return Field(); }
    static Field prime(uint64_t p);

    bool is_rational() const { return p_ == 0; }
    uint64_t characteristic() const { return p_; }
    std::string str() const;

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

private:
    uint64_t p_ = 0;  // 0 = QQ
};

class Scalar {
public:
    Scalar() = default;  // rational zero
    explicit Scalar(Field f) : f_(f) {}

    static Scalar zero(Field f) { return Scalar(f); }
    static Scalar one(Field f);
    static Scalar from_int(Field f, long long v);
    static Scalar from_mpq(mpq_class q);
    // Parses "a" or "a/b" with optional sign; used by the polynomial parser.
    static Scalar parse(Field f, const std::string& text);

    Field field() const { return f_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Canonical text form: reduced "n/d" with positive d over QQ, residue in
    // [0,p) over GF(p).
    std::string str() const;

    const mpq_class& rational() const { return q_; }
    uint64_t residue() const { return r_; }

private:
    Field f_;
    mpq_class q_ = 0;
    uint64_t r_ = 0;
};

using Vec = std::vector<Scalar>;

class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, size_t rows, size_t cols)
        : f_(f), rows_(rows), cols_(cols), e_(rows * cols, Scalar::zero(f)) {}

    static Matrix identity(Field f, size_t n);

    Field field() const { return f_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Scalar& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
    const Scalar& at(size_t r, size_t c) const { return e_[r * cols_ + c]; }

    Vec row(size_t r) const;
    Vec col(size_t c) const;
    void set_row(size_t r, const Vec& v);

    Vec apply(const Vec& v) const;          // m * v
    friend Matrix matmul(const Matrix& a, const Matrix& b);

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

private:
    Field f_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> e_;
};

struct Rref {
    Matrix reduced;
    std::vector<size_t> pivots;  // strictly increasing column indices
};

// Gauss-Jordan with leftmost-pivot, first-nonzero-row selection. The output is
// the canonical reduced row-echelon form of the row space.
Rref rref(const Matrix& m);
size_t rank(const Matrix& m);

// Echelonized basis of a k-subspace of k^ambient.
class Subspace {
public:
    Subspace() = default;
    static Subspace zero(Field f, size_t ambient);
    static Subspace full(Field f, size_t ambient);
    // Echelonizes the given spanning vectors (zero vectors allowed).
    static Subspace from_span(Field f, size_t ambient, const std::vector<Vec>& span);

    Field field() const { return f_; }
    size_t ambient_dim() const { return ambient_; }
    size_t rank() const { return rows_.size(); }
    const std::vector<Vec>& basis() const { return rows_; }
    const std::vector<size_t>& pivot_cols() const { return pivots_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    // Residual of v after eliminating against the echelon rows.
    Vec reduce(Vec v) const;
    // Coordinates of v in the echelon basis; nullopt if v is outside.
    std::optional<Vec> coordinates(const Vec& v) const;

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && rows_ == o.rows_;
    }

private:
    Field f_;
    size_t ambient_ = 0;
    std::vector<Vec> rows_;       // echelon basis: unit pivots, pivot columns zero elsewhere
    std::vector<size_t> pivots_;

    friend Subspace kernel_basis(const Matrix& m);
};

// Echelonized basis of {v : m v = 0}.
Subspace kernel_basis(const Matrix& m);

// Deterministic particular solution of m x = rhs with zeros in all non-pivot
// coordinates; nullopt when the system is unsolvable.
std::optional<Vec> solve(const Matrix& m, const Vec& rhs);

// Precomputed elimination of a fixed matrix for solving many right-hand
// sides. solve() returns the same particular solution as lin::solve.
class SolveFactor {
public:
    SolveFactor() = default;
    explicit SolveFactor(const Matrix& a);
    std::optional<Vec> solve(const Vec& rhs) const;
    const std::vector<size_t>& pivots() const { return pivots_; }
    size_t rank() const { return pivots_.size(); }

private:
    Matrix r_;  // rref of a
    Matrix t_;  // accumulated row operations: r_ = t_ * a
    std::vector<size_t> pivots_;
    size_t cols_ = 0;
};

Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace intersect(const Subspace& u, const Subspace& v);

// Vectors of `within`'s echelon basis extending `sub` to a basis of `within`,
// scanned in order, keeping those that raise the rank. Errors if sub is not
// contained in within.
std::vector<Vec> complement_basis(const Subspace& sub, const Subspace& within);

// --- sparse rank engine -----------------------------------------------------
//
// Rank computations on the large flattened matrices of the resolution
// verifier. Row order and pivot strategy do not affect the result (rank is
// basis independent), so these may use any elimination order internally.

struct SparseMatrix {
    size_t rows = 0, cols = 0;
    // Per row: strictly increasing column indices with nonzero entries.
    std::vector<std::vector<std::pair<size_t, Scalar>>> entries;

    void add_row(std::vector<std::pair<size_t, Scalar>> row);
};

// Exact rank over the scalar field (fraction-free over QQ).
size_t sparse_rank_exact(const SparseMatrix& m);

using SparseVec = std::vector<std::pair<size_t, Scalar>>;

// Incremental exact forward echelon over QQ with fraction-free rows. insert
// returns whether the rank grew. Row order does not change the rank.
class SparseEchelon {
public:
    explicit SparseEchelon(Field f, size_t cols) : f_(f), cols_(cols) {}
    bool insert(const SparseVec& row);
    size_t rank() const { return pivot_rows_.size(); }
    size_t cols() const { return cols_; }

private:
    Field f_;
    size_t cols_ = 0;
    std::vector<std::vector<std::pair<size_t, mpz_class>>> pivot_rows_;
    std::vector<std::pair<size_t, size_t>> pivot_at_;  // (col, row index), sorted
};

// Canonical sparse reduced row echelon form and the kernel in the same
// normalized shape as kernel_basis: one generator per non-pivot column with a
// unit there.
struct SparseRref {
    size_t cols = 0;
    std::vector<size_t> pivots;
    std::vector<SparseVec> rows;  // pivot entries are 1, pivot columns cleared
};
SparseRref sparse_rref(const SparseMatrix& m);
std::vector<SparseVec> sparse_kernel(const SparseRref& r);

// Rank of the reduction mod p of the denominator-cleared integer matrix. This
// is a lower bound for the exact rank over QQ. Over GF(q) inputs the matrix is
// reduced from its native field and the result is exact when p == q.
size_t sparse_rank_mod_p(const SparseMatrix& m, uint64_t p);

// Fixed auxiliary prime for rank certificates (Mersenne, 2^61 - 1).
inline constexpr uint64_t kRankPrime = 2305843009213693951ull;

}  // namespace kres::lin
