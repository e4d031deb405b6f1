#pragma once

// The Koszul complex K = Λ(R^n) on the variables, held as finite-dimensional
// graded pieces K_{i,j} with the differential
//     ∂(T_{i1..ik}) = Σ_m (-1)^{m+1} x_{i_m} T_{..î_m..}
// and the exterior product with its sorting signs. Exterior indices are kept
// as bitmasks; subsets of fixed size are ordered colexicographically, which is
// numeric order on masks.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "exactlin.hpp"
#include "polyring.hpp"

namespace kres::koszul {

// Homogeneous-by-homological-degree element of K with ring coefficients.
struct KoszulElement {
    int hdeg = 0;
    std::map<uint32_t, poly::RingElement> coeff;  // subset mask -> coefficient

    bool is_zero() const { return coeff.empty(); }
    void prune();
    KoszulElement& operator+=(const KoszulElement& o);
    KoszulElement operator*(const lin::Scalar& s) const;
    bool operator==(const KoszulElement& o) const;

    // Internal degrees with a nonzero component (|S| + ring degree).
    std::set<int> internal_degrees() const;
    // The single internal degree of a homogeneous element (error if mixed).
    int internal_degree() const;
    KoszulElement component(int internal_degree) const;
    // True when every ring coefficient lies in m^k (ring degree >= k).
    bool in_mk(int k) const;
};

int wedge_sign(uint32_t s, uint32_t t);  // +1/-1; caller ensures s & t == 0

class KoszulComplex {
public:
    struct Piece {
        int i = 0, j = 0;
        size_t subset_count = 0;
        size_t block = 0;  // = dim R_{j-i}; basis is (subset, monomial) S-major
        size_t dim = 0;
    };

    explicit KoszulComplex(const poly::GradedQuotientRing& R);

    const poly::GradedQuotientRing& ring() const { return R_; }
    size_t nvars() const { return R_.nvars(); }

    // Colex-ordered subsets of size i as bitmasks.
    const std::vector<uint32_t>& subsets(int i) const;
    size_t subset_index(int i, uint32_t mask) const;

    // Largest internal degree with K_{i,j} possibly nonzero (artinian), or the
    // largest computable degree (cutoff).
    int max_internal_degree(int i) const;
    const Piece& piece(int i, int j) const;

    // Matrix of ∂_i restricted to internal degree j: K_{i,j} -> K_{i-1,j}.
    const lin::Matrix& diff(int i, int j) const;
    // Cached elimination of diff(i, j) for repeated lifting.
    const lin::SolveFactor& diff_solver(int i, int j) const;
    const lin::Subspace& cycle_space(int i, int j) const;
    const lin::Subspace& boundary_space(int i, int j) const;

    KoszulElement zero(int hdeg) const { return KoszulElement{hdeg, {}}; }
    KoszulElement generator(int hdeg, uint32_t mask) const;
    KoszulElement from_polynomial_coeff(int hdeg, uint32_t mask, const poly::Polynomial& p) const;

    KoszulElement wedge(const KoszulElement& u, const KoszulElement& v) const;
    KoszulElement differential(const KoszulElement& u) const;
    bool is_cycle(const KoszulElement& u) const { return differential(u).is_zero(); }

    // Deterministic π with ∂_i(π) = target; error when target is not a
    // boundary. Asserts the preimage property: targets in m^2 K lift into m K.
    KoszulElement lift_boundary(int i, const KoszulElement& target) const;

    lin::Vec to_coords(const KoszulElement& u, int i, int j) const;
    KoszulElement from_coords(int i, int j, const lin::Vec& coords) const;

    // Matrix of (w ∧ ·) : K_{m,p} -> K_{m+h, p+deg w} in chart coordinates,
    // for homogeneous w of homological degree h.
    lin::Matrix wedge_operator(const KoszulElement& w, int m, int p) const;

    std::string element_str(const KoszulElement& u) const;

private:
    const poly::GradedQuotientRing& R_;
    std::vector<std::vector<uint32_t>> subsets_;  // by size
    mutable std::map<std::pair<int, int>, Piece> pieces_;
    mutable std::map<std::pair<int, int>, lin::Matrix> diffs_;
    mutable std::map<std::pair<int, int>, lin::SolveFactor> diff_solvers_;
    mutable std::map<std::pair<int, int>, lin::Subspace> cycles_;
    mutable std::map<std::pair<int, int>, lin::Subspace> boundaries_;
};

}  // namespace kres::koszul
