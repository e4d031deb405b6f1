#pragma once

// The homology algebra A = H(K) with the distinguished bases, kernels,
// liftings, and Massey data that drive the resolution blocks:
//
//   A_i bases and charts; products A_i·A_j with ranks q_ij;
//   Ker phi_1 basis written as sums z^1_i ⊗ p~1_{si}, with lifts pi~3_s;
//   Ker phi_2 = Span(A) ⊕ B with B written over p~2_{ui}, lifts pi~4_u;
//   b = rank Coker psi, computed along two routes;
//   triple Massey products and the constrained-representative span in A_4.
//
// All basis choices are pinned by the deterministic echelon conventions of
// the linear algebra layer. Representatives are homogeneous cycles.

#include <map>
#include <optional>
#include <vector>

#include "koszul.hpp"

namespace kres::homalg {

struct HomologyPiece {
    size_t rank = 0;
    std::vector<koszul::KoszulElement> reps;  // ascending internal degree
    std::vector<int> degrees;                 // internal degree per rep

    struct DegreeChart {
        int j = 0;
        size_t offset = 0;  // first rep of this degree
        size_t count = 0;
        size_t boundary_rank = 0;
        lin::SolveFactor solver;  // columns: boundary basis then reps
    };
    std::vector<DegreeChart> charts;
};

struct P1Family {
    size_t count = 0;                   // a_1^2 - q_11
    std::vector<lin::Vec> kernel_vecs;  // in A_1 ⊗ A_1 coordinates, first factor major
    std::vector<int> degrees;
    std::vector<std::vector<koszul::KoszulElement>> reps;  // reps[s][i] = p~1_{si}
};

struct Phi2Split {
    lin::Subspace kernel;  // Ker phi_2 in A_1 ⊗ A_2 coordinates
    lin::Subspace span_A;
    std::vector<lin::Vec> b_vectors;
    std::vector<int> degrees;
    std::vector<std::vector<koszul::KoszulElement>> p2_reps;  // p2_reps[u][i] = p~2_{ui}
    size_t b = 0;                                             // a_1 q_11 - rank span_A
};

struct MasseyTriple {
    koszul::KoszulElement representative;  // cycle in K_4
    lin::Vec cls;                          // its class in the A_4 chart
    lin::Subspace indeterminacy;           // A_3·[z] + [x]·A_3
};

struct MasseySpan {
    lin::Subspace span;         // classes of constrained representatives
    lin::Subspace accumulated;  // A_1·A_3 + A_2·A_2 + span
    size_t a = 0;               // rank of accumulated
    // Per span basis class: is it realized, modulo products, by a Massey
    // triple of A_1 basis classes? Diagnostic only; the constrained span is
    // the operational object.
    std::vector<bool> exhibited_by_basis_triple;
};

class HomologyAlgebra {
public:
    explicit HomologyAlgebra(const koszul::KoszulComplex& K);

    const koszul::KoszulComplex& complex() const { return K_; }
    const poly::GradedQuotientRing& ring() const { return K_.ring(); }

    const HomologyPiece& piece(int i) const;
    size_t rank(int i) const { return piece(i).rank; }

    // Coordinates in the A_i chart; errors when the input is not a cycle.
    lin::Vec class_of(int i, const koszul::KoszulElement& cycle) const;
    bool class_vanishes(int i, const koszul::KoszulElement& cycle) const;

    const lin::Subspace& product_subspace(int i, int j) const;
    size_t q(int i, int j) const { return product_subspace(i, j).rank(); }

    // Distinguished complements: unit classes of the A_i charts completing
    // the product subspaces. Pairs of (chart index, representative).
    const std::vector<size_t>& z2_indices() const;
    const std::vector<size_t>& z3_indices() const;
    const std::vector<size_t>& z4_indices() const;

    const P1Family& p1() const;
    const std::vector<koszul::KoszulElement>& pi3() const;
    const Phi2Split& phi2_split() const;
    size_t coker_psi_rank() const;
    const std::vector<koszul::KoszulElement>& pi4() const;

    MasseyTriple massey_triple(const koszul::KoszulElement& x, const koszul::KoszulElement& y,
                               const koszul::KoszulElement& z) const;
    const MasseySpan& massey_span() const;

    // Internal degree of a homogeneous class vector in the A_i chart.
    int class_degree(int i, const lin::Vec& cls) const;

private:
    const koszul::KoszulComplex& K_;
    mutable std::map<int, HomologyPiece> pieces_;
    mutable std::map<std::pair<int, int>, lin::Subspace> products_;
    mutable std::optional<std::vector<size_t>> z2_, z3_, z4_;
    mutable std::optional<P1Family> p1_;
    mutable std::optional<std::vector<koszul::KoszulElement>> pi3_;
    mutable std::optional<Phi2Split> phi2_;
    mutable std::optional<size_t> coker_psi_;
    mutable std::optional<std::vector<koszul::KoszulElement>> pi4_;
    mutable std::optional<MasseySpan> massey_;

    std::vector<size_t> complement_indices(const lin::Subspace& sub, size_t ambient) const;
    koszul::KoszulElement rep_combination(int i, const lin::Vec& coeffs) const;
};

}  // namespace kres::homalg
