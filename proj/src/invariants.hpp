#pragma once

// Closed-form numeric layer: Betti numbers through degree five from the
// multiplicative invariants of the Koszul homology algebra, the Golod bound
// series, the defect sequence, deviations, and truncated Poincare-denominator
// coefficients. All series are integer polynomials truncated past t^5.

#include <array>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace kres::invariants {

long long binomial(long long n, long long k);

struct InvariantInput {
    int n = 0;                 // embedding dimension
    int c = 0;                 // codepth
    std::vector<long long> a;  // a_1..a_c (trailing zeros may be omitted)
    long long q11 = 0, q12 = 0, q13 = 0, q22 = 0;
    long long a_span = 0;  // rank of A1·A3 + A2·A2 + Massey span inside A4
    long long b = 0;       // rank of Coker psi

    long long ai(int i) const {
        return (i >= 1 && i <= static_cast<int>(a.size())) ? a[static_cast<size_t>(i - 1)] : 0;
    }
    void validate() const;
};

// beta_0..beta_5
std::array<long long, 6> betti_formula(const InvariantInput& in);

// Coefficients b_0..b_N of (1+t)^n / (1 - sum a_i t^{i+1}).
std::vector<long long> golod_bound(int n, const std::vector<long long>& a, int N);

// P_0..P_5; internally cross-checked against golod_bound - betti_formula.
std::array<long long, 6> golod_defect(const InvariantInput& in);

// eps_1..eps_5 from the invariants, and from a Betti sequence by inverting the
// beta/eps relations. The two routes agree on valid input.
std::array<long long, 5> deviations_formula(const InvariantInput& in);
std::array<long long, 5> deviations_from_betti(const std::array<long long, 6>& beta);

// d_0..d_5 with d(t) = (1 - sum a_i t^{i+1}) + q11 t^3 + (q11+q12) t^4 +
// (q12 - b + a) t^5 (mod t^6).
std::array<long long, 6> poincare_denominator(const InvariantInput& in);

struct DenominatorSolve {
    long long q11 = 0, q12 = 0, a_minus_b = 0;
};

// Recovers (q11, q12, a-b) from denominator coefficients; errors on
// inconsistent input (d_0 != 1, d_1 != 0, mismatched a_1, or negative ranks).
DenominatorSolve invariants_from_denominator(int n, int c, const std::vector<long long>& a,
                                             const std::array<long long, 6>& d);

// Codepth <= 3 specialization: for inputs with a_4 = a_span = 0, the degree
// <= 5 part of d(t)/(1+t) must be
//   1 - t - (a1-1) t^2 - (a3-q11) t^3 + q12 t^4 - b t^5.
// Returns nullopt when the specialization does not apply.
std::optional<bool> codepth3_specialization(const InvariantInput& in);

}  // namespace kres::invariants
