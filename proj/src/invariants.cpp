#include "invariants.hpp"

#include <string>

namespace kres::invariants {

long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

void InvariantInput::validate() const {
    if (n < 1) fail_input("embedding dimension must be positive");
    if (c < 0 || c > n) fail_input("codepth must lie in [0, n]");
    for (long long v : a)
        if (v < 0) fail_input("homology ranks must be non-negative");
    if (q11 < 0 || q12 < 0 || q13 < 0 || q22 < 0 || a_span < 0 || b < 0)
        fail_input("product ranks must be non-negative");
    if (q11 > ai(2)) fail_input("q11 exceeds a2");
    if (q12 > ai(3)) fail_input("q12 exceeds a3");
    if (a_span > ai(4)) fail_input("a exceeds a4");
}

std::array<long long, 6> betti_formula(const InvariantInput& in) {
    in.validate();
    long long n = in.n, a1 = in.ai(1), a2 = in.ai(2), a3 = in.ai(3), a4 = in.ai(4);
    std::array<long long, 6> beta{};
    beta[0] = 1;
    beta[1] = n;
    beta[2] = binomial(n, 2) + a1;
    beta[3] = binomial(n, 3) + n * a1 + a2 - in.q11;
    beta[4] = binomial(n, 4) + binomial(n, 2) * a1 + n * a2 + a3 + a1 * a1 -
              (n + 1) * in.q11 - in.q12;
    beta[5] = binomial(n, 5) + binomial(n, 3) * a1 + binomial(n, 2) * a2 + n * a3 + a4 +
              n * a1 * a1 + 2 * a1 * a2 - (binomial(n + 1, 2) + 2 * a1) * in.q11 -
              (n + 1) * in.q12 + in.b - in.a_span;
    return beta;
}

std::vector<long long> golod_bound(int n, const std::vector<long long>& a, int N) {
    if (N < 0) fail_input("series length must be non-negative");
    auto ai = [&](int i) {
        return (i >= 1 && i <= static_cast<int>(a.size())) ? a[static_cast<size_t>(i - 1)] : 0;
    };
    std::vector<long long> b(static_cast<size_t>(N) + 1, 0);
    b[0] = 1;
    if (N >= 1) b[1] = n;
    for (int i = 2; i <= N; ++i) {
        long long v = binomial(n, i);
        for (int j = 1; j <= i - 1; ++j) v += ai(j) * b[static_cast<size_t>(i - j - 1)];
        b[static_cast<size_t>(i)] = v;
    }
    return b;
}

std::array<long long, 6> golod_defect(const InvariantInput& in) {
    in.validate();
    long long n = in.n, a1 = in.ai(1);
    std::array<long long, 6> p{};
    p[3] = in.q11;
    p[4] = (n + 1) * in.q11 + in.q12;
    p[5] = (binomial(n + 1, 2) + 2 * a1) * in.q11 + (n + 1) * in.q12 + in.a_span - in.b;

    std::vector<long long> bound = golod_bound(in.n, in.a, 5);
    std::array<long long, 6> beta = betti_formula(in);
    for (int i = 0; i <= 5; ++i)
        check_internal(p[static_cast<size_t>(i)] == bound[static_cast<size_t>(i)] -
                                                        beta[static_cast<size_t>(i)],
                       "defect formulas disagree with bound minus Betti");
    return p;
}

std::array<long long, 5> deviations_formula(const InvariantInput& in) {
    in.validate();
    long long n = in.n, a1 = in.ai(1), a2 = in.ai(2), a3 = in.ai(3), a4 = in.ai(4);
    std::array<long long, 5> e{};
    e[0] = n;
    e[1] = a1;
    e[2] = a2 - in.q11;
    e[3] = a3 - in.q12 + binomial(a1, 2) - in.q11;
    e[4] = a4 + a1 * a2 - a1 * in.q11 - in.q12 + in.b - in.a_span;
    return e;
}

std::array<long long, 5> deviations_from_betti(const std::array<long long, 6>& beta) {
    std::array<long long, 5> e{};
    long long e1 = beta[1];
    long long e2 = beta[2] - binomial(e1, 2);
    long long e3 = beta[3] - e2 * e1 - binomial(e1, 3);
    long long e4 = beta[4] - e3 * e1 - binomial(1 + e2, 2) - e2 * binomial(e1, 2) -
                   binomial(e1, 4);
    long long e5 = beta[5] - e4 * e1 - e3 * e2 - e3 * binomial(e1, 2) - e2 * e2 * e1 +
                   e1 * binomial(e2, 2) - e2 * binomial(e1, 3) - binomial(e1, 5);
    e = {e1, e2, e3, e4, e5};
    for (long long v : e)
        if (v < 0)
            fail_input("inconsistent Betti sequence: deviation " + std::to_string(v) +
                       " is negative");
    return e;
}

std::array<long long, 6> poincare_denominator(const InvariantInput& in) {
    in.validate();
    std::array<long long, 6> d{};
    d[0] = 1;
    for (int i = 1; i <= std::min(in.c, 4); ++i) d[static_cast<size_t>(i + 1)] -= in.ai(i);
    d[3] += in.q11;
    d[4] += in.q11 + in.q12;
    d[5] += in.q12 - in.b + in.a_span;
    return d;
}

DenominatorSolve invariants_from_denominator(int n, int c, const std::vector<long long>& a,
                                             const std::array<long long, 6>& d) {
    if (n < 1 || c < 0 || c > n) fail_input("invalid (n, c)");
    auto ai = [&](int i) {
        return (i >= 1 && i <= static_cast<int>(a.size()) && i <= c)
                   ? a[static_cast<size_t>(i - 1)]
                   : 0;
    };
    if (d[0] != 1 || d[1] != 0) fail_input("denominator must start 1 + 0*t");
    // gamma = d - (1 - sum a_i t^{i+1})
    std::array<long long, 6> gamma{};
    for (int i = 2; i <= 5; ++i)
        gamma[static_cast<size_t>(i)] = d[static_cast<size_t>(i)] + ai(i - 1);
    if (gamma[2] != 0)
        fail_input("denominator t^2 coefficient is inconsistent with a1");
    DenominatorSolve out;
    out.q11 = gamma[3];
    out.q12 = gamma[4] - gamma[3];
    out.a_minus_b = gamma[5] - out.q12;
    if (out.q11 < 0 || out.q12 < 0)
        fail_input("denominator coefficients give negative product ranks");
    return out;
}

std::optional<bool> codepth3_specialization(const InvariantInput& in) {
    in.validate();
    if (in.ai(4) != 0 || in.a_span != 0) return std::nullopt;
    std::array<long long, 6> d = poincare_denominator(in);
    // e(t) = d(t)/(1+t) mod t^6
    std::array<long long, 6> e{};
    e[0] = d[0];
    for (int i = 1; i <= 5; ++i)
        e[static_cast<size_t>(i)] = d[static_cast<size_t>(i)] - e[static_cast<size_t>(i - 1)];
    std::array<long long, 6> target = {1, -1, -(in.ai(1) - 1), -(in.ai(3) - in.q11), in.q12,
                                       -in.b};
    return e == target;
}

}  // namespace kres::invariants
