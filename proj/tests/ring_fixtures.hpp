#pragma once

// Shared test rings. massey4 is the codepth-4 artinian ring whose homology
// algebra carries an indecomposable triple Massey product; quad7_* are the
// four socle-two rings cut out by seven quadrics; cubic6_* are the two
// non-artinian codepth-4 rings with trivial homology products.

#include <string>
#include <vector>

#include "polyring.hpp"

namespace fixtures {

inline kres::poly::GradedQuotientRing massey4() {
    return kres::poly::GradedQuotientRing::build(
        {"x", "y", "z", "w"}, kres::lin::Field::rationals(),
        {"x^3", "y^3", "z^3 - x*y^2", "x^2*z^2", "x*y*z^2", "y^2*w", "w^2"}, {});
}

inline kres::poly::GradedQuotientRing golod2() {
    return kres::poly::GradedQuotientRing::build({"x", "y"}, kres::lin::Field::rationals(),
                                                 {"x^2", "x*y", "y^2"}, {});
}

inline kres::poly::GradedQuotientRing golod3() {
    return kres::poly::GradedQuotientRing::build(
        {"x", "y", "z"}, kres::lin::Field::rationals(),
        {"x^2", "x*y", "x*z", "y^2", "y*z", "z^2"}, {});
}

inline kres::poly::GradedQuotientRing ci1() {
    return kres::poly::GradedQuotientRing::build({"x"}, kres::lin::Field::rationals(), {"x^2"},
                                                 {});
}

inline kres::poly::GradedQuotientRing ci2() {
    return kres::poly::GradedQuotientRing::build({"x", "y"}, kres::lin::Field::rationals(),
                                                 {"x^2", "y^2"}, {});
}

inline std::vector<std::string> quad7_ideal(int i) {
    switch (i) {
        case 1:
            return {"y*w", "x*w + z*w + w^2", "z^2 + w^2", "x*z + z*w + w^2",
                    "y^2 + y*z", "x*y + z*w", "x^2 + z*w"};
        case 2:
            return {"z*w + w^2", "y*w", "z^2 + w^2", "y*z + x*w + w^2",
                    "x*z + w^2", "x*y + y^2 + x*w + w^2", "x^2 + x*w + w^2"};
        case 3:
            return {"z*w", "y*w", "x*w - w^2", "y*z", "x*z", "x*y - z^2", "x^2 - y^2"};
        case 4:
            return {"w^2", "y*w + z*w", "x*w", "y*z + z^2", "y^2 + z*w", "x*y + x*z",
                    "x^2 + z*w"};
        default:
            throw std::runtime_error("quad7 index out of range");
    }
}

inline kres::poly::GradedQuotientRing quad7(int i) {
    return kres::poly::GradedQuotientRing::build({"x", "y", "z", "w"},
                                                 kres::lin::Field::rationals(), quad7_ideal(i), {});
}

inline std::vector<std::string> cubic6_ideal(int i) {
    if (i == 1)
        return {"w^3", "x*y^2", "x*z^2 + y*z^2", "x^2*w", "x^2*y + y^2*w", "y^2*z + z^2*w"};
    return {"w^3", "x*y^2", "x*z^2 + y*z^2", "x^2*w + z*w^2", "y^2*w + x*z*w", "y^2*z + y*z^2"};
}

inline kres::poly::GradedQuotientRing cubic6(int i, int cutoff = 10) {
    kres::poly::CutoffPolicy policy;
    policy.cutoff = cutoff;
    policy.depth = 0;
    return kres::poly::GradedQuotientRing::build({"x", "y", "z", "w"},
                                                 kres::lin::Field::rationals(), cubic6_ideal(i),
                                                 policy);
}

// depth-zero, non-artinian, Golod
inline kres::poly::GradedQuotientRing nonart2(int cutoff = 6) {
    kres::poly::CutoffPolicy policy;
    policy.cutoff = cutoff;
    policy.depth = 0;
    return kres::poly::GradedQuotientRing::build({"x", "y"}, kres::lin::Field::rationals(),
                                                 {"x^2", "x*y"}, policy);
}

}  // namespace fixtures
