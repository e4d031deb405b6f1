#pragma once

// Polynomial input and the degree-wise model of a standard-graded quotient
// ring R = k[x_1..x_n]/I with homogeneous I contained in m^2. Each internal
// degree j carries an ordered monomial chart, the echelonized piece I_j, and
// normal-form coordinates on R_j = span of the non-pivot monomials. Monomials
// within a degree are ordered lex-descending in the declared variable order.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exactlin.hpp"

namespace kres::poly {

struct Monomial {
    std::vector<uint32_t> exp;

    int degree() const;
    static Monomial one(size_t nvars) { return Monomial{std::vector<uint32_t>(nvars, 0)}; }
    Monomial times(const Monomial& o) const;
    Monomial times_var(size_t v) const;
    std::string str(const std::vector<std::string>& vars) const;

    bool operator==(const Monomial& o) const { return exp == o.exp; }
    // lex order on exponent vectors; monomial charts list degree-j monomials
    // in descending order under this comparison.
    bool operator<(const Monomial& o) const { return exp < o.exp; }
};

// All degree-j monomials in n variables, lex-descending.
std::vector<Monomial> monomials_of_degree(size_t nvars, int degree);

class Polynomial {
public:
    Polynomial(lin::Field f, size_t nvars) : f_(f), nvars_(nvars) {}

    lin::Field field() const { return f_; }
    size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, lin::Scalar>& terms() const { return terms_; }

    void add_term(const Monomial& m, const lin::Scalar& c);
    // Degree when homogeneous (all monomials share one degree), else nullopt.
    std::optional<int> homogeneous_degree() const;
    int max_degree() const;
    std::string str(const std::vector<std::string>& vars) const;

private:
    lin::Field f_;
    size_t nvars_;
    std::map<Monomial, lin::Scalar> terms_;  // no zero coefficients stored
};

// Grammar (exact): poly := [sign] term ((+|-) term)*
//                  term := [coeff '*']? factor ('*' factor)*
//                  factor := var ('^' nat)?     coeff := int ('/' nat)
// Whitespace insignificant, no parentheses, variables matched longest-first.
// Errors carry the 1-based column of the offending character.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                            lin::Field field);

// Homogeneous element of R in normal-form coordinates, one vector per degree.
struct RingElement {
    std::map<int, lin::Vec> comp;  // internal degree -> coords in R_j chart; zero parts absent

    bool is_zero() const { return comp.empty(); }
    void prune();
    RingElement& operator+=(const RingElement& o);
    RingElement operator*(const lin::Scalar& s) const;
    bool operator==(const RingElement& o) const { return comp == o.comp; }
};

struct CutoffPolicy {
    std::optional<int> cutoff;  // required for non-artinian input
    std::optional<int> depth;   // declared depth, non-artinian only
};

class GradedQuotientRing {
public:
    struct DegreeData {
        std::vector<Monomial> monomials;        // full chart, lex-descending
        std::map<Monomial, size_t> index;       // monomial -> chart column
        lin::Subspace ideal;                    // I_j inside the chart
        std::vector<size_t> normal_cols;        // non-pivot columns, ascending
        std::vector<lin::Vec> reduce_table;     // chart column -> coords over R_j basis
        size_t dim = 0;
    };

    static GradedQuotientRing build(const std::vector<std::string>& vars, lin::Field field,
                                    const std::vector<std::string>& generator_texts,
                                    const CutoffPolicy& policy);

    lin::Field field() const { return f_; }
    size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Polynomial>& generators() const { return gens_; }

    bool artinian() const { return artinian_; }
    int socle_degree() const;  // artinian only
    int cutoff() const { return cutoff_; }
    std::optional<int> declared_depth() const { return declared_depth_; }
    // n - depth; artinian rings have depth 0, otherwise the declared depth is
    // required (error when absent).
    int codepth() const;

    // dim_k R_j; zero beyond the socle for artinian rings, error past the
    // cutoff otherwise.
    size_t dim(int j) const;
    const DegreeData& degree_data(int j) const;

    RingElement one() const;
    RingElement element_from(const Polynomial& p) const;
    RingElement multiply(const RingElement& u, const RingElement& v) const;
    RingElement multiply_by_var(size_t v, const RingElement& u) const;
    // R_j -> R_{j+1} multiplication by x_v in normal-form charts.
    const lin::Matrix& var_mult_matrix(size_t v, int j) const;

    std::string element_str(const RingElement& e) const;

private:
    lin::Field f_;
    std::vector<std::string> vars_;
    std::vector<Polynomial> gens_;
    std::vector<DegreeData> deg_;
    bool artinian_ = false;
    int socle_ = -1;
    int cutoff_ = 0;
    std::optional<int> declared_depth_;
    mutable std::map<std::pair<size_t, int>, lin::Matrix> var_mult_cache_;

    void check_degree_available(int j) const;
    static DegreeData build_degree(const std::vector<Polynomial>& gens, lin::Field f,
                                   size_t nvars, int j);
};

}  // namespace kres::poly
