#include "polyring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace kres::poly {

using lin::Field;
using lin::Matrix;
using lin::Scalar;
using lin::Subspace;
using lin::Vec;

int Monomial::degree() const {
    return std::accumulate(exp.begin(), exp.end(), 0,
                           [](int a, uint32_t b) { return a + static_cast<int>(b); });
}

Monomial Monomial::times(const Monomial& o) const {
    Monomial out = *this;
    for (size_t i = 0; i < exp.size(); ++i) out.exp[i] += o.exp[i];
    return out;
}

Monomial Monomial::times_var(size_t v) const {
    Monomial out = *this;
    out.exp[v] += 1;
    return out;
}

std::string Monomial::str(const std::vector<std::string>& vars) const {
    std::string s;
    for (size_t i = 0; i < exp.size(); ++i) {
        if (exp[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (exp[i] > 1) s += "^" + std::to_string(exp[i]);
    }
    return s.empty() ? "1" : s;
}

std::vector<Monomial> monomials_of_degree(size_t nvars, int degree) {
    std::vector<Monomial> out;
    if (degree < 0) return out;
    Monomial cur = Monomial::one(nvars);
    // lex-descending: leading variables take the largest exponents first
    auto rec = [&](auto&& self, size_t var, int remaining) -> void {
        if (var + 1 == nvars) {
            cur.exp[var] = static_cast<uint32_t>(remaining);
            out.push_back(cur);
            cur.exp[var] = 0;
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur.exp[var] = static_cast<uint32_t>(e);
            self(self, var + 1, remaining - e);
        }
        cur.exp[var] = 0;
    };
    if (nvars == 0) {
        if (degree == 0) out.push_back(Monomial{{}});
        return out;
    }
    rec(rec, 0, degree);
    return out;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::optional<int> Polynomial::homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& [m, c] : terms_) {
        int d = m.degree();
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    return deg;
}

int Polynomial::max_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

std::string Polynomial::str(const std::vector<std::string>& vars) const {
    if (terms_.empty()) return "0";
    // print lex-descending, matching the chart order
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        std::string c = it->second.str();
        if (s.empty()) {
            s += c == "1" ? "" : (c == "-1" ? "-" : c + "*");
        } else if (!c.empty() && c[0] == '-') {
            s += c == "-1" ? " - " : " - " + c.substr(1) + "*";
        } else {
            s += c == "1" ? " + " : " + " + c + "*";
        }
        s += it->first.str(vars);
    }
    return s;
}

namespace {

struct Parser {
    const std::string& text;
    const std::vector<std::string>& vars;
    Field field;
    size_t pos = 0;
    std::vector<size_t> vars_by_length;  // indices sorted by name length, longest first

    Parser(const std::string& t, const std::vector<std::string>& v, Field f)
        : text(t), vars(v), field(f) {
        vars_by_length.resize(vars.size());
        std::iota(vars_by_length.begin(), vars_by_length.end(), size_t{0});
        std::stable_sort(vars_by_length.begin(), vars_by_length.end(),
                         [&](size_t a, size_t b) { return vars[a].size() > vars[b].size(); });
    }

    [[noreturn]] void error(const std::string& msg, size_t at) const {
        fail_input("parse error at column " + std::to_string(at + 1) + ": " + msg);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    std::string read_digits() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) error("expected digits", start);
        return text.substr(start, pos - start);
    }

    // coeff := int ('/' nat)?
    Scalar read_coeff() {
        skip_ws();
        std::string lit;
        if (peek() == '-') {
            lit += '-';
            ++pos;
        }
        lit += read_digits();
        if (peek() == '/') {
            ++pos;
            lit += "/" + read_digits();
        }
        return Scalar::parse(field, lit);
    }

    // var, longest name first
    std::optional<size_t> try_read_var() {
        skip_ws();
        for (size_t idx : vars_by_length) {
            const std::string& name = vars[idx];
            if (text.compare(pos, name.size(), name) == 0) {
                pos += name.size();
                return idx;
            }
        }
        return std::nullopt;
    }

    // factor := var ('^' nat)?
    void read_factor(Monomial& m) {
        size_t at = pos;
        auto v = try_read_var();
        if (!v) error("expected a variable", at);
        uint32_t e = 1;
        if (peek() == '^') {
            ++pos;
            size_t dstart = pos;
            std::string d = read_digits();
            try {
                e = static_cast<uint32_t>(std::stoul(d));
            } catch (...) {
                error("exponent out of range", dstart);
            }
        }
        m.exp[*v] += e;
    }

    // term := [coeff '*']? factor ('*' factor)*
    void read_term(Polynomial& out, bool negate) {
        skip_ws();
        Scalar coeff = Scalar::one(field);
        size_t at = pos;
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
            coeff = read_coeff();
            if (peek() != '*') error("a coefficient must be followed by '*' and a variable", at);
            ++pos;
        }
        Monomial m = Monomial::one(vars.size());
        read_factor(m);
        while (peek() == '*') {
            ++pos;
            read_factor(m);
        }
        if (negate) coeff = -coeff;
        out.add_term(m, coeff);
    }

    Polynomial run() {
        Polynomial out(field, vars.size());
        if (eof()) error("empty input", 0);
        bool negate = false;
        if (peek() == '+' || peek() == '-') {
            negate = text[pos] == '-';
            ++pos;
        }
        read_term(out, negate);
        while (!eof()) {
            char c = peek();
            if (c != '+' && c != '-') error("expected '+' or '-'", pos);
            ++pos;
            read_term(out, c == '-');
        }
        return out;
    }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                            Field field) {
    return Parser(text, vars, field).run();
}

void RingElement::prune() {
    for (auto it = comp.begin(); it != comp.end();) {
        bool zero = std::all_of(it->second.begin(), it->second.end(),
                                [](const Scalar& s) { return s.is_zero(); });
        it = zero ? comp.erase(it) : std::next(it);
    }
}

RingElement& RingElement::operator+=(const RingElement& o) {
    for (const auto& [j, v] : o.comp) {
        auto it = comp.find(j);
        if (it == comp.end()) {
            comp[j] = v;
        } else {
            check_internal(it->second.size() == v.size(), "ring element chart mismatch");
            for (size_t i = 0; i < v.size(); ++i) it->second[i] += v[i];
        }
    }
    prune();
    return *this;
}

RingElement RingElement::operator*(const Scalar& s) const {
    RingElement out;
    if (s.is_zero()) return out;
    for (const auto& [j, v] : comp) {
        Vec w = v;
        for (Scalar& x : w) x *= s;
        out.comp[j] = std::move(w);
    }
    return out;
}

GradedQuotientRing::DegreeData GradedQuotientRing::build_degree(
    const std::vector<Polynomial>& gens, Field f, size_t nvars, int j) {
    DegreeData d;
    d.monomials = monomials_of_degree(nvars, j);
    for (size_t c = 0; c < d.monomials.size(); ++c) d.index[d.monomials[c]] = c;

    // I_j = span of all monomial multiples of the generators landing here.
    std::vector<Vec> span;
    for (const Polynomial& g : gens) {
        int dg = *g.homogeneous_degree();
        if (dg > j) continue;
        for (const Monomial& mu : monomials_of_degree(nvars, j - dg)) {
            Vec row(d.monomials.size(), Scalar::zero(f));
            for (const auto& [m, c] : g.terms()) row[d.index.at(mu.times(m))] += c;
            span.push_back(std::move(row));
        }
    }
    d.ideal = Subspace::from_span(f, d.monomials.size(), span);

    std::vector<bool> is_pivot(d.monomials.size(), false);
    for (size_t p : d.ideal.pivot_cols()) is_pivot[p] = true;
    std::vector<size_t> normal_of_col(d.monomials.size(), SIZE_MAX);
    for (size_t c = 0; c < d.monomials.size(); ++c) {
        if (!is_pivot[c]) {
            normal_of_col[c] = d.normal_cols.size();
            d.normal_cols.push_back(c);
        }
    }
    d.dim = d.normal_cols.size();

    d.reduce_table.assign(d.monomials.size(), Vec(d.dim, Scalar::zero(f)));
    for (size_t c = 0; c < d.monomials.size(); ++c) {
        if (!is_pivot[c]) {
            d.reduce_table[c][normal_of_col[c]] = Scalar::one(f);
        }
    }
    for (size_t r = 0; r < d.ideal.rank(); ++r) {
        size_t p = d.ideal.pivot_cols()[r];
        const Vec& row = d.ideal.basis()[r];
        for (size_t c = 0; c < d.monomials.size(); ++c) {
            if (c == p || row[c].is_zero()) continue;
            // pivot monomial = -sum of its non-pivot tail inside R_j
            d.reduce_table[p][normal_of_col[c]] = -row[c];
        }
    }
    return d;
}

GradedQuotientRing GradedQuotientRing::build(const std::vector<std::string>& vars, Field field,
                                             const std::vector<std::string>& generator_texts,
                                             const CutoffPolicy& policy) {
    if (vars.empty()) fail_input("at least one variable is required");
    for (size_t i = 0; i < vars.size(); ++i) {
        const std::string& v = vars[i];
        if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
            fail_input("invalid variable name '" + v + "'");
        for (char c : v)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                fail_input("invalid variable name '" + v + "'");
        for (size_t k = i + 1; k < vars.size(); ++k)
            if (vars[k] == v) fail_input("duplicate variable '" + v + "'");
    }

    GradedQuotientRing R;
    R.f_ = field;
    R.vars_ = vars;
    R.declared_depth_ = policy.depth;
    for (const std::string& text : generator_texts) {
        Polynomial p = parse_polynomial(text, vars, field);
        if (p.is_zero()) fail_input("zero generator '" + text + "'");
        auto deg = p.homogeneous_degree();
        if (!deg) fail_input("non-homogeneous generator '" + text + "'");
        if (*deg < 2) fail_input("generator '" + text + "' has degree " + std::to_string(*deg) +
                                 "; generators must have degree >= 2");
        R.gens_.push_back(std::move(p));
    }

    constexpr int kArtinianScanLimit = 32;
    int limit = policy.cutoff ? *policy.cutoff : kArtinianScanLimit;
    if (policy.cutoff && *policy.cutoff < 1) fail_input("cutoff must be positive");

    for (int j = 0;; ++j) {
        R.deg_.push_back(build_degree(R.gens_, field, vars.size(), j));
        if (R.deg_.back().dim == 0) {
            R.artinian_ = true;
            R.socle_ = j - 1;
            break;
        }
        if (j >= limit) break;
    }

    if (R.artinian_) {
        R.cutoff_ = R.socle_ + 5;
        while (static_cast<int>(R.deg_.size()) <= R.cutoff_)
            R.deg_.push_back(build_degree(R.gens_, field, vars.size(),
                                          static_cast<int>(R.deg_.size())));
    } else if (policy.cutoff) {
        R.cutoff_ = *policy.cutoff;
    } else {
        fail_input("ring is not visibly artinian through degree " +
                   std::to_string(kArtinianScanLimit) + "; supply an explicit cutoff");
    }
    return R;
}

int GradedQuotientRing::socle_degree() const {
    check_internal(artinian_, "socle degree queried on a non-artinian ring");
    return socle_;
}

int GradedQuotientRing::codepth() const {
    if (artinian_) return static_cast<int>(nvars());
    if (!declared_depth_)
        fail_input("non-artinian ring: declared depth is required to report the codepth");
    return static_cast<int>(nvars()) - *declared_depth_;
}

void GradedQuotientRing::check_degree_available(int j) const {
    if (j < 0) fail_internal("negative internal degree");
    if (j >= static_cast<int>(deg_.size())) {
        if (artinian_) return;  // known zero
        fail_cutoff("internal degree " + std::to_string(j) + " exceeds the cutoff " +
                    std::to_string(cutoff_));
    }
}

size_t GradedQuotientRing::dim(int j) const {
    if (j < 0) return 0;
    check_degree_available(j);
    if (j >= static_cast<int>(deg_.size())) return 0;
    return deg_[static_cast<size_t>(j)].dim;
}

const GradedQuotientRing::DegreeData& GradedQuotientRing::degree_data(int j) const {
    check_degree_available(j);
    check_internal(j < static_cast<int>(deg_.size()), "degree data beyond stored range");
    return deg_[static_cast<size_t>(j)];
}

RingElement GradedQuotientRing::one() const {
    RingElement e;
    e.comp[0] = Vec{Scalar::one(f_)};
    return e;
}

RingElement GradedQuotientRing::element_from(const Polynomial& p) const {
    RingElement e;
    for (const auto& [m, c] : p.terms()) {
        int j = m.degree();
        if (dim(j) == 0 && artinian_ && j > socle_) continue;
        const DegreeData& d = degree_data(j);
        auto it = e.comp.find(j);
        if (it == e.comp.end()) it = e.comp.emplace(j, Vec(d.dim, Scalar::zero(f_))).first;
        const Vec& red = d.reduce_table[d.index.at(m)];
        for (size_t i = 0; i < d.dim; ++i) it->second[i] += c * red[i];
    }
    e.prune();
    return e;
}

RingElement GradedQuotientRing::multiply(const RingElement& u, const RingElement& v) const {
    RingElement out;
    for (const auto& [p, up] : u.comp) {
        const DegreeData& dp = degree_data(p);
        for (const auto& [q, vq] : v.comp) {
            int t = p + q;
            if (artinian_ && t > socle_) continue;  // R_t = 0
            check_degree_available(t);
            const DegreeData& dq = degree_data(q);
            const DegreeData& dt = degree_data(t);
            auto it = out.comp.find(t);
            if (it == out.comp.end())
                it = out.comp.emplace(t, Vec(dt.dim, Scalar::zero(f_))).first;
            for (size_t a = 0; a < up.size(); ++a) {
                if (up[a].is_zero()) continue;
                const Monomial& ma = dp.monomials[dp.normal_cols[a]];
                for (size_t b = 0; b < vq.size(); ++b) {
                    if (vq[b].is_zero()) continue;
                    const Monomial& mb = dq.monomials[dq.normal_cols[b]];
                    const Vec& red = dt.reduce_table[dt.index.at(ma.times(mb))];
                    Scalar c = up[a] * vq[b];
                    for (size_t i = 0; i < dt.dim; ++i)
                        if (!red[i].is_zero()) it->second[i] += c * red[i];
                }
            }
        }
    }
    out.prune();
    return out;
}

RingElement GradedQuotientRing::multiply_by_var(size_t v, const RingElement& u) const {
    RingElement out;
    for (const auto& [j, uc] : u.comp) {
        int t = j + 1;
        if (artinian_ && t > socle_) continue;
        check_degree_available(t);
        const Matrix& m = var_mult_matrix(v, j);
        Vec w = m.apply(uc);
        bool zero = std::all_of(w.begin(), w.end(), [](const Scalar& s) { return s.is_zero(); });
        if (!zero) out.comp[t] = std::move(w);
    }
    return out;
}

const Matrix& GradedQuotientRing::var_mult_matrix(size_t v, int j) const {
    auto key = std::make_pair(v, j);
    auto it = var_mult_cache_.find(key);
    if (it != var_mult_cache_.end()) return it->second;
    const DegreeData& dj = degree_data(j);
    const DegreeData& dt = degree_data(j + 1);
    Matrix m(f_, dt.dim, dj.dim);
    for (size_t a = 0; a < dj.dim; ++a) {
        const Monomial& ma = dj.monomials[dj.normal_cols[a]];
        const Vec& red = dt.reduce_table[dt.index.at(ma.times_var(v))];
        for (size_t i = 0; i < dt.dim; ++i) m.at(i, a) = red[i];
    }
    return var_mult_cache_.emplace(key, std::move(m)).first->second;
}

std::string GradedQuotientRing::element_str(const RingElement& e) const {
    if (e.is_zero()) return "0";
    std::string s;
    for (const auto& [j, v] : e.comp) {
        const DegreeData& d = degree_data(j);
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i].is_zero()) continue;
            std::string c = v[i].str();
            std::string mono = d.monomials[d.normal_cols[i]].str(vars_);
            if (!s.empty()) s += " + ";
            s += (c == "1" && mono != "1") ? mono : c + (mono == "1" ? "" : "*" + mono);
        }
    }
    return s;
}

}  // namespace kres::poly
