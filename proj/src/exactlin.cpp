#include "exactlin.hpp"

#include <algorithm>

namespace kres::lin {

namespace {

void require_same_field(const Field& a, const Field& b) {
    check_internal(a == b, "scalar field mismatch");
}

uint64_t mod_add(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
}

uint64_t mod_sub(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }

uint64_t mod_mul(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t mod_pow(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t mod_inv(uint64_t a, uint64_t p) {
    check_internal(a % p != 0, "inverse of zero residue");
    return mod_pow(a % p, p - 2, p);
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

Field Field::prime(uint64_t p) {
    if (p < 2 || p >= (1ull << 31) || !is_prime_u64(p))
        fail_input("field characteristic must be a prime below 2^31, got " + std::to_string(p));
    Field f;
    f.p_ = p;
    return f;
}

std::string Field::str() const {
    return is_rational() ? "QQ" : "GF(" + std::to_string(p_) + ")";
}

Scalar Scalar::one(Field f) { return from_int(f, 1); }

Scalar Scalar::from_int(Field f, long long v) {
    Scalar s(f);
    if (f.is_rational()) {
        s.q_ = mpq_class(static_cast<long>(v));
    } else {
        uint64_t p = f.characteristic();
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        s.r_ = static_cast<uint64_t>(r);
    }
    return s;
}

Scalar Scalar::from_mpq(mpq_class q) {
    Scalar s;
    q.canonicalize();
    s.q_ = std::move(q);
    return s;
}

Scalar Scalar::parse(Field f, const std::string& text) {
    std::string t = text;
    if (t.empty()) fail_input("empty numeric literal");
    std::string num = t, den = "1";
    auto slash = t.find('/');
    if (slash != std::string::npos) {
        num = t.substr(0, slash);
        den = t.substr(slash + 1);
        if (num.empty() || den.empty()) fail_input("malformed fraction '" + text + "'");
    }
    mpz_class n, d;
    if (n.set_str(num, 10) != 0) fail_input("malformed integer '" + num + "'");
    if (d.set_str(den, 10) != 0 || d <= 0) fail_input("malformed denominator '" + den + "'");
    if (f.is_rational()) {
        Scalar s(f);
        s.q_ = mpq_class(n) / mpq_class(d);
        s.q_.canonicalize();
        return s;
    }
    uint64_t p = f.characteristic();
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class nr = n % pz, dr = d % pz;
    if (nr < 0) nr += pz;
    if (dr == 0) fail_input("denominator '" + den + "' vanishes in " + f.str());
    Scalar s(f);
    s.r_ = mod_mul(nr.get_ui(), mod_inv(dr.get_ui(), p), p);
    return s;
}

bool Scalar::is_zero() const { return f_.is_rational() ? q_ == 0 : r_ == 0; }
bool Scalar::is_one() const { return f_.is_rational() ? q_ == 1 : r_ == 1; }

Scalar Scalar::operator-() const {
    Scalar s(*this);
    if (f_.is_rational())
        s.q_ = -q_;
    else if (r_ != 0)
        s.r_ = f_.characteristic() - r_;
    return s;
}

Scalar Scalar::inverse() const {
    Scalar s(f_);
    if (f_.is_rational()) {
        check_internal(q_ != 0, "inverse of zero");
        s.q_ = 1 / q_;
    } else {
        s.r_ = mod_inv(r_, f_.characteristic());
    }
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    require_same_field(f_, o.f_);
    if (f_.is_rational())
        q_ += o.q_;
    else
        r_ = mod_add(r_, o.r_, f_.characteristic());
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    require_same_field(f_, o.f_);
    if (f_.is_rational())
        q_ -= o.q_;
    else
        r_ = mod_sub(r_, o.r_, f_.characteristic());
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    require_same_field(f_, o.f_);
    if (f_.is_rational())
        q_ *= o.q_;
    else
        r_ = mod_mul(r_, o.r_, f_.characteristic());
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
    if (f_ != o.f_) return false;
    return f_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::str() const {
    return f_.is_rational() ? q_.get_str() : std::to_string(r_);
}

Matrix Matrix::identity(Field f, size_t n) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Vec Matrix::row(size_t r) const {
    Vec v(e_.begin() + static_cast<long>(r * cols_), e_.begin() + static_cast<long>((r + 1) * cols_));
    return v;
}

Vec Matrix::col(size_t c) const {
    Vec v;
    v.reserve(rows_);
    for (size_t r = 0; r < rows_; ++r) v.push_back(at(r, c));
    return v;
}

void Matrix::set_row(size_t r, const Vec& v) {
    check_internal(v.size() == cols_, "row length mismatch");
    std::copy(v.begin(), v.end(), e_.begin() + static_cast<long>(r * cols_));
}

Vec Matrix::apply(const Vec& v) const {
    check_internal(v.size() == cols_, "matrix-vector dimension mismatch");
    Vec out(rows_, Scalar::zero(f_));
    for (size_t r = 0; r < rows_; ++r) {
        Scalar acc = Scalar::zero(f_);
        for (size_t c = 0; c < cols_; ++c) {
            if (!at(r, c).is_zero() && !v[c].is_zero()) acc += at(r, c) * v[c];
        }
        out[r] = acc;
    }
    return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    check_internal(a.cols() == b.rows(), "matmul dimension mismatch");
    Matrix out(a.field(), a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (size_t j = 0; j < b.cols(); ++j)
                if (!b.at(k, j).is_zero()) out.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return out;
}

Rref rref(const Matrix& m) {
    Matrix a = m;
    std::vector<size_t> pivots;
    size_t next_row = 0;
    for (size_t col = 0; col < a.cols() && next_row < a.rows(); ++col) {
        size_t sel = a.rows();
        for (size_t r = next_row; r < a.rows(); ++r) {
            if (!a.at(r, col).is_zero()) {
                sel = r;
                break;
            }
        }
        if (sel == a.rows()) continue;
        if (sel != next_row)
            for (size_t c = col; c < a.cols(); ++c) std::swap(a.at(sel, c), a.at(next_row, c));
        Scalar inv = a.at(next_row, col).inverse();
        for (size_t c = col; c < a.cols(); ++c) a.at(next_row, c) *= inv;
        for (size_t r = 0; r < a.rows(); ++r) {
            if (r == next_row || a.at(r, col).is_zero()) continue;
            Scalar factor = a.at(r, col);
            for (size_t c = col; c < a.cols(); ++c) a.at(r, c) -= factor * a.at(next_row, c);
        }
        pivots.push_back(col);
        ++next_row;
    }
    return Rref{std::move(a), std::move(pivots)};
}

size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Subspace Subspace::zero(Field f, size_t ambient) {
    Subspace s;
    s.f_ = f;
    s.ambient_ = ambient;
    return s;
}

Subspace Subspace::full(Field f, size_t ambient) {
    Subspace s = zero(f, ambient);
    for (size_t i = 0; i < ambient; ++i) {
        Vec v(ambient, Scalar::zero(f));
        v[i] = Scalar::one(f);
        s.rows_.push_back(std::move(v));
        s.pivots_.push_back(i);
    }
    return s;
}

Subspace Subspace::from_span(Field f, size_t ambient, const std::vector<Vec>& span) {
    Matrix m(f, span.size(), ambient);
    for (size_t r = 0; r < span.size(); ++r) m.set_row(r, span[r]);
    Rref rr = rref(m);
    Subspace s = zero(f, ambient);
    for (size_t r = 0; r < rr.pivots.size(); ++r) {
        s.rows_.push_back(rr.reduced.row(r));
        s.pivots_.push_back(rr.pivots[r]);
    }
    return s;
}

Vec Subspace::reduce(Vec v) const {
    check_internal(v.size() == ambient_, "ambient dimension mismatch");
    for (size_t r = 0; r < rows_.size(); ++r) {
        const Scalar& coef = v[pivots_[r]];
        if (coef.is_zero()) continue;
        Scalar factor = coef;
        const Vec& row = rows_[r];
        for (size_t c = 0; c < ambient_; ++c)
            if (!row[c].is_zero()) v[c] -= factor * row[c];
    }
    return v;
}

bool Subspace::contains(const Vec& v) const {
    Vec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Subspace::contains(const Subspace& other) const {
    return std::all_of(other.rows_.begin(), other.rows_.end(),
                       [&](const Vec& v) { return contains(v); });
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
    check_internal(v.size() == ambient_, "ambient dimension mismatch");
    Vec coords;
    coords.reserve(rows_.size());
    Vec rem = v;
    for (size_t r = 0; r < rows_.size(); ++r) {
        Scalar c = rem[pivots_[r]];
        coords.push_back(c);
        if (c.is_zero()) continue;
        for (size_t j = 0; j < ambient_; ++j)
            if (!rows_[r][j].is_zero()) rem[j] -= c * rows_[r][j];
    }
    for (const Scalar& s : rem)
        if (!s.is_zero()) return std::nullopt;
    return coords;
}

Subspace kernel_basis(const Matrix& m) {
    Rref rr = rref(m);
    Field f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : rr.pivots) is_pivot[p] = true;

    Subspace s = Subspace::zero(f, m.cols());
    // One generator per non-pivot column: unit there, minus the reduced column
    // on the pivot coordinates. These rows have unit pivots (at the non-pivot
    // columns) that vanish in every other row.
    for (size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        Vec v(m.cols(), Scalar::zero(f));
        v[c] = Scalar::one(f);
        for (size_t r = 0; r < rr.pivots.size(); ++r) v[rr.pivots[r]] = -rr.reduced.at(r, c);
        s.rows_.push_back(std::move(v));
        s.pivots_.push_back(c);
    }
    return s;
}

std::optional<Vec> solve(const Matrix& m, const Vec& rhs) {
    check_internal(rhs.size() == m.rows(), "rhs length mismatch");
    Matrix aug(m.field(), m.rows(), m.cols() + 1);
    for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols()) = rhs[r];
    }
    Rref rr = rref(aug);
    Vec x(m.cols(), Scalar::zero(m.field()));
    for (size_t r = 0; r < rr.pivots.size(); ++r) {
        if (rr.pivots[r] == m.cols()) return std::nullopt;  // pivot in rhs column
        x[rr.pivots[r]] = rr.reduced.at(r, m.cols());
    }
    return x;
}

SolveFactor::SolveFactor(const Matrix& a) : cols_(a.cols()) {
    // Eliminate [a | I]; the identity block records the row operations.
    Matrix aug(a.field(), a.rows(), a.cols() + a.rows());
    for (size_t r = 0; r < a.rows(); ++r) {
        for (size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols() + r) = Scalar::one(a.field());
    }
    Rref rr = rref(aug);
    // pivots within the a-block only (the identity block always completes)
    r_ = Matrix(a.field(), a.rows(), a.cols());
    t_ = Matrix(a.field(), a.rows(), a.rows());
    for (size_t r = 0; r < a.rows(); ++r) {
        for (size_t c = 0; c < a.cols(); ++c) r_.at(r, c) = rr.reduced.at(r, c);
        for (size_t c = 0; c < a.rows(); ++c) t_.at(r, c) = rr.reduced.at(r, a.cols() + c);
    }
    for (size_t p : rr.pivots)
        if (p < a.cols()) pivots_.push_back(p);
}

std::optional<Vec> SolveFactor::solve(const Vec& rhs) const {
    check_internal(rhs.size() == t_.rows(), "SolveFactor rhs length mismatch");
    Vec reduced = t_.apply(rhs);
    Vec x(cols_, Scalar::zero(t_.field()));
    for (size_t r = 0; r < pivots_.size(); ++r) x[pivots_[r]] = reduced[r];
    // rows beyond the pivot rows must reduce to zero for consistency
    for (size_t r = pivots_.size(); r < reduced.size(); ++r)
        if (!reduced[r].is_zero()) return std::nullopt;
    return x;
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    check_internal(u.ambient_dim() == v.ambient_dim(), "subspace_sum: ambient mismatch");
    std::vector<Vec> span = u.basis();
    span.insert(span.end(), v.basis().begin(), v.basis().end());
    return Subspace::from_span(u.field(), u.ambient_dim(), span);
}

Subspace intersect(const Subspace& u, const Subspace& v) {
    check_internal(u.ambient_dim() == v.ambient_dim(), "intersect: ambient mismatch");
    Field f = u.field();
    size_t ru = u.rank(), rv = v.rank();
    // Columns are u's basis followed by v's negated basis; kernel vectors give
    // the coefficient pairs of common elements.
    Matrix m(f, u.ambient_dim(), ru + rv);
    for (size_t j = 0; j < ru; ++j)
        for (size_t i = 0; i < u.ambient_dim(); ++i) m.at(i, j) = u.basis()[j][i];
    for (size_t j = 0; j < rv; ++j)
        for (size_t i = 0; i < u.ambient_dim(); ++i) m.at(i, ru + j) = -v.basis()[j][i];
    Subspace ker = kernel_basis(m);
    std::vector<Vec> span;
    for (const Vec& k : ker.basis()) {
        Vec w(u.ambient_dim(), Scalar::zero(f));
        for (size_t j = 0; j < ru; ++j) {
            if (k[j].is_zero()) continue;
            for (size_t i = 0; i < u.ambient_dim(); ++i) w[i] += k[j] * u.basis()[j][i];
        }
        span.push_back(std::move(w));
    }
    return Subspace::from_span(f, u.ambient_dim(), span);
}

std::vector<Vec> complement_basis(const Subspace& sub, const Subspace& within) {
    check_internal(sub.ambient_dim() == within.ambient_dim(), "complement: ambient mismatch");
    if (!within.contains(sub)) fail_input("complement_basis: sub is not contained in within");
    std::vector<Vec> kept;
    std::vector<Vec> span = sub.basis();
    Subspace current = sub;
    for (const Vec& cand : within.basis()) {
        if (current.contains(cand)) continue;
        kept.push_back(cand);
        span.push_back(cand);
        current = Subspace::from_span(sub.field(), sub.ambient_dim(), span);
    }
    check_internal(current.rank() == within.rank(), "complement does not reach full rank");
    return kept;
}

// --- sparse rank engine -----------------------------------------------------

void SparseMatrix::add_row(std::vector<std::pair<size_t, Scalar>> row) {
    entries.push_back(std::move(row));
    rows = entries.size();
}

namespace {

using ZRow = std::vector<std::pair<size_t, mpz_class>>;

// Clears denominators and strips content, producing a primitive integer row.
ZRow to_primitive_row(const std::vector<std::pair<size_t, Scalar>>& row) {
    ZRow out;
    if (row.empty()) return out;
    mpz_class lcm = 1;
    for (const auto& [c, s] : row) {
        if (s.is_zero()) continue;
        mpz_class den = s.rational().get_den();
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    mpz_class content = 0;
    for (const auto& [c, s] : row) {
        if (s.is_zero()) continue;
        mpz_class v = s.rational().get_num() * (lcm / s.rational().get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        out.emplace_back(c, std::move(v));
    }
    if (content > 1)
        for (auto& [c, v] : out) v /= content;
    return out;
}

void strip_content(ZRow& row) {
    mpz_class g = 0;
    for (auto& [c, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) return;
    }
    if (g > 1)
        for (auto& [c, v] : row) v /= g;
}

// r := a*r - b*pivot, merged on sorted column indices.
ZRow combine(const ZRow& r, const ZRow& pivot, const mpz_class& a, const mpz_class& b) {
    ZRow out;
    out.reserve(r.size() + pivot.size());
    size_t i = 0, j = 0;
    mpz_class tmp;
    while (i < r.size() || j < pivot.size()) {
        if (j >= pivot.size() || (i < r.size() && r[i].first < pivot[j].first)) {
            out.emplace_back(r[i].first, a * r[i].second);
            ++i;
        } else if (i >= r.size() || pivot[j].first < r[i].first) {
            out.emplace_back(pivot[j].first, -b * pivot[j].second);
            ++j;
        } else {
            tmp = a * r[i].second - b * pivot[j].second;
            if (tmp != 0) out.emplace_back(r[i].first, tmp);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

bool SparseEchelon::insert(const SparseVec& raw) {
    if (!raw.empty() && !raw.front().second.field().is_rational()) {
        // prime-field rows ride the same structure with residues as integers
        // reduced through the field arithmetic
        uint64_t p = raw.front().second.field().characteristic();
        ZRow row;
        mpz_class pz(static_cast<unsigned long>(p));
        for (const auto& [c, s] : raw)
            if (s.residue() % p != 0) row.emplace_back(c, mpz_class(static_cast<unsigned long>(s.residue())));
        while (!row.empty()) {
            size_t lead = row.front().first;
            auto it = std::lower_bound(
                pivot_at_.begin(), pivot_at_.end(), std::make_pair(lead, size_t{0}),
                [](const auto& a, const auto& b) { return a.first < b.first; });
            if (it == pivot_at_.end() || it->first != lead) {
                pivot_rows_.push_back(std::move(row));
                pivot_at_.insert(it, {lead, pivot_rows_.size() - 1});
                return true;
            }
            const ZRow& pv = pivot_rows_[it->second];
            row = combine(row, pv, pv.front().second, row.front().second);
            for (auto& [c, v] : row) v %= pz;
            ZRow cleaned;
            for (auto& [c, v] : row) {
                if (v < 0) v += pz;
                if (v != 0) cleaned.emplace_back(c, v);
            }
            row = std::move(cleaned);
        }
        return false;
    }
    ZRow row = to_primitive_row(raw);
    while (!row.empty()) {
        size_t lead = row.front().first;
        auto it = std::lower_bound(pivot_at_.begin(), pivot_at_.end(),
                                   std::make_pair(lead, size_t{0}),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        if (it == pivot_at_.end() || it->first != lead) {
            strip_content(row);
            pivot_rows_.push_back(std::move(row));
            pivot_at_.insert(it, {lead, pivot_rows_.size() - 1});
            return true;
        }
        const ZRow& pv = pivot_rows_[it->second];
        row = combine(row, pv, pv.front().second, row.front().second);
        strip_content(row);
    }
    return false;
}

size_t sparse_rank_exact(const SparseMatrix& m) {
    Field f = Field::rationals();
    for (const auto& row : m.entries)
        if (!row.empty()) {
            f = row.front().second.field();
            break;
        }
    SparseEchelon ech(f, m.cols);
    for (const auto& raw : m.entries) ech.insert(raw);
    return ech.rank();
}

namespace {

// Fraction-free forward pass shared by the canonical sparse RREF.
struct ForwardEchelonQ {
    std::vector<ZRow> rows;
    std::vector<std::pair<size_t, size_t>> at;  // (pivot col, row idx), sorted by col

    void insert(ZRow row) {
        while (!row.empty()) {
            size_t lead = row.front().first;
            auto it = std::lower_bound(at.begin(), at.end(), std::make_pair(lead, size_t{0}),
                                       [](const auto& a, const auto& b) { return a.first < b.first; });
            if (it == at.end() || it->first != lead) {
                strip_content(row);
                rows.push_back(std::move(row));
                at.insert(it, {lead, rows.size() - 1});
                return;
            }
            const ZRow& pv = rows[it->second];
            row = combine(row, pv, pv.front().second, row.front().second);
            strip_content(row);
        }
    }
};

}  // namespace

SparseRref sparse_rref(const SparseMatrix& m) {
    Field f = Field::rationals();
    for (const auto& row : m.entries)
        if (!row.empty()) {
            f = row.front().second.field();
            break;
        }
    SparseRref out;
    out.cols = m.cols;

    if (!f.is_rational()) {
        // prime field: ordinary sparse Gauss-Jordan with field division
        uint64_t p = f.characteristic();
        std::vector<SparseVec> rows;
        std::vector<std::pair<size_t, size_t>> at;
        auto reduce_once = [&](SparseVec& row) {
            while (!row.empty()) {
                size_t lead = row.front().first;
                auto it = std::lower_bound(at.begin(), at.end(), std::make_pair(lead, size_t{0}),
                                           [](const auto& a, const auto& b) {
                                               return a.first < b.first;
                                           });
                if (it == at.end() || it->first != lead) return;
                const SparseVec& pv = rows[it->second];
                Scalar factor = row.front().second;
                SparseVec merged;
                size_t i = 0, j = 0;
                while (i < row.size() || j < pv.size()) {
                    if (j >= pv.size() || (i < row.size() && row[i].first < pv[j].first)) {
                        merged.push_back(row[i++]);
                    } else if (i >= row.size() || pv[j].first < row[i].first) {
                        merged.emplace_back(pv[j].first, -(factor * pv[j].second));
                        ++j;
                    } else {
                        Scalar v = row[i].second - factor * pv[j].second;
                        if (!v.is_zero()) merged.emplace_back(row[i].first, v);
                        ++i;
                        ++j;
                    }
                }
                row = std::move(merged);
            }
        };
        (void)p;
        for (const auto& raw : m.entries) {
            SparseVec row;
            for (const auto& [c, s] : raw)
                if (!s.is_zero()) row.emplace_back(c, s);
            reduce_once(row);
            if (row.empty()) continue;
            Scalar inv = row.front().second.inverse();
            for (auto& [c, v] : row) v *= inv;
            rows.push_back(std::move(row));
            auto it = std::lower_bound(at.begin(), at.end(),
                                       std::make_pair(rows.back().front().first, size_t{0}),
                                       [](const auto& a, const auto& b) { return a.first < b.first; });
            at.insert(it, {rows.back().front().first, rows.size() - 1});
        }
        // back substitution, descending pivot columns
        for (size_t k = at.size(); k-- > 0;) {
            SparseVec& row = rows[at[k].second];
            for (size_t l = k + 1; l < at.size(); ++l) {
                size_t pcol = at[l].first;
                auto it = std::find_if(row.begin(), row.end(),
                                       [&](const auto& e) { return e.first == pcol; });
                if (it == row.end()) continue;
                Scalar factor = it->second;
                const SparseVec& pv = rows[at[l].second];
                SparseVec merged;
                size_t i = 0, j = 0;
                while (i < row.size() || j < pv.size()) {
                    if (j >= pv.size() || (i < row.size() && row[i].first < pv[j].first)) {
                        merged.push_back(row[i++]);
                    } else if (i >= row.size() || pv[j].first < row[i].first) {
                        merged.emplace_back(pv[j].first, -(factor * pv[j].second));
                        ++j;
                    } else {
                        Scalar v = row[i].second - factor * pv[j].second;
                        if (!v.is_zero()) merged.emplace_back(row[i].first, v);
                        ++i;
                        ++j;
                    }
                }
                row = std::move(merged);
            }
        }
        for (const auto& [col, idx] : at) {
            out.pivots.push_back(col);
            out.rows.push_back(rows[idx]);
        }
        return out;
    }

    ForwardEchelonQ fwd;
    for (const auto& raw : m.entries) fwd.insert(to_primitive_row(raw));

    // back substitution on the integer rows, descending pivot columns
    for (size_t k = fwd.at.size(); k-- > 0;) {
        ZRow& row = fwd.rows[fwd.at[k].second];
        for (size_t l = k + 1; l < fwd.at.size(); ++l) {
            size_t pcol = fwd.at[l].first;
            auto it = std::find_if(row.begin(), row.end(),
                                   [&](const auto& e) { return e.first == pcol; });
            if (it == row.end()) continue;
            const ZRow& pv = fwd.rows[fwd.at[l].second];
            row = combine(row, pv, pv.front().second, it->second);
            strip_content(row);
        }
    }
    for (const auto& [col, idx] : fwd.at) {
        const ZRow& zr = fwd.rows[idx];
        SparseVec row;
        mpq_class leadq(zr.front().second);
        for (const auto& [c, v] : zr) {
            // normalize so the pivot entry is 1
            Scalar norm = Scalar::from_mpq(mpq_class(v) / leadq);
            if (!norm.is_zero()) row.emplace_back(c, norm);
        }
        out.pivots.push_back(col);
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::vector<SparseVec> sparse_kernel(const SparseRref& r) {
    std::vector<bool> is_pivot(r.cols, false);
    for (size_t p : r.pivots) is_pivot[p] = true;
    std::vector<SparseVec> out;
    Field f = Field::rationals();
    for (const auto& row : r.rows)
        if (!row.empty()) {
            f = row.front().second.field();
            break;
        }
    for (size_t c = 0; c < r.cols; ++c) {
        if (is_pivot[c]) continue;
        SparseVec v;
        for (size_t k = 0; k < r.pivots.size(); ++k) {
            auto it = std::find_if(r.rows[k].begin(), r.rows[k].end(),
                                   [&](const auto& e) { return e.first == c; });
            if (it != r.rows[k].end()) v.emplace_back(r.pivots[k], -it->second);
        }
        v.emplace_back(c, Scalar::one(f));
        std::sort(v.begin(), v.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        out.push_back(std::move(v));
    }
    return out;
}

size_t sparse_rank_mod_p(const SparseMatrix& m, uint64_t p) {
    using PRow = std::vector<std::pair<size_t, uint64_t>>;
    std::vector<PRow> pivot_rows;
    std::vector<std::pair<size_t, size_t>> pivot_at;
    mpz_class pz(static_cast<unsigned long>(p));
    for (const auto& raw : m.entries) {
        PRow row;
        row.reserve(raw.size());
        bool droppable = false;
        if (!raw.empty() && !raw.front().second.field().is_rational()) {
            uint64_t q = raw.front().second.field().characteristic();
            check_internal(q == p, "sparse_rank_mod_p: field prime mismatch");
            for (const auto& [c, s] : raw)
                if (s.residue() % p != 0) row.emplace_back(c, s.residue() % p);
        } else {
            mpz_class lcm = 1;
            for (const auto& [c, s] : raw) {
                mpz_class den = s.rational().get_den();
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
            }
            if (mpz_divisible_p(lcm.get_mpz_t(), pz.get_mpz_t())) droppable = true;
            if (!droppable) {
                for (const auto& [c, s] : raw) {
                    mpz_class v = s.rational().get_num() * (lcm / s.rational().get_den());
                    mpz_class r = v % pz;
                    if (r < 0) r += pz;
                    if (r != 0) row.emplace_back(c, r.get_ui());
                }
            }
        }
        // Dropping a row only lowers the computed rank, which keeps the
        // lower-bound contract intact.
        if (droppable) continue;
        while (!row.empty()) {
            size_t lead = row.front().first;
            auto it = std::lower_bound(pivot_at.begin(), pivot_at.end(),
                                       std::make_pair(lead, size_t{0}),
                                       [](const auto& a, const auto& b) { return a.first < b.first; });
            if (it == pivot_at.end() || it->first != lead) {
                uint64_t inv = mod_inv(row.front().second, p);
                for (auto& [c, v] : row) v = mod_mul(v, inv, p);
                pivot_rows.push_back(std::move(row));
                pivot_at.insert(it, {lead, pivot_rows.size() - 1});
                break;
            }
            const PRow& pv = pivot_rows[it->second];
            uint64_t factor = row.front().second;
            PRow out;
            out.reserve(row.size() + pv.size());
            size_t i = 0, j = 0;
            while (i < row.size() || j < pv.size()) {
                if (j >= pv.size() || (i < row.size() && row[i].first < pv[j].first)) {
                    out.push_back(row[i]);
                    ++i;
                } else if (i >= row.size() || pv[j].first < row[i].first) {
                    out.emplace_back(pv[j].first, mod_sub(0, mod_mul(factor, pv[j].second, p), p));
                    ++j;
                } else {
                    uint64_t v = mod_sub(row[i].second, mod_mul(factor, pv[j].second, p), p);
                    if (v != 0) out.emplace_back(row[i].first, v);
                    ++i;
                    ++j;
                }
            }
            row = std::move(out);
        }
    }
    return pivot_rows.size();
}

}  // namespace kres::lin
