#include "koszul.hpp"

#include <algorithm>
#include <bit>

namespace kres::koszul {

using lin::Matrix;
using lin::Scalar;
using lin::Subspace;
using lin::Vec;
using poly::RingElement;

void KoszulElement::prune() {
    for (auto it = coeff.begin(); it != coeff.end();) {
        it->second.prune();
        it = it->second.is_zero() ? coeff.erase(it) : std::next(it);
    }
}

KoszulElement& KoszulElement::operator+=(const KoszulElement& o) {
    check_internal(hdeg == o.hdeg || is_zero() || o.is_zero(),
                   "adding Koszul elements of different homological degree");
    if (is_zero()) hdeg = o.hdeg;
    for (const auto& [mask, re] : o.coeff) {
        auto it = coeff.find(mask);
        if (it == coeff.end())
            coeff[mask] = re;
        else
            it->second += re;
    }
    prune();
    return *this;
}

KoszulElement KoszulElement::operator*(const Scalar& s) const {
    KoszulElement out{hdeg, {}};
    if (s.is_zero()) return out;
    for (const auto& [mask, re] : coeff) out.coeff[mask] = re * s;
    out.prune();
    return out;
}

bool KoszulElement::operator==(const KoszulElement& o) const {
    if (is_zero() && o.is_zero()) return true;
    return hdeg == o.hdeg && coeff == o.coeff;
}

std::set<int> KoszulElement::internal_degrees() const {
    std::set<int> out;
    for (const auto& [mask, re] : coeff)
        for (const auto& [d, v] : re.comp) out.insert(d + hdeg);
    return out;
}

int KoszulElement::internal_degree() const {
    std::set<int> ds = internal_degrees();
    check_internal(ds.size() == 1, "internal_degree on a non-homogeneous element");
    return *ds.begin();
}

KoszulElement KoszulElement::component(int internal_degree) const {
    KoszulElement out{hdeg, {}};
    int ring_deg = internal_degree - hdeg;
    for (const auto& [mask, re] : coeff) {
        auto it = re.comp.find(ring_deg);
        if (it == re.comp.end()) continue;
        RingElement r;
        r.comp[ring_deg] = it->second;
        r.prune();
        if (!r.is_zero()) out.coeff[mask] = std::move(r);
    }
    return out;
}

bool KoszulElement::in_mk(int k) const {
    for (const auto& [mask, re] : coeff)
        for (const auto& [d, v] : re.comp)
            if (d < k) return false;
    return true;
}

int wedge_sign(uint32_t s, uint32_t t) {
    int inversions = 0;
    uint32_t rest = t;
    while (rest) {
        int bit = std::countr_zero(rest);
        rest &= rest - 1;
        inversions += std::popcount(s >> (bit + 1));
    }
    return inversions % 2 == 0 ? 1 : -1;
}

KoszulComplex::KoszulComplex(const poly::GradedQuotientRing& R) : R_(R) {
    size_t n = R.nvars();
    check_internal(n < 31, "too many variables for bitmask exterior indices");
    subsets_.resize(n + 1);
    for (size_t i = 0; i <= n; ++i) {
        if (i == 0) {
            subsets_[0] = {0u};
            continue;
        }
        // Gosper's hack walks fixed-popcount masks in increasing numeric
        // order, which is exactly the colex order on subsets.
        uint32_t v = (1u << i) - 1;
        uint32_t limit = 1u << n;
        while (v < limit) {
            subsets_[i].push_back(v);
            uint32_t c = v & -v, r = v + c;
            v = (((r ^ v) >> 2) / c) | r;
            if (c == 0) break;
        }
    }
}

const std::vector<uint32_t>& KoszulComplex::subsets(int i) const {
    static const std::vector<uint32_t> empty;
    if (i < 0 || i > static_cast<int>(nvars())) return empty;
    return subsets_[static_cast<size_t>(i)];
}

size_t KoszulComplex::subset_index(int i, uint32_t mask) const {
    const auto& list = subsets(i);
    auto it = std::lower_bound(list.begin(), list.end(), mask);
    check_internal(it != list.end() && *it == mask, "unknown exterior index");
    return static_cast<size_t>(it - list.begin());
}

int KoszulComplex::max_internal_degree(int i) const {
    if (R_.artinian()) return R_.socle_degree() + i;
    return R_.cutoff() + i;
}

const KoszulComplex::Piece& KoszulComplex::piece(int i, int j) const {
    auto key = std::make_pair(i, j);
    auto it = pieces_.find(key);
    if (it != pieces_.end()) return it->second;
    Piece p;
    p.i = i;
    p.j = j;
    p.subset_count = subsets(i).size();
    p.block = (i < 0 || j < i) ? 0 : R_.dim(j - i);
    p.dim = p.subset_count * p.block;
    return pieces_.emplace(key, p).first->second;
}

const Matrix& KoszulComplex::diff(int i, int j) const {
    auto key = std::make_pair(i, j);
    auto it = diffs_.find(key);
    if (it != diffs_.end()) return it->second;

    const Piece& src = piece(i, j);
    const Piece& dst = piece(i - 1, j);
    Matrix m(R_.field(), dst.dim, src.dim);
    if (src.dim != 0 && dst.dim != 0) {
        const auto& subs = subsets(i);
        for (size_t si = 0; si < subs.size(); ++si) {
            uint32_t mask = subs[si];
            int pos = 0;
            uint32_t rest = mask;
            while (rest) {
                int v = std::countr_zero(rest);
                rest &= rest - 1;
                ++pos;  // 1-based position within the increasing subset
                int sign = pos % 2 == 1 ? 1 : -1;
                size_t ti = subset_index(i - 1, mask & ~(1u << v));
                const Matrix& mult = R_.var_mult_matrix(static_cast<size_t>(v), j - i);
                for (size_t a = 0; a < src.block; ++a)
                    for (size_t b = 0; b < dst.block; ++b) {
                        const Scalar& c = mult.at(b, a);
                        if (c.is_zero()) continue;
                        Scalar val = sign == 1 ? c : -c;
                        m.at(ti * dst.block + b, si * src.block + a) += val;
                    }
            }
        }
    }
    return diffs_.emplace(key, std::move(m)).first->second;
}

const lin::SolveFactor& KoszulComplex::diff_solver(int i, int j) const {
    auto key = std::make_pair(i, j);
    auto it = diff_solvers_.find(key);
    if (it != diff_solvers_.end()) return it->second;
    return diff_solvers_.emplace(key, lin::SolveFactor(diff(i, j))).first->second;
}

const Subspace& KoszulComplex::cycle_space(int i, int j) const {
    auto key = std::make_pair(i, j);
    auto it = cycles_.find(key);
    if (it != cycles_.end()) return it->second;
    Subspace s = i == 0 ? Subspace::full(R_.field(), piece(0, j).dim)
                        : lin::kernel_basis(diff(i, j));
    return cycles_.emplace(key, std::move(s)).first->second;
}

const Subspace& KoszulComplex::boundary_space(int i, int j) const {
    auto key = std::make_pair(i, j);
    auto it = boundaries_.find(key);
    if (it != boundaries_.end()) return it->second;
    const Piece& here = piece(i, j);
    Subspace s = Subspace::zero(R_.field(), here.dim);
    if (i + 1 <= static_cast<int>(nvars()) && piece(i + 1, j).dim > 0 && here.dim > 0) {
        const Matrix& d = diff(i + 1, j);
        std::vector<Vec> cols;
        cols.reserve(d.cols());
        for (size_t c = 0; c < d.cols(); ++c) cols.push_back(d.col(c));
        s = Subspace::from_span(R_.field(), here.dim, cols);
    }
    return boundaries_.emplace(key, std::move(s)).first->second;
}

KoszulElement KoszulComplex::generator(int hdeg, uint32_t mask) const {
    check_internal(std::popcount(mask) == hdeg, "generator mask size mismatch");
    KoszulElement e{hdeg, {}};
    e.coeff[mask] = R_.one();
    return e;
}

KoszulElement KoszulComplex::from_polynomial_coeff(int hdeg, uint32_t mask,
                                                   const poly::Polynomial& p) const {
    check_internal(std::popcount(mask) == hdeg, "mask size mismatch");
    KoszulElement e{hdeg, {}};
    RingElement re = R_.element_from(p);
    if (!re.is_zero()) e.coeff[mask] = std::move(re);
    return e;
}

KoszulElement KoszulComplex::wedge(const KoszulElement& u, const KoszulElement& v) const {
    // K_m = 0 for m > n, so such products collapse to zero on their own:
    // every index pair meets.
    KoszulElement out{u.hdeg + v.hdeg, {}};
    for (const auto& [s, rs] : u.coeff) {
        for (const auto& [t, rt] : v.coeff) {
            if ((s & t) != 0) continue;
            RingElement prod = R_.multiply(rs, rt);
            if (prod.is_zero()) continue;
            int sign = wedge_sign(s, t);
            uint32_t st = s | t;
            auto it = out.coeff.find(st);
            if (it == out.coeff.end()) {
                out.coeff[st] = sign == 1 ? prod : prod * Scalar::from_int(R_.field(), -1);
            } else {
                it->second += sign == 1 ? prod : prod * Scalar::from_int(R_.field(), -1);
            }
        }
    }
    out.prune();
    return out;
}

KoszulElement KoszulComplex::differential(const KoszulElement& u) const {
    KoszulElement out{u.hdeg - 1, {}};
    if (u.hdeg == 0) return KoszulElement{0, {}};  // ∂_0 = 0
    for (const auto& [mask, re] : u.coeff) {
        int pos = 0;
        uint32_t rest = mask;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            ++pos;
            RingElement term = R_.multiply_by_var(static_cast<size_t>(v), re);
            if (term.is_zero()) continue;
            if (pos % 2 == 0) term = term * Scalar::from_int(R_.field(), -1);
            uint32_t sub = mask & ~(1u << v);
            auto it = out.coeff.find(sub);
            if (it == out.coeff.end())
                out.coeff[sub] = std::move(term);
            else
                it->second += term;
        }
    }
    out.prune();
    return out;
}

KoszulElement KoszulComplex::lift_boundary(int i, const KoszulElement& target) const {
    check_internal(target.hdeg == i - 1 || target.is_zero(), "lift_boundary degree mismatch");
    KoszulElement lift{i, {}};
    bool target_in_m2K = target.in_mk(2);
    for (int j : target.internal_degrees()) {
        Vec rhs = to_coords(target, i - 1, j);
        auto x = diff_solver(i, j).solve(rhs);
        if (!x) throw Error(ErrorKind::Verify, "lift_boundary: target is not a boundary at internal degree " +
                                                   std::to_string(j));
        lift += from_coords(i, j, *x);
    }
    // Preimage property behind minimality: m^2 K targets lift into m K.
    if (target_in_m2K) check_internal(lift.in_mk(1), "lift of an m^2K boundary left mK");
    return lift;
}

Vec KoszulComplex::to_coords(const KoszulElement& u, int i, int j) const {
    const Piece& p = piece(i, j);
    Vec out(p.dim, Scalar::zero(R_.field()));
    for (const auto& [mask, re] : u.coeff) {
        auto it = re.comp.find(j - i);
        if (it == re.comp.end()) continue;
        size_t si = subset_index(i, mask);
        for (size_t b = 0; b < p.block; ++b) out[si * p.block + b] = it->second[b];
    }
    return out;
}

KoszulElement KoszulComplex::from_coords(int i, int j, const Vec& coords) const {
    const Piece& p = piece(i, j);
    check_internal(coords.size() == p.dim, "from_coords dimension mismatch");
    KoszulElement out{i, {}};
    const auto& subs = subsets(i);
    for (size_t si = 0; si < subs.size(); ++si) {
        Vec block(coords.begin() + static_cast<long>(si * p.block),
                  coords.begin() + static_cast<long>((si + 1) * p.block));
        bool zero = std::all_of(block.begin(), block.end(),
                                [](const Scalar& s) { return s.is_zero(); });
        if (zero) continue;
        RingElement re;
        re.comp[j - i] = std::move(block);
        out.coeff[subs[si]] = std::move(re);
    }
    return out;
}

Matrix KoszulComplex::wedge_operator(const KoszulElement& w, int m, int p) const {
    int h = w.hdeg;
    int dw = w.is_zero() ? 0 : w.internal_degree();
    const Piece& src = piece(m, p);
    const Piece& dst = piece(m + h, p + dw);
    Matrix out(R_.field(), dst.dim, src.dim);
    if (src.dim == 0 || dst.dim == 0 || w.is_zero()) return out;
    const auto& subs = subsets(m);
    for (size_t si = 0; si < subs.size(); ++si) {
        for (size_t a = 0; a < src.block; ++a) {
            // image of the basis element (monomial a) * T_S
            KoszulElement basis{m, {}};
            RingElement re;
            Vec unit(src.block, Scalar::zero(R_.field()));
            unit[a] = Scalar::one(R_.field());
            re.comp[p - m] = std::move(unit);
            basis.coeff[subs[si]] = std::move(re);
            Vec img = to_coords(wedge(w, basis), m + h, p + dw);
            size_t col = si * src.block + a;
            for (size_t r = 0; r < dst.dim; ++r)
                if (!img[r].is_zero()) out.at(r, col) = img[r];
        }
    }
    return out;
}

std::string KoszulComplex::element_str(const KoszulElement& u) const {
    if (u.is_zero()) return "0";
    std::string s;
    for (const auto& [mask, re] : u.coeff) {
        std::string basis = "T_{";
        uint32_t rest = mask;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            basis += std::to_string(v + 1);
        }
        basis += "}";
        if (!s.empty()) s += " + ";
        s += "(" + R_.element_str(re) + ")*" + (mask == 0 ? "1" : basis);
    }
    return s;
}

}  // namespace kres::koszul
