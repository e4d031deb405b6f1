#include "report.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace kres::report {

using json = nlohmann::ordered_json;
using InvariantInput = kres::invariants::InvariantInput;

namespace {

constexpr int kSchemaVersion = 1;

// wall-clock footer for the human-readable form only; machine reports stay
// byte-identical across runs
struct TextTimer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    void finish(Report& r) const {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        r.text += "elapsed: " + std::to_string(ms) + " ms\n";
    }
};

json header(const char* command) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

template <typename T>
json to_array(const T& values) {
    json arr = json::array();
    for (const auto& v : values) arr.push_back(v);
    return arr;
}

json class_vector(const lin::Vec& v) {
    json arr = json::array();
    for (const auto& s : v) arr.push_back(s.str());
    return arr;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

template <typename T>
std::string seq(const T& values) {
    std::vector<std::string> parts;
    for (const auto& v : values) parts.push_back(std::to_string(v));
    return "(" + join(parts, ", ") + ")";
}

}  // namespace

Session::Session(ringdef::RingDefinition def, ringdef::EngineOptions opt)
    : def_(std::move(def)), opt_(std::move(opt)) {
    ring_ = std::make_unique<poly::GradedQuotientRing>(ringdef::build_ring(def_, opt_));
    complex_ = std::make_unique<koszul::KoszulComplex>(*ring_);
    homalg_ = std::make_unique<homalg::HomologyAlgebra>(*complex_);
}

int Session::max_hdeg() const {
    int cap = opt_.max_hdeg ? *opt_.max_hdeg : 4;
    return std::max(1, std::min(cap, static_cast<int>(ring_->nvars())));
}

json Session::ring_summary() const {
    json j;
    j["field"] = ring_->field().str();
    j["vars"] = to_array(ring_->vars());
    json gens = json::array();
    for (const auto& g : ring_->generators()) gens.push_back(g.str(ring_->vars()));
    j["ideal"] = gens;
    j["artinian"] = ring_->artinian();
    if (ring_->artinian()) j["socle_degree"] = ring_->socle_degree();
    j["cutoff"] = ring_->cutoff();
    if (ring_->declared_depth()) j["declared_depth"] = *ring_->declared_depth();
    if (ring_->artinian() || ring_->declared_depth()) j["codepth"] = ring_->codepth();
    return j;
}

InvariantInput Session::engine_input() const {
    InvariantInput in;
    in.n = static_cast<int>(ring_->nvars());
    in.c = ring_->codepth();
    for (int i = 1; i <= std::min(in.c, 4); ++i)
        in.a.push_back(static_cast<long long>(homalg_->rank(i)));
    in.q11 = static_cast<long long>(homalg_->q(1, 1));
    in.q12 = static_cast<long long>(homalg_->q(1, 2));
    in.q13 = static_cast<long long>(homalg_->q(1, 3));
    in.q22 = static_cast<long long>(homalg_->q(2, 2));
    in.a_span = static_cast<long long>(homalg_->massey_span().a);
    in.b = static_cast<long long>(homalg_->phi2_split().b);
    return in;
}

Report Session::ring_check() {
    TextTimer timer;
    Report r;
    r.json = header("ring-check");
    r.json["ring"] = ring_summary();
    int top = ring_->artinian() ? ring_->socle_degree() + 1 : ring_->cutoff();
    json hilbert = json::array();
    for (int j = 0; j <= top; ++j)
        hilbert.push_back(json::array({j, ring_->dim(j)}));
    r.json["hilbert"] = hilbert;

    std::ostringstream out;
    out << "ring over " << ring_->field().str() << " in " << join(ring_->vars(), ", ") << "\n";
    out << "generators: ";
    std::vector<std::string> gens;
    for (const auto& g : ring_->generators()) gens.push_back(g.str(ring_->vars()));
    out << join(gens, ", ") << "\n";
    if (ring_->artinian())
        out << "artinian, socle degree " << ring_->socle_degree() << ", codepth "
            << ring_->codepth() << "\n";
    else
        out << "non-artinian (through cutoff " << ring_->cutoff() << ")"
            << (ring_->declared_depth()
                    ? ", declared depth " + std::to_string(*ring_->declared_depth())
                    : std::string())
            << "\n";
    out << "hilbert function:\n";
    for (int j = 0; j <= top; ++j)
        out << "  dim R_" << j << " = " << ring_->dim(j) << "\n";
    r.text = out.str();
    timer.finish(r);
    return r;
}

Report Session::invariants() {
    TextTimer timer;
    Report r;
    r.json = header("invariants");
    r.json["ring"] = ring_summary();

    int hcap = std::max(4, max_hdeg());
    hcap = std::min(hcap, static_cast<int>(ring_->nvars()));
    json hom;
    json ranks = json::array();
    json degrees = json::object();
    for (int i = 1; i <= hcap; ++i) {
        ranks.push_back(homalg_->rank(i));
        degrees["A" + std::to_string(i)] = to_array(homalg_->piece(i).degrees);
    }
    hom["a"] = ranks;
    hom["internal_degrees"] = degrees;
    r.json["homology"] = hom;

    json products;
    products["q11"] = homalg_->q(1, 1);
    products["q12"] = homalg_->q(1, 2);
    products["q13"] = homalg_->q(1, 3);
    products["q22"] = homalg_->q(2, 2);
    r.json["products"] = products;

    json families;
    families["ker_phi1"] = homalg_->p1().count;
    families["B"] = homalg_->phi2_split().b_vectors.size();
    r.json["families"] = families;

    json bsec;
    bsec["via_ker_phi2_split"] = homalg_->phi2_split().b;
    bsec["via_coker_psi"] = homalg_->coker_psi_rank();
    r.json["b"] = bsec;

    const auto& ms = homalg_->massey_span();
    json massey;
    massey["span_rank"] = ms.span.rank();
    massey["a"] = ms.a;
    massey["exhibited_by_basis_triple"] = to_array(ms.exhibited_by_basis_triple);
    r.json["massey"] = massey;

    InvariantInput in = engine_input();
    auto beta = kres::invariants::betti_formula(in);
    auto bound = kres::invariants::golod_bound(in.n, in.a, 5);
    auto defect = kres::invariants::golod_defect(in);
    auto eps = kres::invariants::deviations_formula(in);
    auto eps2 = kres::invariants::deviations_from_betti(beta);
    auto denom = kres::invariants::poincare_denominator(in);
    auto solved = kres::invariants::invariants_from_denominator(in.n, in.c, in.a, denom);

    json inv;
    inv["betti"] = {{"provenance", "closed form from engine invariants"},
                    {"values", to_array(beta)}};
    inv["bound"] = {{"provenance", "bound series recursion"}, {"values", to_array(bound)}};
    inv["defect"] = {{"provenance", "closed form, cross-checked against bound - betti"},
                     {"values", to_array(defect)}};
    inv["deviations"] = {{"formula", to_array(eps)}, {"from_betti", to_array(eps2)}};
    inv["denominator"] = to_array(denom);
    json gamma = json::array();
    for (int i = 0; i <= 5; ++i) {
        long long alpha = (i == 0) ? 1 : (i >= 2 ? -in.ai(i - 1) : 0);
        gamma.push_back(denom[static_cast<size_t>(i)] - alpha);
    }
    inv["gamma"] = gamma;
    auto c3 = kres::invariants::codepth3_specialization(in);
    inv["codepth3_specialization"] = c3 ? json(*c3) : json(nullptr);
    inv["denominator_roundtrip"] = {
        {"q11", solved.q11}, {"q12", solved.q12}, {"a_minus_b", solved.a_minus_b}};
    r.json["invariants"] = inv;

    std::ostringstream out;
    out << "homology ranks: a = " << seq(in.a) << "\n";
    out << "products: q11 = " << in.q11 << ", q12 = " << in.q12 << ", q13 = " << in.q13
        << ", q22 = " << in.q22 << "\n";
    out << "massey: span rank " << ms.span.rank() << ", a = " << ms.a << ", b = " << in.b
        << " (split route " << homalg_->phi2_split().b << ", coker psi route "
        << homalg_->coker_psi_rank() << ")\n";
    out << "betti (formula):   " << seq(beta) << "\n";
    out << "bound:             " << seq(bound) << "\n";
    out << "defect:            " << seq(defect) << "\n";
    out << "deviations:        " << seq(eps) << " / from betti " << seq(eps2) << "\n";
    out << "denominator d(t):  " << seq(denom) << "\n";
    out << "roundtrip:         q11 = " << solved.q11 << ", q12 = " << solved.q12
        << ", a - b = " << solved.a_minus_b << "\n";
    if (c3) out << "codepth<=3 check:  " << (*c3 ? "pass" : "FAIL") << "\n";
    r.text = out.str();
    timer.finish(r);
    return r;
}

Report Session::resolution(bool verify, const std::string& inject_fault) {
    TextTimer timer;
    Report r;
    r.json = header("resolution");
    r.json["ring"] = ring_summary();

    resolution::ResolutionF F = resolution::build_resolution(*homalg_);
    if (!inject_fault.empty()) {
        resolution::inject_fault(F, *complex_, inject_fault);
        r.json["injected_fault"] = inject_fault;
    }

    json layout = json::object();
    for (int i = 0; i <= 5; ++i) {
        json groups = json::array();
        for (const auto& s : F.F[static_cast<size_t>(i)]) {
            json g;
            g["block"] = s.name;
            g["copies"] = s.copies();
            g["twists"] = to_array(s.shifts);
            groups.push_back(g);
        }
        layout["F" + std::to_string(i)] = groups;
    }
    r.json["ranks"] = to_array(F.ranks);
    r.json["betti_formula"] = to_array(F.betti_formula);
    r.json["layout"] = layout;

    std::ostringstream out;
    out << "rank F = " << seq(F.ranks) << "\n";
    out << "betti (formula) = " << seq(F.betti_formula) << "\n";
    if (!inject_fault.empty()) out << "injected fault: " << inject_fault << "\n";
    for (int i = 0; i <= 5; ++i) {
        out << "F" << i << " =";
        bool first = true;
        for (const auto& s : F.F[static_cast<size_t>(i)]) {
            if (s.copies() == 0) continue;
            out << (first ? " " : " + ") << s.name;
            if (s.copies() > 1 || s.name.find('^') != std::string::npos)
                out << "{x" << s.copies() << "}";
            first = false;
        }
        out << "\n";
    }

    if (verify) {
        resolution::Verifier verifier(F, *complex_);
        auto verdict = verifier.run();
        json v;
        json cx = json::array(), ex = json::array(), ev = json::array();
        for (int i = 1; i <= 4; ++i) {
            cx.push_back(verdict.complex_ok[static_cast<size_t>(i)]);
            ex.push_back(verdict.exact_ok[static_cast<size_t>(i)]);
            ev.push_back(verdict.exact_evaluated[static_cast<size_t>(i)]);
        }
        v["complex_ok"] = cx;
        v["exact_ok"] = ex;
        v["exact_evaluated"] = ev;
        v["augmentation_ok"] = verdict.augmentation_ok;
        v["minimal_ok"] = verdict.minimal_ok;
        v["betti_match"] = verdict.betti_match;
        v["truncated"] = verdict.truncated;
        json issues = json::array();
        for (const auto& issue : verdict.issues) {
            issues.push_back(json{{"hdeg", issue.hdeg},
                                  {"internal_degree", issue.internal},
                                  {"what", issue.what}});
        }
        v["issues"] = issues;
        bool ok = verdict.all_evaluated_ok();
        v["verified"] = ok;
        r.json["verification"] = v;

        out << "verification: " << (ok ? "pass" : "FAIL")
            << (verdict.truncated ? " (truncated to the cutoff)" : "") << "\n";
        out << "  complex d.d = 0:   "
            << (std::all_of(cx.begin(), cx.end(), [](const json& b) { return b.get<bool>(); })
                    ? "pass"
                    : "FAIL")
            << "\n";
        out << "  exactness 1..4:    ";
        for (int i = 1; i <= 4; ++i)
            out << (verdict.exact_evaluated[static_cast<size_t>(i)]
                        ? (verdict.exact_ok[static_cast<size_t>(i)] ? "pass " : "FAIL ")
                        : "skip ");
        out << "\n";
        out << "  augmentation:      " << (verdict.augmentation_ok ? "pass" : "FAIL") << "\n";
        out << "  minimality:        " << (verdict.minimal_ok ? "pass" : "FAIL") << "\n";
        out << "  rank = formula:    " << (verdict.betti_match ? "pass" : "FAIL") << "\n";
        for (const auto& issue : verdict.issues)
            out << "  issue at (" << issue.hdeg << ", " << issue.internal
                << "): " << issue.what << "\n";
        if (!ok) r.exit_code = 2;
    }
    r.text = out.str();
    timer.finish(r);
    return r;
}

Report Session::massey() {
    TextTimer timer;
    Report r;
    r.json = header("massey");
    r.json["ring"] = ring_summary();
    const auto& ms = homalg_->massey_span();
    json m;
    m["a4"] = homalg_->rank(4);
    m["q13"] = homalg_->q(1, 3);
    m["q22"] = homalg_->q(2, 2);
    m["span_rank"] = ms.span.rank();
    m["a"] = ms.a;
    json basis = json::array();
    for (const auto& v : ms.span.basis()) basis.push_back(class_vector(v));
    m["span_basis_classes"] = basis;
    m["exhibited_by_basis_triple"] = to_array(ms.exhibited_by_basis_triple);
    r.json["massey"] = m;

    std::ostringstream out;
    out << "constrained Massey span inside A_4 (rank " << homalg_->rank(4) << ")\n";
    out << "span rank = " << ms.span.rank() << ", a = rank(A1.A3 + A2.A2 + span) = " << ms.a
        << "\n";
    out << "q13 = " << homalg_->q(1, 3) << ", q22 = " << homalg_->q(2, 2) << "\n";
    for (size_t k = 0; k < ms.span.basis().size(); ++k) {
        out << "  class " << k + 1 << ": [";
        const auto& v = ms.span.basis()[k];
        for (size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i].str();
        out << "]"
            << (ms.exhibited_by_basis_triple[k] ? "  (matched by a basis triple)"
                                                : "  (constrained representative)")
            << "\n";
    }
    r.text = out.str();
    timer.finish(r);
    return r;
}

Report Session::oracle_betti(int max_degree) {
    TextTimer timer;
    Report r;
    r.json = header("oracle-betti");
    r.json["ring"] = ring_summary();
    auto beta = resolution::syzygy_oracle(*ring_, max_degree);
    r.json["max_degree"] = max_degree;
    r.json["beta"] = to_array(beta);

    std::ostringstream out;
    out << "syzygy oracle betti numbers through degree " << max_degree << ":\n";
    out << "beta = " << seq(beta) << "\n";
    r.text = out.str();
    timer.finish(r);
    return r;
}

}  // namespace kres::report
