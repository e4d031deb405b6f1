#pragma once

// Command orchestration and report rendering. Each command yields the same
// numeric content in two shapes: a deterministic machine report (JSON, fixed
// field order, exact integers) and a human-readable text block. The machine
// report never contains wall-clock data, so repeated runs are byte-identical.

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "homalg.hpp"
#include "invariants.hpp"
#include "resolution.hpp"
#include "ringfile.hpp"

namespace kres::report {

struct Report {
    nlohmann::ordered_json json;
    std::string text;
    int exit_code = 0;  // 0 ok, 2 verification failure (input errors throw)

    std::string render(bool as_json) const { return as_json ? json.dump(2) + "\n" : text; }
};

class Session {
public:
    Session(ringdef::RingDefinition def, ringdef::EngineOptions opt);

    const poly::GradedQuotientRing& ring() const { return *ring_; }
    const koszul::KoszulComplex& complex() const { return *complex_; }
    const homalg::HomologyAlgebra& homology() const { return *homalg_; }

    Report ring_check();
    Report invariants();
    Report resolution(bool verify, const std::string& inject_fault /* empty: none */);
    Report massey();
    Report oracle_betti(int max_degree);

private:
    ringdef::RingDefinition def_;
    ringdef::EngineOptions opt_;
    std::unique_ptr<poly::GradedQuotientRing> ring_;
    std::unique_ptr<koszul::KoszulComplex> complex_;
    std::unique_ptr<homalg::HomologyAlgebra> homalg_;

    int max_hdeg() const;
    nlohmann::ordered_json ring_summary() const;
    kres::invariants::InvariantInput engine_input() const;
};

}  // namespace kres::report
