#pragma once

// Ring definition files: UTF-8 key/value lines with '#' comments.
//
//   field: QQ            (or GF(p))
//   vars: x, y, z, w
//   ideal: x^3, y^3, z^3 - x*y^2
//   cutoff: 10           (optional; required for non-artinian input)
//   depth: 0             (optional; non-artinian only)

#include <optional>
#include <string>
#include <vector>

#include "polyring.hpp"

namespace kres::ringdef {

struct RingDefinition {
    std::string field_text = "QQ";
    std::vector<std::string> vars;
    std::vector<std::string> ideal;
    std::optional<int> cutoff;
    std::optional<int> depth;
};

RingDefinition parse_ring_definition(const std::string& text);
RingDefinition load_ring_definition(const std::string& path);

lin::Field parse_field(const std::string& text);

struct EngineOptions {
    std::optional<int> cutoff;
    std::optional<int> max_hdeg;
    std::optional<std::string> field_override;
};

poly::GradedQuotientRing build_ring(const RingDefinition& def, const EngineOptions& opt);

}  // namespace kres::ringdef
