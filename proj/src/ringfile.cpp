#include "ringfile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace kres::ringdef {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

int parse_positive(const std::string& s, int line, const char* what) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size() || v < 0) throw std::invalid_argument("");
        return v;
    } catch (...) {
        fail_input("line " + std::to_string(line) + ": invalid " + what + " '" + s + "'");
    }
}

}  // namespace

RingDefinition parse_ring_definition(const std::string& text) {
    RingDefinition def;
    bool saw_field = false, saw_vars = false, saw_ideal = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            fail_input("line " + std::to_string(lineno) + ": expected 'key: value'");
        std::string key = trim(line.substr(0, colon));
        std::string value = trim(line.substr(colon + 1));
        if (key == "field") {
            def.field_text = value;
            saw_field = true;
        } else if (key == "vars") {
            def.vars = split_list(value);
            saw_vars = true;
        } else if (key == "ideal") {
            for (auto& g : split_list(value)) def.ideal.push_back(g);
            saw_ideal = true;
        } else if (key == "cutoff") {
            def.cutoff = parse_positive(value, lineno, "cutoff");
        } else if (key == "depth") {
            def.depth = parse_positive(value, lineno, "depth");
        } else {
            fail_input("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (!saw_field) def.field_text = "QQ";
    if (!saw_vars || def.vars.empty()) fail_input("missing 'vars' entry");
    if (!saw_ideal || def.ideal.empty()) fail_input("missing 'ideal' entry");
    return def;
}

RingDefinition load_ring_definition(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_input("cannot open ring definition file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_ring_definition(buf.str());
}

lin::Field parse_field(const std::string& text) {
    std::string t = trim(text);
    if (t == "QQ") return lin::Field::rationals();
    if (t.size() > 4 && t.substr(0, 3) == "GF(" && t.back() == ')') {
        std::string inner = t.substr(3, t.size() - 4);
        try {
            return lin::Field::prime(std::stoull(inner));
        } catch (const Error&) {
            throw;
        } catch (...) {
            fail_input("invalid field '" + text + "'");
        }
    }
    fail_input("invalid field '" + text + "'; expected QQ or GF(p)");
}

poly::GradedQuotientRing build_ring(const RingDefinition& def, const EngineOptions& opt) {
    lin::Field field = parse_field(opt.field_override ? *opt.field_override : def.field_text);
    poly::CutoffPolicy policy;
    policy.cutoff = opt.cutoff ? opt.cutoff : def.cutoff;
    policy.depth = def.depth;
    return poly::GradedQuotientRing::build(def.vars, field, def.ideal, policy);
}

}  // namespace kres::ringdef
