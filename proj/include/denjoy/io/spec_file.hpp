#pragma once

// Action specification files. A spec is a YAML document (JSON is accepted
// as well):
//
//   schema: "denjoy-action/1"
//   d: 2
//   gamma: ["sqrt(2)-1", "sqrt(3)-1"]
//   blowups:
//     - family: "geometric"
//       base_point: "0"
//       lambda: "1/2"
//       total: "1"
//   precision: {working_bits: 128, ceiling_bits: 1024}
//   points: ["gap:0:0,0:1/2"]
//
// Every diagnostic carries the line and column of the offending node.
// write_action_spec produces the canonical text, which parses back to an
// equal spec and re-serializes to the same bytes.

#include <yaml-cpp/yaml.h>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "denjoy/circle/real.hpp"
#include "denjoy/io/text.hpp"
#include "denjoy/model/action.hpp"

namespace denjoy {

inline constexpr const char* kActionSchema = "denjoy-action/1";

struct BlowUpSpec {
    std::string family = GeometricLengths::kName;
    OrbitForm base_point;
    mpq_class lambda = mpq_class(1, 2);
    mpq_class total = 1;

    friend bool operator==(const BlowUpSpec& a, const BlowUpSpec& b) {
        return a.family == b.family && a.base_point == b.base_point && a.lambda == b.lambda && a.total == b.total;
    }
};

struct SourcePosition {
    std::size_t line = 1, column = 1;
};

struct ActionSpec {
    std::optional<std::string> name;
    std::size_t d = 0;
    std::vector<Real> gamma;
    bool declared_independent = true;
    std::optional<int> certificate_bound;
    std::vector<BlowUpSpec> blowups;
    Precision precision;
    std::optional<std::size_t> enum_budget;
    std::vector<std::string> points;

    /// Where each top-level key (and "blowups[i]", "points[i]") was found.
    std::map<std::string, SourcePosition> positions;

    friend bool operator==(const ActionSpec& a, const ActionSpec& b) {
        if (a.gamma.size() != b.gamma.size()) return false;
        for (std::size_t i = 0; i < a.gamma.size(); ++i)
            if (a.gamma[i].to_string() != b.gamma[i].to_string()) return false;
        return a.name == b.name && a.d == b.d && a.declared_independent == b.declared_independent &&
               a.certificate_bound == b.certificate_bound && a.blowups == b.blowups &&
               a.precision.working_bits == b.precision.working_bits &&
               a.precision.ceiling_bits == b.precision.ceiling_bits && a.enum_budget == b.enum_budget &&
               a.points == b.points;
    }

    SourcePosition position_of(const std::string& key) const {
        auto it = positions.find(key);
        return it == positions.end() ? SourcePosition{} : it->second;
    }
};

namespace detail {

inline SourcePosition position(const YAML::Node& n) {
    YAML::Mark m = n.Mark();
    if (m.is_null()) return {};
    return {static_cast<std::size_t>(m.line) + 1, static_cast<std::size_t>(m.column) + 1};
}

[[noreturn]] inline void fail_at(const YAML::Node& n, const std::string& msg) {
    SourcePosition p = position(n);
    throw ParseError(msg, p.line, p.column);
}

// Re-anchors an error raised while parsing the scalar `n` to the file.
[[noreturn]] inline void fail_inside(const YAML::Node& n, const ParseError& e) {
    SourcePosition p = position(n);
    const std::size_t quote = n.Tag() == "!" ? 1 : 0;
    throw ParseError(e.message(), p.line, p.column + quote + e.column() - 1);
}

inline std::string scalar(const YAML::Node& n, const std::string& what) {
    if (!n.IsScalar()) fail_at(n, what + " must be a scalar");
    return n.Scalar();
}

inline long long integer(const YAML::Node& n, const std::string& what, long long lo, long long hi) {
    std::string s = scalar(n, what);
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        fail_at(n, what + " must be an integer");
    }
    if (used != s.size()) fail_at(n, what + " must be an integer");
    if (v < lo || v > hi) fail_at(n, what + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

inline bool boolean(const YAML::Node& n, const std::string& what) {
    std::string s = scalar(n, what);
    if (s == "true") return true;
    if (s == "false") return false;
    fail_at(n, what + " must be true or false");
}

inline mpq_class rational(const YAML::Node& n, const std::string& what) {
    std::string s = scalar(n, what);
    try {
        return parse_rational(s);
    } catch (const ParseError& e) {
        fail_inside(n, e);
    }
}

inline void check_keys(const YAML::Node& map, std::initializer_list<const char*> allowed, const std::string& what) {
    for (const auto& kv : map) {
        std::string key = kv.first.Scalar();
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            fail_at(kv.first, "unknown key '" + key + "' in " + what);
    }
}

inline std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace detail

inline ActionSpec parse_action_spec(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ParseError(e.msg, static_cast<std::size_t>(e.mark.line) + 1, static_cast<std::size_t>(e.mark.column) + 1);
    }
    if (!root.IsMap()) throw ParseError("spec must be a mapping", 1, 1);
    using namespace detail;
    check_keys(root,
               {"schema", "name", "d", "gamma", "declared_independent", "certificate_bound", "blowups", "precision",
                "enum_budget", "points"},
               "action spec");
    ActionSpec spec;
    for (const auto& kv : root) spec.positions[kv.first.Scalar()] = position(kv.first);

    if (!root["schema"]) throw ParseError("missing key 'schema'", 1, 1);
    if (scalar(root["schema"], "schema") != kActionSchema)
        fail_at(root["schema"], std::string("unsupported schema, expected ") + kActionSchema);
    if (root["name"]) spec.name = scalar(root["name"], "name");

    if (!root["d"]) throw ParseError("missing key 'd'", 1, 1);
    spec.d = static_cast<std::size_t>(integer(root["d"], "d", 1, 64));

    const YAML::Node gamma = root["gamma"];
    if (!gamma) throw ParseError("missing key 'gamma'", 1, 1);
    if (!gamma.IsSequence()) fail_at(gamma, "gamma must be a list");
    if (gamma.size() != spec.d)
        fail_at(gamma, "gamma has " + std::to_string(gamma.size()) + " entries, expected d = " + std::to_string(spec.d));
    for (const auto& g : gamma) {
        try {
            spec.gamma.push_back(Real::parse(scalar(g, "gamma entry")));
        } catch (const ParseError& e) {
            fail_inside(g, e);
        }
    }

    if (root["declared_independent"])
        spec.declared_independent = boolean(root["declared_independent"], "declared_independent");
    if (root["certificate_bound"])
        spec.certificate_bound = static_cast<int>(integer(root["certificate_bound"], "certificate_bound", 1, 100000));

    if (const YAML::Node bl = root["blowups"]) {
        if (!bl.IsSequence()) fail_at(bl, "blowups must be a list");
        for (std::size_t i = 0; i < bl.size(); ++i) {
            const YAML::Node b = bl[i];
            if (!b.IsMap()) fail_at(b, "blow-up entry must be a mapping");
            check_keys(b, {"family", "base_point", "lambda", "total"}, "blow-up entry");
            spec.positions["blowups[" + std::to_string(i) + "]"] = position(b);
            BlowUpSpec s;
            s.base_point = OrbitForm(spec.d);
            if (b["family"]) {
                s.family = scalar(b["family"], "family");
                if (s.family != GeometricLengths::kName) fail_at(b["family"], "unknown blow-up family '" + s.family + "'");
            }
            if (b["base_point"]) {
                try {
                    s.base_point = OrbitForm::parse(scalar(b["base_point"], "base_point"), spec.d);
                } catch (const ParseError& e) {
                    fail_inside(b["base_point"], e);
                }
            }
            if (b["lambda"]) {
                s.lambda = rational(b["lambda"], "lambda");
                if (s.lambda <= 0 || s.lambda >= 1) fail_at(b["lambda"], "lambda must lie in (0,1)");
            }
            if (b["total"]) {
                s.total = rational(b["total"], "total");
                if (s.total <= 0) fail_at(b["total"], "total must be positive");
            }
            spec.blowups.push_back(s);
        }
    }

    if (const YAML::Node p = root["precision"]) {
        if (!p.IsMap()) fail_at(p, "precision must be a mapping");
        check_keys(p, {"working_bits", "ceiling_bits"}, "precision");
        if (p["working_bits"]) spec.precision.working_bits = static_cast<int>(integer(p["working_bits"], "working_bits", 16, 1 << 20));
        if (p["ceiling_bits"]) spec.precision.ceiling_bits = static_cast<int>(integer(p["ceiling_bits"], "ceiling_bits", 16, 1 << 20));
        if (spec.precision.ceiling_bits < spec.precision.working_bits)
            fail_at(p, "ceiling_bits must be at least working_bits");
    }
    if (root["enum_budget"])
        spec.enum_budget = static_cast<std::size_t>(integer(root["enum_budget"], "enum_budget", 1, 1LL << 40));

    if (const YAML::Node pts = root["points"]) {
        if (!pts.IsSequence()) fail_at(pts, "points must be a list");
        for (std::size_t i = 0; i < pts.size(); ++i) {
            spec.positions["points[" + std::to_string(i) + "]"] = position(pts[i]);
            spec.points.push_back(scalar(pts[i], "point"));
        }
    }
    return spec;
}

inline std::string write_action_spec(const ActionSpec& spec) {
    using detail::quoted;
    std::ostringstream o;
    o << "schema: " << quoted(kActionSchema) << "\n";
    if (spec.name) o << "name: " << quoted(*spec.name) << "\n";
    o << "d: " << spec.d << "\n";
    o << "gamma:\n";
    for (const auto& g : spec.gamma) o << "  - " << quoted(g.to_string()) << "\n";
    o << "declared_independent: " << (spec.declared_independent ? "true" : "false") << "\n";
    if (spec.certificate_bound) o << "certificate_bound: " << *spec.certificate_bound << "\n";
    if (spec.blowups.empty()) o << "blowups: []\n";
    else o << "blowups:\n";
    for (const auto& b : spec.blowups) {
        o << "  - family: " << quoted(b.family) << "\n";
        o << "    base_point: " << quoted(b.base_point.to_string()) << "\n";
        o << "    lambda: " << quoted(b.lambda.get_str()) << "\n";
        o << "    total: " << quoted(b.total.get_str()) << "\n";
    }
    o << "precision:\n";
    o << "  working_bits: " << spec.precision.working_bits << "\n";
    o << "  ceiling_bits: " << spec.precision.ceiling_bits << "\n";
    if (spec.enum_budget) o << "enum_budget: " << *spec.enum_budget << "\n";
    if (spec.points.empty()) o << "points: []\n";
    else o << "points:\n";
    for (const auto& p : spec.points) o << "  - " << quoted(p) << "\n";
    return o.str();
}

/// Builds the action; semantic failures are reported at the key responsible.
inline DenjoyAction build_action(const ActionSpec& spec) {
    auto at = [&](const std::string& key, const std::string& msg) {
        SourcePosition p = spec.position_of(key);
        return ParseError(msg, p.line, p.column);
    };
    RotationVector rho;
    try {
        rho = RotationVector(spec.gamma, spec.precision, spec.declared_independent, spec.certificate_bound);
    } catch (const DomainError& e) {
        throw at("gamma", e.what());
    }
    std::vector<BlowUpData> data;
    for (const auto& b : spec.blowups)
        data.push_back(BlowUpData{b.base_point, GeometricLengths(spec.d, b.lambda, b.total)});
    try {
        return DenjoyAction(rho, data, spec.precision);
    } catch (const DomainError& e) {
        throw at(spec.blowups.empty() ? "gamma" : "blowups", e.what());
    }
}

inline ActionSpec spec_from_action(const DenjoyAction& action) {
    ActionSpec s;
    s.d = action.dim();
    s.gamma = action.rho().gamma();
    s.declared_independent = action.rho().certificate().declared;
    s.precision = action.precision();
    for (const auto& b : action.blowups())
        s.blowups.push_back(BlowUpSpec{GeometricLengths::kName, b.base_point, b.lengths.lambda(), b.lengths.total()});
    return s;
}

} // namespace denjoy
