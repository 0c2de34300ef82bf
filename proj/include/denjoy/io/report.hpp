#pragma once

// Machine-readable reports. A report is a JSON object
//
//   {"schema": "denjoy-report/1", "command": ..., "inputs": {...},
//    "outputs": {...}, "certificates": {...}, "timing": {"elapsed_ms": ...}}
//
// written with sorted keys and two-space indentation. Everything except
// "timing" is a function of the inputs and precision settings.

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>

#include "denjoy/circle/interval.hpp"
#include "denjoy/circle/real.hpp"
#include "denjoy/error.hpp"

namespace denjoy {

using Json = nlohmann::json;

inline constexpr const char* kReportSchema = "denjoy-report/1";

struct Report {
    std::string command;
    Json inputs = Json::object();
    Json outputs = Json::object();
    Json certificates = Json::object();
    double elapsed_ms = 0;

    Json to_json() const {
        Json j;
        j["schema"] = kReportSchema;
        j["command"] = command;
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        j["certificates"] = certificates;
        j["timing"] = {{"elapsed_ms", elapsed_ms}};
        return j;
    }

    /// Everything but the timing.
    Json content() const {
        Json j = to_json();
        j.erase("timing");
        return j;
    }

    static Report from_json(const Json& j) {
        if (!j.is_object()) throw DomainError("report must be a JSON object");
        if (j.value("schema", "") != kReportSchema)
            throw DomainError(std::string("unsupported report schema, expected ") + kReportSchema);
        for (const char* key : {"command", "inputs", "outputs", "certificates"})
            if (!j.contains(key)) throw DomainError(std::string("report is missing '") + key + "'");
        for (const auto& [key, value] : j.items())
            if (key != "schema" && key != "command" && key != "inputs" && key != "outputs" && key != "certificates" &&
                key != "timing")
                throw DomainError("unknown report key '" + key + "'");
        Report r;
        r.command = j.at("command").get<std::string>();
        r.inputs = j.at("inputs");
        r.outputs = j.at("outputs");
        r.certificates = j.at("certificates");
        if (j.contains("timing")) r.elapsed_ms = j.at("timing").value("elapsed_ms", 0.0);
        return r;
    }

    friend bool operator==(const Report& a, const Report& b) {
        return a.command == b.command && a.inputs == b.inputs && a.outputs == b.outputs &&
               a.certificates == b.certificates && a.elapsed_ms == b.elapsed_ms;
    }
};

/// Canonical serialization.
inline std::string write_report(const Report& r) { return r.to_json().dump(2) + "\n"; }

inline Report parse_report(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // byte offset -> line and column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        auto p = msg.find("parse error");
        throw ParseError(p == std::string::npos ? msg : msg.substr(p), line, col);
    }
    return Report::from_json(j);
}

/// Certified decimal rendering, refining up to the ceiling.
inline std::optional<std::string> certified_decimal(const Real& x, int digits, const Precision& prec) {
    for (int bits = prec.working_bits;; bits = std::min(2 * bits, prec.ceiling_bits)) {
        if (auto s = x.enclose(bits).decimal(digits)) return s;
        if (bits >= prec.ceiling_bits) return std::nullopt;
    }
}

/// Interval as {"lo": ..., "hi": ...} decimal strings rounded outward.
inline Json interval_json(const Interval& iv, int digits = 30) {
    return {{"lo", iv.lower_string(digits)}, {"hi", iv.upper_string(digits)}};
}

/// Flattened "key  value" lines for the human table renderer.
inline void render_table(const Json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) render_table(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) render_table(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << "  " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

inline std::string render_table(const Report& r) {
    std::ostringstream out;
    out << "command  " << r.command << "\n";
    render_table(r.inputs, "inputs", out);
    render_table(r.outputs, "outputs", out);
    render_table(r.certificates, "certificates", out);
    return out.str();
}

} // namespace denjoy
