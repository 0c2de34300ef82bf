#pragma once

// Text form of crossed-product elements: one term f * lambda_g per string,
//
//   <g>|const:<real>
//   <g>|bump:<orbit>:<gap g>:<t>=<v>;<t>=<v>...
//   <g>|knots:<form>=<real>;<form>=<real>...
//
// where <g> is a group element as accepted by parse_lattice_vector.

#include <string>
#include <vector>

#include "denjoy/ergodic/crossed.hpp"
#include "denjoy/io/text.hpp"

namespace denjoy {

namespace detail {

inline std::vector<std::pair<std::string, std::size_t>> split_on(const std::string& s, char sep, std::size_t offset) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t start = 0;
    while (true) {
        std::size_t end = s.find(sep, start);
        out.emplace_back(s.substr(start, end == std::string::npos ? std::string::npos : end - start), offset + start);
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

inline Real parse_real_at(const std::string& s, std::size_t offset) {
    try {
        return Real::parse(s);
    } catch (const ParseError& e) {
        throw ParseError(e.message(), 1, offset + e.column());
    }
}

} // namespace detail

inline CrossedElement parse_crossed_term(const DenjoyAction& action, const std::string& text) {
    const std::size_t d = action.dim();
    std::size_t bar = text.find('|');
    if (bar == std::string::npos) throw ParseError("expected '<g>|<function>'", 1, text.size() + 1);
    LatticeVector g = parse_lattice_vector(text.substr(0, bar), d);
    std::string fn = text.substr(bar + 1);
    std::size_t colon = fn.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'const:', 'bump:' or 'knots:'", 1, bar + 2);
    std::string kind = fn.substr(0, colon), body = fn.substr(colon + 1);
    const std::size_t body_at = bar + 1 + colon + 1;
    try {
        if (kind == "const") return CrossedElement::monomial(PLFunction::constant(d, detail::parse_real_at(body, body_at)), g);
        if (kind == "bump") {
            auto fields = detail::split_on(body, ':', body_at);
            if (fields.size() != 3) throw ParseError("expected bump:<orbit>:<g>:<t>=<v>;...", 1, body_at + 1);
            const auto& orbit = fields[0].first;
            if (orbit.empty() || !std::all_of(orbit.begin(), orbit.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw ParseError("expected an orbit index", 1, fields[0].second + 1);
            GapLabel gap{std::stoul(orbit), parse_lattice_vector(fields[1].first, d, fields[1].second)};
            PLFunction::Bump knots;
            for (const auto& [pair, at] : detail::split_on(fields[2].first, ';', fields[2].second)) {
                std::size_t eq = pair.find('=');
                if (eq == std::string::npos) throw ParseError("expected <t>=<v>", 1, at + 1);
                knots.emplace_back(parse_rational(pair.substr(0, eq), at), parse_rational(pair.substr(eq + 1), at + eq + 1));
            }
            return CrossedElement::monomial(PLFunction::bump(action, gap, knots), g);
        }
        if (kind == "knots") {
            std::vector<PLFunction::Knot> knots;
            for (const auto& [pair, at] : detail::split_on(body, ';', body_at)) {
                std::size_t eq = pair.find('=');
                if (eq == std::string::npos) throw ParseError("expected <form>=<value>", 1, at + 1);
                OrbitForm y;
                try {
                    y = OrbitForm::parse(pair.substr(0, eq), d);
                } catch (const ParseError& e) {
                    throw ParseError(e.message(), 1, at + e.column());
                }
                knots.push_back({y, detail::parse_real_at(pair.substr(eq + 1), at + eq + 1)});
            }
            return CrossedElement::monomial(PLFunction::from_knots(action, knots), g);
        }
    } catch (const DomainError& e) {
        throw ParseError(e.what(), 1, body_at + 1);
    }
    throw ParseError("unknown function kind '" + kind + "'", 1, bar + 2);
}

inline CrossedElement parse_crossed_element(const DenjoyAction& action, const std::vector<std::string>& terms) {
    if (terms.empty()) return CrossedElement::unit(action.dim());
    CrossedElement a = parse_crossed_term(action, terms.front());
    for (std::size_t i = 1; i < terms.size(); ++i) a = CrossedElement::sum(action, a, parse_crossed_term(action, terms[i]));
    return a;
}

} // namespace denjoy
