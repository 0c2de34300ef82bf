#pragma once

// Small textual forms shared by spec files, reports and the CLI:
// rationals, lattice vectors and points.

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "denjoy/error.hpp"
#include "denjoy/model/action.hpp"
#include "denjoy/model/realization.hpp"

namespace denjoy {

/// Exact rational from "p", "p/q" or a finite decimal "1.25".
inline mpq_class parse_rational(std::string_view text, std::size_t column_offset = 0) {
    std::size_t pos = 0;
    auto fail = [&](const std::string& msg) -> mpq_class { throw ParseError(msg, 1, column_offset + pos + 1); };
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
    auto digits = [&] {
        std::size_t s = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        return std::string(text.substr(s, pos - s));
    };
    std::string whole = digits();
    if (whole.empty()) return fail("expected a rational number");
    mpq_class q{mpz_class(whole)};
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        std::string den = digits();
        if (den.empty()) return fail("expected a denominator");
        mpz_class dz(den);
        if (dz == 0) return fail("zero denominator");
        q = mpq_class(mpz_class(whole), dz);
        q.canonicalize();
    } else if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::string frac = digits();
        if (frac.empty()) return fail("expected digits after '.'");
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        q = mpq_class(mpz_class(whole) * scale + mpz_class(frac), scale);
        q.canonicalize();
    }
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) return fail("unexpected text after rational");
    return neg ? mpq_class(-q) : q;
}

/// "2,-1", "(2,-1)" or "e<i>" (the i-th basis vector, 1-based).
inline LatticeVector parse_lattice_vector(std::string_view text, std::size_t d, std::size_t column_offset = 0) {
    std::string s(text);
    std::size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
    if (a == std::string::npos) throw ParseError("empty group element", 1, column_offset + 1);
    s = s.substr(a, b - a + 1);
    column_offset += a;
    if (s.size() > 1 && s[0] == 'e' && std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        std::size_t i = std::stoul(s.substr(1));
        if (i < 1 || i > d) throw ParseError("basis index out of range 1.." + std::to_string(d), 1, column_offset + 2);
        return LatticeVector::basis(d, i - 1);
    }
    if (s.front() == '(') {
        if (s.back() != ')') throw ParseError("expected ')'", 1, column_offset + s.size() + 1);
        s = s.substr(1, s.size() - 2);
        ++column_offset;
    }
    std::vector<std::int64_t> c;
    std::size_t start = 0;
    while (true) {
        std::size_t end = s.find(',', start);
        std::string tok = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
        std::size_t p = 0;
        while (p < tok.size() && tok[p] == ' ') ++p;
        std::size_t q = p + (p < tok.size() && (tok[p] == '-' || tok[p] == '+'));
        std::size_t r = q;
        while (r < tok.size() && std::isdigit(static_cast<unsigned char>(tok[r]))) ++r;
        std::size_t tail = r;
        while (tail < tok.size() && tok[tail] == ' ') ++tail;
        if (r == q || tail != tok.size() || r - q > 15)
            throw ParseError("expected an integer component", 1, column_offset + start + p + 1);
        c.push_back(std::stoll(tok.substr(p, r - p)));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    if (c.size() != d)
        throw ParseError("group element has " + std::to_string(c.size()) + " components, expected " + std::to_string(d),
                         1, column_offset + 1);
    return LatticeVector(c);
}

/// Inverse of to_string(DenjoyPoint), plus "x:<rational>" for a geometric
/// coordinate in [0,1), which needs a realization.
///   gap:<orbit>:<g1,...,gd>:<t>     t in [0,1]; the ends become Cantor points
///   cantor:<form>[:left|:right]
inline DenjoyPoint parse_point(const DenjoyAction& action, std::string_view text,
                               const Realization* realization = nullptr) {
    std::string s(text);
    auto field_col = [&](std::size_t pos) { return pos + 1; };
    std::size_t c1 = s.find(':');
    if (c1 == std::string::npos) throw ParseError("expected 'gap:', 'cantor:' or 'x:'", 1, 1);
    std::string kind = s.substr(0, c1);
    try {
        if (kind == "gap") {
            std::size_t c2 = s.find(':', c1 + 1), c3 = c2 == std::string::npos ? c2 : s.find(':', c2 + 1);
            if (c3 == std::string::npos) throw ParseError("expected gap:<orbit>:<g>:<t>", 1, field_col(s.size()));
            std::string orbit = s.substr(c1 + 1, c2 - c1 - 1);
            if (orbit.empty() || !std::all_of(orbit.begin(), orbit.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                throw ParseError("expected an orbit index", 1, field_col(c1 + 1));
            LatticeVector g = parse_lattice_vector(s.substr(c2 + 1, c3 - c2 - 1), action.dim(), c2 + 1);
            mpq_class t = parse_rational(s.substr(c3 + 1), c3 + 1);
            return action.gap_point(GapLabel{std::stoul(orbit), g}, t);
        }
        if (kind == "cantor") {
            std::string rest = s.substr(c1 + 1);
            Side side = Side::Plain;
            std::size_t c2 = rest.rfind(':');
            if (c2 != std::string::npos) {
                std::string tag = rest.substr(c2 + 1);
                if (tag == "left") side = Side::LeftOf;
                else if (tag == "right") side = Side::RightOf;
                else throw ParseError("side must be 'left' or 'right'", 1, field_col(c1 + 1 + c2 + 1));
                rest = rest.substr(0, c2);
            }
            OrbitForm y;
            try {
                y = OrbitForm::parse(rest, action.dim());
            } catch (const ParseError& e) {
                throw ParseError(e.message(), 1, c1 + 1 + e.column());
            }
            return action.cantor_point(y, side);
        }
        if (kind == "x") {
            if (!realization) throw DomainError("geometric coordinates need a realized Denjoy action");
            mpq_class x = parse_rational(s.substr(c1 + 1), c1 + 1);
            return realization->realize_inverse(x);
        }
    } catch (const DomainError& e) {
        throw ParseError(e.what(), 1, field_col(c1 + 1));
    }
    throw ParseError("unknown point kind '" + kind + "'", 1, 1);
}

} // namespace denjoy
