#pragma once

// Finite unions of intervals with rational endpoints inside the open unit
// interval (0,1), in canonical form: sorted, pairwise disjoint and maximal.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "denjoy/error.hpp"

namespace denjoy {

struct RationalInterval {
    mpq_class lo, hi;
    bool lo_closed = false, hi_closed = false;

    static RationalInterval open(const mpq_class& a, const mpq_class& b) { return {a, b, false, false}; }
    static RationalInterval closed(const mpq_class& a, const mpq_class& b) { return {a, b, true, true}; }
    static RationalInterval point(const mpq_class& y) { return {y, y, true, true}; }

    bool is_point() const { return lo == hi; }
    bool contains(const mpq_class& y) const {
        return (lo < y || (lo_closed && lo == y)) && (y < hi || (hi_closed && hi == y));
    }
    void validate() const {
        if (lo < 0 || hi > 1) throw DomainError("interval endpoints must lie in [0,1]");
        if (lo > hi) throw DomainError("interval with lo > hi");
        if (lo == hi && !(lo_closed && hi_closed)) throw DomainError("degenerate interval must be a closed point");
        if ((lo_closed && lo == 0) || (hi_closed && hi == 1))
            throw DomainError("0 and 1 do not belong to a component");
    }
    std::string to_string() const {
        if (is_point()) return "{" + lo.get_str() + "}";
        return std::string(lo_closed ? "[" : "(") + lo.get_str() + "," + hi.get_str() + (hi_closed ? "]" : ")");
    }
    friend bool operator==(const RationalInterval& a, const RationalInterval& b) {
        return a.lo == b.lo && a.hi == b.hi && a.lo_closed == b.lo_closed && a.hi_closed == b.hi_closed;
    }
};

class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<RationalInterval> parts) : parts_(std::move(parts)) {
        for (auto& p : parts_) {
            p.lo.canonicalize();
            p.hi.canonicalize();
            p.validate();
        }
        canonicalize();
    }

    static IntervalSet empty() { return {}; }
    static IntervalSet full() { return IntervalSet({RationalInterval::open(0, 1)}); }
    static IntervalSet point(const mpq_class& y) { return IntervalSet({RationalInterval::point(y)}); }

    const std::vector<RationalInterval>& parts() const { return parts_; }
    bool is_empty() const { return parts_.empty(); }
    bool is_full() const { return parts_.size() == 1 && parts_[0] == RationalInterval::open(0, 1); }
    bool contains(const mpq_class& y) const {
        return std::any_of(parts_.begin(), parts_.end(), [&](const auto& p) { return p.contains(y); });
    }

    IntervalSet complement() const {
        std::vector<RationalInterval> out;
        mpq_class lo = 0;
        bool lo_closed = false;
        auto emit = [&](const mpq_class& hi, bool hi_closed) {
            if (lo < hi || (lo == hi && lo_closed && hi_closed)) out.push_back({lo, hi, lo_closed, hi_closed});
        };
        for (const auto& p : parts_) {
            emit(p.lo, !p.lo_closed);
            lo = p.hi;
            lo_closed = !p.hi_closed;
        }
        emit(1, false);
        IntervalSet r;
        r.parts_ = std::move(out);
        return r;
    }

    friend IntervalSet operator|(const IntervalSet& a, const IntervalSet& b) {
        IntervalSet r;
        r.parts_ = a.parts_;
        r.parts_.insert(r.parts_.end(), b.parts_.begin(), b.parts_.end());
        r.canonicalize();
        return r;
    }
    friend IntervalSet operator&(const IntervalSet& a, const IntervalSet& b) {
        return (a.complement() | b.complement()).complement();
    }
    bool subset_of(const IntervalSet& o) const { return (*this & o) == *this; }

    /// Closure in (0,1).
    IntervalSet closure() const {
        IntervalSet r;
        r.parts_ = parts_;
        for (auto& p : r.parts_) {
            p.lo_closed = p.lo > 0;
            p.hi_closed = p.hi < 1;
        }
        r.canonicalize();
        return r;
    }
    IntervalSet interior() const { return complement().closure().complement(); }
    bool is_open() const { return interior() == *this; }
    bool is_closed() const { return closure() == *this; }

    /// A point of the set lying in the closure of its complement, if any.
    std::optional<mpq_class> boundary_point_inside() const {
        IntervalSet b = *this & complement().closure();
        if (b.is_empty()) return std::nullopt;
        return b.parts_.front().lo;
    }

    std::string to_string() const {
        if (parts_.empty()) return "empty";
        std::string s;
        for (const auto& p : parts_) s += (s.empty() ? "" : "u") + p.to_string();
        return s;
    }

    friend bool operator==(const IntervalSet& a, const IntervalSet& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const IntervalSet& a, const IntervalSet& b) { return !(a == b); }

private:
    void canonicalize() {
        std::sort(parts_.begin(), parts_.end(), [](const auto& a, const auto& b) {
            if (a.lo != b.lo) return a.lo < b.lo;
            return a.lo_closed && !b.lo_closed;
        });
        std::vector<RationalInterval> out;
        for (const auto& p : parts_) {
            if (!out.empty()) {
                auto& c = out.back();
                if (p.lo < c.hi || (p.lo == c.hi && (c.hi_closed || p.lo_closed))) {
                    if (p.hi > c.hi) {
                        c.hi = p.hi;
                        c.hi_closed = p.hi_closed;
                    } else if (p.hi == c.hi) {
                        c.hi_closed = c.hi_closed || p.hi_closed;
                    }
                    continue;
                }
            }
            out.push_back(p);
        }
        parts_ = std::move(out);
    }

    std::vector<RationalInterval> parts_;
};

namespace detail {

// Cursor over a single-line string, reporting 1-based columns.
struct TextCursor {
    const std::string& s;
    std::size_t pos = 0;
    std::size_t column_offset = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, column_offset + pos + 1); }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    mpq_class rational() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
        std::string tok = s.substr(start, pos - start);
        mpq_class q;
        if (tok.empty() || tok.back() == '/' || std::count(tok.begin(), tok.end(), '/') > 1 ||
            q.set_str(tok, 10) != 0) {
            pos = start;
            fail("expected a rational number");
        }
        if (q.get_den() == 0) {
            pos = start;
            fail("zero denominator");
        }
        q.canonicalize();
        return q;
    }
};

inline RationalInterval parse_interval(TextCursor& c) {
    std::size_t start = (c.skip_ws(), c.pos);
    RationalInterval r;
    char open = c.peek();
    if (open == '{') {
        ++c.pos;
        r = RationalInterval::point(c.rational());
        c.expect('}');
    } else if (open == '(' || open == '[') {
        ++c.pos;
        r.lo_closed = open == '[';
        r.lo = c.rational();
        c.expect(',');
        r.hi = c.rational();
        char close = c.peek();
        if (close != ')' && close != ']') c.fail("expected ')' or ']'");
        ++c.pos;
        r.hi_closed = close == ']';
    } else {
        c.fail("expected an interval");
    }
    try {
        r.validate();
    } catch (const DomainError& e) {
        c.pos = start;
        c.fail(e.what());
    }
    return r;
}

} // namespace detail

/// Parses "empty" or intervals joined by 'u', e.g. "(0,1/3]u{1/2}".
inline IntervalSet parse_interval_set(const std::string& text, std::size_t column_offset = 0) {
    detail::TextCursor c{text, 0, column_offset};
    c.skip_ws();
    if (text.compare(c.pos, 5, "empty") == 0) {
        c.pos += 5;
        if (!c.done()) c.fail("unexpected text after 'empty'");
        return {};
    }
    std::vector<RationalInterval> parts;
    parts.push_back(detail::parse_interval(c));
    while (!c.done()) {
        char sep = c.peek();
        if (sep != 'u' && sep != 'U') c.fail("expected 'u' between intervals");
        ++c.pos;
        parts.push_back(detail::parse_interval(c));
    }
    return IntervalSet(parts);
}

} // namespace denjoy
