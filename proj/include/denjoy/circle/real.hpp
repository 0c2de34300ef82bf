#pragma once

// Exact-or-refinable reals.
//
// A Real is an immutable expression DAG over rationals with + - * / and
// square roots. Rational subexpressions are folded eagerly, so a Real built
// only from rationals is exact. Anything else is evaluated on demand into an
// outward-rounded Interval; enclosures at higher precision are nested inside
// enclosures at lower precision because every node uses correctly rounded
// monotone MPFR operations at a precision that grows with the request.

#include <gmpxx.h>

#include <cctype>
#include <memory>
#include <string>
#include <string_view>

#include "denjoy/circle/interval.hpp"
#include "denjoy/error.hpp"

namespace denjoy {

namespace detail {

enum class RealKind { Rational, Sqrt, Add, Sub, Mul, Div, Neg };

struct RealNode {
    RealKind kind;
    mpq_class q;  // Rational only
    std::shared_ptr<const RealNode> a, b;
    int depth = 0;
};

inline std::shared_ptr<const RealNode> make_rational(mpq_class q) {
    auto n = std::make_shared<RealNode>();
    n->kind = RealKind::Rational;
    q.canonicalize();
    n->q = std::move(q);
    return n;
}

inline std::shared_ptr<const RealNode> make_node(RealKind k, std::shared_ptr<const RealNode> a,
                                                 std::shared_ptr<const RealNode> b = nullptr) {
    auto n = std::make_shared<RealNode>();
    n->kind = k;
    n->depth = 1 + std::max(a->depth, b ? b->depth : 0);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

} // namespace detail

class Real {
public:
    Real() : node_(detail::make_rational(0)) {}
    Real(long v) : node_(detail::make_rational(mpq_class(v))) {}  // NOLINT(implicit)
    Real(const mpq_class& q) : node_(detail::make_rational(q)) {}  // NOLINT(implicit)

    bool is_rational() const { return node_->kind == detail::RealKind::Rational; }
    bool is_exact(long v) const { return is_rational() && node_->q == v; }
    /// The exact value; only valid when is_rational().
    const mpq_class& rational() const {
        if (!is_rational()) throw DomainError("Real::rational: value is not an exact rational");
        return node_->q;
    }
    /// Identity of the underlying expression; equal handles denote the same expression.
    const void* handle() const { return node_.get(); }

    static Real sqrt(const Real& x) {
        if (x.is_rational()) {
            const mpq_class& q = x.node_->q;
            if (sgn(q) < 0) throw DomainError("sqrt of a negative rational");
            mpz_class n = q.get_num(), d = q.get_den();
            if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
                mpz_class rn, rd;
                mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
                mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
                return Real(mpq_class(rn, rd));
            }
        } else {
            for (int bits = 64; bits <= 1024; bits *= 2) {
                Interval e = x.enclose(bits);
                if (e.is_negative()) throw DomainError("sqrt of a negative expression");
                if (e.is_positive()) break;
            }
        }
        return Real(detail::make_node(detail::RealKind::Sqrt, x.node_));
    }

    friend Real operator+(const Real& x, const Real& y) {
        if (x.is_rational() && y.is_rational()) return Real(x.node_->q + y.node_->q);
        if (x.is_exact(0)) return y;
        if (y.is_exact(0)) return x;
        return Real(detail::make_node(detail::RealKind::Add, x.node_, y.node_));
    }
    friend Real operator-(const Real& x, const Real& y) {
        if (x.is_rational() && y.is_rational()) return Real(x.node_->q - y.node_->q);
        if (y.is_exact(0)) return x;
        return Real(detail::make_node(detail::RealKind::Sub, x.node_, y.node_));
    }
    friend Real operator*(const Real& x, const Real& y) {
        if (x.is_rational() && y.is_rational()) return Real(x.node_->q * y.node_->q);
        if (x.is_exact(0) || y.is_exact(0)) return Real(0);
        if (x.is_exact(1)) return y;
        if (y.is_exact(1)) return x;
        return Real(detail::make_node(detail::RealKind::Mul, x.node_, y.node_));
    }
    friend Real operator/(const Real& x, const Real& y) {
        if (y.is_rational() && sgn(y.node_->q) == 0) throw DomainError("division by zero");
        if (x.is_rational() && y.is_rational()) return Real(mpq_class(x.node_->q / y.node_->q));
        if (x.is_exact(0)) return Real(0);
        if (y.is_exact(1)) return x;
        return Real(detail::make_node(detail::RealKind::Div, x.node_, y.node_));
    }
    friend Real operator-(const Real& x) {
        if (x.is_rational()) return Real(mpq_class(-x.node_->q));
        return Real(detail::make_node(detail::RealKind::Neg, x.node_));
    }

    /// Outward-rounded enclosure computed with at least `bits` bits.
    Interval enclose(int bits) const { return eval(*node_, bits + 8 + 2 * node_->depth); }

    /// Canonical textual form; parse(to_string()) reproduces the same string.
    std::string to_string() const {
        std::string out;
        print(*node_, out);
        return out;
    }

    /// Parses `rational | decimal | sqrt(expr) | expr (+ - * /) expr | -expr | (expr)`.
    /// Errors carry line 1 and the 1-based column of the offending character.
    static Real parse(std::string_view text);

private:
    explicit Real(std::shared_ptr<const detail::RealNode> n) : node_(std::move(n)) {}

    static Interval eval(const detail::RealNode& n, int bits) {
        using detail::RealKind;
        switch (n.kind) {
        case RealKind::Rational: return Interval::exact(n.q, bits);
        case RealKind::Sqrt: {
            Interval v = eval(*n.a, bits);
            if (v.is_negative()) throw DomainError("sqrt of a negative expression");
            if (!v.is_nonnegative()) v = Interval::hull(0, v.upper(), bits);
            return sqrt_interval(v);
        }
        case RealKind::Add: return eval(*n.a, bits) + eval(*n.b, bits);
        case RealKind::Sub: return eval(*n.a, bits) - eval(*n.b, bits);
        case RealKind::Mul: return eval(*n.a, bits) * eval(*n.b, bits);
        case RealKind::Neg: return -eval(*n.a, bits);
        case RealKind::Div: {
            // The separating precision depends only on the denominator, so the
            // effective precision stays monotone in `bits`.
            for (int sep = 64; sep <= 4096; sep *= 2) {
                if (!eval(*n.b, sep).excludes_zero()) continue;
                const int eff = std::max(bits, sep);
                return eval(*n.a, eff) / eval(*n.b, eff);
            }
            throw UndecidedError("Real: denominator not separated from zero", 4096);
        }
        }
        throw DomainError("Real: corrupt node");
    }

    static int level(const detail::RealNode& n) {
        using detail::RealKind;
        switch (n.kind) {
        case RealKind::Rational:
            if (sgn(n.q) < 0 || n.q.get_den() != 1) return 2;
            return 4;
        case RealKind::Sqrt: return 4;
        case RealKind::Add:
        case RealKind::Sub: return 1;
        case RealKind::Mul:
        case RealKind::Div: return 2;
        case RealKind::Neg: return 2;
        }
        return 4;
    }

    static void print_child(const detail::RealNode& n, int min_level, std::string& out) {
        if (level(n) < min_level) {
            out += '(';
            print(n, out);
            out += ')';
        } else {
            print(n, out);
        }
    }

    static void print(const detail::RealNode& n, std::string& out) {
        using detail::RealKind;
        switch (n.kind) {
        case RealKind::Rational: out += n.q.get_str(); return;
        case RealKind::Sqrt:
            out += "sqrt(";
            print(*n.a, out);
            out += ')';
            return;
        case RealKind::Add:
        case RealKind::Sub:
            print_child(*n.a, 1, out);
            out += n.kind == RealKind::Add ? '+' : '-';
            print_child(*n.b, 2, out);
            return;
        case RealKind::Mul:
        case RealKind::Div:
            print_child(*n.a, 2, out);
            out += n.kind == RealKind::Mul ? '*' : '/';
            print_child(*n.b, 3, out);
            return;
        case RealKind::Neg:
            out += '-';
            print_child(*n.a, 3, out);
            return;
        }
    }

    std::shared_ptr<const detail::RealNode> node_;
};

namespace detail {

class RealParser {
public:
    explicit RealParser(std::string_view s) : s_(s) {}

    Real parse_all() {
        skip();
        if (pos_ >= s_.size()) fail("empty expression");
        Real r = expr();
        skip();
        if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Real expr() {
        Real r = term();
        for (;;) {
            if (eat('+')) r = r + term();
            else if (eat('-')) r = r - term();
            else return r;
        }
    }
    Real term() {
        Real r = factor();
        for (;;) {
            if (eat('*')) {
                r = r * factor();
            } else if (eat('/')) {
                std::size_t at = pos_;
                Real d = factor();
                if (d.is_rational() && sgn(d.rational()) == 0) {
                    pos_ = at;
                    fail("division by zero");
                }
                r = r / d;
            } else {
                return r;
            }
        }
    }
    Real factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        return primary();
    }
    Real primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        if (eat('(')) {
            Real r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (s_.substr(pos_, 4) == "sqrt") {
            pos_ += 4;
            if (!eat('(')) fail("expected '(' after sqrt");
            std::size_t at = pos_;
            Real arg = expr();
            if (!eat(')')) fail("expected ')'");
            try {
                return Real::sqrt(arg);
            } catch (const DomainError& e) {
                pos_ = at;
                fail(e.what());
            }
        }
        if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) return number();
        fail(std::string("unexpected '") + s_[pos_] + "'");
    }
    Real number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        mpz_class whole(std::string(s_.substr(start, pos_ - start)));
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            std::size_t fs = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == fs) fail("expected digits after '.'");
            std::string frac(s_.substr(fs, pos_ - fs));
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
            return Real(mpq_class(whole * scale + mpz_class(frac), scale));
        }
        return Real(mpq_class(whole));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Real Real::parse(std::string_view text) { return detail::RealParser(text).parse_all(); }

} // namespace denjoy
