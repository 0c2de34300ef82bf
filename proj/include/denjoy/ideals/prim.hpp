#pragma once

// The primitive ideal space Y_0 u {J} of the crossed product of a Denjoy
// action. Y_0 is a disjoint union of k open intervals, one per orbit of gaps,
// each parametrized by (0,1); J is the unique maximal ideal and lies in the
// closure of every non-empty subset. Ideals correspond to open subsets.

#include <map>
#include <optional>
#include <set>
#include <string>

#include "denjoy/ideals/interval_set.hpp"
#include "denjoy/ktheory/ideal_k.hpp"
#include "denjoy/model/action.hpp"

namespace denjoy {

/// A finite description of a subset of Y_0 u {J}. Components are numbered
/// from 1. When `others_full` is set every component not listed in `parts`
/// is included whole; this only survives canonicalization for infinite k.
struct PrimSubset {
    std::map<std::size_t, IntervalSet> parts;
    bool others_full = false;
    bool contains_J = false;

    friend bool operator==(const PrimSubset& a, const PrimSubset& b) {
        return a.parts == b.parts && a.others_full == b.others_full && a.contains_J == b.contains_J;
    }
    friend bool operator!=(const PrimSubset& a, const PrimSubset& b) { return !(a == b); }
};

/// A point of Prim(A): either y in component i, or J.
struct PrimPoint {
    std::size_t component = 0;  ///< 0 stands for J
    mpq_class y;

    bool is_J() const { return component == 0; }
    std::string to_string() const { return is_J() ? "J" : "c" + std::to_string(component) + ":" + y.get_str(); }
};

struct OpenCheck {
    bool open = true;
    std::optional<PrimPoint> witness;  ///< a point of U in the closure of the complement
};

class PrimSpace {
public:
    /// k = nullopt stands for infinitely many orbits of gaps.
    explicit PrimSpace(std::optional<std::size_t> k) : k_(k) {
        if (k && *k == 0) throw DomainError("prim space: a Denjoy action has at least one orbit of gaps");
    }

    std::optional<std::size_t> k() const { return k_; }
    bool infinite() const { return !k_.has_value(); }

    PrimSubset empty() const { return {}; }
    PrimSubset whole() const { return canonical({{}, true, true}); }
    /// Y_0, the complement of J.
    PrimSubset components() const { return canonical({{}, true, false}); }
    PrimSubset J() const { return {{}, false, true}; }
    PrimSubset point(std::size_t component, const mpq_class& y) const {
        return canonical({{{component, IntervalSet::point(y)}}, false, false});
    }
    PrimSubset component_set(std::size_t component, const IntervalSet& s, bool with_J = false) const {
        return canonical({{{component, s}}, false, with_J});
    }

    /// Validates component indices and brings S to canonical form.
    PrimSubset canonical(PrimSubset s) const {
        for (const auto& [i, set] : s.parts) check_component(i);
        if (k_ && s.others_full) {
            for (std::size_t i = 1; i <= *k_; ++i) s.parts.try_emplace(i, IntervalSet::full());
            s.others_full = false;
        }
        const IntervalSet fallback = s.others_full ? IntervalSet::full() : IntervalSet::empty();
        for (auto it = s.parts.begin(); it != s.parts.end();)
            it = it->second == fallback ? s.parts.erase(it) : std::next(it);
        return s;
    }

    bool is_empty(const PrimSubset& s) const {
        PrimSubset c = canonical(s);
        return c.parts.empty() && !c.others_full && !c.contains_J;
    }
    bool is_whole(const PrimSubset& s) const { return canonical(s) == whole(); }

    IntervalSet part(const PrimSubset& s, std::size_t i) const {
        check_component(i);
        auto it = s.parts.find(i);
        if (it != s.parts.end()) return it->second;
        return s.others_full ? IntervalSet::full() : IntervalSet::empty();
    }

    bool contains(const PrimSubset& s, const PrimPoint& p) const {
        if (p.is_J()) return s.contains_J;
        return part(s, p.component).contains(p.y);
    }

    PrimSubset complement(const PrimSubset& u) const {
        PrimSubset s = canonical(u);
        return apply(s, [](const IntervalSet& a) { return a.complement(); }, !s.others_full, !s.contains_J);
    }
    PrimSubset unite(const PrimSubset& a, const PrimSubset& b) const { return combine(a, b, false); }
    PrimSubset intersect(const PrimSubset& a, const PrimSubset& b) const { return combine(a, b, true); }
    bool subset_of(const PrimSubset& a, const PrimSubset& b) const {
        return canonical(intersect(a, b)) == canonical(a);
    }

    /// Hull-kernel closure: Euclidean closure in each component, plus J
    /// whenever S is non-empty.
    PrimSubset closure(const PrimSubset& u) const {
        PrimSubset s = canonical(u);
        const bool nonempty = !is_empty(s);
        return apply(s, [](const IntervalSet& a) { return a.closure(); }, s.others_full, s.contains_J || nonempty);
    }

    /// Largest open subset of S. J has no neighbourhood but the whole space.
    PrimSubset interior(const PrimSubset& u) const {
        PrimSubset s = canonical(u);
        if (s == whole()) return whole();
        return apply(s, [](const IntervalSet& a) { return a.interior(); }, s.others_full, false);
    }

    /// U is open iff each part is open in its component and, if J is in U,
    /// U is everything.
    OpenCheck is_open(const PrimSubset& u) const {
        PrimSubset c = canonical(u);
        for (const auto& [i, set] : c.parts)
            if (auto y = set.boundary_point_inside()) return {false, PrimPoint{i, *y}};
        if (c.contains_J && c != whole()) return {false, PrimPoint{}};
        return {};
    }

    std::string to_string(const PrimSubset& s) const {
        PrimSubset c = canonical(s);
        std::string out;
        for (const auto& [i, set] : c.parts) out += (out.empty() ? "" : "; ") + ("c" + std::to_string(i) + ":") + set.to_string();
        if (c.others_full) out += (out.empty() ? "" : "; ") + std::string("others");
        if (c.contains_J) out += (out.empty() ? "" : "; ") + std::string("J");
        return out.empty() ? "empty" : out;
    }

private:
    void check_component(std::size_t i) const {
        if (i == 0 || (k_ && i > *k_))
            throw DomainError("component " + std::to_string(i) + " out of range" +
                              (k_ ? " 1.." + std::to_string(*k_) : std::string()));
    }

    template <class F>
    PrimSubset apply(const PrimSubset& s, F f, bool others_full, bool contains_J) const {
        PrimSubset c = canonical(s);
        PrimSubset r{{}, others_full, contains_J};
        for (const auto& [i, set] : c.parts) r.parts.emplace(i, f(set));
        return canonical(r);
    }

    PrimSubset combine(const PrimSubset& a, const PrimSubset& b, bool meet) const {
        PrimSubset ca = canonical(a), cb = canonical(b);
        PrimSubset r;
        r.others_full = meet ? (ca.others_full && cb.others_full) : (ca.others_full || cb.others_full);
        r.contains_J = meet ? (ca.contains_J && cb.contains_J) : (ca.contains_J || cb.contains_J);
        std::set<std::size_t> keys;
        for (const auto& kv : ca.parts) keys.insert(kv.first);
        for (const auto& kv : cb.parts) keys.insert(kv.first);
        for (std::size_t i : keys) r.parts.emplace(i, meet ? (part(ca, i) & part(cb, i)) : (part(ca, i) | part(cb, i)));
        return canonical(r);
    }

    std::optional<std::size_t> k_;
};

/// Parses "empty" or ';'-separated items "c<i>:<interval set>", "others"
/// and "J", e.g. "c1:(0,1/2]u{3/4}; J". "others" covers every component not
/// listed, wherever it appears.
inline PrimSubset parse_prim_subset(const PrimSpace& space, const std::string& text) {
    PrimSubset s;
    bool others = false;
    std::size_t start = 0;
    auto trimmed = [&](std::size_t a, std::size_t b, std::size_t& col) {
        while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
        col = a;
        return text.substr(a, b - a);
    };
    if (std::size_t col = 0; trimmed(0, text.size(), col) == "empty") return s;
    while (start <= text.size()) {
        std::size_t end = text.find(';', start);
        if (end == std::string::npos) end = text.size();
        std::size_t col = 0;
        std::string item = trimmed(start, end, col);
        if (item == "J") {
            s.contains_J = true;
        } else if (item == "others") {
            others = true;
        } else if (item.size() > 1 && item[0] == 'c') {
            std::size_t colon = item.find(':');
            if (colon == std::string::npos) throw ParseError("expected ':' after component", 1, col + item.size() + 1);
            std::string idx = item.substr(1, colon - 1);
            if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                throw ParseError("bad component index", 1, col + 2);
            std::size_t i = std::stoul(idx);
            try {
                IntervalSet set = parse_interval_set(item.substr(colon + 1), col + colon + 1);
                PrimSubset one = space.component_set(i, set);
                s = space.unite(s, one);
            } catch (const DomainError& e) {
                throw ParseError(e.what(), 1, col + 1);
            }
        } else {
            throw ParseError("expected 'c<i>:<intervals>', 'others' or 'J'", 1, col + 1);
        }
        start = end + 1;
    }
    s.others_full = others;
    try {
        return space.canonical(s);
    } catch (const DomainError& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

inline PrimSpace prim_space(const DenjoyAction& action) {
    if (action.classify() != ActionClass::Denjoy)
        throw DomainError("prim space: the action is " + to_string(action.classify()) + ", not Denjoy");
    return PrimSpace(action.orbit_count());
}

enum class IdealKind { Zero, Proper, Whole };

inline std::string to_string(IdealKind k) {
    switch (k) {
    case IdealKind::Zero: return "Zero";
    case IdealKind::Proper: return "Proper";
    case IdealKind::Whole: return "Whole";
    }
    return "?";
}

struct IdealDescriptor {
    IdealKind kind = IdealKind::Zero;
    std::string name;             ///< "0", "A", "J" or "I(U)"
    PrimSubset open_set;          ///< the open subset of Prim(A) it corresponds to
    bool contained_in_J = true;
    bool is_maximal = false;
    bool unique_maximal = false;
    std::string invariant_open;   ///< G-invariant open subset W of the circle, ideal = C_0(W) x| G
    std::string structure;
    std::optional<std::string> membership_test;
    std::optional<IdealKData> k_data;
};

namespace detail {

inline std::string saturation(const PrimSpace& space, const PrimSubset& u) {
    PrimSubset c = space.canonical(u);
    if (c.contains_J) return "T";
    std::string w;
    for (const auto& [i, set] : c.parts) w += (w.empty() ? "" : " u ") + ("G.I" + std::to_string(i) + "[" + set.to_string() + "]");
    if (c.others_full) w += (w.empty() ? "" : " u ") + std::string("G.I_j for all other j");
    if (space.components() == c) return "T \\ Y";
    return w.empty() ? "empty" : w;
}

} // namespace detail

/// The ideal of A whose hull is the complement of U.
inline IdealDescriptor ideal_for_open(const PrimSpace& space, const PrimSubset& u) {
    OpenCheck chk = space.is_open(u);
    if (!chk.open)
        throw DomainError("subset " + space.to_string(u) + " is not open: " + chk.witness->to_string() +
                          " lies in the closure of its complement");
    IdealDescriptor d;
    d.open_set = space.canonical(u);
    d.invariant_open = detail::saturation(space, u);
    if (space.is_empty(u)) {
        d.kind = IdealKind::Zero;
        d.name = "0";
        d.structure = "0";
        return d;
    }
    if (space.is_whole(u)) {
        d.kind = IdealKind::Whole;
        d.name = "A";
        d.contained_in_J = false;
        d.structure = "C(T) x| G";
        return d;
    }
    d.kind = IdealKind::Proper;
    if (d.open_set == space.components()) {
        d.name = "J";
        d.is_maximal = true;
        d.unique_maximal = true;
        IdealKData kd = ideal_k_data(space.k());
        d.structure = "C_0(T \\ Y) x| G = " + kd.descriptor;
        d.membership_test = "in_trace_ideal";
        d.k_data = kd;
        return d;
    }
    d.name = "I(U)";
    std::string s;
    for (const auto& [i, set] : d.open_set.parts)
        s += (s.empty() ? "" : " (+) ") + ("C_0(" + set.to_string() + ") (x) K");
    if (d.open_set.others_full) s += (s.empty() ? "" : " (+) ") + std::string("C_0(R) (x) K for all other components");
    d.structure = s;
    return d;
}

/// Open set recorded in a descriptor.
inline PrimSubset open_set_of(const IdealDescriptor& d) { return d.open_set; }

inline IdealDescriptor maximal_ideal(const PrimSpace& space) { return ideal_for_open(space, space.components()); }

inline IdealDescriptor ideal_join(const PrimSpace& space, const IdealDescriptor& a, const IdealDescriptor& b) {
    return ideal_for_open(space, space.unite(a.open_set, b.open_set));
}
inline IdealDescriptor ideal_meet(const PrimSpace& space, const IdealDescriptor& a, const IdealDescriptor& b) {
    return ideal_for_open(space, space.intersect(a.open_set, b.open_set));
}
inline bool ideal_leq(const PrimSpace& space, const IdealDescriptor& a, const IdealDescriptor& b) {
    return space.subset_of(a.open_set, b.open_set);
}

} // namespace denjoy
