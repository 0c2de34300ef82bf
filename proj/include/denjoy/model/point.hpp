#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <variant>

#include "denjoy/model/lattice.hpp"
#include "denjoy/model/rotation.hpp"

namespace denjoy {

/// The gap I_g of blown-up orbit number `orbit`.
struct GapLabel {
    std::size_t orbit = 0;
    LatticeVector g;

    friend bool operator==(const GapLabel&, const GapLabel&) = default;
    friend auto operator<=>(const GapLabel&, const GapLabel&) = default;

    std::string to_string() const { return "I[" + std::to_string(orbit) + "]" + g.to_string(); }
};

/// Interior point of a gap, affine parameter t in (0, 1).
struct GapPoint {
    GapLabel gap;
    mpq_class t;

    friend bool operator==(const GapPoint& a, const GapPoint& b) { return a.gap == b.gap && a.t == b.t; }
};

enum class Side { Plain, LeftOf, RightOf };

/// A point of the minimal set, coded by its image y under the semiconjugacy.
/// Points over a blown-up orbit carry the side of the gap they bound.
struct CantorPoint {
    OrbitForm y;
    Side side = Side::Plain;
    std::optional<GapLabel> gap;

    friend bool operator==(const CantorPoint& a, const CantorPoint& b) {
        return a.y == b.y && a.side == b.side && a.gap == b.gap;
    }
};

using DenjoyPoint = std::variant<GapPoint, CantorPoint>;

inline std::string to_string(Side s) {
    switch (s) {
    case Side::Plain: return "plain";
    case Side::LeftOf: return "left";
    case Side::RightOf: return "right";
    }
    return "?";
}

/// Text form used by the CLI and reports:
///   gap:<orbit>:<g1,...,gd>:<t>
///   cantor:<form>[:left|:right]
inline std::string to_string(const DenjoyPoint& p) {
    if (const auto* gp = std::get_if<GapPoint>(&p)) {
        std::string g;
        for (std::size_t i = 0; i < gp->gap.g.dim(); ++i) g += (i ? "," : "") + std::to_string(gp->gap.g[i]);
        return "gap:" + std::to_string(gp->gap.orbit) + ":" + g + ":" + gp->t.get_str();
    }
    const auto& c = std::get<CantorPoint>(p);
    std::string s = "cantor:" + c.y.to_string();
    if (c.side != Side::Plain) s += ":" + to_string(c.side);
    return s;
}

} // namespace denjoy
