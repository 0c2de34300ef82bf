#pragma once

// Free Z^d actions on the circle: minimal rotation actions and their Denjoy
// blow-ups, realized symbolically.
//
// A Denjoy action is encoded by the rotation vector and a list of blown-up
// orbits. Each point y0_j + rho(g) of blown-up orbit j is replaced by a gap
// I_(j,g). A point of the circle is either interior to a gap, GapPoint, or a
// point of the minimal Cantor set coded by its semiconjugacy image,
// CantorPoint. The two endpoints of a gap share the same image and are told
// apart by a side tag.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "denjoy/model/blowup.hpp"
#include "denjoy/model/point.hpp"
#include "denjoy/model/rotation.hpp"

namespace denjoy {

enum class ActionClass { FiniteOrbit, Minimal, Denjoy };

inline std::string to_string(ActionClass c) {
    switch (c) {
    case ActionClass::FiniteOrbit: return "FiniteOrbit";
    case ActionClass::Minimal: return "Minimal";
    case ActionClass::Denjoy: return "Denjoy";
    }
    return "?";
}

class DenjoyAction {
public:
    DenjoyAction() = default;

    explicit DenjoyAction(RotationVector rho, std::vector<BlowUpData> blowups = {}, const Precision& prec = {})
        : rho_(std::move(rho)), blowups_(std::move(blowups)), prec_(prec) {
        prec_.validate();
        if (blowups_.empty()) return;
        if (rho_.all_rational())
            throw DomainError("blow-up requires infinite orbits, but every gamma_i is rational");
        if (!rho_.all_irrational())
            throw DomainError("blow-up requires a free action, but some gamma_i is rational");
        if (!rho_.certificate().declared)
            throw DomainError("blow-up requires rotation numbers declared rationally independent");
        if (!rho_.certificate().verified)
            throw DomainError("blow-up requires a verified independence certificate; relation candidate " +
                              rho_.certificate().relation.value_or(LatticeVector()).to_string());
        for (auto& b : blowups_) {
            if (b.base_point.dim() != dim() || b.lengths.dim() != dim())
                throw DomainError("blow-up data dimension does not match the rotation vector");
            b.base_point = rho_.normalize(b.base_point, prec_);
        }
        for (std::size_t j = 1; j < blowups_.size(); ++j)
            for (std::size_t i = 0; i < j; ++i)
                if (same_orbit(blowups_[i].base_point, blowups_[j].base_point))
                    throw DomainError("blow-up base points " + std::to_string(i) + " and " + std::to_string(j) +
                                      " lie on the same rho-orbit");
    }

    const RotationVector& rho() const { return rho_; }
    const std::vector<BlowUpData>& blowups() const { return blowups_; }
    const Precision& precision() const { return prec_; }
    std::size_t dim() const { return rho_.dim(); }
    std::size_t orbit_count() const { return blowups_.size(); }

    ActionClass classify() const {
        if (rho_.all_rational()) return ActionClass::FiniteOrbit;
        return blowups_.empty() ? ActionClass::Minimal : ActionClass::Denjoy;
    }
    bool is_denjoy() const { return classify() == ActionClass::Denjoy; }

    /// Semiconjugacy image of the gap I_label: y0_j + rho(g) mod 1.
    OrbitForm orbit_point(const GapLabel& label) const {
        check_label(label);
        return rho_.normalize(blowups_[label.orbit].base_point + rho_.lift(label.g), prec_);
    }

    /// The gap sitting over y, if y lies on a blown-up orbit.
    std::optional<GapLabel> orbit_label(const OrbitForm& y) const {
        for (std::size_t j = 0; j < blowups_.size(); ++j) {
            OrbitForm diff = y - blowups_[j].base_point;
            if (diff.constant().get_den() == 1) return GapLabel{j, diff.coeffs()};
        }
        return std::nullopt;
    }

    mpq_class gap_length(const GapLabel& label) const {
        check_label(label);
        return blowups_[label.orbit].lengths.length(label.g);
    }
    /// Sum of all gap lengths.
    mpq_class total_gap_length() const {
        mpq_class s = 0;
        for (const auto& b : blowups_) s += b.lengths.total();
        return s;
    }

    /// Canonical point of the closed gap at parameter t in [0, 1]; the
    /// endpoints t = 0 and t = 1 become side-tagged Cantor points.
    DenjoyPoint gap_point(const GapLabel& label, const mpq_class& t) const {
        check_label(label);
        if (t < 0 || t > 1) throw DomainError("gap parameter outside [0,1]");
        if (t == 0) return CantorPoint{orbit_point(label), Side::LeftOf, label};
        if (t == 1) return CantorPoint{orbit_point(label), Side::RightOf, label};
        return GapPoint{label, t};
    }

    /// Canonical Cantor code for y. On a blown-up orbit, Plain resolves to the
    /// left endpoint of the gap over y.
    DenjoyPoint cantor_point(const OrbitForm& y, Side side = Side::Plain) const {
        if (y.dim() != dim()) throw DomainError("point dimension does not match the action");
        OrbitForm yn = rho_.normalize(y, prec_);
        auto label = orbit_label(yn);
        if (!label) {
            if (side != Side::Plain) throw DomainError("side tag on a point that bounds no gap");
            return CantorPoint{yn, Side::Plain, std::nullopt};
        }
        return CantorPoint{yn, side == Side::RightOf ? Side::RightOf : Side::LeftOf, label};
    }

    void validate(const DenjoyPoint& p) const {
        if (const auto* gp = std::get_if<GapPoint>(&p)) {
            check_label(gp->gap);
            if (gp->t <= 0 || gp->t >= 1) throw DomainError("gap point parameter must lie in (0,1)");
            return;
        }
        const auto& c = std::get<CantorPoint>(p);
        if (c.y.dim() != dim()) throw DomainError("point dimension does not match the action");
        if (!(cantor_point(c.y, c.side) == DenjoyPoint(c))) throw DomainError("Cantor code is not canonical");
    }

    /// g . p; exact in the symbolic model.
    DenjoyPoint act(const LatticeVector& g, const DenjoyPoint& p) const {
        if (g.dim() != dim()) throw DomainError("group element dimension does not match the action");
        if (const auto* gp = std::get_if<GapPoint>(&p)) return GapPoint{GapLabel{gp->gap.orbit, gp->gap.g + g}, gp->t};
        const auto& c = std::get<CantorPoint>(p);
        CantorPoint out{rho_.normalize(c.y + rho_.lift(g), prec_), c.side, std::nullopt};
        if (c.gap) out.gap = GapLabel{c.gap->orbit, c.gap->g + g};
        return out;
    }

    /// The semiconjugacy phi: constant on each gap, identity on Cantor codes.
    OrbitForm semiconjugacy(const DenjoyPoint& p) const {
        if (!is_denjoy()) throw DomainError("semiconjugacy is defined for Denjoy actions only");
        return fiber(p);
    }
    /// phi(p) without the Denjoy restriction (the identity for rotations).
    OrbitForm fiber(const DenjoyPoint& p) const {
        if (const auto* gp = std::get_if<GapPoint>(&p)) return orbit_point(gp->gap);
        return std::get<CantorPoint>(p).y;
    }

    /// Circular order starting from 0: -1, 0, +1.
    int compare_position(const DenjoyPoint& a, const DenjoyPoint& b) const {
        int c = rho_.compare(fiber(a), fiber(b), prec_);
        if (c != 0) return c;
        auto ra = rank(a), rb = rank(b);
        if (ra < rb) return -1;
        if (rb < ra) return 1;
        return 0;
    }

private:
    // Position inside one fiber of phi: left endpoint, gap interior by t, right endpoint.
    static mpq_class rank(const DenjoyPoint& p) {
        if (const auto* gp = std::get_if<GapPoint>(&p)) return gp->t;
        return std::get<CantorPoint>(p).side == Side::RightOf ? mpq_class(1) : mpq_class(0);
    }

    bool same_orbit(const OrbitForm& a, const OrbitForm& b) const { return (a - b).constant().get_den() == 1; }

    void check_label(const GapLabel& label) const {
        if (label.orbit >= blowups_.size()) throw DomainError("gap label refers to a non-existent blown-up orbit");
        if (label.g.dim() != dim()) throw DomainError("gap label dimension does not match the action");
    }

    RotationVector rho_;
    std::vector<BlowUpData> blowups_;
    Precision prec_;
};

} // namespace denjoy
