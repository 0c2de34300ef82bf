#pragma once

// Subcommands of the denjoy tool. Each returns a report plus an exit status;
// tools/denjoy_cli.cpp only parses arguments and prints.

#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>

#include "denjoy/ergodic.hpp"
#include "denjoy/ideals.hpp"
#include "denjoy/io.hpp"
#include "denjoy/io/element.hpp"
#include "denjoy/ktheory.hpp"

namespace denjoy::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kUndecided = 2, kBudget = 3 };

struct Options {
    std::optional<int> precision_bits;
    std::optional<int> max_precision_bits;
    std::optional<std::size_t> enum_budget;
    std::optional<std::int64_t> estimate;
};

struct Outcome {
    Report report;
    int exit_code = kOk;
};

inline constexpr int kDecimalDigits = 30;

/// A loaded spec with the command-line overrides applied.
struct Loaded {
    ActionSpec spec;
    DenjoyAction action;
    Precision prec;
    std::size_t budget = kDefaultEnumBudget;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline Precision effective_precision(Precision p, const Options& o) {
    if (o.precision_bits) p.working_bits = *o.precision_bits;
    if (o.max_precision_bits) p.ceiling_bits = *o.max_precision_bits;
    if (p.ceiling_bits < p.working_bits) p.ceiling_bits = p.working_bits;
    p.validate();
    return p;
}

inline Loaded load(const std::string& path, const Options& o) {
    ActionSpec spec;
    try {
        spec = parse_action_spec(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(e.message(), e.line(), e.column(), path);
    }
    spec.precision = effective_precision(spec.precision, o);
    DenjoyAction action;
    try {
        action = build_action(spec);
    } catch (const ParseError& e) {
        throw ParseError(e.message(), e.line(), e.column(), path);
    }
    return {spec, action, spec.precision, o.enum_budget.value_or(spec.enum_budget.value_or(kDefaultEnumBudget))};
}

inline Json precision_json(const Precision& p, std::size_t budget) {
    return {{"working_bits", p.working_bits}, {"ceiling_bits", p.ceiling_bits}, {"enum_budget", budget}};
}

/// {"form": ..., "decimal": ...}; decimal is null when not certified.
inline Json form_json(const RotationVector& rho, const OrbitForm& f, const Precision& prec, bool& undecided) {
    Json j{{"form", f.to_string()}};
    auto s = certified_decimal(rho.to_real(f), kDecimalDigits, prec);
    if (!s) undecided = true;
    j["decimal"] = s ? Json(*s) : Json(nullptr);
    return j;
}

inline Json real_json(const Real& x, const Precision& prec, bool& undecided) {
    Json j{{"expression", x.to_string()}};
    auto s = certified_decimal(x, kDecimalDigits, prec);
    if (!s) undecided = true;
    j["decimal"] = s ? Json(*s) : Json(nullptr);
    return j;
}

inline Json certificate_json(const IndependenceCertificate& c) {
    Json j{{"declared", c.declared},
           {"bound", c.bound},
           {"verified", c.verified},
           {"precision_bits", c.precision_bits},
           {"columns", c.columns}};
    j["min_distance"] = c.min_distance ? Json(c.min_distance->get_str()) : Json(nullptr);
    j["relation"] = c.relation ? Json(c.relation->coords()) : Json(nullptr);
    return j;
}

inline Json spec_inputs(const std::string& path, const Loaded& l) {
    Json g = Json::array();
    for (const auto& x : l.spec.gamma) g.push_back(x.to_string());
    return {{"spec", path}, {"d", l.spec.d}, {"gamma", g}, {"precision", precision_json(l.prec, l.budget)}};
}

inline std::optional<Realization> maybe_realize(const Loaded& l) {
    if (!l.action.is_denjoy()) return std::nullopt;
    return Realization(l.action, l.prec.working_bits, l.budget);
}

inline Outcome cmd_classify(const std::string& path, const Options& o) {
    Loaded l = load(path, o);
    Outcome out;
    Report& r = out.report;
    r.command = "classify";
    r.inputs = spec_inputs(path, l);
    const auto& rho = l.action.rho();
    const ActionClass c = l.action.classify();
    bool undecided = false;
    r.outputs["class"] = to_string(c);
    r.outputs["d"] = l.action.dim();
    Json gammas = Json::array();
    for (const auto& g : rho.gamma()) gammas.push_back(real_json(g, l.prec, undecided));
    r.outputs["gamma"] = gammas;
    r.outputs["orbit_count"] = l.action.orbit_count();
    Json image;
    if (rho.all_rational()) {
        mpz_class order = 1;
        for (const auto& g : rho.gamma()) {
            mpz_class den = g.rational().get_den();
            mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), den.get_mpz_t());
        }
        image = {{"finite", true}, {"order", order.get_str()}};
    } else {
        Json irr = Json::array();
        for (std::size_t i = 0; i < rho.dim(); ++i)
            if (!rho.gamma(i).is_rational()) irr.push_back(i + 1);
        image = {{"finite", false}, {"irrational_generators", irr}};
    }
    r.outputs["rho_image"] = image;
    Json bl = Json::array();
    for (const auto& b : l.action.blowups())
        bl.push_back({{"family", GeometricLengths::kName},
                      {"base_point", b.base_point.to_string()},
                      {"lambda", b.lengths.lambda().get_str()},
                      {"total", b.lengths.total().get_str()}});
    r.outputs["blowups"] = bl;
    r.certificates["independence"] = certificate_json(rho.certificate());
    out.exit_code = undecided ? kUndecided : kOk;
    return out;
}

inline Outcome cmd_rho(const std::string& path, const std::string& g_text, const std::string& x0_text,
                       const Options& o) {
    Loaded l = load(path, o);
    Outcome out;
    Report& r = out.report;
    r.command = "rho";
    r.inputs = spec_inputs(path, l);
    r.inputs["g"] = g_text;
    const LatticeVector g = parse_lattice_vector(g_text, l.action.dim());
    const auto& rho = l.action.rho();
    bool undecided = false;
    const OrbitForm exact = rotation_number(l.action, g);
    r.outputs["exact"] = form_json(rho, exact, l.prec, undecided);
    if (o.estimate) {
        const mpq_class x0 = parse_rational(x0_text);
        r.inputs["estimate"] = *o.estimate;
        r.inputs["x0"] = x0.get_str();
        LiftIterator it(l.action, g, x0, l.prec.working_bits, l.budget);
        RotationEstimate est = rotation_number_estimate(it, *o.estimate);
        const Interval exact_iv = rho.enclose(exact, l.prec.working_bits);
        const mpq_class width = est.bracket.upper() - est.bracket.lower();
        const mpq_class gap = std::max(mpq_class(abs(est.quotient.upper() - exact_iv.lower())),
                                       mpq_class(abs(exact_iv.upper() - est.quotient.lower())));
        auto up = [](const mpq_class& q) { return Interval::exact(q, 64).upper_string(12); };
        Json e{{"n", est.n},
               {"quotient", interval_json(est.quotient)},
               {"bracket", interval_json(est.bracket)},
               {"bracket_width_upper", up(width)},
               {"contains_exact", est.bracket.contains(exact_iv)}};
        e["gap_to_exact_upper"] = up(gap);
        e["exact_displacement"] = est.exact ? Json(est.exact->to_string()) : Json(nullptr);
        r.outputs["estimate"] = e;
    }
    out.exit_code = undecided ? kUndecided : kOk;
    return out;
}

inline Json point_json(const DenjoyAction& action, const DenjoyPoint& p, const std::optional<Realization>& real,
                       const Precision& prec, bool& undecided) {
    Json j{{"point", to_string(p)}};
    if (action.is_denjoy()) j["phi"] = form_json(action.rho(), action.semiconjugacy(p), prec, undecided);
    if (real) j["x"] = interval_json(real->realize(p));
    return j;
}

inline Outcome cmd_act(const std::string& path, const std::string& g_text, const std::string& point_text,
                       const Options& o) {
    Loaded l = load(path, o);
    Outcome out;
    Report& r = out.report;
    r.command = "act";
    r.inputs = spec_inputs(path, l);
    r.inputs["g"] = g_text;
    r.inputs["point"] = point_text;
    const LatticeVector g = parse_lattice_vector(g_text, l.action.dim());
    auto real = maybe_realize(l);
    const DenjoyPoint p = parse_point(l.action, point_text, real ? &*real : nullptr);
    const DenjoyPoint q = l.action.act(g, p);
    bool undecided = false;
    r.outputs["source"] = point_json(l.action, p, real, l.prec, undecided);
    r.outputs["image"] = point_json(l.action, q, real, l.prec, undecided);
    const OrbitForm expected = l.action.rho().normalize(l.action.fiber(p) + rotation_number(l.action, g), l.prec);
    r.certificates["equivariance"] = l.action.rho().normalize(l.action.fiber(q), l.prec) == expected;
    out.exit_code = undecided ? kUndecided : kOk;
    return out;
}

inline Outcome cmd_measure(const std::string& path, const std::string& from, const std::string& to,
                           const std::string& g_text, const Options& o) {
    Loaded l = load(path, o);
    Outcome out;
    Report& r = out.report;
    r.command = "measure";
    r.inputs = spec_inputs(path, l);
    if (!l.action.is_denjoy()) throw DomainError("measure: the action is not Denjoy");
    auto real = maybe_realize(l);
    const DenjoyPoint a = parse_point(l.action, from, &*real);
    DenjoyPoint b = a;
    r.inputs["from"] = from;
    if (!g_text.empty()) {
        r.inputs["g"] = g_text;
        b = l.action.act(parse_lattice_vector(g_text, l.action.dim()), a);
    } else if (!to.empty()) {
        r.inputs["to"] = to;
        b = parse_point(l.action, to, &*real);
    } else {
        throw DomainError("measure: give --to or --g");
    }
    bool undecided = false;
    const OrbitForm m = measure_arc(l.action, DenjoyArc{a, b, false});
    r.outputs["arc"] = {{"start", to_string(a)}, {"end", to_string(b)}};
    r.outputs["measure"] = form_json(l.action.rho(), m, l.prec, undecided);
    if (!g_text.empty()) {
        const OrbitForm rg = rotation_number(l.action, parse_lattice_vector(g_text, l.action.dim()));
        r.outputs["rotation_number"] = form_json(l.action.rho(), rg, l.prec, undecided);
        r.certificates["measure_equals_rotation_number"] = rg == m;
    }
    out.exit_code = undecided ? kUndecided : kOk;
    return out;
}

inline Outcome cmd_trace(const std::string& path, const std::vector<std::string>& terms, const Options& o) {
    Loaded l = load(path, o);
    Outcome out;
    Report& r = out.report;
    r.command = "trace";
    r.inputs = spec_inputs(path, l);
    r.inputs["terms"] = terms.empty() ? Json(std::vector<std::string>{"unit"}) : Json(terms);
    const CrossedElement a = parse_crossed_element(l.action, terms);
    bool undecided = false;
    r.outputs["trace"] = real_json(trace(l.action, a), l.prec, undecided);
    if (l.action.is_denjoy()) {
        TraceIdealResult t = in_trace_ideal(l.action, a, l.prec);
        r.outputs["trace_of_square"] = real_json(t.trace_of_square, l.prec, undecided);
        r.outputs["in_trace_ideal"] = to_string(t.answer);
        r.certificates["trace_ideal_bits"] = t.bits;
        if (t.answer == Membership::Undecided) undecided = true;
    }
    out.exit_code = undecided ? kUndecided : kOk;
    return out;
}

struct KTheoryArgs {
    std::string spec_path;
    std::optional<std::size_t> d;
    std::vector<std::string> gamma;
    int injectivity_bound = 20;
    std::size_t matrix_limit = 6;  ///< index-map entries are listed for d up to this
};

inline Json sparse_json(const SparseMatrix& m) {
    Json e = Json::array();
    for (const auto& [row, col, v] : m.entries) e.push_back({row, col, v});
    return {{"rows", m.rows}, {"cols", m.cols}, {"entries", e}};
}

inline Json labels_json(const KGroupDescriptor& k) {
    Json a = Json::array();
    for (const auto& l : k.basis_labels) a.push_back(l.to_string());
    return a;
}

inline Outcome cmd_ktheory(const KTheoryArgs& args, const Options& o) {
    Outcome out;
    Report& r = out.report;
    r.command = "ktheory";
    std::optional<RotationVector> gamma;
    std::optional<std::size_t> orbits;
    Precision prec = effective_precision({}, o);
    if (!args.spec_path.empty()) {
        Loaded l = load(args.spec_path, o);
        r.inputs = spec_inputs(args.spec_path, l);
        gamma = l.action.rho();
        prec = l.prec;
        if (l.action.is_denjoy()) orbits = l.action.orbit_count();
    } else {
        if (!args.d) throw DomainError("ktheory: give a spec file or --d");
        r.inputs["d"] = *args.d;
        r.inputs["precision"] = precision_json(prec, o.enum_budget.value_or(kDefaultEnumBudget));
        if (!args.gamma.empty()) {
            if (args.gamma.size() != *args.d) throw DomainError("ktheory: --gamma needs exactly d values");
            std::vector<Real> g;
            for (const auto& s : args.gamma) g.push_back(Real::parse(s));
            gamma = RotationVector(g, prec);
            r.inputs["gamma"] = args.gamma;
        }
    }
    const std::size_t d = gamma ? gamma->dim() : *args.d;
    if (d < 1 || d > kMaxKTheoryDim)
        throw DomainError("ktheory: d must lie in 1.." + std::to_string(kMaxKTheoryDim));
    KTheory kt = k_groups(d);
    r.outputs["d"] = d;
    r.outputs["ranks"] = {{"K0", kt.k0.rank}, {"K1", kt.k1.rank}};
    r.outputs["K0_labels"] = labels_json(kt.k0);
    r.outputs["K1_labels"] = labels_json(kt.k1);
    r.outputs["label_convention"] =
        "labels are subsets of {1,...,d+1}: index 1 is the circle generator u, index i+1 is lambda_{e_i}; "
        "subsets of {1,...,d} would give only 2^(d-1) labels of each parity, fewer than the rank 2^d";
    Json steps = Json::array();
    bool all_split = true;
    for (const auto& s : kt.steps) {
        const bool split = is_split_exact(s);
        all_split = all_split && split;
        Json j{{"step", s.step}, {"new_index", s.new_index}, {"split_exact", split}};
        if (d <= args.matrix_limit) {
            j["inclusion0"] = sparse_json(s.inclusion0);
            j["inclusion1"] = sparse_json(s.inclusion1);
            j["delta0"] = sparse_json(s.delta0);
            j["delta1"] = sparse_json(s.delta1);
        } else {
            j["nonzero_entries"] = s.inclusion0.entries.size() + s.inclusion1.entries.size() + s.delta0.entries.size() +
                                   s.delta1.entries.size();
        }
        steps.push_back(j);
    }
    r.outputs["index_maps"] = steps;
    r.certificates["all_steps_split_exact"] = all_split;
    bool undecided = false;
    if (gamma) {
        TorusTheta theta(*gamma);
        Json th = Json::array();
        auto formal = theta.formal();
        for (std::size_t i = 0; i < theta.size(); ++i) {
            Json row = Json::array();
            for (std::size_t j = 0; j < theta.size(); ++j) row.push_back(formal.at(i, j).to_string());
            th.push_back(row);
        }
        r.outputs["theta"] = th;
        Json values = Json::array();
        for (const auto& label : kt.k0.basis_labels) {
            TracePairing tp = trace_pairing(theta, {{label, 1}}, prec.working_bits);
            if (!tp.decimal) undecided = true;
            values.push_back({{"label", label.to_string()},
                              {"formal", tp.formal_string()},
                              {"decimal", tp.decimal ? Json(*tp.decimal) : Json(nullptr)}});
        }
        r.outputs["trace_values"] = values;
        Json gens = Json::array();
        std::string desc = "Z";
        for (const auto& [label, v] : range_generators(theta)) {
            std::vector<std::string> coeffs;
            for (const auto& x : v) coeffs.push_back(x.get_str());
            gens.push_back({{"label", label.to_string()}, {"formal", coeffs}});
        }
        for (std::size_t i = 1; i <= d; ++i) desc += " + g" + std::to_string(i) + "*Z";
        r.outputs["range"] = {{"generators", gens}, {"subgroup", desc}};
        // order samples: +-generators and -1 + g1 + ... + gd
        Json samples = Json::array();
        auto sample = [&](std::vector<mpz_class> n) {
            Sign s = positivity(*gamma, n, prec);
            if (s == Sign::Undecided) undecided = true;
            std::vector<std::string> c;
            for (const auto& x : n) c.push_back(x.get_str());
            samples.push_back({{"formal", c}, {"sign", to_string(s)}});
        };
        for (std::size_t i = 0; i <= d; ++i) {
            std::vector<mpz_class> n(d + 1, 0);
            n[i] = 1;
            sample(n);
            n[i] = -1;
            sample(n);
        }
        std::vector<mpz_class> mix(d + 1, 1);
        mix[0] = -1;
        sample(mix);
        r.outputs["order_samples"] = samples;
        if (d <= 3) {
            IndependenceCertificate c = certify_injectivity(*gamma, args.injectivity_bound, prec);
            r.certificates["injectivity"] = certificate_json(c);
            if (!c.verified) undecided = true;
        }
    }
    if (orbits) {
        IdealKData kd = ideal_k_data(*orbits);
        r.outputs["ideal"] = {{"k", *orbits},
                              {"K0", kd.k0_string()},
                              {"K1", kd.k1_string()},
                              {"index_map_zero", kd.index_map_zero},
                              {"structure", kd.descriptor}};
    }
    out.exit_code = undecided ? kUndecided : kOk;
    return out;
}

struct PrimArgs {
    std::string spec_path;
    std::string k;  ///< "<n>" or "inf", used without a spec
    std::vector<std::string> subsets;
    std::vector<std::string> opens;
};

inline Json ideal_json(const PrimSpace& space, const IdealDescriptor& d) {
    Json j{{"name", d.name},
           {"kind", to_string(d.kind)},
           {"open_set", space.to_string(d.open_set)},
           {"contained_in_J", d.contained_in_J},
           {"is_maximal", d.is_maximal},
           {"unique_maximal", d.unique_maximal},
           {"invariant_open", d.invariant_open},
           {"structure", d.structure}};
    if (d.membership_test) j["membership_test"] = *d.membership_test;
    if (d.k_data) j["k_data"] = {{"K0", d.k_data->k0_string()}, {"K1", d.k_data->k1_string()}};
    return j;
}

inline Outcome cmd_prim(const PrimArgs& args, const Options& o) {
    Outcome out;
    Report& r = out.report;
    r.command = "prim";
    std::optional<PrimSpace> space;
    Json components = Json::array();
    if (!args.spec_path.empty()) {
        Loaded l = load(args.spec_path, o);
        r.inputs = spec_inputs(args.spec_path, l);
        space = prim_space(l.action);
        for (std::size_t i = 0; i < l.action.orbit_count(); ++i)
            components.push_back({{"component", "c" + std::to_string(i + 1)},
                                  {"gap", GapLabel{i, LatticeVector(l.action.dim())}.to_string()},
                                  {"base_point", l.action.blowups()[i].base_point.to_string()}});
    } else {
        if (args.k.empty()) throw DomainError("prim: give a spec file or --k");
        r.inputs["k"] = args.k;
        if (args.k == "inf") {
            space = PrimSpace(std::nullopt);
        } else {
            std::size_t used = 0;
            unsigned long k = 0;
            try {
                k = std::stoul(args.k, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != args.k.size() || args.k.empty()) throw ParseError("--k must be a positive integer or 'inf'", 1, 1);
            space = PrimSpace(k);
        }
        if (space->k())
            for (std::size_t i = 1; i <= *space->k(); ++i) components.push_back({{"component", "c" + std::to_string(i)}});
    }
    r.inputs["subsets"] = args.subsets;
    r.inputs["opens"] = args.opens;
    r.outputs["k"] = space->k() ? Json(*space->k()) : Json("infinity");
    r.outputs["components"] = components;
    Json queries = Json::array();
    for (const auto& s : args.subsets) {
        PrimSubset sub = parse_prim_subset(*space, s);
        OpenCheck chk = space->is_open(sub);
        Json q{{"subset", space->to_string(sub)},
               {"closure", space->to_string(space->closure(sub))},
               {"interior", space->to_string(space->interior(sub))},
               {"is_open", chk.open},
               {"is_closed", space->closure(sub) == sub}};
        if (chk.witness) q["witness"] = chk.witness->to_string();
        queries.push_back(q);
    }
    r.outputs["queries"] = queries;
    Json ideals = Json::array();
    for (const auto& u : args.opens) ideals.push_back(ideal_json(*space, ideal_for_open(*space, parse_prim_subset(*space, u))));
    r.outputs["ideals"] = ideals;
    r.outputs["lattice"] = {{"maximal", ideal_json(*space, maximal_ideal(*space))},
                            {"top", ideal_json(*space, ideal_for_open(*space, space->whole()))},
                            {"bottom", ideal_json(*space, ideal_for_open(*space, space->empty()))},
                            {"open_sets", "U open iff each component part is open and (J in U implies U = everything)"},
                            {"neighbourhoods_of_J",
                             "J lies in the closure of every non-empty subset, so any open set containing J has "
                             "empty complement"}};
    return out;
}

inline Outcome cmd_export(const std::string& report_path) {
    Outcome out;
    out.report = parse_report(read_file(report_path));
    return out;
}

} // namespace denjoy::cli
