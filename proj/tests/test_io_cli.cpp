#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "denjoy/cli/commands.hpp"
#include "fixtures.hpp"

using namespace denjoy;
using namespace denjoy::cli;
using denjoy::testing::denjoy2;

namespace {

const std::string kSpecDir = DENJOY_SPEC_DIR;

std::string spec_path(const std::string& name) { return kSpecDir + "/" + name; }

ParseError parse_error_of(const std::string& text) {
    try {
        build_action(parse_action_spec(text));
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return ParseError("", 0, 0);
}

} // namespace

TEST(SpecFile, SamplesRoundTripBitExactly) {
    std::size_t seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(kSpecDir)) {
        ActionSpec a = parse_action_spec(read_file(entry.path().string()));
        std::string canon = write_action_spec(a);
        ActionSpec b = parse_action_spec(canon);
        EXPECT_EQ(a, b) << entry.path();
        EXPECT_EQ(write_action_spec(b), canon) << entry.path();
        EXPECT_NO_THROW(build_action(b)) << entry.path();
        ++seen;
    }
    EXPECT_GE(seen, 4u);
}

TEST(SpecFile, RandomSpecsRoundTrip) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> small(1, 9), coin(0, 1);
    for (int t = 0; t < 100; ++t) {
        ActionSpec s;
        s.d = 1 + t % 3;
        for (std::size_t i = 0; i < s.d; ++i) {
            int a = small(rng) + 1;
            s.gamma.push_back(coin(rng) ? Real::parse("sqrt(" + std::to_string(a * a + 1) + ")-" + std::to_string(a))
                                        : Real::parse(std::to_string(i + 1) + "/" + std::to_string(s.d + 7)));
        }
        if (coin(rng)) s.name = "spec \"" + std::to_string(t) + "\"";
        for (int b = 0; b < small(rng) % 3; ++b) {
            LatticeVector c(s.d);
            c[0] = small(rng) - 5;
            mpq_class total(small(rng), 3);
            total.canonicalize();
            s.blowups.push_back({"geometric", OrbitForm(mpq_class(b, 7), c), mpq_class(1, small(rng) + 1), total});
        }
        s.precision = {64 + 16 * small(rng), 2048};
        if (coin(rng)) s.enum_budget = 1000 * small(rng);
        if (coin(rng)) s.certificate_bound = 10 * small(rng);
        s.points = {"cantor:g1", "gap:0:" + std::string(s.d == 1 ? "3" : s.d == 2 ? "3,-1" : "3,-1,0") + ":1/3"};
        std::string text = write_action_spec(s);
        ActionSpec back = parse_action_spec(text);
        EXPECT_EQ(back, s) << text;
        EXPECT_EQ(write_action_spec(back), text);
    }
}

TEST(SpecFile, PositionedDiagnostics) {
    ParseError e = parse_error_of("schema: \"denjoy-action/1\"\nd: 2\ngamma: [\"sqrt(2)-1\", \"sqrt(3-1\"]\n");
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 31u);
    e = parse_error_of("schema: \"denjoy-action/1\"\nd: 2\ngamma: [\"sqrt(2)-1\"]\n");
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 8u);
    e = parse_error_of("schema: \"denjoy-action/1\"\nd: 1\ngamma: [\"3/2\"]\n");
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 1u);
    e = parse_error_of("schema: \"denjoy-action/1\"\nd: 1\ngamma: [\"sqrt(2)-1\"]\nblowups:\n  - {family: \"cubic\"}\n");
    EXPECT_EQ(e.line(), 5u);
    EXPECT_EQ(e.column(), 14u);
    e = parse_error_of("schema: \"denjoy-action/1\"\nd: 1\ngamma: [\"sqrt(2)-1\"]\nblowups:\n  - {lambda: \"3/2\"}\n");
    EXPECT_EQ(e.line(), 5u);
    e = parse_error_of("schema: \"denjoy-action/1\"\nd: 1\ngamma: [\"1/3\"]\nblowups:\n  - {base_point: \"0\"}\n");
    EXPECT_EQ(e.line(), 4u);
    e = parse_error_of("schema: \"denjoy-action/1\"\nd: 1\ngamma: [1/3\n");
    EXPECT_EQ(e.line(), 4u);
    e = parse_error_of("schema: \"denjoy-action/1\"\nd: 1\ncolour: red\ngamma: [\"1/3\"]\n");
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 1u);
    e = parse_error_of("schema: \"denjoy-action/2\"\nd: 1\ngamma: [\"1/3\"]\n");
    EXPECT_EQ(e.column(), 9u);
    e = parse_error_of("schema: \"denjoy-action/1\"\nd: x\ngamma: [\"1/3\"]\n");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 4u);
}

TEST(TextForms, RationalsAndGroupElements) {
    EXPECT_EQ(parse_rational("1.25"), mpq_class(5, 4));
    EXPECT_EQ(parse_rational("-6/4"), mpq_class(-3, 2));
    EXPECT_EQ(parse_rational(" 7 "), 7);
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("1.2.3"), ParseError);
    EXPECT_EQ(parse_lattice_vector("2,-1", 2), LatticeVector({2, -1}));
    EXPECT_EQ(parse_lattice_vector("(0, 3)", 2), LatticeVector({0, 3}));
    EXPECT_EQ(parse_lattice_vector("e2", 3), LatticeVector({0, 1, 0}));
    EXPECT_THROW(parse_lattice_vector("e4", 3), ParseError);
    try {
        parse_lattice_vector("1,x", 2);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 3u);
    }
}

TEST(TextForms, PointsRoundTrip) {
    DenjoyAction a = denjoy2();
    Realization real(a, 128);
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<int> c(-4, 4), t(1, 15), side(0, 2);
    for (int i = 0; i < 200; ++i) {
        DenjoyPoint p;
        if (i % 2) {
            mpq_class u(t(rng) % 13 + 1, 14);
            u.canonicalize();
            p = a.gap_point(GapLabel{0, LatticeVector({c(rng), c(rng)})}, u);
        } else {
            OrbitForm y(mpq_class(t(rng) % 16 + 1, 17), LatticeVector({c(rng), c(rng)}));
            if (i % 4 == 0) y = OrbitForm(mpq_class(0), LatticeVector({c(rng), c(rng)}));
            p = a.cantor_point(y, y.constant() == 0 ? static_cast<Side>(side(rng)) : Side::Plain);
        }
        EXPECT_EQ(parse_point(a, to_string(p)), p) << to_string(p);
    }
    for (const char* q : {"1/36", "1/3", "0.7"}) {
        DenjoyPoint x = parse_point(a, std::string("x:") + q, &real);
        Interval r = real.realize(x);
        const mpq_class tol(1, mpz_class(1) << 127);
        EXPECT_TRUE(Interval::hull(r.lower() - tol, r.upper() + tol, 256).contains(parse_rational(q)))
            << q << " -> " << to_string(x);
    }
    EXPECT_THROW(parse_point(a, "x:1/3"), ParseError);
    EXPECT_THROW(parse_point(a, "gap:1:0,0:1/2"), ParseError);
    EXPECT_THROW(parse_point(a, "cantor:1/3:left"), ParseError);
    try {
        parse_point(a, "cantor:g1+g3");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 11u);
    }
}

TEST(TextForms, CrossedTerms) {
    DenjoyAction a = denjoy2();
    CrossedElement u = parse_crossed_element(a, {});
    EXPECT_EQ(trace(a, u).to_string(), "1");
    CrossedElement b = parse_crossed_element(a, {"0,0|bump:0:1,0:1/4=1;3/4=2"});
    EXPECT_EQ(in_trace_ideal(a, b).answer, Membership::Yes);
    CrossedElement k = parse_crossed_element(a, {"0,0|knots:0=1;1/2=1"});
    EXPECT_EQ(trace(a, k).to_string(), "1");
    CrossedElement half = parse_crossed_element(a, {"0,0|const:1/2", "e1|const:3"});
    EXPECT_EQ(trace(a, half).to_string(), "1/2");
    EXPECT_THROW(parse_crossed_term(a, "0,0|bump:0:1,0:1=1"), ParseError);
    EXPECT_THROW(parse_crossed_term(a, "0,0|wave:1"), ParseError);
    EXPECT_THROW(parse_crossed_term(a, "0,0 const:1"), ParseError);
}

TEST(Reports, RoundTripAndDeterminism) {
    Options o;
    Outcome a = cmd_ktheory({spec_path("denjoy_d2.yaml"), std::nullopt, {}, 20, 6}, o);
    Outcome b = cmd_ktheory({spec_path("denjoy_d2.yaml"), std::nullopt, {}, 20, 6}, o);
    a.report.elapsed_ms = 12.5;
    b.report.elapsed_ms = 99.25;
    EXPECT_EQ(a.report.content(), b.report.content());
    std::string text = write_report(a.report);
    Report back = parse_report(text);
    EXPECT_EQ(back, a.report);
    EXPECT_EQ(write_report(back), text);
    EXPECT_THROW(parse_report("{\"schema\": \"other/1\"}"), DomainError);
    try {
        parse_report("{\n  \"schema\": ,\n}");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(Commands, Classify) {
    Options o;
    EXPECT_EQ(cmd_classify(spec_path("rational.yaml"), o).report.outputs["class"], "FiniteOrbit");
    EXPECT_EQ(cmd_classify(spec_path("rational.yaml"), o).report.outputs["rho_image"]["order"], "15");
    EXPECT_EQ(cmd_classify(spec_path("minimal.yaml"), o).report.outputs["class"], "Minimal");
    Report d = cmd_classify(spec_path("denjoy_d2.yaml"), o).report;
    EXPECT_EQ(d.outputs["class"], "Denjoy");
    EXPECT_EQ(d.outputs["orbit_count"], 1);
    EXPECT_EQ(cmd_classify(spec_path("two_orbits.yaml"), o).report.outputs["orbit_count"], 2);
}

TEST(Commands, RhoAndEstimate) {
    Options o;
    Report r = cmd_rho(spec_path("denjoy_d2.yaml"), "e1", "0", o).report;
    EXPECT_EQ(r.outputs["exact"]["form"], "g1");
    EXPECT_EQ(r.outputs["exact"]["decimal"], "0.414213562373095048801688724210");
    r = cmd_rho(spec_path("denjoy_d2.yaml"), "2,-1", "0", o).report;
    EXPECT_EQ(r.outputs["exact"]["form"], "2*g1-g2");
    o.estimate = 10000;
    r = cmd_rho(spec_path("denjoy_d2.yaml"), "2,-1", "0", o).report;
    EXPECT_TRUE(r.outputs["estimate"]["contains_exact"].get<bool>());
    EXPECT_LE(std::stod(r.outputs["estimate"]["bracket_width_upper"].get<std::string>()), 1e-4 + 1e-11);
}

TEST(Commands, ActMeasureTrace) {
    Options o;
    Report act = cmd_act(spec_path("denjoy_d2.yaml"), "e1", "gap:0:0,0:1/2", o).report;
    EXPECT_EQ(act.outputs["image"]["point"], "gap:0:1,0:1/2");
    EXPECT_TRUE(act.certificates["equivariance"].get<bool>());
    Report m = cmd_measure(spec_path("denjoy_d2.yaml"), "x:1/3", "", "3,-2", o).report;
    EXPECT_EQ(m.outputs["measure"]["form"], m.outputs["rotation_number"]["form"]);
    EXPECT_TRUE(m.certificates["measure_equals_rotation_number"].get<bool>());
    Report t = cmd_trace(spec_path("denjoy_d2.yaml"), {}, o).report;
    EXPECT_EQ(t.outputs["trace"]["expression"], "1");
    EXPECT_EQ(t.outputs["in_trace_ideal"], "No");
    EXPECT_THROW(cmd_measure(spec_path("minimal.yaml"), "x:1/3", "", "e1", o), DomainError);
}

TEST(Commands, KTheoryExamples) {
    Options o;
    Report d1 = cmd_ktheory({spec_path("denjoy_d1.yaml"), std::nullopt, {}, 20, 6}, o).report;
    EXPECT_EQ(d1.outputs["ranks"]["K0"], 2);
    EXPECT_EQ(d1.outputs["ranks"]["K1"], 2);
    EXPECT_EQ(d1.outputs["trace_values"][0]["formal"], "1");
    EXPECT_EQ(d1.outputs["trace_values"][1]["formal"], "g1");
    Report d3 = cmd_ktheory({"", 3, {}, 20, 6}, o).report;
    EXPECT_EQ(d3.outputs["ranks"]["K0"], 8);
    EXPECT_FALSE(d3.outputs.contains("trace_values"));
    Report d2 = cmd_ktheory({spec_path("denjoy_d2.yaml"), std::nullopt, {}, 20, 6}, o).report;
    std::vector<std::string> formal;
    for (const auto& v : d2.outputs["trace_values"]) formal.push_back(v["formal"]);
    EXPECT_EQ(formal, (std::vector<std::string>{"1", "g1", "g2", "0"}));
    EXPECT_EQ(d2.outputs["K1_labels"], Json({"{1}", "{2}", "{3}", "{1,2,3}"}));
    EXPECT_TRUE(d2.certificates["injectivity"]["verified"].get<bool>());
    EXPECT_EQ(d2.outputs["ideal"]["K1"], "Z");
    EXPECT_TRUE(d2.outputs.contains("label_convention"));
    EXPECT_THROW(cmd_ktheory({"", 17, {}, 20, 6}, o), DomainError);
}

TEST(Commands, Prim) {
    Options o;
    PrimArgs args{spec_path("denjoy_d2.yaml"), "", {"c1:{1/3}"}, {"c1:(0,1)"}};
    Report p = cmd_prim(args, o).report;
    EXPECT_EQ(p.outputs["queries"][0]["closure"], "c1:{1/3}; J");
    EXPECT_EQ(p.outputs["ideals"][0]["name"], "J");
    EXPECT_TRUE(p.outputs["lattice"]["maximal"]["unique_maximal"].get<bool>());
    EXPECT_THROW(cmd_prim({spec_path("minimal.yaml"), "", {}, {}}, o), DomainError);
    EXPECT_EQ(cmd_prim({"", "inf", {"c3:{1/2}"}, {}}, o).report.outputs["k"], "infinity");
    EXPECT_THROW(cmd_prim({"", "2", {}, {"c1:(0,1/2]"}}, o), DomainError);
}
