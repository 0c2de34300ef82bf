#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "denjoy/ergodic.hpp"
#include "fixtures.hpp"

using namespace denjoy;
using denjoy::testing::denjoy2;

namespace {

const mpq_class kTiny(1, mpz_class(1) << 100);

LatticeVector random_lattice(std::mt19937_64& rng, std::size_t d, int r) {
    std::uniform_int_distribution<std::int64_t> u(-r, r);
    LatticeVector g(d);
    for (std::size_t i = 0; i < d; ++i) g[i] = u(rng);
    return g;
}

mpq_class random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

PLFunction random_cantor_function(std::mt19937_64& rng, const DenjoyAction& a) {
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_int_distribution<long> num(0, 99);
    std::vector<PLFunction::Knot> knots;
    const int m = count(rng);
    for (int i = 0; i < m; ++i) {
        OrbitForm y(mpq_class(num(rng), 100), random_lattice(rng, a.dim(), 3));
        knots.push_back({y, Real(random_rational(rng))});
    }
    try {
        return PLFunction::from_knots(a, knots);
    } catch (const DomainError&) {
        return PLFunction::constant(a.dim(), Real(1));
    }
}

PLFunction random_gap_function(std::mt19937_64& rng, const DenjoyAction& a) {
    std::uniform_int_distribution<int> count(1, 3);
    PLFunction f;
    for (int j = count(rng); j > 0; --j) {
        GapLabel gap{0, random_lattice(rng, a.dim(), 6)};
        PLFunction::Bump b{{mpq_class(1, 4), random_rational(rng)}, {mpq_class(2, 3), random_rational(rng)}};
        f = PLFunction::sum(a, f, PLFunction::bump(a, gap, b));
    }
    return f;
}

CrossedElement random_element(std::mt19937_64& rng, const DenjoyAction& a, int terms, bool gaps_only) {
    CrossedElement x;
    for (int i = 0; i < terms; ++i) {
        PLFunction f = gaps_only ? random_gap_function(rng, a) : random_cantor_function(rng, a);
        x = CrossedElement::sum(a, x, CrossedElement::monomial(f, random_lattice(rng, a.dim(), 2)));
    }
    return x;
}

bool encloses_zero(const Real& r, int bits) {
    Interval e = r.enclose(bits);
    return e.contains(mpq_class(0)) && e.width_at_most_pow2(bits - 8);
}

} // namespace

TEST(RotationNumber, Examples) {
    DenjoyAction a = denjoy2();
    EXPECT_EQ(rotation_number(a, LatticeVector{0, 0}).to_string(), "0");
    EXPECT_EQ(rotation_number(a, LatticeVector{1, 0}).to_string(), "g1");
    EXPECT_EQ(rotation_number(a, LatticeVector{1, 1}).to_string(), "-1+g1+g2");
}

TEST(RotationEstimate, PureRotationIsExact) {
    DenjoyAction m(RotationVector({Real::parse("sqrt(2)-1")}));
    LiftIterator it(m, LatticeVector{1}, mpq_class(3, 10));
    for (std::int64_t n : {1, 7, 100}) {
        RotationEstimate e = rotation_number_estimate(it, n);
        ASSERT_TRUE(e.exact.has_value());
        EXPECT_EQ(*e.exact, OrbitForm(0, LatticeVector{n}));
        Interval g = m.rho().enclose(OrbitForm::parse("g1", 1), 128);
        EXPECT_TRUE(e.quotient.overlaps(g));
        EXPECT_TRUE(e.quotient.width_at_most_pow2(120));
    }
}

TEST(RotationEstimate, IdentityGivesZero) {
    DenjoyAction a = denjoy2();
    LiftIterator it(a, LatticeVector{0, 0}, mpq_class(1, 3), 64);
    RotationEstimate e = rotation_number_estimate(it, 50);
    EXPECT_TRUE(e.quotient.is_point());
    EXPECT_TRUE(e.quotient.contains(mpq_class(0)));
}

TEST(RotationEstimate, EnclosesExactValueForEveryN) {
    DenjoyAction a = denjoy2();
    for (std::size_t i = 0; i < 2; ++i) {
        LiftIterator it(a, LatticeVector::basis(2, i), mpq_class(2, 7), 96);
        Interval gamma = a.rho().gamma(i).enclose(128);
        for (std::int64_t n : {1, 2, 3, 10, 99, 1000}) {
            RotationEstimate e = rotation_number_estimate(it, n);
            EXPECT_TRUE(e.bracket.contains(gamma)) << n;
            EXPECT_TRUE(e.quotient.widen(mpq_class(1, n)).contains(gamma)) << n;
            EXPECT_LE(e.bracket.log2_width(), std::log2(2.0 / static_cast<double>(n)) + 1e-9) << n;
        }
    }
}

// Independent oracle: the displacement of the orbit of the left endpoint of
// I_0, summing the steps psi(y_{k+1}) - psi(y_k) mod 1 with psi computed by
// direct summation over ||h||_1 <= 40 in long double. Each step of the lift
// lies in [0, 1) because psi is monotone and gamma_1 lies in (0, 1).
TEST(RotationEstimate, MatchesDirectIteration) {
    DenjoyAction a = denjoy2();
    const long double g1 = std::sqrt(2.0L) - 1, g2 = std::sqrt(3.0L) - 1;
    auto frac = [](long double v) { return v - std::floor(v); };
    std::vector<std::pair<long double, long double>> gaps;
    const auto& L = a.blowups()[0].lengths;
    for (int m = -40; m <= 40; ++m)
        for (int n = -(40 - std::abs(m)); n <= 40 - std::abs(m); ++n)
            gaps.emplace_back(frac(m * g1 + n * g2), static_cast<long double>(L.length(LatticeVector{m, n}).get_d()));
    auto psi = [&](long double y) {
        long double s = y;
        for (const auto& [yh, l] : gaps)
            if (yh < y) s += l;
        return s / 2;
    };
    const int n = 150;
    long double disp = 0, y = 0, x = psi(0);
    for (int k = 0; k < n; ++k) {
        y = frac(y + g1);
        long double nx = psi(y);
        disp += frac(nx - x);
        x = nx;
    }
    LiftIterator it(a, LatticeVector{1, 0}, 0, 96);
    it.advance(n);
    EXPECT_NEAR(it.displacement().mid_double(), static_cast<double>(disp), 1e-9);
}

TEST(Measure, Examples) {
    DenjoyAction a = denjoy2();
    DenjoyPoint p = a.cantor_point(OrbitForm::rational(2, mpq_class(1, 5)));
    EXPECT_EQ(measure_arc(a, DenjoyArc::whole(p)), OrbitForm::rational(2, 1));
    EXPECT_EQ(measure_arc(a, DenjoyArc{p, p}), OrbitForm::rational(2, 0));
    GapLabel I{0, LatticeVector{3, -1}};
    EXPECT_EQ(measure_arc(a, DenjoyArc{a.gap_point(I, 0), a.gap_point(I, 1)}), OrbitForm::rational(2, 0));
    // the complement of one gap has full measure
    EXPECT_EQ(measure_arc(a, DenjoyArc{a.gap_point(I, 1), a.gap_point(I, 0)}), OrbitForm::rational(2, 1));
    EXPECT_EQ(measure_arc(a, DenjoyArc{a.gap_point(I, mpq_class(1, 3)), a.gap_point(I, mpq_class(1, 2))}),
              OrbitForm::rational(2, 0));
}

TEST(Measure, ArcToTranslateIsRotationNumber) {
    DenjoyAction a = denjoy2();
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> num(1, 999);
    for (int i = 0; i < 100; ++i) {
        LatticeVector g = random_lattice(rng, 2, 10);
        if (g.is_zero()) continue;
        DenjoyPoint x = i % 2 ? a.cantor_point(OrbitForm(mpq_class(num(rng), 1000), random_lattice(rng, 2, 4)))
                              : a.gap_point(GapLabel{0, random_lattice(rng, 2, 4)}, mpq_class(num(rng), 1000));
        EXPECT_EQ(measure_arc(a, DenjoyArc{x, a.act(g, x)}), rotation_number(a, g));
    }
}

TEST(Measure, InvarianceAndAdditivity) {
    DenjoyAction a = denjoy2();
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> num(0, 999);
    auto point = [&] { return a.cantor_point(OrbitForm(mpq_class(num(rng), 1000), random_lattice(rng, 2, 3))); };
    for (int i = 0; i < 60; ++i) {
        DenjoyPoint p = point(), q = point(), r = point();
        LatticeVector g = random_lattice(rng, 2, 20);
        OrbitForm m = measure_arc(a, DenjoyArc{p, q});
        EXPECT_EQ(measure_arc(a, DenjoyArc{a.act(g, p), a.act(g, q)}), m);
        // order p, q, r circularly from p, then (p,q] + (q,r] = (p,r]
        OrbitForm pq = m, pr = measure_arc(a, DenjoyArc{p, r});
        if (a.rho().compare(pq, pr) > 0) std::swap(q, r);
        OrbitForm total = measure_arc(a, DenjoyArc{p, q}) + measure_arc(a, DenjoyArc{q, r});
        EXPECT_EQ(total, measure_arc(a, DenjoyArc{p, r}));
    }
}

TEST(Measure, GeometricCoordinates) {
    DenjoyAction a = denjoy2();
    Realization real(a, 96);
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> num(0, 9999);
    for (int i = 0; i < 20; ++i) {
        LatticeVector g = random_lattice(rng, 2, 10);
        if (g.is_zero()) continue;
        mpq_class x(num(rng), 10000);
        x.canonicalize();
        DenjoyPoint gx = a.act(g, real.realize_inverse(x));
        mpq_class x2 = real.realize(gx).midpoint();
        Interval mu = measure_arc_geometric(real, x, x2);
        Interval rho = a.rho().enclose(rotation_number(a, g), 96);
        EXPECT_TRUE(mu.widen(mpq_class(1, mpz_class(1) << 64)).overlaps(rho)) << i;
    }
}

TEST(Trace, Examples) {
    DenjoyAction a = denjoy2();
    Real one = trace(a, CrossedElement::unit(2));
    ASSERT_TRUE(one.is_rational());
    EXPECT_EQ(one.rational(), 1);

    PLFunction f = PLFunction::constant(2, Real(mpq_class(3, 4)));
    Real off = trace(a, CrossedElement::monomial(f, LatticeVector{1, 0}));
    ASSERT_TRUE(off.is_rational());
    EXPECT_EQ(off.rational(), 0);

    PLFunction bump = PLFunction::bump(a, GapLabel{0, LatticeVector{2, 2}}, {{mpq_class(1, 2), 5}});
    Real in_gap = trace(a, CrossedElement::monomial(bump, LatticeVector{0, 0}));
    ASSERT_TRUE(in_gap.is_rational());
    EXPECT_EQ(in_gap.rational(), 0);

    // hat of height 1 at gamma_1 on [0, 1): integral 1/2
    PLFunction hat = PLFunction::from_knots(a, {{OrbitForm(2), Real(0)}, {OrbitForm::parse("g1", 2), Real(1)}});
    Real h = trace(a, CrossedElement::monomial(hat, LatticeVector{0, 0}));
    EXPECT_TRUE(h.enclose(128).widen(kTiny).contains(mpq_class(1, 2)));
}

// Oracle: midpoint-rule integration of the knot data in double precision.
TEST(Trace, MatchesNumericIntegration) {
    DenjoyAction a = denjoy2();
    const double g1 = std::sqrt(2.0) - 1, g2 = std::sqrt(3.0) - 1;
    std::mt19937_64 rng(41);
    for (int i = 0; i < 15; ++i) {
        PLFunction f = random_cantor_function(rng, a);
        std::vector<std::pair<double, double>> pts;
        for (const auto& k : f.knots())
            pts.emplace_back(k.y.constant().get_d() + k.y.coeffs()[0] * g1 + k.y.coeffs()[1] * g2,
                             k.value.enclose(64).mid_double());
        auto eval = [&](double y) {
            const std::size_t n = pts.size();
            if (n == 1) return pts[0].second;
            for (std::size_t j = 0; j < n; ++j) {
                double lo = pts[j].first, hi = j + 1 < n ? pts[j + 1].first : pts[0].first + 1;
                double yy = y < lo ? y + 1 : y;
                if (yy >= lo && yy <= hi) return pts[j].second + (pts[(j + 1) % n].second - pts[j].second) * (yy - lo) / (hi - lo);
            }
            return 0.0;
        };
        const int N = 200000;
        double s = 0;
        for (int j = 0; j < N; ++j) s += eval((j + 0.5) / N);
        s /= N;
        EXPECT_NEAR(integrate(a, f).enclose(64).mid_double(), s, 1e-6) << i;
    }
}

TEST(Trace, IsTracial) {
    DenjoyAction a = denjoy2();
    std::mt19937_64 rng(53);
    for (int i = 0; i < 15; ++i) {
        CrossedElement x = random_element(rng, a, 2, false), y = random_element(rng, a, 2, false);
        Real ab = trace_product(a, x, y), ba = trace_product(a, y, x);
        EXPECT_TRUE(encloses_zero(ab - ba, 128)) << i;
    }
    CrossedElement x = random_element(rng, a, 3, false);
    Real tx = trace(a, x), t1x = trace_product(a, CrossedElement::unit(2), x);
    EXPECT_TRUE(encloses_zero(tx - t1x, 128));
}

TEST(Trace, PositiveOnSquares) {
    DenjoyAction a = denjoy2();
    std::mt19937_64 rng(59);
    for (int i = 0; i < 20; ++i) {
        CrossedElement x = random_element(rng, a, 2, false);
        Real sq = trace_of_square(a, x);
        EXPECT_GE(sq.enclose(128).lower(), -mpq_class(1, mpz_class(1) << 128));
        EXPECT_TRUE(encloses_zero(sq - trace_product(a, x.adjoint(a), x), 128));
    }
}

TEST(Trace, AdjointIsInvolutive) {
    DenjoyAction a = denjoy2();
    std::mt19937_64 rng(61);
    CrossedElement x = random_element(rng, a, 3, false);
    CrossedElement xx = x.adjoint(a).adjoint(a);
    ASSERT_EQ(xx.terms().size(), x.terms().size());
    for (const auto& [g, f] : x.terms()) {
        const PLFunction* h = xx.coefficient(g);
        ASSERT_NE(h, nullptr);
        ASSERT_EQ(h->knots().size(), f.knots().size());
        for (std::size_t i = 0; i < f.knots().size(); ++i) EXPECT_EQ(h->knots()[i].y, f.knots()[i].y);
    }
}

TEST(TraceIdeal, Membership) {
    DenjoyAction a = denjoy2();
    std::mt19937_64 rng(67);
    for (int i = 0; i < 20; ++i)
        EXPECT_EQ(in_trace_ideal(a, random_element(rng, a, 3, true)).answer, Membership::Yes);
    EXPECT_EQ(in_trace_ideal(a, CrossedElement()).answer, Membership::Yes);
    TraceIdealResult unit = in_trace_ideal(a, CrossedElement::unit(2));
    EXPECT_EQ(unit.answer, Membership::No);
    EXPECT_EQ(unit.trace_of_square.rational(), 1);
    EXPECT_EQ(in_trace_ideal(a, random_element(rng, a, 2, false)).answer, Membership::No);
    DenjoyAction m(RotationVector({Real::parse("sqrt(2)-1")}));
    EXPECT_THROW(in_trace_ideal(m, CrossedElement::unit(1)), DomainError);
}

TEST(PLFunction, EvaluationAndTranslation) {
    DenjoyAction a = denjoy2();
    GapLabel I{0, LatticeVector{1, 0}};
    PLFunction f = PLFunction::sum(
        a, PLFunction::from_knots(a, {{OrbitForm(2), Real(0)}, {OrbitForm::rational(2, mpq_class(1, 2)), Real(2)}}),
        PLFunction::bump(a, I, {{mpq_class(1, 2), 3}}));
    // I sits over gamma_1 = 0.414..., where F = 4 gamma_1
    Real at = f.evaluate(a, a.gap_point(I, mpq_class(1, 4)));
    Interval expect = Real::parse("4*(sqrt(2)-1)+3/2").enclose(128);
    EXPECT_TRUE(at.enclose(128).widen(kTiny).contains(expect));
    // f o g^{-1} at g p equals f at p
    LatticeVector g{-2, 5};
    PLFunction t = f.translated(a, g);
    DenjoyPoint p = a.gap_point(I, mpq_class(1, 4));
    EXPECT_TRUE(encloses_zero(t.evaluate(a, a.act(g, p)) - f.evaluate(a, p), 128));
    EXPECT_THROW(PLFunction::bump(a, I, {{mpq_class(0), 1}}), DomainError);
}
