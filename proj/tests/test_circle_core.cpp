#include <gtest/gtest.h>

#include <random>

#include "denjoy/circle/circle.hpp"

using namespace denjoy;

TEST(Normalize, ExactRationals) {
    EXPECT_EQ(normalize(mpq_class(5, 4)).value().rational(), mpq_class(1, 4));
    EXPECT_EQ(normalize(mpq_class(-1, 10)).value().rational(), mpq_class(9, 10));
    EXPECT_EQ(normalize(mpq_class(3)).value().rational(), mpq_class(0));
}

TEST(Normalize, DoubleInputIsExactBinaryValue) {
    CirclePoint p = normalize(-0.1);
    ASSERT_TRUE(p.is_exact());
    EXPECT_NEAR(p.value().rational().get_d(), 0.9, 1e-15);
    EXPECT_THROW(normalize(std::numeric_limits<double>::infinity()), DomainError);
    EXPECT_THROW(normalize(std::nan("")), DomainError);
}

TEST(Normalize, IrrationalKeepsExpression) {
    Real x = Real::parse("sqrt(2)+3");
    CirclePoint p = normalize(x);
    EXPECT_FALSE(p.is_exact());
    Interval e = p.enclose(128);
    EXPECT_TRUE(e.certainly_greater(mpq_class(41421356, 100000000)));
    EXPECT_TRUE(e.certainly_less(mpq_class(41421357, 100000000)));
}

TEST(Normalize, IntegerShiftInvariance) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-100000, 100000), den(1, 997), shift(-50, 50);
    for (int i = 0; i < 200; ++i) {
        mpq_class x(num(rng), den(rng));
        x.canonicalize();
        long n = shift(rng);
        EXPECT_EQ(normalize(x).value().rational(), normalize(mpq_class(x + n)).value().rational());
    }
    Real s = Real::parse("sqrt(5)/7");
    for (long n : {-3L, 0L, 4L}) {
        Interval a = normalize(s).enclose(200), b = normalize(s + Real(n)).enclose(200);
        EXPECT_TRUE(a.overlaps(b));
        EXPECT_TRUE(b.width_at_most_pow2(190));
    }
}

TEST(ArcLength, Examples) {
    auto arc = [](mpq_class a, mpq_class b) { return Arc{normalize(a), normalize(b)}; };
    EXPECT_EQ(arc_length(arc(mpq_class(1, 5), mpq_class(7, 10))).rational(), mpq_class(1, 2));
    EXPECT_EQ(arc_length(arc(mpq_class(9, 10), mpq_class(1, 10))).rational(), mpq_class(1, 5));
    CirclePoint x = normalize(Real::parse("sqrt(3)-1"));
    EXPECT_EQ(arc_length(Arc{x, x}).rational(), mpq_class(0));
}

TEST(ArcLength, ComplementarySumsToOne) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(0, 9999);
    for (int i = 0; i < 200; ++i) {
        mpq_class a(num(rng), 10000), b(num(rng), 10000);
        a.canonicalize();
        b.canonicalize();
        if (a == b) continue;
        Real l1 = arc_length(Arc{normalize(a), normalize(b)});
        Real l2 = arc_length(Arc{normalize(b), normalize(a)});
        EXPECT_EQ(l1.rational() + l2.rational(), 1);
    }
    CirclePoint p = normalize(Real::parse("sqrt(2)/2")), q = normalize(Real::parse("sqrt(3)/5"));
    Interval s = arc_length(Arc{p, q}).enclose(128) + arc_length(Arc{q, p}).enclose(128);
    EXPECT_TRUE(s.contains(mpq_class(1)));
    EXPECT_TRUE(s.width_at_most_pow2(120));
}

TEST(Compare, DisjointIntervals) {
    Interval a = Interval::hull(mpq_class(1, 10), mpq_class(2, 10), 64);
    Interval b = Interval::hull(mpq_class(3, 10), mpq_class(4, 10), 64);
    EXPECT_EQ(compare(a, b), Ordering::Less);
    EXPECT_EQ(compare(b, a), Ordering::Greater);
}

TEST(Compare, SqrtTwoMinusOneAt64Bits) {
    Real x = Real::parse("sqrt(2)-1");
    Real y = Real::parse("0.41421356237");
    EXPECT_EQ(compare(x, y, Precision{64, 64}), Ordering::Greater);
}

TEST(Compare, SameHandleNeverSeparates) {
    Real x = Real::parse("sqrt(2)-1");
    EXPECT_EQ(compare(x, x, Precision{64, 512}), Ordering::Undecided);
    // equal values built independently do not separate either
    EXPECT_EQ(compare(x, Real::parse("sqrt(8)/2-1"), Precision{64, 512}), Ordering::Undecided);
}

TEST(Real, RefinementIsNested) {
    for (const char* text : {"sqrt(2)-1", "sqrt(3)*sqrt(5)/7", "1/(sqrt(2)+sqrt(3))", "-sqrt(sqrt(2)+1)/3"}) {
        Real e = Real::parse(text);
        Interval prev = e.enclose(16);
        for (int bits = 17; bits <= 600; bits += 37) {
            Interval cur = e.enclose(bits);
            EXPECT_TRUE(prev.contains(cur)) << text << " at " << bits;
            prev = cur;
        }
    }
}

TEST(Real, EnclosureWidthFollowsPrecision) {
    Real e = Real::parse("sqrt(7)/3+1/5");
    for (int bits : {64, 128, 256, 1024}) EXPECT_TRUE(e.enclose(bits).width_at_most_pow2(bits)) << bits;
}

TEST(Real, CanonicalPrintingRoundTrips) {
    for (const char* text : {"sqrt(2)-1", "1/3", "-1/3", "2*sqrt(3)-(-1/2)", "sqrt(2)*(1+sqrt(5))/2",
                             "-(sqrt(2)*3)", "0.125+sqrt(11)", "(1-sqrt(2))-(3-sqrt(3))", "sqrt(2)*(-2)"}) {
        std::string canon = Real::parse(text).to_string();
        EXPECT_EQ(Real::parse(canon).to_string(), canon) << text;
        Interval a = Real::parse(text).enclose(128), b = Real::parse(canon).enclose(128);
        EXPECT_TRUE(a.overlaps(b)) << text;
    }
    EXPECT_EQ(Real::parse("0.25").to_string(), "1/4");
    EXPECT_EQ(Real::parse("sqrt(16/9)").to_string(), "4/3");
}

TEST(Real, ParseErrorsArePositioned) {
    try {
        Real::parse("sqrt(2");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.column(), 7u);
    }
    EXPECT_THROW(Real::parse("1/0"), ParseError);
    EXPECT_THROW(Real::parse("sqrt(-2)"), ParseError);
    EXPECT_THROW(Real::parse(""), ParseError);
    EXPECT_THROW(Real::parse("2 3"), ParseError);
}

TEST(Interval, DecimalRenderingIsCertified) {
    Interval e = Real::parse("sqrt(2)-1").enclose(160);
    auto s = e.decimal(30);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(*s, "0.414213562373095048801688724210");
    EXPECT_FALSE(Real::parse("sqrt(2)-1").enclose(40).decimal(30).has_value());
}
