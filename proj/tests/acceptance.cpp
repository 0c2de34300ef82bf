// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "denjoy/ergodic.hpp"
#include "denjoy/ideals.hpp"
#include "denjoy/ktheory.hpp"
#include "denjoy/model/orbits.hpp"
#include "fixtures.hpp"
#include "pfaffian_oracle.hpp"

using namespace denjoy;
using denjoy::testing::denjoy2;

namespace {

struct Check {
    std::ostringstream why;
    bool ok = true;
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) why << what;
        ok = ok && cond;
    }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0) {
        std::ostringstream lim;
        lim << "took " << s << " s, limit " << limit_s << " s";
        c.expect(s <= limit_s, lim.str());
    }
    std::printf("%s %2d %s (%.3f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, name.c_str(), s, c.ok ? "" : ": ",
                c.why.str().c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
}

LatticeVector random_lattice(std::mt19937_64& rng, std::size_t d, int r) {
    std::uniform_int_distribution<std::int64_t> u(-r, r);
    LatticeVector g(d);
    for (std::size_t i = 0; i < d; ++i) g[i] = u(rng);
    return g;
}

/// Random element of l1 norm at most r.
LatticeVector random_l1(std::mt19937_64& rng, std::size_t d, int r) {
    while (true) {
        LatticeVector g = random_lattice(rng, d, r);
        std::int64_t n = 0;
        for (std::size_t i = 0; i < d; ++i) n += g[i] < 0 ? -g[i] : g[i];
        if (n <= r) return g;
    }
}

mpq_class canonical(long p, long q) {
    mpq_class r(p, q);
    r.canonicalize();
    return r;
}

DenjoyPoint random_point(std::mt19937_64& rng, const DenjoyAction& a) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<long> num(1, 9999);
    switch (kind(rng)) {
    case 0: return a.gap_point(GapLabel{0, random_lattice(rng, a.dim(), 10)}, canonical(num(rng), 10000));
    case 1: return a.gap_point(GapLabel{0, random_lattice(rng, a.dim(), 10)}, num(rng) % 2);
    default: return a.cantor_point(OrbitForm(canonical(num(rng), 10000), random_lattice(rng, a.dim(), 5)));
    }
}

CrossedElement random_gap_element(std::mt19937_64& rng, const DenjoyAction& a) {
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    CrossedElement x;
    for (int i = count(rng); i > 0; --i) {
        PLFunction f;
        for (int j = count(rng); j > 0; --j) {
            PLFunction::Bump b{{mpq_class(1, 4), canonical(num(rng), den(rng))},
                               {mpq_class(2, 3), canonical(num(rng), den(rng))}};
            f = PLFunction::sum(a, f, PLFunction::bump(a, GapLabel{0, random_lattice(rng, a.dim(), 6)}, b));
        }
        x = CrossedElement::sum(a, x, CrossedElement::monomial(f, random_lattice(rng, a.dim(), 3)));
    }
    return x;
}

IntervalSet random_set(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(0, 3), pt(0, 12), coin(0, 1);
    std::vector<RationalInterval> parts;
    for (int i = count(rng); i > 0; --i) {
        int a = pt(rng), b = pt(rng);
        if (a > b) std::swap(a, b);
        if (a == b) {
            if (a != 0 && a != 12) parts.push_back(RationalInterval::point(canonical(a, 12)));
            continue;
        }
        parts.push_back({canonical(a, 12), canonical(b, 12), a > 0 && coin(rng), b < 12 && coin(rng)});
    }
    return IntervalSet(parts);
}

PrimSubset random_subset(std::mt19937_64& rng, const PrimSpace& space, std::size_t k) {
    std::uniform_int_distribution<int> coin(0, 3);
    PrimSubset s;
    for (std::size_t i = 1; i <= k; ++i) s.parts[i] = random_set(rng);
    s.contains_J = coin(rng) == 0;
    return space.canonical(s);
}

} // namespace

int main() {
    std::mt19937_64 rng(20261016);

    criterion(1, "k_groups ranks and labels, d = 1..10", 1.0, [](Check& c) {
        for (std::size_t d = 1; d <= 10; ++d) {
            KTheory kt = k_groups(d);
            c.expect(kt.k0.rank == (std::size_t{1} << d) && kt.k1.rank == (std::size_t{1} << d),
                     "rank at d=" + std::to_string(d));
            // oracle: even and odd subsets of {1..d+1}
            std::set<std::uint64_t> even, odd, e, o;
            for (std::uint64_t b = 0; b < (std::uint64_t{1} << (d + 1)); ++b)
                (__builtin_popcountll(b) % 2 ? odd : even).insert(b);
            for (const auto& l : kt.k0.basis_labels) e.insert(l.bits());
            for (const auto& l : kt.k1.basis_labels) o.insert(l.bits());
            c.expect(e == even && o == odd, "labels at d=" + std::to_string(d));
        }
    });

    criterion(2, "d = 2 worked example, 30 digits", 0, [](Check& c) {
        TorusTheta theta(denjoy::testing::sqrt23());
        std::vector<std::string> formal, decimal;
        for (const auto& l : k_groups(2).k0.basis_labels) {
            TracePairing tp = trace_pairing(theta, {{l, 1}});
            formal.push_back(tp.formal_string());
            decimal.push_back(tp.decimal.value_or("?"));
        }
        c.expect(formal == std::vector<std::string>{"1", "g1", "g2", "0"}, "formal values");
        c.expect(decimal == std::vector<std::string>{"1.000000000000000000000000000000",
                                                     "0.414213562373095048801688724210",
                                                     "0.732050807568877293527446341506",
                                                     "0.000000000000000000000000000000"},
                 "decimal values");
    });

    criterion(3, "Pfaffian vs permutation sum and pf^2 = det, n = 2,4,6,8", 30.0, [&rng](Check& c) {
        for (std::size_t n : {2, 4, 6, 8})
            for (int i = 0; i < 100; ++i) {
                auto m = denjoy::testing::random_skew(rng, n);
                mpq_class pf = pfaffian(SkewMatrix<mpq_class>::from_rows(m, mpq_class(0)));
                c.expect(pf == denjoy::testing::pfaffian_by_permutations(m), "permutation sum at n=" + std::to_string(n));
                c.expect(pf * pf == denjoy::testing::determinant(m), "determinant at n=" + std::to_string(n));
            }
    });

    criterion(4, "injectivity certificate |n_i| <= 1000 within 256 bits", 60.0, [](Check& c) {
        RotationVector g = denjoy::testing::sqrt23();
        IndependenceCertificate cert = certify_injectivity(g, 1000, Precision{64, 256});
        c.expect(cert.verified, "not verified");
        c.expect(cert.precision_bits <= 256, "needed more than 256 bits");
        c.expect(cert.columns == 2001u * 2001u, "column count");
        c.expect(is_zero_pairing(g, {0, 0, 0}) == ZeroTest::Zero, "zero vector");
    });

    criterion(5, "measure of (x, gx] equals rotation number", 0, [&rng](Check& c) {
        DenjoyAction a = denjoy2();
        for (int i = 0; i < 100; ++i) {
            DenjoyPoint x = random_point(rng, a);
            LatticeVector g = random_l1(rng, 2, 20);
            c.expect(measure_arc(a, DenjoyArc{x, a.act(g, x)}) == rotation_number(a, g), "exact case " + std::to_string(i));
        }
        Realization real(a, 128);
        const mpq_class tol(1, mpz_class(1) << 64);
        std::uniform_int_distribution<long> num(0, 9999);
        for (int i = 0; i < 100; ++i) {
            LatticeVector g = random_l1(rng, 2, 20);
            mpq_class x = canonical(num(rng), 10000);
            mpq_class gx = real.realize(a.act(g, real.realize_inverse(x))).midpoint();
            Interval mu = measure_arc_geometric(real, x, gx);
            Interval rho = a.rho().enclose(rotation_number(a, g), 128);
            c.expect(mu.widen(tol).overlaps(rho), "geometric case " + std::to_string(i));
        }
    });

    criterion(6, "10^4-iterate estimate encloses gamma_i, width <= 2e-4", 60.0, [](Check& c) {
        DenjoyAction a = denjoy2();
        for (std::size_t i = 0; i < 2; ++i) {
            LatticeVector e(2);
            e[i] = 1;
            LiftIterator it(a, e, 0, 128);
            RotationEstimate est = rotation_number_estimate(it, 10000);
            c.expect(est.bracket.contains(a.rho().gamma()[i].enclose(128)), "encloses gamma_" + std::to_string(i + 1));
            c.expect(est.bracket.upper() - est.bracket.lower() <= mpq_class(2, 10000), "width for gamma_" + std::to_string(i + 1));
        }
    });

    criterion(7, "group_K size bound and single gap", 0, [&rng](Check& c) {
        DenjoyAction a = denjoy2();
        std::uniform_int_distribution<int> size(1, 5);
        for (int t = 0; t < 50; ++t) {
            std::set<LatticeVector> labels;
            const std::size_t m = size(rng);
            while (labels.size() < m) labels.insert(random_lattice(rng, 2, 4));
            std::vector<GapLabel> K;
            for (const auto& g : labels) K.push_back(GapLabel{0, g});
            auto gk = group_K(a, K);
            c.expect(gk.size() <= m * m, "size bound");
            // oracle: differences of labels on the single orbit
            std::set<LatticeVector> diffs;
            for (const auto& p : labels)
                for (const auto& q : labels) diffs.insert(p - q);
            c.expect(std::set<LatticeVector>(gk.begin(), gk.end()) == diffs, "differences");
            auto one = group_K(a, {K.front()});
            c.expect(one.size() == 1 && one.front().is_zero(), "single gap");
        }
    });

    criterion(8, "homomorphism, action and equivariance laws", 0, [&rng](Check& c) {
        DenjoyAction a = denjoy2();
        const auto& rho = a.rho();
        for (int i = 0; i < 500; ++i) {
            LatticeVector g = random_lattice(rng, 2, 50), h = random_lattice(rng, 2, 50);
            c.expect(rotation_number(a, g + h) == rho.normalize(rotation_number(a, g) + rotation_number(a, h)),
                     "homomorphism " + std::to_string(i));
        }
        for (int i = 0; i < 500; ++i) {
            DenjoyPoint p = random_point(rng, a);
            LatticeVector g = random_lattice(rng, 2, 50), h = random_lattice(rng, 2, 50);
            c.expect(a.act(g, a.act(h, p)) == a.act(g + h, p) && a.act(LatticeVector{0, 0}, p) == p,
                     "action " + std::to_string(i));
        }
        for (int i = 0; i < 500; ++i) {
            DenjoyPoint p = random_point(rng, a);
            LatticeVector g = random_lattice(rng, 2, 50);
            c.expect(a.semiconjugacy(a.act(g, p)) == rho.normalize(a.semiconjugacy(p) + rho.rho(g)),
                     "equivariance " + std::to_string(i));
        }
    });

    criterion(9, "trace-ideal membership", 0, [&rng](Check& c) {
        DenjoyAction a = denjoy2();
        for (int i = 0; i < 50; ++i)
            c.expect(in_trace_ideal(a, random_gap_element(rng, a)).answer == Membership::Yes, "gap element " + std::to_string(i));
        TraceIdealResult unit = in_trace_ideal(a, CrossedElement::unit(2));
        c.expect(unit.answer == Membership::No, "unit answer");
        Real t = trace(a, CrossedElement::unit(2));
        c.expect(t.is_rational() && t.rational() == 1, "trace of unit");
    });

    criterion(10, "Prim closure, J absorption and ideal round trip", 0, [&rng](Check& c) {
        for (std::size_t k : {1, 2, 3}) {
            PrimSpace space(k);
            for (int t = 0; t < 200; ++t) {
                PrimSubset s = random_subset(rng, space, k);
                PrimSubset cl = space.closure(s);
                c.expect(space.closure(cl) == cl, "idempotence");
                c.expect(space.is_empty(s) || cl.contains_J, "J in closure");
                c.expect(space.closure(space.unite(s, space.J())) == space.unite(cl, space.J()), "J absorption");
                PrimSubset u = space.interior(s);
                IdealDescriptor d = ideal_for_open(space, u);
                c.expect(open_set_of(d) == u, "open set round trip");
                c.expect(ideal_for_open(space, open_set_of(d)).name == d.name, "ideal round trip");
            }
        }
    });

    std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
