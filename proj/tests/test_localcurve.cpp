#include "generators.hpp"

#include <gtest/gtest.h>

using namespace cy4;

namespace
{

const Poly l0 = Poly::variable(0), l1 = Poly::variable(1), l2 = Poly::variable(2), l3 = Poly::variable(3);

Poly lin(long a, long b)
{
    return l0 * Rational(a) + l3 * Rational(b);
}

// One summand of the closed double product/sum, transcribed term by term.
RatFun closed_form_term(const Composition &c)
{
    const int k = c.k(), d = c.d();
    Poly num = Poly::constant(((k + 1) * (d + 1)) % 2 == 0 ? 1 : -1);
    Poly den = pow(l0, static_cast<unsigned>(k * (k + 1) / 2)) * pow(l3, static_cast<unsigned>(d));
    for (int j = 1; j <= k; ++j) {
        den *= Rational(factorial(static_cast<unsigned>(j)));
    }
    for (int di : c.parts) {
        den *= Rational(factorial(static_cast<unsigned>(di)));
    }
    for (int i = 0; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            num *= lin(j - i, c.parts[i] - c.parts[j]);
        }
    }
    for (int i = 0; i <= k; ++i) {
        for (int a = 1; a <= c.parts[i]; ++a) {
            for (int b = 1; b <= k - i; ++b) {
                den *= lin(b, a);
            }
            for (int b = 1; b <= i; ++b) {
                den *= lin(-b, a);
            }
        }
    }
    return RatFun(num, den);
}

RatFun d1_expected(const SplitGeometry &g)
{
    // l1^-chi(L1) l2^-chi(L2) l3^-chi(L3), chi(Li) = li + 1.
    Poly num = Poly::constant(1), den = Poly::constant(1);
    const auto l = g.degrees();
    const std::array<Poly, 3> vars{l1, l2, l3};
    for (std::size_t i = 0; i < 3; ++i) {
        const int chi = l[i] + 1;
        if (chi > 0) {
            den *= pow(vars[i], static_cast<unsigned>(chi));
        } else {
            num *= pow(vars[i], static_cast<unsigned>(-chi));
        }
    }
    return RatFun(num, den);
}

const std::vector<SplitGeometry> d1_geometries{{-1, -1, 0}, {0, -1, -1}, {1, -1, -2}, {3, -2, -3}};

} // namespace

TEST(FixedPoints, CountIsBinomial)
{
    for (int d = 1; d <= 6; ++d) {
        for (int k = 0; k <= 5; ++k) {
            const auto pts = enumerate_fixed_points(d * (k + 1), d);
            EXPECT_EQ(Integer(static_cast<long>(pts.size())), binomial(static_cast<unsigned>(d + k), static_cast<unsigned>(k)));
            for (const auto &c : pts) {
                EXPECT_EQ(c.d(), d);
                EXPECT_EQ(c.k(), k);
            }
        }
    }
    EXPECT_TRUE(enumerate_fixed_points(5, 2).empty());
    EXPECT_TRUE(enumerate_fixed_points(1, 2).empty());
    EXPECT_TRUE(enumerate_fixed_points(-2, 1).empty());
    EXPECT_THROW(enumerate_fixed_points(2, 0), std::invalid_argument);
}

TEST(HalfObstruction, DegreeOneExamples)
{
    const SplitGeometry g{};
    EXPECT_EQ(half_obstruction_d1({0, 0}, g), parse_kclass("-t3"));
    EXPECT_EQ(half_obstruction_d1({1, 0}, g), parse_kclass("-t3 - t0"));
    EXPECT_EQ(half_obstruction_d1({1, 2}, g), parse_kclass("-t3 - t0 - t0^-1 - t0^-2"));
    EXPECT_EQ(half_obstruction_d1({0, 0}, SplitGeometry{3, -2, -3}), parse_kclass("-4*t1 + t2 + 2*t3"));
    EXPECT_THROW(half_obstruction_d1({0, 0}, SplitGeometry{0, 0, 0}), GeometryError);
}

TEST(HalfObstruction, GeneralExamples)
{
    EXPECT_EQ(half_obstruction_general({{1}}), parse_kclass("-t3"));
    EXPECT_EQ(half_obstruction_general({{1, 1}}), parse_kclass("t0 - 2*t3 - t0^-1 - t0*t3 - t0*t3^-1"));
    // c = (d): -(1 + t3^-1 + ... + t3^-(d-1)) + 1 - t3^d.
    EXPECT_EQ(half_obstruction_general({{3}}), parse_kclass("-t3^-1 - t3^-2 - t3^3"));
}

TEST(HalfObstruction, GeneralMatchesDegreeOneFamily)
{
    for (int n = 1; n <= 8; ++n) {
        for (const auto &p : enumerate_d1_fixed_points(n)) {
            Composition c{std::vector<int>(static_cast<std::size_t>(n), 0)};
            c.parts[static_cast<std::size_t>(p.a)] = 1;
            EXPECT_EQ(half_obstruction_general(c), half_obstruction_d1(p, SplitGeometry{}));
        }
    }
}

TEST(HalfObstruction, DoublesToAdjunctionClass)
{
    for (int d = 1; d <= 4; ++d) {
        for (int k = 0; k <= 4; ++k) {
            for (const auto &c : enumerate_fixed_points(d * (k + 1), d)) {
                const KClass half = half_obstruction_general(c);
                EXPECT_EQ(half.trivial_multiplicity(), 0);
                EXPECT_TRUE(check_square_root(full_obstruction(fixed_point_sheaf(c), SplitGeometry{}), half));
            }
        }
    }
}

TEST(HalfObstruction, DegreeOneSquareRoots)
{
    // The rank-weighted form doubles correctly exactly when every li is -1 or 0;
    // the t0-equivariant form always does, and agrees with it at l0 = 0 after
    // removing the common base factor.
    for (const auto &g : d1_geometries) {
        const bool small = g.l1 >= -1 && g.l1 <= 0 && g.l2 >= -1 && g.l2 <= 0 && g.l3 >= -1 && g.l3 <= 0;
        for (int n = 1; n <= 5; ++n) {
            for (const auto &p : enumerate_d1_fixed_points(n)) {
                const KClass full = full_obstruction(fixed_point_sheaf(p), g);
                EXPECT_EQ(check_square_root(full, half_obstruction_d1(p, g)), small) << to_string(g);
                EXPECT_TRUE(check_square_root(full, half_obstruction_d1_equivariant(p, g))) << to_string(g);
            }
        }
        const RatFun ratio = euler_class(half_obstruction_d1_equivariant({0, 0}, g)) /
                             euler_class(half_obstruction_d1({0, 0}, g));
        EXPECT_EQ(specialize(ratio, 0, 0), RatFun(Rational(1))) << to_string(g);
    }
}

TEST(Invariant, DegreeOneClosedForm)
{
    for (const auto &g : d1_geometries) {
        EXPECT_EQ(js_invariant_enumerated(1, 1, g).value, d1_expected(g)) << to_string(g);
        for (int n = 2; n <= 12; ++n) {
            EXPECT_TRUE(js_invariant_enumerated(n, 1, g).value.is_zero()) << to_string(g) << " n=" << n;
        }
        // Per point: (-1)^b / (a! b! l0^(n-1)) times the fibre factor.
        const int n = 4;
        const auto res = js_invariant_enumerated(n, 1, g, {1, true});
        const auto pts = enumerate_d1_fixed_points(n);
        ASSERT_EQ(res.contributions.size(), pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Integer den = factorial(static_cast<unsigned>(pts[i].a)) * factorial(static_cast<unsigned>(pts[i].b));
            const RatFun expected = RatFun(Poly::constant(make_rational(pts[i].b % 2 == 0 ? 1 : -1, 1)),
                                           pow(l0, n - 1) * Rational(den)) *
                                    d1_expected(g);
            EXPECT_EQ(res.contributions[i].to_ratfun(), expected);
        }
    }
}

TEST(Invariant, OrientationSignRelatesHalfClassAndClosedForm)
{
    for (int d = 1; d <= 5; ++d) {
        for (int k = 0; k <= 3; ++k) {
            for (const auto &c : enumerate_fixed_points(d * (k + 1), d)) {
                const RatFun e = euler_class(half_obstruction_general(c));
                EXPECT_EQ(e * RatFun(Rational(orientation_sign(c))), closed_form_term(c));
            }
        }
    }
    // Without the sign the sum does not cancel.
    InvariantOptions literal;
    literal.orientation = Orientation::half_class;
    EXPECT_EQ(js_invariant_enumerated(4, 2, {}, literal).value,
              RatFun(Poly::constant(-2), parse_poly("l0^2*l3^2 - l3^4")));
    EXPECT_TRUE(js_invariant_enumerated(4, 2).value.is_zero());
}

TEST(Invariant, ClosedFormEqualsEnumeration)
{
    for (int d = 1; d <= 4; ++d) {
        for (int r = 1; r <= 5; ++r) {
            EXPECT_EQ(js_invariant_closed_form(d * r, d).value, js_invariant_enumerated(d * r, d).value)
                << "n=" << d * r << " d=" << d;
        }
    }
    EXPECT_THROW(js_invariant_closed_form(5, 2), std::invalid_argument);
}

TEST(Invariant, DiagonalValues)
{
    for (int d = 1; d <= 6; ++d) {
        const RatFun v = js_invariant_enumerated(d, d).value;
        const RatFun magnitude(Poly::constant(1), pow(l3, static_cast<unsigned>(d)) * Rational(factorial(d)));
        EXPECT_EQ(v, magnitude * RatFun(Rational(d % 2 == 1 ? 1 : -1))) << "d=" << d;
        EXPECT_EQ(check_conjecture(d, d).status, ConjectureStatus::match);
        EXPECT_EQ(check_conjecture(d, d).orientation_sign, d % 2 == 1 ? 1 : -1);
    }
    EXPECT_EQ(to_string(js_invariant_enumerated(3, 3).value), "(1/6)/(l3^3)");
}

TEST(Invariant, Conventions)
{
    EXPECT_EQ(js_invariant_enumerated(0, 0).value, RatFun(Rational(1)));
    const auto r = js_invariant_enumerated(5, 2);
    EXPECT_TRUE(r.value.is_zero());
    EXPECT_EQ(r.fixed_point_count, 0U);
    EXPECT_TRUE(js_invariant_enumerated(-3, 1).value.is_zero());
    EXPECT_THROW(js_invariant_enumerated(2, 0), std::invalid_argument);
    EXPECT_THROW(js_invariant_enumerated(2, 2, SplitGeometry{0, -1, -1}), GeometryError);
}

TEST(Invariant, Homogeneity)
{
    for (int d = 1; d <= 3; ++d) {
        for (int r = 1; r <= 4; ++r) {
            const int n = d * r;
            const auto res = js_invariant_enumerated(n, d, {}, {1, true});
            EXPECT_TRUE(is_homogeneous_of_degree(res.value, -n));
            for (const auto &c : res.contributions) {
                EXPECT_EQ(c.degree(), -n);
                EXPECT_TRUE(is_homogeneous_of_degree(c.to_ratfun(), -n));
            }
        }
    }
    for (const auto &g : d1_geometries) {
        EXPECT_TRUE(is_homogeneous_of_degree(js_invariant_enumerated(1, 1, g).value, -1));
    }
}

TEST(Invariant, ParallelSummationIsDeterministic)
{
    for (const auto &[n, d] : std::vector<std::pair<int, int>>{{6, 2}, {12, 3}, {12, 4}, {20, 1}}) {
        const std::string serial = to_string(js_invariant_enumerated(n, d, {}, {1}).value);
        EXPECT_EQ(to_string(js_invariant_enumerated(n, d, {}, {4}).value), serial);
        EXPECT_EQ(to_string(js_invariant_enumerated(n, d, {}, {8}).value), serial);
    }
}

TEST(Conjecture, SmallSweep)
{
    const ConjectureReport rep = verify_conjecture(3, 6);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.entries.size(), 18U);
    for (const auto &e : rep.entries) {
        EXPECT_EQ(e.status, ConjectureStatus::match);
    }
    EXPECT_THROW(verify_conjecture(0, 3), std::invalid_argument);
}

TEST(Residues, VanishForSmallD)
{
    for (int d = 1; d <= 8; ++d) {
        const ResidueReport rep = residue_vanishing_check(d);
        EXPECT_TRUE(rep.ok()) << "d=" << d;
        EXPECT_EQ(rep.residues.size(), static_cast<std::size_t>(2 * d + 1));
    }
}

TEST(Residues, SummandsAreTheTwoColumnContributions)
{
    for (int d = 1; d <= 6; ++d) {
        const auto res = js_invariant_enumerated(2 * d, d, {}, {1, true});
        const auto pts = enumerate_fixed_points(2 * d, d);
        ASSERT_EQ(res.contributions.size(), pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const RatFun expected =
                phi_summand(pts[i].parts[0], pts[i].parts[1]) / RatFun(pow(l3, static_cast<unsigned>(d)));
            EXPECT_EQ(res.contributions[i].to_ratfun(), expected);
        }
    }
}

TEST(Residues, ClosedFormResiduesOfSummands)
{
    // Residue of each summand at l0 = m computed from its factored form.
    for (int d = 1; d <= 6; ++d) {
        for (int i = 0; i <= d; ++i) {
            const RatFun s = specialize(phi_summand(d - i, i), 3, 1);
            for (int m = -d; m <= d; ++m) {
                const RatFun r = residue_at(s, 0, m);
                EXPECT_EQ(r, RatFun(phi_summand_residue_closed_form(d, i, m))) << d << " " << i << " " << m;
            }
        }
    }
}
