#include <grhopf/hc.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace grhopf;
using namespace grhopf::builtin;

TEST(HarishChandra, AxiomSuites)
{
    const std::vector<std::pair<lie_algebra, std::vector<std::string>>> cases{
        {heisenberg_graded(), {"z"}},
        {sl2_graded(), {"h"}},
        {sl2_graded(), {"h", "e"}},
        {heisenberg_graded(), {}},
    };
    for (const auto& [g, h] : cases) {
        hc_pair P(g, h, 2);
        auto rep = run_axiom_suite(make_hc_dossier(P));
        EXPECT_TRUE(rep.pass()) << rep.to_text();
    }
}

TEST(HarishChandra, OrderThree)
{
    hc_pair P(heisenberg_graded(), {"z"}, 3);
    EXPECT_EQ(P.basis(3).size(), 20u);
    EXPECT_TRUE(run_axiom_suite(make_hc_dossier(P)).pass());
}

TEST(HarishChandra, Equivariance)
{
    hc_pair P(sl2_graded(), {"h"}, 3);
    for (const auto& [name, f] : P.basis(3)) {
        EXPECT_TRUE(P.equivariance_defects(P.coproduct(f)).empty()) << name;
        EXPECT_TRUE(P.equivariance_defects(P.table(P.antipode(f))).empty()) << name;
    }
}

TEST(HarishChandra, AntipodeIsAnInvolution)
{
    // the algebra is commutative, so S^2 = id
    hc_pair P(sl2_graded(), {"h", "e"}, 2);
    for (const auto& [name, f] : P.basis(2)) EXPECT_EQ(P.antipode(P.antipode(f)), f) << name;
}

TEST(HarishChandra, UnitAndCounit)
{
    hc_pair P(heisenberg_graded(), {"z"}, 2);
    auto one = P.unit();
    for (const auto& [name, f] : P.basis(2)) {
        EXPECT_EQ(P.product(one, f), f) << name;
        EXPECT_EQ(P.product(f, one), f) << name;
    }
    EXPECT_EQ(P.counit_value(one).constant_term(), rational(1));
}

TEST(HarishChandra, GroupLawInverse)
{
    // Heisenberg centre: the inverse of w is -w
    hc_pair P(heisenberg_graded(), {"z"}, 3);
    ASSERT_EQ(P.inverse().size(), 1u);
    EXPECT_EQ(P.inverse()[0].to_string(), "-w_z");
}

TEST(HarishChandra, AdjointOfTheCartan)
{
    // Ad_{exp(t h)}(e) = (sum_k t^k / k!) e
    const auto g = sl2_graded();
    auto R = make_ring({{"t", 0, 0, true}});
    const truncation tr{4, unbounded};
    const auto t = series::var(R, tr, "t");
    lie_vec<series> p, x;
    p.add(g.index_of("h"), t);
    x.add(g.index_of("e"), series::constant(R, tr, rational(1)));
    auto ad = group_adjoint(g, p, x, 10);
    series expect = series::constant(R, tr, rational(1));
    series power = expect;
    for (unsigned k = 1; k <= 4; ++k) {
        power = power * t;
        expect += (rational(1) / factorial(k)) * power;
    }
    ASSERT_EQ(ad.size(), 1u);
    EXPECT_EQ(*ad.find(g.index_of("e")), expect);
}

TEST(HarishChandra, InputErrors)
{
    EXPECT_THROW(hc_pair(sl2_graded(), {"e", "f"}, 2), input_error);
    EXPECT_THROW(hc_pair(sl2_graded(), {"q"}, 2), input_error);
    EXPECT_THROW(hc_pair(sl2_graded(), {"h"}, 0), input_error);
    EXPECT_THROW(hc_pair(heisenberg_odd(1), {"theta", "z"}, 2), input_error);
}

TEST(HarishChandra, CorruptedAntipodeIsCaught)
{
    hc_pair P(sl2_graded(), {"h"}, 2);
    auto d = make_hc_dossier(P);
    auto honest = d.antipode;
    d.antipode = [honest, &P](const hc_functional& f) {
        auto s = honest(f);
        return f == P.unit() ? s : rational(2) * s;
    };
    auto rep = run_axiom_suite(d);
    EXPECT_FALSE(rep.pass());
    const auto* r = rep.find("antipode identities");
    ASSERT_NE(r, nullptr);
    EXPECT_FALSE(r->pass);
}

TEST(SuperReduction, RoundTrip)
{
    super_reduction S(heisenberg_odd(1), {"theta", "z"}, 3);
    std::mt19937 rng(7);
    for (int k = 0; k < 10; ++k) EXPECT_TRUE(S.round_trip_mismatches(S.random_lifted(rng)).empty());
}

TEST(SuperReduction, Gl11)
{
    // the odd E12 together with the even diagonal spans a subalgebra
    super_reduction S(gl({{0, 0, 1}, {1, 1, 1}}), {"E11", "E12", "E22"}, 2);
    std::mt19937 rng(8);
    for (int k = 0; k < 5; ++k) EXPECT_TRUE(S.round_trip_mismatches(S.random_lifted(rng)).empty());
}
